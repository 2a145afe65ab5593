#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace affine_torus {

struct ThetaCheck {
    std::string name;
    long trials = 0;
    long violations = 0;
    double min_margin = 0.0;  // smallest distance to the strict bound; 0 for equalities
};

struct ThetaSuiteResult {
    std::uint64_t seed = 0;
    std::vector<ThetaCheck> checks;
    // |θ(g) − θ(g⁻¹)| < π read literally fails for large rotations; counted, not asserted.
    long literal_inverse_violations = 0;
    bool passed() const;
};

// Properties of the rotation angle on random lifts with ‖m‖ ≤ 10.
ThetaSuiteResult run_theta_suite(int trials, std::uint64_t seed);

}  // namespace affine_torus
