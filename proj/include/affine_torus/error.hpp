#pragma once

#include <stdexcept>
#include <string>

namespace affine_torus {

enum class ErrorCode {
    NonPositiveDeterminant,
    BranchAmbiguity,
    NotTriangularizable,
    Degenerate,
    NotInCone,
    DegenerateRank,
    SingularMatrix,
    InvalidParams,
    NonCommuting,
    InvalidGluing,
    DegenerateLattice,
    NotExpansion,
    NonPositiveEigenvalues,
    ZeroLevel,
    InvalidDescriptor,
    WrongTag,
    EmptyTiling,
};

const char* to_string(ErrorCode c);

// Numeric degeneracies (as opposed to bad input) map to exit code 3 in the CLI.
bool is_numeric_degeneracy(ErrorCode c);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace affine_torus
