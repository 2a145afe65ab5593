#include "affine_torus/error.hpp"

namespace affine_torus {

const char* to_string(ErrorCode c) {
    switch (c) {
    case ErrorCode::NonPositiveDeterminant: return "NonPositiveDeterminant";
    case ErrorCode::BranchAmbiguity: return "BranchAmbiguity";
    case ErrorCode::NotTriangularizable: return "NotTriangularizable";
    case ErrorCode::Degenerate: return "Degenerate";
    case ErrorCode::NotInCone: return "NotInCone";
    case ErrorCode::DegenerateRank: return "DegenerateRank";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::NonCommuting: return "NonCommuting";
    case ErrorCode::InvalidGluing: return "InvalidGluing";
    case ErrorCode::DegenerateLattice: return "DegenerateLattice";
    case ErrorCode::NotExpansion: return "NotExpansion";
    case ErrorCode::NonPositiveEigenvalues: return "NonPositiveEigenvalues";
    case ErrorCode::ZeroLevel: return "ZeroLevel";
    case ErrorCode::InvalidDescriptor: return "InvalidDescriptor";
    case ErrorCode::WrongTag: return "WrongTag";
    case ErrorCode::EmptyTiling: return "EmptyTiling";
    }
    return "Unknown";
}

bool is_numeric_degeneracy(ErrorCode c) {
    return c == ErrorCode::Degenerate || c == ErrorCode::DegenerateRank ||
           c == ErrorCode::BranchAmbiguity;
}

}  // namespace affine_torus
