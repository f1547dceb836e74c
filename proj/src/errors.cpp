#include "vsheet/errors.hpp"

namespace vsheet {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::ZeroFrequency: return "ZeroFrequency";
        case ErrorKind::OutsideCone: return "OutsideCone";
        case ErrorKind::BranchAmbiguity: return "BranchAmbiguity";
        case ErrorKind::InvalidState: return "InvalidState";
        case ErrorKind::DegenerateF: return "DegenerateF";
        case ErrorKind::SymbolPole: return "SymbolPole";
        case ErrorKind::UnexpectedRoot: return "UnexpectedRoot";
        case ErrorKind::FitDiverged: return "FitDiverged";
        case ErrorKind::DegenerateEigenvector: return "DegenerateEigenvector";
        case ErrorKind::SeparationFailed: return "SeparationFailed";
        case ErrorKind::NearSingularBoundary: return "NearSingularBoundary";
    }
    return "Unknown";
}

}  // namespace vsheet
