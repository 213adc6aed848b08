#include "fddestab/errors.hpp"

namespace fddestab {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InvalidInput: return "invalid-input";
        case ErrorKind::SignMismatch: return "sign-mismatch";
        case ErrorKind::SingularFrequency: return "singular-frequency";
        case ErrorKind::NoIntersection: return "no-intersection";
        case ErrorKind::NonConvergence: return "non-convergence";
        case ErrorKind::BranchCutCrossing: return "branch-cut-crossing";
        case ErrorKind::DegenerateInput: return "degenerate-input";
        case ErrorKind::MisalignedDelay: return "misaligned-delay";
        case ErrorKind::DomainExceeded: return "domain-exceeded";
        case ErrorKind::TooShortTrajectory: return "too-short-trajectory";
        case ErrorKind::NoCrossing: return "no-crossing";
    }
    return "unknown";
}

}  // namespace fddestab
