#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fddestab {

enum class ErrorKind {
    InvalidInput,
    SignMismatch,
    SingularFrequency,
    NoIntersection,
    NonConvergence,
    BranchCutCrossing,
    DegenerateInput,
    MisalignedDelay,
    DomainExceeded,
    TooShortTrajectory,
    NoCrossing,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries one of the kinds above so the
/// CLI and the Python layer can map it without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace fddestab
