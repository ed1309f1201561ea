#pragma once

#include <stdexcept>
#include <string>

namespace socbloch {

enum class ErrorKind {
    InvalidParams,
    SingularCoupling,
    UnphysicalPopulation,
    ConditionViolated,
    DivergentVelocity,
    InvalidGrid,
    InvalidSettings,
    NumericalBlowup,
    Config,
};

const char* to_string(ErrorKind kind) noexcept;

/// All library failures are reported through this type; `kind()` lets the CLI
/// map them onto exit codes.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InvalidParams: return "InvalidParams";
        case ErrorKind::SingularCoupling: return "SingularCoupling";
        case ErrorKind::UnphysicalPopulation: return "UnphysicalPopulation";
        case ErrorKind::ConditionViolated: return "ConditionViolated";
        case ErrorKind::DivergentVelocity: return "DivergentVelocity";
        case ErrorKind::InvalidGrid: return "InvalidGrid";
        case ErrorKind::InvalidSettings: return "InvalidSettings";
        case ErrorKind::NumericalBlowup: return "NumericalBlowup";
        case ErrorKind::Config: return "Config";
    }
    return "Unknown";
}

}  // namespace socbloch
