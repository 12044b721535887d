#pragma once

#include <stdexcept>
#include <string>

namespace endim {

enum class ErrorKind {
    UnsupportedDimension,
    DimensionMismatch,
    EmptyShape,
    Margin,
    CoverageGap,
    Infeasible,
    Capacity,
    Unreachable,
    Degenerate,
    ScaleSelection,
    InfeasibleAnnulus,
    Config,
    Invariant,
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

inline const char* error_kind_name(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::UnsupportedDimension: return "unsupported-dimension";
    case ErrorKind::DimensionMismatch: return "dimension-mismatch";
    case ErrorKind::EmptyShape: return "empty-shape";
    case ErrorKind::Margin: return "margin";
    case ErrorKind::CoverageGap: return "coverage-gap";
    case ErrorKind::Infeasible: return "infeasible";
    case ErrorKind::Capacity: return "capacity";
    case ErrorKind::Unreachable: return "unreachable";
    case ErrorKind::Degenerate: return "degenerate";
    case ErrorKind::ScaleSelection: return "scale-selection";
    case ErrorKind::InfeasibleAnnulus: return "infeasible-annulus";
    case ErrorKind::Config: return "config";
    case ErrorKind::Invariant: return "invariant";
    }
    return "unknown";
}

}  // namespace endim
