#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rgather {

enum class ErrorKind {
    MalformedInstance,
    SizeViolation,
    NotAPartition,
    ValueMismatch,
    MissingFacility,
    SizeGuard,
    IndexError,
    Overflow,
};

inline std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::MalformedInstance: return "MalformedInstance";
        case ErrorKind::SizeViolation: return "SizeViolation";
        case ErrorKind::NotAPartition: return "NotAPartition";
        case ErrorKind::ValueMismatch: return "ValueMismatch";
        case ErrorKind::MissingFacility: return "MissingFacility";
        case ErrorKind::SizeGuard: return "SizeGuard";
        case ErrorKind::IndexError: return "IndexError";
        case ErrorKind::Overflow: return "Overflow";
    }
    return "Unknown";
}

/// Every error raised by the library carries a machine-readable kind; the
/// message is prefixed with the kind name.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace rgather
