#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gof {

enum class ErrorKind {
    EmptyInput,
    NonFiniteValue,
    TooFewObservations,
    DegenerateSample,
    DomainError,
    DegenerateBinning,
    InsufficientDF,
    NumericalUnderflow,
    SampleSizeOutOfRange,
    ParseError,
    IOError,
};

[[nodiscard]] std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries one of the ErrorKind tags so
/// callers (the battery, the CLI) can record or map it without string matching.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message);

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace gof
