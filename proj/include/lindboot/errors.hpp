// errors.hpp: Error categories raised by the bootstrap library

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lindboot {

enum class ErrorCode {
    WindowTooLarge,
    EmptyObjective,
    NonHermitianObjective,
    RealnessViolation,
    NonPositiveCoupling,
    NegativeDelta,
    DegenerateTolerance,
    TooLarge,
    BracketFailure,
    ParseError,
    SiteOutOfRange,
    IoFailure,
    InvalidConfig,
    InvalidArgument,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Observable text could not be parsed; column is 1-based.
class ParseError : public Error {
public:
    ParseError(std::size_t column, const std::string& what)
        : Error(ErrorCode::ParseError, "column " + std::to_string(column) + ": " + what),
          column_(column) {}

    std::size_t column() const noexcept { return column_; }

private:
    std::size_t column_;
};

} // namespace lindboot
