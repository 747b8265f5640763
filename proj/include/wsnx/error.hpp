#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace wsnx {

enum class Errc {
    MalformedRow,
    MixedMetricDay,
    EmptyDataset,
    InvalidParams,
    EmptyWindow,
    EmptyInput,
    TraceTooShort,
    UncalibratedThreshold,
    StaleMessage,
    UnknownVersion,
    ParseError,
    DegenerateRange,
    OutOfRange,
    NoHighIntervals,
    EmptyTraining,
    TooFewDays,
    Io,
};

std::string_view to_string(Errc code) noexcept;

/// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message, std::size_t line = 0)
        : std::runtime_error(std::string(to_string(code)) + ": " + message),
          code_(code),
          line_(line) {}

    Errc code() const noexcept { return code_; }

    /// 1-based source line for row-level errors, 0 otherwise.
    std::size_t line() const noexcept { return line_; }

private:
    Errc code_;
    std::size_t line_;
};

}  // namespace wsnx
