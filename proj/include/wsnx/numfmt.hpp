#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace wsnx {

/// Shortest decimal text that parses back to exactly `x` ("nan"/"inf" for non-finite).
std::string format_number(double x);

/// Strict full-string parse with '.' decimal separator; nullopt on any junk.
std::optional<double> parse_number(std::string_view text);

std::optional<unsigned long long> parse_unsigned(std::string_view text);

std::string_view trim(std::string_view text) noexcept;

}  // namespace wsnx
