#pragma once

#include <string>
#include <string_view>

namespace madelung {

// Shortest decimal string that parses back to exactly x. Non-finite values
// print as "nan", "inf", "-inf".
[[nodiscard]] std::string format_double(double x);

// Inverse of format_double. Throws DomainError on malformed input.
[[nodiscard]] double parse_double(std::string_view text);

}  // namespace madelung
