#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace dbbo::csv {

/// Quotes a field when it contains a comma, quote or newline.
std::string field(std::string_view text);

/// Joins already-formatted fields with commas (each passed through field()).
std::string row(const std::vector<std::string>& fields);

/// Splits one line, honoring double-quoted fields.
std::vector<std::string> split(std::string_view line);

/// Fixed-point with `digits` decimals; "nan" for non-finite values.
std::string number(double value, int digits = 6);

}  // namespace dbbo::csv
