#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace rvol::csvio {

/// Splits one CSV line on commas. No quoting support; none of the formats
/// written or read here quote fields.
std::vector<std::string_view> split(std::string_view line);

/// Strict finite-number parse of a whole field; `what` and `line_no` feed
/// the error message.
double parse_number(std::string_view field, const std::string& what,
                    std::size_t line_no);

/// 17-significant-digit text; double -> text -> double round trips exactly.
std::string format_full(double v);

std::string trim(std::string_view s);

}  // namespace rvol::csvio
