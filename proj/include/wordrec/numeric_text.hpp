#pragma once

#include <string>
#include <string_view>

namespace wordrec {

// Shortest decimal form that round-trips to the same binary64 value.
std::string format_double(double v);

// Fixed 17-significant-digit form (always exact for binary64); this is
// the representation frozen into feature CSVs and .tpl files.
std::string format_double17(double v);

// Strict full-string parse; returns false on trailing garbage or empty
// input. Accepts "inf"/"nan" spellings (callers reject non-finite
// values where the format forbids them).
bool parse_double(std::string_view text, double& out);

bool parse_int(std::string_view text, int& out);

}  // namespace wordrec
