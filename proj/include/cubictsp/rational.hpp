#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace cubictsp {

// Exact edge weights. The 3-cut gadget halves path sums, so integer inputs
// become half-integral after reduction.
using Rational = mpq_class;

// Parses "num" or "num/den" (optional leading sign on num). Throws
// std::invalid_argument on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

// "num" when the denominator is 1, else "num/den"; always canonical.
std::string to_string(const Rational& value);

}  // namespace cubictsp
