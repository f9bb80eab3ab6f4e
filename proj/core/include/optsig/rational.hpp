// Exact rational arithmetic used throughout the solvers. All probabilities,
// values, virtual values and revenues are arbitrary-precision rationals kept
// in lowest terms with a positive denominator; no operation ever rounds.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace optsig {

using Rat = mpq_class;

// n/d in canonical form. Throws std::invalid_argument if d == 0.
Rat rat(long n, long d = 1);

// Parses "p", "p/q" or a decimal string like "0.05" into an exact rational.
// Throws std::invalid_argument on malformed input or zero denominator.
Rat rat_parse(const std::string& text);

// "p" or "p/q", lowest terms.
std::string rat_str(const Rat& x);

// Decimal rendering with the given number of significant digits.
std::string rat_decimal(const Rat& x, int significant_digits = 12);

// Largest integer multiple of `quantum` that does not exceed `x`.
// quantum must be positive.
Rat round_down_to_multiple(const Rat& x, const Rat& quantum);

// floor(x) as a signed 64-bit integer; throws std::overflow_error if it
// does not fit.
std::int64_t rat_floor_i64(const Rat& x);

}  // namespace optsig
