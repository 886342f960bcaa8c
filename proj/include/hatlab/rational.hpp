#pragma once

// Exact arithmetic.  Every measure at finite n is a dyadic rational, so
// measures travel as GMP rationals and are only rendered as doubles at the
// output boundary.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace hatlab {

using Rational = mpq_class;
using BigInt = mpz_class;

/// count / 2^exponent, canonicalized.
Rational dyadic(std::uint64_t count, unsigned exponent);

/// count / total, canonicalized.
Rational ratio(std::uint64_t count, std::uint64_t total);

/// Always "p/q", including "0/1" and "1/1".
std::string fraction_string(const Rational & value);

/// Accepts "p/q" or a bare integer; throws std::invalid_argument otherwise.
Rational parse_fraction(std::string_view text);

double to_double(const Rational & value);

/// True iff the canonical denominator is a power of two.
bool is_dyadic(const Rational & value);

} // namespace hatlab
