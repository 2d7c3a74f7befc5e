// Copyright 2026 The gft-lab Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace gftlab {

/// Exact rational number in canonical form (denominator > 0, reduced).
using Rational = mpq_class;
/// Arbitrary-precision integer.
using BigInt = mpz_class;

/// num/den in canonical form; den must be nonzero.
Rational make_rational(const BigInt& num, const BigInt& den = 1);

/// Parses "7", "-3/4", "2.1" or "1e-3" into an exact rational.
/// Throws std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// Exact rational of the shortest decimal string that round-trips to `x`,
/// so 2.1 becomes 21/10 rather than the binary expansion of the double.
Rational rational_from_double(double x);

/// "41/10", or "5" when the denominator is 1.
std::string to_string(const Rational& x);

double to_double(const Rational& x);

}  // namespace gftlab
