#pragma once

#include <vector>

#include "betakit/combinatorics.hpp"
#include "betakit/sqrtpi.hpp"

namespace betakit {

// Gamma(x) at a positive half-integer: (x-1)! when x is an integer,
// ((2n)! / (n! 4^n)) * sqrt(pi) when x = n + 1/2.  Always a single monomial.
SqrtPiValue gamma_half(const HalfInteger& x);

// B(x_1, ..., x_m) = Gamma(x_1)...Gamma(x_m) / Gamma(sum x_i), exact.
// Requires m >= 2.
SqrtPiValue beta_exact(const std::vector<HalfInteger>& xs);

// B(j+1, s) = j! / ((s)(s+1)...(s+j)) for integer first argument and any
// positive rational s; no gamma values needed.
Rational beta_int_rational(unsigned long j, const Rational& s);

}  // namespace betakit
