#include "betakit/exact_beta.hpp"

#include <stdexcept>

namespace betakit {

SqrtPiValue gamma_half(const HalfInteger& x) {
    if (x.is_integer()) return SqrtPiValue::from_rational(Rational(factorial(x.integer_value() - 1)));
    unsigned long n = (x.twice_value() - 1) / 2;  // x = n + 1/2
    BigInt four_n;
    mpz_ui_pow_ui(four_n.get_mpz_t(), 4, n);
    return SqrtPiValue::monomial(Rational(factorial(2 * n), factorial(n) * four_n), 1);
}

SqrtPiValue beta_exact(const std::vector<HalfInteger>& xs) {
    if (xs.size() < 2) throw std::invalid_argument("beta_exact: needs at least 2 arguments");
    SqrtPiValue numerator = gamma_half(xs[0]);
    HalfInteger total = xs[0];
    for (std::size_t i = 1; i < xs.size(); ++i) {
        numerator *= gamma_half(xs[i]);
        total = total + xs[i];
    }
    return numerator / gamma_half(total);
}

Rational beta_int_rational(unsigned long j, const Rational& s) {
    if (!s.is_positive()) throw std::domain_error("beta_int_rational: s must be positive");
    Rational denom = s;
    for (unsigned long i = 1; i <= j; ++i) denom *= s + Rational(static_cast<long>(i));
    return Rational(factorial(j)) / denom;
}

}  // namespace betakit
