#pragma once

#include <map>
#include <string>

#include "betakit/rational.hpp"

namespace betakit {

// Finite formal sum  sum_e q_e * pi^(e/2)  with rational q_e and integer
// exponents e >= 0.  Closed under + and *; division is defined when the
// divisor is a single monomial, which covers every gamma/beta quotient
// arising at half-integer arguments.  Normal form: no zero coefficients.
class SqrtPiValue {
public:
    SqrtPiValue() = default;
    static SqrtPiValue zero() { return SqrtPiValue(); }
    static SqrtPiValue from_rational(const Rational& q) { return monomial(q, 0); }
    static SqrtPiValue monomial(const Rational& coeff, unsigned exponent);

    bool is_zero() const { return terms_.empty(); }
    bool is_monomial() const { return terms_.size() == 1; }
    bool is_rational() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0);
    }
    // Valid only when is_rational().
    Rational to_rational() const;

    const std::map<unsigned, Rational>& terms() const { return terms_; }

    SqrtPiValue operator-() const;
    friend SqrtPiValue operator+(const SqrtPiValue& a, const SqrtPiValue& b);
    friend SqrtPiValue operator-(const SqrtPiValue& a, const SqrtPiValue& b);
    friend SqrtPiValue operator*(const SqrtPiValue& a, const SqrtPiValue& b);
    friend SqrtPiValue operator*(const Rational& q, const SqrtPiValue& a);
    friend SqrtPiValue operator*(const SqrtPiValue& a, const Rational& q) { return q * a; }
    // Divisor must be a single nonzero monomial whose exponent does not
    // exceed any exponent of the dividend.
    friend SqrtPiValue operator/(const SqrtPiValue& a, const SqrtPiValue& b);

    SqrtPiValue& operator+=(const SqrtPiValue& o) { *this = *this + o; return *this; }
    SqrtPiValue& operator-=(const SqrtPiValue& o) { *this = *this - o; return *this; }
    SqrtPiValue& operator*=(const SqrtPiValue& o) { *this = *this * o; return *this; }

    friend bool operator==(const SqrtPiValue& a, const SqrtPiValue& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const SqrtPiValue& a, const SqrtPiValue& b) { return !(a == b); }

    double to_double() const;

    // Exact rendering, one of: "q", "q·√π", "q·π", "q·π^k", "q·π^(e/2)",
    // with a unit coefficient omitted and terms joined by " + " / " - ".
    std::string to_string() const;

private:
    void add_term(unsigned exponent, const Rational& coeff);

    std::map<unsigned, Rational> terms_;
};

}  // namespace betakit
