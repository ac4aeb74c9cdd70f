#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace betakit {

using BigInt = mpz_class;

// Exact signed rational, always normalized: denominator > 0,
// gcd(|numerator|, denominator) = 1.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}
    Rational(const BigInt& n) : v_(n) {}
    Rational(long num, long den) : v_(num, den) { check_den(); v_.canonicalize(); }
    Rational(const BigInt& num, const BigInt& den) : v_(num, den) {
        check_den();
        v_.canonicalize();
    }

    // Accepts "a", "-a", "a/b" with optional sign on the numerator.
    static Rational parse(const std::string& text);

    BigInt numerator() const { return v_.get_num(); }
    BigInt denominator() const { return v_.get_den(); }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_positive() const { return sgn(v_) > 0; }
    bool is_negative() const { return sgn(v_) < 0; }
    bool is_integer() const { return v_.get_den() == 1; }
    // Integer or odd multiple of 1/2.
    bool is_half_integer() const { return v_.get_den() == 1 || v_.get_den() == 2; }

    double to_double() const { return v_.get_d(); }
    // "a" when integral, "a/b" otherwise.
    std::string to_string() const;

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational reciprocal() const {
        if (is_zero()) throw std::domain_error("Rational: reciprocal of zero");
        return Rational(mpq_class(1 / v_));
    }

    friend Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ + b.v_)); }
    friend Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ - b.v_)); }
    friend Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ * b.v_)); }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw std::domain_error("Rational: division by zero");
        return Rational(mpq_class(a.v_ / b.v_));
    }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) { *this = *this / o; return *this; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    friend Rational abs(const Rational& a) { return Rational(mpq_class(abs(a.v_))); }

private:
    explicit Rational(const mpq_class& v) : v_(v) {}
    void check_den() const {
        if (v_.get_den() == 0) throw std::domain_error("Rational: zero denominator");
    }

    mpq_class v_;
};

Rational pow(const Rational& base, unsigned long exp);

// Strictly positive integer or half-odd value, stored as twice its value.
// Domain of the exact gamma evaluation.
class HalfInteger {
public:
    explicit HalfInteger(unsigned long twice_value) : twice_(twice_value) {
        if (twice_ == 0) throw std::domain_error("HalfInteger: value must be positive");
    }
    static HalfInteger from_integer(unsigned long k) { return HalfInteger(2 * k); }
    // Rejects values that are not positive multiples of 1/2.
    static HalfInteger from_rational(const Rational& r);

    unsigned long twice_value() const { return twice_; }
    bool is_integer() const { return twice_ % 2 == 0; }
    // Valid only when is_integer().
    unsigned long integer_value() const { return twice_ / 2; }

    Rational value() const { return Rational(static_cast<long>(twice_), 2); }
    double to_double() const { return 0.5 * static_cast<double>(twice_); }

    HalfInteger operator+(unsigned long k) const { return HalfInteger(twice_ + 2 * k); }
    HalfInteger operator+(const HalfInteger& o) const { return HalfInteger(twice_ + o.twice_); }

    friend bool operator==(const HalfInteger& a, const HalfInteger& b) { return a.twice_ == b.twice_; }
    friend bool operator<(const HalfInteger& a, const HalfInteger& b) { return a.twice_ < b.twice_; }

private:
    unsigned long twice_;
};

}  // namespace betakit
