#include "betakit/rational.hpp"

#include <cctype>

namespace betakit {

namespace {

bool valid_integer_token(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

}  // namespace

namespace {

// mpz_set_str takes an optional '-' but not '+'.
std::string strip_plus(const std::string& s) { return s[0] == '+' ? s.substr(1) : s; }

}  // namespace

Rational Rational::parse(const std::string& text) {
    auto slash = text.find('/');
    if (slash == std::string::npos) {
        if (!valid_integer_token(text))
            throw std::invalid_argument("Rational: cannot parse '" + text + "'");
        return Rational(BigInt(strip_plus(text)));
    }
    std::string num = text.substr(0, slash);
    std::string den = text.substr(slash + 1);
    if (!valid_integer_token(num) || !valid_integer_token(den) || den[0] == '-')
        throw std::invalid_argument("Rational: cannot parse '" + text + "'");
    return Rational(BigInt(strip_plus(num)), BigInt(strip_plus(den)));
}

std::string Rational::to_string() const {
    std::string s = numerator().get_str();
    if (!is_integer()) s += "/" + denominator().get_str();
    return s;
}

Rational pow(const Rational& base, unsigned long exp) {
    BigInt num, den;
    mpz_pow_ui(num.get_mpz_t(), base.numerator().get_mpz_t(), exp);
    mpz_pow_ui(den.get_mpz_t(), base.denominator().get_mpz_t(), exp);
    return Rational(num, den);
}

HalfInteger HalfInteger::from_rational(const Rational& r) {
    if (!r.is_positive() || !r.is_half_integer())
        throw std::domain_error("HalfInteger: '" + r.to_string() +
                                "' is not a positive half-integer");
    BigInt twice = r.numerator() * (2 / r.denominator());
    if (!twice.fits_ulong_p())
        throw std::domain_error("HalfInteger: value too large");
    return HalfInteger(twice.get_ui());
}

}  // namespace betakit
