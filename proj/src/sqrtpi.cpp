#include "betakit/sqrtpi.hpp"

#include <cmath>

namespace betakit {

SqrtPiValue SqrtPiValue::monomial(const Rational& coeff, unsigned exponent) {
    SqrtPiValue v;
    if (!coeff.is_zero()) v.terms_.emplace(exponent, coeff);
    return v;
}

void SqrtPiValue::add_term(unsigned exponent, const Rational& coeff) {
    auto it = terms_.find(exponent);
    if (it == terms_.end()) {
        if (!coeff.is_zero()) terms_.emplace(exponent, coeff);
        return;
    }
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
}

Rational SqrtPiValue::to_rational() const {
    if (terms_.empty()) return Rational(0);
    if (!is_rational())
        throw std::domain_error("SqrtPiValue: not a rational value: " + to_string());
    return terms_.begin()->second;
}

SqrtPiValue SqrtPiValue::operator-() const {
    SqrtPiValue r;
    for (const auto& [e, q] : terms_) r.terms_.emplace(e, -q);
    return r;
}

SqrtPiValue operator+(const SqrtPiValue& a, const SqrtPiValue& b) {
    SqrtPiValue r = a;
    for (const auto& [e, q] : b.terms_) r.add_term(e, q);
    return r;
}

SqrtPiValue operator-(const SqrtPiValue& a, const SqrtPiValue& b) {
    SqrtPiValue r = a;
    for (const auto& [e, q] : b.terms_) r.add_term(e, -q);
    return r;
}

SqrtPiValue operator*(const SqrtPiValue& a, const SqrtPiValue& b) {
    SqrtPiValue r;
    for (const auto& [ea, qa] : a.terms_)
        for (const auto& [eb, qb] : b.terms_) r.add_term(ea + eb, qa * qb);
    return r;
}

SqrtPiValue operator*(const Rational& q, const SqrtPiValue& a) {
    SqrtPiValue r;
    if (q.is_zero()) return r;
    for (const auto& [e, c] : a.terms_) r.terms_.emplace(e, q * c);
    return r;
}

SqrtPiValue operator/(const SqrtPiValue& a, const SqrtPiValue& b) {
    if (!b.is_monomial())
        throw std::domain_error("SqrtPiValue: divisor must be a single monomial");
    const auto& [eb, qb] = *b.terms_.begin();
    SqrtPiValue r;
    for (const auto& [ea, qa] : a.terms_) {
        if (ea < eb)
            throw std::domain_error("SqrtPiValue: quotient would need a negative exponent");
        r.terms_.emplace(ea - eb, qa / qb);
    }
    return r;
}

double SqrtPiValue::to_double() const {
    constexpr double kSqrtPi = 1.7724538509055160272981674833411452;
    double sum = 0.0;
    for (const auto& [e, q] : terms_) sum += q.to_double() * std::pow(kSqrtPi, e);
    return sum;
}

namespace {

std::string pi_power_str(unsigned e) {
    if (e == 1) return "√π";  // √π
    if (e == 2) return "π";
    if (e % 2 == 0) return "π^" + std::to_string(e / 2);
    return "π^(" + std::to_string(e) + "/2)";
}

}  // namespace

std::string SqrtPiValue::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, q] : terms_) {
        Rational aq = abs(q);
        if (first) {
            if (q.is_negative()) out += "-";
            first = false;
        } else {
            out += q.is_negative() ? " - " : " + ";
        }
        if (e == 0) {
            out += aq.to_string();
        } else if (aq == Rational(1)) {
            out += pi_power_str(e);
        } else {
            out += aq.to_string() + "·" + pi_power_str(e);
        }
    }
    return out;
}

}  // namespace betakit
