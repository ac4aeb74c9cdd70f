#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "betakit/exact_beta.hpp"
#include "betakit/special.hpp"
#include "betakit/sqrtpi.hpp"

namespace betakit {

enum class IdentityId {
    thm21,       // sum_k C(n,k) B(p1+k, p2+n-k) = B(p1, p2)
    thm22,       // sum_j (-1)^j C(n,j) B(j+1, s) = 1/(s+n)
    thm23,       // sum_j sum_{i<=j} (-1)^j C(n,j) B(j+1,s)/(s+i) = 1/(s+n)^2
    thm24,       // alternating beta convolution at equal parameters
    thm24_gamma, // same with bare gamma factors; exact mode only
    cor21,       // alternating central binomial convolution
    thm31,       // multinomial beta convolution, m >= 2 parameters
    cor31,       // central binomial convolution over m parts vs gamma ratio
    mikic,       // binomial closed form of the cor31 right side
    conv11,      // sum_k C(2k,k) C(2n-2k,n-k) = 4^n
    eq29,        // three-way: alternating s/(s+j) sum, telescoping product, s*B(n+1,s)
    eq226,       // Gamma(n+1/2) / Gamma(1/2) = (2n)! / (n! 4^n)
    basic23,     // B(x,y) = B(x,y+1) + B(x+1,y); n unused
};

enum class EvalMode { exact, floating };

// A rational parameter keeps exact evaluation available; a double parameter
// forces float mode.  The CLI parser maps "a/b" and bare integers to
// Rational and decimal literals to double, so exact mode is never silently
// degraded.
using Param = std::variant<Rational, double>;

const char* to_string(IdentityId id);
std::optional<IdentityId> identity_from_string(const std::string& name);
const char* to_string(EvalMode mode);

struct IdentityInfo {
    IdentityId id;
    const char* name;
    int min_params;
    int max_params;  // -1: unbounded (thm31)
    unsigned min_n;
    bool supports_exact;
    bool supports_float;
    bool needs_half_integer_exact;  // exact mode restricted to half-integer params
    bool integer_params;            // params are positive integers (m)
    bool alternating;               // signed sum; float mode reports condition_hint
    const char* formula;
};

const std::vector<IdentityInfo>& identity_registry();
const IdentityInfo& identity_info(IdentityId id);

struct IdentityCase {
    IdentityId id;
    std::vector<Param> params;
    unsigned n = 0;
    EvalMode mode = EvalMode::exact;
};

struct VerificationResult {
    EvalMode mode;
    std::optional<SqrtPiValue> exact_lhs;
    std::optional<SqrtPiValue> exact_rhs;
    double lhs = 0.0;  // numeric view of the exact value in exact mode
    double rhs = 0.0;
    double discrepancy = 0.0;
    bool passed = false;
    std::optional<double> condition_hint;

    std::string lhs_string() const;
    std::string rhs_string() const;
};

// Exact sides.  Parameters must already be rational (and half-integer where
// the identity requires it); n must satisfy the identity's lower bound.
struct ExactSides {
    SqrtPiValue lhs;
    SqrtPiValue rhs;
};

ExactSides thm21_sides(const HalfInteger& p1, const HalfInteger& p2, unsigned n);
ExactSides thm22_sides(const Rational& s, unsigned n);
ExactSides thm23_sides(const Rational& s, unsigned n);
ExactSides thm24_sides(const HalfInteger& p, unsigned n);
ExactSides thm24_gamma_sides(const HalfInteger& p, unsigned n);
ExactSides cor21_sides(unsigned n);
ExactSides conv11_sides(unsigned n);
ExactSides thm31_sides(const std::vector<HalfInteger>& ps, unsigned n);
ExactSides cor31_sides(unsigned long m, unsigned n);
Rational mikic_rhs(unsigned long m, unsigned n);
ExactSides eq226_sides(unsigned n);
ExactSides basic23_sides(const HalfInteger& x, const HalfInteger& y);

// eq29 is a three-way equality; lhs/prod feed the generic result and the
// s*B(n+1,s) form must match the product as well.
struct Eq29Sides {
    Rational lhs;
    Rational prod;
    Rational s_beta;
};
Eq29Sides eq29_sides(const Rational& s, unsigned n);

// Float sides with compensated summation; max_abs_term is tracked for
// alternating sums and feeds the condition hint.
struct FloatSides {
    double lhs = 0.0;
    double rhs = 0.0;
    double max_abs_term = 0.0;
    bool alternating = false;
};

FloatSides float_sides(IdentityId id, const std::vector<double>& params, unsigned n,
                       const FloatEvalConfig& cfg = {});

// b_n = sum_j (-1)^j C(n,j) a_j; self-inverse.
std::vector<Rational> binomial_inversion(const std::vector<Rational>& a);

// Default float tolerances: 1e-9 plain sums, 1e-6 alternating.
double default_float_tol(IdentityId id);

// Validates the case, evaluates both sides in the requested mode and grades
// the discrepancy.  Exact mode passes iff lhs - rhs is identically zero;
// float mode passes iff the relative discrepancy is within tol (for
// alternating sums the residual is graded against the largest term
// magnitude, so exact-zero right sides are handled sensibly).
VerificationResult verify(const IdentityCase& c, std::optional<double> tol = std::nullopt,
                          const FloatEvalConfig& cfg = {});

}  // namespace betakit
