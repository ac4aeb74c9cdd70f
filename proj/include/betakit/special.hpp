#pragma once

#include <stdexcept>

namespace betakit {

struct FloatEvalConfig {
    double quadrature_abs_tol = 1e-10;
    double digamma_shift_threshold = 6.0;
    double loggamma_shift_threshold = 10.0;
};

class QuadratureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ln Gamma(x) for x > 0: recurrence shift up to the threshold, then a
// Stirling series with fixed Bernoulli coefficients.
double log_gamma(double x, const FloatEvalConfig& cfg = {});

// B(x, y) = exp(lnGamma(x) + lnGamma(y) - lnGamma(x+y)).  Arguments are
// sorted first so beta_num(x, y) == beta_num(y, x) bit-identically.
double beta_num(double x, double y, const FloatEvalConfig& cfg = {});

// psi(x) = Gamma'(x)/Gamma(x): upward recurrence to the threshold, then an
// asymptotic series.
double digamma(double x, const FloatEvalConfig& cfg = {});

// Adaptive Gauss-Kronrod integration of int_0^1 t^(x-1) (1-t)^(y-1) dt.
// Splits at t = 1/2; an endpoint with exponent < 1 is regularized by the
// substitution t = u^(1/x) (resp. 1 - t = u^(1/y)).  Throws QuadratureError
// when the interval budget is exhausted before reaching quadrature_abs_tol.
double beta_quad(double x, double y, const FloatEvalConfig& cfg = {});

// d/dy B(x, y) = B(x, y) (psi(y) - psi(x+y)).
double beta_partial_y(double x, double y, const FloatEvalConfig& cfg = {});

}  // namespace betakit
