#include "betakit/special.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

namespace betakit {

namespace {

void require_positive(double x, const char* who) {
    if (!(x > 0.0))
        throw std::domain_error(std::string(who) + ": argument must be positive");
}

void require_valid(const FloatEvalConfig& cfg) {
    if (!(cfg.quadrature_abs_tol > 0.0) || !(cfg.digamma_shift_threshold > 0.0) ||
        !(cfg.loggamma_shift_threshold > 0.0))
        throw std::invalid_argument("FloatEvalConfig: thresholds must be positive");
}

// B_{2j} / (2j (2j-1)), j = 1..8.
constexpr double kStirling[] = {
    1.0 / 12, -1.0 / 360, 1.0 / 1260, -1.0 / 1680,
    1.0 / 1188, -691.0 / 360360, 1.0 / 156, -3617.0 / 122400,
};
constexpr double kHalfLog2Pi = 0.91893853320467274178032973640562;

double stirling_log_gamma(double x) {
    double inv = 1.0 / x;
    double inv2 = inv * inv;
    double series = kStirling[7];
    for (int j = 6; j >= 0; --j) series = series * inv2 + kStirling[j];
    return (x - 0.5) * std::log(x) - x + kHalfLog2Pi + series * inv;
}

// -B_{2j} / (2j), j = 1..8.
constexpr double kDigamma[] = {
    -1.0 / 12, 1.0 / 120, -1.0 / 252, 1.0 / 240,
    -1.0 / 132, 691.0 / 32760, -1.0 / 12, 3617.0 / 8160,
};

double asymptotic_digamma(double x) {
    double inv2 = 1.0 / (x * x);
    double series = kDigamma[7];
    for (int j = 6; j >= 0; --j) series = series * inv2 + kDigamma[j];
    return std::log(x) - 0.5 / x + series * inv2;
}

}  // namespace

double log_gamma(double x, const FloatEvalConfig& cfg) {
    require_valid(cfg);
    require_positive(x, "log_gamma");
    if (x >= cfg.loggamma_shift_threshold) return stirling_log_gamma(x);
    // lnGamma(x) = lnGamma(x+k) - ln(x (x+1) ... (x+k-1))
    double shifted = x;
    double product = 1.0;
    while (shifted < cfg.loggamma_shift_threshold) {
        product *= shifted;
        shifted += 1.0;
    }
    return stirling_log_gamma(shifted) - std::log(product);
}

double beta_num(double x, double y, const FloatEvalConfig& cfg) {
    require_positive(x, "beta_num");
    require_positive(y, "beta_num");
    double lo = std::min(x, y), hi = std::max(x, y);
    return std::exp(log_gamma(lo, cfg) + log_gamma(hi, cfg) - log_gamma(lo + hi, cfg));
}

double digamma(double x, const FloatEvalConfig& cfg) {
    require_valid(cfg);
    require_positive(x, "digamma");
    double shifted = x;
    double acc = 0.0;
    while (shifted < cfg.digamma_shift_threshold) {
        acc += 1.0 / shifted;  // psi(x+1) = psi(x) + 1/x
        shifted += 1.0;
    }
    return asymptotic_digamma(shifted) - acc;
}

namespace {

// Gauss-Kronrod 7-15 nodes (abscissa, Gauss weight, Kronrod weight).
constexpr double kGK[8][3] = {
    {0.000000000000000000, 0.417959183673469388, 0.209482141084727828},
    {0.405845151377397167, 0.381830050505118945, 0.190350578064785410},
    {0.741531185599394440, 0.279705391489276668, 0.140653259715525919},
    {0.949107912342758525, 0.129484966168869693, 0.063092092629978553},
    {0.207784955007898468, 0.0,                  0.204432940075298892},
    {0.586087235467691130, 0.0,                  0.169004726639267903},
    {0.864864423359769073, 0.0,                  0.104790010322250184},
    {0.991455371120812639, 0.0,                  0.022935322010529225},
};

template <class F>
double gk15(const F& f, double a, double b, double& err) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double y0 = f(mid);
    double g7 = kGK[0][1] * y0;
    double k15 = kGK[0][2] * y0;
    for (int i = 1; i < 8; ++i) {
        double dx = half * kGK[i][0];
        double y = f(mid + dx) + f(mid - dx);
        g7 += kGK[i][1] * y;
        k15 += kGK[i][2] * y;
    }
    g7 *= half;
    k15 *= half;
    double scaled = 200.0 * std::fabs(g7 - k15);
    err = scaled * std::sqrt(scaled);
    return k15;
}

template <class F>
double integrate_adaptive(const F& f, double a, double b, double abs_tol) {
    if (b <= a) return 0.0;
    const int max_intervals = 4096;
    const double total = b - a;
    std::vector<std::pair<double, double>> stack{{a, b}};
    stack.reserve(64);
    double sum = 0.0;
    int used = 1;
    while (!stack.empty()) {
        auto [lo, hi] = stack.back();
        stack.pop_back();
        double err;
        double s = gk15(f, lo, hi, err);
        if (err <= abs_tol * (hi - lo) / total) {
            sum += s;
            continue;
        }
        // An interval below floating-point resolution cannot be refined any
        // further; failing its share of the tolerance there is terminal.
        if ((hi - lo) < 1e-14 * total || used + 2 > max_intervals)
            throw QuadratureError("beta_quad: quadrature did not converge");
        double mid = 0.5 * (lo + hi);
        stack.emplace_back(lo, mid);
        stack.emplace_back(mid, hi);
        used += 2;
    }
    return sum;
}

// Runs the adaptive pass per seed segment with a length-proportional share
// of the tolerance.  The seeds keep geometrically graded coverage near
// endpoint layers that a single 15-point rule would sample right past.
template <class F>
double integrate_seeded(const F& f, const std::vector<double>& breaks, double abs_tol) {
    double total = breaks.back() - breaks.front();
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
        sum += integrate_adaptive(f, breaks[i], breaks[i + 1],
                                  abs_tol * (breaks[i + 1] - breaks[i]) / total);
    return sum;
}

// int_0^{1/2} t^(a-1) (1-t)^(b-1) dt.  For a < 1 the substitution
// t = u^(1/a) turns the integrand into (1/a) (1 - u^(1/a))^(b-1), which is
// bounded on [0, (1/2)^a].
double beta_half_integral(double a, double b, double abs_tol) {
    if (a >= 1.0) {
        auto f = [a, b](double t) { return std::pow(t, a - 1.0) * std::pow(1.0 - t, b - 1.0); };
        // graded toward t = 0, where (1-t)^(b-1) can form a layer of width ~1/b
        std::vector<double> breaks{0.0};
        for (int k = 19; k >= 0; --k) breaks.push_back(0.5 * std::pow(4.0, -k));
        return integrate_seeded(f, breaks, abs_tol);
    }
    double inv_a = 1.0 / a;
    auto g = [inv_a, b](double u) { return inv_a * std::pow(1.0 - std::pow(u, inv_a), b - 1.0); };
    // u_j = u_max^(2^j) spaces the breakpoints evenly in log t, covering the
    // layer at u -> u_max where t climbs to 1/2
    double u_max = std::pow(0.5, a);
    std::vector<double> breaks{u_max};
    double u = u_max;
    for (int j = 0; j < 60 && u > 1e-12; ++j) {
        u *= u;
        breaks.push_back(u);
    }
    breaks.push_back(0.0);
    std::reverse(breaks.begin(), breaks.end());
    return integrate_seeded(g, breaks, abs_tol);
}

}  // namespace

double beta_quad(double x, double y, const FloatEvalConfig& cfg) {
    require_valid(cfg);
    require_positive(x, "beta_quad");
    require_positive(y, "beta_quad");
    double half_tol = 0.5 * cfg.quadrature_abs_tol;
    // The upper half of the integral is the lower half with x and y swapped.
    return beta_half_integral(x, y, half_tol) + beta_half_integral(y, x, half_tol);
}

double beta_partial_y(double x, double y, const FloatEvalConfig& cfg) {
    require_positive(x, "beta_partial_y");
    require_positive(y, "beta_partial_y");
    return beta_num(x, y, cfg) * (digamma(y, cfg) - digamma(x + y, cfg));
}

}  // namespace betakit
