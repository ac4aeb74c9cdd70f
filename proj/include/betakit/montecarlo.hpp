#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "betakit/special.hpp"

namespace betakit {

// xoshiro256++ with splitmix64 state fill.  Parallel streams come from the
// generator's jump() function: worker w starts from the seeded state jumped
// w times, so streams are disjoint by construction and an experiment is
// reproducible for a given (seed, worker count).
class Xoshiro256pp {
public:
    explicit Xoshiro256pp(std::uint64_t seed);
    static Xoshiro256pp for_worker(std::uint64_t seed, unsigned worker);

    std::uint64_t next();
    // Uniform on the open interval (0, 1).
    double uniform01();
    // Standard normal via the Marsaglia polar method.
    double normal();
    // Advance 2^128 steps.
    void jump();

private:
    std::array<std::uint64_t, 4> state_;
};

struct GammaSpec {
    double shape;  // G(p), unit rate
};

enum class Combination { sum, difference };

struct ExperimentConfig {
    Combination combination = Combination::sum;
    std::vector<GammaSpec> shapes;
    unsigned moment_order = 1;
    std::uint64_t sample_count = 0;
    std::uint64_t seed = 0;
    double z_threshold = 5.0;
    unsigned workers = 1;
};

struct MomentEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
    double closed_form = 0.0;
    double z_score = 0.0;
    unsigned n = 0;
    std::uint64_t N = 0;

    bool within_threshold(double z_max) const;
};

// One G(p) draw: Marsaglia-Tsang squeeze/accept-reject for p >= 1, boosted
// by X = X_{p+1} U^{1/p} for p < 1.
double sample_gamma(const GammaSpec& spec, Xoshiro256pp& rng);

// E[Y^n] for Y = sum of the shapes, or Y = X1 - X2 with two equal shapes:
// Gamma(P+n)/Gamma(P) with P = sum p_i, resp. n! Gamma(n/2+p) /
// (Gamma(n/2+1) Gamma(p)) for even n and 0 for odd n.
double closed_form_moment(const ExperimentConfig& config);

// Sample moment of Y^n with standard error and z-score against the closed
// form.  Sampling is partitioned into per-worker streams merged in worker
// order, so the result is bit-identical for a fixed (config, workers).
MomentEstimate estimate_moment(const ExperimentConfig& config);

// MGF of X1 - X2 with X_i iid G(p): (1 - t^2)^(-p), |t| < 1.
double mgf_closed_form(double t, double p);

// Partial sum sum_{k=0}^{K} Gamma(k+p) t^(2k) / (Gamma(k+1) Gamma(p)); all
// terms positive, increasing in K toward mgf_closed_form.
double mgf_series(double t, double p, unsigned terms);

// Empirical mean of exp(t (X1 - X2)) gated against the closed form.
MomentEstimate mgf_estimate(double t, double p, std::uint64_t sample_count,
                            std::uint64_t seed, unsigned workers = 1);

void validate_config(const ExperimentConfig& config);

}  // namespace betakit
