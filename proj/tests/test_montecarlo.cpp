#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "betakit/montecarlo.hpp"
#include "betakit/special.hpp"

using namespace betakit;

namespace {

ExperimentConfig sum_config(std::vector<double> shapes, unsigned n, std::uint64_t N,
                            std::uint64_t seed, unsigned workers = 1) {
    ExperimentConfig config;
    config.combination = Combination::sum;
    for (double p : shapes) config.shapes.push_back({p});
    config.moment_order = n;
    config.sample_count = N;
    config.seed = seed;
    config.workers = workers;
    return config;
}

ExperimentConfig diff_config(double p, unsigned n, std::uint64_t N, std::uint64_t seed,
                             unsigned workers = 1) {
    ExperimentConfig config;
    config.combination = Combination::difference;
    config.shapes = {{p}, {p}};
    config.moment_order = n;
    config.sample_count = N;
    config.seed = seed;
    config.workers = workers;
    return config;
}

}  // namespace

TEST_CASE("rng streams are deterministic and worker streams differ") {
    Xoshiro256pp a(42), b(42), c(43);
    for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
    bool any_difference = false;
    for (int i = 0; i < 100; ++i) any_difference |= (a.next() != c.next());
    CHECK(any_difference);

    Xoshiro256pp w0 = Xoshiro256pp::for_worker(7, 0);
    Xoshiro256pp w1 = Xoshiro256pp::for_worker(7, 1);
    any_difference = false;
    for (int i = 0; i < 100; ++i) any_difference |= (w0.next() != w1.next());
    CHECK(any_difference);

    Xoshiro256pp u(1);
    for (int i = 0; i < 1000; ++i) {
        double v = u.uniform01();
        CHECK(v > 0.0);
        CHECK(v < 1.0);
    }
}

TEST_CASE("gamma sampler matches the first two moments") {
    for (double p : {1.0, 2.5, 0.5}) {
        Xoshiro256pp rng(2017);
        const std::uint64_t N = 200000;
        double sum = 0.0, sum2 = 0.0;
        for (std::uint64_t i = 0; i < N; ++i) {
            double x = sample_gamma({p}, rng);
            CHECK(x > 0.0);
            sum += x;
            sum2 += x * x;
        }
        double mean = sum / N;
        double var = sum2 / N - mean * mean;
        double se = std::sqrt(var / N);
        CHECK(std::fabs(mean - p) <= 5.0 * se);  // E X = p for G(p)
    }
    CHECK_THROWS_AS([] { Xoshiro256pp r(1); return sample_gamma({-1.0}, r); }(),
                    std::domain_error);
}

TEST_CASE("gamma sampler is reproducible for a fixed seed") {
    Xoshiro256pp a(99), b(99);
    for (int i = 0; i < 1000; ++i) CHECK(sample_gamma({1.7}, a) == sample_gamma({1.7}, b));
}

TEST_CASE("closed-form moments") {
    CHECK(closed_form_moment(sum_config({0.5, 0.5}, 1, 10000, 1)) ==
          doctest::Approx(1.0).epsilon(1e-12));
    // sum of three G(1/2): E Y^2 = G(7/2)/G(3/2) = 15/4
    CHECK(closed_form_moment(sum_config({0.5, 0.5, 0.5}, 2, 10000, 1)) ==
          doctest::Approx(3.75).epsilon(1e-12));
    CHECK(closed_form_moment(diff_config(1.0, 2, 10000, 1)) ==
          doctest::Approx(2.0).epsilon(1e-12));
    CHECK(closed_form_moment(diff_config(2.0, 4, 10000, 1)) ==
          doctest::Approx(72.0).epsilon(1e-12));
    for (unsigned n : {1u, 3u, 5u})
        CHECK(closed_form_moment(diff_config(0.7, n, 10000, 1)) == 0.0);
}

TEST_CASE("config validation") {
    CHECK_THROWS_AS(estimate_moment(sum_config({2.0}, 1, 100000, 1)), std::invalid_argument);
    CHECK_THROWS_AS(estimate_moment(sum_config({2.0, 1.0}, 1, 100, 1)), std::invalid_argument);
    ExperimentConfig unequal = diff_config(2.0, 1, 100000, 1);
    unequal.shapes[1].shape = 3.0;
    CHECK_THROWS_AS(estimate_moment(unequal), std::invalid_argument);
    ExperimentConfig negative = sum_config({2.0, -1.0}, 1, 100000, 1);
    CHECK_THROWS_AS(estimate_moment(negative), std::invalid_argument);
    ExperimentConfig zero_moment = sum_config({2.0, 1.0}, 1, 100000, 1);
    zero_moment.moment_order = 0;
    CHECK_THROWS_AS(estimate_moment(zero_moment), std::invalid_argument);
}

TEST_CASE("moment estimates are bit-identical for identical configs") {
    MomentEstimate a = estimate_moment(sum_config({0.5, 1.0}, 3, 50000, 42));
    MomentEstimate b = estimate_moment(sum_config({0.5, 1.0}, 3, 50000, 42));
    CHECK(a.estimate == b.estimate);
    CHECK(a.std_error == b.std_error);
    CHECK(a.z_score == b.z_score);

    MomentEstimate w2a = estimate_moment(sum_config({0.5, 1.0}, 3, 50000, 42, 2));
    MomentEstimate w2b = estimate_moment(sum_config({0.5, 1.0}, 3, 50000, 42, 2));
    CHECK(w2a.estimate == w2b.estimate);
    CHECK(w2a.std_error == w2b.std_error);
}

TEST_CASE("z-gates pass for sums and differences") {
    for (std::uint64_t seed : {1ull, 42ull}) {
        MomentEstimate sum3 = estimate_moment(sum_config({0.5, 0.5}, 3, 200000, seed));
        CHECK(sum3.closed_form == doctest::Approx(6.0).epsilon(1e-12));  // G(4)/G(1)
        CHECK(sum3.within_threshold(5.0));

        MomentEstimate diff4 = estimate_moment(diff_config(2.0, 4, 200000, seed));
        CHECK(diff4.within_threshold(5.0));

        MomentEstimate diff5 = estimate_moment(diff_config(2.0, 5, 200000, seed));
        CHECK(diff5.closed_form == 0.0);
        CHECK(diff5.within_threshold(5.0));
    }
}

TEST_CASE("odd difference moments flip sign with the roles and tighten with N") {
    // Replaying the stream must reproduce the estimator's draw order exactly,
    // so the swapped-role estimate is the bitwise negation.
    const std::uint64_t N = 50000;
    const unsigned n = 3;
    MomentEstimate direct = estimate_moment(diff_config(1.5, n, N, 7));

    Xoshiro256pp rng = Xoshiro256pp::for_worker(7, 0);
    double forward = 0.0, forward_comp = 0.0, swapped = 0.0, swapped_comp = 0.0;
    for (std::uint64_t i = 0; i < N; ++i) {
        double x1 = sample_gamma({1.5}, rng);
        double x2 = sample_gamma({1.5}, rng);
        double y = x1 - x2;
        double t = y * y * y;
        double v = forward + t;
        forward_comp += std::fabs(forward) >= std::fabs(t) ? (forward - v) + t : (t - v) + forward;
        forward = v;
        double ts = -t;  // (x2 - x1)^3
        double vs = swapped + ts;
        swapped_comp +=
            std::fabs(swapped) >= std::fabs(ts) ? (swapped - vs) + ts : (ts - vs) + swapped;
        swapped = vs;
    }
    CHECK((forward + forward_comp) / N == direct.estimate);
    CHECK((swapped + swapped_comp) / N == -direct.estimate);

    MomentEstimate coarse = estimate_moment(diff_config(1.5, n, 10000, 7));
    MomentEstimate fine = estimate_moment(diff_config(1.5, n, 640000, 7));
    CHECK(coarse.within_threshold(5.0));
    CHECK(fine.within_threshold(5.0));
    CHECK(fine.std_error < coarse.std_error);  // closed form 0 approached
}

TEST_CASE("mgf closed form and series") {
    CHECK(mgf_closed_form(0.0, 3.0) == 1.0);
    CHECK(mgf_closed_form(0.5, 1.0) == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
    CHECK_THROWS_AS(mgf_closed_form(1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(mgf_closed_form(-1.2, 1.0), std::domain_error);

    for (double t : {0.3, 0.6, 0.9}) {
        for (double p : {0.5, 1.0, 4.2}) {
            double previous = 0.0;
            for (unsigned terms : {0u, 1u, 2u, 4u, 8u, 16u}) {
                double partial = mgf_series(t, p, terms);
                CHECK(partial > previous);  // all terms positive
                previous = partial;
            }
            CHECK(mgf_series(t, p, 400) ==
                  doctest::Approx(mgf_closed_form(t, p)).epsilon(1e-9));
        }
    }
}

TEST_CASE("empirical mgf matches (1-t^2)^(-p)") {
    MomentEstimate est = mgf_estimate(0.4, 1.0, 200000, 2017);
    CHECK(est.closed_form == doctest::Approx(mgf_closed_form(0.4, 1.0)).epsilon(1e-14));
    CHECK(est.within_threshold(5.0));
}
