#include "betakit/montecarlo.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

namespace betakit {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

Xoshiro256pp::Xoshiro256pp(std::uint64_t seed) {
    std::uint64_t s = seed;
    for (auto& word : state_) word = splitmix64(s);
}

Xoshiro256pp Xoshiro256pp::for_worker(std::uint64_t seed, unsigned worker) {
    Xoshiro256pp rng(seed);
    for (unsigned i = 0; i < worker; ++i) rng.jump();
    return rng;
}

std::uint64_t Xoshiro256pp::next() {
    std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

void Xoshiro256pp::jump() {
    static constexpr std::uint64_t kJump[] = {0x180ec6d33cfd0aba, 0xd5a61266f0c9392c,
                                              0xa9582618e03fc9aa, 0x39abdc4529b1661c};
    std::array<std::uint64_t, 4> acc{0, 0, 0, 0};
    for (std::uint64_t word : kJump) {
        for (int bit = 0; bit < 64; ++bit) {
            if (word & (1ull << bit))
                for (int i = 0; i < 4; ++i) acc[i] ^= state_[i];
            next();
        }
    }
    state_ = acc;
}

double Xoshiro256pp::uniform01() {
    // 53-bit mantissa, offset by half an ulp so 0 is never produced.
    return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
}

double Xoshiro256pp::normal() {
    for (;;) {
        double u = 2.0 * uniform01() - 1.0;
        double v = 2.0 * uniform01() - 1.0;
        double s = u * u + v * v;
        if (s >= 1.0 || s == 0.0) continue;
        return u * std::sqrt(-2.0 * std::log(s) / s);
    }
}

double sample_gamma(const GammaSpec& spec, Xoshiro256pp& rng) {
    double p = spec.shape;
    if (!(p > 0.0)) throw std::domain_error("sample_gamma: shape must be positive");
    if (p < 1.0) {
        double boosted = sample_gamma(GammaSpec{p + 1.0}, rng);
        return boosted * std::pow(rng.uniform01(), 1.0 / p);
    }
    double d = p - 1.0 / 3.0;
    double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = rng.normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        double u = rng.uniform01();
        if (u < 1.0 - 0.0331 * (x * x) * (x * x)) return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

void validate_config(const ExperimentConfig& config) {
    for (const auto& spec : config.shapes)
        if (!(spec.shape > 0.0))
            throw std::invalid_argument("experiment: shapes must be positive");
    if (config.combination == Combination::sum) {
        if (config.shapes.size() < 2)
            throw std::invalid_argument("experiment: sum needs at least 2 shapes");
    } else {
        if (config.shapes.size() != 2 || config.shapes[0].shape != config.shapes[1].shape)
            throw std::invalid_argument(
                "experiment: difference needs exactly 2 equal shapes (iid)");
    }
    if (config.moment_order < 1)
        throw std::invalid_argument("experiment: moment order must be >= 1");
    if (!(config.z_threshold > 0.0))
        throw std::invalid_argument("experiment: z threshold must be positive");
    if (config.workers < 1) throw std::invalid_argument("experiment: workers must be >= 1");
}

double closed_form_moment(const ExperimentConfig& config) {
    validate_config(config);
    unsigned n = config.moment_order;
    if (config.combination == Combination::sum) {
        double total = 0.0;
        for (const auto& spec : config.shapes) total += spec.shape;
        return std::exp(log_gamma(total + n) - log_gamma(total));
    }
    if (n % 2 == 1) return 0.0;
    double p = config.shapes[0].shape;
    double half_n = 0.5 * n;
    return std::exp(log_gamma(n + 1.0) + log_gamma(half_n + p) - log_gamma(half_n + 1.0) -
                    log_gamma(p));
}

namespace {

double int_pow(double x, unsigned n) {
    double r = 1.0;
    for (; n; n >>= 1, x *= x)
        if (n & 1) r *= x;
    return r;
}

struct CompensatedSum {
    double sum = 0.0;
    double comp = 0.0;
    void add(double v) {
        double t = sum + v;
        if (std::fabs(sum) >= std::fabs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

struct PartialSums {
    CompensatedSum power;    // sum of y^n
    CompensatedSum power2;   // sum of (y^n)^2
};

template <class Draw>
PartialSums accumulate_chunk(std::uint64_t count, unsigned n, Xoshiro256pp rng, Draw draw) {
    PartialSums sums;
    for (std::uint64_t i = 0; i < count; ++i) {
        double t = int_pow(draw(rng), n);
        sums.power.add(t);
        sums.power2.add(t * t);
    }
    return sums;
}

template <class Draw>
MomentEstimate run_experiment(std::uint64_t total, unsigned n, std::uint64_t seed,
                              unsigned workers, double closed_form, Draw draw) {
    std::vector<PartialSums> partials(workers);
    if (workers == 1) {
        partials[0] = accumulate_chunk(total, n, Xoshiro256pp::for_worker(seed, 0), draw);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            std::uint64_t begin = total * w / workers;
            std::uint64_t end = total * (w + 1) / workers;
            threads.emplace_back([&partials, w, begin, end, n, seed, draw] {
                partials[w] =
                    accumulate_chunk(end - begin, n, Xoshiro256pp::for_worker(seed, w), draw);
            });
        }
        for (auto& t : threads) t.join();
    }

    // Fixed merge order keeps the result independent of completion order.
    CompensatedSum s1, s2;
    for (const auto& part : partials) {
        s1.add(part.power.value());
        s2.add(part.power2.value());
    }
    double count = static_cast<double>(total);
    double mean = s1.value() / count;
    double variance = (s2.value() - count * mean * mean) / (count - 1.0);
    if (variance < 0.0) variance = 0.0;

    MomentEstimate est;
    est.estimate = mean;
    est.std_error = std::sqrt(variance / count);
    est.closed_form = closed_form;
    est.n = n;
    est.N = total;
    if (!std::isfinite(mean) || !std::isfinite(est.std_error) || est.std_error <= 0.0)
        throw std::runtime_error("estimate_moment: non-finite or degenerate accumulation");
    est.z_score = (mean - closed_form) / est.std_error;
    return est;
}

}  // namespace

bool MomentEstimate::within_threshold(double z_max) const {
    return std::isfinite(z_score) && std::fabs(z_score) <= z_max;
}

MomentEstimate estimate_moment(const ExperimentConfig& config) {
    validate_config(config);
    if (config.sample_count < 10000)
        throw std::invalid_argument("estimate_moment: needs at least 10^4 samples");
    double closed = closed_form_moment(config);
    if (config.combination == Combination::sum) {
        std::vector<double> shapes;
        shapes.reserve(config.shapes.size());
        for (const auto& spec : config.shapes) shapes.push_back(spec.shape);
        auto draw = [shapes](Xoshiro256pp& rng) {
            double y = 0.0;
            for (double p : shapes) y += sample_gamma(GammaSpec{p}, rng);
            return y;
        };
        return run_experiment(config.sample_count, config.moment_order, config.seed,
                              config.workers, closed, draw);
    }
    double p = config.shapes[0].shape;
    auto draw = [p](Xoshiro256pp& rng) {
        double x1 = sample_gamma(GammaSpec{p}, rng);
        double x2 = sample_gamma(GammaSpec{p}, rng);
        return x1 - x2;
    };
    return run_experiment(config.sample_count, config.moment_order, config.seed,
                          config.workers, closed, draw);
}

double mgf_closed_form(double t, double p) {
    if (!(p > 0.0)) throw std::domain_error("mgf_closed_form: shape must be positive");
    if (!(std::fabs(t) < 1.0))
        throw std::domain_error("mgf_closed_form: requires |t| < 1");
    return std::pow(1.0 - t * t, -p);
}

double mgf_series(double t, double p, unsigned terms) {
    if (!(p > 0.0)) throw std::domain_error("mgf_series: shape must be positive");
    if (!(std::fabs(t) < 1.0)) throw std::domain_error("mgf_series: requires |t| < 1");
    double sum = 0.0;
    double term = 1.0;  // Gamma(p) t^0 / (Gamma(1) Gamma(p))
    for (unsigned k = 0;; ++k) {
        sum += term;
        if (k == terms) break;
        term *= t * t * (k + p) / (k + 1.0);
    }
    return sum;
}

MomentEstimate mgf_estimate(double t, double p, std::uint64_t sample_count, std::uint64_t seed,
                            unsigned workers) {
    double closed = mgf_closed_form(t, p);
    if (sample_count < 10000)
        throw std::invalid_argument("mgf_estimate: needs at least 10^4 samples");
    if (workers < 1) throw std::invalid_argument("mgf_estimate: workers must be >= 1");
    auto draw = [t, p](Xoshiro256pp& rng) {
        double x1 = sample_gamma(GammaSpec{p}, rng);
        double x2 = sample_gamma(GammaSpec{p}, rng);
        return std::exp(t * (x1 - x2));
    };
    return run_experiment(sample_count, 1, seed, workers, closed, draw);
}

}  // namespace betakit
