// Test-only oracles, deliberately independent of the library implementation
// paths they cross-check.
#pragma once

#include <vector>

#include "betakit/rational.hpp"

namespace betakit::testing {

// n! by iterated multiplication.
inline BigInt oracle_factorial(unsigned long n) {
    BigInt r(1);
    for (unsigned long i = 2; i <= n; ++i) r *= i;
    return r;
}

// Binomial coefficients from the Pascal triangle recurrence.
class PascalTriangle {
public:
    explicit PascalTriangle(unsigned long max_n) {
        rows_.reserve(max_n + 1);
        for (unsigned long n = 0; n <= max_n; ++n) {
            std::vector<BigInt> row(n + 1, BigInt(1));
            for (unsigned long k = 1; k < n; ++k)
                row[k] = rows_[n - 1][k - 1] + rows_[n - 1][k];
            rows_.push_back(std::move(row));
        }
    }
    BigInt choose(unsigned long n, long k) const {
        if (k < 0 || static_cast<unsigned long>(k) > n) return BigInt(0);
        return rows_[n][static_cast<unsigned long>(k)];
    }

private:
    std::vector<std::vector<BigInt>> rows_;
};

// n! / (k_1! ... k_m!) as a factorial ratio.
inline Rational oracle_multinomial(unsigned long n, const std::vector<unsigned long>& parts) {
    Rational r{oracle_factorial(n)};
    for (unsigned long k : parts) r /= Rational(oracle_factorial(k));
    return r;
}

}  // namespace betakit::testing
