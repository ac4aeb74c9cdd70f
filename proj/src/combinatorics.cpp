#include "betakit/combinatorics.hpp"

#include <numeric>
#include <stdexcept>

namespace betakit {

BigInt factorial(unsigned long n) {
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

BigInt binomial(unsigned long n, long k) {
    if (k < 0 || static_cast<unsigned long>(k) > n) return BigInt(0);
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), n, static_cast<unsigned long>(k));
    return r;
}

BigInt multinomial(unsigned long n, const std::vector<unsigned long>& parts) {
    unsigned long sum = std::accumulate(parts.begin(), parts.end(), 0ul);
    if (sum != n)
        throw std::invalid_argument("multinomial: parts sum to " + std::to_string(sum) +
                                    ", expected " + std::to_string(n));
    BigInt r = factorial(n);
    for (unsigned long k : parts) mpz_divexact(r.get_mpz_t(), r.get_mpz_t(), factorial(k).get_mpz_t());
    return r;
}

BigInt composition_count(unsigned long n, unsigned long m) {
    if (m == 0) throw std::invalid_argument("composition_count: m must be >= 1");
    return binomial(n + m - 1, static_cast<long>(m - 1));
}

CompositionRange::CompositionRange(unsigned long n, unsigned long m) : n_(n), m_(m) {
    if (m == 0) throw std::invalid_argument("compositions: m must be >= 1");
}

CompositionRange::iterator::iterator(unsigned long n, unsigned long m)
    : parts_(m, 0), done_(false) {
    parts_[0] = n;
}

CompositionRange::iterator& CompositionRange::iterator::operator++() {
    const std::size_t m = parts_.size();
    // Successor in descending lexicographic order: move one unit from the
    // rightmost positive entry before the last slot, carrying the tail.
    std::size_t j = m;  // sentinel: no pivot
    for (std::size_t i = m - 1; i-- > 0;) {
        if (parts_[i] > 0) { j = i; break; }
    }
    if (j == m) {
        done_ = true;
        return *this;
    }
    unsigned long tail = parts_[m - 1];
    parts_[j] -= 1;
    for (std::size_t i = j + 1; i < m; ++i) parts_[i] = 0;
    parts_[j + 1] = tail + 1;
    return *this;
}

}  // namespace betakit
