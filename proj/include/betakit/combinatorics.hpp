#pragma once

#include <cstddef>
#include <iterator>
#include <vector>

#include "betakit/rational.hpp"

namespace betakit {

BigInt factorial(unsigned long n);

// C(n, k); zero outside 0 <= k <= n.
BigInt binomial(unsigned long n, long k);

// n! / (k_1! ... k_m!).  Rejects parts that do not sum to n.
BigInt multinomial(unsigned long n, const std::vector<unsigned long>& parts);

// Number of weak compositions of n into m parts, C(n+m-1, m-1).
BigInt composition_count(unsigned long n, unsigned long m);

// Streams the weak compositions of n into m >= 1 non-negative parts, in
// lexicographically descending order: (n,0,...,0), ..., (0,...,0,n).
class CompositionRange {
public:
    CompositionRange(unsigned long n, unsigned long m);

    class iterator {
    public:
        using value_type = std::vector<unsigned long>;
        using reference = const value_type&;
        using pointer = const value_type*;
        using difference_type = std::ptrdiff_t;
        using iterator_category = std::input_iterator_tag;

        iterator() = default;
        iterator(unsigned long n, unsigned long m);

        reference operator*() const { return parts_; }
        pointer operator->() const { return &parts_; }
        iterator& operator++();
        friend bool operator==(const iterator& a, const iterator& b) {
            return a.done_ == b.done_ && (a.done_ || a.parts_ == b.parts_);
        }
        friend bool operator!=(const iterator& a, const iterator& b) { return !(a == b); }

    private:
        std::vector<unsigned long> parts_;
        bool done_ = true;
    };

    iterator begin() const { return iterator(n_, m_); }
    iterator end() const { return iterator(); }

private:
    unsigned long n_;
    unsigned long m_;
};

inline CompositionRange compositions(unsigned long n, unsigned long m) {
    return CompositionRange(n, m);
}

}  // namespace betakit
