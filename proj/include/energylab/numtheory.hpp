// numtheory.hpp
// Prime sieving, factorization, gcd and truncated zeta values. PrimeTable is
// immutable after construction and shared freely across threads.

#pragma once
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "energylab/errors.hpp"

namespace energylab {

struct PrimeTable {
    std::int64_t limit = 0;
    std::vector<std::int64_t> primes; // ascending, all primes <= limit

    bool contains(std::int64_t p) const {
        return std::binary_search(primes.begin(), primes.end(), p);
    }

    // Number of primes <= x (x <= limit).
    std::size_t count_upto(std::int64_t x) const {
        return static_cast<std::size_t>(std::upper_bound(primes.begin(), primes.end(), x) - primes.begin());
    }
};

namespace detail {

inline std::vector<std::int64_t> simple_sieve(std::int64_t limit) {
    std::vector<char> composite(static_cast<std::size_t>(limit) + 1, 0);
    std::vector<std::int64_t> primes;
    for (std::int64_t i = 2; i <= limit; ++i) {
        if (composite[static_cast<std::size_t>(i)]) continue;
        primes.push_back(i);
        for (std::int64_t j = i * i; j <= limit; j += i) composite[static_cast<std::size_t>(j)] = 1;
    }
    return primes;
}

} // namespace detail

// All primes <= limit. Simple sieve up to 1e6, segmented above that so the
// working set stays O(sqrt(limit) + segment).
inline PrimeTable sieve_primes(std::int64_t limit) {
    if (limit < 2 || static_cast<std::uint64_t>(limit) > sieve_ceiling)
        throw ceiling_error("sieve_primes: limit " + std::to_string(limit) + " outside [2, " +
                            std::to_string(sieve_ceiling) + "]");
    PrimeTable table;
    table.limit = limit;
    if (limit <= 1000000) {
        table.primes = detail::simple_sieve(limit);
        return table;
    }
    const auto root = static_cast<std::int64_t>(std::sqrt(static_cast<double>(limit))) + 1;
    const auto base = detail::simple_sieve(root);
    table.primes = base;
    constexpr std::int64_t segment = 1 << 20;
    std::vector<char> composite(segment);
    for (std::int64_t lo = root + 1; lo <= limit; lo += segment) {
        const std::int64_t hi = std::min(lo + segment - 1, limit);
        std::fill(composite.begin(), composite.begin() + (hi - lo + 1), 0);
        for (std::int64_t p : base) {
            if (p * p > hi) break;
            std::int64_t start = ((lo + p - 1) / p) * p;
            if (start < p * p) start = p * p;
            for (std::int64_t j = start; j <= hi; j += p) composite[static_cast<std::size_t>(j - lo)] = 1;
        }
        for (std::int64_t n = lo; n <= hi; ++n)
            if (!composite[static_cast<std::size_t>(n - lo)]) table.primes.push_back(n);
    }
    return table;
}

// Primes in the half-open range [lo, hi).
inline std::vector<std::int64_t> primes_in(std::int64_t lo, std::int64_t hi, const PrimeTable& table) {
    if (!(2 <= lo && lo < hi && hi <= table.limit + 1))
        throw domain_error("primes_in: range [" + std::to_string(lo) + ", " + std::to_string(hi) +
                           ") not within table limit " + std::to_string(table.limit));
    auto first = std::lower_bound(table.primes.begin(), table.primes.end(), lo);
    auto last = std::lower_bound(first, table.primes.end(), hi);
    return std::vector<std::int64_t>(first, last);
}

struct Factorization {
    std::int64_t value = 1;
    std::vector<std::pair<std::int64_t, int>> factors; // (prime, exponent), ascending
};

// Trial division against the table. Every prime factor must be <= table.limit;
// inputs in the experiments stay well inside 2^63 so no general-purpose
// factoring is attempted.
inline Factorization factorize(std::int64_t n, const PrimeTable& table) {
    if (n < 1) throw domain_error("factorize: n must be positive, got " + std::to_string(n));
    Factorization f;
    f.value = n;
    std::int64_t cur = n;
    for (std::int64_t p : table.primes) {
        if (p * p > cur) break;
        if (cur % p != 0) continue;
        int e = 0;
        while (cur % p == 0) {
            cur /= p;
            ++e;
        }
        f.factors.emplace_back(p, e);
    }
    if (cur > 1) {
        if (cur > table.limit)
            throw domain_error("factorize: factor " + std::to_string(cur) + " of " + std::to_string(n) +
                               " exceeds table limit " + std::to_string(table.limit));
        f.factors.emplace_back(cur, 1);
    }
    return f;
}

// Truncated zeta value: sum_{t<=n_max} t^(-2*alpha) together with the
// integral-comparison tail bound n_max^(1-2a)/(2a-1), so that
// zeta(2*alpha) lies in [value, value + tail_bound].
struct PartialZeta {
    double value = 0;
    double tail_bound = 0;
};

inline PartialZeta partial_zeta(double alpha, std::int64_t n_max) {
    if (!(2 * alpha > 1)) throw domain_error("partial_zeta: series diverges for 2*alpha <= 1");
    if (n_max < 1) throw domain_error("partial_zeta: n_max must be positive");
    // Smallest terms first for accuracy.
    double value = 0;
    for (std::int64_t t = n_max; t >= 1; --t) value += std::pow(static_cast<double>(t), -2.0 * alpha);
    const double tail = std::pow(static_cast<double>(n_max), 1.0 - 2.0 * alpha) / (2.0 * alpha - 1.0);
    return {value, tail};
}

inline std::int64_t gcd(std::int64_t a, std::int64_t b) {
    if (a == 0 && b == 0) throw domain_error("gcd(0,0) is undefined");
    return std::gcd(a, b);
}

} // namespace energylab
