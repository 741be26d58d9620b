// energy.hpp
// Exact energy computations: common additive/multiplicative energy of two
// sets, higher energies T_k, the weighted four-function energy, the
// zero-based AP search and incidence counting.
//
// Counters are exact unsigned 128-bit integers; quadruple counts for
// 1e5-element sets reach ~1e15, beyond the 2^53 range where doubles stay
// exact. Keys for pairwise sums/products are formed in 128 bits, so the
// collision counting itself can never wrap no matter the inputs.
//
// Concurrency: large instances are counted by hashing keys into value
// buckets, sorting each bucket, and summing run lengths squared. Bucket
// contents depend only on the key values, and 128-bit integer addition is
// exact and commutative, so the result is bit-identical for every thread
// count.

#pragma once
#include <algorithm>
#include <cstdint>
#include <string>
#include <thread>
#include <vector>

#include "energylab/errors.hpp"
#include "energylab/int128.hpp"
#include "energylab/intset.hpp"
#include "energylab/repfn.hpp"
#include "energylab/rng.hpp"
#include "energylab/weight.hpp"

namespace energylab {

enum class EnergyKind { additive, multiplicative, t_sum, t_product };

struct EnergyValue {
    u128 value = 0;
    EnergyKind kind = EnergyKind::additive;
    int k = 1;                 // fold count for the T_k kinds
    u128 diagonal_floor = 0;   // trivial lower bound (all-diagonal tuples)
    bool zero_warning = false; // 0 in a multiplicative input absorbs products
};

struct EnergyOptions {
    int threads = 1;
};

namespace detail {

inline std::uint64_t key_hash(i128 key) {
    const auto lo = static_cast<std::uint64_t>(static_cast<u128>(key));
    const auto hi = static_cast<std::uint64_t>(static_cast<u128>(key) >> 64);
    return rng::splitmix64(lo ^ rng::splitmix64(hi));
}

inline u128 sum_sq_runs(std::vector<i128>& keys) {
    std::sort(keys.begin(), keys.end());
    u128 total = 0;
    std::size_t i = 0;
    while (i < keys.size()) {
        std::size_t j = i + 1;
        while (j < keys.size() && keys[j] == keys[i]) ++j;
        const u128 c = j - i;
        total = checked_add_u128(total, c * c);
        i = j;
    }
    return total;
}

// sum_x r(x)^2 where r is the multiplicity of "a op b" over A x B.
inline u128 collision_energy(const IntSet& a, const IntSet& b, SetOp op, int threads) {
    const u128 pairs128 = static_cast<u128>(a.size()) * b.size();
    if (pairs128 == 0) return 0;
    if (pairs128 > pair_ceiling())
        throw ceiling_error(std::string("energy(") + name(op) + "): " + to_string(pairs128) +
                            " pairs exceed ceiling " + std::to_string(pair_ceiling()));
    const auto pairs = static_cast<std::size_t>(pairs128);

    threads = std::clamp(threads, 1, 64);
    const std::size_t group_cap = std::size_t{1} << 27; // keys held in memory at once (~2 GiB)
    const std::size_t n_groups = (pairs + group_cap - 1) / group_cap;
    const std::size_t n_buckets = pairs > (std::size_t{1} << 16) ? 256 : 1;

    const auto& av = a.elements();
    const auto& bv = b.elements();

    u128 total = 0;
    for (std::size_t g = 0; g < n_groups; ++g) {
        // Fill per-thread, per-bucket key vectors over disjoint row ranges.
        std::vector<std::vector<std::vector<i128>>> parts(
            static_cast<std::size_t>(threads), std::vector<std::vector<i128>>(n_buckets));
        auto fill = [&](int t) {
            auto& mine = parts[static_cast<std::size_t>(t)];
            const std::size_t per_bucket =
                pairs / n_groups / n_buckets / static_cast<std::size_t>(threads) + 16;
            for (auto& v : mine) v.reserve(per_bucket + per_bucket / 4);
            for (std::size_t i = static_cast<std::size_t>(t); i < av.size();
                 i += static_cast<std::size_t>(threads)) {
                const auto x = static_cast<i128>(av[i]);
                for (std::int64_t y : bv) {
                    const i128 key = op == SetOp::product ? x * y
                                   : op == SetOp::sum     ? x + y
                                                          : x - y;
                    const std::uint64_t h = key_hash(key);
                    if (n_groups > 1 && (h & 0xFFFFFFFFULL) % n_groups != g) continue;
                    mine[(h >> 56) & (n_buckets - 1)].push_back(key);
                }
            }
        };
        if (threads == 1) {
            fill(0);
        } else {
            std::vector<std::thread> pool;
            for (int t = 0; t < threads; ++t) pool.emplace_back(fill, t);
            for (auto& th : pool) th.join();
        }

        // Sort and count each bucket. 128-bit addition is exact, so the
        // accumulation order cannot change the result.
        std::vector<u128> bucket_total(n_buckets, 0);
        auto count_bucket = [&](std::size_t k) {
            std::size_t n = 0;
            for (int t = 0; t < threads; ++t) n += parts[static_cast<std::size_t>(t)][k].size();
            std::vector<i128> keys;
            keys.reserve(n);
            for (int t = 0; t < threads; ++t) {
                auto& src = parts[static_cast<std::size_t>(t)][k];
                keys.insert(keys.end(), src.begin(), src.end());
                src.clear();
                src.shrink_to_fit();
            }
            bucket_total[k] = sum_sq_runs(keys);
        };
        if (threads == 1) {
            for (std::size_t k = 0; k < n_buckets; ++k) count_bucket(k);
        } else {
            std::vector<std::thread> pool;
            for (int t = 0; t < threads; ++t)
                pool.emplace_back([&, t] {
                    for (std::size_t k = static_cast<std::size_t>(t); k < n_buckets;
                         k += static_cast<std::size_t>(threads))
                        count_bucket(k);
                });
            for (auto& th : pool) th.join();
        }
        for (std::size_t k = 0; k < n_buckets; ++k) total = checked_add_u128(total, bucket_total[k]);
    }
    return total;
}

inline u128 checked_pow_u128(u128 base, int exp, const char* what) {
    u128 r = 1;
    for (int i = 0; i < exp; ++i) r = checked_mul_u128(r, base);
    (void)what;
    return r;
}

} // namespace detail

// General two-set energy sum_x r(x)^2 under the given operation.
inline EnergyValue pair_energy(const IntSet& a, const IntSet& b, SetOp op, const EnergyOptions& opts = {}) {
    EnergyValue e;
    e.kind = op == SetOp::product ? EnergyKind::multiplicative : EnergyKind::additive;
    e.k = 1;
    e.diagonal_floor = static_cast<u128>(a.size()) * b.size();
    e.zero_warning = op == SetOp::product && (a.contains(0) || b.contains(0));
    e.value = detail::collision_energy(a, b, op, opts.threads);
    return e;
}

// E^+(A,B): quadruples (a1,a2,b1,b2) with a1+b1 = a2+b2.
inline EnergyValue additive_energy(const IntSet& a, const IntSet& b, const EnergyOptions& opts = {}) {
    return pair_energy(a, b, SetOp::sum, opts);
}

// E^x(A,B): quadruples with a1*b1 = a2*b2.
inline EnergyValue multiplicative_energy(const IntSet& a, const IntSet& b, const EnergyOptions& opts = {}) {
    return pair_energy(a, b, SetOp::product, opts);
}

// T_k(A): 2k-tuples with equal k-fold sums (or products), as
// sum_x r_{kA}(x)^2 over the iterated convolution. T_1 = |A|.
inline EnergyValue t_energy(const IntSet& a, int k, SetOp op, const EnergyOptions& opts = {}) {
    if (k < 1) throw domain_error("t_energy: k must be >= 1");
    if (op == SetOp::difference) throw domain_error("t_energy: op must be sum or product");
    EnergyValue e;
    e.kind = op == SetOp::product ? EnergyKind::t_product : EnergyKind::t_sum;
    e.k = k;
    e.zero_warning = op == SetOp::product && a.contains(0);
    if (a.empty()) return e;
    e.diagonal_floor = detail::checked_pow_u128(a.size(), k, "t_energy");
    if (k == 1) {
        e.value = a.size();
        return e;
    }
    if (k == 2) {
        // Same count as the streaming pair energy; cheaper for large sets.
        e.value = detail::collision_energy(a, a, op, opts.threads);
        return e;
    }
    RepTable r = detail::rep_of_set(a);
    for (int i = 1; i < k; ++i) r = detail::convolve_set(r, a, op, "t_energy");
    u128 total = 0;
    for (const auto& [v, c] : r) total = checked_add_u128(total, static_cast<u128>(c) * c);
    e.value = total;
    return e;
}

// T_k of a weight under sum or product: the k-fold self-convolution of w,
// then the sum of squared values. Product kind requires positive support.
inline double t_energy_weighted(const Weight& w, int k, SetOp op) {
    if (k < 1) throw domain_error("t_energy_weighted: k must be >= 1");
    if (op == SetOp::difference) throw domain_error("t_energy_weighted: op must be sum or product");
    if (op == SetOp::product && !w.support_positive())
        throw domain_error("t_energy_weighted: product kind needs positive support");
    std::vector<std::pair<std::int64_t, double>> cur(w.entries());
    for (int i = 1; i < k; ++i) {
        std::vector<std::pair<std::int64_t, double>> next;
        next.reserve(cur.size() * w.support_size());
        for (const auto& [v, c] : cur)
            for (const auto& [x, wx] : w)
                next.emplace_back(detail::apply_op(op, v, x, "t_energy_weighted"), c * wx);
        std::sort(next.begin(), next.end(),
                  [](const auto& p, const auto& q) { return p.first < q.first; });
        std::vector<std::pair<std::int64_t, double>> merged;
        for (const auto& [v, c] : next) {
            if (!merged.empty() && merged.back().first == v) merged.back().second += c;
            else merged.emplace_back(v, c);
        }
        cur = std::move(merged);
    }
    double total = 0;
    for (const auto& [v, c] : cur) total += c * c;
    return total;
}

// Common multiplicative energy of a set with a weight:
// sum_x ( sum_{s*m = x} w(m) )^2 over s in S.
inline double multiplicative_energy(const IntSet& s, const Weight& w) {
    detail::check_pair_budget(s.size(), w.support_size(), "multiplicative_energy(set,weight)");
    std::vector<std::pair<i128, double>> r;
    r.reserve(s.size() * w.support_size());
    for (std::int64_t x : s)
        for (const auto& [m, wm] : w) r.emplace_back(static_cast<i128>(x) * m, wm);
    std::sort(r.begin(), r.end(), [](const auto& p, const auto& q) { return p.first < q.first; });
    double total = 0;
    std::size_t i = 0;
    while (i < r.size()) {
        double acc = r[i].second;
        std::size_t j = i + 1;
        while (j < r.size() && r[j].first == r[i].first) acc += r[j++].second;
        total += acc * acc;
        i = j;
    }
    return total;
}

namespace detail {

// Correlation table: z -> sum_x f(x) g(x+z), sorted by z.
inline std::vector<std::pair<i128, double>> correlation(const Weight& f, const Weight& g) {
    std::vector<std::pair<i128, double>> out;
    out.reserve(f.support_size() * g.support_size());
    for (const auto& [x, fx] : f)
        for (const auto& [y, gy] : g) out.emplace_back(static_cast<i128>(y) - x, fx * gy);
    std::sort(out.begin(), out.end(), [](const auto& p, const auto& q) { return p.first < q.first; });
    std::vector<std::pair<i128, double>> merged;
    for (const auto& [z, v] : out) {
        if (!merged.empty() && merged.back().first == z) merged.back().second += v;
        else merged.emplace_back(z, v);
    }
    return merged;
}

} // namespace detail

// Weighted additive energy of four functions:
//   sum_{x,y,z} f1(x) f2(y) f3(x+z) f4(y+z)
// computed as the inner product of the (f1,f3) and (f2,f4) correlations.
inline double weighted_energy(const Weight& f1, const Weight& f2, const Weight& f3, const Weight& f4) {
    const auto c13 = detail::correlation(f1, f3);
    const auto c24 = detail::correlation(f2, f4);
    double total = 0;
    std::size_t i = 0, j = 0;
    while (i < c13.size() && j < c24.size()) {
        if (c13[i].first < c24[j].first) ++i;
        else if (c24[j].first < c13[i].first) ++j;
        else total += c13[i++].second * c24[j++].second;
    }
    if (!std::isfinite(total)) throw domain_error("weighted_energy: non-finite result");
    return total;
}

// Longest zero-based arithmetic progression {d, 2d, ..., nd} inside S with
// d drawn from S itself; returns (0,0) for empty S or S = {0}.
struct ZeroBasedAp {
    std::uint64_t length = 0;
    std::int64_t step = 0;
};

inline ZeroBasedAp longest_zero_based_ap(const IntSet& s) {
    ZeroBasedAp best;
    for (std::int64_t d : s) {
        if (d == 0) continue;
        std::uint64_t n = 0;
        for (i128 v = d; v >= -static_cast<i128>(INT64_MAX) && v <= static_cast<i128>(INT64_MAX) &&
                         s.contains(static_cast<std::int64_t>(v));
             v += d)
            ++n;
        if (n > best.length) best = {n, d};
    }
    return best;
}

// Distinct-product count |AB| without materializing the set: products are
// compared as 128-bit integers, so |AB| is exact even when the products
// themselves exceed the 63-bit element contract.
inline std::uint64_t product_set_size(const IntSet& a, const IntSet& b) {
    detail::check_pair_budget(a.size(), b.size(), "product_set_size");
    std::vector<i128> keys;
    keys.reserve(a.size() * b.size());
    for (std::int64_t x : a)
        for (std::int64_t y : b) keys.push_back(static_cast<i128>(x) * y);
    std::sort(keys.begin(), keys.end());
    return static_cast<std::uint64_t>(std::unique(keys.begin(), keys.end()) - keys.begin());
}

// Exact |{(v,b,c) in fI x B x C : v + b = c}|.
inline std::uint64_t incidence_count(const IntSet& f_image, const IntSet& b, const IntSet& c) {
    detail::check_pair_budget(f_image.size(), b.size(), "incidence_count");
    std::uint64_t count = 0;
    for (std::int64_t v : f_image)
        for (std::int64_t y : b) {
            const i128 s = static_cast<i128>(v) + y;
            if (s < -static_cast<i128>(INT64_MAX) || s > static_cast<i128>(INT64_MAX)) continue;
            if (c.contains(static_cast<std::int64_t>(s))) ++count;
        }
    return count;
}

} // namespace energylab
