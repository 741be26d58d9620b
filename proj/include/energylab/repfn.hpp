// repfn.hpp
// Representation functions r_{A+B}, r_{A-B}, r_{AB} as materialized
// multiplicity tables, plus the iterated convolutions behind the higher
// energies T_k. Tables are sorted by value; counts are checked 64-bit.

#pragma once
#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "energylab/errors.hpp"
#include "energylab/int128.hpp"
#include "energylab/intset.hpp"

namespace energylab {

enum class SetOp { sum, difference, product };

inline const char* name(SetOp op) {
    switch (op) {
        case SetOp::sum: return "sum";
        case SetOp::difference: return "difference";
        case SetOp::product: return "product";
    }
    return "?";
}

namespace detail {

inline std::uint64_t checked_add_u64(std::uint64_t a, std::uint64_t b) {
    const std::uint64_t r = a + b;
    if (r < a) throw overflow_error("multiplicity count overflow");
    return r;
}

inline std::int64_t apply_op(SetOp op, std::int64_t x, std::int64_t y, const char* what) {
    switch (op) {
        case SetOp::sum: return checked_add(x, y, what);
        case SetOp::difference: return checked_sub(x, y, what);
        case SetOp::product: return checked_mul(x, y, what);
    }
    throw domain_error("bad SetOp");
}

} // namespace detail

// Multiplicity table: (value, count) sorted by value, counts >= 1.
using RepTable = std::vector<std::pair<std::int64_t, std::uint64_t>>;

struct RepFunction {
    SetOp op = SetOp::sum;
    RepTable table;

    std::uint64_t at(std::int64_t x) const {
        auto it = std::lower_bound(table.begin(), table.end(), x,
                                   [](const auto& e, std::int64_t v) { return e.first < v; });
        return (it != table.end() && it->first == x) ? it->second : 0;
    }

    u128 mass() const {
        u128 m = 0;
        for (const auto& [v, c] : table) m = checked_add_u128(m, c);
        return m;
    }
};

namespace detail {

inline RepTable table_from_map(std::unordered_map<std::int64_t, std::uint64_t>&& m) {
    RepTable t;
    t.reserve(m.size());
    for (const auto& [v, c] : m) t.emplace_back(v, c);
    std::sort(t.begin(), t.end());
    return t;
}

// Convolve a multiplicity table with a plain set under op. Dense
// accumulation when the value span is small, hash map otherwise.
inline RepTable convolve_set(const RepTable& t, const IntSet& a, SetOp op, const char* what) {
    if (t.empty() || a.empty()) return {};
    const u128 cost = static_cast<u128>(t.size()) * a.size();
    if (cost > pair_ceiling())
        throw ceiling_error(std::string(what) + ": convolution cost " + to_string(cost) + " exceeds ceiling " +
                            std::to_string(pair_ceiling()) + "; use a smaller set or lower k");

    constexpr std::int64_t dense_span_limit = 1 << 23;
    if (op == SetOp::sum) {
        const i128 lo = static_cast<i128>(t.front().first) + a.min();
        const i128 hi = static_cast<i128>(t.back().first) + a.max();
        if (hi - lo < dense_span_limit) {
            // Still range-check each output value against the 63-bit contract.
            std::vector<std::uint64_t> acc(static_cast<std::size_t>(hi - lo) + 1, 0);
            for (const auto& [v, c] : t)
                for (std::int64_t x : a) {
                    const std::int64_t key = checked_add(v, x, what);
                    auto& slot = acc[static_cast<std::size_t>(static_cast<i128>(key) - lo)];
                    slot = checked_add_u64(slot, c);
                }
            RepTable out;
            for (std::size_t i = 0; i < acc.size(); ++i)
                if (acc[i]) out.emplace_back(static_cast<std::int64_t>(static_cast<i128>(i) + lo), acc[i]);
            return out;
        }
    }
    std::unordered_map<std::int64_t, std::uint64_t> m;
    m.reserve(std::min<std::size_t>(t.size() * a.size(), std::size_t{1} << 22));
    for (const auto& [v, c] : t)
        for (std::int64_t x : a) {
            auto& slot = m[apply_op(op, v, x, what)];
            slot = checked_add_u64(slot, c);
        }
    return table_from_map(std::move(m));
}

inline RepTable rep_of_set(const IntSet& a) {
    RepTable t;
    t.reserve(a.size());
    for (std::int64_t x : a) t.emplace_back(x, 1);
    return t;
}

} // namespace detail

// Exact multiplicity table of {a op b}. The mass identity
// sum_x r(x) = |A|*|B| holds by construction.
inline RepFunction rep_function(const IntSet& a, const IntSet& b, SetOp op) {
    const u128 pairs = static_cast<u128>(a.size()) * b.size();
    if (pairs > pair_ceiling())
        throw ceiling_error("rep_function: " + to_string(pairs) + " pairs exceed ceiling " +
                            std::to_string(pair_ceiling()) + "; use the streaming energy operation instead");
    std::unordered_map<std::int64_t, std::uint64_t> m;
    m.reserve(std::min<std::size_t>(static_cast<std::size_t>(pairs), std::size_t{1} << 22));
    for (std::int64_t x : a)
        for (std::int64_t y : b) {
            auto& slot = m[detail::apply_op(op, x, y, "rep_function")];
            slot = detail::checked_add_u64(slot, 1);
        }
    RepFunction r;
    r.op = op;
    r.table = detail::table_from_map(std::move(m));
    return r;
}

} // namespace energylab
