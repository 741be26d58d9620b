// intset.hpp
// Finite sets of signed integers, the A, B, S, I of the experiments.
// Elements are kept sorted and unique with magnitude below 2^63 (INT64_MIN is
// rejected). All arithmetic that could leave that range is checked: a sumset
// or product set that would wrap aborts with a structured error naming the
// offending pair instead of corrupting counts silently.

#pragma once
#include <algorithm>
#include <cstdint>
#include <fstream>
#include <span>
#include <string>
#include <vector>

#include "energylab/errors.hpp"
#include "energylab/int128.hpp"

namespace energylab {

class IntSet {
public:
    IntSet() = default;

    explicit IntSet(std::vector<std::int64_t> elements) : v_(std::move(elements)) {
        for (std::int64_t x : v_)
            if (x == INT64_MIN) throw domain_error("IntSet: INT64_MIN exceeds 63-bit magnitude");
        std::sort(v_.begin(), v_.end());
        v_.erase(std::unique(v_.begin(), v_.end()), v_.end());
    }

    IntSet(std::initializer_list<std::int64_t> elements) : IntSet(std::vector<std::int64_t>(elements)) {}

    // Caller guarantees sorted/unique/in-range (internal fast path).
    static IntSet from_sorted(std::vector<std::int64_t> elements) {
        IntSet s;
        s.v_ = std::move(elements);
        return s;
    }

    std::size_t size() const { return v_.size(); }
    bool empty() const { return v_.empty(); }
    bool contains(std::int64_t x) const { return std::binary_search(v_.begin(), v_.end(), x); }
    std::int64_t operator[](std::size_t i) const { return v_[i]; }
    std::int64_t min() const { return v_.front(); }
    std::int64_t max() const { return v_.back(); }
    const std::vector<std::int64_t>& elements() const { return v_; }
    auto begin() const { return v_.begin(); }
    auto end() const { return v_.end(); }
    bool operator==(const IntSet& o) const { return v_ == o.v_; }

private:
    std::vector<std::int64_t> v_;
};

namespace detail {

inline void check_pair_budget(std::size_t a, std::size_t b, const char* what) {
    const u128 pairs = static_cast<u128>(a) * static_cast<u128>(b);
    if (pairs > pair_ceiling())
        throw ceiling_error(std::string(what) + ": " + std::to_string(a) + " x " + std::to_string(b) +
                            " pairs exceed ceiling " + std::to_string(pair_ceiling()));
}

template <typename F>
IntSet pairwise(const IntSet& a, const IntSet& b, const char* what, F&& combine) {
    check_pair_budget(a.size(), b.size(), what);
    std::vector<std::int64_t> out;
    out.reserve(a.size() * b.size());
    for (std::int64_t x : a)
        for (std::int64_t y : b) out.push_back(combine(x, y));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return IntSet::from_sorted(std::move(out));
}

} // namespace detail

inline IntSet sumset(const IntSet& a, const IntSet& b) {
    return detail::pairwise(a, b, "sumset", [](std::int64_t x, std::int64_t y) { return checked_add(x, y, "sumset"); });
}

inline IntSet difference_set(const IntSet& a, const IntSet& b) {
    return detail::pairwise(a, b, "difference_set",
                            [](std::int64_t x, std::int64_t y) { return checked_sub(x, y, "difference_set"); });
}

inline IntSet product_set(const IntSet& a, const IntSet& b) {
    return detail::pairwise(a, b, "product_set",
                            [](std::int64_t x, std::int64_t y) { return checked_mul(x, y, "product_set"); });
}

inline IntSet dilate(const IntSet& a, std::int64_t d) {
    if (d == 0) throw domain_error("dilate: d = 0 collapses the set");
    std::vector<std::int64_t> out;
    out.reserve(a.size());
    for (std::int64_t x : a) out.push_back(checked_mul(x, d, "dilate"));
    std::sort(out.begin(), out.end());
    return IntSet::from_sorted(std::move(out));
}

inline IntSet translate(const IntSet& a, std::int64_t t) {
    std::vector<std::int64_t> out;
    out.reserve(a.size());
    for (std::int64_t x : a) out.push_back(checked_add(x, t, "translate"));
    return IntSet::from_sorted(std::move(out));
}

// n-fold sumset nA = A + ... + A (n >= 1), minus m-fold: nA - mA.
inline IntSet iterated_sumset(const IntSet& a, int n, int m = 0) {
    if (n < 1) throw domain_error("iterated_sumset: n must be >= 1");
    IntSet acc = a;
    for (int i = 1; i < n; ++i) acc = sumset(acc, a);
    for (int i = 0; i < m; ++i) acc = difference_set(acc, a);
    return acc;
}

// Set file format: one decimal integer per line, '#' starts a comment,
// duplicates tolerated and removed.
inline IntSet read_set_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open set file: " + path);
    std::vector<std::int64_t> vals;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto last = line.find_last_not_of(" \t\r");
        const std::string tok = line.substr(first, last - first + 1);
        try {
            std::size_t used = 0;
            const std::int64_t v = std::stoll(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            vals.push_back(v);
        } catch (const std::exception&) {
            throw io_error(path + ":" + std::to_string(lineno) + ": not an integer: '" + tok + "'");
        }
        if (vals.size() > generate_ceiling)
            throw ceiling_error(path + ": set exceeds cardinality ceiling " + std::to_string(generate_ceiling));
    }
    return IntSet(std::move(vals));
}

inline void write_set_file(const IntSet& s, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot write set file: " + path);
    for (std::int64_t x : s) out << x << '\n';
    if (!out) throw io_error("write failed: " + path);
}

} // namespace energylab
