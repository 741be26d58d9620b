// weight.hpp
// Finitely supported non-negative weights. Entries with w(n) = 0 are
// dropped so the stored support is exactly {n : w(n) > 0}. The additive
// four-function energy accepts any support; the multiplicative operations
// (Fourier transform, GCD sums, product T_k) require positive support and
// enforce it at their own boundary.

#pragma once
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "energylab/errors.hpp"

namespace energylab {

class Weight {
public:
    Weight() = default;

    explicit Weight(std::vector<std::pair<std::int64_t, double>> entries) {
        std::sort(entries.begin(), entries.end());
        for (auto& [n, w] : entries) {
            if (!(w >= 0) || !std::isfinite(w))
                throw domain_error("Weight: value at " + std::to_string(n) + " must be finite and >= 0");
            if (w == 0) continue;
            if (!entries_.empty() && entries_.back().first == n)
                throw domain_error("Weight: duplicate support point " + std::to_string(n));
            entries_.emplace_back(n, w);
        }
    }

    static Weight indicator(std::initializer_list<std::int64_t> support) {
        std::vector<std::pair<std::int64_t, double>> e;
        for (std::int64_t n : support) e.emplace_back(n, 1.0);
        return Weight(std::move(e));
    }

    std::size_t support_size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    const std::vector<std::pair<std::int64_t, double>>& entries() const { return entries_; }
    auto begin() const { return entries_.begin(); }
    auto end() const { return entries_.end(); }

    double at(std::int64_t n) const {
        auto it = std::lower_bound(entries_.begin(), entries_.end(), n,
                                   [](const auto& e, std::int64_t v) { return e.first < v; });
        return (it != entries_.end() && it->first == n) ? it->second : 0.0;
    }

    bool support_positive() const {
        return entries_.empty() || entries_.front().first > 0;
    }

    double l1_norm() const {
        double s = 0;
        for (const auto& [n, w] : entries_) s += w;
        return s;
    }

    double l2_norm_sq() const {
        double s = 0;
        for (const auto& [n, w] : entries_) s += w * w;
        return s;
    }

    Weight scaled(double c) const {
        if (!(c >= 0) || !std::isfinite(c)) throw domain_error("Weight::scaled: factor must be finite and >= 0");
        std::vector<std::pair<std::int64_t, double>> e = entries_;
        for (auto& [n, w] : e) w *= c;
        return Weight(std::move(e));
    }

private:
    std::vector<std::pair<std::int64_t, double>> entries_; // sorted by support point
};

// Weight file format: lines "n<TAB>w" with n a nonzero decimal integer and
// w a non-negative decimal; '#' starts a comment.
inline Weight read_weight_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open weight file: " + path);
    std::vector<std::pair<std::int64_t, double>> entries;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos) throw io_error(path + ":" + std::to_string(lineno) + ": expected 'n<TAB>w'");
        try {
            const std::int64_t n = std::stoll(line.substr(0, tab));
            const double w = std::stod(line.substr(tab + 1));
            if (n == 0) throw io_error(path + ":" + std::to_string(lineno) + ": support point must be nonzero");
            entries.emplace_back(n, w);
        } catch (const io_error&) {
            throw;
        } catch (const std::exception&) {
            throw io_error(path + ":" + std::to_string(lineno) + ": malformed weight line");
        }
    }
    try {
        return Weight(std::move(entries));
    } catch (const domain_error& e) {
        throw io_error(path + ": " + e.what());
    }
}

inline void write_weight_file(const Weight& w, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot write weight file: " + path);
    out.precision(17);
    for (const auto& [n, v] : w) out << n << '\t' << v << '\n';
    if (!out) throw io_error("write failed: " + path);
}

} // namespace energylab
