// bounds.hpp
// Formula evaluators for every right-hand side the experiments compare
// against, with the suppressed absolute constants exposed as explicit
// parameters (default 1). The evaluators report values and hypothesis
// flags; they never adjudicate pass/fail against unknown constants.
//
// Logarithms are base 2 throughout; exp is the natural exponential.

#pragma once
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "energylab/energy.hpp"
#include "energylab/errors.hpp"
#include "energylab/numtheory.hpp"
#include "energylab/weight.hpp"

namespace energylab {

// Pairing of a measured quantity with a bound value at chosen constants.
struct BoundReport {
    double measured = 0;
    double bound_rhs = 0;
    double ratio = 0; // measured / bound_rhs when bound_rhs > 0
    std::vector<std::pair<std::string, double>> constants;
    std::vector<std::pair<std::string, bool>> hypothesis_flags;
};

inline BoundReport make_report(double measured, double bound_rhs,
                               std::vector<std::pair<std::string, double>> constants = {},
                               std::vector<std::pair<std::string, bool>> flags = {}) {
    BoundReport r;
    r.measured = measured;
    r.bound_rhs = bound_rhs;
    r.ratio = bound_rhs > 0 ? measured / bound_rhs : std::numeric_limits<double>::quiet_NaN();
    r.constants = std::move(constants);
    r.hypothesis_flags = std::move(flags);
    return r;
}

// Norm bundle for the weighted bounds: l1 norm, l2 norm, and the higher
// multiplicative energy T_{s+1}(w).
struct WeightNorms {
    double l1 = 0;
    double l2 = 0;
    double t_next = 0; // T^x_{s+1}(w)
};

inline WeightNorms weight_norms(const Weight& w, int s) {
    WeightNorms n;
    n.l1 = w.l1_norm();
    n.l2 = std::sqrt(w.l2_norm_sq());
    n.t_next = t_energy_weighted(w, s + 1, SetOp::product);
    return n;
}

namespace detail {

// log2(T_{s+1} * l2^(-2(s+1))), the recurring inner logarithm. Genuinely
// negative values cannot occur for real norms (T_{s+1} >= l2^(2(s+1)) by
// the power-mean inequality) and flag data errors; equality cases land a
// rounding ulp below zero and are not errors.
inline double inner_log(const WeightNorms& n, int s, bool& ok) {
    const double v = std::log2(n.t_next) - 2.0 * (s + 1) * std::log2(n.l2);
    ok = v >= -1e-9 && std::isfinite(v);
    return std::max(v, 0.0);
}

} // namespace detail

// E^x([N], w) bounds: the T_{s+1} form and the weaker l1 form.
struct RadziwillRhs {
    double t_form = 0;
    double l1_form = 0;
    bool norms_consistent = true; // inner logs were non-negative
};

inline RadziwillRhs radziwill_rhs(std::int64_t big_n, const WeightNorms& norms, int s, double constant_c) {
    if (big_n < 3) throw domain_error("radziwill_rhs: N must be >= 3 so log log N is defined");
    if (s < 1) throw domain_error("radziwill_rhs: s must be a positive integer");
    if (!(norms.l1 > 0 && norms.l2 > 0 && norms.t_next > 0))
        throw domain_error("radziwill_rhs: norms must be positive");
    const double loglog_n = std::log2(std::log2(static_cast<double>(big_n)));
    const double l2sq = norms.l2 * norms.l2;
    RadziwillRhs out;
    bool ok_t = true, ok_l1 = true;
    const double x = detail::inner_log(norms, s, ok_t);
    out.t_form = static_cast<double>(big_n) * l2sq *
                 std::exp(constant_c * std::sqrt(x / s * loglog_n) + 2.0 * loglog_n);
    const double ratio_log = std::log2(norms.l1) - std::log2(norms.l2);
    ok_l1 = ratio_log >= 0;
    out.l1_form = static_cast<double>(big_n) * l2sq *
                  std::exp(constant_c * std::sqrt(loglog_n * std::max(ratio_log, 0.0)) + 2.0 * loglog_n);
    out.norms_consistent = ok_t && ok_l1;
    return out;
}

// E^x(P_z, w) bound and its epsilon variant, with the hypothesis
// log2(T_{s+1} l2^(-2(s+1))) <= s z / log2 z reported alongside.
struct PzRhs {
    double value = 0;
    bool condition_l = true;      // the stated hypothesis on T_{s+1}
    bool norms_consistent = true;
};

inline PzRhs pz_rhs(std::int64_t z, const WeightNorms& norms, int s, double alpha, double constant_c) {
    if (z < 3) throw domain_error("pz_rhs: z must be >= 3");
    if (s < 1) throw domain_error("pz_rhs: s must be a positive integer");
    PzRhs out;
    const double x = detail::inner_log(norms, s, out.norms_consistent);
    out.condition_l = x <= static_cast<double>(s) * static_cast<double>(z) / std::log2(static_cast<double>(z));
    const double zd = static_cast<double>(z);
    out.value = std::pow(zd, 2.0 * alpha) * norms.l2 * norms.l2 *
                std::exp(constant_c * std::pow(zd, 0.5 - alpha) * std::sqrt(x / (s * std::log2(zd))));
    return out;
}

inline PzRhs pz_rhs_eps(std::int64_t z, const WeightNorms& norms, int s, double eps, double constant_c) {
    if (z < 3) throw domain_error("pz_rhs_eps: z must be >= 3");
    if (s < 1) throw domain_error("pz_rhs_eps: s must be a positive integer");
    if (!(eps > 0)) throw domain_error("pz_rhs_eps: eps must be positive");
    PzRhs out;
    const double x = detail::inner_log(norms, s, out.norms_consistent);
    out.condition_l = x <= static_cast<double>(s) * static_cast<double>(z) / std::log2(static_cast<double>(z));
    const double zd = static_cast<double>(z);
    out.value = (eps * zd) * (eps * zd) * norms.l2 * norms.l2 *
                std::exp(constant_c / (eps * std::sqrt(zd)) * std::sqrt(x / (s * std::log2(zd))));
    return out;
}

// Prime-repulsion hypothesis check: does log2|S| <= constant * eps*l/log2(l)
// hold, and what normalized-energy threshold eps*|P^(l)|^2*|S| does the
// conclusion assert. The suppressed constant is a knob (default 1).
struct ApInGCheck {
    bool condition_holds = false;
    double lhs = 0;        // log2 |S|
    double rhs = 0;        // constant * eps * l / log2 l
    double threshold = 0;  // eps * |P^(l)|^2 * |S|
    std::int64_t prime_count = 0;
};

inline ApInGCheck ap_in_g_check(std::int64_t l, std::int64_t s_size, double eps, double constant = 1.0,
                                std::int64_t prime_count = -1) {
    if (l < 3) throw domain_error("ap_in_g_check: l must be >= 3");
    if (s_size < 1) throw domain_error("ap_in_g_check: |S| must be positive");
    ApInGCheck out;
    out.prime_count = prime_count >= 0
                          ? prime_count
                          : static_cast<std::int64_t>(sieve_primes(l).primes.size());
    out.lhs = std::log2(static_cast<double>(s_size));
    out.rhs = constant * eps * static_cast<double>(l) / std::log2(static_cast<double>(l));
    out.condition_holds = out.lhs <= out.rhs;
    out.threshold = eps * static_cast<double>(out.prime_count) * static_cast<double>(out.prime_count) *
                    static_cast<double>(s_size);
    return out;
}

// |I|^(2^(l+1) - c log2 l), the higher-energy decay target. Returns the
// literal value (finite only for small l); the exponent is also exposed
// since scans work in log space.
inline double tl_rhs_exponent(std::int64_t i_size, int l, double c) {
    if (i_size < 2) throw domain_error("tl_rhs: |I| must be >= 2");
    if (l < 1) throw domain_error("tl_rhs: l must be >= 1");
    (void)i_size;
    return std::pow(2.0, l + 1) - c * std::log2(static_cast<double>(l));
}

inline double tl_rhs(std::int64_t i_size, int l, double c) {
    return std::pow(static_cast<double>(i_size), tl_rhs_exponent(i_size, l, c));
}

// Growth factor exp(C log2^(1-3a)|A|) of the shifted-product theorem; the
// conclusion compares |(A-a)S| against |S| times this factor.
inline double t_as_rhs(std::int64_t a_size, double alpha, double constant_c) {
    if (a_size < 2) throw domain_error("t_as_rhs: |A| must be >= 2");
    if (!(alpha >= 0 && alpha < 1.0 / 6.0)) throw domain_error("t_as_rhs: alpha must lie in [0, 1/6)");
    return std::exp(constant_c * std::pow(std::log2(static_cast<double>(a_size)), 1.0 - 3.0 * alpha));
}

// Witness-fraction floor exp(-C log2^(1-6a)|A|) for the same theorem.
inline double t_as_witness_fraction(std::int64_t a_size, double alpha, double constant_c) {
    if (a_size < 2) throw domain_error("t_as_witness_fraction: |A| must be >= 2");
    return std::exp(-constant_c * std::pow(std::log2(static_cast<double>(a_size)), 1.0 - 6.0 * alpha));
}

// Incidence bound sqrt(|B||C|) |I| |B|^(-delta).
inline double inc_rhs(std::int64_t i_size, std::int64_t b_size, std::int64_t c_size, double delta) {
    if (i_size < 2 || b_size < 2 || c_size < 2) throw domain_error("inc_rhs: sizes must be >= 2");
    return std::sqrt(static_cast<double>(b_size) * static_cast<double>(c_size)) * static_cast<double>(i_size) *
           std::pow(static_cast<double>(b_size), -delta);
}

// Convex-image energy bound |I|^2 |B|^(1-delta).
inline double ef_rhs(std::int64_t i_size, std::int64_t b_size, double delta) {
    if (i_size < 2 || b_size < 2) throw domain_error("ef_rhs: sizes must be >= 2");
    return static_cast<double>(i_size) * static_cast<double>(i_size) *
           std::pow(static_cast<double>(b_size), 1.0 - delta);
}

// Shifted-product growth target |A|^(c log2 m).
inline double product_growth_rhs(std::int64_t a_size, int m, double c) {
    if (a_size < 2) throw domain_error("product_growth_rhs: |A| must be >= 2");
    if (m < 1) throw domain_error("product_growth_rhs: m must be >= 1");
    return std::pow(static_cast<double>(a_size), c * std::log2(static_cast<double>(m)));
}

// C(alpha) = alpha/(1-alpha) + alpha/(2 alpha - 1) for 1/2 < alpha < 1.
inline double c_alpha(double alpha) {
    if (!(alpha > 0.5 && alpha < 1.0)) throw domain_error("c_alpha: alpha must lie in (1/2, 1)");
    return alpha / (1.0 - alpha) + alpha / (2.0 * alpha - 1.0);
}

} // namespace energylab
