// zeta.hpp
// Random multiplicative machinery: independent uniform phases X_p on the
// unit circle per prime, extended multiplicatively to X_n, the truncated
// random zeta function, the restricted Euler product over primes in [z,2z),
// the random Fourier transform of a weight, Monte Carlo and exact moments,
// and GCD sums.
//
// Phases are stored as angles and products are computed by angle addition
// mod 2*pi, so |X_n| stays at 1 to rounding even over very long products.
// The phase of p under seed s is the pure function
//   theta_p = 2*pi * to_unit(derive(s, domain_phase, p))
// (see rng.hpp), which makes sampling embarrassingly parallel.

#pragma once
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "energylab/energy.hpp"
#include "energylab/errors.hpp"
#include "energylab/intset.hpp"
#include "energylab/numtheory.hpp"
#include "energylab/rng.hpp"
#include "energylab/weight.hpp"

namespace energylab {

namespace detail {

inline double phase_angle(std::uint64_t seed, std::int64_t p) {
    return 2.0 * std::numbers::pi * rng::uniform01(seed, rng::domain_phase, static_cast<std::uint64_t>(p));
}

inline bool is_prime_slow(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Prime factorization by plain trial division; fine at experiment scale.
inline std::vector<std::pair<std::int64_t, int>> factor_slow(std::int64_t n) {
    std::vector<std::pair<std::int64_t, int>> f;
    for (std::int64_t d = 2; d * d <= n; ++d) {
        if (n % d) continue;
        int e = 0;
        while (n % d == 0) {
            n /= d;
            ++e;
        }
        f.emplace_back(d, e);
    }
    if (n > 1) f.emplace_back(n, 1);
    return f;
}

} // namespace detail

class PhaseAssignment {
public:
    PhaseAssignment() = default;

    // Independent uniform phases for the given primes, deterministic in seed.
    static PhaseAssignment sample(const std::vector<std::int64_t>& primes, std::uint64_t seed) {
        PhaseAssignment a;
        a.seed_ = seed;
        a.angles_.reserve(primes.size());
        for (std::int64_t p : primes) {
            if (!detail::is_prime_slow(p))
                throw domain_error("sample_phases: " + std::to_string(p) + " is not prime");
            a.angles_.emplace(p, detail::phase_angle(seed, p));
        }
        return a;
    }

    // Test hook: every phase forced to 1 (angle 0).
    static PhaseAssignment unit(const std::vector<std::int64_t>& primes) {
        PhaseAssignment a;
        a.angles_.reserve(primes.size());
        for (std::int64_t p : primes) {
            if (!detail::is_prime_slow(p))
                throw domain_error("unit phases: " + std::to_string(p) + " is not prime");
            a.angles_.emplace(p, 0.0);
        }
        return a;
    }

    std::uint64_t seed() const { return seed_; }
    std::size_t size() const { return angles_.size(); }
    bool covers(std::int64_t p) const { return angles_.count(p) != 0; }

    double angle(std::int64_t p) const {
        auto it = angles_.find(p);
        if (it == angles_.end())
            throw domain_error("phase assignment does not cover prime " + std::to_string(p));
        return it->second;
    }

    std::complex<double> phase(std::int64_t p) const {
        const double t = angle(p);
        return {std::cos(t), std::sin(t)};
    }

private:
    std::uint64_t seed_ = 0;
    std::unordered_map<std::int64_t, double> angles_;
};

inline PhaseAssignment sample_phases(const IntSet& primes, std::uint64_t seed) {
    return PhaseAssignment::sample(primes.elements(), seed);
}

// X_n = prod X_{p_j}^{w_j} over the factorization of n; X_1 = 1.
inline std::complex<double> extend_phase(const PhaseAssignment& a, std::int64_t n) {
    if (n < 1) throw domain_error("extend_phase: n must be positive");
    double theta = 0;
    for (const auto& [p, e] : detail::factor_slow(n)) theta += a.angle(p) * e;
    theta = std::fmod(theta, 2.0 * std::numbers::pi);
    return {std::cos(theta), std::sin(theta)};
}

// Truncated random zeta function: sum_{n<=n_max} X_n n^(-alpha).
// Angles for composite n come from the smallest-prime-factor recursion
// theta_n = theta_{n/p} + theta_p, one addition per n.
inline std::complex<double> truncated_zeta(const PhaseAssignment& a, double alpha, std::int64_t n_max) {
    if (!(alpha > 0.5)) throw domain_error("truncated_zeta: alpha must exceed 1/2");
    if (n_max < 1) throw domain_error("truncated_zeta: n_max must be positive");
    std::vector<std::int32_t> spf(static_cast<std::size_t>(n_max) + 1, 0);
    for (std::int64_t i = 2; i <= n_max; ++i) {
        if (spf[static_cast<std::size_t>(i)]) continue;
        if (!a.covers(i)) throw domain_error("truncated_zeta: prime " + std::to_string(i) + " not covered");
        for (std::int64_t j = i; j <= n_max; j += i)
            if (!spf[static_cast<std::size_t>(j)]) spf[static_cast<std::size_t>(j)] = static_cast<std::int32_t>(i);
    }
    std::vector<double> theta(static_cast<std::size_t>(n_max) + 1, 0.0);
    std::complex<double> total{1.0, 0.0}; // n = 1 term
    constexpr double two_pi = 2.0 * std::numbers::pi;
    for (std::int64_t n = 2; n <= n_max; ++n) {
        const std::int64_t p = spf[static_cast<std::size_t>(n)];
        double t = theta[static_cast<std::size_t>(n / p)] + a.angle(p);
        if (t >= two_pi) t -= two_pi;
        theta[static_cast<std::size_t>(n)] = t;
        total += std::polar(std::pow(static_cast<double>(n), -alpha), t);
    }
    return total;
}

// Restricted Euler product Z_X(alpha) = prod_{z <= p < 2z} (1 + X_p p^(-alpha)).
inline std::complex<double> restricted_euler(const PhaseAssignment& a, double alpha, std::int64_t z) {
    if (!(alpha > 0)) throw domain_error("restricted_euler: alpha must be positive");
    if (z < 1) throw domain_error("restricted_euler: z must be positive");
    std::complex<double> prod{1.0, 0.0};
    for (std::int64_t p = z; p < 2 * z; ++p) {
        if (!detail::is_prime_slow(p)) continue;
        prod *= 1.0 + a.phase(p) * std::pow(static_cast<double>(p), -alpha);
    }
    return prod;
}

// Random Fourier transform of a weight: F_w(X) = sum_n w(n) X_n.
inline std::complex<double> fourier_w(const PhaseAssignment& a, const Weight& w) {
    if (!w.support_positive()) throw domain_error("fourier_w: support must be positive integers");
    std::complex<double> total{0.0, 0.0};
    for (const auto& [n, v] : w) total += v * extend_phase(a, n);
    return total;
}

// ---------------------------------------------------------------------------
// Monte Carlo moments

struct MomentEstimate {
    double mean = 0;
    double std_error = 0;
    std::uint64_t samples = 0;
    std::string target;
};

struct SampledExpr {
    enum class Kind {
        constant_one,
        truncated_zeta,    // zeta_X(alpha) truncated at n_max
        restricted_euler,  // Z_X(alpha) over [z, 2z)
        fourier,           // F_w(X)
        fourier_times_zeta, // F_w(X) * zeta_X(alpha)
        fourier_times_euler // F_w(X) * Z_X(alpha)
    };
    Kind kind = Kind::constant_one;
    double alpha = 1.0;
    std::int64_t n_max = 10000; // zeta truncation
    std::int64_t z = 0;         // Euler prime range
    Weight w;

    std::string describe() const {
        switch (kind) {
            case Kind::constant_one: return "1";
            case Kind::truncated_zeta:
                return "zeta_X(" + std::to_string(alpha) + "), n_max=" + std::to_string(n_max);
            case Kind::restricted_euler:
                return "Z_X(" + std::to_string(alpha) + "), z=" + std::to_string(z);
            case Kind::fourier: return "F_w(X)";
            case Kind::fourier_times_zeta:
                return "F_w(X)*zeta_X(" + std::to_string(alpha) + "), n_max=" + std::to_string(n_max);
            case Kind::fourier_times_euler:
                return "F_w(X)*Z_X(" + std::to_string(alpha) + "), z=" + std::to_string(z);
        }
        return "?";
    }
};

namespace detail {

// Pre-resolved structure for one expression so per-sample work touches
// only phase derivation and arithmetic.
struct ExprPlan {
    SampledExpr expr;
    std::vector<std::int64_t> zeta_primes;   // primes <= n_max
    std::vector<std::int32_t> spf;            // smallest prime factor up to n_max
    std::vector<double> n_pow;                // n^-alpha
    std::vector<std::int64_t> euler_primes;   // primes in [z, 2z)
    std::vector<double> euler_pow;            // p^-alpha
    // fourier support with factorizations over distinct primes
    std::vector<std::pair<double, std::vector<std::pair<std::int64_t, int>>>> support;
    std::vector<std::int64_t> fourier_primes; // distinct primes across the support

    static ExprPlan build(const SampledExpr& e) {
        ExprPlan plan;
        plan.expr = e;
        const bool need_zeta =
            e.kind == SampledExpr::Kind::truncated_zeta || e.kind == SampledExpr::Kind::fourier_times_zeta;
        const bool need_euler =
            e.kind == SampledExpr::Kind::restricted_euler || e.kind == SampledExpr::Kind::fourier_times_euler;
        const bool need_fourier = e.kind == SampledExpr::Kind::fourier ||
                                  e.kind == SampledExpr::Kind::fourier_times_zeta ||
                                  e.kind == SampledExpr::Kind::fourier_times_euler;
        if (need_zeta) {
            if (!(e.alpha > 0.5)) throw domain_error("mc_moment: zeta needs alpha > 1/2");
            if (e.n_max < 1) throw domain_error("mc_moment: n_max must be positive");
            plan.spf.assign(static_cast<std::size_t>(e.n_max) + 1, 0);
            for (std::int64_t i = 2; i <= e.n_max; ++i) {
                if (plan.spf[static_cast<std::size_t>(i)]) continue;
                plan.zeta_primes.push_back(i);
                for (std::int64_t j = i; j <= e.n_max; j += i)
                    if (!plan.spf[static_cast<std::size_t>(j)])
                        plan.spf[static_cast<std::size_t>(j)] = static_cast<std::int32_t>(i);
            }
            plan.n_pow.resize(static_cast<std::size_t>(e.n_max) + 1, 0.0);
            for (std::int64_t n = 1; n <= e.n_max; ++n)
                plan.n_pow[static_cast<std::size_t>(n)] = std::pow(static_cast<double>(n), -e.alpha);
        }
        if (need_euler) {
            if (!(e.alpha > 0)) throw domain_error("mc_moment: Euler product needs alpha > 0");
            if (e.z < 1) throw domain_error("mc_moment: z must be positive");
            for (std::int64_t p = e.z; p < 2 * e.z; ++p)
                if (is_prime_slow(p)) {
                    plan.euler_primes.push_back(p);
                    plan.euler_pow.push_back(std::pow(static_cast<double>(p), -e.alpha));
                }
        }
        if (need_fourier) {
            if (!e.w.support_positive()) throw domain_error("mc_moment: weight support must be positive");
            for (const auto& [n, v] : e.w) {
                auto f = factor_slow(n);
                for (const auto& [p, ex] : f) plan.fourier_primes.push_back(p);
                plan.support.emplace_back(v, std::move(f));
            }
            std::sort(plan.fourier_primes.begin(), plan.fourier_primes.end());
            plan.fourier_primes.erase(std::unique(plan.fourier_primes.begin(), plan.fourier_primes.end()),
                                      plan.fourier_primes.end());
        }
        return plan;
    }

    std::complex<double> eval(std::uint64_t sample_seed, std::vector<double>& theta_buf) const {
        constexpr double two_pi = 2.0 * std::numbers::pi;
        std::complex<double> value{1.0, 0.0};
        switch (expr.kind) {
            case SampledExpr::Kind::constant_one: return value;
            case SampledExpr::Kind::truncated_zeta:
            case SampledExpr::Kind::fourier_times_zeta: {
                theta_buf.assign(static_cast<std::size_t>(expr.n_max) + 1, 0.0);
                std::unordered_map<std::int64_t, double> prime_theta;
                prime_theta.reserve(zeta_primes.size());
                for (std::int64_t p : zeta_primes) prime_theta.emplace(p, phase_angle(sample_seed, p));
                std::complex<double> zsum{1.0, 0.0};
                for (std::int64_t n = 2; n <= expr.n_max; ++n) {
                    const std::int64_t p = spf[static_cast<std::size_t>(n)];
                    double t = theta_buf[static_cast<std::size_t>(n / p)] + prime_theta[p];
                    if (t >= two_pi) t -= two_pi;
                    theta_buf[static_cast<std::size_t>(n)] = t;
                    zsum += std::polar(n_pow[static_cast<std::size_t>(n)], t);
                }
                value = zsum;
                break;
            }
            case SampledExpr::Kind::restricted_euler:
            case SampledExpr::Kind::fourier_times_euler: {
                std::complex<double> prod{1.0, 0.0};
                for (std::size_t i = 0; i < euler_primes.size(); ++i) {
                    const double t = phase_angle(sample_seed, euler_primes[i]);
                    prod *= 1.0 + std::polar(euler_pow[i], t);
                }
                value = prod;
                break;
            }
            case SampledExpr::Kind::fourier: break;
        }
        const bool with_fourier = expr.kind == SampledExpr::Kind::fourier ||
                                  expr.kind == SampledExpr::Kind::fourier_times_zeta ||
                                  expr.kind == SampledExpr::Kind::fourier_times_euler;
        if (with_fourier) {
            std::unordered_map<std::int64_t, double> prime_theta;
            prime_theta.reserve(fourier_primes.size());
            for (std::int64_t p : fourier_primes) prime_theta.emplace(p, phase_angle(sample_seed, p));
            std::complex<double> f{0.0, 0.0};
            for (const auto& [v, factors] : support) {
                double t = 0;
                for (const auto& [p, ex] : factors) t += prime_theta[p] * ex;
                f += v * std::polar(1.0, std::fmod(t, two_pi));
            }
            value = expr.kind == SampledExpr::Kind::fourier ? f : value * f;
        }
        return value;
    }
};

// Fixed-shape pairwise reduction: deterministic for a given length no
// matter how the vector was filled.
inline double tree_sum(const double* v, std::size_t n) {
    if (n <= 8) {
        double s = 0;
        for (std::size_t i = 0; i < n; ++i) s += v[i];
        return s;
    }
    const std::size_t half = n / 2;
    return tree_sum(v, half) + tree_sum(v + half, n - half);
}

} // namespace detail

// Sample mean and standard error of |expr|^(2l). Sample i draws its phases
// from the derived seed derive(seed, domain_sample, i), so the estimate is
// a pure function of (expr, l, samples, seed) and thread-count invariant.
inline MomentEstimate mc_moment(const SampledExpr& expr, int l, std::uint64_t samples, std::uint64_t seed,
                                int threads = 1) {
    if (l < 1) throw domain_error("mc_moment: l must be >= 1");
    if (samples < 100) throw domain_error("mc_moment: need at least 100 samples");
    const detail::ExprPlan plan = detail::ExprPlan::build(expr);

    std::vector<double> vals(samples);
    threads = std::clamp(threads, 1, 64);
    auto run = [&](std::uint64_t t0) {
        std::vector<double> theta_buf;
        for (std::uint64_t i = t0; i < samples; i += static_cast<std::uint64_t>(threads)) {
            const std::uint64_t s = rng::derive(seed, rng::domain_sample, i);
            const std::complex<double> v = plan.eval(s, theta_buf);
            vals[i] = std::pow(std::norm(v), l);
        }
    };
    if (threads == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(run, static_cast<std::uint64_t>(t));
        for (auto& th : pool) th.join();
    }
    for (std::uint64_t i = 0; i < samples; ++i)
        if (!std::isfinite(vals[i]))
            throw domain_error("mc_moment: non-finite sample at index " + std::to_string(i));

    MomentEstimate est;
    est.samples = samples;
    est.target = "E|" + expr.describe() + "|^" + std::to_string(2 * l);
    est.mean = detail::tree_sum(vals.data(), samples) / static_cast<double>(samples);
    for (std::uint64_t i = 0; i < samples; ++i) {
        const double d = vals[i] - est.mean;
        vals[i] = d * d;
    }
    const double var = detail::tree_sum(vals.data(), samples) / static_cast<double>(samples - 1);
    est.std_error = std::sqrt(var / static_cast<double>(samples));
    return est;
}

// ---------------------------------------------------------------------------
// Exact moments of the restricted Euler product.
//
// E |Z_X(alpha)|^(2l) = prod_{z <= p < 2z} E_l(p) with
// E_l(p) = sum_{n=0}^{l} binom(l,n)^2 p^(-2*alpha*n), by independence of the
// X_p. The companion bound is exp(2 l^2 sum p^(-2*alpha)), valid when
// l <= z^alpha.

struct ExactZMoment {
    double value = 1.0;
    double bound = 1.0;        // exp(2 l^2 sum_{z<=p<2z} p^(-2 alpha))
    double bound_exponent = 0; // 2 l^2 sum p^(-2 alpha)
    bool hypothesis_ok = true; // l <= z^alpha
};

inline ExactZMoment exact_Z_moment(std::int64_t z, double alpha, int l, const PrimeTable& table) {
    if (z < 1 || l < 1 || !(alpha > 0)) throw domain_error("exact_Z_moment: need z >= 1, l >= 1, alpha > 0");
    if (2 * z - 1 > table.limit)
        throw domain_error("exact_Z_moment: table limit " + std::to_string(table.limit) +
                           " does not cover [z, 2z) for z = " + std::to_string(z));
    std::vector<double> binom_sq(static_cast<std::size_t>(l) + 1, 0.0);
    double c = 1;
    for (int n = 0; n <= l; ++n) {
        binom_sq[static_cast<std::size_t>(n)] = c * c;
        c = c * (l - n) / (n + 1);
    }
    ExactZMoment out;
    out.hypothesis_ok = static_cast<double>(l) <= std::pow(static_cast<double>(z), alpha);
    auto first = std::lower_bound(table.primes.begin(), table.primes.end(), z);
    auto last = std::lower_bound(first, table.primes.end(), 2 * z);
    for (auto it = first; it != last; ++it) {
        const double q = std::pow(static_cast<double>(*it), -2.0 * alpha);
        double e = 0, qn = 1;
        for (int n = 0; n <= l; ++n) {
            e += binom_sq[static_cast<std::size_t>(n)] * qn;
            qn *= q;
        }
        out.value *= e;
        out.bound_exponent += q;
    }
    out.bound_exponent *= 2.0 * l * l;
    out.bound = std::exp(out.bound_exponent);
    return out;
}

// ---------------------------------------------------------------------------
// GCD sums.
//
// gcd_sum evaluates zeta(2a) * sum_{m1,m2} w(m1) w(m2) gcd(m1,m2)^(2a) / (m1 m2)^a
// with the zeta factor truncated; the certified interval half-width is the
// zeta tail bound times the (non-negative) double sum.

struct GcdSum {
    double value = 0;
    double interval_width = 0;
};

inline GcdSum gcd_sum(const Weight& w, double alpha, std::int64_t zeta_trunc) {
    if (!(2 * alpha > 1)) throw domain_error("gcd_sum: diverges for 2*alpha <= 1");
    if (!w.support_positive()) throw domain_error("gcd_sum: weight support must be positive");
    const PartialZeta pz = partial_zeta(alpha, zeta_trunc);
    double dsum = 0;
    for (const auto& [m1, w1] : w)
        for (const auto& [m2, w2] : w) {
            const double g = static_cast<double>(gcd(m1, m2));
            dsum += w1 * w2 * std::pow(g, 2.0 * alpha) /
                    std::pow(static_cast<double>(m1) * static_cast<double>(m2), alpha);
        }
    return {pz.value * dsum, pz.tail_bound * dsum};
}

// Direct enumeration of the left side of the GCD identity:
//   sum_{n1 m1 = n2 m2} w(m1) w(m2) / (n1 n2)^alpha
// parameterized by m_i = g u_i with gcd(u1,u2) = 1 and n1 = t u2, n2 = t u1,
// truncated at t <= t_max. Monotone nondecreasing in t_max.
inline double gcd_sum_lhs(const Weight& w, double alpha, std::int64_t t_max) {
    if (!(2 * alpha > 1)) throw domain_error("gcd_sum_lhs: diverges for 2*alpha <= 1");
    if (!w.support_positive()) throw domain_error("gcd_sum_lhs: weight support must be positive");
    if (t_max < 1) throw domain_error("gcd_sum_lhs: t_max must be positive");
    double t_sum = 0;
    for (std::int64_t t = t_max; t >= 1; --t) t_sum += std::pow(static_cast<double>(t), -2.0 * alpha);
    double total = 0;
    for (const auto& [m1, w1] : w)
        for (const auto& [m2, w2] : w) {
            const std::int64_t g = gcd(m1, m2);
            const double u1 = static_cast<double>(m1 / g), u2 = static_cast<double>(m2 / g);
            total += w1 * w2 * std::pow(u1 * u2, -alpha) * t_sum;
        }
    return total;
}

} // namespace energylab
