// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and runtime budget and prints one PASS/FAIL line per criterion. Exits
// nonzero if any criterion fails. DERIVED regression values live in
// fixtures.json next to this file, each with the oracle command that
// produced it.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "energylab/bounds.hpp"
#include "energylab/energy.hpp"
#include "energylab/experiments.hpp"
#include "energylab/generator.hpp"
#include "energylab/numtheory.hpp"
#include "energylab/zeta.hpp"
#include "../tests/oracles.hpp"
#include "../tests/testutil.hpp"

using namespace energylab;
namespace fs = std::filesystem;

namespace {

nlohmann::json g_fixtures;

double fixture_value(const std::string& id) {
    if (!g_fixtures.contains(id)) throw std::runtime_error("fixture missing: " + id);
    return g_fixtures.at(id).at("value").get<double>();
}

std::uint64_t fixture_count(const std::string& id) {
    if (!g_fixtures.contains(id)) throw std::runtime_error("fixture missing: " + id);
    return g_fixtures.at(id).at("value").get<std::uint64_t>();
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_cli(const std::string& args, const fs::path& stdout_path) {
    const std::string cmd =
        std::string(ENERGYLAB_BIN) + " " + args + " > " + stdout_path.string() + " 2> /dev/null";
    return WEXITSTATUS(std::system(cmd.c_str()));
}

struct Criterion {
    int id;
    std::string name;
    double budget_s;
    std::function<bool(std::string&)> body;
};

// ---- 1: oracle equivalence ------------------------------------------------

bool oracle_equivalence(std::string& note) {
    int checked = 0;
    for (std::uint64_t i = 0; i < 200; ++i) {
        const IntSet a = testutil::random_set(2024, 4 * i, 12, 60);
        const IntSet b = testutil::random_set(2024, 4 * i + 1, 12, 60);
        if (additive_energy(a, b).value != oracle::additive_energy(a, b)) return false;
        if (multiplicative_energy(a, b).value != oracle::multiplicative_energy(a, b)) return false;
        for (int k : {1, 2, 3})
            if (t_energy(a, k, SetOp::sum).value != oracle::t_energy(a, k, false)) return false;
        const IntSet pos = testutil::random_set(2024, 4 * i + 2, 12, 60, false, false);
        for (int k : {1, 2, 3})
            if (t_energy(pos, k, SetOp::product).value != oracle::t_energy(pos, k, true)) return false;
        const Weight f1 = testutil::random_weight(2024, 8 * i, 12, 40);
        const Weight f2 = testutil::random_weight(2024, 8 * i + 1, 12, 40);
        const Weight f3 = testutil::random_weight(2024, 8 * i + 2, 12, 40);
        const Weight f4 = testutil::random_weight(2024, 8 * i + 3, 12, 40);
        const double we = weighted_energy(f1, f2, f3, f4);
        const double wo = oracle::weighted_energy(f1, f2, f3, f4);
        if (std::abs(we - wo) > 1e-9 * std::max(1.0, std::abs(wo))) return false;
        const IntSet c = testutil::random_set(2024, 4 * i + 3, 12, 120);
        if (incidence_count(a, b, c) != oracle::incidence_count(a, b, c)) return false;
        ++checked;
    }
    note = std::to_string(checked) + " instances, 5 operations each";
    return true;
}

// ---- 2: Parseval and T_k identities ----------------------------------------

bool identity_suite(std::string& note) {
    int pass = 0;
    for (std::uint64_t i = 0; i < 10; ++i) {
        const Weight w = testutil::random_weight(777, i, 20, 50);
        SampledExpr expr;
        expr.kind = SampledExpr::Kind::fourier;
        expr.w = w;
        const MomentEstimate second = mc_moment(expr, 1, 100000, 3000 + i);
        if (std::abs(second.mean - w.l2_norm_sq()) > 5 * second.std_error) return false;
        const MomentEstimate fourth = mc_moment(expr, 2, 100000, 4000 + i);
        const double t2 = t_energy_weighted(w, 2, SetOp::product);
        if (std::abs(fourth.mean - t2) > 5 * fourth.std_error) return false;
        ++pass;
    }
    note = std::to_string(pass) + " weights at 1e5 samples";
    return true;
}

// ---- 3: GCD identity --------------------------------------------------------

bool gcd_identity(std::string& note) {
    int rows = 0;
    for (double alpha : {0.6, 0.75, 1.0})
        for (std::uint64_t i = 0; i < 20; ++i) {
            const Weight w = testutil::random_weight(505, i, 12, 30);
            const GcdSum rhs = gcd_sum(w, alpha, 10000);
            const double lhs = gcd_sum_lhs(w, alpha, 10000);
            if (std::abs(lhs - rhs.value) > rhs.interval_width) return false;
            ++rows;
        }
    note = std::to_string(rows) + " weight/alpha pairs, certified-interval containment";
    return true;
}

// ---- 4: exact vs Monte Carlo Euler moments ----------------------------------

bool euler_moments(std::string& note) {
    const PrimeTable table = sieve_primes(200);
    int rows = 0;
    for (std::int64_t z : {10, 30, 50})
        for (int l : {1, 2, 3})
            for (double alpha : {0.5, 0.75}) {
                const ExactZMoment exact = exact_Z_moment(z, alpha, l, table);
                SampledExpr expr;
                expr.kind = SampledExpr::Kind::restricted_euler;
                expr.alpha = alpha;
                expr.z = z;
                const MomentEstimate mc =
                    mc_moment(expr, l, 100000,
                              9000 + static_cast<std::uint64_t>(z) * 100 + static_cast<std::uint64_t>(l) * 10 +
                                  (alpha < 0.6 ? 0 : 1));
                if (std::abs(mc.mean - exact.value) > 5 * mc.std_error) return false;
                if (exact.hypothesis_ok && std::log2(exact.value) > exact.bound_exponent) return false;
                ++rows;
            }
    note = std::to_string(rows) + " (z, l, alpha) points at 1e5 samples";
    return true;
}

// ---- 5: repulsion structure ---------------------------------------------------

bool repulsion_structure(std::string& note) {
    // (a) unique-factorization minimum
    const PrimeTable t100 = sieve_primes(100);
    const IntSet p100(std::vector<std::int64_t>(t100.primes));
    const IntSet pows = generate("geo:1,2,20");
    const EnergyValue ea = multiplicative_energy(p100, pows);
    if (ea.value != static_cast<u128>(p100.size()) * pows.size()) return false;

    // (b) strict decrease along the l sweep and the frozen endpoint
    const IntSet s = generate("interval:128");
    double prev = 1e300;
    u128 final_energy = 0;
    std::size_t final_primes = 0;
    for (std::int64_t l : {500, 2000, 8000}) {
        const PrimeTable t = sieve_primes(l);
        const IntSet p(std::vector<std::int64_t>(t.primes));
        const EnergyValue e = multiplicative_energy(p, s);
        const double norm = static_cast<double>(e.value) /
                            (static_cast<double>(p.size()) * static_cast<double>(p.size()) * 128.0);
        if (!(norm < prev)) return false;
        prev = norm;
        final_energy = e.value;
        final_primes = p.size();
    }
    if (final_energy != static_cast<u128>(fixture_count("repulsion_interval128_l8000_energy"))) return false;
    const double final_norm = static_cast<double>(final_energy) /
                              (static_cast<double>(final_primes) * static_cast<double>(final_primes) * 128.0);
    if (final_norm > fixture_value("repulsion_interval128_l8000_normalized")) return false;

    // (c) dilation invariance, exact
    const PrimeTable t500 = sieve_primes(500);
    const IntSet p500(std::vector<std::int64_t>(t500.primes));
    const u128 base = multiplicative_energy(p500, s).value;
    for (std::int64_t d : {1, 7, -3})
        if (multiplicative_energy(dilate(p500, d), s).value != base) return false;

    note = "minimum exact, sweep strictly decreasing, endpoint == fixture, dilation exact";
    return true;
}

// ---- 6: zero-based AP ----------------------------------------------------------

bool zero_based_ap(std::string& note) {
    const IntSet s = generate("grid:2,3,16");
    const ZeroBasedAp ap = longest_zero_based_ap(s);
    if (ap.length != 4) return false;
    const std::uint64_t ss_size = product_set_size(s, s);
    if (!(static_cast<double>(ss_size) / static_cast<double>(s.size()) <= 4.0)) return false;
    const double reference = std::log2(256.0) * std::log2(std::log2(256.0));
    if (!(4.0 <= reference && reference == 24.0)) return false;
    note = "length 4, doubling <= 4, reference 24";
    return true;
}

// ---- 7: convex energy decay ------------------------------------------------------

bool convex_decay(std::string& note) {
    const IntSet cubes = generate("pow:3,64");
    const u128 e_cubes = additive_energy(cubes, cubes).value;
    if (e_cubes > static_cast<u128>(3) * 64 * 64) return false;
    if (e_cubes != static_cast<u128>(fixture_count("cube_energy_64"))) return false;
    const IntSet interval = generate("interval:64");
    const u128 e_interval = additive_energy(interval, interval).value;
    if (e_interval != static_cast<u128>(64) * (2 * 64 * 64 + 1) / 3) return false;
    note = "E+(cubes) = " + to_string(e_cubes) + " <= 12288; control E+([64]) = " + to_string(e_interval);
    return true;
}

// ---- 8: classical inequality suites -----------------------------------------------

bool classical_inequalities(std::string& note) {
    for (std::uint64_t i = 0; i < 500; ++i) {
        const IntSet a = testutil::random_set(808, i, 32, 800);
        const u128 doubling = sumset(a, a).size();
        for (const auto& [n, m] :
             std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {1, 2}, {2, 2}, {3, 1}, {1, 3}}) {
            const u128 lhs = iterated_sumset(a, n, m).size();
            u128 scale = 1, rhs = 1;
            for (int j = 0; j < n + m - 1; ++j) scale *= a.size();
            for (int j = 0; j < n + m; ++j) rhs *= doubling;
            if (lhs * scale > rhs) return false;
        }
        for (int n : {2, 3, 4}) {
            const u128 lhs = iterated_sumset(a, n, 0).size();
            u128 scale = 1, rhs = 1;
            for (int j = 0; j < n - 1; ++j) scale *= a.size();
            for (int j = 0; j < n; ++j) rhs *= doubling;
            if (lhs * scale > rhs) return false;
        }
    }
    for (std::uint64_t i = 0; i < 500; ++i) {
        const Weight f1 = testutil::random_weight(909, 4 * i, 16, 64);
        const Weight f2 = testutil::random_weight(909, 4 * i + 1, 16, 64);
        const Weight f3 = testutil::random_weight(909, 4 * i + 2, 16, 64);
        const Weight f4 = testutil::random_weight(909, 4 * i + 3, 16, 64);
        const double lhs = weighted_energy(f1, f2, f3, f4);
        const double rhs = std::pow(weighted_energy(f1, f1, f1, f1) * weighted_energy(f2, f2, f2, f2) *
                                        weighted_energy(f3, f3, f3, f3) * weighted_energy(f4, f4, f4, f4),
                                    0.25);
        if (lhs > rhs * (1 + 1e-9) + 1e-12) return false;
    }
    note = "500 Pluennecke-Ruzsa instances (n+m <= 4), 500 Hoelder instances";
    return true;
}

// ---- 9: performance ------------------------------------------------------------------

bool performance(std::string& note) {
    // Two seeded random 1e4-element sets of 48-bit integers.
    auto make_set = [](std::uint64_t stream) {
        std::vector<std::int64_t> v;
        v.reserve(10000);
        std::uint64_t k = 0;
        std::set<std::int64_t> seen;
        while (seen.size() < 10000) {
            const std::uint64_t h = rng::derive(606, stream, k++);
            const auto x = static_cast<std::int64_t>((h & ((1ULL << 48) - 1)) | (1ULL << 47));
            seen.insert(x);
        }
        v.assign(seen.begin(), seen.end());
        return IntSet::from_sorted(std::move(v));
    };
    const IntSet a = make_set(1);
    const IntSet b = make_set(2);

    const auto t0 = std::chrono::steady_clock::now();
    const u128 e1 = multiplicative_energy(a, b, {1}).value;
    const auto t1 = std::chrono::steady_clock::now();
    const u128 e8 = multiplicative_energy(a, b, {8}).value;
    const auto t2 = std::chrono::steady_clock::now();

    const double s1 = std::chrono::duration<double>(t1 - t0).count();
    const double s8 = std::chrono::duration<double>(t2 - t1).count();
    std::ostringstream ss;
    ss << "1-thread " << s1 << " s, 8-thread " << s8 << " s, E = " << to_string(e1);
    note = ss.str();
    return e1 == e8 && s1 <= 30.0 && s8 <= 30.0;
}

// ---- 10: reproducibility ---------------------------------------------------------------

bool reproducibility(std::string& note) {
    const fs::path dir = fs::temp_directory_path();
    const fs::path a = dir / "energylab_acc_a.out";
    const fs::path b = dir / "energylab_acc_b.out";

    // identities, fixed seed, twice
    const std::string ident =
        "identities --seed 7 --samples 2000 --weights 2 --alphas 0.75 --z-values 10 --no-timestamps --out ";
    if (run_cli(ident + a.string(), dir / "x1") != 0) return false;
    if (run_cli(ident + b.string(), dir / "x2") != 0) return false;
    if (slurp(a) != slurp(b)) return false;

    // repulsion sweep, twice
    const std::string rep = "repulsion --l-values 100,400 --s-gen interval:64 --no-timestamps --out ";
    if (run_cli(rep + a.string(), dir / "x3") != 0) return false;
    if (run_cli(rep + b.string(), dir / "x4") != 0) return false;
    if (slurp(a) != slurp(b)) return false;

    // thread-count invariance of the energy command
    if (run_cli("energy --op mul --set-a interval:600 --set-b interval:600 --threads 1", a) != 0) return false;
    if (run_cli("energy --op mul --set-a interval:600 --set-b interval:600 --threads 8", b) != 0) return false;
    if (slurp(a) != slurp(b)) return false;

    // Monte Carlo with a seed, twice
    if (run_cli("zeta-moment --mode mc --z 10 --alpha 0.5 --l 2 --samples 5000 --seed 11", a) != 0)
        return false;
    if (run_cli("zeta-moment --mode mc --z 10 --alpha 0.5 --l 2 --samples 5000 --seed 11", b) != 0)
        return false;
    if (slurp(a) != slurp(b)) return false;

    for (const char* f : {"energylab_acc_a.out", "energylab_acc_b.out", "x1", "x2", "x3", "x4"})
        fs::remove(dir / f);
    note = "identities, repulsion, energy --threads {1,8}, seeded MC: byte-identical";
    return true;
}

} // namespace

int main() {
    {
        std::ifstream in(ENERGYLAB_FIXTURES);
        if (!in) {
            std::cerr << "cannot open fixtures: " << ENERGYLAB_FIXTURES << "\n";
            return 1;
        }
        g_fixtures = nlohmann::json::parse(in);
    }

    const std::vector<Criterion> criteria = {
        {1, "oracle equivalence of the energy operations", 60, oracle_equivalence},
        {2, "Parseval and T_k Monte Carlo identities", 120, identity_suite},
        {3, "GCD-sum identity inside the certified interval", 30, gcd_identity},
        {4, "exact vs Monte Carlo Euler moments", 180, euler_moments},
        {5, "prime repulsion structure", 120, repulsion_structure},
        {6, "zero-based AP in the smooth grid", 10, zero_based_ap},
        {7, "convex image energy decay", 10, convex_decay},
        {8, "Pluennecke-Ruzsa and Hoelder suites", 60, classical_inequalities},
        // Per-run budget (30 s) is asserted inside; the wall budget covers
        // both the 1-thread and 8-thread runs.
        {9, "large multiplicative energy: runtime and thread invariance", 90, performance},
        {10, "CLI reproducibility", 120, reproducibility},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        bool ok = false;
        std::string note;
        try {
            ok = c.body(note);
        } catch (const std::exception& e) {
            ok = false;
            note = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > c.budget_s) {
            ok = false;
            note += (note.empty() ? "" : "; ") + std::string("over budget ") + std::to_string(c.budget_s) + " s";
        }
        if (!ok) ++failures;
        std::printf("%s [%2d] %s (%.1f s)%s%s\n", ok ? "PASS" : "FAIL", c.id, c.name.c_str(), secs,
                    note.empty() ? "" : " -- ", note.c_str());
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    else std::printf("all %zu acceptance criteria passed\n", criteria.size());
    return failures ? 1 : 0;
}
