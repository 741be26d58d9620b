// generator.hpp
// Mini-DSL for the structured sets the experiments draw on.
//
//   ap:a0,d,n       arithmetic progression {a0 + i*d : 0 <= i < n}
//   geo:g0,r,n      geometric progression  {g0 * r^i : 0 <= i < n}
//   grid:p1,..,pk,e products {prod p_j^(e_j) : 0 <= e_j < e}
//   interval:n      [1..n]
//   smooth:y,N      all y-smooth integers <= N
//   pow:k,n         {i^k : i in [n]}
//   file:path       set file, one integer per line, '#' comments
//
// smooth enumerates by recursive prime-power products rather than filtering
// [1..N]: N can exceed the enumeration ceiling while the smooth set stays
// small.

#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "energylab/errors.hpp"
#include "energylab/int128.hpp"
#include "energylab/intset.hpp"
#include "energylab/numtheory.hpp"

namespace energylab {

enum class GenKind { ap, geo, grid, interval, smooth, pow, file };

struct GeneratorSpec {
    GenKind kind = GenKind::interval;
    std::vector<std::int64_t> params;
    std::string path; // file kind only
};

namespace detail {

[[noreturn]] inline void gen_fail(const std::string& text, std::size_t pos, const std::string& why) {
    throw usage_error("generator '" + text + "': " + why + " (at position " + std::to_string(pos) + ")");
}

inline void require_arity(const std::string& text, const GeneratorSpec& spec, std::size_t want) {
    if (spec.params.size() != want)
        throw usage_error("generator '" + text + "': expected " + std::to_string(want) + " parameters, got " +
                          std::to_string(spec.params.size()));
}

inline void require_positive(const std::string& text, std::int64_t v, const char* name) {
    if (v < 1) throw usage_error("generator '" + text + "': " + name + " must be positive, got " + std::to_string(v));
}

} // namespace detail

inline GeneratorSpec parse_generator(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) detail::gen_fail(text, 0, "missing ':' after kind");
    const std::string kind = text.substr(0, colon);
    const std::string rest = text.substr(colon + 1);

    GeneratorSpec spec;
    if (kind == "file") {
        if (rest.empty()) detail::gen_fail(text, colon + 1, "empty file path");
        spec.kind = GenKind::file;
        spec.path = rest;
        return spec;
    }
    if (kind == "ap") spec.kind = GenKind::ap;
    else if (kind == "geo") spec.kind = GenKind::geo;
    else if (kind == "grid") spec.kind = GenKind::grid;
    else if (kind == "interval") spec.kind = GenKind::interval;
    else if (kind == "smooth") spec.kind = GenKind::smooth;
    else if (kind == "pow") spec.kind = GenKind::pow;
    else detail::gen_fail(text, 0, "unknown kind '" + kind + "'");

    // Comma-separated decimal integers, tracking positions for messages.
    std::size_t pos = colon + 1;
    while (true) {
        const auto comma = text.find(',', pos);
        const std::string tok = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (tok.empty()) detail::gen_fail(text, pos, "empty parameter");
        try {
            std::size_t used = 0;
            spec.params.push_back(std::stoll(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const usage_error&) {
            throw;
        } catch (const std::exception&) {
            detail::gen_fail(text, pos, "invalid integer '" + tok + "'");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }

    switch (spec.kind) {
        case GenKind::ap:
            detail::require_arity(text, spec, 3);
            detail::require_positive(text, spec.params[2], "length");
            break;
        case GenKind::geo:
            detail::require_arity(text, spec, 3);
            if (spec.params[0] == 0) detail::gen_fail(text, colon + 1, "g0 must be nonzero");
            if (spec.params[1] == 0) detail::gen_fail(text, colon + 1, "ratio must be nonzero");
            detail::require_positive(text, spec.params[2], "length");
            break;
        case GenKind::grid: {
            if (spec.params.size() < 2)
                throw usage_error("generator '" + text + "': grid needs at least one base and an exponent bound");
            for (std::size_t i = 0; i + 1 < spec.params.size(); ++i)
                if (spec.params[i] < 2)
                    detail::gen_fail(text, colon + 1, "grid base must be >= 2, got " + std::to_string(spec.params[i]));
            detail::require_positive(text, spec.params.back(), "exponent bound");
            break;
        }
        case GenKind::interval:
            detail::require_arity(text, spec, 1);
            detail::require_positive(text, spec.params[0], "length");
            break;
        case GenKind::smooth:
            detail::require_arity(text, spec, 2);
            if (spec.params[0] < 2) detail::gen_fail(text, colon + 1, "smoothness bound must be >= 2");
            detail::require_positive(text, spec.params[1], "limit");
            break;
        case GenKind::pow:
            detail::require_arity(text, spec, 2);
            detail::require_positive(text, spec.params[0], "exponent");
            detail::require_positive(text, spec.params[1], "length");
            break;
        case GenKind::file: break;
    }
    return spec;
}

// Canonical text for a spec; parse_generator(render(spec)) round-trips.
inline std::string render(const GeneratorSpec& spec) {
    std::string out;
    switch (spec.kind) {
        case GenKind::ap: out = "ap"; break;
        case GenKind::geo: out = "geo"; break;
        case GenKind::grid: out = "grid"; break;
        case GenKind::interval: out = "interval"; break;
        case GenKind::smooth: out = "smooth"; break;
        case GenKind::pow: out = "pow"; break;
        case GenKind::file: return "file:" + spec.path;
    }
    out += ':';
    for (std::size_t i = 0; i < spec.params.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(spec.params[i]);
    }
    return out;
}

namespace detail {

inline void check_cardinality(std::size_t n) {
    if (n > generate_ceiling)
        throw ceiling_error("generate: cardinality exceeds ceiling " + std::to_string(generate_ceiling));
}

inline void grid_walk(const std::vector<std::int64_t>& bases, std::int64_t bound, std::size_t idx, std::int64_t acc,
                      std::vector<std::int64_t>& out) {
    if (idx == bases.size()) {
        out.push_back(acc);
        check_cardinality(out.size());
        return;
    }
    std::int64_t v = acc;
    for (std::int64_t e = 0; e < bound; ++e) {
        grid_walk(bases, bound, idx + 1, v, out);
        if (e + 1 < bound) v = checked_mul(v, bases[idx], "generate grid");
    }
}

inline void smooth_walk(const std::vector<std::int64_t>& primes, std::int64_t limit, std::size_t idx, std::int64_t acc,
                        std::vector<std::int64_t>& out) {
    if (idx == primes.size()) {
        out.push_back(acc);
        check_cardinality(out.size());
        return;
    }
    for (std::int64_t v = acc;; ) {
        smooth_walk(primes, limit, idx + 1, v, out);
        if (v > limit / primes[idx]) break;
        v *= primes[idx];
    }
}

inline std::int64_t checked_pow(std::int64_t base, std::int64_t exp) {
    std::int64_t r = 1;
    for (std::int64_t i = 0; i < exp; ++i) r = checked_mul(r, base, "generate pow");
    return r;
}

} // namespace detail

inline IntSet generate(const GeneratorSpec& spec) {
    std::vector<std::int64_t> out;
    switch (spec.kind) {
        case GenKind::ap: {
            const std::int64_t a0 = spec.params[0], d = spec.params[1], n = spec.params[2];
            detail::check_cardinality(static_cast<std::size_t>(n));
            std::int64_t v = a0;
            for (std::int64_t i = 0; i < n; ++i) {
                out.push_back(v);
                if (i + 1 < n) v = checked_add(v, d, "generate ap");
            }
            break;
        }
        case GenKind::geo: {
            const std::int64_t g0 = spec.params[0], r = spec.params[1], n = spec.params[2];
            detail::check_cardinality(static_cast<std::size_t>(n));
            std::int64_t v = g0;
            for (std::int64_t i = 0; i < n; ++i) {
                out.push_back(v);
                if (i + 1 < n) v = checked_mul(v, r, "generate geo");
            }
            break;
        }
        case GenKind::grid: {
            std::vector<std::int64_t> bases(spec.params.begin(), spec.params.end() - 1);
            detail::grid_walk(bases, spec.params.back(), 0, 1, out);
            break;
        }
        case GenKind::interval: {
            const std::int64_t n = spec.params[0];
            detail::check_cardinality(static_cast<std::size_t>(n));
            out.resize(static_cast<std::size_t>(n));
            for (std::int64_t i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = i + 1;
            break;
        }
        case GenKind::smooth: {
            PrimeTable t = sieve_primes(spec.params[0]);
            detail::smooth_walk(t.primes, spec.params[1], 0, 1, out);
            break;
        }
        case GenKind::pow: {
            const std::int64_t k = spec.params[0], n = spec.params[1];
            detail::check_cardinality(static_cast<std::size_t>(n));
            for (std::int64_t i = 1; i <= n; ++i) out.push_back(detail::checked_pow(i, k));
            break;
        }
        case GenKind::file: return read_set_file(spec.path);
    }
    return IntSet(std::move(out));
}

inline IntSet generate(const std::string& text) { return generate(parse_generator(text)); }

} // namespace energylab
