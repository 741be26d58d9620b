// errors.hpp
// Error taxonomy shared by the whole library. Every failure carries a
// category that the CLI maps onto its exit code:
//   usage            -> 2   (bad flags, malformed generator/config text)
//   domain           -> 3   (precondition violations, divergent parameters)
//   ceiling/overflow -> 3   (size ceilings exceeded, checked arithmetic would wrap)
//   io               -> 4   (file system, missing fields in inputs)

#pragma once
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace energylab {

enum class errc { usage, domain, ceiling, overflow, io };

inline int exit_code(errc c) {
    switch (c) {
        case errc::usage: return 2;
        case errc::io: return 4;
        default: return 3;
    }
}

class error : public std::runtime_error {
public:
    error(errc c, const std::string& msg) : std::runtime_error(msg), code_(c) {}
    errc code() const { return code_; }
    int exit_code() const { return energylab::exit_code(code_); }

private:
    errc code_;
};

struct usage_error : error {
    explicit usage_error(const std::string& m) : error(errc::usage, m) {}
};
struct domain_error : error {
    explicit domain_error(const std::string& m) : error(errc::domain, m) {}
};
struct ceiling_error : error {
    explicit ceiling_error(const std::string& m) : error(errc::ceiling, m) {}
};
struct overflow_error : error {
    explicit overflow_error(const std::string& m) : error(errc::overflow, m) {}
};
struct io_error : error {
    explicit io_error(const std::string& m) : error(errc::io, m) {}
};

// Pair ceiling for quadratic-cost operations. ENERGY_LAB_CEILING overrides
// the default of 1e9.
inline std::uint64_t pair_ceiling() {
    static const std::uint64_t v = [] {
        if (const char* s = std::getenv("ENERGY_LAB_CEILING")) {
            char* end = nullptr;
            unsigned long long parsed = std::strtoull(s, &end, 10);
            if (end && *end == '\0' && parsed > 0) return static_cast<std::uint64_t>(parsed);
        }
        return std::uint64_t{1000000000};
    }();
    return v;
}

// Cardinality ceiling for generated/materialized sets.
inline constexpr std::uint64_t generate_ceiling = 10000000;

// Ceiling for sieve limits.
inline constexpr std::uint64_t sieve_ceiling = 100000000;

} // namespace energylab
