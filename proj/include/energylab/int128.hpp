// int128.hpp
// 128-bit helpers. Energy counters are exact unsigned 128-bit integers:
// quadruple counts reach ~1e15 for 1e5-element sets, past the 2^53 range
// where doubles stay exact, and T_k counts grow far beyond that.

#pragma once
#include <cstdint>
#include <string>

#include "energylab/errors.hpp"

namespace energylab {

using u128 = unsigned __int128;
using i128 = __int128;

inline u128 checked_add_u128(u128 a, u128 b) {
    u128 r = a + b;
    if (r < a) throw overflow_error("128-bit counter overflow");
    return r;
}

inline u128 checked_mul_u128(u128 a, u128 b) {
    if (a != 0 && b > ~u128{0} / a) throw overflow_error("128-bit counter overflow");
    return a * b;
}

inline std::string to_string(u128 v) {
    if (v == 0) return "0";
    char buf[40];
    int i = 40;
    while (v > 0) {
        buf[--i] = static_cast<char>('0' + static_cast<int>(v % 10));
        v /= 10;
    }
    return std::string(buf + i, buf + 40);
}

inline std::string to_string(i128 v) {
    if (v < 0) return "-" + to_string(static_cast<u128>(-(v + 1)) + 1);
    return to_string(static_cast<u128>(v));
}

// Checked int64 arithmetic. Set elements are signed integers of magnitude
// below 2^63; INT64_MIN is excluded so negation is always safe.
inline std::int64_t checked_add(std::int64_t a, std::int64_t b, const char* what) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r) || r == INT64_MIN)
        throw overflow_error(std::string(what) + ": " + std::to_string(a) + " + " + std::to_string(b) +
                             " exceeds 63-bit magnitude");
    return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b, const char* what) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r) || r == INT64_MIN)
        throw overflow_error(std::string(what) + ": " + std::to_string(a) + " - " + std::to_string(b) +
                             " exceeds 63-bit magnitude");
    return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b, const char* what) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r) || r == INT64_MIN)
        throw overflow_error(std::string(what) + ": " + std::to_string(a) + " * " + std::to_string(b) +
                             " exceeds 63-bit magnitude");
    return r;
}

} // namespace energylab
