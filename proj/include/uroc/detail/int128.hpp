#pragma once

#include <cstdint>

#include "uroc/error.hpp"

namespace uroc {

// Exact accumulator for the rank/class sums; terms exceed 64 bits once
// n * m * mid-rank products reach data-set scale.
using int128 = __int128;

namespace detail {

inline int128 checked_add(int128 a, int128 b) {
    int128 r;
    if (__builtin_add_overflow(a, b, &r))
        throw Error(ErrorCode::Overflow, "128-bit addition overflow");
    return r;
}

inline int128 checked_mul(int128 a, int128 b) {
    int128 r;
    if (__builtin_mul_overflow(a, b, &r))
        throw Error(ErrorCode::Overflow, "128-bit multiplication overflow");
    return r;
}

inline double to_double(int128 v) { return static_cast<double>(v); }

}  // namespace detail
}  // namespace uroc
