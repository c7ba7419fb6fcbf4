#ifndef OPTCURVE_MODARITH_HPP
#define OPTCURVE_MODARITH_HPP

#include <cstdint>

namespace optcurve {

using u64 = std::uint64_t;
using i64 = std::int64_t;

constexpr u64 mulmod(u64 a, u64 b, u64 m) {
    return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

constexpr u64 powmod(u64 base, u64 exp, u64 m) {
    u64 result = 1 % m;
    base %= m;
    while (exp != 0) {
        if (exp & 1U) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1U;
    }
    return result;
}

/// Deterministic Miller-Rabin; the witness set {2,3,5,7,11,13,17,19,23,29,31,37}
/// is exact for every n < 3.3e24, so in particular for all 64-bit n.
constexpr bool is_prime(u64 n) {
    if (n < 2) return false;
    constexpr u64 small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (u64 p : small) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1U) == 0) {
        d >>= 1U;
        ++s;
    }
    for (u64 a : small) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

/// floor(sqrt(n)) in exact integer arithmetic.
constexpr u64 isqrt(u64 n) {
    if (n < 2) return n;
    u64 lo = 1;
    u64 hi = n < (u64{1} << 32) ? n : (u64{1} << 32);
    while (lo < hi) {
        u64 mid = lo + (hi - lo + 1) / 2;
        if (mid <= n / mid) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    return lo;
}

} // namespace optcurve

#endif // OPTCURVE_MODARITH_HPP
