#ifndef OPTCURVE_DISC19_HPP
#define OPTCURVE_DISC19_HPP

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "optcurve/modarith.hpp"

namespace optcurve {

enum class Kind { maximal, minimal };

inline std::string_view to_string(Kind k) { return k == Kind::maximal ? "maximal" : "minimal"; }

inline Kind parse_kind(std::string_view s) {
    if (s == "max" || s == "maximal") return Kind::maximal;
    if (s == "min" || s == "minimal") return Kind::minimal;
    throw std::invalid_argument("unknown kind '" + std::string(s) + "' (expected max or min)");
}

/// A prime q with m = [2 sqrt q] and m^2 - 4q = -19.
struct Disc19Field {
    u64 q = 0;
    u64 m = 0;

    friend bool operator==(const Disc19Field&, const Disc19Field&) = default;
};

/// Checks the defining relations independently: the discriminant identity,
/// m odd, and m == floor(2 sqrt q) via the integer square root of 4q.
inline bool is_disc19(u64 q, u64 m) {
    return m % 2 == 1 && m * m + 19 == 4 * q && isqrt(4 * q) == m && is_prime(q);
}

inline Disc19Field make_disc19_field(u64 q) {
    const u64 m = isqrt(4 * q);
    if (!is_disc19(q, m)) {
        throw std::invalid_argument("q = " + std::to_string(q) + " is not a prime of discriminant -19");
    }
    return {q, m};
}

/// All primes q <= bound of discriminant -19, ascending.
///
/// Walks odd m from 11: q = (m^2 + 19) / 4 is then an integer, and
/// [2 sqrt q] = m holds exactly when 19 < 2m + 1, which fails for m <= 9.
inline std::vector<Disc19Field> enumerate_disc19_primes(u64 bound) {
    std::vector<Disc19Field> out;
    for (u64 m = 11;; m += 2) {
        const u64 q = (m * m + 19) / 4;
        if (q > bound) break;
        if (is_prime(q) && isqrt(4 * q) == m) out.push_back({q, m});
    }
    return out;
}

/// The Hasse-Weil-Serre extremal count q + 1 +/- g m.
inline i64 serre_bound_count(const Disc19Field& field, int g, Kind kind) {
    if (g < 1 || g > 3) throw std::invalid_argument("serre_bound_count: genus must be 1, 2 or 3");
    const i64 base = static_cast<i64>(field.q) + 1;
    const i64 delta = static_cast<i64>(g) * static_cast<i64>(field.m);
    return kind == Kind::maximal ? base + delta : base - delta;
}

} // namespace optcurve

#endif // OPTCURVE_DISC19_HPP
