#ifndef OPTCURVE_ELLIPTIC_HPP
#define OPTCURVE_ELLIPTIC_HPP

#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

#include "optcurve/disc19.hpp"
#include "optcurve/field.hpp"
#include "optcurve/poly.hpp"
#include "optcurve/prime_field.hpp"

namespace optcurve {

/// Raised when a search that is guaranteed to succeed runs dry. Seeing this
/// means an arithmetic bug, not a mathematical fact.
class NotFoundError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// y^2 = x^3 + a x + b over F_q.
struct EllipticCurve {
    u64 q = 0;
    u64 a = 0;
    u64 b = 0;

    friend bool operator==(const EllipticCurve&, const EllipticCurve&) = default;
};

enum class CurveKind { maximal, minimal, neither };

inline std::string_view to_string(CurveKind k) {
    switch (k) {
        case CurveKind::maximal: return "maximal";
        case CurveKind::minimal: return "minimal";
        default: return "neither";
    }
}

inline CurveKind to_curve_kind(Kind k) { return k == Kind::maximal ? CurveKind::maximal : CurveKind::minimal; }

struct TraceReport {
    i64 count = 0;
    i64 trace = 0;
    CurveKind kind = CurveKind::neither;
};

inline void check_field(const PrimeField& F, u64 q) {
    if (F.modulus() != q) {
        throw std::invalid_argument("field modulus " + std::to_string(F.modulus()) + " does not match curve q = " +
                                    std::to_string(q));
    }
}

/// The cubic f(x) = x^3 + a x + b.
inline Poly weierstrass_cubic(const EllipticCurve& E) { return Poly{E.b % E.q, E.a % E.q, 0, 1}; }

inline bool is_nonsingular(const PrimeField& F, const EllipticCurve& E) {
    const u64 a = F.from_base(E.a);
    const u64 b = F.from_base(E.b);
    const u64 disc = F.add(F.mul(4, F.mul(a, F.mul(a, a))), F.mul(27, F.mul(b, b)));
    return disc != 0;
}

namespace detail {

// Affine part sum_x (1 + chi(x^3 + a x + b)); chi(0) counts the single y = 0.
inline i64 elliptic_affine_count(const PrimeField& F, u64 a, u64 b) {
    i64 s = 0;
    for (u64 x = 0; x < F.modulus(); ++x) {
        const u64 fx = F.add(F.mul(F.add(F.mul(x, x), a), x), b);
        s += 1 + F.chi(fx);
    }
    return s;
}

} // namespace detail

/// #E(F_q), including the point at infinity.
inline i64 count_points_elliptic(const PrimeField& F, const EllipticCurve& E) {
    check_field(F, E.q);
    if (!is_nonsingular(F, E)) throw std::invalid_argument("count_points_elliptic: singular curve");
    return 1 + detail::elliptic_affine_count(F, F.from_base(E.a), F.from_base(E.b));
}

inline i64 count_points_elliptic(const EllipticCurve& E) { return count_points_elliptic(PrimeField(E.q), E); }

/// #E(F_{q^r}) via the same character sum over an extension field.
template <FiniteField K>
i64 count_points_elliptic_over(const K& field, const EllipticCurve& E) {
    const auto f = weierstrass_cubic(E);
    i64 s = 1;
    for (u64 i = 0; i < field.size(); ++i) s += 1 + field.chi(poly_eval(field, f, field.element(i)));
    return s;
}

inline CurveKind classify_trace(const Disc19Field& field, i64 trace) {
    if (trace == -static_cast<i64>(field.m)) return CurveKind::maximal;
    if (trace == static_cast<i64>(field.m)) return CurveKind::minimal;
    return CurveKind::neither;
}

inline TraceReport trace_and_kind(const PrimeField& F, const Disc19Field& field, const EllipticCurve& E) {
    TraceReport r;
    r.count = count_points_elliptic(F, E);
    r.trace = static_cast<i64>(E.q) + 1 - r.count;
    r.kind = classify_trace(field, r.trace);
    return r;
}

/// (a c^2, b c^3). Isomorphic to E when c is a square, the quadratic twist otherwise.
inline EllipticCurve quadratic_twist(const PrimeField& F, const EllipticCurve& E, u64 c) {
    check_field(F, E.q);
    c = F.from_base(c);
    if (c == 0) throw std::invalid_argument("quadratic_twist: c must be nonzero");
    const u64 c2 = F.mul(c, c);
    return {E.q, F.mul(F.from_base(E.a), c2), F.mul(F.from_base(E.b), F.mul(c2, c))};
}

/// Lexicographically first nonsingular (a, b) in [0, q)^2 of the requested kind.
inline EllipticCurve find_optimal_elliptic(const PrimeField& F, const Disc19Field& field, Kind kind) {
    check_field(F, field.q);
    const i64 target = serre_bound_count(field, 1, kind);
    for (u64 a = 0; a < field.q; ++a) {
        for (u64 b = 0; b < field.q; ++b) {
            const EllipticCurve E{field.q, a, b};
            if (!is_nonsingular(F, E)) continue;
            if (1 + detail::elliptic_affine_count(F, a, b) == target) return E;
        }
    }
    throw NotFoundError("no " + std::string(to_string(kind)) + " elliptic curve over F_" + std::to_string(field.q));
}

} // namespace optcurve

#endif // OPTCURVE_ELLIPTIC_HPP
