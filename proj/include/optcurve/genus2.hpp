#ifndef OPTCURVE_GENUS2_HPP
#define OPTCURVE_GENUS2_HPP

#include <optional>
#include <stdexcept>
#include <string>

#include "optcurve/disc19.hpp"
#include "optcurve/elliptic.hpp"
#include "optcurve/field.hpp"
#include "optcurve/poly.hpp"
#include "optcurve/prime_field.hpp"

namespace optcurve {

/// E1: y^2 = f(x) and E2: y^2 = f(x)(alpha x + beta). Their fibered product
/// over the x-line is a genus-2 curve whose Jacobian is isogenous to E1 x E2.
struct Genus2Recipe {
    EllipticCurve e1;
    u64 alpha = 0;
    u64 beta = 0;

    friend bool operator==(const Genus2Recipe&, const Genus2Recipe&) = default;
};

/// z^2 = sextic(s).
struct Genus2Curve {
    u64 q = 0;
    Poly sextic;
    std::optional<Kind> kind_claim;
};

/// f((s^2 - beta) / alpha) expanded over F_q. Only even powers of s survive;
/// the leading coefficient is alpha^-3.
inline Genus2Curve construct_fibered_sextic(const PrimeField& F, const Genus2Recipe& r) {
    check_field(F, r.e1.q);
    const u64 alpha = F.from_base(r.alpha);
    if (alpha == 0) throw std::invalid_argument("construct_fibered_sextic: alpha must be nonzero");
    const u64 inv_alpha = F.inv(alpha);
    const Poly x_of_s{F.neg(F.mul(F.from_base(r.beta), inv_alpha)), 0, inv_alpha};
    Poly sextic = poly_compose(F, weierstrass_cubic(r.e1), x_of_s);
    if (!poly_is_squarefree(F, sextic)) throw std::invalid_argument("construct_fibered_sextic: degenerate recipe");
    return {r.e1.q, std::move(sextic), std::nullopt};
}

/// Point count of the model z^2 = h(x) with no smoothness check: affine
/// character sum plus the points over infinity (one for odd degree, two or
/// zero for even degree depending on whether the leading coefficient is a
/// square).
template <FiniteField K>
i64 hyperelliptic_model_count(const K& field, const Poly& h) {
    i64 s = 0;
    for (u64 i = 0; i < field.size(); ++i) s += 1 + field.chi(poly_eval(field, h, field.element(i)));
    if (h.degree() % 2 == 1) return s + 1;
    return s + (field.chi(field.from_base(h.leading())) == 1 ? 2 : 0);
}

inline void require_smooth_genus2(const PrimeField& F, const Genus2Curve& C) {
    check_field(F, C.q);
    if (C.sextic.degree() != 5 && C.sextic.degree() != 6) {
        throw std::invalid_argument("genus-2 model must have degree 5 or 6");
    }
    if (!poly_is_squarefree(F, C.sextic)) throw std::invalid_argument("genus-2 model is not squarefree");
}

inline i64 count_points_hyperelliptic(const PrimeField& F, const Genus2Curve& C) {
    require_smooth_genus2(F, C);
    return hyperelliptic_model_count(F, poly_reduce(F, C.sextic));
}

template <FiniteField K>
i64 count_points_hyperelliptic_over(const PrimeField& F, const K& field, const Genus2Curve& C) {
    require_smooth_genus2(F, C);
    return hyperelliptic_model_count(field, poly_reduce(F, C.sextic));
}

/// #E2(F_q) for E2: y^2 = f(x)(alpha x + beta), counted on the quartic model.
/// Returns nullopt when alpha x + beta shares a root with f (no elliptic curve).
inline std::optional<i64> count_second_factor(const PrimeField& F, const Genus2Recipe& r) {
    const u64 alpha = F.from_base(r.alpha);
    const u64 beta = F.from_base(r.beta);
    if (alpha == 0) return std::nullopt;
    const Poly f = weierstrass_cubic(r.e1);
    const u64 root = F.mul(F.neg(beta), F.inv(alpha));
    if (poly_eval(F, f, root) == 0) return std::nullopt;
    i64 s = 0;
    for (u64 x = 0; x < F.modulus(); ++x) {
        s += 1 + F.chi(F.mul(poly_eval(F, f, x), F.add(F.mul(alpha, x), beta)));
    }
    return s + (F.chi(alpha) == 1 ? 2 : 0);
}

struct Genus2Result {
    Genus2Recipe recipe;
    Genus2Curve curve;
    i64 count = 0;
};

/// Fix E1 = the lexicographically first optimal elliptic curve of the kind,
/// then scan (alpha, beta) lexicographically for the first recipe whose
/// second factor has the same kind and whose sextic meets the genus-2 bound.
inline Genus2Result find_optimal_genus2(const PrimeField& F, const Disc19Field& field, Kind kind) {
    const EllipticCurve e1 = find_optimal_elliptic(F, field, kind);
    const i64 target1 = serre_bound_count(field, 1, kind);
    const i64 target2 = serre_bound_count(field, 2, kind);
    for (u64 alpha = 1; alpha < field.q; ++alpha) {
        for (u64 beta = 0; beta < field.q; ++beta) {
            const Genus2Recipe r{e1, alpha, beta};
            const auto n2 = count_second_factor(F, r);
            if (!n2 || *n2 != target1) continue;
            Genus2Curve c = construct_fibered_sextic(F, r);
            const i64 n = count_points_hyperelliptic(F, c);
            if (n == target2) {
                c.kind_claim = kind;
                return {r, std::move(c), n};
            }
        }
    }
    throw NotFoundError("no " + std::string(to_string(kind)) + " genus-2 recipe over F_" + std::to_string(field.q));
}

} // namespace optcurve

#endif // OPTCURVE_GENUS2_HPP
