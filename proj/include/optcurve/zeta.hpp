#ifndef OPTCURVE_ZETA_HPP
#define OPTCURVE_ZETA_HPP

#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "optcurve/disc19.hpp"
#include "optcurve/elliptic.hpp"
#include "optcurve/ext_field.hpp"
#include "optcurve/genus2.hpp"
#include "optcurve/genus3.hpp"
#include "optcurve/prime_field.hpp"

namespace optcurve {

using AnyCurve = std::variant<EllipticCurve, Genus2Curve, Genus3Cover>;

inline u64 curve_modulus(const AnyCurve& c) {
    return std::visit(
        [](const auto& x) -> u64 {
            if constexpr (std::is_same_v<std::decay_t<decltype(x)>, Genus3Cover>) {
                return x.e.q;
            } else {
                return x.q;
            }
        },
        c);
}

inline int curve_genus(const AnyCurve& c) { return static_cast<int>(c.index()) + 1; }

/// N_r = #C(F_{q^r}) for r in {1, 2, 3}, using the same counting rules as
/// over F_q (infinity conventions included) with the extension's character.
inline i64 count_over_extension(const AnyCurve& curve, int r) {
    if (r < 1 || r > 3) throw std::invalid_argument("count_over_extension: r must be 1, 2 or 3");
    const u64 q = curve_modulus(curve);
    const PrimeField F(q);
    if (r == 1) {
        return std::visit(
            [&](const auto& c) -> i64 {
                using T = std::decay_t<decltype(c)>;
                if constexpr (std::is_same_v<T, EllipticCurve>) {
                    return count_points_elliptic(F, c);
                } else if constexpr (std::is_same_v<T, Genus2Curve>) {
                    return count_points_hyperelliptic(F, c);
                } else {
                    return count_points_cover(F, c);
                }
            },
            curve);
    }
    const ExtField K(q, r);
    return std::visit(
        [&](const auto& c) -> i64 {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, EllipticCurve>) {
                if (!is_nonsingular(F, c)) throw std::invalid_argument("count_over_extension: singular curve");
                return count_points_elliptic_over(K, c);
            } else if constexpr (std::is_same_v<T, Genus2Curve>) {
                return count_points_hyperelliptic_over(F, K, c);
            } else {
                return count_points_cover_over(F, K, c);
            }
        },
        curve);
}

struct ExtensionCounts {
    u64 q = 0;
    int g = 0;
    std::vector<i64> n;  ///< N_1, N_2, ...
};

/// 1 + a_1 t + ... + a_{2g} t^{2g}.
struct LPolynomial {
    u64 q = 0;
    int g = 0;
    std::vector<i64> coeffs;

    friend bool operator==(const LPolynomial&, const LPolynomial&) = default;
};

inline i64 ipow(i64 base, int e) {
    i64 r = 1;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

/// Weil bound |N_r - q^r - 1| <= 2 g sqrt(q^r), compared after squaring.
inline bool satisfies_weil(u64 q, int g, int r, i64 count) {
    const i64 qr = ipow(static_cast<i64>(q), r);
    const i64 dev = count - qr - 1;
    return dev * dev <= 4 * static_cast<i64>(g) * g * qr;
}

/// Newton's identities over the integers. With S_r = q^r + 1 - N_r the power
/// sums of the Frobenius eigenvalues, the coefficients of L(t) = prod(1 - alpha_i t)
/// satisfy k a_k = -sum_{i=1..k} S_i a_{k-i}. The upper half comes from the
/// functional equation a_{2g-i} = q^{g-i} a_i.
inline LPolynomial lpoly_from_counts(const ExtensionCounts& counts) {
    const int g = counts.g;
    if (g < 1 || g > 3) throw std::invalid_argument("lpoly_from_counts: genus must be 1, 2 or 3");
    if (static_cast<int>(counts.n.size()) < g) throw std::invalid_argument("lpoly_from_counts: need N_1..N_g");
    const i64 q = static_cast<i64>(counts.q);
    std::vector<i64> s(static_cast<std::size_t>(g) + 1, 0);
    for (int r = 1; r <= g; ++r) {
        const i64 n = counts.n[static_cast<std::size_t>(r - 1)];
        if (n < 0) throw std::invalid_argument("lpoly_from_counts: negative count");
        s[static_cast<std::size_t>(r)] = ipow(q, r) + 1 - n;
    }
    LPolynomial L;
    L.q = counts.q;
    L.g = g;
    L.coeffs.assign(static_cast<std::size_t>(2 * g) + 1, 0);
    L.coeffs[0] = 1;
    for (int k = 1; k <= g; ++k) {
        i64 acc = 0;
        for (int i = 1; i <= k; ++i) acc += s[static_cast<std::size_t>(i)] * L.coeffs[static_cast<std::size_t>(k - i)];
        if (acc % k != 0) throw std::invalid_argument("lpoly_from_counts: inconsistent counts (non-integral Newton step)");
        L.coeffs[static_cast<std::size_t>(k)] = -acc / k;
    }
    for (int i = 0; i < g; ++i) {
        L.coeffs[static_cast<std::size_t>(2 * g - i)] = ipow(q, g - i) * L.coeffs[static_cast<std::size_t>(i)];
    }
    return L;
}

/// (1 + s m t + q t^2)^g with s = +1 for maximal, -1 for minimal.
inline std::vector<i64> optimal_lpoly_coeffs(const Disc19Field& field, int g, Kind kind) {
    const i64 m = static_cast<i64>(field.m) * (kind == Kind::maximal ? 1 : -1);
    const std::vector<i64> factor{1, m, static_cast<i64>(field.q)};
    std::vector<i64> out{1};
    for (int k = 0; k < g; ++k) {
        std::vector<i64> next(out.size() + 2, 0);
        for (std::size_t i = 0; i < out.size(); ++i) {
            for (std::size_t j = 0; j < 3; ++j) next[i + j] += out[i] * factor[j];
        }
        out = std::move(next);
    }
    return out;
}

inline bool is_optimal_lpoly(const LPolynomial& L, const Disc19Field& field, int g, Kind kind) {
    if (L.g != g || L.q != field.q || static_cast<int>(L.coeffs.size()) != 2 * g + 1) return false;
    return L.coeffs == optimal_lpoly_coeffs(field, g, kind);
}

/// N_r predicted from L(t): S_r from Newton's identities run forwards.
inline i64 predict_count(const LPolynomial& L, int r) {
    const int d = static_cast<int>(L.coeffs.size()) - 1;
    std::vector<i64> s(static_cast<std::size_t>(r) + 1, 0);
    for (int k = 1; k <= r; ++k) {
        // S_k = -k a_k - sum_{i=1}^{k-1} S_i a_{k-i}
        i64 acc = k <= d ? -k * L.coeffs[static_cast<std::size_t>(k)] : 0;
        for (int i = 1; i < k; ++i) {
            if (k - i <= d) acc -= s[static_cast<std::size_t>(i)] * L.coeffs[static_cast<std::size_t>(k - i)];
        }
        s[static_cast<std::size_t>(k)] = acc;
    }
    return ipow(static_cast<i64>(L.q), r) + 1 - s[static_cast<std::size_t>(r)];
}

} // namespace optcurve

#endif // OPTCURVE_ZETA_HPP
