#ifndef OPTCURVE_HERMITIAN_HPP
#define OPTCURVE_HERMITIAN_HPP

#include <array>
#include <stdexcept>
#include <string>

#include "optcurve/modarith.hpp"

namespace optcurve {

/// Element (a + b sqrt(-19)) / 2 of the maximal order Z[(1 + sqrt(-19)) / 2].
/// Halves are cleared by storing the doubled parts; membership in the order
/// is a == b (mod 2).
struct Disc19Integer {
    i64 a = 0;
    i64 b = 0;

    static constexpr Disc19Integer rational(i64 n) { return {2 * n, 0}; }

    constexpr bool valid() const { return (a - b) % 2 == 0; }
    constexpr bool is_rational_integer() const { return b == 0 && a % 2 == 0; }
    constexpr i64 rational_value() const { return a / 2; }
    constexpr Disc19Integer conj() const { return {a, -b}; }

    friend constexpr Disc19Integer operator+(Disc19Integer x, Disc19Integer y) { return {x.a + y.a, x.b + y.b}; }
    friend constexpr Disc19Integer operator-(Disc19Integer x, Disc19Integer y) { return {x.a - y.a, x.b - y.b}; }
    friend constexpr Disc19Integer operator*(Disc19Integer x, Disc19Integer y) {
        // ((x.a + x.b s)(y.a + y.b s)) / 4 with s^2 = -19, re-doubled. Exact
        // for elements of the order.
        return {(x.a * y.a - 19 * x.b * y.b) / 2, (x.a * y.b + x.b * y.a) / 2};
    }
    friend constexpr bool operator==(const Disc19Integer&, const Disc19Integer&) = default;
};

/// A 3x3 Hermitian Gram matrix over the maximal order of Q(sqrt(-19)).
struct HermitianGram {
    std::array<std::array<Disc19Integer, 3>, 3> h{};

    bool is_hermitian() const {
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                if (!h[i][j].valid() || h[i][j] != h[j][i].conj()) return false;
            }
        }
        return true;
    }

    Disc19Integer determinant() const {
        const auto& m = h;
        return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
               m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    }
};

inline HermitianGram identity_gram() {
    HermitianGram g;
    for (int i = 0; i < 3; ++i) g.h[i][i] = Disc19Integer::rational(1);
    return g;
}

/// Representative of the unique class of irreducible unimodular Hermitian
/// forms of rank 3 over Z[(1 + sqrt(-19)) / 2].
inline HermitianGram disc19_unimodular_gram() {
    using D = Disc19Integer;
    HermitianGram g;
    g.h = {{{D::rational(2), D::rational(1), D::rational(-1)},
            {D::rational(1), D::rational(3), D{-3, 1}},
            {D::rational(-1), D{-3, -1}, D::rational(3)}}};
    return g;
}

/// Degree of the k-th projection C -> E (k = 1, 2, 3): the determinant of the
/// Gram matrix with row and column k removed.
inline i64 hermitian_projection_degree(const HermitianGram& g, int k) {
    if (k < 1 || k > 3) throw std::invalid_argument("hermitian_projection_degree: k must be 1, 2 or 3");
    if (!g.is_hermitian()) throw std::invalid_argument("hermitian_projection_degree: matrix is not Hermitian");
    std::array<int, 2> idx{};
    int n = 0;
    for (int i = 0; i < 3; ++i) {
        if (i != k - 1) idx[n++] = i;
    }
    const auto& h = g.h;
    const Disc19Integer det = h[idx[0]][idx[0]] * h[idx[1]][idx[1]] - h[idx[0]][idx[1]] * h[idx[1]][idx[0]];
    if (!det.is_rational_integer()) throw std::logic_error("hermitian_projection_degree: minor is not an integer");
    return det.rational_value();
}

} // namespace optcurve

#endif // OPTCURVE_HERMITIAN_HPP
