#ifndef OPTCURVE_POLY_HPP
#define OPTCURVE_POLY_HPP

#include <algorithm>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "optcurve/field.hpp"
#include "optcurve/prime_field.hpp"

namespace optcurve {

/// Dense univariate polynomial over F_q, coefficients lowest degree first.
/// Always kept normalized: no trailing zero coefficients, so the zero
/// polynomial has an empty coefficient vector and degree() == kZeroDegree.
class Poly {
public:
    static constexpr int kZeroDegree = -1;

    Poly() = default;
    explicit Poly(std::vector<u64> coeffs) : c_(std::move(coeffs)) { trim(); }
    Poly(std::initializer_list<u64> coeffs) : c_(coeffs) { trim(); }

    static Poly constant(u64 a) { return Poly{a}; }
    static Poly monomial(u64 a, int degree) {
        std::vector<u64> c(static_cast<std::size_t>(degree) + 1, 0);
        c.back() = a;
        return Poly(std::move(c));
    }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    u64 leading() const { return c_.empty() ? 0 : c_.back(); }
    /// Coefficient of x^i, zero beyond the degree.
    u64 coeff(int i) const {
        return i >= 0 && static_cast<std::size_t>(i) < c_.size() ? c_[static_cast<std::size_t>(i)] : 0;
    }
    const std::vector<u64>& coeffs() const { return c_; }

    friend bool operator==(const Poly&, const Poly&) = default;

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<u64> c_;
};

/// Reduce every coefficient into [0, q).
inline Poly poly_reduce(const PrimeField& F, const Poly& p) {
    std::vector<u64> c = p.coeffs();
    for (auto& x : c) x = F.from_base(x);
    return Poly(std::move(c));
}

inline Poly poly_add(const PrimeField& F, const Poly& a, const Poly& b) {
    std::vector<u64> c(std::max(a.coeffs().size(), b.coeffs().size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = F.add(a.coeff(static_cast<int>(i)), b.coeff(static_cast<int>(i)));
    return Poly(std::move(c));
}

inline Poly poly_sub(const PrimeField& F, const Poly& a, const Poly& b) {
    std::vector<u64> c(std::max(a.coeffs().size(), b.coeffs().size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = F.sub(a.coeff(static_cast<int>(i)), b.coeff(static_cast<int>(i)));
    return Poly(std::move(c));
}

inline Poly poly_scale(const PrimeField& F, const Poly& a, u64 s) {
    std::vector<u64> c = a.coeffs();
    for (auto& x : c) x = F.mul(x, s);
    return Poly(std::move(c));
}

inline Poly poly_mul(const PrimeField& F, const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    const auto& ac = a.coeffs();
    const auto& bc = b.coeffs();
    std::vector<u64> c(ac.size() + bc.size() - 1, 0);
    for (std::size_t i = 0; i < ac.size(); ++i) {
        for (std::size_t j = 0; j < bc.size(); ++j) c[i + j] = F.add(c[i + j], F.mul(ac[i], bc[j]));
    }
    return Poly(std::move(c));
}

inline Poly poly_pow(const PrimeField& F, const Poly& a, int e) {
    Poly result = Poly::constant(1);
    for (int i = 0; i < e; ++i) result = poly_mul(F, result, a);
    return result;
}

inline Poly poly_derivative(const PrimeField& F, const Poly& a) {
    if (a.degree() < 1) return {};
    std::vector<u64> c(a.coeffs().size() - 1);
    for (std::size_t i = 1; i < a.coeffs().size(); ++i) c[i - 1] = F.mul(a.coeffs()[i], F.from_base(i));
    return Poly(std::move(c));
}

inline Poly poly_monic(const PrimeField& F, const Poly& a) {
    if (a.is_zero()) return a;
    return poly_scale(F, a, F.inv(a.leading()));
}

/// Euclidean division: a = quotient * b + remainder, deg remainder < deg b.
inline std::pair<Poly, Poly> poly_divmod(const PrimeField& F, const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::domain_error("poly_divmod: division by zero polynomial");
    std::vector<u64> rem = a.coeffs();
    const int db = b.degree();
    if (a.degree() < db) return {Poly{}, a};
    std::vector<u64> quot(static_cast<std::size_t>(a.degree() - db) + 1, 0);
    const u64 inv_lead = F.inv(b.leading());
    for (int k = a.degree() - db; k >= 0; --k) {
        u64 top = rem[static_cast<std::size_t>(k + db)];
        if (top == 0) continue;
        u64 factor = F.mul(top, inv_lead);
        quot[static_cast<std::size_t>(k)] = factor;
        for (int j = 0; j <= db; ++j) {
            auto& slot = rem[static_cast<std::size_t>(k + j)];
            slot = F.sub(slot, F.mul(factor, b.coeffs()[static_cast<std::size_t>(j)]));
        }
    }
    return {Poly(std::move(quot)), Poly(std::move(rem))};
}

/// Exact division; throws if b does not divide a.
inline Poly poly_div_exact(const PrimeField& F, const Poly& a, const Poly& b) {
    auto [q, r] = poly_divmod(F, a, b);
    if (!r.is_zero()) throw std::logic_error("poly_div_exact: nonzero remainder");
    return q;
}

/// Monic gcd; gcd(0, 0) is the zero polynomial.
inline Poly poly_gcd(const PrimeField& F, Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = poly_divmod(F, a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return poly_monic(F, a);
}

/// f(g(x)) by Horner's rule in F_q[x].
inline Poly poly_compose(const PrimeField& F, const Poly& f, const Poly& g) {
    Poly result;
    for (int i = f.degree(); i >= 0; --i) {
        result = poly_add(F, poly_mul(F, result, g), Poly::constant(f.coeff(i)));
    }
    return result;
}

/// Horner evaluation at an element of any field containing F_q.
template <FiniteField K>
typename K::Element poly_eval(const K& field, const Poly& p, const typename K::Element& x) {
    auto acc = field.zero();
    for (int i = p.degree(); i >= 0; --i) acc = field.add(field.mul(acc, x), field.from_base(p.coeff(i)));
    return acc;
}

inline u64 poly_eval(const PrimeField& F, const Poly& p, u64 x) {
    u64 acc = 0;
    for (int i = p.degree(); i >= 0; --i) acc = F.add(F.mul(acc, x), p.coeff(i));
    return acc;
}

/// Multiplicity of x0 as a root of p (p nonzero) together with the value at
/// x0 of p / (x - x0)^multiplicity. Works over any extension of F_q.
template <FiniteField K>
std::pair<int, typename K::Element> root_order(const K& field, const Poly& p, const typename K::Element& x0) {
    if (p.is_zero()) throw std::invalid_argument("root_order: zero polynomial");
    std::vector<typename K::Element> c;
    c.reserve(p.coeffs().size());
    for (u64 a : p.coeffs()) c.push_back(field.from_base(a));
    int mult = 0;
    for (;;) {
        // Synthetic division by (x - x0); c[0] ends up as p(x0).
        for (std::size_t i = c.size() - 1; i > 0; --i) c[i - 1] = field.add(c[i - 1], field.mul(c[i], x0));
        if (!field.is_zero(c[0])) return {mult, c[0]};
        c.erase(c.begin());
        ++mult;
    }
}

/// Squarefree decomposition p = leading * prod_i parts[i].first ^ parts[i].second,
/// with the parts monic, squarefree, pairwise coprime and of positive degree.
struct SquarefreeDecomposition {
    u64 leading = 0;
    std::vector<std::pair<Poly, int>> parts;

    /// Product of all parts (the radical of p).
    Poly squarefree_part(const PrimeField& F) const {
        Poly r = Poly::constant(1);
        for (const auto& [factor, mult] : parts) r = poly_mul(F, r, factor);
        return r;
    }
    /// Product of the parts whose multiplicity is odd.
    Poly odd_part(const PrimeField& F) const {
        Poly r = Poly::constant(1);
        for (const auto& [factor, mult] : parts) {
            if (mult % 2 == 1) r = poly_mul(F, r, factor);
        }
        return r;
    }
};

namespace detail {

// Over F_p every coefficient is its own p-th root, so the p-th root of
// g(x^p) is g(x).
inline Poly pth_root(const PrimeField& F, const Poly& a) {
    const u64 p = F.characteristic();
    std::vector<u64> c;
    for (std::size_t i = 0; i < a.coeffs().size(); i += p) c.push_back(a.coeffs()[i]);
    return Poly(std::move(c));
}

inline void squarefree_monic(const PrimeField& F, const Poly& f, int scale, std::vector<std::pair<Poly, int>>& out) {
    if (f.degree() < 1) return;
    Poly c = poly_gcd(F, f, poly_derivative(F, f));
    Poly w = poly_div_exact(F, f, c);
    int i = 1;
    while (w.degree() > 0) {
        Poly y = poly_gcd(F, w, c);
        Poly fac = poly_div_exact(F, w, y);
        if (fac.degree() > 0) out.emplace_back(fac, i * scale);
        w = y;
        c = poly_div_exact(F, c, y);
        ++i;
    }
    if (c.degree() > 0) squarefree_monic(F, pth_root(F, c), scale * static_cast<int>(F.characteristic()), out);
}

} // namespace detail

inline SquarefreeDecomposition poly_squarefree(const PrimeField& F, const Poly& p) {
    if (p.is_zero()) throw std::invalid_argument("poly_squarefree: zero polynomial");
    SquarefreeDecomposition d;
    d.leading = p.leading();
    detail::squarefree_monic(F, poly_monic(F, p), 1, d.parts);
    // Parts coming from p-th root recursion can share multiplicities with
    // earlier ones; merge so each multiplicity appears once.
    std::sort(d.parts.begin(), d.parts.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
    std::vector<std::pair<Poly, int>> merged;
    for (auto& part : d.parts) {
        if (!merged.empty() && merged.back().second == part.second) {
            merged.back().first = poly_mul(F, merged.back().first, part.first);
        } else {
            merged.push_back(std::move(part));
        }
    }
    d.parts = std::move(merged);
    return d;
}

inline bool poly_is_squarefree(const PrimeField& F, const Poly& p) {
    if (p.is_zero()) return false;
    return poly_gcd(F, p, poly_derivative(F, p)).degree() == 0;
}

/// Human-readable form, highest degree first, e.g. "x^6+4x^4+22x^2+33".
inline std::string poly_to_string(const Poly& p, const std::string& var = "x") {
    if (p.is_zero()) return "0";
    std::string s;
    for (int i = p.degree(); i >= 0; --i) {
        u64 a = p.coeff(i);
        if (a == 0) continue;
        if (!s.empty()) s += "+";
        if (a != 1 || i == 0) s += std::to_string(a);
        if (i >= 1) s += var;
        if (i >= 2) s += "^" + std::to_string(i);
    }
    return s;
}

} // namespace optcurve

#endif // OPTCURVE_POLY_HPP
