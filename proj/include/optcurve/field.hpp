#ifndef OPTCURVE_FIELD_HPP
#define OPTCURVE_FIELD_HPP

#include <concepts>
#include <optional>

#include "optcurve/modarith.hpp"

namespace optcurve {

/// Operations shared by the prime field and its small-degree extensions.
/// Generic counting code (curves over F_q and F_{q^r}) is written against this.
template <class F>
concept FiniteField = requires(const F& f, const typename F::Element& a, u64 i) {
    typename F::Element;
    { f.size() } -> std::convertible_to<u64>;
    { f.characteristic() } -> std::convertible_to<u64>;
    { f.element(i) } -> std::same_as<typename F::Element>;
    { f.from_base(i) } -> std::same_as<typename F::Element>;
    { f.zero() } -> std::same_as<typename F::Element>;
    { f.one() } -> std::same_as<typename F::Element>;
    { f.add(a, a) } -> std::same_as<typename F::Element>;
    { f.sub(a, a) } -> std::same_as<typename F::Element>;
    { f.mul(a, a) } -> std::same_as<typename F::Element>;
    { f.neg(a) } -> std::same_as<typename F::Element>;
    { f.inv(a) } -> std::same_as<typename F::Element>;
    { f.is_zero(a) } -> std::convertible_to<bool>;
    { f.chi(a) } -> std::convertible_to<int>;
    { f.sqrt(a) } -> std::same_as<std::optional<typename F::Element>>;
};

template <class F>
typename F::Element field_pow(const F& field, typename F::Element base, u64 exp) {
    auto result = field.one();
    while (exp != 0) {
        if (exp & 1U) result = field.mul(result, base);
        base = field.mul(base, base);
        exp >>= 1U;
    }
    return result;
}

/// Tonelli-Shanks over any field of odd order. `nonsquare` must be a fixed
/// quadratic non-residue of the field.
template <class F>
std::optional<typename F::Element> tonelli_shanks(const F& field, const typename F::Element& a,
                                                  const typename F::Element& nonsquare) {
    if (field.is_zero(a)) return field.zero();
    const u64 order = field.size() - 1;
    const auto one = field.one();
    if (field_pow(field, a, order / 2) != one) return std::nullopt;

    u64 t = order;
    int s = 0;
    while ((t & 1U) == 0) {
        t >>= 1U;
        ++s;
    }
    auto c = field_pow(field, nonsquare, t);
    auto x = field_pow(field, a, (t + 1) / 2);
    auto b = field_pow(field, a, t);
    int m = s;
    while (b != one) {
        int i = 0;
        auto b2 = b;
        while (b2 != one) {
            b2 = field.mul(b2, b2);
            ++i;
        }
        auto g = c;
        for (int j = 0; j < m - i - 1; ++j) g = field.mul(g, g);
        x = field.mul(x, g);
        c = field.mul(g, g);
        b = field.mul(b, c);
        m = i;
    }
    return x;
}

} // namespace optcurve

#endif // OPTCURVE_FIELD_HPP
