#ifndef OPTCURVE_PRIME_FIELD_HPP
#define OPTCURVE_PRIME_FIELD_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "optcurve/field.hpp"
#include "optcurve/modarith.hpp"

namespace optcurve {

/// The prime field F_q together with its quadratic character.
///
/// For q up to kChiTableLimit the character is stored as a table (twice over,
/// so that chi(a + b) for reduced a, b is a single lookup without a modulo).
/// Above that limit it falls back to Euler's criterion. The object is
/// immutable after construction and may be shared freely between threads.
class PrimeField {
public:
    using Element = u64;

    static constexpr u64 kMaxModulus = u64{1} << 31;
    static constexpr u64 kChiTableLimit = u64{1} << 24;

    explicit PrimeField(u64 q) : q_(q) {
        if (q < 3 || q > kMaxModulus || !is_prime(q)) {
            throw std::invalid_argument("PrimeField: modulus must be an odd prime below 2^31, got " +
                                        std::to_string(q));
        }
        if (q_ <= kChiTableLimit) {
            chi2_.assign(2 * q_, -1);
            chi2_[0] = 0;
            chi2_[q_] = 0;
            for (u64 x = 1; x <= (q_ - 1) / 2; ++x) {
                u64 sq = x * x % q_;
                chi2_[sq] = 1;
                chi2_[sq + q_] = 1;
            }
        }
        nonsquare_ = 2;
        while (chi(nonsquare_) != -1) ++nonsquare_;
    }

    u64 modulus() const { return q_; }
    u64 size() const { return q_; }
    u64 characteristic() const { return q_; }

    Element element(u64 index) const { return index % q_; }
    Element from_base(u64 c) const { return c % q_; }
    Element reduce(i64 c) const {
        i64 r = c % static_cast<i64>(q_);
        return static_cast<u64>(r < 0 ? r + static_cast<i64>(q_) : r);
    }
    Element zero() const { return 0; }
    Element one() const { return 1; }

    Element add(Element a, Element b) const {
        u64 s = a + b;
        return s >= q_ ? s - q_ : s;
    }
    Element sub(Element a, Element b) const { return a >= b ? a - b : a + q_ - b; }
    Element neg(Element a) const { return a == 0 ? 0 : q_ - a; }
    Element mul(Element a, Element b) const { return a * b % q_; }
    Element pow(Element a, u64 e) const { return powmod(a, e, q_); }
    Element inv(Element a) const {
        if (a % q_ == 0) throw std::domain_error("PrimeField: inverse of zero");
        return powmod(a, q_ - 2, q_);
    }
    bool is_zero(Element a) const { return a == 0; }

    /// Legendre symbol (a | q) for reduced a.
    int chi(Element a) const {
        if (!chi2_.empty()) return chi2_[a];
        if (a == 0) return 0;
        return powmod(a, (q_ - 1) / 2, q_) == 1 ? 1 : -1;
    }

    /// Character table of length 2q: entry i is chi(i mod q). Empty when
    /// q exceeds the table limit.
    std::span<const std::int8_t> chi_table2() const { return chi2_; }

    /// Smallest quadratic non-residue.
    Element nonsquare() const { return nonsquare_; }

    std::optional<Element> sqrt(Element a) const { return tonelli_shanks(*this, a, nonsquare_); }

private:
    u64 q_;
    std::vector<std::int8_t> chi2_;
    Element nonsquare_ = 0;
};

static_assert(FiniteField<PrimeField>);

} // namespace optcurve

#endif // OPTCURVE_PRIME_FIELD_HPP
