#ifndef OPTCURVE_EXT_FIELD_HPP
#define OPTCURVE_EXT_FIELD_HPP

#include <array>
#include <optional>
#include <stdexcept>
#include <string>

#include "optcurve/field.hpp"
#include "optcurve/modarith.hpp"

namespace optcurve {

/// Element of F_{q^r}, r <= 3, as coefficients of 1, t, t^2 modulo the field's
/// defining polynomial. Unused high coefficients are zero.
struct ExtElement {
    std::array<u64, 3> c{0, 0, 0};
    friend bool operator==(const ExtElement&, const ExtElement&) = default;
};

/// F_{q^r} = F_q[t] / (modulus) for r in {1, 2, 3}.
///
/// The modulus is the first monic irreducible of degree r when monic
/// polynomials t^r + c_{r-1} t^{r-1} + ... + c_0 are ordered by the integer
/// c_0 + c_1 q + ... + c_{r-1} q^{r-1}. Irreducibility for r <= 3 is the
/// absence of roots in F_q. Degree 1 is accepted so counting code can treat
/// the base field uniformly.
class ExtField {
public:
    using Element = ExtElement;

    ExtField(u64 q, int degree) : q_(q), r_(degree) {
        if (degree < 1 || degree > 3) {
            throw std::invalid_argument("ExtField: degree must be 1, 2 or 3");
        }
        if (q < 3 || q >= (u64{1} << 31) || !is_prime(q)) {
            throw std::invalid_argument("ExtField: base modulus must be an odd prime below 2^31");
        }
        size_ = 1;
        for (int i = 0; i < r_; ++i) {
            if (size_ > (u64{1} << 62) / q_) throw std::invalid_argument("ExtField: q^r exceeds 2^62");
            size_ *= q_;
        }
        if (r_ > 1) find_modulus();
        nonsquare_ = find_nonsquare();
    }

    u64 base_modulus() const { return q_; }
    int degree() const { return r_; }
    u64 size() const { return size_; }
    u64 characteristic() const { return q_; }

    /// Defining polynomial coefficients c_0..c_{r-1} (the t^r coefficient is 1).
    const std::array<u64, 3>& modulus() const { return mod_; }

    /// The index-th element in base-q digit order (constant coefficient least
    /// significant).
    Element element(u64 index) const {
        Element e;
        for (int i = 0; i < r_; ++i) {
            e.c[i] = index % q_;
            index /= q_;
        }
        return e;
    }
    Element from_base(u64 a) const {
        Element e;
        e.c[0] = a % q_;
        return e;
    }
    Element zero() const { return {}; }
    Element one() const { return from_base(1); }

    bool is_reduced(const Element& a) const {
        for (int i = 0; i < 3; ++i) {
            if (a.c[i] >= q_ || (i >= r_ && a.c[i] != 0)) return false;
        }
        return true;
    }
    bool is_zero(const Element& a) const { return a.c[0] == 0 && a.c[1] == 0 && a.c[2] == 0; }

    Element add(const Element& a, const Element& b) const {
        Element e;
        for (int i = 0; i < r_; ++i) {
            u64 s = a.c[i] + b.c[i];
            e.c[i] = s >= q_ ? s - q_ : s;
        }
        return e;
    }
    Element sub(const Element& a, const Element& b) const {
        Element e;
        for (int i = 0; i < r_; ++i) e.c[i] = a.c[i] >= b.c[i] ? a.c[i] - b.c[i] : a.c[i] + q_ - b.c[i];
        return e;
    }
    Element neg(const Element& a) const { return sub(zero(), a); }

    Element mul(const Element& a, const Element& b) const {
        // Schoolbook product of degree <= 2r-2, then fold t^k for k >= r.
        std::array<u64, 5> p{0, 0, 0, 0, 0};
        for (int i = 0; i < r_; ++i) {
            if (a.c[i] == 0) continue;
            for (int j = 0; j < r_; ++j) p[i + j] = (p[i + j] + a.c[i] * b.c[j]) % q_;
        }
        for (int k = 2 * r_ - 2; k >= r_; --k) {
            u64 top = p[k];
            if (top == 0) continue;
            p[k] = 0;
            // t^r = -(m_0 + m_1 t + ... + m_{r-1} t^{r-1})
            for (int i = 0; i < r_; ++i) {
                p[k - r_ + i] = (p[k - r_ + i] + (q_ - mod_[i]) % q_ * top) % q_;
            }
        }
        Element e;
        for (int i = 0; i < r_; ++i) e.c[i] = p[i];
        return e;
    }

    Element inv(const Element& a) const {
        if (is_zero(a)) throw std::domain_error("ExtField: inverse of zero");
        return field_pow(*this, a, size_ - 2);
    }

    /// Quadratic character a^((q^r - 1)/2) by square-and-multiply.
    int chi(const Element& a) const {
        if (!is_reduced(a)) throw std::invalid_argument("ExtField::chi: element is not reduced");
        if (is_zero(a)) return 0;
        return field_pow(*this, a, (size_ - 1) / 2) == one() ? 1 : -1;
    }

    Element nonsquare() const { return nonsquare_; }

    std::optional<Element> sqrt(const Element& a) const { return tonelli_shanks(*this, a, nonsquare_); }

private:
    void find_modulus() {
        for (u64 idx = 0; idx < size_; ++idx) {
            std::array<u64, 3> cand{0, 0, 0};
            u64 rest = idx;
            for (int i = 0; i < r_; ++i) {
                cand[i] = rest % q_;
                rest /= q_;
            }
            bool has_root = false;
            for (u64 x = 0; x < q_ && !has_root; ++x) {
                // Horner on t^r + c_{r-1} t^{r-1} + ... + c_0
                u64 v = 1;
                for (int i = r_ - 1; i >= 0; --i) v = (v * x + cand[i]) % q_;
                has_root = v == 0;
            }
            if (!has_root) {
                mod_ = cand;
                return;
            }
        }
        throw std::logic_error("ExtField: no irreducible modulus found");
    }

    Element find_nonsquare() const {
        const auto one_elem = one();
        for (u64 idx = 2; idx < size_; ++idx) {
            Element e = element(idx);
            if (field_pow(*this, e, (size_ - 1) / 2) != one_elem) return e;
        }
        throw std::logic_error("ExtField: no non-residue found");
    }

    u64 q_;
    int r_;
    u64 size_ = 1;
    std::array<u64, 3> mod_{0, 0, 0};
    Element nonsquare_;
};

static_assert(FiniteField<ExtField>);

} // namespace optcurve

#endif // OPTCURVE_EXT_FIELD_HPP
