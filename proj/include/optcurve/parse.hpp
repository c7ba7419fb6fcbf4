#ifndef OPTCURVE_PARSE_HPP
#define OPTCURVE_PARSE_HPP

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "optcurve/poly.hpp"
#include "optcurve/prime_field.hpp"

namespace optcurve {

class ParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// u(x) + v(x) * y read from text such as "10x^2+46x+39+y" or
/// "439+322x+5x^2+122y". Coefficients are reduced modulo q; terms may repeat.
struct XYPoly {
    Poly u;
    Poly v;
};

namespace detail {

inline std::string strip_spaces(std::string_view s) {
    std::string out;
    for (char c : s) {
        if (!std::isspace(static_cast<unsigned char>(c))) out += c;
    }
    return out;
}

inline void add_term(std::vector<i64>& c, std::size_t deg, i64 value) {
    if (c.size() <= deg) c.resize(deg + 1, 0);
    c[deg] += value;
}

} // namespace detail

inline XYPoly parse_xy_poly(std::string_view text, const PrimeField& F) {
    const std::string s = detail::strip_spaces(text);
    if (s.empty()) throw ParseError("empty polynomial");
    std::vector<i64> u;
    std::vector<i64> v;
    std::size_t i = 0;
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
        } else if (i != 0) {
            throw ParseError("expected '+' or '-' at position " + std::to_string(i) + " in '" + s + "'");
        }
        i64 coef = 1;
        bool have_coef = false;
        if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            coef = 0;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
                coef = coef * 10 + (s[i] - '0');
                if (coef > (i64{1} << 40)) throw ParseError("coefficient too large in '" + s + "'");
                ++i;
            }
            have_coef = true;
        }
        if (i < s.size() && s[i] == '*') ++i;
        std::size_t xdeg = 0;
        std::size_t ydeg = 0;
        bool have_var = false;
        while (i < s.size() && (s[i] == 'x' || s[i] == 'y')) {
            const char var = s[i++];
            std::size_t e = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i]))) {
                    throw ParseError("missing exponent in '" + s + "'");
                }
                e = 0;
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) e = e * 10 + static_cast<std::size_t>(s[i++] - '0');
            }
            (var == 'x' ? xdeg : ydeg) += e;
            have_var = true;
            if (i < s.size() && s[i] == '*') ++i;
        }
        if (!have_coef && !have_var) throw ParseError("empty term in '" + s + "'");
        if (ydeg > 1) throw ParseError("only terms linear in y are supported: '" + s + "'");
        if (xdeg > 16) throw ParseError("degree too large in '" + s + "'");
        detail::add_term(ydeg == 1 ? v : u, xdeg, sign * coef);
    }
    auto to_poly = [&](const std::vector<i64>& c) {
        std::vector<u64> out(c.size());
        for (std::size_t k = 0; k < c.size(); ++k) out[k] = F.reduce(c[k]);
        return Poly(std::move(out));
    };
    return {to_poly(u), to_poly(v)};
}

inline Poly parse_x_poly(std::string_view text, const PrimeField& F) {
    auto p = parse_xy_poly(text, F);
    if (!p.v.is_zero()) throw ParseError("unexpected y term in '" + std::string(text) + "'");
    return p.u;
}

/// "lhs=rhs" split, both sides stripped.
inline std::pair<std::string, std::string> split_equation(std::string_view text) {
    const std::string s = detail::strip_spaces(text);
    const auto eq = s.find('=');
    if (eq == std::string::npos || s.find('=', eq + 1) != std::string::npos) {
        throw ParseError("expected exactly one '=' in '" + s + "'");
    }
    return {s.substr(0, eq), s.substr(eq + 1)};
}

/// Coefficient c of a left-hand side of the form "c<var>^2" (c defaults to 1).
inline i64 parse_square_lhs(const std::string& lhs, char var) {
    const std::string tail = std::string(1, var) + "^2";
    if (lhs.size() < tail.size() || lhs.compare(lhs.size() - tail.size(), tail.size(), tail) != 0) {
        throw ParseError("expected left-hand side '" + tail + "', got '" + lhs + "'");
    }
    const std::string head = lhs.substr(0, lhs.size() - tail.size());
    if (head.empty()) return 1;
    for (char c : head) {
        if (!std::isdigit(static_cast<unsigned char>(c))) throw ParseError("bad coefficient '" + head + "'");
    }
    return std::stoll(head);
}

/// Split "(A)(B)" into its parenthesized factors.
inline std::vector<std::string> split_factors(std::string_view text) {
    const std::string s = detail::strip_spaces(text);
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < s.size()) {
        if (s[i] != '(') throw ParseError("expected '(' in '" + s + "'");
        const auto close = s.find(')', i);
        if (close == std::string::npos) throw ParseError("unbalanced parenthesis in '" + s + "'");
        out.push_back(s.substr(i + 1, close - i - 1));
        i = close + 1;
    }
    return out;
}

/// Comma-separated list of small integers, e.g. "1,2,3".
inline std::vector<int> parse_int_list(std::string_view text) {
    std::vector<int> out;
    std::string cur;
    for (char c : std::string(text) + ",") {
        if (c == ',') {
            if (cur.empty()) throw ParseError("empty entry in list '" + std::string(text) + "'");
            try {
                out.push_back(std::stoi(cur));
            } catch (const std::exception&) {
                throw ParseError("bad integer '" + cur + "'");
            }
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur += c;
        }
    }
    return out;
}

} // namespace optcurve

#endif // OPTCURVE_PARSE_HPP
