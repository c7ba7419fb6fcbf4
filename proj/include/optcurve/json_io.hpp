#ifndef OPTCURVE_JSON_IO_HPP
#define OPTCURVE_JSON_IO_HPP

#include <string>
#include <vector>

#include "json.hpp"
#include "optcurve/elliptic.hpp"
#include "optcurve/genus2.hpp"
#include "optcurve/genus3.hpp"
#include "optcurve/poly.hpp"
#include "optcurve/search.hpp"
#include "optcurve/zeta.hpp"

namespace optcurve {

using Json = nlohmann::ordered_json;

/// Coefficients alpha_0..alpha_{n-1}, zero-padded.
inline Json coeff_array(const Poly& p, int n) {
    Json a = Json::array();
    for (int i = 0; i < n; ++i) a.push_back(p.coeff(i));
    return a;
}

inline Json to_json(const EllipticCurve& e) { return Json{{"a", e.a}, {"b", e.b}}; }

inline std::string curve_equation(const EllipticCurve& e) {
    return "y^2=" + poly_to_string(weierstrass_cubic(e));
}

inline std::string cover_equation(const Genus3Cover& c) {
    std::string w = poly_to_string(c.u);
    if (!c.v.is_zero()) {
        std::string vy;
        if (c.v.degree() == 0) {
            vy = (c.v.coeff(0) == 1 ? "" : std::to_string(c.v.coeff(0))) + "y";
        } else {
            vy = "(" + poly_to_string(c.v) + ")y";
        }
        w = c.u.is_zero() ? vy : w + "+" + vy;
    }
    return curve_equation(c.e) + "; z^2=" + w;
}

/// Genus-3 report in the documented schema, plus status and detail.
inline Json to_json(const Genus3Report& r) {
    return Json{{"q", r.q},
                {"m", r.m},
                {"kind", std::string(to_string(r.kind))},
                {"form", r.form},
                {"E", to_json(r.cover.e)},
                {"u", coeff_array(r.cover.u, 4)},
                {"v", coeff_array(r.cover.v, 2)},
                {"count", r.count},
                {"target", r.target},
                {"branch_B", r.branch_points},
                {"genus", r.genus},
                {"pass", r.pass},
                {"status", r.status},
                {"detail", r.detail}};
}

inline Json to_json(const SearchStats& s) {
    return Json{{"candidates", s.candidates},
                {"count_matches", s.count_matches},
                {"genus_rejected", s.genus_rejected},
                {"degenerate", s.degenerate},
                {"exact_recounts", s.exact_recounts}};
}

inline Json to_json(const SearchResult& r) {
    Json hits = Json::array();
    for (const auto& h : r.hits) {
        Json j = to_json(h.report);
        j["index"] = h.index;
        hits.push_back(std::move(j));
    }
    return Json{{"q", r.field.q},
                {"m", r.field.m},
                {"kind", std::string(to_string(r.kind))},
                {"E", to_json(r.e)},
                {"forms", r.forms},
                {"blocks_total", r.blocks_total},
                {"start_block", r.start_block},
                {"next_block", r.next_block},
                {"space_exhausted", r.space_exhausted},
                {"budget_exhausted", r.budget_exhausted},
                {"stats", to_json(r.stats)},
                {"hits", std::move(hits)}};
}

inline Json to_json(const LPolynomial& L) { return Json{{"q", L.q}, {"g", L.g}, {"coeffs", L.coeffs}}; }

} // namespace optcurve

#endif // OPTCURVE_JSON_IO_HPP
