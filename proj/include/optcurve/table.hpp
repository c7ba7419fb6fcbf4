#ifndef OPTCURVE_TABLE_HPP
#define OPTCURVE_TABLE_HPP

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "optcurve/json_io.hpp"

namespace optcurve {

/// One q of a maximal/minimal results table. An empty cell means the declared
/// search scope found nothing; the scope string says what was searched.
struct TableRow {
    u64 q = 0;
    std::optional<std::string> maximal;
    std::optional<std::string> minimal;
    std::string maximal_scope;
    std::string minimal_scope;
};

enum class OutputFormat { text, json, csv };

inline OutputFormat parse_format(const std::string& s) {
    if (s == "text") return OutputFormat::text;
    if (s == "json") return OutputFormat::json;
    if (s == "csv") return OutputFormat::csv;
    throw std::invalid_argument("unknown format '" + s + "'");
}

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

inline std::string emit_table(const std::string& title, const std::vector<TableRow>& rows, OutputFormat fmt) {
    std::ostringstream out;
    if (fmt == OutputFormat::json) {
        Json j = Json::array();
        for (const auto& r : rows) {
            j.push_back(Json{{"q", r.q},
                             {"maximal", r.maximal ? Json(*r.maximal) : Json(nullptr)},
                             {"minimal", r.minimal ? Json(*r.minimal) : Json(nullptr)},
                             {"maximal_scope", r.maximal_scope},
                             {"minimal_scope", r.minimal_scope}});
        }
        out << Json{{"table", title}, {"rows", std::move(j)}}.dump(2) << '\n';
        return out.str();
    }
    if (fmt == OutputFormat::csv) {
        out << "q,maximal,minimal\n";
        for (const auto& r : rows) {
            out << r.q << ',' << csv_field(r.maximal.value_or("-")) << ',' << csv_field(r.minimal.value_or("-")) << '\n';
        }
        return out.str();
    }
    std::size_t wq = 1;
    std::size_t wmax = 7;
    std::size_t wmin = 7;
    for (const auto& r : rows) {
        wq = std::max(wq, std::to_string(r.q).size());
        wmax = std::max(wmax, r.maximal.value_or("-").size());
        wmin = std::max(wmin, r.minimal.value_or("-").size());
    }
    auto pad = [](const std::string& s, std::size_t w) { return s + std::string(w - s.size(), ' '); };
    out << title << '\n';
    out << pad("q", wq) << " | " << pad("Maximal", wmax) << " | " << "Minimal" << '\n';
    out << std::string(wq, '-') << "-+-" << std::string(wmax, '-') << "-+-" << std::string(wmin, '-') << '\n';
    for (const auto& r : rows) {
        out << pad(std::to_string(r.q), wq) << " | " << pad(r.maximal.value_or("-"), wmax) << " | "
            << r.minimal.value_or("-") << '\n';
    }
    return out.str();
}

} // namespace optcurve

#endif // OPTCURVE_TABLE_HPP
