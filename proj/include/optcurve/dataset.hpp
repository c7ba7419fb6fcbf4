#ifndef OPTCURVE_DATASET_HPP
#define OPTCURVE_DATASET_HPP

#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "optcurve/disc19.hpp"
#include "optcurve/modarith.hpp"

namespace optcurve {

/// The published example tables, one row per curve, as printed. The
/// normalization column records any substitution the auditor must apply
/// before verifying ("Y=2y": the base curve is printed as 4y^2 = f(x)).
inline constexpr std::string_view kPublishedTablesCsv = R"csv(table,q,role,payload,normalization
elliptic,47,maximal,y^2=x^3+x+38,
elliptic,47,minimal,y^2=x^3+32x+27,
elliptic,61,maximal,y^2=x^3+6x+29,
elliptic,61,minimal,y^2=x^3+32x+57,
elliptic,137,maximal,y^2=x^3+x+36,
elliptic,137,minimal,y^2=x^3+61x+47,
elliptic,277,maximal,y^2=x^3+2x+61,
elliptic,277,minimal,y^2=x^3+61x+47,
elliptic,311,maximal,y^2=x^3+x+50,
elliptic,311,minimal,y^2=x^3+18x+308,
elliptic,347,maximal,y^2=x^3+2x+96,
elliptic,347,minimal,y^2=x^3+174x+12,
elliptic,467,maximal,y^2=x^3+2x+361,
elliptic,467,minimal,y^2=x^3+234x+337,
elliptic,557,maximal,y^2=x^3+3x+132,
elliptic,557,minimal,y^2=x^3+140x+295,
elliptic,761,maximal,y^2=x^3+x+82,
elliptic,761,minimal,y^2=x^3+592x+454,
elliptic,997,maximal,y^2=x^3+6x+493,
elliptic,997,minimal,y^2=x^3+500x+934,
genus2,47,maximal,y^2=(x^3+x+38)(x+30); z^2=x^6+4x^4+22x^2+33,
genus2,61,maximal,y^2=(x^3+6x+29)(x+2); z^2=x^6+55x^4+18x^2+9,
genus2,137,maximal,y^2=(x^3+x+36)(x+18); z^2=x^6+83x^4+14x^2+77,
genus2,277,maximal,y^2=(x^3+2x+61)(2x+80); z^2=104x^6+247x^4+185x^2+245,
genus2,311,maximal,y^2=(x^3+x+50)(x+134); z^2=x^6+220x^4+66x^2+19,
genus2,347,maximal,y^2=(x^3+2x+96)(x+166); z^2=x^6+196x^4+84x^2+316,
genus2,467,maximal,y^2=(x^3+2x+361)(x+47); z^2=x^6+326x^4+91x^2+118,
genus2,557,maximal,y^2=(x^3+3x+132)(2x+266); z^2=209x^6+318x^4+356x^2+421,
genus2,761,maximal,y^2=(x^3+3x+132)(x+257); z^2=x^6+751x^4+288x^2+98,
genus2,997,maximal,y^2=(x^3+3x+132)(x+760); z^2=x^6+711x^4+20x^2+30,
genus3,47,maximal,y^2=x^3+x+38; z^2=10x^2+46x+39+y,
genus3,61,maximal,y^2=x^3+6x+29; z^2=x^2+54x+38+3y,
genus3,137,maximal,y^2=x^3+x+36; z^2=3x^2+95x+92+10y,
genus3,277,maximal,y^2=x^3+2x+61; z^2=x^2+33x+212+5y,
genus3,311,maximal,y^2=x^3+18x+308; z^2=11x^2+222x+32+65y,
genus3,347,minimal,y^2=x^3+174x+12; z^2=2x^2+310x+219+94y,
genus3,467,maximal,y^2=x^3+2x+361; z^2=2x^2+381x+242+159y,
genus3,557,minimal,4y^2=x^3+2x+151; z^2=439+322x+5x^2+122y,Y=2y
genus3,761,maximal,y^2=x^3+4x+105; z^2=406+131x+3x^2+247y,
genus3,997,minimal,y^2=x^3+500x+934; z^2=x^2+336x+564+196y,
)csv";

struct PaperTableRow {
    std::string table;  ///< elliptic, genus2 or genus3
    u64 q = 0;
    Kind role = Kind::maximal;
    std::string payload;
    std::string normalization;
};

/// Rows that fail to parse are returned with a message instead of aborting
/// the whole load.
struct DatasetRowResult {
    std::size_t line = 0;
    std::string raw;
    std::optional<PaperTableRow> row;
    std::string error;
};

inline std::vector<DatasetRowResult> parse_dataset(std::string_view csv) {
    std::vector<DatasetRowResult> out;
    std::istringstream in{std::string(csv)};
    std::string line;
    std::size_t lineno = 0;
    bool header = true;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (header) {
            header = false;
            if (line != "table,q,role,payload,normalization") {
                throw std::invalid_argument("dataset: unexpected header '" + line + "'");
            }
            continue;
        }
        DatasetRowResult res;
        res.line = lineno;
        res.raw = line;
        std::vector<std::string> cols;
        std::string cur;
        for (char c : line) {
            if (c == ',') {
                cols.push_back(cur);
                cur.clear();
            } else {
                cur += c;
            }
        }
        cols.push_back(cur);
        try {
            if (cols.size() != 5) throw std::invalid_argument("expected 5 columns, got " + std::to_string(cols.size()));
            PaperTableRow row;
            row.table = cols[0];
            if (row.table != "elliptic" && row.table != "genus2" && row.table != "genus3") {
                throw std::invalid_argument("unknown table '" + row.table + "'");
            }
            row.q = std::stoull(cols[1]);
            make_disc19_field(row.q);
            row.role = parse_kind(cols[2]);
            row.payload = cols[3];
            row.normalization = cols[4];
            res.row = std::move(row);
        } catch (const std::exception& ex) {
            res.error = ex.what();
        }
        out.push_back(std::move(res));
    }
    return out;
}

} // namespace optcurve

#endif // OPTCURVE_DATASET_HPP
