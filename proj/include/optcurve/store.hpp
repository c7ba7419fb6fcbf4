#ifndef OPTCURVE_STORE_HPP
#define OPTCURVE_STORE_HPP

#include <chrono>
#include <fstream>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "optcurve/json_io.hpp"

namespace optcurve {

/// Append-only line-delimited JSON log of search results.
///
/// Each record is {cmd, params, hit, report, cursor, ts}. A search appends
/// one record per new hit and one closing record with hit = null carrying the
/// cursor (next unscanned block) and the run summary. Records for the same
/// (cmd, params) are a resumable history; cursors never decrease.
class ResultStore {
public:
    explicit ResultStore(std::string path) : path_(std::move(path)) { load(); }

    const std::vector<Json>& records() const { return records_; }

    /// Latest cursor recorded for this search, if any.
    std::optional<u64> cursor(const std::string& cmd, const Json& params) const {
        std::optional<u64> best;
        for (const auto& r : records_) {
            if (r.value("cmd", "") != cmd || r.value("params", Json()) != params) continue;
            const u64 c = r.value("cursor", u64{0});
            if (!best || c > *best) best = c;
        }
        return best;
    }

    /// Stored hits for this search in append order. Hits re-found after an
    /// interrupted run (same "index") are reported once.
    std::vector<Json> hits(const std::string& cmd, const Json& params) const {
        std::vector<Json> out;
        std::set<std::string> seen;
        for (const auto& r : records_) {
            if (r.value("cmd", "") != cmd || r.value("params", Json()) != params || r["hit"].is_null()) continue;
            const std::string key = r["hit"].contains("index") ? r["hit"]["index"].dump() : r["hit"].dump();
            if (seen.insert(key).second) out.push_back(r["hit"]);
        }
        return out;
    }

    void append(const std::string& cmd, const Json& params, const Json& hit, const Json& report, u64 cursor) {
        const auto prev = this->cursor(cmd, params);
        if (prev && cursor < *prev) throw std::logic_error("ResultStore: cursor moved backwards");
        Json rec{{"cmd", cmd}, {"params", params}, {"hit", hit}, {"report", report}, {"cursor", cursor}, {"ts", now()}};
        std::ofstream out(path_, std::ios::app);
        if (!out) throw std::runtime_error("ResultStore: cannot open " + path_ + " for appending");
        out << rec.dump() << '\n';
        out.flush();
        if (!out) throw std::runtime_error("ResultStore: write to " + path_ + " failed");
        records_.push_back(std::move(rec));
    }

private:
    static i64 now() {
        using namespace std::chrono;
        return duration_cast<seconds>(system_clock::now().time_since_epoch()).count();
    }

    void load() {
        std::ifstream in(path_);
        if (!in) return;
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty()) continue;
            try {
                records_.push_back(Json::parse(line));
            } catch (const Json::parse_error&) {
                // A torn final line from an interrupted write is tolerated;
                // anything earlier is corruption.
                if (in.peek() != std::char_traits<char>::eof()) {
                    throw std::runtime_error("ResultStore: malformed record at " + path_ + ":" + std::to_string(lineno));
                }
            }
        }
    }

    std::string path_;
    std::vector<Json> records_;
};

} // namespace optcurve

#endif // OPTCURVE_STORE_HPP
