#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "optcurve/audit.hpp"
#include "optcurve/cli.hpp"
#include "optcurve/store.hpp"
#include "optcurve/table.hpp"

using namespace optcurve;

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun run(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::filesystem::path temp_path(const std::string& name) {
    auto p = std::filesystem::temp_directory_path() / ("optcurve_test_" + name);
    std::filesystem::remove(p);
    return p;
}

struct GoldenCase {
    std::string name;
    std::vector<std::string> args;
    int code;
};

void PrintTo(const GoldenCase& c, std::ostream* os) { *os << c.name; }

} // namespace

// ---------------------------------------------------------------- golden files

class CliGolden : public ::testing::TestWithParam<GoldenCase> {};

TEST_P(CliGolden, MatchesGoldenOutputAndExitCode) {
    const auto& c = GetParam();
    const CliRun r = run(c.args);
    EXPECT_EQ(r.code, c.code) << r.err;
    const auto path = std::filesystem::path(OPTCURVE_GOLDEN_DIR) / (c.name + ".out");
    if (std::getenv("OPTCURVE_UPDATE_GOLDEN") != nullptr) {
        std::ofstream(path) << r.out;
        GTEST_SKIP() << "golden file rewritten: " << path;
    }
    ASSERT_TRUE(std::filesystem::exists(path)) << path;
    EXPECT_EQ(r.out, read_file(path));
}

INSTANTIATE_TEST_SUITE_P(
    Commands, CliGolden,
    ::testing::Values(
        GoldenCase{"fields_csv", {"fields", "--max", "1000", "--format", "csv"}, 0},
        GoldenCase{"fields_text", {"fields", "--max", "100"}, 0},
        GoldenCase{"fields_empty_json", {"fields", "--max", "46", "--format", "json"}, 0},
        GoldenCase{"elliptic_verify_47", {"elliptic", "verify", "--q", "47", "--a", "1", "--b", "38", "--expect", "max", "--format", "json"}, 0},
        GoldenCase{"elliptic_verify_47_corrupt", {"elliptic", "verify", "--q", "47", "--a", "1", "--b", "39", "--expect", "max", "--format", "json"}, 1},
        GoldenCase{"elliptic_find_47_min", {"elliptic", "find", "--q", "47", "--kind", "min"}, 0},
        GoldenCase{"elliptic_table_137", {"elliptic", "find", "--max", "137"}, 0},
        GoldenCase{"elliptic_table_137_csv", {"--format", "csv", "elliptic", "find", "--max", "137"}, 0},
        GoldenCase{"genus2_construct_47", {"genus2", "construct", "--q", "47", "--a", "1", "--b", "38", "--alpha", "1", "--beta", "30", "--format", "json"}, 0},
        GoldenCase{"genus2_construct_277", {"genus2", "construct", "--q", "277", "--a", "2", "--b", "61", "--alpha", "2", "--beta", "80"}, 0},
        GoldenCase{"genus2_verify_47", {"genus2", "verify", "--q", "47", "--sextic", "x^6+4x^4+22x^2+33", "--expect", "max"}, 0},
        GoldenCase{"genus2_verify_47_corrupt", {"genus2", "verify", "--q", "47", "--sextic", "x^6+4x^4+22x^2+34", "--expect", "max"}, 1},
        GoldenCase{"genus2_verify_recipe_61", {"genus2", "verify", "--q", "61", "--a", "6", "--b", "29", "--alpha", "1", "--beta", "2", "--expect", "max"}, 0},
        GoldenCase{"genus2_find_47", {"genus2", "find", "--q", "47", "--kind", "max", "--format", "json"}, 0},
        GoldenCase{"genus3_verify_47_found", {"genus3", "verify", "--q", "47", "--a", "1", "--b", "38", "--u", "23,19,44", "--v", "1", "--expect", "max", "--format", "json"}, 0},
        GoldenCase{"genus3_verify_47_paper", {"genus3", "verify", "--q", "47", "--a", "1", "--b", "38", "--w", "10x^2+46x+39+y", "--expect", "max", "--format", "json"}, 1},
        GoldenCase{"genus3_verify_347_paper", {"genus3", "verify", "--q", "347", "--a", "174", "--b", "12", "--w", "2x^2+310x+219+94y", "--expect", "min"}, 0},
        GoldenCase{"genus3_verify_random", {"genus3", "verify", "--q", "61", "--a", "6", "--b", "29", "--w", "x^3+5x+7+(2x+3)y", "--expect", "max"}, 2},
        GoldenCase{"genus3_verify_random_coeffs", {"genus3", "verify", "--q", "61", "--a", "6", "--b", "29", "--u", "7,5,0,1", "--v", "3,2", "--expect", "max"}, 1},
        GoldenCase{"genus3_find_47", {"genus3", "find", "--q", "47", "--kind", "max", "--format", "json"}, 0},
        GoldenCase{"genus3_find_47_text", {"genus3", "find", "--q", "47", "--kind", "max"}, 0},
        GoldenCase{"genus3_find_47_min_budget", {"genus3", "find", "--q", "47", "--kind", "min", "--block-limit", "1000", "--format", "json"}, 0},
        GoldenCase{"genus3_table_47", {"genus3", "find", "--max", "47"}, 0},
        GoldenCase{"genus3_table_47_json", {"genus3", "find", "--max", "47", "--format", "json"}, 0},
        GoldenCase{"genus3_exhaust_47_form1", {"genus3", "exhaust", "--q", "47", "--forms", "1"}, 0},
        GoldenCase{"zeta_g1_47", {"zeta", "--q", "47", "--genus", "1", "--curve", "{\"a\":1,\"b\":38}", "--max-r", "3", "--format", "json"}, 0},
        GoldenCase{"zeta_g2_47", {"zeta", "--q", "47", "--genus", "2", "--curve", "{\"sextic\":\"x^6+4x^4+22x^2+33\"}"}, 0},
        GoldenCase{"zeta_g3_47", {"zeta", "--q", "47", "--genus", "3", "--curve", "{\"E\":{\"a\":1,\"b\":38},\"u\":[23,19,44],\"v\":[1]}", "--format", "json"}, 0},
        GoldenCase{"audit_full", {"audit"}, 1},
        GoldenCase{"audit_full_csv", {"audit", "--format", "csv"}, 1},
        GoldenCase{"audit_elliptic_47_json", {"audit", "--table", "elliptic", "--q", "47", "--format", "json"}, 0},
        GoldenCase{"audit_genus3_json", {"audit", "--table", "genus3", "--format", "json"}, 1}),
    [](const ::testing::TestParamInfo<GoldenCase>& info) { return info.param.name; });

// ------------------------------------------------------------ exit-code contract

TEST(CliExitCodes, InvalidInputIsTwoWithUsage) {
    const std::vector<std::vector<std::string>> cases{
        {},
        {"fields"},
        {"fields", "--max", "10", "--bogus"},
        {"--format", "xml", "fields", "--max", "10"},
        {"elliptic"},
        {"elliptic", "verify", "--q", "47"},
        {"elliptic", "find", "--q", "47", "--max", "100"},
        {"genus2", "bogus"},
        {"genus3", "find", "--q", "47", "--threads", "0"},
        {"zeta", "--q", "47", "--genus", "4", "--curve", "{}"},
        {"audit", "--table", "genus4"},
    };
    for (const auto& args : cases) {
        const CliRun r = run(args);
        EXPECT_EQ(r.code, 2) << testing::PrintToString(args);
        EXPECT_TRUE(r.out.empty());
        EXPECT_NE(r.err.find("Usage"), std::string::npos) << testing::PrintToString(args);
    }
}

TEST(CliExitCodes, InvalidValuesAreTwo) {
    const std::vector<std::vector<std::string>> cases{
        {"elliptic", "verify", "--q", "48", "--a", "1", "--b", "1"},
        {"elliptic", "verify", "--q", "47", "--a", "0", "--b", "0"},
        {"elliptic", "find", "--q", "47", "--kind", "biggest"},
        {"elliptic", "find", "--q", "47"},
        {"genus2", "construct", "--q", "47", "--a", "1", "--b", "38", "--alpha", "0", "--beta", "3"},
        {"genus2", "verify", "--q", "47", "--sextic", "x^6+", "--expect", "max"},
        {"genus3", "find", "--q", "47", "--kind", "max", "--forms", "4"},
        {"genus3", "find", "--q", "47", "--forms", "1", "--store", "/nonexistent/dir/s.jsonl"},
        {"genus3", "verify", "--q", "47", "--a", "1", "--b", "38", "--expect", "max"},
        {"genus3", "verify", "--q", "47", "--a", "1", "--b", "38", "--w", "x^4+y", "--expect", "max"},
        {"zeta", "--q", "47", "--genus", "1", "--curve", "not json"},
        {"zeta", "--q", "49", "--genus", "1", "--curve", "{\"a\":1,\"b\":1}"},
        {"zeta", "--q", "47", "--genus", "3", "--curve", "{\"a\":1,\"b\":38,\"u\":[1]}", "--max-r", "2"},
    };
    for (const auto& args : cases) {
        const CliRun r = run(args);
        EXPECT_EQ(r.code, 2) << testing::PrintToString(args) << "\n" << r.err;
        EXPECT_TRUE(r.out.empty());
        EXPECT_FALSE(r.err.empty());
    }
}

TEST(CliExitCodes, HelpIsZero) {
    const CliRun r = run({"--help"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("genus3"), std::string::npos);
}

TEST(Cli, OutFileReceivesResult) {
    const auto p = temp_path("out.csv");
    const CliRun r = run({"fields", "--max", "100", "--format", "csv", "--out", p.string()});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
    EXPECT_EQ(read_file(p), "q,m\n47,13\n61,15\n");
    std::filesystem::remove(p);
}

TEST(Cli, ThreadsEnvironmentDefault) {
    ::setenv("OPTCURVE_THREADS", "3", 1);
    const CliRun a = run({"genus3", "find", "--q", "47", "--kind", "max", "--format", "json"});
    ::unsetenv("OPTCURVE_THREADS");
    const CliRun b = run({"genus3", "find", "--q", "47", "--kind", "max", "--format", "json", "--threads", "1"});
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
}

// ------------------------------------------------------------------- the store

TEST(Store, ResumedSearchMatchesSingleRunAndIsIdempotent) {
    const auto p = temp_path("store.jsonl");
    const std::vector<std::string> base{"genus3", "find", "--q", "47", "--kind", "max", "--forms", "1,2", "--format", "json", "--store", p.string()};
    auto with = [&](std::vector<std::string> extra) {
        auto a = base;
        a.insert(a.end(), extra.begin(), extra.end());
        return run(a);
    };
    // Three budgeted runs, then one that finishes.
    for (int i = 0; i < 3; ++i) ASSERT_EQ(with({"--block-limit", "5000"}).code, 0);
    const CliRun last = with({});
    ASSERT_EQ(last.code, 0);
    const auto j = Json::parse(last.out);
    EXPECT_TRUE(j["space_exhausted"].get<bool>());

    const CliRun single = run({"genus3", "find", "--q", "47", "--kind", "max", "--forms", "1,2", "--format", "json"});
    const auto s = Json::parse(single.out);
    EXPECT_EQ(j["hits"], s["hits"]);

    // Cursors never decrease.
    ResultStore store(p.string());
    u64 prev = 0;
    for (const auto& rec : store.records()) {
        for (const char* k : {"cmd", "params", "hit", "report", "cursor", "ts"}) EXPECT_TRUE(rec.contains(k)) << k;
        EXPECT_GE(rec["cursor"].get<u64>(), prev);
        prev = rec["cursor"].get<u64>();
    }

    // Re-running the finished search appends nothing and reports the same hits.
    const std::string before = read_file(p);
    const CliRun again = with({});
    EXPECT_EQ(again.code, 0);
    EXPECT_EQ(read_file(p), before);
    EXPECT_EQ(Json::parse(again.out)["hits"], s["hits"]);
    std::filesystem::remove(p);
}

TEST(Store, RejectsCursorRegressionAndToleratesTornTail) {
    const auto p = temp_path("store2.jsonl");
    {
        ResultStore st(p.string());
        st.append("x", Json{{"k", 1}}, Json(nullptr), Json(nullptr), 10);
        EXPECT_THROW(st.append("x", Json{{"k", 1}}, Json(nullptr), Json(nullptr), 5), std::logic_error);
        st.append("x", Json{{"k", 2}}, Json(nullptr), Json(nullptr), 5);  // other search
    }
    { std::ofstream(p, std::ios::app) << "{\"cmd\":\"x\",\"par"; }
    ResultStore re(p.string());
    EXPECT_EQ(re.records().size(), 2U);
    EXPECT_EQ(re.cursor("x", Json{{"k", 1}}), std::optional<u64>(10));
    EXPECT_EQ(re.cursor("y", Json{}), std::nullopt);
    std::filesystem::remove(p);
}

TEST(Store, ExhaustResumesFromStore) {
    const auto p = temp_path("store3.jsonl");
    const std::vector<std::string> args{"genus3", "exhaust", "--q", "47", "--forms", "1", "--store", p.string(), "--format", "json"};
    const CliRun a = run(args);
    const std::string first = read_file(p);
    const CliRun b = run(args);
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(b.code, 0);
    EXPECT_EQ(read_file(p), first);
    auto ja = Json::parse(a.out);
    auto jb = Json::parse(b.out);
    EXPECT_EQ(ja["maximal"]["hits"], jb["maximal"]["hits"]);
    EXPECT_EQ(ja["minimal"]["hits"], jb["minimal"]["hits"]);
    std::filesystem::remove(p);
}

// ------------------------------------------------------------------ the auditor

TEST(Audit, SpecExamples) {
    const std::string csv = std::string("table,q,role,payload,normalization\n") +
                            "elliptic,47,maximal,y^2=x^3+x+38,\n" +
                            "elliptic,47,maximal,y^2=x^3+x+39,\n";
    const auto rep = audit_tables(csv, AuditScope{});
    ASSERT_EQ(rep.rows.size(), 2U);
    EXPECT_EQ(rep.rows[0].status, "PASS");
    EXPECT_EQ(rep.rows[1].status, "FAIL(count)");
    EXPECT_FALSE(rep.all_pass());
}

TEST(Audit, ParseErrorsArePerRow) {
    const std::string csv = std::string("table,q,role,payload,normalization\n") +
                            "elliptic,47,maximal,y^2=x^3+x+38,\n" +
                            "elliptic,48,maximal,y^2=x^3+x+38,\n" +
                            "elliptic,47,maximal,y^3=x^3+x+38,\n" +
                            "genus3,557,minimal,4y^2=x^3+2x+151; z^2=439+322x+5x^2+122y,\n" +
                            "genus3,557,minimal,4y^2=x^3+2x+151; z^2=439+322x+5x^2+122y,Y=3y\n" +
                            "too,few\n" +
                            "elliptic,61,maximal,y^2=x^3+6x+29,\n";
    const auto rep = audit_tables(csv, AuditScope{});
    ASSERT_EQ(rep.rows.size(), 7U);
    EXPECT_EQ(rep.rows[0].status, "PASS");
    for (std::size_t i = 1; i <= 5; ++i) EXPECT_EQ(rep.rows[i].status, "ERROR(parse)") << i;
    EXPECT_EQ(rep.rows[6].status, "PASS");
    EXPECT_EQ(rep.summary().at("ERROR(parse)"), 5);
}

TEST(Audit, EveryDatasetRowAppearsOnce) {
    const auto parsed = parse_dataset(kPublishedTablesCsv);
    EXPECT_EQ(parsed.size(), 40U);
    const auto rep = audit_tables(kPublishedTablesCsv, AuditScope{});
    ASSERT_EQ(rep.rows.size(), parsed.size());
    for (std::size_t i = 0; i < parsed.size(); ++i) {
        EXPECT_EQ(rep.rows[i].line, parsed[i].line);
        EXPECT_NE(rep.rows[i].status.rfind("ERROR", 0), 0U) << rep.rows[i].payload;
    }
    int total = 0;
    for (const auto& [k, v] : rep.summary()) total += v;
    EXPECT_EQ(total, 40);
}

TEST(Audit, NormalizedRowReportsBothReadings) {
    const auto rep = audit_tables(kPublishedTablesCsv, AuditScope{"genus3", 557});
    ASSERT_EQ(rep.rows.size(), 1U);
    const auto& d = rep.rows[0].details;
    EXPECT_EQ(d["applied"], "Y=2y");
    EXPECT_EQ(d["v"][0], 61);  // 122 / 2
    EXPECT_TRUE(d.contains("literal_reading"));
    EXPECT_EQ(d["target"], 417);
}

TEST(Audit, PaperRowsThatPass) {
    const auto rep = audit_tables(kPublishedTablesCsv, AuditScope{});
    auto status = [&](const std::string& table, u64 q) {
        for (const auto& r : rep.rows) {
            if (r.table == table && r.q == q) return r.status;
        }
        return std::string("missing");
    };
    EXPECT_EQ(rep.rows[0].status, "PASS");  // elliptic q = 47 maximal (1, 38)
    EXPECT_EQ(status("genus2", 47), "PASS");
    EXPECT_EQ(status("genus2", 61), "PASS");
    EXPECT_EQ(status("genus2", 277), "PASS");
    EXPECT_EQ(status("genus3", 347), "PASS");
}

TEST(Audit, DeterministicAcrossThreadCounts) {
    const std::string ref = to_json(audit_tables(kPublishedTablesCsv, AuditScope{}, 1)).dump();
    for (unsigned t : {4U, 8U}) EXPECT_EQ(to_json(audit_tables(kPublishedTablesCsv, AuditScope{}, t)).dump(), ref);
    EXPECT_EQ(to_json(audit_tables(kPublishedTablesCsv, AuditScope{}, 1)).dump(), ref);
}

// --------------------------------------------------------------------- tables

TEST(EmitTable, EmptyResultsGiveHeaderOnly) {
    EXPECT_EQ(emit_table("elliptic", {}, OutputFormat::csv), "q,maximal,minimal\n");
    const auto text = emit_table("elliptic", {}, OutputFormat::text);
    EXPECT_EQ(text, "elliptic\nq | Maximal | Minimal\n--+---------+--------\n");
    const auto j = Json::parse(emit_table("elliptic", {}, OutputFormat::json));
    EXPECT_TRUE(j["rows"].empty());
}

TEST(EmitTable, DashCellsCarryScope) {
    std::vector<TableRow> rows{{47, "y^2=x^3+x+38; z^2=44x^2+19x+23+y", std::nullopt, "forms {1}, exhaustive", "forms {1}, budgeted"}};
    const auto text = emit_table("genus3", rows, OutputFormat::text);
    EXPECT_NE(text.find("| -"), std::string::npos);
    const auto j = Json::parse(emit_table("genus3", rows, OutputFormat::json));
    EXPECT_TRUE(j["rows"][0]["minimal"].is_null());
    EXPECT_EQ(j["rows"][0]["minimal_scope"], "forms {1}, budgeted");
    EXPECT_EQ(emit_table("genus3", rows, OutputFormat::csv),
              "q,maximal,minimal\n47,y^2=x^3+x+38; z^2=44x^2+19x+23+y,-\n");
}
