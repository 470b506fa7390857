#include <sstream>

#include <gtest/gtest.h>

#include "common.hpp"
#include "mabic3/harness.hpp"

using namespace mabic3::harness;

namespace {

RunRecord rec(const std::string& inst, const std::string& mode, const std::string& verdict, double t) {
    RunRecord r;
    r.instance = inst;
    r.mode = mode;
    r.verdict = verdict;
    r.time_s = t;
    return r;
}

}  // namespace

TEST(Par2, MixedSolvedAndTimeout) {
    auto s = compute_par2({rec("a", "mab", "safe", 10), rec("b", "mab", "unsafe", 100), rec("c", "mab", "timeout", 3600)},
                          3600);
    EXPECT_NEAR(s.at("mab"), (10.0 + 100.0 + 7200.0) / 3.0, 1e-9);
    EXPECT_NEAR(s.at("mab"), 2436.67, 0.005);
}

TEST(Par2, Extremes) {
    EXPECT_EQ(compute_par2({rec("a", "m", "safe", 0), rec("b", "m", "unsafe", 0)}, 60).at("m"), 0.0);
    EXPECT_EQ(compute_par2({rec("a", "m", "timeout", 61), rec("b", "m", "budget", 3)}, 60).at("m"), 120.0);
    EXPECT_EQ(compute_par2({rec("a", "m", "timeout", 3600)}, 3600).at("m"), 7200.0);
    EXPECT_THROW(compute_par2({}, 60), std::invalid_argument);
}

TEST(Par2, SeparatesModes) {
    auto s = compute_par2({rec("a", "x", "safe", 4), rec("a", "y", "timeout", 9), rec("b", "x", "safe", 6)}, 5);
    EXPECT_EQ(s.size(), 2u);
    EXPECT_EQ(s.at("x"), 5.0);
    EXPECT_EQ(s.at("y"), 10.0);
}

TEST(Csv, RoundTripIsExact) {
    std::vector<RunRecord> rows;
    for (int i = 0; i < 20; ++i) {
        RunRecord r = rec("inst" + std::to_string(i) + ".aag", i % 2 ? "mab" : "standard", i % 3 ? "safe" : "timeout",
                          0.1 * i + 1.0 / 3.0);
        r.level = static_cast<std::size_t>(i);
        r.clauses = static_cast<std::uint64_t>(i * 7);
        r.gen_calls = static_cast<std::uint64_t>(i * 5);
        r.seed = 42;
        rows.push_back(r);
    }
    std::stringstream ss;
    write_csv(ss, rows);
    EXPECT_EQ(ss.str().substr(0, ss.str().find('\n')), "instance,mode,verdict,time_s,level,clauses,gen_calls,seed");
    const auto back = read_csv(ss);
    EXPECT_EQ(back, rows);
    EXPECT_EQ(compute_par2(back, 2.0), compute_par2(rows, 2.0));
}

TEST(Csv, RejectsMalformedInput) {
    std::stringstream bad_header("instance,mode\n");
    EXPECT_THROW(read_csv(bad_header), std::runtime_error);
    std::stringstream short_row(std::string(kCsvHeader) + "\na,b,c\n");
    EXPECT_THROW(read_csv(short_row), std::runtime_error);
    std::stringstream bad_num(std::string(kCsvHeader) + "\na,mab,safe,x,1,2,3,4\n");
    EXPECT_THROW(read_csv(bad_num), std::runtime_error);
}

TEST(Bench, ListsOnlyAigerFilesSorted) {
    const auto d = testutil::temp_dir("list");
    for (const char* f : {"b.aag", "a.aig", "c.txt", "d.aag"}) std::ofstream(d / f) << "x";
    std::filesystem::create_directories(d / "sub");
    std::ofstream(d / "sub" / "e.aag") << "x";
    const auto files = list_instances(d);
    ASSERT_EQ(files.size(), 3u);
    EXPECT_EQ(files[0].filename(), "a.aig");
    EXPECT_EQ(files[1].filename(), "b.aag");
    EXPECT_EQ(files[2].filename(), "d.aag");
}

TEST(Bench, RowsPerInstanceAndMode) {
    const auto d = testutil::temp_dir("bench");
    for (const char* f : {"counter3_bad7.aag", "mod4_10_safe.aag", "loop_safe.aag"}) {
        std::filesystem::copy_file(testutil::bench_dir() / "corpus" / f, d / f);
    }
    std::ofstream(d / "broken.aag") << "aag 1 0 0 1 0\n4\n";
    BenchOptions o;
    o.checker = MABIC3_CLI;
    o.modes = {"standard", "mab"};
    o.timeout_s = 30;
    o.jobs = 2;
    o.seed = 1;
    const auto rows = run_bench(d, o);
    ASSERT_EQ(rows.size(), 8u);
    std::map<std::string, std::string> verdict;
    for (const auto& r : rows) {
        verdict[r.instance + "/" + r.mode] = r.verdict;
        EXPECT_EQ(r.seed, 1u);
        EXPECT_LT(r.time_s, 32.0);
    }
    EXPECT_EQ(verdict["counter3_bad7.aag/standard"], "unsafe");
    EXPECT_EQ(verdict["counter3_bad7.aag/mab"], "unsafe");
    EXPECT_EQ(verdict["mod4_10_safe.aag/mab"], "safe");
    EXPECT_EQ(verdict["loop_safe.aag/standard"], "safe");
    // Parse failures are recorded, not fatal.
    EXPECT_EQ(verdict["broken.aag/mab"], "budget");
    EXPECT_EQ(rows[0].instance, "broken.aag");
    EXPECT_EQ(rows[0].mode, "standard");
    EXPECT_EQ(rows[1].mode, "mab");

    // Rerunning reproduces every verdict column.
    const auto again = run_bench(d, o);
    ASSERT_EQ(again.size(), rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        EXPECT_EQ(again[i].verdict, rows[i].verdict);
        EXPECT_EQ(again[i].level, rows[i].level);
        EXPECT_EQ(again[i].gen_calls, rows[i].gen_calls);
    }
}

TEST(Bench, TimeoutIsEnforced) {
    const auto d = testutil::temp_dir("timeout");
    std::filesystem::copy_file(testutil::bench_dir() / "guarded" / "guarded14_v1.aag", d / "hard.aag");
    BenchOptions o;
    o.checker = MABIC3_CLI;
    o.modes = {"mab"};
    o.timeout_s = 1;
    const auto rows = run_bench(d, o);
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_EQ(rows[0].verdict, "timeout");
    EXPECT_GE(rows[0].time_s, 0.9);
    EXPECT_LT(rows[0].time_s, 3.5);
    EXPECT_EQ(compute_par2(rows, 1).at("mab"), 2.0);
}
