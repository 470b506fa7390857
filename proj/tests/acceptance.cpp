// Acceptance checks: one PASS/FAIL line per criterion; exit status 1 if any fails.

#include <array>
#include <chrono>
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <sys/wait.h>

#include <Eigen/Dense>

#include "arm_tables.hpp"
#include "common.hpp"
#include "mabic3/bandit.hpp"
#include "mabic3/certificate.hpp"
#include "mabic3/engine.hpp"
#include "oracle.hpp"
#include "reward_cases.hpp"

using namespace mabic3;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int id, const std::string& name, bool ok, const std::string& detail) {
    std::cout << (ok ? "PASS" : "FAIL") << " [" << id << "] " << name << ": " << detail << std::endl;
    if (!ok) ++failures;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

const Mode kModes[] = {Mode::Standard, Mode::CtgDown, Mode::Dynamic, Mode::Mab};

void verdicts_and_certificates() {
    const auto t0 = Clock::now();
    std::size_t instances = 0, runs = 0, agree = 0, certified = 0, verdicts = 0;
    std::string first_error;
    for (const char* group : {"corpus", "guarded"}) {
        for (const auto& inst : testutil::corpus(group)) {
            auto m = aiger::parse_file(inst.path.string());
            if (m.latches.size() > 16) continue;
            auto ts = to_transition_system(m);
            const bool unsafe = oracle::bfs(m).unsafe;
            ++instances;
            for (Mode mode : kModes) {
                EngineConfig cfg;
                cfg.mode = mode;
                cfg.seed = 1;
                cfg.timeout_s = 120;
                const Verdict v = check(ts, cfg);
                ++runs;
                if (v.status == (unsafe ? Status::Unsafe : Status::Safe)) {
                    ++agree;
                } else if (first_error.empty()) {
                    first_error = inst.name + "/" + to_string(mode) + " gave " + to_string(v.status);
                }
                if (v.status == Status::Safe || v.status == Status::Unsafe) {
                    ++verdicts;
                    auto c = certify(v, ts);
                    if (c) {
                        ++certified;
                    } else if (first_error.empty()) {
                        first_error = inst.name + "/" + to_string(mode) + ": " + c.failure;
                    }
                }
            }
        }
    }
    const double secs = seconds_since(t0);
    std::ostringstream d;
    d << agree << "/" << runs << " runs on " << instances << " instances agree with BFS in " << std::fixed
      << std::setprecision(1) << secs << " s";
    if (!first_error.empty()) d << "; first problem: " << first_error;
    report(1, "verdict correctness", instances >= 30 && agree == runs && secs < 300.0, d.str());
    std::ostringstream c;
    c << certified << "/" << verdicts << " verdicts certified (3 SAT checks for safe, replay for unsafe)";
    report(2, "certificates", verdicts == runs && certified == verdicts, c.str());
}

void linucb_oracle() {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(2025);
    std::uniform_real_distribution<double> u(-1.0, 1.5);
    double max_theta = 0.0, max_score = 0.0;
    std::size_t mismatched = 0, selections = 0;
    for (int seq = 0; seq < 1000; ++seq) {
        bandit::LinUcb<7, 7> b(1.0);
        std::array<Eigen::MatrixXd, 7> A;
        std::array<Eigen::VectorXd, 7> B;
        for (std::size_t a = 0; a < 7; ++a) {
            A[a] = Eigen::MatrixXd::Identity(7, 7);
            B[a] = Eigen::VectorXd::Zero(7);
        }
        for (int t = 0; t < 25; ++t) {
            bandit::ContextVector x;
            for (auto& v : x) v = u(rng);
            x[6] = 1.0;
            const Eigen::Map<const Eigen::VectorXd> xv(x.data(), 7);
            double best = -1e300;
            std::size_t arg = 0;
            std::array<double, 7> ref{};
            for (std::size_t a = 0; a < 7; ++a) {
                const Eigen::MatrixXd inv = A[a].inverse();
                const Eigen::VectorXd th = A[a].ldlt().solve(B[a]);
                ref[a] = th.dot(xv) + std::sqrt(xv.dot(inv * xv));
                max_score = std::max(max_score, std::abs(ref[a] - b.score(a, x)));
                if (ref[a] > best) {
                    best = ref[a];
                    arg = a;
                }
            }
            const std::size_t sel = b.select(x);
            ++selections;
            if (sel != arg && std::abs(ref[sel] - ref[arg]) > 1e-9) ++mismatched;
            const double r = u(rng);
            b.update(sel, x, r);
            A[sel] += xv * xv.transpose();
            B[sel] += r * xv;
        }
        for (std::size_t a = 0; a < 7; ++a) {
            const Eigen::VectorXd th = A[a].colPivHouseholderQr().solve(B[a]);
            for (std::size_t i = 0; i < 7; ++i) {
                max_theta = std::max(max_theta, std::abs(th(static_cast<Eigen::Index>(i)) - b.arm(a).theta[i]));
            }
        }
    }
    const double secs = seconds_since(t0);
    std::ostringstream d;
    d << std::scientific << std::setprecision(2) << "max |dtheta| " << max_theta << ", max |dscore| " << max_score
      << ", " << mismatched << "/" << selections << " argmax mismatches, " << std::fixed << secs << " s";
    report(3, "LinUCB oracle", max_theta <= 1e-9 && max_score <= 1e-9 && mismatched == 0 && secs < 10.0, d.str());
}

void dynamic_arms() {
    std::size_t ok = 0, total = 0;
    const auto& arms = mab_arms();
    for (int a = 0; a <= 200; ++a) {
        ok += params_for(arms[5], a) == tables::lookup(tables::kBalanced, a);
        ok += params_for(arms[6], a) == tables::lookup(tables::kAggressive, a);
        ok += params_for(arms[4], a) == tables::lookup(tables::kConservative, a);
        total += 3;
    }
    report(4, "dynamic arms", ok == total, std::to_string(ok) + "/" + std::to_string(total) + " table entries match");
}

void reward_suite() {
    using namespace reward_cases;
    std::size_t ok = 0, n = 0;
    unsigned seen = 0;
    bool has_144 = false;
    for (const Case& c : kCases) {
        const auto r = bandit::compute_reward(c.o);
        ++n;
        seen |= r.events;
        has_144 |= std::abs(c.total - 1.44) < 1e-12;
        ok += std::abs(r.size - c.rs) <= 1e-12 && std::abs(r.push - c.rp) <= 1e-12 &&
              std::abs(r.bonus - c.rb) <= 1e-12 && std::abs(r.total - c.total) <= 1e-12 && r.events == c.events;
    }
    const unsigned all = bandit::kFrontierPush | bandit::kSizeOne | bandit::kHighPush | bandit::kIdeal |
                         bandit::kOverGeneralized;
    report(5, "reward suite", n >= 12 && ok == n && seen == all && has_144,
           std::to_string(ok) + "/" + std::to_string(n) + " cases within 1e-12, " +
               std::to_string(bandit::event_tags(seen).size()) + "/5 events exercised");
}

struct CliRun {
    int code;
    std::string out;
};

CliRun cli(const std::string& args) {
    FILE* p = popen((std::string(MABIC3_CLI) + " " + args + " 2>/dev/null").c_str(), "r");
    std::string out;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
    const int st = pclose(p);
    return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

void determinism() {
    const auto dir = testutil::temp_dir("acceptance-det");
    std::size_t identical = 0, total = 0;
    const std::vector<std::pair<std::string, std::uint64_t>> runs = {
        {"guarded/guarded10_v0.aag", 7}, {"guarded/guarded8_v1.aag", 3}, {"corpus/mutex_turn_safe.aag", 11},
        {"corpus/counter6_bad40_en.aag", 5}};
    for (const auto& [file, seed] : runs) {
        std::string out[2], log[2], level[2];
        for (int i = 0; i < 2; ++i) {
            const auto l = dir / ("log" + std::to_string(i) + ".jsonl");
            const auto s = dir / ("sum" + std::to_string(i) + ".json");
            std::filesystem::remove(l);
            auto r = cli("check " + (testutil::bench_dir() / file).string() + " --engine mab --seed " +
                         std::to_string(seed) + " --log " + l.string() + " --summary " + s.string());
            out[i] = std::to_string(r.code) + "\n" + r.out;
            log[i] = testutil::slurp(l);
            level[i] = nlohmann::json::parse(testutil::slurp(s)).at("level").dump();
        }
        ++total;
        identical += out[0] == out[1] && log[0] == log[1] && level[0] == level[1] && !log[0].empty();
    }
    report(6, "determinism", identical == total,
           std::to_string(identical) + "/" + std::to_string(total) +
               " seeded mab runs byte-identical in verdict, witness, JSONL and level");
}

void overhead() {
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<std::size_t> small(0, 40);
    std::uniform_real_distribution<double> rew(-0.5, 1.5);
    const std::size_t n = 100000;
    std::vector<bandit::ObligationSnapshot> snaps(n);
    std::vector<double> rewards(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto& s = snaps[i];
        s.frontier = 1 + small(rng);
        s.obligation_frame = 1 + small(rng) % s.frontier;
        s.depth = 1 + small(rng);
        s.cube_size = 1 + small(rng);
        s.queue_len = small(rng);
        s.frame_clauses = small(rng) * 3;
        rewards[i] = rew(rng);
    }
    bandit::ContextExtractor ex;
    bandit::LinUcb<bandit::kContextDim, kNumArms> b(1.0);
    std::size_t sink = 0;
    const auto t0 = Clock::now();
    for (std::size_t i = 0; i < n; ++i) {
        const auto x = ex.extract(snaps[i]);
        const std::size_t a = b.select(x);
        b.update(a, x, rewards[i]);
        sink += a;
    }
    const double us = seconds_since(t0) * 1e6 / static_cast<double>(n);
    std::ostringstream d;
    d << std::fixed << std::setprecision(3) << us << " us per extract+select+update over " << n << " calls"
      << " (checksum " << sink % 97 << ")";
    report(7, "bandit overhead", us < 10.0, d.str());
}

void directional_benefit() {
    struct Row {
        std::string name;
        Verdict s, m;
    };
    std::vector<Row> rows;
    for (const auto& inst : testutil::corpus("guarded")) {
        auto ts = to_transition_system(aiger::parse_file(inst.path.string()));
        EngineConfig sc;
        sc.mode = Mode::Standard;
        sc.timeout_s = 120;
        EngineConfig mc = sc;
        mc.mode = Mode::Mab;
        rows.push_back({inst.name, check(ts, sc), check(ts, mc)});
    }
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.name < b.name; });
    std::size_t wins = 0, gen_le = 0, lvl_le = 0;
    std::cout << "  instance        standard(gen,level)  mab(gen,level)  mab<=standard\n";
    for (const auto& r : rows) {
        const bool g = r.m.stats.gen_calls <= r.s.stats.gen_calls;
        const bool l = r.m.level <= r.s.level;
        const bool solved = r.m.status == r.s.status && (r.s.status == Status::Safe || r.s.status == Status::Unsafe);
        gen_le += g;
        lvl_le += l;
        wins += g && l && solved;
        std::cout << "  " << std::left << std::setw(15) << r.name << " " << std::setw(7) << r.s.stats.gen_calls
                  << std::setw(14) << r.s.level << std::setw(7) << r.m.stats.gen_calls << std::setw(9) << r.m.level
                  << (g && l && solved ? "yes" : "no") << "\n";
    }
    const double frac = rows.empty() ? 0.0 : static_cast<double>(wins) / static_cast<double>(rows.size());
    std::ostringstream d;
    d << wins << "/" << rows.size() << " instances with mab gen-calls and level <= standard (" << std::fixed
      << std::setprecision(0) << 100.0 * frac << "%); gen-calls <= on " << gen_le << ", level <= on " << lvl_le;
    report(8, "directional benefit", frac >= 0.6, d.str());
}

}  // namespace

int main() {
    verdicts_and_certificates();
    linucb_oracle();
    dynamic_arms();
    reward_suite();
    determinism();
    overhead();
    directional_benefit();
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
    return failures == 0 ? 0 : 1;
}
