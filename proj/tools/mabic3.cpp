// mabic3: IC3 model checker with bandit-guided generalization.
//
//   mabic3 check <file> [--engine mab] [--seed 0] [--timeout 3600] ...
//   mabic3 bench <dir> --engines standard,mab --timeout 60 --jobs 4 --out r.csv
//   mabic3 par2 <csv> --limit 60

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mabic3/aiger.hpp"
#include "mabic3/certificate.hpp"
#include "mabic3/engine.hpp"
#include "mabic3/harness.hpp"
#include "mabic3/transition_system.hpp"

namespace {

int exit_code(mabic3::Status s) {
    switch (s) {
        case mabic3::Status::Safe: return 10;
        case mabic3::Status::Unsafe: return 20;
        default: return 0;
    }
}

struct CheckArgs {
    std::string file;
    std::string engine = "mab";
    std::uint64_t seed = 0;
    double timeout = 3600.0;
    std::size_t property = 0;
    std::string witness, certificate, log, dump_cnf, summary;
    bool no_certify = false;
};

int run_check(const CheckArgs& a) {
    auto mode = mabic3::parse_mode(a.engine);
    if (!mode) {
        std::cerr << "unknown engine '" << a.engine << "'\n";
        return 2;
    }
    mabic3::TransitionSystem ts;
    try {
        ts = mabic3::to_transition_system(mabic3::aiger::parse_file(a.file), a.property);
    } catch (const std::exception& e) {
        std::cerr << a.file << ": " << e.what() << '\n';
        return 2;
    }

    std::ofstream log;
    mabic3::EngineConfig cfg;
    cfg.mode = *mode;
    cfg.seed = a.seed;
    cfg.timeout_s = a.timeout;
    cfg.dump_cnf_dir = a.dump_cnf;
    if (!a.log.empty()) {
        log.open(a.log, std::ios::app);
        if (!log) {
            std::cerr << "cannot open " << a.log << '\n';
            return 2;
        }
        cfg.log = &log;
    }

    const auto t0 = std::chrono::steady_clock::now();
    const mabic3::Verdict v = mabic3::check(ts, cfg);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    if (!a.no_certify && (v.status == mabic3::Status::Safe || v.status == mabic3::Status::Unsafe)) {
        if (auto c = mabic3::certify(v, ts); !c) {
            std::cerr << "certification failed: " << c.failure << '\n';
            return 1;
        }
    }

    mabic3::write_witness(std::cout, v, a.property);
    if (!a.witness.empty()) {
        std::ofstream w(a.witness);
        mabic3::write_witness(w, v, a.property);
    }
    if (!a.certificate.empty() && v.status == mabic3::Status::Safe) {
        std::ofstream c(a.certificate);
        mabic3::write_certificate(c, v.invariant, ts.latches.size());
    }
    if (!a.summary.empty()) {
        nlohmann::ordered_json s;
        s["verdict"] = mabic3::to_string(v.status);
        s["level"] = v.level;
        s["clauses"] = v.stats.clauses_learned;
        s["gen_calls"] = v.stats.gen_calls;
        s["sat_calls"] = v.stats.sat_calls;
        s["time_s"] = secs;
        std::ofstream out(a.summary);
        out << s.dump() << '\n';
    }
    std::cerr << "verdict " << mabic3::to_string(v.status) << " level " << v.level << " gen_calls "
              << v.stats.gen_calls << " clauses " << v.stats.clauses_learned << " time " << secs << "s\n";
    return exit_code(v.status);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"IC3 hardware model checker with bandit-guided generalization"};
    app.require_subcommand(1);

    CheckArgs ca;
    auto* check = app.add_subcommand("check", "check one AIGER file");
    check->add_option("file", ca.file, "AIGER file (aag or aig)")->required();
    check->add_option("--engine", ca.engine, "standard | ctgdown | dynamic | mab")->capture_default_str();
    check->add_option("--seed", ca.seed, "solver seed")->capture_default_str();
    check->add_option("--timeout", ca.timeout, "wall-clock limit in seconds")->capture_default_str();
    check->add_option("--property", ca.property, "index of the bad property")->capture_default_str();
    check->add_option("--witness", ca.witness, "write the AIGER witness here");
    check->add_option("--certificate", ca.certificate, "write the invariant here (safe only)");
    check->add_option("--log", ca.log, "append one JSON line per generalization");
    check->add_option("--dump-cnf", ca.dump_cnf, "write every SAT query as DIMACS into this directory");
    check->add_option("--summary", ca.summary, "write a JSON run summary");
    check->add_flag("--no-certify", ca.no_certify, "skip the independent verdict check");

    std::string bench_dir, engines = "standard,ctgdown,dynamic,mab", out;
    mabic3::harness::BenchOptions bo;
    auto* bench = app.add_subcommand("bench", "run a directory of instances");
    bench->add_option("dir", bench_dir, "directory of AIGER files")->required();
    bench->add_option("--engines", engines, "comma-separated modes")->capture_default_str();
    bench->add_option("--timeout", bo.timeout_s, "per-run limit in seconds")->capture_default_str();
    bench->add_option("--jobs", bo.jobs, "parallel processes")->capture_default_str();
    bench->add_option("--seed", bo.seed, "seed passed to every run")->capture_default_str();
    bench->add_option("--out", out, "results CSV (default: stdout)");

    std::string csv;
    double limit = 3600.0;
    auto* par2 = app.add_subcommand("par2", "PAR-2 score per mode from a results CSV");
    par2->add_option("csv", csv, "results CSV")->required();
    par2->add_option("--limit", limit, "time limit in seconds")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*check) return run_check(ca);

        if (*bench) {
            bo.modes = split(engines, ',');
            for (const auto& m : bo.modes) {
                if (!mabic3::parse_mode(m)) {
                    std::cerr << "unknown engine '" << m << "'\n";
                    return 2;
                }
            }
            bo.checker = std::filesystem::read_symlink("/proc/self/exe");
            const auto rows = mabic3::harness::run_bench(bench_dir, bo);
            if (out.empty()) {
                mabic3::harness::write_csv(std::cout, rows);
            } else {
                std::ofstream f(out);
                mabic3::harness::write_csv(f, rows);
            }
            if (!rows.empty()) {
                for (const auto& [mode, score] : mabic3::harness::compute_par2(rows, bo.timeout_s)) {
                    std::cerr << "par2 " << mode << ' ' << mabic3::harness::format_double(score) << '\n';
                }
            }
            return 0;
        }

        if (*par2) {
            std::ifstream f(csv);
            if (!f) {
                std::cerr << "cannot open " << csv << '\n';
                return 2;
            }
            const auto rows = mabic3::harness::read_csv(f);
            std::cout << "mode,par2\n";
            for (const auto& [mode, score] : mabic3::harness::compute_par2(rows, limit)) {
                std::cout << mode << ',' << mabic3::harness::format_double(score) << '\n';
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
