#pragma once

// Benchmark harness: run records, results CSV, PAR-2 and process-isolated runs.

#include <algorithm>
#include <charconv>
#include <chrono>
#include <csignal>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <thread>
#include <vector>

#include <fcntl.h>
#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

namespace mabic3::harness {

struct RunRecord {
    std::string instance;
    std::string mode;
    std::string verdict;  // safe | unsafe | timeout | budget
    double time_s = 0.0;
    std::size_t level = 0;
    std::uint64_t clauses = 0;
    std::uint64_t gen_calls = 0;
    std::uint64_t seed = 0;

    bool solved() const { return verdict == "safe" || verdict == "unsafe"; }
    friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

inline constexpr const char* kCsvHeader = "instance,mode,verdict,time_s,level,clauses,gen_calls,seed";

// Shortest representation that parses back to the same double.
inline std::string format_double(double x) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, end);
}

inline void write_csv(std::ostream& os, const std::vector<RunRecord>& rows) {
    os << kCsvHeader << '\n';
    for (const auto& r : rows) {
        os << r.instance << ',' << r.mode << ',' << r.verdict << ',' << format_double(r.time_s) << ','
           << r.level << ',' << r.clauses << ',' << r.gen_calls << ',' << r.seed << '\n';
    }
}

inline std::vector<RunRecord> read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != kCsvHeader) throw std::runtime_error("results CSV: bad header");
    std::vector<RunRecord> rows;
    std::size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) f.push_back(cell);
        if (f.size() != 8) throw std::runtime_error("results CSV: line " + std::to_string(lineno) + " has " +
                                                    std::to_string(f.size()) + " fields");
        RunRecord r;
        r.instance = f[0];
        r.mode = f[1];
        r.verdict = f[2];
        auto num = [&](const std::string& s, auto& out) {
            auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
            if (ec != std::errc() || p != s.data() + s.size()) {
                throw std::runtime_error("results CSV: line " + std::to_string(lineno) + ": bad number '" + s + "'");
            }
        };
        num(f[3], r.time_s);
        num(f[4], r.level);
        num(f[5], r.clauses);
        num(f[6], r.gen_calls);
        num(f[7], r.seed);
        rows.push_back(std::move(r));
    }
    return rows;
}

/// Mean over instances of the runtime, with unsolved runs counted as 2 * limit.
inline std::map<std::string, double> compute_par2(const std::vector<RunRecord>& rows, double limit) {
    if (rows.empty()) throw std::invalid_argument("compute_par2: no records");
    std::map<std::string, std::pair<double, std::size_t>> acc;
    for (const auto& r : rows) {
        auto& [sum, n] = acc[r.mode];
        sum += r.solved() ? r.time_s : 2.0 * limit;
        ++n;
    }
    std::map<std::string, double> out;
    for (const auto& [mode, sn] : acc) out[mode] = sn.first / static_cast<double>(sn.second);
    return out;
}

/// AIGER files directly inside `dir`, sorted by name.
inline std::vector<std::filesystem::path> list_instances(const std::filesystem::path& dir) {
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(dir)) {
        if (!e.is_regular_file()) continue;
        const auto ext = e.path().extension();
        if (ext == ".aag" || ext == ".aig") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    return files;
}

struct BenchOptions {
    std::filesystem::path checker;  // executable accepting the `check` subcommand
    std::vector<std::string> modes;
    double timeout_s = 3600.0;
    double grace_s = 2.0;
    unsigned jobs = 1;
    std::uint64_t seed = 0;
};

namespace detail {

struct Job {
    RunRecord rec;
    std::filesystem::path file;
    std::filesystem::path summary;
    pid_t pid = -1;
    std::chrono::steady_clock::time_point start;
};

inline pid_t spawn(const BenchOptions& o, const Job& j) {
    std::vector<std::string> args = {o.checker.string(), "check", j.file.string(), "--engine", j.rec.mode,
                                     "--seed", std::to_string(o.seed), "--timeout", format_double(o.timeout_s),
                                     "--summary", j.summary.string()};
    pid_t pid = fork();
    if (pid < 0) throw std::system_error(errno, std::generic_category(), "fork");
    if (pid == 0) {
        int null = open("/dev/null", O_WRONLY);
        if (null >= 0) {
            dup2(null, STDOUT_FILENO);
            dup2(null, STDERR_FILENO);
        }
        std::vector<char*> argv;
        for (auto& a : args) argv.push_back(a.data());
        argv.push_back(nullptr);
        execv(argv[0], argv.data());
        _exit(127);
    }
    return pid;
}

inline void finish(Job& j, int status, bool killed) {
    const auto elapsed = std::chrono::steady_clock::now() - j.start;
    j.rec.time_s = std::chrono::duration<double>(elapsed).count();
    j.rec.verdict = "budget";
    if (killed) j.rec.verdict = "timeout";
    std::ifstream in(j.summary);
    const nlohmann::json s = in ? nlohmann::json::parse(in, nullptr, false) : nlohmann::json();
    if (s.is_object() && !killed && WIFEXITED(status)) {
        j.rec.verdict = s.value("verdict", "budget");
        j.rec.level = s.value("level", std::size_t{0});
        j.rec.clauses = s.value("clauses", std::uint64_t{0});
        j.rec.gen_calls = s.value("gen_calls", std::uint64_t{0});
    }
    std::error_code ec;
    std::filesystem::remove(j.summary, ec);
}

}  // namespace detail

/// Runs every (instance, mode) pair in its own process, at most `jobs` at a time.
/// Rows are ordered by instance, then by the order of `modes`.
inline std::vector<RunRecord> run_bench(const std::filesystem::path& dir, const BenchOptions& o) {
    const auto files = list_instances(dir);
    const auto tmp = std::filesystem::temp_directory_path() / ("mabic3-bench-" + std::to_string(getpid()));
    std::filesystem::create_directories(tmp);

    std::vector<detail::Job> jobs;
    for (const auto& f : files) {
        for (const auto& m : o.modes) {
            detail::Job j;
            j.file = f;
            j.rec.instance = f.filename().string();
            j.rec.mode = m;
            j.rec.seed = o.seed;
            j.summary = tmp / (std::to_string(jobs.size()) + ".json");
            jobs.push_back(std::move(j));
        }
    }

    const unsigned width = std::max(1u, o.jobs);
    const auto limit = std::chrono::duration<double>(o.timeout_s + o.grace_s);
    std::size_t next = 0;
    std::vector<std::size_t> running;
    while (next < jobs.size() || !running.empty()) {
        while (running.size() < width && next < jobs.size()) {
            jobs[next].start = std::chrono::steady_clock::now();
            jobs[next].pid = detail::spawn(o, jobs[next]);
            running.push_back(next++);
        }
        for (auto it = running.begin(); it != running.end();) {
            detail::Job& j = jobs[*it];
            int status = 0;
            pid_t r = waitpid(j.pid, &status, WNOHANG);
            if (r == j.pid) {
                detail::finish(j, status, false);
                it = running.erase(it);
            } else if (std::chrono::steady_clock::now() - j.start > limit) {
                kill(j.pid, SIGKILL);
                waitpid(j.pid, &status, 0);
                detail::finish(j, status, true);
                it = running.erase(it);
            } else {
                ++it;
            }
        }
        std::this_thread::sleep_for(std::chrono::milliseconds(2));
    }
    std::error_code ec;
    std::filesystem::remove_all(tmp, ec);

    std::vector<RunRecord> rows;
    rows.reserve(jobs.size());
    for (auto& j : jobs) rows.push_back(std::move(j.rec));
    return rows;
}

}  // namespace mabic3::harness
