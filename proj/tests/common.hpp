#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "mabic3/aiger.hpp"

namespace testutil {

inline std::filesystem::path bench_dir() { return MABIC3_BENCH_DIR; }

struct Instance {
    std::string name;
    std::filesystem::path path;
    std::string expected;  // "safe" or "unsafe"
};

inline std::vector<Instance> corpus(const std::string& group = "corpus") {
    std::ifstream in(bench_dir() / "manifest.json");
    const auto j = nlohmann::json::parse(in);
    std::vector<Instance> out;
    for (const auto& [name, verdict] : j.at(group).items()) {
        out.push_back({name, bench_dir() / group / (name + ".aag"), verdict.get<std::string>()});
    }
    return out;
}

inline std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

inline std::filesystem::path temp_dir(const std::string& tag) {
    auto d = std::filesystem::temp_directory_path() / ("mabic3-test-" + tag);
    std::filesystem::remove_all(d);
    std::filesystem::create_directories(d);
    return d;
}

}  // namespace testutil
