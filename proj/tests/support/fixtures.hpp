#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "gof/ingest.hpp"
#include "gof/sample.hpp"

namespace gof::testing {

inline std::filesystem::path fixture_dir() { return GOF_TEST_FIXTURE_DIR; }
inline std::filesystem::path set1_path() { return fixture_dir() / "set1_sol.txt"; }
inline std::filesystem::path set2_path() { return fixture_dir() / "set2_pcb_logkow.txt"; }

inline const Sample& set1() {
    static const Sample s = ingest(set1_path(), {});
    return s;
}

inline const Sample& set2() {
    static const Sample s = ingest(set2_path(), {});
    return s;
}

/// Set 2 with its largest value removed.
inline const Sample& set2_trimmed() {
    static const Sample s = set2().without(set2().size() - 1);
    return s;
}

/// FNV-1a over the trimmed data lines, each terminated by '\n'; comments and blanks skipped.
inline std::uint64_t data_checksum(const std::filesystem::path& path) {
    std::ifstream in(path);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    std::string line;
    while (std::getline(in, line)) {
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos || line[b] == '#') continue;
        const auto e = line.find_last_not_of(" \t\r");
        line = line.substr(b, e - b + 1) + '\n';
        for (unsigned char c : line) {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
    }
    return h;
}

inline std::vector<double> normal_draws(std::mt19937_64& rng, std::size_t n, double mu = 0.0, double sigma = 1.0) {
    std::normal_distribution<double> dist(mu, sigma);
    std::vector<double> out(n);
    std::generate(out.begin(), out.end(), [&] { return dist(rng); });
    return out;
}

}  // namespace gof::testing
