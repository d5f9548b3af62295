#pragma once

#include "bh/quadrature.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace bh::cli {

struct GridSpec {
    std::string kind = "linear";  // "linear" or "log"
    double start = 0, stop = 1;
    std::size_t count = 2;

    std::vector<double> values() const;
};

struct ExperimentConfig {
    double lambda = 1.0;
    QuadratureSpec quadrature;
    std::map<std::string, GridSpec> grids;
    std::string function = "indicator";
    std::uint64_t seed = 20240611;
    std::filesystem::path output_dir = "out";

    int max_level = 8;
    int n = 5;
    int nodes = 8;
    double A = 0;  // 0: calibrate
    std::size_t oscillation_samples = 8;
    std::size_t random_atoms = 50;

    const GridSpec& grid(const std::string& name) const;
    void validate() const;
    // Sorted key=value lines; hashed into every CSV header.
    std::string canonical() const;
    std::string hash_hex() const;
};

// Throws UsageError ("config: ...") on syntax errors, unknown keys and bad values.
ExperimentConfig parse_config(std::istream& is);
ExperimentConfig load_config(const std::filesystem::path& path);

std::uint64_t fnv1a(const std::string& s);

}  // namespace bh::cli
