#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cubic/thermal.hpp"

namespace cubic {

// Thrown for malformed or inconsistent run configurations (exit status 2).
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Everything a CLI run depends on. Every field has a JSON key of the same
// name; a config file may set any of them and flags override it.
struct RunConfig {
    std::string command;  // verify | compute | simulate
    std::string target;   // suite, quantity or experiment
    std::string complex;
    std::string model;    // manifold model (compute) or thermal model (simulate)
    std::string manifold; // alias for model in `compute gates`
    std::string gate = "ccz";
    std::optional<int> l, m, n;
    bool twist = true;
    std::string sector = "loop";
    std::optional<int> degree;
    double beta = 2.0;
    double beta_dec = std::numeric_limits<double>::infinity();
    double eps0 = 1.0;
    std::string rule = "metropolis";
    std::size_t sweeps = 100;
    std::size_t trials = 200;
    std::optional<std::size_t> samples; // default depends on the target
    std::size_t decode_passes = 1000;
    std::uint64_t seed = 1;
    std::uint64_t budget = 50'000'000;
    unsigned threads = 1;
    int dimension = 4;   // SAW lattice dimension
    std::optional<int> k; // excitation dimension for tc
    double mu = 0;        // connective constant for tc (0: unused)
    std::string out;      // output path prefix; empty prints to stdout

    static const std::vector<std::string>& keys();
    // Rejects unknown keys and wrong types.
    static RunConfig from_json(const nlohmann::json& j);
    static RunConfig load(const std::string& path);
    // Overlays the keys present in j.
    void merge(const nlohmann::json& j);
    nlohmann::json to_json() const;

    // Degrees (l, m, n) for a d-dimensional complex: explicit values, or
    // l = m = n = (d + 1) / 3 when that is an integer.
    std::array<int, 3> degrees(int d) const;
    ExperimentConfig experiment() const;
    void validate() const;
};

} // namespace cubic
