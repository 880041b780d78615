#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

namespace cubic {

// Exact counts c_0..c_n of self-avoiding walks on Z^d from the origin.
std::vector<std::uint64_t> saw_counts(int d, int max_length);

struct SawConfig {
    int dimension = 4;
    int exact_length = 0;       // 0: a default by dimension
    int sample_length = 0;      // 0: a default by dimension
    std::size_t samples = 0;    // 0: a default by dimension
    std::uint64_t seed = 1;
};

struct SurfaceEntropyFit {
    int dimension = 0;
    double mu = 0;        // connective constant estimate
    double mu_err = 0;    // one standard error
    std::vector<std::uint64_t> exact;  // c_n for n <= exact_length
    std::vector<double> ratios;        // estimated c_n / c_{n-1}, n >= 1
    int sample_length = 0;
    std::size_t samples = 0;
    nlohmann::json to_json() const;
};

// Exact enumeration to a cutoff, Rosenbluth sampling beyond it, and a fit of
// c_n / c_{n-1} = mu (1 + A / n) over the upper half of the lengths.
SurfaceEntropyFit saw_entropy(const SawConfig& cfg);

} // namespace cubic
