#pragma once

#include <cstdint>
#include <limits>

namespace cubic {

inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Counter-based stream: output i of stream s under seed is a pure function of
// (seed, s, i), so trials can run in any order and stay reproducible.
class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed = 0, std::uint64_t stream = 0)
        : key_(splitmix64(seed ^ splitmix64(stream + 0x632be59bd9b4e019ull))) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() { return splitmix64(key_ + 0x9e3779b97f4a7c15ull * (++ctr_)); }

    double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }
    bool bit() { return ((*this)() >> 63) != 0; }
    // Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) {
        if (n <= 1) return 0;
        std::uint64_t lim = max() - max() % n;
        std::uint64_t r;
        do r = (*this)(); while (r >= lim);
        return r % n;
    }
    std::uint64_t counter() const { return ctr_; }

private:
    std::uint64_t key_;
    std::uint64_t ctr_ = 0;
};

} // namespace cubic
