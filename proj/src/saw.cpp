#include "cubic/saw.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "cubic/rng.hpp"

namespace cubic {

namespace {

// Sites packed as d signed 8-bit offsets from the origin (walks stay short).
using Site = std::uint64_t;

Site step(Site s, int axis, int dir) {
    const int shift = 8 * axis;
    auto c = static_cast<std::int8_t>((s >> shift) & 0xffu);
    c = static_cast<std::int8_t>(c + dir);
    return (s & ~(Site{0xff} << shift)) | (Site{static_cast<std::uint8_t>(c)} << shift);
}

void check_dim(int d, int n) {
    if (d < 1 || d > 8) throw std::invalid_argument("saw: dimension must be in [1, 8]");
    if (n < 0 || n > 120) throw std::invalid_argument("saw: length must be in [0, 120]");
}

struct Enumerator {
    int d, n;
    std::vector<std::uint64_t> counts;
    std::vector<Site> path;

    bool visited(Site s) const {
        for (Site p : path)
            if (p == s) return true;
        return false;
    }
    void go(Site at, int len) {
        ++counts[len];
        if (len == n) return;
        for (int a = 0; a < d; ++a)
            for (int dir : {1, -1}) {
                Site nx = step(at, a, dir);
                if (visited(nx)) continue;
                path.push_back(nx);
                go(nx, len + 1);
                path.pop_back();
            }
    }
};

} // namespace

std::vector<std::uint64_t> saw_counts(int d, int n) {
    check_dim(d, n);
    std::vector<std::uint64_t> out(n + 1, 0);
    out[0] = 1;
    if (n == 0) return out;
    // Fix the first step along +x and multiply by 2d.
    Site first = step(0, 0, 1);
    Enumerator e{d, n, std::vector<std::uint64_t>(n + 1, 0), {0, first}};
    e.go(first, 1);
    for (int i = 1; i <= n; ++i) out[i] = e.counts[i] * 2 * d;
    return out;
}

nlohmann::json SurfaceEntropyFit::to_json() const {
    return {{"dimension", dimension}, {"mu", mu}, {"mu_err", mu_err}, {"exact", exact},
            {"ratios", ratios}, {"sample_length", sample_length}, {"samples", samples}};
}

SurfaceEntropyFit saw_entropy(const SawConfig& cfg) {
    const int d = cfg.dimension;
    const int ne = cfg.exact_length ? cfg.exact_length : (d <= 2 ? 16 : d == 3 ? 10 : d == 4 ? 8 : 7);
    const int ns = cfg.sample_length ? cfg.sample_length : 60;
    const std::size_t samples = cfg.samples ? cfg.samples : 20000;
    check_dim(d, std::max(ne, ns));
    SurfaceEntropyFit fit;
    fit.dimension = d;
    fit.exact = saw_counts(d, ne);
    fit.sample_length = ns;
    fit.samples = samples;

    // Rosenbluth weights W_n = prod of free neighbours estimate c_n.
    const int N = std::max(ne, ns);
    std::vector<double> wsum(N + 1, 0.0);
    std::vector<double> wsq(N + 1, 0.0);
    Rng rng(cfg.seed, 0x5a77);
    std::vector<Site> free;
    std::unordered_set<Site> seen;
    for (std::size_t s = 0; s < samples; ++s) {
        seen.clear();
        Site at = 0;
        seen.insert(at);
        double w = 1.0;
        wsum[0] += 1;
        for (int len = 1; len <= N; ++len) {
            free.clear();
            for (int a = 0; a < d; ++a)
                for (int dir : {1, -1}) {
                    Site nx = step(at, a, dir);
                    if (!seen.count(nx)) free.push_back(nx);
                }
            if (free.empty()) break;
            w *= static_cast<double>(free.size());
            at = free[rng.below(free.size())];
            seen.insert(at);
            wsum[len] += w;
            wsq[len] += w * w;
        }
    }
    // Ratio estimates: exact where available, sampled beyond.
    std::vector<double> err(N + 1, 0.0);
    fit.ratios.assign(N, 0.0);
    for (int n = 1; n <= N; ++n) {
        if (n <= ne) {
            fit.ratios[n - 1] = static_cast<double>(fit.exact[n]) / static_cast<double>(fit.exact[n - 1]);
        } else {
            fit.ratios[n - 1] = wsum[n] / wsum[n - 1];
            const double m = wsum[n] / samples;
            const double var = std::max(0.0, wsq[n] / samples - m * m);
            err[n] = fit.ratios[n - 1] * std::sqrt(var / samples) / m;
        }
    }
    // Least squares of r_n against 1/n over the upper half: intercept = mu.
    const int lo = std::max(2, N / 2);
    double sx = 0, sy = 0, sxx = 0, sxy = 0, k = 0;
    for (int n = lo; n <= N; ++n) {
        const double x = 1.0 / n, y = fit.ratios[n - 1];
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++k;
    }
    const double den = k * sxx - sx * sx;
    fit.mu = den != 0 ? (sy * sxx - sx * sxy) / den : sy / k;
    double resid = 0, meanerr = 0;
    const double slope = den != 0 ? (k * sxy - sx * sy) / den : 0;
    for (int n = lo; n <= N; ++n) {
        const double r = fit.ratios[n - 1] - (fit.mu + slope / n);
        resid += r * r;
        meanerr += err[n];
    }
    const double sigma = std::sqrt(resid / std::max(1.0, k - 2));
    fit.mu_err = std::max(sigma * std::sqrt(sxx / std::max(den, 1e-300)), meanerr / k);
    if (!(fit.mu > 1)) throw std::runtime_error("saw_entropy: estimate of mu is not above 1");
    return fit;
}

} // namespace cubic
