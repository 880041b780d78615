#include "cubic/thermal.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "cubic/homology.hpp"

namespace cubic {

double UpdateRule::accept(double dE) const {
    if (dE == 0) return 0.5;
    if (std::isinf(beta)) return dE < 0 ? 1.0 : 0.0;
    if (kind == RuleKind::heat_bath) return 1.0 / (1.0 + std::exp(beta * dE));
    return dE < 0 ? 1.0 : std::exp(-beta * dE);
}

namespace {

Sector build_sector(const CellComplex& cx, int k, int species, bool bd, double energy) {
    if (k < 1 || k > cx.dim() || (!bd && k == cx.dim()))
        throw std::invalid_argument("sector: qubit degree out of range");
    Sector s;
    s.cx = &cx;
    s.degree = k;
    s.boundary = bd;
    s.check_energy = energy;
    s.species = species;
    const int cd = bd ? k - 1 : k + 1;
    s.qubit_checks.resize(cx.count(k));
    s.check_qubits.resize(cx.count(cd));
    for (std::uint32_t q = 0; q < cx.count(k); ++q) {
        auto span = bd ? cx.boundary(k, q) : cx.cofaces(k, q);
        std::vector<std::uint32_t> cs(span.begin(), span.end());
        std::sort(cs.begin(), cs.end());
        // mod 2: a check met twice is not touched
        std::vector<std::uint32_t> odd;
        for (std::size_t i = 0; i < cs.size();) {
            std::size_t j = i;
            while (j < cs.size() && cs[j] == cs[i]) ++j;
            if ((j - i) & 1u) odd.push_back(cs[i]);
            i = j;
        }
        for (auto c : odd) s.check_qubits[c].push_back(q);
        s.qubit_checks[q] = std::move(odd);
    }
    auto hb = homology_basis(cx, k);
    s.logicals = bd ? hb.cocycles : hb.cycles;
    return s;
}

} // namespace

Sector loop_sector(const CellComplex& cx, int k, int species, double eps0) {
    return build_sector(cx, k, species, true, 2 * eps0);
}

Sector membrane_sector(const CellComplex& cx, int k, int species, double eps0) {
    return build_sector(cx, k, species, false, 6 * eps0);
}

LatticeState::LatticeState(const Sector& s) : s_(&s) {
    if (s.species < 1 || s.species > 3) throw std::invalid_argument("sector needs 1 to 3 species");
    err_.assign(s.species, BitVec(s.qubits()));
    syn_.assign(s.species, BitVec(s.checks()));
}

std::size_t LatticeState::violated() const {
    std::size_t n = 0;
    for (const auto& v : syn_) n += v.popcount();
    return n;
}

double LatticeState::energy() const { return s_->check_energy * static_cast<double>(violated()); }

double LatticeState::delta(int sp, std::uint32_t q) const {
    int d = 0;
    for (auto c : s_->qubit_checks[q]) d += syn_[sp].get(c) ? -1 : 1;
    return s_->check_energy * d;
}

void LatticeState::flip(int sp, std::uint32_t q) {
    err_[sp].flip(q);
    for (auto c : s_->qubit_checks[q]) syn_[sp].flip(c);
}

bool LatticeState::consistent() const {
    for (std::size_t sp = 0; sp < err_.size(); ++sp) {
        BitVec s(s_->checks());
        for (auto q : err_[sp].ones())
            for (auto c : s_->qubit_checks[q]) s.flip(c);
        if (!(s == syn_[sp])) return false;
    }
    return true;
}

std::vector<BitVec> LatticeState::logical_class() const {
    std::vector<BitVec> out;
    for (const auto& e : err_) {
        BitVec v(s_->logicals.size());
        for (std::size_t i = 0; i < s_->logicals.size(); ++i) v.set(i, e.dot(s_->logicals[i]));
        out.push_back(std::move(v));
    }
    return out;
}

void bath_sweep(LatticeState& st, const NoiseModel& noise, Rng& rng) {
    const UpdateRule rule{noise.rule, noise.beta};
    const auto n = static_cast<std::uint32_t>(st.sector().qubits());
    for (int sp = 0; sp < st.sector().species; ++sp)
        for (std::uint32_t q = 0; q < n; ++q) {
            if (noise.attempt_rate < 1 && rng.uniform() >= noise.attempt_rate) continue;
            double p = rule.accept(st.delta(sp, q));
            if (p >= 1 || (p > 0 && rng.uniform() < p)) st.flip(sp, q);
        }
}

DecodeResult ca_decode(LatticeState& st, double beta_dec, Rng& rng, std::size_t max_passes) {
    const Sector& s = st.sector();
    const UpdateRule rule{RuleKind::metropolis, beta_dec};
    DecodeResult r;
    for (int sp = 0; sp < s.species; ++sp) r.recovery[sp] = BitVec(s.qubits());
    auto move = [&](int sp, std::uint32_t q) {
        double p = rule.accept(st.delta(sp, q));
        if (p >= 1 || (p > 0 && rng.uniform() < p)) {
            st.flip(sp, q);
            r.recovery[sp].flip(q);
        }
    };
    while (st.violated() && r.passes < max_passes) {
        ++r.passes;
        for (int sp = 0; sp < s.species; ++sp) {
            if (std::isinf(beta_dec)) {
                std::vector<std::uint32_t> cand;
                for (auto c : st.syndrome(sp).ones()) cand.insert(cand.end(), s.check_qubits[c].begin(), s.check_qubits[c].end());
                std::sort(cand.begin(), cand.end());
                cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
                for (auto q : cand) move(sp, q);
            } else {
                for (std::uint32_t q = 0; q < s.qubits(); ++q) move(sp, q);
            }
        }
    }
    r.clean = st.violated() == 0;
    return r;
}

std::pair<double, double> wilson_interval(std::size_t k, std::size_t n, double z) {
    if (n == 0) return {0.0, 1.0};
    const double p = static_cast<double>(k) / n, z2 = z * z, nn = static_cast<double>(n);
    const double centre = (p + z2 / (2 * nn)) / (1 + z2 / nn);
    const double half = z * std::sqrt(p * (1 - p) / nn + z2 / (4 * nn * nn)) / (1 + z2 / nn);
    return {k == 0 ? 0.0 : std::max(0.0, centre - half), k == n ? 1.0 : std::min(1.0, centre + half)};
}

std::string ExperimentResult::csv_header() { return "L,beta,t,trials,failures,p_fail,ci_lo,ci_hi"; }

std::string ExperimentResult::csv_row() const {
    std::ostringstream os;
    os << std::setprecision(6) << L << ',' << beta << ',' << sweeps << ',' << trials << ',' << failures << ',' << p_fail()
       << ',' << ci_lo << ',' << ci_hi;
    return os.str();
}

nlohmann::json ExperimentResult::to_json() const {
    return {{"complex", complex}, {"L", L},         {"beta", beta},       {"t", sweeps},   {"trials", trials},
            {"failures", failures}, {"ambiguous", ambiguous}, {"p_fail", p_fail()}, {"ci_lo", ci_lo}, {"ci_hi", ci_hi},
            {"seed", seed}};
}

Sector make_sector(const CellComplex& cx, const ExperimentConfig& cfg) {
    int species;
    if (cfg.model == "toric") species = 1;
    else if (cfg.model == "cubic") species = 3;
    else throw std::invalid_argument("unknown thermal model '" + cfg.model + "' (toric or cubic)");
    if (cfg.sector == "loop") return loop_sector(cx, cfg.degree, species, cfg.eps0);
    if (cfg.sector == "membrane") return membrane_sector(cx, cfg.degree, species, cfg.eps0);
    throw std::invalid_argument("unknown sector '" + cfg.sector + "' (loop or membrane)");
}

namespace {

bool trivial(const std::vector<BitVec>& cls) {
    return std::none_of(cls.begin(), cls.end(), [](const BitVec& v) { return v.any(); });
}

template <class Fn>
void run_trials(std::size_t trials, unsigned threads, Fn&& fn) {
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(trials)));
    if (threads == 1) {
        for (std::size_t t = 0; t < trials; ++t) fn(t);
        return;
    }
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w)
        pool.emplace_back([&, w] {
            for (std::size_t t = w; t < trials; t += threads) fn(t);
        });
    for (auto& th : pool) th.join();
}

ExperimentResult finish(const CellComplex& cx, const ExperimentConfig& cfg, std::vector<std::uint8_t> out, std::size_t ambiguous) {
    ExperimentResult r;
    r.complex = cx.name();
    r.L = cx.lengths().empty() ? 0 : cx.lengths()[0];
    r.beta = cfg.beta;
    r.sweeps = cfg.sweeps;
    r.trials = cfg.trials;
    r.seed = cfg.seed;
    r.failures = static_cast<std::size_t>(std::count(out.begin(), out.end(), 1));
    r.ambiguous = ambiguous;
    r.outcomes = std::move(out);
    std::tie(r.ci_lo, r.ci_hi) = wilson_interval(r.failures, r.trials);
    return r;
}

void check_config(const ExperimentConfig& cfg) {
    if (cfg.trials == 0) throw std::invalid_argument("trials must be at least 1");
    if (!(cfg.beta >= 0)) throw std::invalid_argument("beta must be non-negative");
    if (!(cfg.beta_dec >= cfg.beta)) throw std::invalid_argument("beta_dec must be at least beta");
}

} // namespace

ExperimentResult memory_experiment(const CellComplex& cx, const ExperimentConfig& cfg) {
    check_config(cfg);
    const Sector s = make_sector(cx, cfg);
    const NoiseModel noise{cfg.beta, 1.0, cfg.rule};
    std::vector<std::uint8_t> out(cfg.trials, 0), amb(cfg.trials, 0);
    run_trials(cfg.trials, cfg.threads, [&](std::size_t t) {
        Rng rng(cfg.seed, t);
        LatticeState st(s);
        for (std::size_t i = 0; i < cfg.sweeps; ++i) bath_sweep(st, noise, rng);
        auto dec = ca_decode(st, cfg.beta_dec, rng, cfg.decode_passes);
        amb[t] = !dec.clean;
        out[t] = !dec.clean || !trivial(st.logical_class());
    });
    return finish(cx, cfg, std::move(out), static_cast<std::size_t>(std::count(amb.begin(), amb.end(), 1)));
}

ExperimentResult estimate_p_crit(const CellComplex& cx, const ExperimentConfig& cfg) {
    check_config(cfg);
    const Sector s = make_sector(cx, cfg);
    const NoiseModel noise{cfg.beta, 1.0, cfg.rule};
    std::vector<std::uint8_t> out(cfg.trials, 0), amb(cfg.trials, 0);
    run_trials(cfg.trials, cfg.threads, [&](std::size_t t) {
        Rng rng(cfg.seed, t);
        LatticeState b(s);
        for (std::size_t i = 0; i < cfg.sweeps; ++i) bath_sweep(b, noise, rng);
        // The decoder is the correction map; a fixed stream keeps it a function of the error.
        const std::uint64_t dseed = rng();
        auto decoded = [&](LatticeState st, bool& clean) {
            Rng drng(dseed, 0);
            clean = ca_decode(st, cfg.beta_dec, drng, cfg.decode_passes).clean;
            return st.logical_class();
        };
        bool clean = true;
        const auto base = decoded(b, clean);
        if (!clean) {
            amb[t] = out[t] = 1;
            return;
        }
        for (int sp = 0; sp < s.species && !out[t]; ++sp)
            for (std::uint32_t q = 0; q < s.qubits(); ++q) {
                LatticeState e = b;
                e.flip(sp, q);
                bool ok = true;
                if (decoded(e, ok) != base || !ok) {
                    out[t] = 1;
                    break;
                }
            }
    });
    return finish(cx, cfg, std::move(out), static_cast<std::size_t>(std::count(amb.begin(), amb.end(), 1)));
}

namespace {

// Flips neighbours of qubit f until `target` of its checks are violated.
bool prepare(LatticeState& st, std::uint32_t f, int target) {
    const Sector& s = st.sector();
    auto count = [&] {
        int n = 0;
        for (auto c : s.qubit_checks[f]) n += st.syndrome(0).get(c);
        return n;
    };
    for (auto c : s.qubit_checks[f]) {
        if (count() == target) return true;
        if (st.syndrome(0).get(c)) continue;
        for (auto g : s.check_qubits[c]) {
            if (g == f) continue;
            int before = count();
            st.flip(0, g);
            if (count() == before + 1) break;
            st.flip(0, g);
        }
    }
    return count() == target;
}

} // namespace

std::vector<RateCheck> rate_table(const CellComplex& cx, double beta) {
    if (!cx.is_hypercubic() || cx.dim() < 4) throw std::invalid_argument("rate_table: hypercubic torus of dimension >= 4 required");
    const UpdateRule rule{RuleKind::metropolis, beta};
    std::vector<RateCheck> out;
    for (bool loop : {true, false}) {
        const Sector s = loop ? loop_sector(cx, 2, 1) : membrane_sector(cx, 2, 1);
        const int n = static_cast<int>(s.qubit_checks[0].size());
        for (int from = 0; 2 * from <= n; ++from) {
            LatticeState st(s);
            if (!prepare(st, 0, from)) throw std::logic_error("rate_table: cannot prepare configuration");
            RateCheck r;
            r.name = loop ? "loop" : "membrane";
            r.from = from;
            r.to = n - from;
            r.dE = st.delta(0, 0);
            r.ratio = from == r.to ? rule.accept(r.dE) : rule.accept(r.dE) / rule.accept(-r.dE);
            r.expected = from == r.to ? 0.5 : std::exp(-beta * r.dE);
            out.push_back(r);
        }
    }
    return out;
}

CriticalTemperature critical_temperature(int k, int D, double eps0) {
    if (k < 0 || 2 * D <= k) throw std::invalid_argument("critical_temperature: need 0 <= k < 2D");
    if (k == 0) return {0.0, true};
    return {2 * eps0 / std::log(2.0 * k * (2.0 * D - k)), false};
}

double critical_temperature_mu(double mu, double eps0) {
    if (!(mu > 1)) throw std::invalid_argument("critical_temperature: mu must exceed 1");
    return 2 * eps0 / std::log(mu);
}

CriticalTemperature critical_temperature_cubic(int d, int l, int m, int n, double eps0) {
    CriticalTemperature best{std::numeric_limits<double>::infinity(), false};
    for (int k : {l - 1, m - 1, n - 1, d - l - 1, d - m - 1, d - n - 1}) {
        auto t = critical_temperature(std::max(k, 0), d, eps0);
        if (t.value < best.value) best = t;
    }
    return best;
}

} // namespace cubic
