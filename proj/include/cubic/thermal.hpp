#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

#include "cubic/complex.hpp"
#include "cubic/gf2.hpp"
#include "cubic/rng.hpp"

namespace cubic {

enum class RuleKind { metropolis, heat_bath };

// Acceptance probability of a local move as a function of its energy change.
// Metropolis: 1 for dE < 0, 1/2 for dE = 0, exp(-beta dE) for dE > 0.
// beta = infinity gives greedy descent with the same 1/2 tie rule.
struct UpdateRule {
    RuleKind kind = RuleKind::metropolis;
    double beta = 1.0;
    double accept(double dE) const;
    static UpdateRule greedy() { return {RuleKind::metropolis, std::numeric_limits<double>::infinity()}; }
};

// One error sector of a CSS-like code on a cell complex: qubits on k-cells,
// checks on (k-1)-cells (Z errors, checks = boundary) or on (k+1)-cells
// (X errors, checks = coboundary). Each violated check costs `check_energy`.
// Several species are independent copies on the same cells.
struct Sector {
    const CellComplex* cx = nullptr;
    int degree = 0;
    bool boundary = true;        // true: loop sector (Z errors, Gauss checks)
    double check_energy = 2.0;   // in units of eps0
    int species = 1;
    std::vector<std::vector<std::uint32_t>> qubit_checks; // per qubit cell
    std::vector<std::vector<std::uint32_t>> check_qubits; // per check cell
    std::vector<BitVec> logicals; // pairing forms over qubit cells (one per class)

    std::size_t qubits() const { return qubit_checks.size(); }
    std::size_t checks() const { return check_qubits.size(); }
};

// Loop sector: Z errors on k-cells seen by Gauss checks on (k-1)-cells, 2 eps0 each.
Sector loop_sector(const CellComplex& cx, int k, int species, double eps0 = 1.0);
Sector loop_sector(CellComplex&&, int, int, double = 1.0) = delete;
// Membrane sector: X errors on k-cells seen by flux checks on (k+1)-cells.
// A violated flux cube costs 2 eps0 for the flux term plus 4 eps0 from the
// Gauss terms of the other two species, 6 eps0 in total.
Sector membrane_sector(const CellComplex& cx, int k, int species, double eps0 = 1.0);
Sector membrane_sector(CellComplex&&, int, int, double = 1.0) = delete;

// Errors of every species, with syndromes kept in sync.
class LatticeState {
public:
    explicit LatticeState(const Sector& s);

    const Sector& sector() const { return *s_; }
    const BitVec& error(int sp) const { return err_[sp]; }
    const BitVec& syndrome(int sp) const { return syn_[sp]; }
    std::size_t violated() const;
    double energy() const;
    // Energy change of flipping qubit q of species sp.
    double delta(int sp, std::uint32_t q) const;
    void flip(int sp, std::uint32_t q);
    // Recomputes the syndrome from the error; true when the cache agrees.
    bool consistent() const;
    // Logical class per species: pairing of the error with each logical form.
    std::vector<BitVec> logical_class() const;

private:
    const Sector* s_;
    std::vector<BitVec> err_, syn_;
};

struct NoiseModel {
    double beta = 2.0;
    double attempt_rate = 1.0; // probability that a qubit is attempted per sweep
    RuleKind rule = RuleKind::metropolis;
};

// One attempt per qubit (and species), in cell order.
void bath_sweep(LatticeState& st, const NoiseModel& noise, Rng& rng);

struct DecodeResult {
    std::size_t passes = 0;
    bool clean = false; // syndrome fully removed
    BitVec recovery[3];
};

// Local cellular-automaton decoder at inverse temperature beta_dec. At
// beta_dec = infinity only qubits next to a violated check can move, and
// each pass visits them in cell order.
DecodeResult ca_decode(LatticeState& st, double beta_dec, Rng& rng, std::size_t max_passes);

struct ExperimentConfig {
    std::string complex;
    std::string model = "toric"; // "toric" (one species) or "cubic" (three)
    std::string sector = "loop";  // "loop" or "membrane"
    int degree = 2;
    double beta = 2.0;
    double beta_dec = std::numeric_limits<double>::infinity();
    double eps0 = 1.0;
    RuleKind rule = RuleKind::metropolis;
    std::size_t sweeps = 100;
    std::size_t trials = 200;
    std::size_t decode_passes = 1000;
    std::uint64_t seed = 1;
    unsigned threads = 1;
};

struct ExperimentResult {
    std::string complex;
    int L = 0;
    double beta = 0;
    std::size_t sweeps = 0, trials = 0, failures = 0, ambiguous = 0;
    std::uint64_t seed = 0;
    std::vector<std::uint8_t> outcomes; // 1 = logical failure
    double p_fail() const { return trials ? static_cast<double>(failures) / trials : 0.0; }
    double ci_lo = 0, ci_hi = 0;
    static std::string csv_header();
    std::string csv_row() const;
    nlohmann::json to_json() const;
};

// Wilson score interval for k successes out of n at normal quantile z.
std::pair<double, double> wilson_interval(std::size_t k, std::size_t n, double z = 1.959963984540054);

Sector make_sector(const CellComplex& cx, const ExperimentConfig& cfg);

// Start in the trivial sector, run `sweeps` bath sweeps, decode, read out.
// Failure = logical class changed or syndrome left after decoding.
ExperimentResult memory_experiment(const CellComplex& cx, const ExperimentConfig& cfg);

// Fraction of Gibbs samples (bath runs of `sweeps` sweeps from the vacuum)
// for which some single flip changes the decoded logical class.
ExperimentResult estimate_p_crit(const CellComplex& cx, const ExperimentConfig& cfg);

// True when the rate table reproduces the Boltzmann ratios exactly at beta.
struct RateCheck {
    std::string name;
    int from = 0, to = 0;
    double dE = 0, ratio = 0, expected = 0;
};
std::vector<RateCheck> rate_table(const CellComplex& cx, double beta);

// Excitations of dimension k in D spatial dimensions: 2 eps0 / log(2k(2D - k)).
// k = 0 returns 0 (particles are thermally unstable).
struct CriticalTemperature {
    double value = 0;
    bool unstable = false;
};
CriticalTemperature critical_temperature(int k, int D, double eps0 = 1.0);
// 2 eps0 / log(mu) from a connective constant.
double critical_temperature_mu(double mu, double eps0 = 1.0);
// Minimum over the excitation dimensions {l-1, m-1, n-1, d-l-1, d-m-1, d-n-1}
// of the cubic model on a d-dimensional lattice.
CriticalTemperature critical_temperature_cubic(int d, int l, int m, int n, double eps0 = 1.0);

} // namespace cubic
