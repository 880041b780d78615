#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cubic/complex.hpp"
#include "cubic/phase.hpp"

namespace cubic {

// Qubit registers: matter fields lambda^1..3 on (l-1)-, (m-1)-, (n-1)-cells
// and gauge fields a, b, c on l-, m-, n-cells.
enum class Reg : int { lam1 = 0, lam2, lam3, a, b, c };

class Layout {
public:
    Layout(const CellComplex& cx, int l, int m, int n);
    Layout(CellComplex&&, int, int, int) = delete; // keeps a pointer to the complex

    const CellComplex& complex() const { return *cx_; }
    int l() const { return deg_[3]; }
    int m() const { return deg_[4]; }
    int n() const { return deg_[5]; }
    int degree(Reg r) const { return deg_[static_cast<int>(r)]; }
    std::size_t count(Reg r) const { return off_[static_cast<int>(r) + 1] - off_[static_cast<int>(r)]; }
    std::uint32_t offset(Reg r) const { return off_[static_cast<int>(r)]; }
    std::uint32_t var(Reg r, std::uint32_t cell) const { return off_[static_cast<int>(r)] + cell; }
    std::pair<Reg, std::uint32_t> locate(std::uint32_t v) const;
    std::size_t num_vars() const { return off_[6]; }

    static Reg matter(int species) { return static_cast<Reg>(species - 1); }
    static Reg gauge(int species) { return static_cast<Reg>(species + 2); }

private:
    const CellComplex* cx_;
    int deg_[6];
    std::uint32_t off_[7];
};

enum class TermKind { matter_x, gauss, flux };

struct Term {
    TermKind kind;
    int species;        // 1, 2, 3
    std::uint32_t cell; // matter cell for matter_x / gauss, (k+1)-cell for flux
    MagicOperator op;
    std::string label() const;
};

struct Hamiltonian {
    Layout layout;
    bool twist = true;
    std::string stage; // trivial | spt | gauged | cubic | toric
    std::vector<Term> terms; // H = -sum of terms

    nlohmann::json to_json() const;
};

// Requires 1 <= l, m, n <= d. The twisted models also need l + m + n = d + 1.
Hamiltonian build_trivial(const CellComplex& cx, int l, int m, int n);
Hamiltonian build_trivial(CellComplex&&, int, int, int) = delete;
MagicOperator build_entangler(const Layout& layout);
Hamiltonian build_spt(const CellComplex& cx, int l, int m, int n, bool twist = true);
Hamiltonian build_spt(CellComplex&&, int, int, int, bool = true) = delete;
// U T U^dagger.
MagicOperator conjugate(const MagicOperator& U, const MagicOperator& T);
Hamiltonian gauge(const Hamiltonian& spt);
Hamiltonian build_cubic(const CellComplex& cx, int l, int m, int n, bool twist = true);
Hamiltonian build_cubic(CellComplex&&, int, int, int, bool = true) = delete;
// Untwisted k-form toric code on the a register: Gauss terms on (k-1)-cells,
// flux terms on (k+1)-cells.
Hamiltonian build_toric(const CellComplex& cx, int k);
Hamiltonian build_toric(CellComplex&&, int) = delete;

// Replaces each gauge variable by the coboundary of its matter field.
PhasePoly pull_back_gauge(const PhasePoly& p, const Layout& layout);

struct CommuteFailure {
    std::size_t i, j;
};

struct CommuteReport {
    std::size_t terms = 0;
    std::size_t pairs = 0;          // all unordered pairs
    std::size_t overlapping = 0;    // pairs needing a symbolic check
    std::vector<CommuteFailure> failures;
    bool ok() const { return failures.empty(); }
    nlohmann::json to_json(const Hamiltonian& h) const;
};

// Exhaustive pairwise commutation. Pairs whose flips touch nothing the other
// reads commute trivially; the rest go through commutes().
CommuteReport commutation_suite(const Hamiltonian& h);

// Per-term eigenvalue labels for a Pauli error: flux terms give
// (-1)^{flux}, Gauss terms give 0 if an X error breaks one of their flux
// checks and (-1)^{|Z error on the flip set|} otherwise.
std::vector<int> syndrome(const Hamiltonian& h, const BitVec& xerr, const BitVec& zerr);

} // namespace cubic
