#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "cubic/complex.hpp"
#include "cubic/homology.hpp"
#include "cubic/manifold.hpp"
#include "cubic/phase.hpp"
#include "cubic/stabilizer.hpp"

namespace cubic {

// Product of Z over the gauge qubits of `species` on a closed cycle.
MagicOperator wilson(const Layout& layout, int species, const BitVec& cycle);

// Coordinate sub-torus of a hypercubic torus: the axes in `axes` vary, the
// others are pinned to `origin`.
struct SubTorus {
    const CellComplex* big = nullptr;
    CellComplex sub;
    std::vector<int> axes;
    std::vector<int> origin; // full coordinates; entries on `axes` are ignored

    SubTorus(const CellComplex& big, std::uint32_t axes_mask, std::vector<int> origin);
    std::uint32_t to_big(int k, std::uint32_t sub_cell) const;
};

// Magnetic operator of species i on the coordinate sub-torus with axes
// `axes` (dimension d - deg_i) through `origin`: flips species i on the cells
// dual to it, with phase  L(x_j) cup x_k  for the other two species j < k and
// checks that x_j, x_k are exact where they are read. L is a fixed linear
// primitive. Species before i are read on the slice through `origin`, species
// after i on the slice shifted by +1 in every pinned direction.
struct MagneticOp {
    int species = 0;
    std::uint32_t axes = 0;
    std::vector<int> origin;
    std::vector<ParityCheck> flux;      // local exactness checks
    std::vector<ParityCheck> holonomy;  // Wilson checks on the sub-torus cycles
    MagicOperator op;
};

MagneticOp magnetic(const Layout& layout, int species, std::uint32_t axes, std::vector<int> origin = {});

struct FormalTerm {
    std::int64_t num = 1, den = 1;
    MagicOperator op;
};

// Sum of operators with positive rational coefficients; empty means Zero.
struct FormalSum {
    std::vector<FormalTerm> terms;
    bool is_zero() const { return terms.empty(); }
    // Coefficient of |z'> in the sum applied to |z>, for z' the image of z.
    double apply(const BitVec& z, BitVec& out) const;
    nlohmann::json to_json() const;
};

// M x M expanded over the holonomy projectors: a sum of Wilson pairs on the
// sub-torus, each carrying the local flux checks.
FormalSum fusion_square(const MagneticOp& M);

// Normal form of A B A B. Zero when the two orders have orthogonal projectors.
MagicOperator braiding_commutator(const MagicOperator& A, const MagicOperator& B);

// Dual rectangle in a 3-torus: the dual plaquettes perpendicular to `normal`
// at height `level` + 1/2, covering the primal edges along `normal` whose
// other two coordinates (in increasing axis order) lie in [lo, hi].
struct DualRect {
    int normal = 0;
    int level = 0;
    int lo[2] = {0, 0};
    int hi[2] = {-1, -1};
    bool empty() const { return hi[0] < lo[0] || hi[1] < lo[1]; }
};

// Poincare dual 1-cochain of a dual 2-chain.
Cochain dual_cochain(const CellComplex& cx, const DualRect& r);
// (-1)^{integral of A cup B cup C} for 1-cochains on a 3-dimensional complex.
int borromean_phase(const Cochain& A, const Cochain& B, const Cochain& C);

// U = SWAP(a, b) after the diagonal phase (-1)^{integral (a cup_1 b) cup c}.
struct CczGate {
    PhasePoly phase;
    MagicOperator conjugate(const Layout& layout, const MagicOperator& T) const;
};

CczGate ccz_operator(const Layout& layout);
// Exchanges the a and b registers (requires l = m).
MagicOperator swap_ab(const Layout& layout, const MagicOperator& T);

struct CczReport {
    std::size_t terms = 0;
    std::size_t samples = 0;
    std::size_t failures = 0;
    std::size_t flux_mismatches = 0;
    bool ok() const { return failures == 0 && flux_mismatches == 0; }
    nlohmann::json to_json() const;
};

// Conjugates every term by U and compares with the species-swapped term on
// random flat configurations (random coboundaries plus random cohomology
// representatives for each species). Flux terms must map exactly.
CczReport verify_ccz_symmetry(const Hamiltonian& h, const CczGate& U, std::size_t samples, std::uint64_t seed);

struct LogicalRow {
    std::string in, out;
    int phase = 0; // power of i
};

struct LogicalTable {
    std::string model, gate;
    std::vector<std::string> qubits;
    std::vector<LogicalRow> rows;
    std::string to_text() const;
    nlohmann::json to_json() const;
};

// gate: "ccz" (needs cup-1 data), "pontryagin" (needs Pontryagin data) or
// "em_dual" (4-manifolds: logical Pauli map of the electric-magnetic swap).
LogicalTable logical_action(const ManifoldModel& model, const std::string& gate);

// Electric-magnetic duality of the 2-form toric code on hypercubic T^4:
// X <-> Z with the cell map (x, S) -> (-x - 1, complement of S).
CellRef em_dual_cell(const CellComplex& cx, CellRef c);
Hamiltonian em_dual_4d(const Hamiltonian& toric);
// Same operators regardless of order, kinds and labels.
bool same_term_set(const Hamiltonian& a, const Hamiltonian& b);

} // namespace cubic
