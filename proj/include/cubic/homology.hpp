#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <json.hpp>

#include "cubic/cochain.hpp"
#include "cubic/complex.hpp"
#include "cubic/gf2.hpp"
#include "cubic/stabilizer.hpp"

namespace cubic {

class ManifoldModel;

// Dual bases of H^k and H_k: <cocycles[i], cycles[j]> = delta_ij.
struct HomologyBasis {
    int degree = 0;
    std::size_t rank = 0;
    std::vector<BitVec> cocycles;
    std::vector<BitVec> cycles;
};

// On tori the representatives are the wrap-cocycle products and coordinate
// sub-tori; elsewhere they come from Gaussian elimination.
HomologyBasis homology_basis(const CellComplex& cx, int k);
// All cells of degree k lying in the coordinate sub-torus spanned by `axes`
// through the origin. Tori only.
BitVec coordinate_subtorus(const CellComplex& cx, std::uint32_t axes);
bool is_cycle(const CellComplex& cx, int k, const BitVec& z);
bool is_cocycle(const CellComplex& cx, int k, const BitVec& z);

// Integrals of triple products of basis classes. The flat condition a cup b = 0
// is tested against every class of the complementary degree.
struct CupTensor {
    int l = 0, m = 0, n = 0;
    std::size_t bl = 0, bm = 0, bn = 0;
    // ab[i][j] bit k: integral of a_i b_j z_k, z_k in H^{n-1}.
    std::vector<std::vector<BitVec>> ab;
    // ac[i][j] bit k: integral of a_i y_k c_j, y_k in H^{m-1}.
    std::vector<std::vector<BitVec>> ac;
    // bc[i][j] bit k: integral of x_k b_i c_j, x_k in H^{l-1}.
    std::vector<std::vector<BitVec>> bc;
};

CupTensor cup_tensor(const CellComplex& cx, int l, int m, int n);
CupTensor cup_tensor(const ManifoldModel& model, int l, int m, int n);

struct FlatSector {
    BitVec a, b, c; // class coordinates
};

struct FlatSectorResult {
    std::uint64_t count = 0;
    std::vector<FlatSector> sectors; // filled when count <= list_limit
    nlohmann::json to_json() const;
};

FlatSectorResult enumerate_flat_sectors(const CupTensor& t, std::size_t list_limit = 0);

struct GsdResult {
    std::uint64_t gsd = 0;
    std::uint64_t orbits = 0;       // flux-free orbits of the Gauss flips
    std::size_t stabilizer_rank = 0; // generators of the zero-flip subgroup
};

// Ground-space dimension of a commuting monomial Hamiltonian built by
// build_cubic. Throws std::invalid_argument on non-commuting input or when
// the orbit count exceeds 2^max_log_orbits.
GsdResult gsd_monomial(const Hamiltonian& h, int max_log_orbits = 24);

// Same count by explicit enumeration of flux-free configurations and
// breadth-first orbit traversal with phase bookkeeping. Tiny complexes only.
std::uint64_t gsd_bruteforce(const Hamiltonian& h, int max_log_configs = 22);

struct SystoleResult {
    int degree = 0;
    std::size_t value = 0;      // exact minimum, or best lower bound
    std::size_t lower = 0;
    std::size_t upper = 0;      // weight of the best cycle found
    bool exact = false;
    bool budget_exhausted = false;
    std::string method;
    BitVec witness;
    nlohmann::json to_json() const;
};

// Minimal weight of a homologically nontrivial k-cycle. Depth-first
// branch-and-bound over cycles grown by cancelling boundary faces, within
// `budget` search nodes. On hypercubic tori a packing bound (L^k pairwise
// disjoint representatives of every basis cocycle) certifies the answer
// without search when the budget runs out.
SystoleResult min_weight_logical(const CellComplex& cx, int k, std::uint64_t budget = 50'000'000);

struct CodeParameters {
    std::size_t n_phys = 0;
    std::optional<std::uint64_t> gsd;
    std::uint64_t flat_sectors = 0;
    std::size_t distance = 0;
    bool distance_exact = false;
    std::vector<SystoleResult> systoles;
    nlohmann::json to_json() const;
};

// n_phys counts gauge qubits (a, b, c on l-, m-, n-cells). The distance is the
// least of the Wilson weights sys_k and the magnetic weights sys_{d-k} over
// the three species. gsd_monomial runs only when the orbit space is small.
CodeParameters code_parameters(const CellComplex& cx, int l, int m, int n, bool twist = true,
                               std::uint64_t budget = 50'000'000);

} // namespace cubic
