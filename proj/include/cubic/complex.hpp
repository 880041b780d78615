#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

namespace cubic {

enum class ComplexKind { hypercubic, simplicial };

struct CellRef {
    int degree = 0;
    std::uint32_t index = 0;
    bool operator==(const CellRef&) const = default;
};

// Finite cell complex with mod-2 incidence. Two families are supported:
// periodic hypercubic lattices, and branched simplicial complexes whose
// simplices carry their vertices in increasing global order. The Freudenthal
// torus is a Delta-complex at L = 2 (distinct simplices can share a vertex
// set), so simplices are keyed by their Kuhn label, not by vertex sets.
class CellComplex {
public:
    static CellComplex hypercubic_torus(const std::vector<int>& lengths);
    static CellComplex hypercubic_torus(int d, int L) { return hypercubic_torus(std::vector<int>(d, L)); }
    static CellComplex freudenthal_torus(int d, int L);
    // Boundary of the standard (d+1)-simplex: a simplicial d-sphere.
    static CellComplex simplex_boundary(int d);

    // "hypercubic:d=5,L=2", "hypercubic:L=2x3x4", "freudenthal:d=3,L=2", "sphere:d=2"
    static CellComplex parse(const std::string& spec);
    static CellComplex from_json(const nlohmann::json& j);
    nlohmann::json describe() const;
    std::string name() const;

    ComplexKind kind() const { return kind_; }
    bool is_hypercubic() const { return kind_ == ComplexKind::hypercubic; }
    int dim() const { return d_; }
    const std::vector<int>& lengths() const { return lengths_; }
    std::size_t count(int k) const { return (k < 0 || k > d_) ? 0 : counts_[k]; }
    std::vector<std::size_t> counts() const { return counts_; }
    std::int64_t euler_characteristic() const;

    std::span<const std::uint32_t> boundary(int k, std::uint32_t i) const;
    // Oriented boundary coefficients (+1/-1), aligned with boundary().
    std::span<const std::int8_t> boundary_signs(int k, std::uint32_t i) const;
    std::span<const std::uint32_t> cofaces(int k, std::uint32_t i) const;
    std::vector<std::uint32_t> boundary_of(CellRef c) const;
    std::vector<std::uint32_t> cofaces_of(CellRef c) const;
    std::vector<std::uint32_t> cells_of_dim(int k) const;
    // Orientation of each top cell making the sum of top cells an integral cycle.
    int orientation(std::uint32_t top) const { return orient_[top]; }

    // Hypercubic addressing: a k-cell is (base vertex, direction mask).
    std::size_t num_vertices() const { return nverts_; }
    std::uint32_t vertex_index(std::span<const int> coords) const;
    std::vector<int> vertex_coords(std::uint32_t v) const;
    std::uint32_t shift(std::uint32_t v, int axis, int delta) const;
    std::uint32_t shift_mask(std::uint32_t v, std::uint32_t mask, int delta = 1) const;
    std::uint32_t cube_index(std::uint32_t base, std::uint32_t dirmask) const;
    std::uint32_t cube_base(int /*k*/, std::uint32_t i) const { return i % nverts_; }
    std::uint32_t cube_dirs(int k, std::uint32_t i) const { return dirs_[k][i / nverts_]; }
    const std::vector<std::uint32_t>& direction_masks(int k) const { return dirs_[k]; }

    // Simplicial addressing.
    std::span<const std::uint32_t> simplex_vertices(int k, std::uint32_t i) const;
    // Face spanned by the given positions (increasing) of the sorted vertex list.
    std::uint32_t subsimplex(int k, std::uint32_t i, std::span<const int> positions) const;
    // Subsimplex on the contiguous position range [from, to].
    std::uint32_t subrange(int k, std::uint32_t i, int from, int to) const;
    // Freudenthal tori: simplex = chain from base vertex, axis a entering at step rank[a] (0 = never).
    bool is_kuhn() const { return kuhn_; }
    std::uint32_t kuhn_base(int k, std::uint32_t i) const { return sbase_[k][i]; }
    const std::vector<int>& kuhn_rank(int k, std::uint32_t i) const { return srank_[k][i]; }
    const std::string& family() const { return family_; }

private:
    void finish_incidence();
    std::uint64_t label_key(std::uint32_t base, const std::vector<int>& rank) const;

    ComplexKind kind_ = ComplexKind::hypercubic;
    std::string family_;
    int d_ = 0;
    std::vector<int> lengths_;
    std::size_t nverts_ = 0;
    std::vector<std::size_t> counts_;

    std::vector<std::vector<std::uint32_t>> bnd_off_, bnd_;
    std::vector<std::vector<std::int8_t>> bnd_sign_;
    std::vector<std::vector<std::uint32_t>> cob_off_, cob_;
    std::vector<int> orient_;

    // hypercubic
    std::vector<std::vector<std::uint32_t>> dirs_;
    std::vector<std::vector<int>> dir_pos_;
    std::vector<std::uint32_t> strides_;

    // simplicial
    std::vector<std::vector<std::uint32_t>> verts_;         // flat, (k+1) per simplex, sorted
    std::vector<std::vector<std::uint8_t>> chainpos_;       // flat, chain position of each sorted vertex
    std::vector<std::vector<std::uint32_t>> sbase_;         // Kuhn base vertex
    std::vector<std::vector<std::vector<int>>> srank_;      // Kuhn block index per axis
    std::vector<std::unordered_map<std::uint64_t, std::uint32_t>> lookup_;
    bool kuhn_ = false;
};

enum class Side { primal, dual };

// Poincare dual cell on the lattice shifted by (1/2,...,1/2). A primal k-cell
// maps to a dual (d-k)-cell and vice versa; `from` says which lattice the
// input lives on. Dual cells are indexed like primal cells of the same
// torus: dual cell (y, T) has its base corner at y + (1/2,...,1/2).
CellRef dual_map(const CellComplex& cx, CellRef cell, Side from = Side::primal);

} // namespace cubic
