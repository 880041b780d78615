#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "cubic/complex.hpp"
#include "cubic/gf2.hpp"
#include "cubic/rng.hpp"

namespace cubic {

enum class Species : std::uint8_t { none = 0, a = 1, b = 2, c = 3 };

std::string species_name(Species s);
Species parse_species(const std::string& s);

// Z2 k-cochain: one bit per k-cell.
class Cochain {
public:
    Cochain(const CellComplex& cx, int degree, Species sp = Species::none);
    Cochain(CellComplex&&, int, Species = Species::none) = delete; // keeps a pointer to the complex

    static Cochain indicator(const CellComplex& cx, int degree, std::uint32_t cell, Species sp = Species::none);
    static Cochain random(const CellComplex& cx, int degree, Rng& rng, Species sp = Species::none);

    const CellComplex& complex() const { return *cx_; }
    int degree() const { return degree_; }
    Species species() const { return species_; }
    std::size_t size() const { return bits_.size(); }

    bool get(std::uint32_t i) const { return bits_.get(i); }
    void set(std::uint32_t i, bool v = true) { bits_.set(i, v); }
    void flip(std::uint32_t i) { bits_.flip(i); }
    const BitVec& bits() const { return bits_; }
    BitVec& bits() { return bits_; }

    bool is_zero() const { return !bits_.any(); }
    std::size_t weight() const { return bits_.popcount(); }
    std::vector<std::uint32_t> support() const { return bits_.ones(); }

    Cochain& operator+=(const Cochain& o);
    friend Cochain operator+(Cochain a, const Cochain& b) { return a += b; }
    bool operator==(const Cochain& o) const;

    nlohmann::json to_json() const;
    static Cochain from_json(const CellComplex& cx, const nlohmann::json& j);

private:
    const CellComplex* cx_;
    int degree_;
    Species species_;
    BitVec bits_;
};

// Mod-2 coboundary. On a top-degree cochain the result lives on the empty
// set of (d+1)-cells.
Cochain coboundary(const Cochain& a);
Cochain cup(const Cochain& a, const Cochain& b);
Cochain cup1(const Cochain& a, const Cochain& b);

// Parity of a over the given k-cells, or over all top cells (fundamental class).
bool integrate(const Cochain& a, std::span<const std::uint32_t> region);
bool integrate(const Cochain& a);

// Integral of the Pontryagin square of a closed 2-cochain, in Z4. Uses the
// 0/1 integer lift: P(b) = b~ cup b~ + b~ cup_1 d b~ (mod 4).
int pontryagin_integral(const Cochain& b);

// Integer coboundary of the 0/1 lift of a; entries indexed by (k+1)-cells.
std::vector<int> integer_coboundary(const Cochain& a);

// Tori only: the 1-cocycle counting crossings of the seam x_axis = L-1 -> 0.
Cochain wrap_cocycle(const CellComplex& cx, int axis);
// Tori only: cup product of the wrap cocycles of the given axes in increasing
// order. These represent a basis of H^k(T^d) as `axes` runs over k-subsets.
Cochain torus_cocycle(const CellComplex& cx, std::uint32_t axes);
bool is_torus(const CellComplex& cx);

// Mod-2 cocycle space of degree k (dense nullspace of d_k; small complexes).
std::vector<BitVec> cocycle_basis(const CellComplex& cx, int k);
// Random closed k-cochain: a random coboundary plus a random cohomology class
// (torus representatives on tori, the dense cocycle basis otherwise).
Cochain random_closed(const CellComplex& cx, int k, Rng& rng, Species sp = Species::none);

struct IdentityCheck {
    std::string name;
    std::size_t trials = 0;
    std::size_t failures = 0;
};

struct IdentityReport {
    std::string complex;
    std::vector<IdentityCheck> checks;
    bool ok() const;
    nlohmann::json to_json() const;
};

// Random-cochain checks of d∘d = 0, the Leibniz rule, the cup-1 coboundary
// relation, and the integrated exchange relation for closed a, b, c.
IdentityReport identity_suite(const CellComplex& cx, std::size_t trials, std::uint64_t seed);

} // namespace cubic
