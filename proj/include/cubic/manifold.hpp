#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cubic/gf2.hpp"

namespace cubic {

// Mod-2 cohomology ring of a closed manifold presented as a monomial algebra:
// each basis class is a product of named generators, and a product of basis
// classes is the monomial with added exponents if that monomial is listed,
// zero otherwise. Elements are bit vectors over the basis classes.
class ManifoldModel {
public:
    struct Class {
        std::string name;
        int degree = 0;
        std::map<std::string, int> exponents;
    };

    static ManifoldModel from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;

    const std::string& name() const { return name_; }
    const std::string& description() const { return description_; }
    int dim() const { return dim_; }
    std::size_t size() const { return classes_.size(); }
    const Class& cls(std::size_t i) const { return classes_[i]; }
    std::optional<std::size_t> find(const std::string& name) const;
    std::size_t index(const std::string& name) const; // throws on unknown
    std::vector<std::size_t> basis(int degree) const;
    std::vector<int> betti() const;

    BitVec element(std::initializer_list<std::string> names) const;
    BitVec unit() const;
    BitVec cup(const BitVec& u, const BitVec& v) const;
    // Coefficient of the top class.
    bool integrate(const BitVec& u) const;
    int degree_of(const BitVec& u) const; // -1 for zero or mixed degree

    // u cup_1 v on the stored table (bilinear); throws if a needed entry is absent.
    BitVec cup1(const BitVec& u, const BitVec& v) const;
    bool has_cup1() const { return !cup1_.empty(); }

    // Pontryagin square integrated over the 4-dimensional slice (the whole
    // manifold when dim = 4, the Poincare dual of `slice` otherwise), in Z4.
    // Uses P(u + v) = P(u) + P(v) + 2 u v.
    int pontryagin(const BitVec& u) const;
    bool has_pontryagin() const { return pontryagin_defined_; }
    // Integral over the slice of u cup v.
    bool slice_integral(const BitVec& u, const BitVec& v) const;

    std::optional<std::size_t> w2() const { return w2_; }
    std::optional<std::size_t> w3() const { return w3_; }
    // Degree of the logical gauge fields for gate evaluation.
    int logical_degree() const { return logical_degree_; }

private:
    std::string name_, description_;
    int dim_ = 0;
    int logical_degree_ = 2;
    std::vector<std::string> generators_;
    std::vector<Class> classes_;
    std::map<std::map<std::string, int>, std::size_t> by_monomial_;
    std::size_t top_ = 0;
    std::map<std::pair<std::size_t, std::size_t>, BitVec> cup1_;
    bool pontryagin_defined_ = false;
    std::map<std::size_t, int> pontryagin_; // basis class -> Z4
    std::optional<std::size_t> slice_;
    std::optional<std::size_t> w2_, w3_;
};

// Catalog bundled in data/manifolds.json.
std::string default_manifold_catalog();
std::map<std::string, ManifoldModel> load_manifold_library(const std::string& path = default_manifold_catalog());
ManifoldModel manifold(const std::string& name);
// Consistency checks: associativity of cup on basis triples, Poincare duality
// of the top pairing, and the Pontryagin parity P(u) = u cup u mod 2.
std::vector<std::string> validate(const ManifoldModel& model);

} // namespace cubic
