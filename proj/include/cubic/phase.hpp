#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "cubic/gf2.hpp"

namespace cubic {

// A monomial is a set of at most three qubit variables, packed as three
// 21-bit fields holding (var + 1) in increasing order. 0 is the constant 1.
using Monomial = std::uint64_t;

namespace mono {
constexpr int kMaxDegree = 3;
constexpr std::uint32_t kMaxVar = (1u << 21) - 2;

Monomial make(std::span<const std::uint32_t> vars);
inline Monomial one() { return 0; }
inline Monomial var(std::uint32_t v) { return static_cast<Monomial>(v) + 1; }
int degree(Monomial m);
// Writes the variables into out[0..degree) and returns the degree.
int vars(Monomial m, std::uint32_t out[3]);
// Product (z_v^2 = z_v). Throws when the degree would exceed 3.
Monomial mul(Monomial a, Monomial b);
bool eval(Monomial m, const BitVec& z);
} // namespace mono

// Z2-valued polynomial in qubit variables: a set of monomials under XOR.
class PhasePoly {
public:
    PhasePoly() = default;
    static PhasePoly constant(bool one);
    static PhasePoly variable(std::uint32_t v);
    static PhasePoly linear(std::span<const std::uint32_t> vars);
    // Canonicalizes a list of monomials: pairs cancel.
    static PhasePoly from_terms(std::vector<Monomial> terms);

    const std::vector<Monomial>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    int degree() const;
    bool constant_term() const { return !terms_.empty() && terms_.front() == 0; }
    std::vector<std::uint32_t> variables() const;

    PhasePoly& operator+=(const PhasePoly& o);
    friend PhasePoly operator+(PhasePoly a, const PhasePoly& b) { return a += b; }
    friend PhasePoly operator*(const PhasePoly& a, const PhasePoly& b);
    bool operator==(const PhasePoly& o) const = default;

    bool eval(const BitVec& z) const;
    // theta(z XOR m) as a polynomial in z; `flips` is sorted.
    PhasePoly shifted(std::span<const std::uint32_t> flips) const;
    // Substitutes each variable v by map(v) given as a linear polynomial
    // (constant allowed); variables not in the map stay.
    template <class Lookup>
    PhasePoly substitute(Lookup&& lookup) const;

    nlohmann::json to_json() const;
    static PhasePoly from_json(const nlohmann::json& j);

private:
    std::vector<Monomial> terms_;
};

// Projector onto {z : sum_{v in form} z_v = value}.
struct ParityCheck {
    std::vector<std::uint32_t> form; // sorted, distinct
    bool value = false;

    bool eval(const BitVec& z) const;
    ParityCheck shifted(std::span<const std::uint32_t> flips) const;
    auto operator<=>(const ParityCheck&) const = default;
};

// Monomial operator  T|z> = [checks(z)] (-1)^{negative + phase(z)} |z XOR xmask>.
// Checks and phase are evaluated on the configuration before the flip.
struct MagicOperator {
    std::vector<std::uint32_t> xmask; // sorted, distinct
    PhasePoly phase;
    std::vector<ParityCheck> checks; // sorted, distinct
    bool negative = false;
    bool zero = false;

    static MagicOperator identity() { return {}; }
    static MagicOperator zero_op();
    static MagicOperator pauli_x(std::vector<std::uint32_t> vars);
    static MagicOperator pauli_z(std::vector<std::uint32_t> vars);
    static MagicOperator diagonal(PhasePoly phase);
    static MagicOperator projector(std::vector<std::uint32_t> form, bool value);

    bool is_diagonal() const { return xmask.empty(); }
    // Every variable the operator reads (phase or checks), sorted.
    std::vector<std::uint32_t> read_vars() const;
    // Applies to a basis state in place; returns the coefficient 0, +1 or -1.
    int apply(BitVec& z) const;

    bool operator==(const MagicOperator& o) const = default;
    nlohmann::json to_json() const;
    static MagicOperator from_json(const nlohmann::json& j);
};

// Sorts and dedupes checks; an exact contradiction turns the operator into Zero.
void canonicalize_checks(MagicOperator& op);

// A * B (B acts first).
MagicOperator compose(const MagicOperator& A, const MagicOperator& B);
MagicOperator adjoint(const MagicOperator& A);
// Unique representative: checks in reduced echelon form, phase reduced onto
// the free variables, constant folded into the sign. Inconsistent checks give Zero.
MagicOperator normal_form(const MagicOperator& A);
// Operator equality.
bool equivalent(const MagicOperator& A, const MagicOperator& B);
bool commutes(const MagicOperator& A, const MagicOperator& B);

// Reduces `poly` modulo the affine constraints `checks`. Returns false if the
// checks are inconsistent. On success `poly` is rewritten over free variables
// only, so it vanishes on the constrained set iff it becomes zero.
bool reduce_modulo(PhasePoly& poly, const std::vector<ParityCheck>& checks);

template <class Lookup>
PhasePoly PhasePoly::substitute(Lookup&& lookup) const {
    std::vector<Monomial> out;
    for (Monomial m : terms_) {
        std::uint32_t vs[3];
        int k = mono::vars(m, vs);
        // Each factor is a linear form: list of monomials (degree <= 1).
        std::vector<Monomial> acc{mono::one()};
        for (int i = 0; i < k; ++i) {
            const PhasePoly* rep = lookup(vs[i]);
            std::vector<Monomial> next;
            if (!rep) {
                for (Monomial a : acc) next.push_back(mono::mul(a, mono::var(vs[i])));
            } else {
                for (Monomial a : acc)
                    for (Monomial b : rep->terms()) next.push_back(mono::mul(a, b));
            }
            acc = PhasePoly::from_terms(std::move(next)).terms_;
        }
        out.insert(out.end(), acc.begin(), acc.end());
    }
    return from_terms(std::move(out));
}

} // namespace cubic
