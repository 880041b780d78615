#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cubic/rng.hpp"
#include "cubic/stabilizer.hpp"

using namespace cubic;

namespace {

constexpr std::uint32_t kQubits = 6;

MagicOperator random_op(Rng& rng) {
    MagicOperator A;
    for (std::uint32_t v = 0; v < kQubits; ++v)
        if (rng.bit()) A.xmask.push_back(v);
    std::vector<Monomial> t;
    for (int k = 0; k < 4; ++k) {
        Monomial m = mono::one();
        const int deg = static_cast<int>(rng.below(4));
        for (int i = 0; i < deg; ++i) m = mono::mul(m, mono::var(static_cast<std::uint32_t>(rng.below(kQubits))));
        t.push_back(m);
    }
    A.phase = PhasePoly::from_terms(t);
    if (rng.bit()) {
        ParityCheck c;
        for (std::uint32_t v = 0; v < kQubits; ++v)
            if (rng.bit()) c.form.push_back(v);
        c.value = rng.bit();
        if (!c.form.empty()) A.checks.push_back(c);
    }
    A.negative = rng.bit();
    canonicalize_checks(A);
    return A;
}

BitVec basis(std::uint32_t z) {
    BitVec v(kQubits);
    for (std::uint32_t i = 0; i < kQubits; ++i) v.set(i, z >> i & 1u);
    return v;
}

// (A B)|z> by applying B then A to a basis state.
int apply_product(const MagicOperator& A, const MagicOperator& B, BitVec& z) {
    int c = B.apply(z);
    return c ? c * A.apply(z) : 0;
}

} // namespace

TEST_CASE("compose, normal_form and commutes agree with the dense action") {
    Rng rng(3);
    for (int t = 0; t < 500; ++t) {
        auto A = random_op(rng), B = random_op(rng);
        auto C = compose(A, B), N = normal_form(C);
        bool commute = true;
        for (std::uint32_t z = 0; z < (1u << kQubits); ++z) {
            BitVec w = basis(z), u = basis(z), r = basis(z);
            const int c1 = apply_product(A, B, w), c2 = C.apply(u), c3 = N.apply(r);
            CHECK(c1 == c2);
            CHECK(c2 == c3);
            if (c1) {
                CHECK(u == w);
                CHECK(r == w);
            }
            BitVec p = basis(z), q = basis(z);
            const int d1 = apply_product(A, B, p), d2 = apply_product(B, A, q);
            if (d1 != d2 || (d1 && !(p == q))) commute = false;
        }
        CHECK(commute == commutes(A, B));
    }
}

TEST_CASE("monomial action: coefficients are 0 or +-1 and one image state") {
    Rng rng(8);
    for (int t = 0; t < 200; ++t) {
        auto A = random_op(rng);
        BitVec z = basis(static_cast<std::uint32_t>(rng.below(1u << kQubits)));
        BitVec before = z;
        const int c = A.apply(z);
        CHECK((c == 0 || c == 1 || c == -1));
        BitVec expect = before;
        for (auto v : A.xmask) expect.flip(v);
        if (c) CHECK(z == expect);
    }
}

TEST_CASE("adjoint undoes the operator on its support") {
    Rng rng(12);
    for (int t = 0; t < 100; ++t) {
        auto A = random_op(rng);
        auto P = normal_form(compose(adjoint(A), A));
        CHECK(P.xmask.empty());
        for (std::uint32_t z = 0; z < (1u << kQubits); ++z) {
            BitVec w = basis(z);
            const int c = P.apply(w);
            CHECK((c == 0 || c == 1));
        }
    }
}

TEST_CASE("cubic Hamiltonians commute on small complexes") {
    for (auto [spec, l, m, n] : {std::tuple{"hypercubic:d=2,L=2", 1, 1, 1}, {"hypercubic:d=2,L=3", 1, 1, 1},
                                 {"freudenthal:d=2,L=2", 1, 1, 1}, {"hypercubic:d=3,L=2", 1, 1, 2},
                                 {"freudenthal:d=3,L=2", 1, 2, 1}}) {
        auto cx = CellComplex::parse(spec);
        for (bool twist : {true, false}) {
            auto h = build_cubic(cx, l, m, n, twist);
            auto r = commutation_suite(h);
            INFO(spec, " twist=", twist, " ", r.to_json(h).dump());
            CHECK(r.ok());
        }
    }
}

TEST_CASE("gauging without the flux checks breaks commutation") {
    auto cx = CellComplex::hypercubic_torus(2, 2);
    auto h = gauge(build_spt(cx, 1, 1, 1, true));
    CHECK_FALSE(commutation_suite(h).ok());
}

TEST_CASE("the SPT Hamiltonian is the entangler conjugate of the trivial one") {
    auto cx = CellComplex::hypercubic_torus(2, 2);
    Layout L(cx, 1, 1, 1);
    auto U = build_entangler(L);
    auto triv = build_trivial(cx, 1, 1, 1);
    auto spt = build_spt(cx, 1, 1, 1, true);
    REQUIRE(triv.terms.size() == spt.terms.size());
    CHECK(triv.terms.size() == 12);
    for (std::size_t i = 0; i < triv.terms.size(); ++i) CHECK(equivalent(conjugate(U, triv.terms[i].op), spt.terms[i].op));
}

TEST_CASE("the entangler leaves the all-zeros state with phase +1") {
    auto cx = CellComplex::hypercubic_torus(3, 2);
    Layout L(cx, 1, 1, 2);
    BitVec z(L.num_vars());
    CHECK(build_entangler(L).apply(z) == 1);
}

TEST_CASE("pulling the gauge fields back recovers the SPT decoration") {
    auto cx = CellComplex::hypercubic_torus(2, 2);
    Layout L(cx, 1, 1, 1);
    auto spt = build_spt(cx, 1, 1, 1, true);
    auto g = gauge(spt);
    for (const auto& t : g.terms) {
        if (t.kind != TermKind::gauss) continue;
        std::size_t offset = 0;
        for (int s = 1; s < t.species; ++s) offset += L.count(Layout::matter(s));
        CHECK(pull_back_gauge(t.op.phase, L) == spt.terms[offset + t.cell].op.phase);
    }
}

TEST_CASE("5D syndromes of single face errors") {
    auto cx = CellComplex::hypercubic_torus(5, 2);
    auto h = build_cubic(cx, 2, 2, 2, true);
    CHECK(h.terms.size() == 1440);
    const auto& L = h.layout;
    BitVec none(L.num_vars()), one(L.num_vars());
    one.set(L.var(Reg::a, 0));
    // A Z error on a face violates the Gauss terms on its 4 edges.
    auto sz = syndrome(h, none, one);
    CHECK(std::count(sz.begin(), sz.end(), -1) == 4);
    // An X error violates the 6 flux cubes around the face.
    auto sx = syndrome(h, one, none);
    int flux = 0;
    for (std::size_t i = 0; i < sx.size(); ++i)
        if (sx[i] == -1 && h.terms[i].kind == TermKind::flux) ++flux;
    CHECK(flux == 6);
}

TEST_CASE("a Z error never touches flux terms") {
    auto cx = CellComplex::hypercubic_torus(3, 2);
    auto h = build_cubic(cx, 1, 1, 2, true);
    Rng rng(4);
    BitVec none(h.layout.num_vars());
    for (int t = 0; t < 20; ++t) {
        BitVec z(h.layout.num_vars());
        for (std::size_t v = 0; v < z.size(); ++v) z.set(v, rng.bit());
        auto s = syndrome(h, none, z);
        for (std::size_t i = 0; i < s.size(); ++i)
            if (h.terms[i].kind == TermKind::flux) CHECK(s[i] == 1);
    }
}

TEST_CASE("layout rejects bad degrees") {
    auto cx = CellComplex::hypercubic_torus(2, 2);
    CHECK_THROWS(Layout(cx, 0, 1, 1));
    CHECK_THROWS(Layout(cx, 1, 1, 3));
}
