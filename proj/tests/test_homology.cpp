#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cubic/homology.hpp"
#include "cubic/manifold.hpp"

using namespace cubic;

namespace {

std::vector<std::size_t> betti(const CellComplex& cx) {
    std::vector<std::size_t> b;
    for (int k = 0; k <= cx.dim(); ++k) b.push_back(homology_basis(cx, k).rank);
    return b;
}

} // namespace

TEST_CASE("Betti numbers of tori and spheres") {
    CHECK(betti(CellComplex::hypercubic_torus(2, 2)) == std::vector<std::size_t>{1, 2, 1});
    CHECK(betti(CellComplex::hypercubic_torus(5, 2)) == std::vector<std::size_t>{1, 5, 10, 10, 5, 1});
    CHECK(betti(CellComplex::freudenthal_torus(3, 2)) == std::vector<std::size_t>{1, 3, 3, 1});
    CHECK(betti(CellComplex::parse("sphere:d=2")) == std::vector<std::size_t>{1, 0, 1});
}

TEST_CASE("homology bases are closed and dual to each other") {
    auto cx = CellComplex::freudenthal_torus(3, 2);
    for (int k = 0; k <= 3; ++k) {
        auto hb = homology_basis(cx, k);
        for (std::size_t i = 0; i < hb.rank; ++i) {
            CHECK(is_cycle(cx, k, hb.cycles[i]));
            CHECK(is_cocycle(cx, k, hb.cocycles[i]));
            for (std::size_t j = 0; j < hb.rank; ++j) CHECK(hb.cocycles[i].dot(hb.cycles[j]) == (i == j));
        }
    }
}

TEST_CASE("flat sectors: lattice and manifold models agree") {
    auto lib = load_manifold_library();
    CHECK(enumerate_flat_sectors(cup_tensor(CellComplex::hypercubic_torus(2, 2), 1, 1, 1)).count == 22);
    CHECK(enumerate_flat_sectors(cup_tensor(CellComplex::freudenthal_torus(2, 3), 1, 1, 1)).count == 22);
    CHECK(enumerate_flat_sectors(cup_tensor(lib.at("t2"), 1, 1, 1)).count == 22);
    CHECK(enumerate_flat_sectors(cup_tensor(lib.at("s2s2s1"), 2, 2, 2)).count == 22);
    auto T4 = CellComplex::hypercubic_torus(4, 2);
    CHECK(enumerate_flat_sectors(cup_tensor(T4, 1, 2, 2)).count == enumerate_flat_sectors(cup_tensor(lib.at("t4"), 1, 2, 2)).count);
}

TEST_CASE("untwisted flat sectors count all class triples") {
    // With no twist every triple is flat: 2^(b1+b1+b1) on T^2.
    auto cx = CellComplex::hypercubic_torus(2, 2);
    auto h = build_cubic(cx, 1, 1, 1, false);
    CHECK(gsd_monomial(h).gsd == 64);
}

TEST_CASE("ground-space dimension matches brute force") {
    for (const char* spec : {"hypercubic:d=2,L=2", "sphere:d=2"}) {
        auto cx = CellComplex::parse(spec);
        for (bool twist : {true, false}) {
            auto h = build_cubic(cx, 1, 1, 1, twist);
            CHECK(gsd_monomial(h).gsd == gsd_bruteforce(h));
        }
    }
    auto T2 = CellComplex::hypercubic_torus(2, 2);
    auto S2 = CellComplex::parse("sphere:d=2");
    CHECK(gsd_monomial(build_cubic(T2, 1, 1, 1, true)).gsd == 22);
    CHECK(gsd_monomial(build_cubic(S2, 1, 1, 1, true)).gsd == 1);
}

TEST_CASE("systoles of small tori") {
    auto s = min_weight_logical(CellComplex::hypercubic_torus(2, 3), 1);
    CHECK(s.exact);
    CHECK(s.value == 3);
    auto T5 = CellComplex::hypercubic_torus(5, 2);
    auto s2 = min_weight_logical(T5, 2);
    CHECK(s2.exact);
    CHECK(s2.value == 4);
    CHECK(is_cycle(T5, 2, s2.witness));
    CHECK(s2.witness.popcount() == 4);
    auto s3 = min_weight_logical(T5, 3);
    CHECK(s3.value == 8);
}

TEST_CASE("systole witnesses are homologically nontrivial") {
    auto cx = CellComplex::freudenthal_torus(3, 2);
    auto s = min_weight_logical(cx, 1);
    CHECK(s.value == 2);
    auto hb = homology_basis(cx, 1);
    bool nontrivial = false;
    for (const auto& c : hb.cocycles) nontrivial = nontrivial || c.dot(s.witness);
    CHECK(nontrivial);
}

TEST_CASE("code parameters of the 5D model at L = 2") {
    auto p = code_parameters(CellComplex::hypercubic_torus(5, 2), 2, 2, 2);
    CHECK(p.n_phys == 960);
    CHECK(p.distance == 4);
    CHECK(p.distance_exact);
}

TEST_CASE("bundled manifold models validate") {
    for (const auto& [name, m] : load_manifold_library()) {
        auto errs = validate(m);
        INFO(name);
        CHECK(errs.empty());
    }
}

TEST_CASE("manifold ring arithmetic") {
    auto m = manifold("cp2");
    auto x = m.element({"x"});
    CHECK(m.integrate(m.cup(x, x)));
    CHECK(m.pontryagin(x) == 1);
    CHECK(m.betti() == std::vector<int>{1, 0, 1, 0, 1});
    auto wu = manifold("wu");
    auto w2 = wu.element({"w2"});
    CHECK(wu.cup1(w2, w2) == wu.element({"w3"}));
    CHECK_THROWS(manifold("no-such-model"));
}
