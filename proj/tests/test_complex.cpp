#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "cubic/complex.hpp"

using namespace cubic;

namespace {

std::size_t binom(int n, int k) {
    std::size_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

std::size_t ipow(std::size_t b, int e) {
    std::size_t r = 1;
    while (e--) r *= b;
    return r;
}

// Every (k-2)-cell appears an even number of times in the boundary of a boundary.
bool boundary_squares_to_zero(const CellComplex& cx) {
    for (int k = 2; k <= cx.dim(); ++k)
        for (std::uint32_t c = 0; c < cx.count(k); ++c) {
            std::vector<int> hits(cx.count(k - 2), 0);
            for (auto f : cx.boundary(k, c))
                for (auto g : cx.boundary(k - 1, f)) hits[g] ^= 1;
            for (int h : hits)
                if (h) return false;
        }
    return true;
}

} // namespace

TEST_CASE("hypercubic cell counts are binom(d,k) L^d") {
    for (int d : {2, 3, 4, 5})
        for (int L : {2, 3}) {
            auto cx = CellComplex::hypercubic_torus(d, L);
            for (int k = 0; k <= d; ++k) CHECK(cx.count(k) == binom(d, k) * ipow(L, d));
            CHECK(cx.euler_characteristic() == 0);
        }
}

TEST_CASE("Freudenthal tori have d! L^d top simplices and Euler characteristic 0") {
    for (int d : {2, 3}) {
        auto cx = CellComplex::freudenthal_torus(d, 2);
        std::size_t fact = 1;
        for (int i = 2; i <= d; ++i) fact *= i;
        CHECK(cx.count(d) == fact * ipow(2, d));
        CHECK(cx.count(0) == ipow(2, d));
        CHECK(cx.euler_characteristic() == 0);
    }
}

TEST_CASE("sphere from a simplex boundary") {
    auto s = CellComplex::parse("sphere:d=2");
    CHECK(s.dim() == 2);
    CHECK(s.count(0) == 4);
    CHECK(s.count(2) == 4);
    CHECK(s.euler_characteristic() == 2);
}

TEST_CASE("boundary of a boundary vanishes mod 2") {
    CHECK(boundary_squares_to_zero(CellComplex::hypercubic_torus(4, 2)));
    CHECK(boundary_squares_to_zero(CellComplex::hypercubic_torus(3, 3)));
    CHECK(boundary_squares_to_zero(CellComplex::freudenthal_torus(3, 2)));
    CHECK(boundary_squares_to_zero(CellComplex::parse("sphere:d=3")));
}

TEST_CASE("cofaces invert boundaries") {
    auto cx = CellComplex::freudenthal_torus(3, 3);
    for (int k = 1; k <= 3; ++k)
        for (std::uint32_t c = 0; c < cx.count(k); ++c)
            for (auto f : cx.boundary(k, c)) {
                auto co = cx.cofaces(k - 1, f);
                CHECK(std::find(co.begin(), co.end(), c) != co.end());
            }
}

TEST_CASE("parse accepts the documented specs and rejects garbage") {
    CHECK(CellComplex::parse("hypercubic:d=5,L=2").count(2) == 320);
    CHECK(CellComplex::parse("hypercubic:L=2x3x4").lengths() == std::vector<int>{2, 3, 4});
    CHECK(CellComplex::parse("freudenthal:d=3,L=2").is_kuhn());
    CHECK_THROWS(CellComplex::parse("klein:d=2"));
    CHECK_THROWS(CellComplex::parse("hypercubic:d=0,L=2"));
    CHECK_THROWS(CellComplex::parse("hypercubic:d=2"));
}

TEST_CASE("dual map is an involution up to the half-shift and flips degree") {
    auto cx = CellComplex::hypercubic_torus(4, 3);
    for (int k = 0; k <= 4; ++k)
        for (std::uint32_t c = 0; c < cx.count(k); c += 7) {
            CellRef p{k, c};
            CellRef d = dual_map(cx, p, Side::primal);
            CHECK(d.degree == 4 - k);
            CHECK(dual_map(cx, d, Side::dual) == p);
        }
}

TEST_CASE("vertex coordinates round-trip") {
    auto cx = CellComplex::hypercubic_torus(std::vector<int>{2, 3, 5});
    for (std::uint32_t v = 0; v < cx.num_vertices(); ++v) CHECK(cx.vertex_index(cx.vertex_coords(v)) == v);
}
