#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <deque>

#include "cubic/saw.hpp"
#include "cubic/stabilizer.hpp"
#include "cubic/thermal.hpp"

using namespace cubic;

TEST_CASE("acceptance rule") {
    UpdateRule r{RuleKind::metropolis, 2.0};
    CHECK(r.accept(0) == 0.5);
    CHECK(r.accept(-4) == 1.0);
    CHECK(r.accept(8) == doctest::Approx(std::exp(-16.0)).epsilon(1e-15));
    auto g = UpdateRule::greedy();
    CHECK(g.accept(2) == 0.0);
    CHECK(g.accept(-2) == 1.0);
    CHECK(g.accept(0) == 0.5);
}

TEST_CASE("detailed balance for both rules") {
    for (RuleKind k : {RuleKind::metropolis, RuleKind::heat_bath})
        for (double beta : {0.1, 0.7, 2.0})
            for (double dE : {2.0, 4.0, 6.0, 12.0, 24.0}) {
                UpdateRule r{k, beta};
                CHECK(r.accept(dE) / r.accept(-dE) == doctest::Approx(std::exp(-beta * dE)).epsilon(1e-12));
            }
}

TEST_CASE("rate table from lattice moves") {
    const double beta = 1.3;
    auto rows = rate_table(CellComplex::hypercubic_torus(5, 3), beta);
    REQUIRE(rows.size() == 7);
    const double expect_dE[7] = {8, 4, 0, 36, 24, 12, 0};
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].dE == expect_dE[i]);
        CHECK(rows[i].ratio == doctest::Approx(rows[i].expected).epsilon(1e-14));
    }
}

TEST_CASE("incremental energy matches recomputation") {
    auto cx = CellComplex::hypercubic_torus(4, 3);
    for (bool loop : {true, false}) {
        auto s = loop ? loop_sector(cx, 2, 3) : membrane_sector(cx, 2, 1);
        LatticeState st(s);
        Rng rng(7);
        for (int i = 0; i < 10000; ++i) {
            const int sp = static_cast<int>(rng.below(s.species));
            const auto q = static_cast<std::uint32_t>(rng.below(s.qubits()));
            const double before = st.energy(), dE = st.delta(sp, q);
            st.flip(sp, q);
            CHECK(st.energy() - before == dE);
        }
        CHECK(st.consistent());
    }
}

TEST_CASE("greedy decoder removes single errors exactly") {
    auto cx = CellComplex::hypercubic_torus(4, 3);
    for (bool loop : {true, false}) {
        auto s = loop ? loop_sector(cx, 2, 1) : membrane_sector(cx, 2, 1);
        for (std::uint32_t q = 0; q < s.qubits(); q += 13) {
            LatticeState st(s);
            st.flip(0, q);
            CHECK(st.violated() == (loop ? 4u : 4u));
            Rng rng(q);
            auto r = ca_decode(st, std::numeric_limits<double>::infinity(), rng, 50);
            CHECK(r.clean);
            CHECK(r.recovery[0].popcount() == 1);
            CHECK(r.recovery[0].get(q));
        }
    }
}

TEST_CASE("single face X error in 5D makes 6 flux cubes and is corrected") {
    auto cx = CellComplex::hypercubic_torus(5, 3);
    auto s = membrane_sector(cx, 2, 1);
    LatticeState st(s);
    st.flip(0, 17);
    CHECK(st.violated() == 6);
    CHECK(st.energy() == 36);
    Rng rng(1);
    auto r = ca_decode(st, std::numeric_limits<double>::infinity(), rng, 50);
    CHECK(r.clean);
    CHECK(r.recovery[0].popcount() == 1);
}

TEST_CASE("separated errors are corrected locally") {
    auto cx = CellComplex::hypercubic_torus(4, 6);
    auto s = loop_sector(cx, 2, 1);
    LatticeState st(s);
    const std::uint32_t f1 = cx.cube_index(cx.vertex_index(std::vector<int>{0, 0, 0, 0}), 0b0011);
    const std::uint32_t f2 = cx.cube_index(cx.vertex_index(std::vector<int>{3, 3, 3, 3}), 0b0110);
    st.flip(0, f1);
    st.flip(0, f2);
    Rng rng(2);
    auto r = ca_decode(st, std::numeric_limits<double>::infinity(), rng, 50);
    CHECK(r.clean);
    CHECK(r.recovery[0].popcount() == 2);
    CHECK(r.recovery[0].get(f1));
    CHECK(r.recovery[0].get(f2));
}

TEST_CASE("decoder recovery stays near the initial syndrome") {
    auto cx = CellComplex::hypercubic_torus(4, 6);
    auto s = loop_sector(cx, 2, 1);
    Rng rng(11);
    std::size_t worst = 0;
    for (int t = 0; t < 50; ++t) {
        LatticeState st(s);
        // A small cluster: a random face and up to two neighbours through shared checks.
        std::uint32_t q = static_cast<std::uint32_t>(rng.below(s.qubits()));
        st.flip(0, q);
        for (int e = 0; e < 2; ++e) {
            const auto& ch = s.qubit_checks[q];
            const auto& nb = s.check_qubits[ch[rng.below(ch.size())]];
            q = nb[rng.below(nb.size())];
            st.flip(0, q);
        }
        // Qubit-hop distance from the initial syndrome.
        std::vector<int> dist(s.checks(), -1);
        std::deque<std::uint32_t> queue;
        for (std::uint32_t c = 0; c < s.checks(); ++c)
            if (st.syndrome(0).get(c)) {
                dist[c] = 0;
                queue.push_back(c);
            }
        while (!queue.empty()) {
            auto c = queue.front();
            queue.pop_front();
            for (auto f : s.check_qubits[c])
                for (auto c2 : s.qubit_checks[f])
                    if (dist[c2] < 0) {
                        dist[c2] = dist[c] + 1;
                        queue.push_back(c2);
                    }
        }
        const bool had_syndrome = st.violated() > 0;
        auto r = ca_decode(st, std::numeric_limits<double>::infinity(), rng, 100);
        CHECK(r.clean);
        if (!had_syndrome) continue;
        for (auto f : r.recovery[0].ones()) {
            std::size_t near = SIZE_MAX;
            for (auto c : s.qubit_checks[f]) near = std::min<std::size_t>(near, dist[c]);
            worst = std::max(worst, near);
        }
    }
    CHECK(worst <= 2);
}

TEST_CASE("loop-sector noise never raises a flux syndrome") {
    auto cx = CellComplex::hypercubic_torus(4, 2);
    auto h = build_toric(cx, 2);
    auto s = loop_sector(cx, 2, 1);
    LatticeState st(s);
    Rng rng(12);
    const BitVec none(h.layout.num_vars());
    for (int sweep = 0; sweep < 30; ++sweep) {
        bath_sweep(st, {0.4, 1.0, RuleKind::metropolis}, rng);
        BitVec z(h.layout.num_vars());
        for (auto f : st.error(0).ones()) z.set(h.layout.var(Reg::a, f));
        auto syn = syndrome(h, none, z);
        std::size_t gauss = 0;
        for (std::size_t i = 0; i < syn.size(); ++i) {
            if (h.terms[i].kind == TermKind::flux) CHECK(syn[i] == 1);
            else gauss += syn[i] == -1;
        }
        CHECK(gauss == st.violated());
    }
}

TEST_CASE("decoder leaves a clean state alone") {
    auto cx = CellComplex::hypercubic_torus(4, 2);
    auto s = loop_sector(cx, 2, 1);
    LatticeState st(s);
    Rng rng(3);
    auto r = ca_decode(st, std::numeric_limits<double>::infinity(), rng, 10);
    CHECK(r.clean);
    CHECK(r.passes == 0);
    CHECK_FALSE(r.recovery[0].any());
}

TEST_CASE("a noncontractible error changes the logical class") {
    auto cx = CellComplex::hypercubic_torus(4, 3);
    auto s = loop_sector(cx, 2, 1);
    LatticeState st(s);
    // The xy-plane at z = w = 0 is a closed 2-chain wrapping the torus.
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y) st.flip(0, cx.cube_index(cx.vertex_index(std::vector<int>{x, y, 0, 0}), 0b0011));
    CHECK(st.violated() == 0);
    auto cls = st.logical_class();
    CHECK(cls[0].any());
}

TEST_CASE("no bath noise at infinite beta") {
    auto cx = CellComplex::hypercubic_torus(4, 2);
    auto s = loop_sector(cx, 2, 1);
    LatticeState st(s);
    Rng rng(4);
    for (int i = 0; i < 20; ++i) bath_sweep(st, {std::numeric_limits<double>::infinity(), 1.0, RuleKind::metropolis}, rng);
    CHECK(st.violated() == 0);
    CHECK_FALSE(st.error(0).any());
}

TEST_CASE("memory experiment at infinite temperature loses the qubit") {
    auto cx = CellComplex::hypercubic_torus(4, 2);
    ExperimentConfig c;
    c.beta = 0;
    c.sweeps = 20;
    c.trials = 60;
    c.decode_passes = 200;
    auto r = memory_experiment(cx, c);
    CHECK(r.p_fail() > 0.8);
}

TEST_CASE("experiments are reproducible and thread-count independent") {
    auto cx = CellComplex::hypercubic_torus(4, 2);
    ExperimentConfig c;
    c.beta = 0.6;
    c.sweeps = 10;
    c.trials = 40;
    auto a = memory_experiment(cx, c);
    c.threads = 3;
    auto b = memory_experiment(cx, c);
    CHECK(a.outcomes == b.outcomes);
    CHECK(a.csv_row() == b.csv_row());
    c.seed = 99;
    auto p1 = estimate_p_crit(cx, c), p2 = estimate_p_crit(cx, c);
    CHECK(p1.outcomes == p2.outcomes);
}

TEST_CASE("P_crit vanishes at infinite beta") {
    auto cx = CellComplex::hypercubic_torus(4, 3);
    ExperimentConfig c;
    c.beta = std::numeric_limits<double>::infinity();
    c.trials = 5;
    c.sweeps = 5;
    CHECK(estimate_p_crit(cx, c).failures == 0);
}

TEST_CASE("Wilson interval") {
    auto [lo, hi] = wilson_interval(0, 200);
    CHECK(lo == 0.0);
    CHECK(hi == doctest::Approx(0.018845).epsilon(1e-4));
    auto [a, b] = wilson_interval(50, 100);
    CHECK(a == doctest::Approx(0.40383).epsilon(1e-4));
    CHECK(b == doctest::Approx(0.59617).epsilon(1e-4));
    CHECK(wilson_interval(10, 10).second == 1.0);
}

TEST_CASE("critical temperature formulas") {
    CHECK(critical_temperature_mu(8.84) == doctest::Approx(2.0 / std::log(8.84)));
    CHECK(critical_temperature(1, 5).value == doctest::Approx(2.0 / std::log(18.0)));
    auto z = critical_temperature(0, 5);
    CHECK(z.value == 0.0);
    CHECK(z.unstable);
    CHECK(critical_temperature(2, 5, 3.0).value == doctest::Approx(6.0 / std::log(32.0)));
    CHECK_THROWS(critical_temperature(10, 5));
    // Membranes (k = 2) set the lower temperature in 5D.
    CHECK(critical_temperature_cubic(5, 2, 2, 2).value == doctest::Approx(2.0 / std::log(32.0)));
    CHECK(critical_temperature_cubic(2, 1, 1, 1).unstable);
}

TEST_CASE("exact SAW counts") {
    auto c2 = saw_counts(2, 16);
    CHECK(c2[1] == 4);
    CHECK(c2[2] == 12);
    CHECK(c2[10] == 44100);
    CHECK(c2[16] == 17245332);
    auto c3 = saw_counts(3, 6);
    CHECK(c3[1] == 6);
    CHECK(c3[2] == 30);
    CHECK(c3[6] == 16926);
    // Upper bound 2d (2d - 1)^(n-1).
    auto c5 = saw_counts(5, 5);
    CHECK(c5[3] <= 10u * 9 * 9);
}

TEST_CASE("connective constant estimates") {
    auto f2 = saw_entropy({2});
    CHECK(f2.mu == doctest::Approx(2.638).epsilon(0.03));
    auto f4 = saw_entropy({4});
    CHECK(f4.mu >= 6.0);
    CHECK(f4.mu <= 7.5);
    auto f5 = saw_entropy({5});
    CHECK(f5.mu >= 8.0);
    CHECK(f5.mu <= 9.5);
    auto again = saw_entropy({5});
    CHECK(again.mu == f5.mu);
}
