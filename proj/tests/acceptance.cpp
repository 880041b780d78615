// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "cubic/cochain.hpp"
#include "cubic/homology.hpp"
#include "cubic/logical.hpp"
#include "cubic/manifold.hpp"
#include "cubic/rng.hpp"
#include "cubic/saw.hpp"
#include "cubic/stabilizer.hpp"
#include "cubic/thermal.hpp"

using namespace cubic;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& name, const std::function<Outcome()>& fn) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
        o = fn();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(Clock::now() - t0).count();
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << id << "] " << name << ": " << o.detail << " (" << std::fixed
              << std::setprecision(1) << s << " s)" << std::defaultfloat << std::endl;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// Independent oracle for the Borromean phase: dual rectangles as continuum
// squares, normal coordinate level + 1/2, spanning [lo - 1/2, hi + 1/2].
int triple_point(const DualRect& A, const DualRect& B, const DualRect& C, int L) {
    const DualRect* by_normal[3] = {nullptr, nullptr, nullptr};
    for (const DualRect* r : {&A, &B, &C}) by_normal[r->normal] = r;
    if (A.empty() || B.empty() || C.empty()) return 1;
    for (const DualRect* r : {&A, &B, &C}) {
        int t = 0;
        for (int a = 0; a < 3; ++a) {
            if (a == r->normal) continue;
            double x = by_normal[a]->level + 0.5;
            while (x < r->lo[t] - 0.5) x += L;
            while (x >= r->lo[t] - 0.5 + L) x -= L;
            if (!(x > r->lo[t] - 0.5 && x < r->hi[t] + 0.5)) return 1;
            ++t;
        }
    }
    return -1;
}

bool degenerate(const DualRect& A, const DualRect& B, const DualRect& C, int L) {
    const DualRect* by_normal[3] = {nullptr, nullptr, nullptr};
    for (const DualRect* r : {&A, &B, &C}) by_normal[r->normal] = r;
    for (const DualRect* r : {&A, &B, &C}) {
        int t = 0;
        for (int a = 0; a < 3; ++a) {
            if (a == r->normal) continue;
            const int v = by_normal[a]->level;
            if (((v - r->hi[t]) % L + L) % L == 0 || ((v + 1 - r->lo[t]) % L + L) % L == 0) return true;
            ++t;
        }
    }
    return false;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(CUBIC_CLI) + " " + args + " > /dev/null 2>&1";
    const int raw = std::system(cmd.c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

ExperimentResult memory(const std::string& spec, const std::string& model, bool pcrit = false, std::size_t trials = 200) {
    ExperimentConfig c;
    c.complex = spec;
    c.model = model;
    c.sector = "loop";
    c.degree = 2;
    c.beta = 2.0;
    c.sweeps = 100;
    c.trials = trials;
    c.seed = 2024;
    auto cx = CellComplex::parse(spec);
    return pcrit ? estimate_p_crit(cx, c) : memory_experiment(cx, c);
}

std::string fmt_result(const ExperimentResult& r) {
    std::ostringstream os;
    os << "L=" << r.L << " " << r.failures << "/" << r.trials << " [" << r.ci_lo << "," << r.ci_hi << "]";
    return os.str();
}

} // namespace

int main() {
    criterion(1, "cochain identities", [] {
        const auto t0 = Clock::now();
        std::ostringstream os;
        bool ok = true;
        for (const char* spec : {"freudenthal:d=3,L=2", "hypercubic:d=4,L=2"}) {
            auto r = identity_suite(CellComplex::parse(spec), 1000, 1);
            ok = ok && r.ok();
            std::size_t fails = 0;
            for (const auto& c : r.checks) fails += c.failures;
            os << spec << " failures=" << fails << "; ";
        }
        const double s = seconds_since(t0);
        os << "runtime " << s << " s";
        return Outcome{ok && s < 60, os.str()};
    });

    criterion(2, "commutation", [] {
        std::ostringstream os;
        bool ok = true;
        for (auto [spec, k] : {std::pair{"hypercubic:d=2,L=2", 1}, {"hypercubic:d=2,L=3", 1}, {"hypercubic:d=5,L=2", 2}}) {
            auto cx = CellComplex::parse(spec);
            auto h = build_cubic(cx, k, k, k, true);
            auto r = commutation_suite(h);
            ok = ok && r.ok();
            os << spec << " terms=" << h.terms.size() << (r.ok() ? " ok; " : " FAILED; ");
        }
        return Outcome{ok, os.str()};
    });

    criterion(3, "ground-space counts", [] {
        const auto t0 = Clock::now();
        auto flat_s2s2s1 = enumerate_flat_sectors(cup_tensor(manifold("s2s2s1"), 2, 2, 2)).count;
        auto T2 = CellComplex::hypercubic_torus(2, 2);
        auto twisted = gsd_monomial(build_cubic(T2, 1, 1, 1, true)).gsd;
        auto flat_t2 = enumerate_flat_sectors(cup_tensor(T2, 1, 1, 1)).count;
        auto untwisted = gsd_monomial(build_cubic(T2, 1, 1, 1, false)).gsd;
        const double s = seconds_since(t0);
        std::ostringstream os;
        os << "S2xS2xS1 flat=" << flat_s2s2s1 << " T2 gsd=" << twisted << " flat=" << flat_t2 << " untwisted=" << untwisted;
        return Outcome{flat_s2s2s1 == 22 && twisted == 22 && flat_t2 == 22 && untwisted == 64 && s < 300, os.str()};
    });

    criterion(4, "code parameters", [] {
        const auto t0 = Clock::now();
        auto p2 = code_parameters(CellComplex::hypercubic_torus(5, 2), 2, 2, 2);
        std::size_t sys2 = 0, sys3 = 0;
        bool exhaustive = true;
        for (const auto& s : p2.systoles) {
            if (s.degree == 2) sys2 = s.value;
            if (s.degree == 3) sys3 = s.value;
            exhaustive = exhaustive && s.exact && s.method == "exhaustive";
        }
        auto p3 = code_parameters(CellComplex::hypercubic_torus(5, 3), 2, 2, 2);
        const double expo = std::log(double(p3.distance) / p2.distance) / std::log(double(p3.n_phys) / p2.n_phys);
        const double s = seconds_since(t0);
        std::ostringstream os;
        os << "L=2 n=" << p2.n_phys << " d=" << p2.distance << " sys2=" << sys2 << " sys3=" << sys3
           << (exhaustive ? " (exhaustive)" : " (not exhaustive)") << "; L=3 n=" << p3.n_phys << " d=" << p3.distance
           << (p3.distance_exact ? " exact" : " bound") << "; exponent=" << std::setprecision(15) << expo;
        const bool ok = p2.n_phys == 960 && p2.distance == 4 && sys2 == 4 && sys3 == 8 && exhaustive && p3.distance_exact &&
                        std::abs(expo - 0.4) < 1e-12 && s < 1800;
        return Outcome{ok, os.str()};
    });

    criterion(5, "braiding, fusion and Borromean phase", [] {
        auto T5 = CellComplex::hypercubic_torus(5, 2);
        auto h = build_cubic(T5, 2, 2, 2, true);
        auto M1 = magnetic(h.layout, 1, 0b00111u), M2 = magnetic(h.layout, 2, 0b11001u);
        const bool braid_zero = braiding_commutator(M1.op, M2.op).zero;
        const std::size_t fusion = fusion_square(M1).terms.size();

        auto T3 = CellComplex::hypercubic_torus(3, 8);
        auto phase = [&](const DualRect& a, const DualRect& b, const DualRect& c) {
            return borromean_phase(dual_cochain(T3, a), dual_cochain(T3, b), dual_cochain(T3, c));
        };
        DualRect a{2, 4, {2, 3}, {6, 5}}, b{0, 4, {2, 3}, {6, 5}}, c{1, 4, {3, 2}, {5, 6}}, far = c;
        far.lo[0] = 6;
        far.hi[0] = 7;
        const int linked = phase(a, b, c);
        bool controls = true;
        for (auto [x, y, z] : {std::tuple{a, b, far}, {a, b, DualRect{}}, {a, DualRect{}, c}, {DualRect{}, b, c}})
            controls = controls && phase(x, y, z) == 1 && triple_point(x, y, z, 8) == 1;
        // Random rectangles against the continuum oracle.
        Rng rng(17);
        int checked = 0, mismatches = 0;
        while (checked < 200) {
            DualRect r[3];
            for (int i = 0; i < 3; ++i) {
                r[i].normal = i == 0 ? 2 : i == 1 ? 0 : 1;
                r[i].level = static_cast<int>(rng.below(8));
                for (int t = 0; t < 2; ++t) {
                    r[i].lo[t] = static_cast<int>(rng.below(8));
                    r[i].hi[t] = r[i].lo[t] + static_cast<int>(rng.below(7));
                }
            }
            if (degenerate(r[0], r[1], r[2], 8)) continue;
            ++checked;
            mismatches += phase(r[0], r[1], r[2]) != triple_point(r[0], r[1], r[2], 8);
        }
        std::ostringstream os;
        os << "braid " << (braid_zero ? "Zero" : "nonzero") << "; fusion terms=" << fusion << "; Borromean=" << linked
           << " oracle=" << triple_point(a, b, c, 8) << "; controls " << (controls ? "+1" : "FAILED")
           << "; oracle mismatches " << mismatches << "/" << checked;
        return Outcome{braid_zero && fusion == 64 && linked == -1 && triple_point(a, b, c, 8) == -1 && controls && mismatches == 0,
                       os.str()};
    });

    criterion(6, "CCZ gate", [] {
        auto cx = CellComplex::freudenthal_torus(5, 2);
        auto h = build_cubic(cx, 2, 2, 2, true);
        auto U = ccz_operator(h.layout);
        auto good = verify_ccz_symmetry(h, U, 100, 1);
        auto terms = U.phase.terms();
        terms.pop_back();
        auto bad = verify_ccz_symmetry(h, CczGate{PhasePoly::from_terms(terms)}, 100, 1);
        auto t = logical_action(manifold("wu"), "ccz");
        bool wu = t.rows.size() == 8;
        for (const auto& r : t.rows) {
            const std::string swapped{r.in[1], r.in[0], r.in[2]};
            wu = wu && r.out == swapped && r.phase == (r.in == "111" ? 2 : 0);
        }
        std::ostringstream os;
        os << "100 samples failures=" << good.failures << " flux mismatches=" << good.flux_mismatches
           << "; mutant failures=" << bad.failures << "; Wu table " << (wu ? "= SWAP12 CCZ" : "MISMATCH");
        return Outcome{good.ok() && !bad.ok() && wu, os.str()};
    });

    criterion(7, "Pontryagin and em-dual gates", [] {
        auto t = logical_action(manifold("t4"), "pontryagin");
        auto lattice = CellComplex::hypercubic_torus(4, 2);
        const std::uint32_t masks[6] = {0b0011, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100};
        int table_bad = 0, lattice_bad = 0;
        for (const auto& r : t.rows) {
            auto n = [&](int i) { return r.in[i] == '1'; };
            const int cz = (n(0) && n(5)) + (n(1) && n(4)) + (n(2) && n(3));
            table_bad += r.phase != 2 * (cz & 1) || r.out != r.in;
            Cochain b(lattice, 2);
            for (int i = 0; i < 6; ++i)
                if (n(i)) b += torus_cocycle(lattice, masks[i]);
            lattice_bad += ((pontryagin_integral(b) % 4) + 4) % 4 != r.phase;
        }
        auto s = logical_action(manifold("cp2s1"), "pontryagin");
        const bool is_s = s.rows.size() == 2 && s.rows[0].phase == 0 && s.rows[1].phase == 1;
        auto cz = logical_action(manifold("s2s2s1"), "pontryagin");
        bool is_cz = cz.rows.size() == 4;
        for (const auto& r : cz.rows) is_cz = is_cz && r.phase == (r.in == "11" ? 2 : 0);
        auto h = build_toric(lattice, 2);
        auto d = em_dual_4d(h);
        const bool self = same_term_set(h, d), invol = same_term_set(h, em_dual_4d(d));
        std::ostringstream os;
        os << "T4 rows=" << t.rows.size() << " table mismatches=" << table_bad << " lattice mismatches=" << lattice_bad
           << "; CP2xS1 " << (is_s ? "S" : "not S") << "; S2xS2xS1 " << (is_cz ? "CZ" : "not CZ") << "; em_dual self-map "
           << self << " involution " << invol;
        return Outcome{t.rows.size() == 64 && !table_bad && !lattice_bad && is_s && is_cz && self && invol, os.str()};
    });

    criterion(8, "thermal rates", [] {
        bool ok = true;
        std::ostringstream os;
        for (double beta : {0.5, 2.0}) {
            for (const auto& r : rate_table(CellComplex::hypercubic_torus(5, 3), beta)) {
                const bool exact = r.ratio == r.expected;
                const bool tie = r.from == r.to ? r.ratio == 0.5 : true;
                ok = ok && exact && tie;
                if (beta == 2.0) os << r.name << " " << r.from << "->" << r.to << " dE=" << r.dE << "; ";
            }
        }
        os << (ok ? "all ratios exact" : "MISMATCH");
        return Outcome{ok, os.str()};
    });

    criterion(9, "memory monotonic in L", [] {
        std::ostringstream os;
        bool ok = true;
        auto chain = [&](const std::vector<ExperimentResult>& rs) {
            for (std::size_t i = 0; i + 1 < rs.size(); ++i)
                // No significant increase: the larger lattice's lower bound stays under the smaller's upper bound.
                ok = ok && rs[i + 1].ci_lo <= rs[i].ci_hi;
            for (const auto& r : rs) os << fmt_result(r) << "; ";
        };
        os << "4D toric: ";
        chain({memory("hypercubic:d=4,L=2", "toric"), memory("hypercubic:d=4,L=3", "toric"), memory("hypercubic:d=4,L=4", "toric")});
        os << "5D cubic: ";
        chain({memory("hypercubic:d=5,L=2", "cubic"), memory("hypercubic:d=5,L=3", "cubic")});
        auto p2 = memory("hypercubic:d=4,L=2", "toric", true), p3 = memory("hypercubic:d=4,L=3", "toric", true);
        os << "P_crit " << p2.p_fail() << " -> " << p3.p_fail();
        return Outcome{ok && p3.p_fail() < p2.p_fail(), os.str()};
    });

    criterion(10, "critical temperature and SAW entropy", [] {
        const double tc = critical_temperature_mu(8.84);
        auto f4 = saw_entropy({4}), f5 = saw_entropy({5});
        std::ostringstream os;
        os << "Tc(8.84)=" << tc << "; mu4=" << f4.mu << " +- " << f4.mu_err << "; mu5=" << f5.mu << " +- " << f5.mu_err;
        const bool ok = std::abs(tc - 0.918) <= 0.01 && f4.mu >= 6.0 && f4.mu <= 7.5 && f5.mu >= 8.0 && f5.mu <= 9.5;
        return Outcome{ok, os.str()};
    });

    criterion(11, "CLI determinism", [] {
        const std::vector<std::string> cmds{
            "simulate memory --complex hypercubic:d=4,L=2 --beta 1 --sweeps 20 --trials 50 --seed 3",
            "simulate pcrit --complex hypercubic:d=4,L=2 --beta 1 --sweeps 20 --trials 10 --seed 3",
            "simulate memory --complex hypercubic:d=5,L=2 --model cubic --sweeps 10 --trials 20 --seed 4 --threads 2",
            "compute saw --dimension 4 --seed 9",
            "compute gsd --complex hypercubic:d=2,L=2",
            "compute flat --model s2s2s1",
            "compute params --complex hypercubic:d=5,L=2",
            "compute betti --complex freudenthal:d=3,L=2",
            "compute gates --manifold t4 --gate pontryagin",
            "compute tc --mu 8.84",
            "compute rates --complex hypercubic:d=4,L=3 --beta 2",
        };
        int bad = 0, i = 0;
        for (const auto& c : cmds) {
            const std::string a = "accept_det_" + std::to_string(i) + "_a", b = "accept_det_" + std::to_string(i) + "_b";
            ++i;
            if (run_cli(c + " --out " + a) != 0 || run_cli(c + " --out " + b) != 0) {
                ++bad;
                continue;
            }
            bool same = true, any = false;
            for (const char* ext : {".csv", ".json", ".txt"}) {
                std::ifstream probe(a + ext);
                if (!probe) continue;
                any = true;
                same = same && slurp(a + ext) == slurp(b + ext);
            }
            bad += !(same && any);
        }
        std::ostringstream os;
        os << cmds.size() << " commands, " << bad << " differing or failing";
        return Outcome{bad == 0, os.str()};
    });

    std::cout << (failures ? "ACCEPTANCE FAILED: " : "ACCEPTANCE PASSED: ") << 11 - failures << "/11 criteria" << std::endl;
    return failures ? 1 : 0;
}
