#include "cubic/stabilizer.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "cubic/terms.hpp"

namespace cubic {

Layout::Layout(const CellComplex& cx, int l, int m, int n) : cx_(&cx) {
    const int d = cx.dim();
    for (int k : {l, m, n})
        if (k < 1 || k > d) throw std::invalid_argument("gauge degrees must lie in [1, d]");
    int degs[6] = {l - 1, m - 1, n - 1, l, m, n};
    off_[0] = 0;
    for (int r = 0; r < 6; ++r) {
        deg_[r] = degs[r];
        off_[r + 1] = off_[r] + static_cast<std::uint32_t>(cx.count(degs[r]));
    }
    if (off_[6] > mono::kMaxVar) throw std::invalid_argument("too many qubits for the phase-polynomial encoding");
}

std::pair<Reg, std::uint32_t> Layout::locate(std::uint32_t v) const {
    for (int r = 0; r < 6; ++r)
        if (v < off_[r + 1]) return {static_cast<Reg>(r), v - off_[r]};
    throw std::out_of_range("variable outside layout");
}

std::string Term::label() const {
    const char* k = kind == TermKind::matter_x ? "X" : kind == TermKind::gauss ? "G" : "B";
    return std::string(k) + std::to_string(species) + "[" + std::to_string(cell) + "]";
}

nlohmann::json Hamiltonian::to_json() const {
    nlohmann::json j;
    j["complex"] = layout.complex().describe();
    j["degrees"] = {layout.l(), layout.m(), layout.n()};
    j["twist"] = twist;
    j["stage"] = stage;
    j["num_qubits"] = layout.num_vars();
    for (const auto& t : terms) j["terms"].push_back({{"label", t.label()}, {"op", t.op.to_json()}});
    return j;
}

namespace {

void require_twist_degrees(const CellComplex& cx, int l, int m, int n) {
    if (l + m + n != cx.dim() + 1)
        throw std::invalid_argument("twisted model needs l + m + n = d + 1");
}

std::vector<std::uint32_t> xor_vars(std::vector<std::uint32_t> v) {
    std::sort(v.begin(), v.end());
    std::vector<std::uint32_t> out;
    for (std::size_t i = 0; i < v.size();) {
        std::size_t j = i;
        while (j < v.size() && v[j] == v[i]) ++j;
        if ((j - i) & 1) out.push_back(v[i]);
        i = j;
    }
    return out;
}

std::uint64_t pair_key(std::uint32_t a, std::uint32_t b) { return (static_cast<std::uint64_t>(a) << 32) | b; }

// Calls f(f1, f2, f3) over all top cells for the degree pattern (p, q, d-p-q).
template <class F>
void for_each_top_triple(const CellComplex& cx, int p, int q, F&& f) {
    const int d = cx.dim();
    if (p < 0 || q < 0 || p + q > d) return;
    for (std::uint32_t top = 0; top < cx.count(d); ++top) for_each_triple_cup_term(cx, d, top, p, q, f);
}

std::vector<Monomial> products(const Layout& L, Reg r1, std::span<const std::uint32_t> c1, Reg r2,
                               std::span<const std::uint32_t> c2) {
    std::vector<Monomial> out;
    for (auto x : c1)
        for (auto y : c2) out.push_back(mono::mul(mono::var(L.var(r1, x)), mono::var(L.var(r2, y))));
    return out;
}

Term flux_term(const Layout& L, int species, std::uint32_t cell) {
    Reg g = Layout::gauge(species);
    std::vector<std::uint32_t> vs;
    for (auto f : L.complex().boundary(L.degree(g) + 1, cell)) vs.push_back(L.var(g, f));
    return {TermKind::flux, species, cell, MagicOperator::pauli_z(vs)};
}

void add_flux_terms(Hamiltonian& h, std::initializer_list<int> species) {
    const auto& L = h.layout;
    for (int s : species) {
        int k = L.degree(Layout::gauge(s));
        for (std::uint32_t c = 0; c < L.complex().count(k + 1); ++c) h.terms.push_back(flux_term(L, s, c));
    }
}

} // namespace

Hamiltonian build_trivial(const CellComplex& cx, int l, int m, int n) {
    Hamiltonian h{Layout(cx, l, m, n), false, "trivial", {}};
    for (int s = 1; s <= 3; ++s) {
        Reg r = Layout::matter(s);
        for (std::uint32_t c = 0; c < h.layout.count(r); ++c)
            h.terms.push_back({TermKind::matter_x, s, c, MagicOperator::pauli_x({h.layout.var(r, c)})});
    }
    return h;
}

MagicOperator build_entangler(const Layout& L) {
    const auto& cx = L.complex();
    require_twist_degrees(cx, L.l(), L.m(), L.n());
    std::vector<Monomial> t;
    for_each_top_triple(cx, L.l() - 1, L.m(), [&](std::uint32_t f1, std::uint32_t f2, std::uint32_t f3) {
        Monomial x = mono::var(L.var(Reg::lam1, f1));
        for (auto g : cx.boundary(L.m(), f2))
            for (auto h : cx.boundary(L.n(), f3))
                t.push_back(mono::mul(x, mono::mul(mono::var(L.var(Reg::lam2, g)), mono::var(L.var(Reg::lam3, h)))));
    });
    return MagicOperator::diagonal(PhasePoly::from_terms(std::move(t)));
}

MagicOperator conjugate(const MagicOperator& U, const MagicOperator& T) {
    return compose(compose(U, T), adjoint(U));
}

Hamiltonian build_spt(const CellComplex& cx, int l, int m, int n, bool twist) {
    Hamiltonian h = build_trivial(cx, l, m, n);
    h.stage = "spt";
    h.twist = twist;
    if (!twist) return h;
    require_twist_degrees(cx, l, m, n);
    const auto& L = h.layout;
    std::vector<std::vector<Monomial>> deco1(L.count(Reg::lam1)), deco2(L.count(Reg::lam2)), deco3(L.count(Reg::lam3));
    // Derivatives of lambda1 cup d lambda2 cup d lambda3 with respect to each matter qubit.
    for_each_top_triple(cx, l - 1, m, [&](std::uint32_t f1, std::uint32_t f2, std::uint32_t f3) {
        auto b2 = cx.boundary(m, f2);
        auto b3 = cx.boundary(n, f3);
        auto p23 = products(L, Reg::lam2, b2, Reg::lam3, b3);
        deco1[f1].insert(deco1[f1].end(), p23.begin(), p23.end());
        std::uint32_t one[1] = {f1};
        for (auto g : b2) {
            auto p = products(L, Reg::lam1, one, Reg::lam3, b3);
            deco2[g].insert(deco2[g].end(), p.begin(), p.end());
        }
        for (auto g : b3) {
            auto p = products(L, Reg::lam1, one, Reg::lam2, b2);
            deco3[g].insert(deco3[g].end(), p.begin(), p.end());
        }
    });
    std::vector<std::vector<Monomial>>* decos[3] = {&deco1, &deco2, &deco3};
    for (auto& t : h.terms) t.op.phase = PhasePoly::from_terms(std::move((*decos[t.species - 1])[t.cell]));
    return h;
}

namespace {

struct GaussData {
    std::vector<std::vector<Monomial>> phase[3];
    std::vector<std::vector<ParityCheck>> checks[3];
};

GaussData gauss_data(const Layout& L, bool twist, bool with_checks) {
    const auto& cx = L.complex();
    const int l = L.l(), m = L.m(), n = L.n();
    GaussData g;
    for (int s = 0; s < 3; ++s) {
        g.phase[s].resize(L.count(Layout::matter(s + 1)));
        g.checks[s].resize(L.count(Layout::matter(s + 1)));
    }
    if (!twist) return g;
    require_twist_degrees(cx, l, m, n);
    // s~ cup b cup c, a cup t~ cup c, a cup b cup u~.
    for_each_top_triple(cx, l - 1, m, [&](std::uint32_t f1, std::uint32_t f2, std::uint32_t f3) {
        g.phase[0][f1].push_back(mono::mul(mono::var(L.var(Reg::b, f2)), mono::var(L.var(Reg::c, f3))));
    });
    for_each_top_triple(cx, l, m - 1, [&](std::uint32_t f1, std::uint32_t f2, std::uint32_t f3) {
        g.phase[1][f2].push_back(mono::mul(mono::var(L.var(Reg::a, f1)), mono::var(L.var(Reg::c, f3))));
    });
    for_each_top_triple(cx, l, m, [&](std::uint32_t f1, std::uint32_t f2, std::uint32_t f3) {
        g.phase[2][f3].push_back(mono::mul(mono::var(L.var(Reg::a, f1)), mono::var(L.var(Reg::b, f2))));
    });
    if (!with_checks) return g;

    // Flux forms measuring the commutator of two Gauss terms of different species:
    //   G1_s, G2_t : s~ cup t~ cup dc      G1_s, G3_u : s~ cup db cup u~
    //   G2_t, G3_u : da cup t~ cup u~
    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> f12, f13, f23;
    auto push_boundary = [&](std::vector<std::uint32_t>& dst, Reg r, int deg, std::uint32_t cell) {
        for (auto f : cx.boundary(deg, cell)) dst.push_back(L.var(r, f));
    };
    if (n + 1 <= cx.dim())
        for_each_top_triple(cx, l - 1, m - 1, [&](std::uint32_t s, std::uint32_t t, std::uint32_t f3) {
            push_boundary(f12[pair_key(s, t)], Reg::c, n + 1, f3);
        });
    if (m + 1 <= cx.dim())
        for_each_top_triple(cx, l - 1, m + 1, [&](std::uint32_t s, std::uint32_t f2, std::uint32_t u) {
            push_boundary(f13[pair_key(s, u)], Reg::b, m + 1, f2);
        });
    if (l + 1 <= cx.dim())
        for_each_top_triple(cx, l + 1, m - 1, [&](std::uint32_t f1, std::uint32_t t, std::uint32_t u) {
            push_boundary(f23[pair_key(t, u)], Reg::a, l + 1, f1);
        });
    auto attach = [&](std::unordered_map<std::uint64_t, std::vector<std::uint32_t>>& forms, int sx, int sy) {
        for (auto& [key, vars] : forms) {
            auto form = xor_vars(std::move(vars));
            if (form.empty()) continue;
            auto x = static_cast<std::uint32_t>(key >> 32), y = static_cast<std::uint32_t>(key & 0xffffffffu);
            g.checks[sx][x].push_back({form, false});
            g.checks[sy][y].push_back({form, false});
        }
    };
    attach(f12, 0, 1);
    attach(f13, 0, 2);
    attach(f23, 1, 2);
    return g;
}

Hamiltonian gauged(const Layout& L, bool twist, bool with_checks, const std::string& stage) {
    Hamiltonian h{L, twist, stage, {}};
    const auto& cx = L.complex();
    GaussData g = gauss_data(L, twist, with_checks);
    for (int s = 1; s <= 3; ++s) {
        Reg mr = Layout::matter(s), gr = Layout::gauge(s);
        for (std::uint32_t c = 0; c < L.count(mr); ++c) {
            std::vector<std::uint32_t> flips;
            for (auto f : cx.cofaces(L.degree(mr), c)) flips.push_back(L.var(gr, f));
            MagicOperator op = MagicOperator::pauli_x(flips);
            op.phase = PhasePoly::from_terms(std::move(g.phase[s - 1][c]));
            op.checks = std::move(g.checks[s - 1][c]);
            canonicalize_checks(op);
            h.terms.push_back({TermKind::gauss, s, c, std::move(op)});
        }
    }
    add_flux_terms(h, {1, 2, 3});
    return h;
}

} // namespace

Hamiltonian gauge(const Hamiltonian& spt) {
    if (spt.stage != "spt" && spt.stage != "trivial") throw std::invalid_argument("gauge: input must be an SPT or trivial Hamiltonian");
    return gauged(spt.layout, spt.stage == "spt" && spt.twist, false, "gauged");
}

Hamiltonian build_cubic(const CellComplex& cx, int l, int m, int n, bool twist) {
    return gauged(Layout(cx, l, m, n), twist, true, "cubic");
}

Hamiltonian build_toric(const CellComplex& cx, int k) {
    Layout L(cx, k, k, k);
    Hamiltonian h{L, false, "toric", {}};
    for (std::uint32_t c = 0; c < L.count(Reg::lam1); ++c) {
        std::vector<std::uint32_t> flips;
        for (auto f : cx.cofaces(k - 1, c)) flips.push_back(L.var(Reg::a, f));
        h.terms.push_back({TermKind::gauss, 1, c, MagicOperator::pauli_x(flips)});
    }
    add_flux_terms(h, {1});
    return h;
}

PhasePoly pull_back_gauge(const PhasePoly& p, const Layout& L) {
    const auto& cx = L.complex();
    std::unordered_map<std::uint32_t, PhasePoly> rep;
    for (auto v : p.variables()) {
        auto [r, cell] = L.locate(v);
        int ri = static_cast<int>(r);
        if (ri < 3) continue;
        Reg mr = static_cast<Reg>(ri - 3);
        std::vector<std::uint32_t> vs;
        for (auto f : cx.boundary(L.degree(r), cell)) vs.push_back(L.var(mr, f));
        rep.emplace(v, PhasePoly::linear(xor_vars(vs)));
    }
    return p.substitute([&](std::uint32_t v) -> const PhasePoly* {
        auto it = rep.find(v);
        return it == rep.end() ? nullptr : &it->second;
    });
}

CommuteReport commutation_suite(const Hamiltonian& h) {
    CommuteReport rep;
    const std::size_t N = h.terms.size();
    rep.terms = N;
    rep.pairs = N * (N - 1) / 2;
    // readers[v]: terms whose phase or checks read variable v.
    std::unordered_map<std::uint32_t, std::vector<std::uint32_t>> readers;
    std::vector<std::vector<std::uint32_t>> reads(N);
    for (std::size_t i = 0; i < N; ++i) {
        reads[i] = h.terms[i].op.read_vars();
        for (auto v : reads[i]) readers[v].push_back(static_cast<std::uint32_t>(i));
    }
    std::vector<std::uint64_t> cand;
    for (std::size_t i = 0; i < N; ++i)
        for (auto v : h.terms[i].op.xmask) {
            auto it = readers.find(v);
            if (it == readers.end()) continue;
            for (auto j : it->second)
                if (j != i) cand.push_back(pair_key(static_cast<std::uint32_t>(std::min<std::size_t>(i, j)),
                                                    static_cast<std::uint32_t>(std::max<std::size_t>(i, j))));
        }
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    rep.overlapping = cand.size();
    for (auto key : cand) {
        std::size_t i = key >> 32, j = key & 0xffffffffu;
        if (!commutes(h.terms[i].op, h.terms[j].op)) rep.failures.push_back({i, j});
    }
    return rep;
}

nlohmann::json CommuteReport::to_json(const Hamiltonian& h) const {
    nlohmann::json j{{"terms", terms}, {"pairs", pairs}, {"overlapping_pairs", overlapping}, {"failures", failures.size()}, {"ok", ok()}};
    j["failing_pairs"] = nlohmann::json::array();
    for (std::size_t k = 0; k < failures.size() && k < 20; ++k)
        j["failing_pairs"].push_back({h.terms[failures[k].i].label(), h.terms[failures[k].j].label()});
    return j;
}

std::vector<int> syndrome(const Hamiltonian& h, const BitVec& xerr, const BitVec& zerr) {
    std::vector<int> out;
    out.reserve(h.terms.size());
    for (const auto& t : h.terms) {
        if (t.op.is_diagonal()) {
            out.push_back(t.op.phase.eval(xerr) ? -1 : 1);
            continue;
        }
        bool killed = false;
        for (const auto& c : t.op.checks)
            if (!c.eval(xerr)) {
                killed = true;
                break;
            }
        if (killed) {
            out.push_back(0);
            continue;
        }
        bool par = false;
        for (auto v : t.op.xmask) par ^= zerr.get(v);
        out.push_back(par ? -1 : 1);
    }
    return out;
}

} // namespace cubic
