#include "cubic/logical.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

#include "cubic/rng.hpp"
#include "cubic/terms.hpp"

namespace cubic {

MagicOperator wilson(const Layout& L, int species, const BitVec& cycle) {
    Reg r = Layout::gauge(species);
    if (cycle.size() != L.count(r)) throw std::invalid_argument("wilson: cycle has the wrong size");
    if (!is_cycle(L.complex(), L.degree(r), cycle)) throw std::invalid_argument("wilson: support is not closed");
    std::vector<std::uint32_t> vs;
    for (auto c : cycle.ones()) vs.push_back(L.var(r, c));
    return MagicOperator::pauli_z(std::move(vs));
}

// ------------------------------------------------------------------ sub-tori

namespace {

std::vector<int> axes_of(std::uint32_t mask, int d) {
    std::vector<int> out;
    for (int i = 0; i < d; ++i)
        if (mask >> i & 1u) out.push_back(i);
    return out;
}

CellComplex make_sub(const CellComplex& big, std::uint32_t mask) {
    if (!big.is_hypercubic()) throw std::invalid_argument("sub-torus needs a hypercubic torus");
    std::vector<int> lens;
    for (int a : axes_of(mask, big.dim())) lens.push_back(big.lengths()[a]);
    if (lens.empty()) throw std::invalid_argument("sub-torus needs at least one axis");
    return CellComplex::hypercubic_torus(lens);
}

} // namespace

SubTorus::SubTorus(const CellComplex& b, std::uint32_t mask, std::vector<int> o)
    : big(&b), sub(make_sub(b, mask)), axes(axes_of(mask, b.dim())), origin(std::move(o)) {
    origin.resize(b.dim(), 0);
}

std::uint32_t SubTorus::to_big(int k, std::uint32_t c) const {
    auto y = sub.vertex_coords(sub.cube_base(k, c));
    std::vector<int> x = origin;
    std::uint32_t dirs = 0, sd = sub.cube_dirs(k, c);
    for (std::size_t t = 0; t < axes.size(); ++t) {
        x[axes[t]] = y[t];
        if (sd >> t & 1u) dirs |= 1u << axes[t];
    }
    for (int i = 0; i < big->dim(); ++i) x[i] = ((x[i] % big->lengths()[i]) + big->lengths()[i]) % big->lengths()[i];
    return big->cube_index(big->vertex_index(x), dirs);
}

// ------------------------------------------------------------------ magnetic

namespace {

// L(x)(e) = sum over rows[e] of x(f): a linear map C^j -> C^{j-1} with
// d L(x) = x for every exact x.
std::vector<std::vector<std::uint32_t>> linear_primitive(const CellComplex& cx, int j) {
    const std::size_t nf = cx.count(j), ne = cx.count(j - 1);
    std::vector<BitVec> rows;
    for (std::uint32_t e = 0; e < ne; ++e) {
        BitVec r(nf + ne);
        for (auto f : cx.cofaces(j - 1, e)) r.flip(f);
        r.set(nf + e);
        rows.push_back(std::move(r));
    }
    Rref R = rref(std::move(rows), nf);
    std::vector<std::vector<std::uint32_t>> out(ne);
    for (std::size_t i = 0; i < R.rows.size(); ++i)
        for (std::size_t e = 0; e < ne; ++e)
            if (R.rows[i].get(nf + e)) out[e].push_back(R.pivots[i]);
    return out;
}

std::vector<std::uint32_t> mapped_vars(const Layout& L, Reg r, const SubTorus& s, int k, const BitVec& cells) {
    std::vector<std::uint32_t> vs;
    for (auto c : cells.ones()) vs.push_back(L.var(r, s.to_big(k, c)));
    std::sort(vs.begin(), vs.end());
    return vs;
}

} // namespace

MagneticOp magnetic(const Layout& L, int species, std::uint32_t axes, std::vector<int> origin) {
    const auto& cx = L.complex();
    const int d = cx.dim();
    if (!cx.is_hypercubic()) throw std::invalid_argument("magnetic: hypercubic torus required");
    if (species < 1 || species > 3) throw std::invalid_argument("magnetic: species must be 1, 2 or 3");
    if (L.l() + L.m() + L.n() != d + 1) throw std::invalid_argument("magnetic: twisted degrees required");
    const Reg gi = Layout::gauge(species);
    const int ki = L.degree(gi);
    const int D = std::popcount(axes);
    if (D != d - ki || (axes >> d)) throw std::invalid_argument("magnetic: support must have dimension d - deg");
    origin.resize(d, 0);
    const std::uint32_t comp = ((1u << d) - 1) & ~axes;
    std::vector<int> shifted = origin;
    for (int i = 0; i < d; ++i)
        if (comp >> i & 1u) shifted[i] = (origin[i] + 1) % cx.lengths()[i];
    SubTorus P(cx, axes, origin), Q(cx, axes, shifted);

    MagneticOp M;
    M.species = species;
    M.axes = axes;
    M.origin = origin;
    // Cells along the pinned directions, one per vertex of the slice.
    std::vector<std::uint32_t> flips;
    for (std::uint32_t y = 0; y < P.sub.count(0); ++y) {
        std::uint32_t base = P.to_big(0, y);
        flips.push_back(L.var(gi, cx.cube_index(base, comp)));
    }
    std::vector<int> others;
    for (int s = 1; s <= 3; ++s)
        if (s != species) others.push_back(s);
    auto slice = [&](int s) -> const SubTorus& { return s < species ? P : Q; };
    for (int s : others) {
        const Reg r = Layout::gauge(s);
        const int k = L.degree(r);
        const SubTorus& T = slice(s);
        if (k + 1 <= D)
            for (std::uint32_t c = 0; c < T.sub.count(k + 1); ++c) {
                BitVec bd(T.sub.count(k));
                for (auto f : T.sub.boundary(k + 1, c)) bd.flip(f);
                M.flux.push_back({mapped_vars(L, r, T, k, bd), false});
            }
        for (const auto& z : homology_basis(T.sub, k).cycles) M.holonomy.push_back({mapped_vars(L, r, T, k, z), false});
    }
    const int j = others[0], k = others[1];
    const Reg rj = Layout::gauge(j), rk = Layout::gauge(k);
    const int dj = L.degree(rj);
    const SubTorus &Sj = slice(j), &Sk = slice(k);
    auto prim = linear_primitive(Sj.sub, dj);
    std::vector<Monomial> terms;
    for (std::uint32_t top = 0; top < P.sub.count(D); ++top)
        for_each_cup_term(P.sub, D, top, dj - 1, [&](std::uint32_t f1, std::uint32_t f2, int) {
            Monomial y = mono::var(L.var(rk, Sk.to_big(L.degree(rk), f2)));
            for (auto f : prim[f1]) terms.push_back(mono::mul(mono::var(L.var(rj, Sj.to_big(dj, f))), y));
        });
    M.op = MagicOperator::pauli_x(std::move(flips));
    M.op.phase = PhasePoly::from_terms(std::move(terms));
    M.op.checks = M.flux;
    M.op.checks.insert(M.op.checks.end(), M.holonomy.begin(), M.holonomy.end());
    canonicalize_checks(M.op);
    return M;
}

double FormalSum::apply(const BitVec& z, BitVec& out) const {
    double acc = 0;
    bool set = false;
    for (const auto& t : terms) {
        BitVec w = z;
        int c = t.op.apply(w);
        if (!c) continue;
        if (!set) {
            out = w;
            set = true;
        } else if (!(w == out)) {
            throw std::logic_error("FormalSum::apply: terms map to different states");
        }
        acc += c * static_cast<double>(t.num) / static_cast<double>(t.den);
    }
    if (!set) out = z;
    return acc;
}

nlohmann::json FormalSum::to_json() const {
    nlohmann::json j;
    j["zero"] = is_zero();
    j["terms"] = nlohmann::json::array();
    for (const auto& t : terms)
        j["terms"].push_back({{"coefficient", std::to_string(t.num) + "/" + std::to_string(t.den)}, {"op", t.op.to_json()}});
    return j;
}

FormalSum fusion_square(const MagneticOp& M) {
    MagicOperator sq = normal_form(compose(M.op, M.op));
    FormalSum out;
    if (sq.zero) return out;
    if (!sq.xmask.empty() || !sq.phase.is_zero() || sq.negative)
        throw std::logic_error("fusion_square: M x M is not a pure projector");
    const std::size_t h = M.holonomy.size();
    if (h > 20) throw std::invalid_argument("fusion_square: too many holonomy projectors");
    for (std::uint32_t s = 0; s < (1u << h); ++s) {
        std::vector<std::uint32_t> vs;
        bool neg = false;
        for (std::size_t i = 0; i < h; ++i)
            if (s >> i & 1u) {
                vs.insert(vs.end(), M.holonomy[i].form.begin(), M.holonomy[i].form.end());
                neg ^= M.holonomy[i].value;
            }
        FormalTerm t;
        t.den = std::int64_t{1} << h;
        t.op = MagicOperator::pauli_z(std::move(vs));
        t.op.negative = neg;
        t.op.checks = M.flux;
        canonicalize_checks(t.op);
        out.terms.push_back(std::move(t));
    }
    return out;
}

MagicOperator braiding_commutator(const MagicOperator& A, const MagicOperator& B) {
    MagicOperator ab = compose(A, B);
    return normal_form(compose(ab, ab));
}

// ------------------------------------------------------------------ Borromean

Cochain dual_cochain(const CellComplex& cx, const DualRect& r) {
    if (!cx.is_hypercubic() || cx.dim() != 3) throw std::invalid_argument("dual_cochain: hypercubic 3-torus required");
    if (r.normal < 0 || r.normal > 2) throw std::invalid_argument("dual_cochain: bad normal axis");
    Cochain out(cx, 1);
    if (r.empty()) return out;
    int o[2], t = 0;
    for (int i = 0; i < 3; ++i)
        if (i != r.normal) o[t++] = i;
    const auto& len = cx.lengths();
    for (int u = r.lo[0]; u <= r.hi[0]; ++u)
        for (int v = r.lo[1]; v <= r.hi[1]; ++v) {
            std::vector<int> x(3);
            x[r.normal] = ((r.level % len[r.normal]) + len[r.normal]) % len[r.normal];
            x[o[0]] = ((u % len[o[0]]) + len[o[0]]) % len[o[0]];
            x[o[1]] = ((v % len[o[1]]) + len[o[1]]) % len[o[1]];
            out.flip(cx.cube_index(cx.vertex_index(x), 1u << r.normal));
        }
    return out;
}

int borromean_phase(const Cochain& A, const Cochain& B, const Cochain& C) {
    if (A.degree() != 1 || B.degree() != 1 || C.degree() != 1 || A.complex().dim() != 3)
        throw std::invalid_argument("borromean_phase: three 1-cochains on a 3-dimensional complex required");
    return integrate(cup(cup(A, B), C)) ? -1 : 1;
}

// ------------------------------------------------------------------ CCZ

CczGate ccz_operator(const Layout& L) {
    const auto& cx = L.complex();
    if (cx.is_hypercubic() || cx.dim() != 5 || L.l() != 2 || L.m() != 2 || L.n() != 2)
        throw std::invalid_argument("ccz_operator: 5-dimensional simplicial complex with l = m = n = 2 required");
    std::vector<Monomial> terms;
    for (std::uint32_t top = 0; top < cx.count(5); ++top)
        for_each_cup_term(cx, 5, top, 3, [&](std::uint32_t g, std::uint32_t fc, int) {
            Monomial c = mono::var(L.var(Reg::c, fc));
            for_each_cup1_term(cx, 3, g, 2, [&](std::uint32_t fa, std::uint32_t fb) {
                terms.push_back(mono::mul(mono::mul(mono::var(L.var(Reg::a, fa)), mono::var(L.var(Reg::b, fb))), c));
            });
        });
    return {PhasePoly::from_terms(std::move(terms))};
}

MagicOperator swap_ab(const Layout& L, const MagicOperator& T) {
    if (L.count(Reg::a) != L.count(Reg::b)) throw std::invalid_argument("swap_ab: registers a and b differ in size");
    auto map = [&](std::uint32_t v) {
        auto [r, c] = L.locate(v);
        if (r == Reg::a) return L.var(Reg::b, c);
        if (r == Reg::b) return L.var(Reg::a, c);
        return v;
    };
    if (T.zero) return T;
    MagicOperator out;
    out.negative = T.negative;
    for (auto v : T.xmask) out.xmask.push_back(map(v));
    std::sort(out.xmask.begin(), out.xmask.end());
    std::vector<Monomial> terms;
    for (auto m : T.phase.terms()) {
        std::uint32_t vs[3];
        int k = mono::vars(m, vs);
        for (int i = 0; i < k; ++i) vs[i] = map(vs[i]);
        terms.push_back(mono::make(std::span<const std::uint32_t>(vs, k)));
    }
    out.phase = PhasePoly::from_terms(std::move(terms));
    for (const auto& c : T.checks) {
        ParityCheck p{{}, c.value};
        for (auto v : c.form) p.form.push_back(map(v));
        std::sort(p.form.begin(), p.form.end());
        out.checks.push_back(std::move(p));
    }
    canonicalize_checks(out);
    return out;
}

MagicOperator CczGate::conjugate(const Layout& L, const MagicOperator& T) const {
    if (T.zero) return T;
    // D T D^dagger differs from T by D(z) + D(z + mask).
    std::vector<Monomial> touching;
    for (auto m : phase.terms()) {
        std::uint32_t vs[3];
        int k = mono::vars(m, vs);
        for (int i = 0; i < k; ++i)
            if (std::binary_search(T.xmask.begin(), T.xmask.end(), vs[i])) {
                touching.push_back(m);
                break;
            }
    }
    PhasePoly t = PhasePoly::from_terms(std::move(touching));
    MagicOperator dtd = T;
    dtd.phase += t;
    dtd.phase += t.shifted(T.xmask);
    return swap_ab(L, dtd);
}

nlohmann::json CczReport::to_json() const {
    return {{"terms", terms}, {"samples", samples}, {"failures", failures}, {"flux_mismatches", flux_mismatches}, {"ok", ok()}};
}

CczReport verify_ccz_symmetry(const Hamiltonian& h, const CczGate& U, std::size_t samples, std::uint64_t seed) {
    const auto& L = h.layout;
    const auto& cx = L.complex();
    CczReport rep;
    rep.terms = h.terms.size();
    rep.samples = samples;
    auto key = [&](TermKind k, int s, std::uint32_t c) {
        return (static_cast<std::uint64_t>(k) << 40) | (static_cast<std::uint64_t>(s) << 32) | c;
    };
    std::unordered_map<std::uint64_t, std::size_t> index;
    for (std::size_t i = 0; i < h.terms.size(); ++i) index[key(h.terms[i].kind, h.terms[i].species, h.terms[i].cell)] = i;
    auto swapped = [](int s) { return s == 1 ? 2 : s == 2 ? 1 : 3; };
    std::vector<MagicOperator> conj;
    std::vector<std::size_t> target;
    for (const auto& t : h.terms) {
        auto it = index.find(key(t.kind, swapped(t.species), t.cell));
        if (it == index.end()) throw std::invalid_argument("verify_ccz_symmetry: Hamiltonian is not symmetric under a <-> b");
        conj.push_back(U.conjugate(L, t.op));
        target.push_back(it->second);
    }
    for (std::size_t i = 0; i < h.terms.size(); ++i)
        if (h.terms[i].kind == TermKind::flux && !equivalent(conj[i], h.terms[target[i]].op)) ++rep.flux_mismatches;
    Reg regs[3] = {Reg::a, Reg::b, Reg::c};
    for (std::size_t s = 0; s < samples; ++s) {
        Rng rng(seed, s);
        BitVec z(L.num_vars());
        for (Reg r : regs) {
            Cochain x = random_closed(cx, L.degree(r), rng);
            for (auto c : x.support()) z.set(L.var(r, c));
        }
        for (std::size_t i = 0; i < h.terms.size(); ++i) {
            if (h.terms[i].kind != TermKind::gauss) continue;
            BitVec w1 = z, w2 = z;
            int c1 = conj[i].apply(w1);
            int c2 = h.terms[target[i]].op.apply(w2);
            if (c1 != c2 || !(w1 == w2)) ++rep.failures;
        }
    }
    return rep;
}

// ------------------------------------------------------------------ gate tables

namespace {

std::string bits(const BitVec& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += v.get(i) ? '1' : '0';
    return s;
}

BitVec lift(const ManifoldModel& m, const std::vector<std::size_t>& basis, const BitVec& coords) {
    BitVec u(m.size());
    for (auto i : coords.ones()) u.set(basis[i]);
    return u;
}

} // namespace

std::string LogicalTable::to_text() const {
    std::ostringstream os;
    os << "# model=" << model << " gate=" << gate << "\n# qubits:";
    for (const auto& q : qubits) os << ' ' << q;
    os << "\n# in -> out phase(i^k)\n";
    for (const auto& r : rows) os << r.in << " -> " << r.out << " " << r.phase << "\n";
    return os.str();
}

nlohmann::json LogicalTable::to_json() const {
    nlohmann::json j{{"model", model}, {"gate", gate}, {"qubits", qubits}};
    j["rows"] = nlohmann::json::array();
    for (const auto& r : rows) j["rows"].push_back({{"in", r.in}, {"out", r.out}, {"phase", r.phase}});
    return j;
}

LogicalTable logical_action(const ManifoldModel& m, const std::string& gate) {
    LogicalTable t;
    t.model = m.name();
    t.gate = gate;
    const int k = m.logical_degree();
    auto basis = m.basis(k);
    if (gate == "ccz") {
        if (!m.has_cup1()) throw std::invalid_argument(m.name() + ": no cup-1 data for the CCZ gate");
        for (const char* s : {"a", "b", "c"})
            for (auto i : basis) t.qubits.push_back(std::string("n_") + s + "[" + m.cls(i).name + "]");
        auto flat = enumerate_flat_sectors(cup_tensor(m, k, k, k), SIZE_MAX);
        for (const auto& sec : flat.sectors) {
            BitVec a = lift(m, basis, sec.a), b = lift(m, basis, sec.b), c = lift(m, basis, sec.c);
            bool ph = m.integrate(m.cup(m.cup1(a, b), c));
            t.rows.push_back({bits(sec.a) + bits(sec.b) + bits(sec.c), bits(sec.b) + bits(sec.a) + bits(sec.c), ph ? 2 : 0});
        }
    } else if (gate == "pontryagin") {
        if (!m.has_pontryagin()) throw std::invalid_argument(m.name() + ": no Pontryagin data");
        basis = m.basis(2);
        for (auto i : basis) t.qubits.push_back("n[" + m.cls(i).name + "]");
        if (basis.size() > 20) throw std::invalid_argument("too many logical qubits for a truth table");
        for (std::uint32_t x = 0; x < (1u << basis.size()); ++x) {
            BitVec n(basis.size());
            for (std::size_t i = 0; i < basis.size(); ++i) n.set(i, x >> i & 1u);
            t.rows.push_back({bits(n), bits(n), m.pontryagin(lift(m, basis, n))});
        }
    } else if (gate == "em_dual") {
        if (m.dim() != 4) throw std::invalid_argument("em_dual: 4-manifold required");
        basis = m.basis(2);
        for (auto i : basis) t.qubits.push_back(m.cls(i).name);
        // Z on a class maps to X on its Poincare dual: the inverse of the pairing.
        std::vector<BitVec> pairing;
        for (auto i : basis) {
            BitVec r(basis.size());
            for (std::size_t j = 0; j < basis.size(); ++j) {
                BitVec e(m.size()), f(m.size());
                e.set(i);
                f.set(basis[j]);
                r.set(j, m.integrate(m.cup(e, f)));
            }
            pairing.push_back(std::move(r));
        }
        auto inv = inverse(pairing);
        if (inv.size() != basis.size()) throw std::invalid_argument(m.name() + ": degenerate pairing on H^2");
        for (std::size_t i = 0; i < basis.size(); ++i) {
            std::string out;
            for (auto j : inv[i].ones()) out += (out.empty() ? "" : "*") + std::string("X[") + m.cls(basis[j]).name + "]";
            t.rows.push_back({"Z[" + m.cls(basis[i]).name + "]", out, 0});
        }
    } else {
        throw std::invalid_argument("unknown gate '" + gate + "'");
    }
    return t;
}

// ------------------------------------------------------------------ EM duality

CellRef em_dual_cell(const CellComplex& cx, CellRef c) {
    const int d = cx.dim();
    auto x = cx.vertex_coords(cx.cube_base(c.degree, c.index));
    for (int i = 0; i < d; ++i) x[i] = ((-x[i] - 1) % cx.lengths()[i] + cx.lengths()[i]) % cx.lengths()[i];
    std::uint32_t S = cx.cube_dirs(c.degree, c.index);
    return {d - c.degree, cx.cube_index(cx.vertex_index(x), ((1u << d) - 1) & ~S)};
}

Hamiltonian em_dual_4d(const Hamiltonian& h) {
    const auto& L = h.layout;
    const auto& cx = L.complex();
    if (!cx.is_hypercubic() || cx.dim() != 4 || h.stage != "toric" || L.l() != 2)
        throw std::invalid_argument("em_dual_4d: 2-form toric code on hypercubic T^4 required");
    auto map_var = [&](std::uint32_t v) {
        auto [r, c] = L.locate(v);
        if (r != Reg::a) throw std::invalid_argument("em_dual_4d: term outside the gauge register");
        return L.var(Reg::a, em_dual_cell(cx, {2, c}).index);
    };
    Hamiltonian out{L, false, "toric", {}};
    for (const auto& t : h.terms) {
        if (!t.op.checks.empty() || t.op.phase.degree() > 1 || t.op.negative || t.op.phase.constant_term())
            throw std::invalid_argument("em_dual_4d: non-Pauli term");
        std::vector<std::uint32_t> zs, xs;
        for (auto v : t.op.xmask) zs.push_back(map_var(v));
        for (auto v : t.op.phase.variables()) xs.push_back(map_var(v));
        MagicOperator op = MagicOperator::pauli_x(xs);
        op.phase = MagicOperator::pauli_z(zs).phase;
        const int deg = t.kind == TermKind::gauss ? 1 : 3;
        TermKind kind = t.kind == TermKind::gauss ? TermKind::flux : TermKind::gauss;
        out.terms.push_back({kind, t.species, em_dual_cell(cx, {deg, t.cell}).index, std::move(op)});
    }
    return out;
}

bool same_term_set(const Hamiltonian& a, const Hamiltonian& b) {
    auto keys = [](const Hamiltonian& h) {
        std::vector<std::string> k;
        for (const auto& t : h.terms) k.push_back(normal_form(t.op).to_json().dump());
        std::sort(k.begin(), k.end());
        return k;
    };
    return keys(a) == keys(b);
}

} // namespace cubic
