#include "cubic/homology.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <stdexcept>
#include <unordered_map>

#include "cubic/manifold.hpp"

namespace cubic {

namespace {

// Coboundaries of the (k-1)-cell indicators; read as rows, this is also the
// boundary matrix of k-chains.
std::vector<BitVec> coboundary_images(const CellComplex& cx, int k) {
    std::vector<BitVec> out;
    if (k <= 0) return out;
    for (std::uint32_t f = 0; f < cx.count(k - 1); ++f) {
        BitVec r(cx.count(k));
        for (auto c : cx.cofaces(k - 1, f)) r.flip(c);
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<BitVec> boundary_images(const CellComplex& cx, int k) {
    // Boundaries of the (k+1)-cells, as k-chains.
    std::vector<BitVec> out;
    if (k + 1 > cx.dim()) return out;
    for (std::uint32_t c = 0; c < cx.count(k + 1); ++c) {
        BitVec r(cx.count(k));
        for (auto f : cx.boundary(k + 1, c)) r.flip(f);
        out.push_back(std::move(r));
    }
    return out;
}

// Picks representatives of span(cands) modulo span(base).
std::vector<BitVec> quotient_reps(const std::vector<BitVec>& base, const std::vector<BitVec>& cands, std::size_t cols) {
    std::vector<BitVec> out;
    for (auto i : extend_basis(base, cands, cols)) out.push_back(cands[i]);
    return out;
}

Cochain as_cochain(const CellComplex& cx, int k, const BitVec& v) {
    Cochain c(cx, k);
    c.bits() = v;
    return c;
}

} // namespace

bool is_cycle(const CellComplex& cx, int k, const BitVec& z) {
    if (k == 0) return true;
    BitVec b(cx.count(k - 1));
    for (auto c : z.ones())
        for (auto f : cx.boundary(k, c)) b.flip(f);
    return !b.any();
}

bool is_cocycle(const CellComplex& cx, int k, const BitVec& z) {
    return coboundary(as_cochain(cx, k, z)).is_zero();
}

BitVec coordinate_subtorus(const CellComplex& cx, std::uint32_t axes) {
    if (!is_torus(cx)) throw std::invalid_argument("coordinate_subtorus: complex is not a torus");
    const int k = std::popcount(axes);
    BitVec z(cx.count(k));
    auto in_plane = [&](std::uint32_t v) {
        auto x = cx.vertex_coords(v);
        for (int i = 0; i < cx.dim(); ++i)
            if (!(axes >> i & 1u) && x[i] != 0) return false;
        return true;
    };
    for (std::uint32_t c = 0; c < cx.count(k); ++c) {
        if (cx.is_hypercubic()) {
            if (cx.cube_dirs(k, c) == axes && in_plane(cx.cube_base(k, c))) z.set(c);
        } else {
            auto vs = cx.simplex_vertices(k, c);
            if (std::all_of(vs.begin(), vs.end(), in_plane)) z.set(c);
        }
    }
    return z;
}

HomologyBasis homology_basis(const CellComplex& cx, int k) {
    HomologyBasis hb;
    hb.degree = k;
    if (k < 0 || k > cx.dim()) return hb;
    const std::size_t n = cx.count(k);
    if (is_torus(cx)) {
        for (std::uint32_t m = 0; m < (1u << cx.dim()); ++m)
            if (std::popcount(m) == k) {
                hb.cocycles.push_back(torus_cocycle(cx, m).bits());
                hb.cycles.push_back(coordinate_subtorus(cx, m));
            }
    } else {
        hb.cocycles = quotient_reps(coboundary_images(cx, k), cocycle_basis(cx, k), n);
        std::vector<BitVec> zk = k == 0 ? std::vector<BitVec>{} : nullspace(coboundary_images(cx, k), n);
        if (k == 0)
            for (std::uint32_t v = 0; v < n; ++v) {
                BitVec e(n);
                e.set(v);
                zk.push_back(e);
            }
        hb.cycles = quotient_reps(boundary_images(cx, k), zk, n);
    }
    const std::size_t b = hb.cocycles.size();
    if (hb.cycles.size() != b) throw std::logic_error("homology and cohomology ranks differ");
    hb.rank = b;
    if (b == 0) return hb;
    // Dualize the cycles against the cocycles.
    std::vector<BitVec> P(b, BitVec(b));
    for (std::size_t i = 0; i < b; ++i)
        for (std::size_t j = 0; j < b; ++j) P[i].set(j, hb.cocycles[i].dot(hb.cycles[j]));
    auto Q = inverse(P);
    std::vector<BitVec> dual(b, BitVec(n));
    for (std::size_t j = 0; j < b; ++j)
        for (std::size_t m = 0; m < b; ++m)
            if (Q[m].get(j)) dual[j] ^= hb.cycles[m];
    hb.cycles = std::move(dual);
    return hb;
}

// ---------------------------------------------------------------- flat sectors

namespace {

void require_degrees(int d, int l, int m, int n) {
    if (l < 1 || m < 1 || n < 1 || l + m + n != d + 1)
        throw std::invalid_argument("flat sectors need 1 <= l, m, n and l + m + n = d + 1");
}

template <class Basis, class Triple>
CupTensor build_tensor(int l, int m, int n, Basis&& basis, Triple&& triple) {
    CupTensor t;
    t.l = l;
    t.m = m;
    t.n = n;
    auto A = basis(l), B = basis(m), C = basis(n), X = basis(l - 1), Y = basis(m - 1), Z = basis(n - 1);
    t.bl = A.size();
    t.bm = B.size();
    t.bn = C.size();
    t.ab.assign(t.bl, std::vector<BitVec>(t.bm, BitVec(Z.size())));
    t.ac.assign(t.bl, std::vector<BitVec>(t.bn, BitVec(Y.size())));
    t.bc.assign(t.bm, std::vector<BitVec>(t.bn, BitVec(X.size())));
    for (std::size_t i = 0; i < t.bl; ++i)
        for (std::size_t j = 0; j < t.bm; ++j)
            for (std::size_t k = 0; k < Z.size(); ++k) t.ab[i][j].set(k, triple(A[i], B[j], Z[k]));
    for (std::size_t i = 0; i < t.bl; ++i)
        for (std::size_t j = 0; j < t.bn; ++j)
            for (std::size_t k = 0; k < Y.size(); ++k) t.ac[i][j].set(k, triple(A[i], Y[k], C[j]));
    for (std::size_t i = 0; i < t.bm; ++i)
        for (std::size_t j = 0; j < t.bn; ++j)
            for (std::size_t k = 0; k < X.size(); ++k) t.bc[i][j].set(k, triple(X[k], B[i], C[j]));
    return t;
}

} // namespace

CupTensor cup_tensor(const CellComplex& cx, int l, int m, int n) {
    require_degrees(cx.dim(), l, m, n);
    auto basis = [&](int k) {
        std::vector<Cochain> out;
        for (const auto& v : homology_basis(cx, k).cocycles) out.push_back(as_cochain(cx, k, v));
        return out;
    };
    auto triple = [](const Cochain& a, const Cochain& b, const Cochain& c) { return integrate(cup(cup(a, b), c)); };
    return build_tensor(l, m, n, basis, triple);
}

CupTensor cup_tensor(const ManifoldModel& model, int l, int m, int n) {
    require_degrees(model.dim(), l, m, n);
    auto basis = [&](int k) {
        std::vector<BitVec> out;
        for (auto i : model.basis(k)) {
            BitVec e(model.size());
            e.set(i);
            out.push_back(e);
        }
        return out;
    };
    auto triple = [&](const BitVec& a, const BitVec& b, const BitVec& c) { return model.integrate(model.cup(model.cup(a, b), c)); };
    return build_tensor(l, m, n, basis, triple);
}

nlohmann::json FlatSectorResult::to_json() const {
    nlohmann::json j{{"count", count}};
    auto bits = [](const BitVec& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) s += v.get(i) ? '1' : '0';
        return s;
    };
    if (!sectors.empty()) {
        j["sectors"] = nlohmann::json::array();
        for (const auto& s : sectors) j["sectors"].push_back({bits(s.a), bits(s.b), bits(s.c)});
    }
    return j;
}

namespace {

// Rows of the linear map x -> sum_j x_j col[j], where col[j] has `out` bits.
std::vector<BitVec> map_rows(const std::vector<BitVec>& cols, std::size_t out) {
    std::vector<BitVec> rows(out, BitVec(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t k = 0; k < out; ++k)
            if (cols[j].get(k)) rows[k].set(j);
    return rows;
}

BitVec from_index(std::uint64_t x, std::size_t n) {
    BitVec v(n);
    for (std::size_t i = 0; i < n; ++i)
        if (x >> i & 1u) v.set(i);
    return v;
}

BitVec combine(const std::vector<BitVec>& basis, std::uint64_t x, std::size_t n) {
    BitVec v(n);
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (x >> i & 1u) v ^= basis[i];
    return v;
}

} // namespace

FlatSectorResult enumerate_flat_sectors(const CupTensor& t, std::size_t list_limit) {
    if (t.bl > 30 || t.bm > 30 || t.bn > 30) throw std::invalid_argument("flat-sector enumeration: Betti numbers too large");
    FlatSectorResult res;
    const std::size_t zl = t.bl ? t.ab[0][0].size() : 0;
    const std::size_t yl = t.bl ? (t.bn ? t.ac[0][0].size() : 0) : 0;
    const std::size_t xl = t.bm && t.bn ? t.bc[0][0].size() : 0;
    for (std::uint64_t ai = 0; ai < (std::uint64_t{1} << t.bl); ++ai) {
        BitVec a = from_index(ai, t.bl);
        // Linear conditions on b and on c coming from a.
        std::vector<BitVec> colb(t.bm, BitVec(zl)), colc(t.bn, BitVec(yl));
        for (auto i : a.ones()) {
            for (std::size_t j = 0; j < t.bm; ++j) colb[j] ^= t.ab[i][j];
            for (std::size_t j = 0; j < t.bn; ++j) colc[j] ^= t.ac[i][j];
        }
        auto Kb = nullspace(map_rows(colb, zl), t.bm);
        auto Kc = nullspace(map_rows(colc, yl), t.bn);
        for (std::uint64_t bi = 0; bi < (std::uint64_t{1} << Kb.size()); ++bi) {
            BitVec b = combine(Kb, bi, t.bm);
            std::vector<BitVec> colbc(t.bn, BitVec(xl));
            for (auto i : b.ones())
                for (std::size_t j = 0; j < t.bn; ++j) colbc[j] ^= t.bc[i][j];
            // Restrict c -> b cup c to the kernel Kc.
            std::vector<BitVec> img;
            for (const auto& kc : Kc) {
                BitVec v(xl);
                for (auto j : kc.ones()) v ^= colbc[j];
                img.push_back(v);
            }
            std::vector<BitVec> kc_coords = nullspace(map_rows(img, xl), Kc.size());
            res.count += std::uint64_t{1} << kc_coords.size();
            if (list_limit && res.sectors.size() < list_limit) {
                std::vector<BitVec> cb;
                for (const auto& w : kc_coords) {
                    BitVec c(t.bn);
                    for (auto j : w.ones()) c ^= Kc[j];
                    cb.push_back(c);
                }
                for (std::uint64_t ci = 0; ci < (std::uint64_t{1} << cb.size()) && res.sectors.size() < list_limit; ++ci)
                    res.sectors.push_back({a, b, combine(cb, ci, t.bn)});
            }
        }
    }
    if (res.count > list_limit) res.sectors.clear();
    return res;
}

// ------------------------------------------------------------------ GSD

namespace {

BitVec place(const Layout& L, Reg r, const BitVec& cochain, BitVec z) {
    for (auto i : cochain.ones()) z.flip(L.var(r, i));
    return z;
}

std::vector<MagicOperator> zero_flip_generators(const Hamiltonian& h) {
    const auto& L = h.layout;
    const auto& cx = L.complex();
    std::vector<std::vector<const Term*>> gauss(3);
    for (int s = 1; s <= 3; ++s) gauss[s - 1].resize(L.count(Layout::matter(s)), nullptr);
    for (const auto& t : h.terms)
        if (t.kind == TermKind::gauss) gauss[t.species - 1][t.cell] = &t;
    std::vector<MagicOperator> gens;
    for (int s = 1; s <= 3; ++s) {
        const int k = L.degree(Layout::matter(s));
        if (L.count(Layout::matter(s)) == 0) continue;
        for (const auto& lam : cocycle_basis(cx, k)) {
            MagicOperator prod;
            bool complete = true;
            for (auto c : lam.ones()) {
                if (!gauss[s - 1][c]) {
                    complete = false;
                    break;
                }
                prod = compose(gauss[s - 1][c]->op, prod);
            }
            if (!complete) continue;
            if (!prod.xmask.empty()) throw std::logic_error("closed matter cochain with nonzero Gauss flip");
            if (!prod.phase.is_zero() || prod.negative || !prod.checks.empty()) gens.push_back(std::move(prod));
        }
    }
    // Squares of individual Gauss terms that read their own flips.
    for (const auto& t : h.terms) {
        if (t.kind != TermKind::gauss) continue;
        auto rv = t.op.read_vars();
        bool self = std::any_of(t.op.xmask.begin(), t.op.xmask.end(),
                                [&](std::uint32_t v) { return std::binary_search(rv.begin(), rv.end(), v); });
        if (self) gens.push_back(compose(t.op, t.op));
    }
    return gens;
}

} // namespace

GsdResult gsd_monomial(const Hamiltonian& h, int max_log_orbits) {
    if (!commutation_suite(h).ok()) throw std::invalid_argument("gsd_monomial: Hamiltonian terms do not commute");
    const auto& L = h.layout;
    const auto& cx = L.complex();
    Reg regs[3] = {Reg::a, Reg::b, Reg::c};
    std::vector<BitVec> reps[3];
    std::size_t total = 0;
    for (int s = 0; s < 3; ++s) {
        reps[s] = homology_basis(cx, L.degree(regs[s])).cocycles;
        total += reps[s].size();
    }
    if (static_cast<int>(total) > max_log_orbits) throw std::invalid_argument("gsd_monomial: too many flux-free orbits");
    auto gens = zero_flip_generators(h);
    GsdResult res;
    res.orbits = std::uint64_t{1} << total;
    res.stabilizer_rank = gens.size();
    for (std::uint64_t x = 0; x < res.orbits; ++x) {
        BitVec z(L.num_vars());
        std::size_t bit = 0;
        for (int s = 0; s < 3; ++s)
            for (const auto& r : reps[s])
                if (x >> bit++ & 1u) z = place(L, regs[s], r, std::move(z));
        bool ok = true;
        for (const auto& g : gens) {
            BitVec w = z;
            int c = g.apply(w);
            if (c == 0) throw std::logic_error("flux-free configuration violates a Gauss check");
            if (c != 1) {
                ok = false;
                break;
            }
        }
        if (ok) ++res.gsd;
    }
    return res;
}

std::uint64_t gsd_bruteforce(const Hamiltonian& h, int max_log_configs) {
    const auto& L = h.layout;
    const auto& cx = L.complex();
    Reg regs[3] = {Reg::a, Reg::b, Reg::c};
    std::vector<BitVec> basis;
    for (int s = 0; s < 3; ++s) {
        if (L.count(regs[s]) == 0) continue;
        for (const auto& z : cocycle_basis(cx, L.degree(regs[s]))) basis.push_back(place(L, regs[s], z, BitVec(L.num_vars())));
    }
    if (static_cast<int>(basis.size()) > max_log_configs) throw std::invalid_argument("gsd_bruteforce: too many flux-free configurations");
    std::vector<const MagicOperator*> gauss;
    for (const auto& t : h.terms)
        if (t.kind == TermKind::gauss) gauss.push_back(&t.op);
    std::unordered_map<BitVec, int, BitVecHash> phase;
    std::uint64_t good = 0;
    BitVec z(L.num_vars());
    const std::uint64_t N = std::uint64_t{1} << basis.size();
    for (std::uint64_t g = 0; g < N; ++g) {
        if (g) z ^= basis[std::countr_zero(g)]; // Gray code walk
        if (phase.count(z)) continue;
        bool consistent = true;
        std::deque<BitVec> queue{z};
        phase.emplace(z, 1);
        while (!queue.empty()) {
            BitVec u = std::move(queue.front());
            queue.pop_front();
            const int pu = phase.at(u);
            for (const auto* op : gauss) {
                BitVec w = u;
                int c = op->apply(w);
                if (c == 0) throw std::logic_error("flux-free configuration violates a Gauss check");
                auto [it, fresh] = phase.emplace(w, c * pu);
                if (fresh) queue.push_back(std::move(w));
                else if (it->second != c * pu) consistent = false;
            }
        }
        if (consistent) ++good;
    }
    return good;
}

// ---------------------------------------------------------------- systoles

nlohmann::json SystoleResult::to_json() const {
    return {{"degree", degree}, {"value", value}, {"lower", lower}, {"upper", upper}, {"exact", exact},
            {"budget_exhausted", budget_exhausted}, {"method", method}};
}

namespace {

struct CycleSearch {
    const CellComplex& cx;
    int k;
    std::vector<std::uint64_t> pair_mask; // per k-cell: basis cocycles containing it
    std::uint64_t budget;
    std::uint64_t nodes = 0;
    bool exhausted = false;
    std::size_t limit = 0; // look for weight <= limit
    std::vector<std::uint32_t> cells;
    std::vector<std::uint32_t> bd; // sorted (k-1)-faces of the partial chain
    std::uint32_t seed = 0;
    std::size_t max_faces = 1;
    bool found = false;
    std::vector<std::uint32_t> witness;

    void toggle_faces(std::uint32_t c) {
        for (auto f : cx.boundary(k, c)) {
            auto it = std::lower_bound(bd.begin(), bd.end(), f);
            if (it != bd.end() && *it == f) bd.erase(it);
            else bd.insert(it, f);
        }
    }

    bool contains(std::uint32_t c) const { return std::find(cells.begin(), cells.end(), c) != cells.end(); }

    void dfs(std::uint64_t pairing) {
        if (found || exhausted) return;
        if (++nodes > budget) {
            exhausted = true;
            return;
        }
        if (bd.empty()) {
            if (pairing) {
                found = true;
                witness = cells;
            }
            return; // a trivial closed sub-chain cannot be part of a minimal cycle
        }
        if (cells.size() + (bd.size() + max_faces - 1) / max_faces > limit) return;
        // Branch on the face with the fewest admissible cofaces.
        std::uint32_t pick = bd[0];
        std::size_t best = SIZE_MAX;
        for (auto f : bd) {
            std::size_t cnt = 0;
            for (auto c : cx.cofaces(k - 1, f))
                if (c > seed && !contains(c)) ++cnt;
            if (cnt < best) {
                best = cnt;
                pick = f;
                if (cnt <= 1) break;
            }
        }
        if (best == 0) return;
        for (auto c : cx.cofaces(k - 1, pick)) {
            if (c <= seed || contains(c)) continue;
            cells.push_back(c);
            toggle_faces(c);
            dfs(pairing ^ pair_mask[c]);
            toggle_faces(c);
            cells.pop_back();
            if (found || exhausted) return;
        }
    }

    // Searches for a nontrivial cycle of weight <= w.
    bool run(std::size_t w) {
        limit = w;
        for (std::uint32_t s = 0; s < cx.count(k) && !found && !exhausted; ++s) {
            seed = s;
            cells = {s};
            bd.clear();
            toggle_faces(s);
            dfs(pair_mask[s]);
        }
        return found;
    }
};

// Number of pairwise disjoint translates of `cocycle` (hypercubic tori only):
// translates along its own directions by every vector in the box of side L.
std::size_t disjoint_translates(const CellComplex& cx, int k, const BitVec& cocycle, std::uint32_t axes) {
    std::vector<int> axis;
    for (int i = 0; i < cx.dim(); ++i)
        if (axes >> i & 1u) axis.push_back(i);
    std::size_t combos = 1;
    for (int a : axis) combos *= static_cast<std::size_t>(cx.lengths()[a]);
    BitVec used(cx.count(k));
    auto supp = cocycle.ones();
    for (std::size_t t = 0; t < combos; ++t) {
        BitVec tr(cx.count(k));
        for (auto c : supp) {
            std::uint32_t base = cx.cube_base(k, c);
            std::size_t rr = t;
            for (int a : axis) {
                int L = cx.lengths()[a];
                base = cx.shift(base, a, static_cast<int>(rr % L));
                rr /= L;
            }
            tr.set(cx.cube_index(base, cx.cube_dirs(k, c)));
        }
        if (!is_cocycle(cx, k, tr) || (used & tr).any()) return 0;
        used ^= tr;
    }
    return combos;
}

} // namespace

SystoleResult min_weight_logical(const CellComplex& cx, int k, std::uint64_t budget) {
    SystoleResult res;
    res.degree = k;
    auto hb = homology_basis(cx, k);
    if (hb.rank == 0) {
        res.exact = true;
        res.method = "trivial homology";
        return res;
    }
    if (hb.rank > 64) throw std::invalid_argument("min_weight_logical: Betti number above 64");
    // Upper bound from the representatives.
    res.upper = SIZE_MAX;
    for (const auto& z : hb.cycles)
        if (z.popcount() < res.upper) {
            res.upper = z.popcount();
            res.witness = z;
        }
    res.lower = 1;
    // Packing certificate.
    std::size_t packing = 0;
    if (cx.is_hypercubic()) {
        packing = SIZE_MAX;
        std::size_t idx = 0;
        for (std::uint32_t m = 0; m < (1u << cx.dim()); ++m) {
            if (std::popcount(m) != k) continue;
            packing = std::min(packing, disjoint_translates(cx, k, hb.cocycles[idx++], m));
        }
        if (packing == SIZE_MAX) packing = 0;
        res.lower = std::max(res.lower, packing);
    }
    // Iterative deepening: every completed level w proves sys > w.
    CycleSearch cs{cx, k, std::vector<std::uint64_t>(cx.count(k), 0), budget, 0, false, 0, {}, {}, 0, 1, false, {}};
    for (std::size_t i = 0; i < hb.rank; ++i)
        for (auto c : hb.cocycles[i].ones()) cs.pair_mask[c] |= std::uint64_t{1} << i;
    cs.max_faces = k == 0 ? 1 : cx.boundary(k, 0).size();
    std::size_t searched = 0;
    if (k >= 1) {
        for (std::size_t w = 1; w < res.upper; ++w) {
            if (cs.run(w)) {
                res.upper = cs.witness.size();
                res.witness = BitVec(cx.count(k));
                for (auto c : cs.witness) res.witness.set(c);
                break;
            }
            if (cs.exhausted) break;
            searched = w;
        }
    }
    res.budget_exhausted = cs.exhausted;
    res.lower = std::max(res.lower, searched + 1);
    if (res.lower > res.upper) throw std::logic_error("systole bounds crossed");
    res.exact = res.lower == res.upper;
    res.value = res.exact ? res.upper : res.lower;
    if (!cs.exhausted) res.method = "exhaustive";
    else if (res.exact) res.method = "packing bound";
    else res.method = "partial search";
    return res;
}

nlohmann::json CodeParameters::to_json() const {
    nlohmann::json j{{"n_phys", n_phys}, {"flat_sectors", flat_sectors}, {"distance", distance}, {"distance_exact", distance_exact}};
    if (gsd) j["gsd"] = *gsd;
    for (const auto& s : systoles) j["systoles"].push_back(s.to_json());
    return j;
}

CodeParameters code_parameters(const CellComplex& cx, int l, int m, int n, bool twist, std::uint64_t budget) {
    CodeParameters cp;
    const int d = cx.dim();
    cp.n_phys = cx.count(l) + cx.count(m) + cx.count(n);
    std::size_t logs = 0;
    for (int k : {l, m, n}) logs += homology_basis(cx, k).rank;
    if (twist) cp.flat_sectors = enumerate_flat_sectors(cup_tensor(cx, l, m, n)).count;
    else cp.flat_sectors = std::uint64_t{1} << logs;
    if (logs <= 12 && cx.count(l) + cx.count(m) + cx.count(n) <= 4096)
        cp.gsd = gsd_monomial(build_cubic(cx, l, m, n, twist)).gsd;
    std::vector<int> degs;
    for (int k : {l, m, n, d - l, d - m, d - n})
        if (std::find(degs.begin(), degs.end(), k) == degs.end()) degs.push_back(k);
    std::sort(degs.begin(), degs.end());
    cp.distance = SIZE_MAX;
    cp.distance_exact = true;
    for (int k : degs) {
        auto s = min_weight_logical(cx, k, budget);
        if (s.value > 0) cp.distance = std::min(cp.distance, s.value);
        cp.distance_exact = cp.distance_exact && s.exact;
        cp.systoles.push_back(std::move(s));
    }
    if (cp.distance == SIZE_MAX) cp.distance = 0;
    return cp;
}

} // namespace cubic
