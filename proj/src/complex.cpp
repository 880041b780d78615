#include "cubic/complex.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace cubic {

namespace {

std::vector<std::uint32_t> masks_of_popcount(int d, int k) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t m = 0; m < (1u << d); ++m)
        if (std::popcount(m) == k) out.push_back(m);
    return out;
}

// Determinant of a small integer matrix by cofactor-free elimination over rationals
// (entries stay tiny for unimodular Kuhn simplices).
int small_det(std::vector<std::vector<long long>> a) {
    const int n = static_cast<int>(a.size());
    long long sign = 1, prev = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a[k][k] == 0) {
            int r = k + 1;
            while (r < n && a[r][k] == 0) ++r;
            if (r == n) return 0;
            std::swap(a[k], a[r]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return static_cast<int>(sign * a[n - 1][n - 1]);
}

} // namespace

CellComplex CellComplex::hypercubic_torus(const std::vector<int>& lengths) {
    if (lengths.empty()) throw std::invalid_argument("hypercubic torus needs d >= 1");
    if (lengths.size() > 16) throw std::invalid_argument("hypercubic torus: dimension too large");
    for (int L : lengths)
        if (L < 2) throw std::invalid_argument("hypercubic torus: every length must be >= 2");

    CellComplex cx;
    cx.kind_ = ComplexKind::hypercubic;
    cx.family_ = "hypercubic";
    cx.d_ = static_cast<int>(lengths.size());
    cx.lengths_ = lengths;
    cx.strides_.resize(cx.d_);
    std::size_t nv = 1;
    for (int i = 0; i < cx.d_; ++i) {
        cx.strides_[i] = static_cast<std::uint32_t>(nv);
        nv *= static_cast<std::size_t>(lengths[i]);
    }
    if (nv * (std::size_t{1} << cx.d_) > 0xffffffffull)
        throw std::invalid_argument("hypercubic torus: too many cells");
    cx.nverts_ = nv;

    const int d = cx.d_;
    cx.dirs_.resize(d + 1);
    cx.dir_pos_.assign(1, std::vector<int>(1u << d, -1));
    for (int k = 0; k <= d; ++k) {
        cx.dirs_[k] = masks_of_popcount(d, k);
        for (std::size_t p = 0; p < cx.dirs_[k].size(); ++p) cx.dir_pos_[0][cx.dirs_[k][p]] = static_cast<int>(p);
        cx.counts_.push_back(cx.dirs_[k].size() * nv);
    }

    cx.bnd_off_.resize(d + 1);
    cx.bnd_.resize(d + 1);
    cx.bnd_sign_.resize(d + 1);
    cx.bnd_off_[0].assign(cx.counts_[0] + 1, 0);
    for (int k = 1; k <= d; ++k) {
        auto& off = cx.bnd_off_[k];
        auto& bd = cx.bnd_[k];
        auto& sg = cx.bnd_sign_[k];
        off.reserve(cx.counts_[k] + 1);
        off.push_back(0);
        bd.reserve(cx.counts_[k] * 2 * k);
        for (std::uint32_t i = 0; i < cx.counts_[k]; ++i) {
            std::uint32_t x = cx.cube_base(k, i), S = cx.cube_dirs(k, i);
            int j = 0;
            for (int s = 0; s < d; ++s) {
                if (!(S >> s & 1u)) continue;
                std::uint32_t T = S & ~(1u << s);
                std::int8_t sj = (j % 2 == 0) ? 1 : -1;
                bd.push_back(cx.cube_index(x, T));
                sg.push_back(static_cast<std::int8_t>(-sj));
                bd.push_back(cx.cube_index(cx.shift(x, s, 1), T));
                sg.push_back(sj);
                ++j;
            }
            off.push_back(static_cast<std::uint32_t>(bd.size()));
        }
    }
    cx.orient_.assign(cx.counts_[d], 1);
    cx.finish_incidence();
    return cx;
}

std::uint64_t CellComplex::label_key(std::uint32_t base, const std::vector<int>& rank) const {
    std::uint64_t code = 0, mul = 1;
    for (int i = 0; i < d_; ++i) {
        code += static_cast<std::uint64_t>(rank[i]) * mul;
        mul *= static_cast<std::uint64_t>(d_ + 1);
    }
    return static_cast<std::uint64_t>(base) * mul + code;
}

CellComplex CellComplex::freudenthal_torus(int d, int L) {
    if (d < 1) throw std::invalid_argument("freudenthal torus needs d >= 1");
    if (d > 8) throw std::invalid_argument("freudenthal torus: dimension too large");
    if (L < 2) throw std::invalid_argument("freudenthal torus: L must be >= 2");

    CellComplex cx;
    cx.kind_ = ComplexKind::simplicial;
    cx.family_ = "freudenthal";
    cx.kuhn_ = true;
    cx.d_ = d;
    cx.lengths_.assign(d, L);
    cx.strides_.resize(d);
    std::size_t nv = 1;
    for (int i = 0; i < d; ++i) {
        cx.strides_[i] = static_cast<std::uint32_t>(nv);
        nv *= static_cast<std::size_t>(L);
    }
    cx.nverts_ = nv;

    cx.verts_.resize(d + 1);
    cx.chainpos_.resize(d + 1);
    cx.sbase_.resize(d + 1);
    cx.srank_.resize(d + 1);
    cx.lookup_.resize(d + 1);

    for (int k = 0; k <= d; ++k) {
        // Rank functions r: axes -> {0..k} hitting every block 1..k.
        std::vector<std::vector<int>> ranks;
        std::vector<int> r(d, 0);
        std::size_t total = 1;
        for (int i = 0; i < d; ++i) total *= static_cast<std::size_t>(k + 1);
        for (std::size_t code = 0; code < total; ++code) {
            std::size_t c = code;
            std::vector<int> hit(k + 1, 0);
            for (int i = 0; i < d; ++i) {
                r[i] = static_cast<int>(c % (k + 1));
                c /= (k + 1);
                hit[r[i]] = 1;
            }
            bool ok = true;
            for (int b = 1; b <= k; ++b) ok = ok && hit[b];
            if (ok) ranks.push_back(r);
        }
        for (const auto& rk : ranks) {
            for (std::uint32_t x = 0; x < nv; ++x) {
                std::vector<std::uint32_t> chain(k + 1);
                chain[0] = x;
                for (int j = 1; j <= k; ++j) {
                    std::uint32_t mask = 0;
                    for (int i = 0; i < d; ++i)
                        if (rk[i] == j) mask |= 1u << i;
                    chain[j] = cx.shift_mask(chain[j - 1], mask);
                }
                std::vector<std::uint8_t> order(k + 1);
                std::iota(order.begin(), order.end(), 0);
                std::sort(order.begin(), order.end(), [&](int a, int b) { return chain[a] < chain[b]; });
                std::vector<std::uint32_t> sorted(k + 1);
                for (int p = 0; p <= k; ++p) sorted[p] = chain[order[p]];
                auto idx = static_cast<std::uint32_t>(cx.sbase_[k].size());
                cx.lookup_[k].emplace(cx.label_key(x, rk), idx);
                cx.verts_[k].insert(cx.verts_[k].end(), sorted.begin(), sorted.end());
                cx.chainpos_[k].insert(cx.chainpos_[k].end(), order.begin(), order.end());
                cx.sbase_[k].push_back(x);
                cx.srank_[k].push_back(rk);
            }
        }
        cx.counts_.push_back(cx.sbase_[k].size());
    }

    cx.bnd_off_.resize(d + 1);
    cx.bnd_.resize(d + 1);
    cx.bnd_sign_.resize(d + 1);
    cx.bnd_off_[0].assign(cx.counts_[0] + 1, 0);
    for (int k = 1; k <= d; ++k) {
        auto& off = cx.bnd_off_[k];
        off.push_back(0);
        std::vector<int> pos(k);
        for (std::uint32_t i = 0; i < cx.counts_[k]; ++i) {
            for (int omit = 0; omit <= k; ++omit) {
                int t = 0;
                for (int p = 0; p <= k; ++p)
                    if (p != omit) pos[t++] = p;
                cx.bnd_[k].push_back(cx.subsimplex(k, i, pos));
                cx.bnd_sign_[k].push_back(omit % 2 == 0 ? 1 : -1);
            }
            off.push_back(static_cast<std::uint32_t>(cx.bnd_[k].size()));
        }
    }

    // Orientation of top simplices from the sign of the unwrapped edge-vector determinant.
    cx.orient_.resize(cx.counts_[d]);
    for (std::uint32_t i = 0; i < cx.counts_[d]; ++i) {
        const auto& rk = cx.srank_[d][i];
        std::vector<std::vector<long long>> off(d + 1, std::vector<long long>(d, 0));
        for (int j = 1; j <= d; ++j) {
            off[j] = off[j - 1];
            for (int a = 0; a < d; ++a)
                if (rk[a] == j) off[j][a] += 1;
        }
        const std::uint8_t* cp = cx.chainpos_[d].data() + static_cast<std::size_t>(i) * (d + 1);
        std::vector<std::vector<long long>> m(d, std::vector<long long>(d));
        for (int p = 1; p <= d; ++p)
            for (int a = 0; a < d; ++a) m[p - 1][a] = off[cp[p]][a] - off[cp[0]][a];
        cx.orient_[i] = small_det(m) > 0 ? 1 : -1;
    }
    cx.finish_incidence();
    return cx;
}

CellComplex CellComplex::simplex_boundary(int d) {
    if (d < 1 || d > 10) throw std::invalid_argument("simplex boundary: need 1 <= d <= 10");
    CellComplex cx;
    cx.kind_ = ComplexKind::simplicial;
    cx.family_ = "sphere";
    cx.d_ = d;
    const int nv = d + 2;
    cx.nverts_ = static_cast<std::size_t>(nv);
    cx.verts_.resize(d + 1);
    cx.lookup_.resize(d + 1);
    for (int k = 0; k <= d; ++k) {
        for (std::uint32_t m = 1; m < (1u << nv); ++m) {
            if (std::popcount(m) != k + 1) continue;
            std::vector<std::uint32_t> vs;
            for (int v = 0; v < nv; ++v)
                if (m >> v & 1u) vs.push_back(static_cast<std::uint32_t>(v));
            cx.lookup_[k].emplace(m, static_cast<std::uint32_t>(cx.verts_[k].size() / (k + 1)));
            cx.verts_[k].insert(cx.verts_[k].end(), vs.begin(), vs.end());
        }
        cx.counts_.push_back(cx.verts_[k].size() / (k + 1));
    }
    cx.bnd_off_.resize(d + 1);
    cx.bnd_.resize(d + 1);
    cx.bnd_sign_.resize(d + 1);
    cx.bnd_off_[0].assign(cx.counts_[0] + 1, 0);
    for (int k = 1; k <= d; ++k) {
        cx.bnd_off_[k].push_back(0);
        std::vector<int> pos(k);
        for (std::uint32_t i = 0; i < cx.counts_[k]; ++i) {
            for (int omit = 0; omit <= k; ++omit) {
                int t = 0;
                for (int p = 0; p <= k; ++p)
                    if (p != omit) pos[t++] = p;
                cx.bnd_[k].push_back(cx.subsimplex(k, i, pos));
                cx.bnd_sign_[k].push_back(omit % 2 == 0 ? 1 : -1);
            }
            cx.bnd_off_[k].push_back(static_cast<std::uint32_t>(cx.bnd_[k].size()));
        }
    }
    // Top cells are the facets of the (d+1)-simplex; facet missing vertex j gets (-1)^j.
    cx.orient_.resize(cx.counts_[d]);
    for (std::uint32_t i = 0; i < cx.counts_[d]; ++i) {
        std::uint32_t present = 0;
        for (auto v : cx.simplex_vertices(d, i)) present |= 1u << v;
        int missing = std::countr_zero(~present);
        cx.orient_[i] = missing % 2 == 0 ? 1 : -1;
    }
    cx.finish_incidence();
    return cx;
}

void CellComplex::finish_incidence() {
    cob_off_.assign(d_ + 1, {});
    cob_.assign(d_ + 1, {});
    for (int k = 0; k <= d_; ++k) {
        std::vector<std::uint32_t> deg(counts_[k] + 1, 0);
        if (k < d_)
            for (auto f : bnd_[k + 1]) ++deg[f + 1];
        for (std::size_t i = 1; i < deg.size(); ++i) deg[i] += deg[i - 1];
        cob_off_[k] = deg;
        cob_[k].resize(deg.back());
        if (k < d_) {
            std::vector<std::uint32_t> fill(deg.begin(), deg.end() - 1);
            for (std::uint32_t c = 0; c < counts_[k + 1]; ++c)
                for (auto f : boundary(k + 1, c)) cob_[k][fill[f]++] = c;
        }
    }
}

std::int64_t CellComplex::euler_characteristic() const {
    std::int64_t chi = 0;
    for (int k = 0; k <= d_; ++k) chi += (k % 2 == 0 ? 1 : -1) * static_cast<std::int64_t>(counts_[k]);
    return chi;
}

std::span<const std::uint32_t> CellComplex::boundary(int k, std::uint32_t i) const {
    if (k <= 0) return {};
    const auto& off = bnd_off_[k];
    return {bnd_[k].data() + off[i], off[i + 1] - off[i]};
}

std::span<const std::int8_t> CellComplex::boundary_signs(int k, std::uint32_t i) const {
    if (k <= 0) return {};
    const auto& off = bnd_off_[k];
    return {bnd_sign_[k].data() + off[i], off[i + 1] - off[i]};
}

std::span<const std::uint32_t> CellComplex::cofaces(int k, std::uint32_t i) const {
    if (k >= d_) return {};
    const auto& off = cob_off_[k];
    return {cob_[k].data() + off[i], off[i + 1] - off[i]};
}

std::vector<std::uint32_t> CellComplex::boundary_of(CellRef c) const {
    if (c.degree < 0 || c.degree > d_ || c.index >= count(c.degree))
        throw std::out_of_range("boundary_of: invalid cell");
    auto b = boundary(c.degree, c.index);
    return {b.begin(), b.end()};
}

std::vector<std::uint32_t> CellComplex::cofaces_of(CellRef c) const {
    if (c.degree < 0 || c.degree > d_ || c.index >= count(c.degree))
        throw std::out_of_range("cofaces_of: invalid cell");
    auto b = cofaces(c.degree, c.index);
    return {b.begin(), b.end()};
}

std::vector<std::uint32_t> CellComplex::cells_of_dim(int k) const {
    if (k < 0 || k > d_) throw std::out_of_range("cells_of_dim: degree out of range");
    std::vector<std::uint32_t> v(counts_[k]);
    std::iota(v.begin(), v.end(), 0);
    return v;
}

std::uint32_t CellComplex::vertex_index(std::span<const int> coords) const {
    std::uint32_t v = 0;
    for (int i = 0; i < d_; ++i) {
        int L = lengths_[i];
        int c = ((coords[i] % L) + L) % L;
        v += static_cast<std::uint32_t>(c) * strides_[i];
    }
    return v;
}

std::vector<int> CellComplex::vertex_coords(std::uint32_t v) const {
    std::vector<int> c(d_);
    for (int i = 0; i < d_; ++i) {
        c[i] = static_cast<int>(v % static_cast<std::uint32_t>(lengths_[i]));
        v /= static_cast<std::uint32_t>(lengths_[i]);
    }
    return c;
}

std::uint32_t CellComplex::shift(std::uint32_t v, int axis, int delta) const {
    int L = lengths_[axis];
    int c = static_cast<int>((v / strides_[axis]) % static_cast<std::uint32_t>(L));
    int nc = ((c + delta) % L + L) % L;
    return v + static_cast<std::uint32_t>(nc - c) * strides_[axis];
}

std::uint32_t CellComplex::shift_mask(std::uint32_t v, std::uint32_t mask, int delta) const {
    for (int a = 0; a < d_; ++a)
        if (mask >> a & 1u) v = shift(v, a, delta);
    return v;
}

std::uint32_t CellComplex::cube_index(std::uint32_t base, std::uint32_t dirmask) const {
    return static_cast<std::uint32_t>(dir_pos_[0][dirmask]) * static_cast<std::uint32_t>(nverts_) + base;
}

std::span<const std::uint32_t> CellComplex::simplex_vertices(int k, std::uint32_t i) const {
    return {verts_[k].data() + static_cast<std::size_t>(i) * (k + 1), static_cast<std::size_t>(k + 1)};
}

std::uint32_t CellComplex::subsimplex(int k, std::uint32_t i, std::span<const int> positions) const {
    const int m = static_cast<int>(positions.size()) - 1;
    if (m < 0) throw std::invalid_argument("subsimplex: empty face");
    if (!kuhn_) {
        std::uint64_t key = 0;
        auto vs = simplex_vertices(k, i);
        for (int p : positions) key |= std::uint64_t{1} << vs[p];
        return lookup_[m].at(key);
    }
    std::vector<int> J(positions.size());
    for (std::size_t t = 0; t < positions.size(); ++t) J[t] = chainpos_[k][static_cast<std::size_t>(i) * (k + 1) + positions[t]];
    std::sort(J.begin(), J.end());
    const auto& rk = srank_[k][i];
    std::uint32_t mask0 = 0;
    for (int a = 0; a < d_; ++a)
        if (rk[a] >= 1 && rk[a] <= J[0]) mask0 |= 1u << a;
    std::uint32_t base = shift_mask(sbase_[k][i], mask0);
    std::vector<int> nr(d_, 0);
    for (int a = 0; a < d_; ++a) {
        for (int t = 1; t <= m; ++t)
            if (rk[a] > J[t - 1] && rk[a] <= J[t]) nr[a] = t;
    }
    auto it = lookup_[m].find(label_key(base, nr));
    if (it == lookup_[m].end()) throw std::logic_error("subsimplex: face not found");
    return it->second;
}

std::uint32_t CellComplex::subrange(int k, std::uint32_t i, int from, int to) const {
    std::vector<int> pos;
    for (int p = from; p <= to; ++p) pos.push_back(p);
    return subsimplex(k, i, pos);
}

std::string CellComplex::name() const {
    std::ostringstream os;
    os << family_ << ":d=" << d_;
    if (family_ != "sphere") {
        bool uniform = std::all_of(lengths_.begin(), lengths_.end(), [&](int L) { return L == lengths_[0]; });
        if (uniform) os << ",L=" << lengths_[0];
        else {
            os << ",L=";
            for (std::size_t i = 0; i < lengths_.size(); ++i) os << (i ? "x" : "") << lengths_[i];
        }
    }
    return os.str();
}

nlohmann::json CellComplex::describe() const {
    nlohmann::json j;
    j["kind"] = kind_ == ComplexKind::hypercubic ? "hypercubic-torus" : "simplicial";
    j["family"] = family_;
    j["dims"] = d_;
    j["lengths"] = lengths_;
    return j;
}

CellComplex CellComplex::from_json(const nlohmann::json& j) {
    std::string fam = j.value("family", j.at("kind").get<std::string>() == "hypercubic-torus" ? "hypercubic" : "freudenthal");
    int d = j.at("dims").get<int>();
    if (fam == "hypercubic") return hypercubic_torus(j.at("lengths").get<std::vector<int>>());
    if (fam == "freudenthal") return freudenthal_torus(d, j.at("lengths").at(0).get<int>());
    if (fam == "sphere") return simplex_boundary(d);
    throw std::invalid_argument("unknown complex family: " + fam);
}

CellComplex CellComplex::parse(const std::string& spec) {
    auto colon = spec.find(':');
    std::string fam = spec.substr(0, colon);
    int d = -1;
    std::vector<int> Ls;
    if (colon != std::string::npos) {
        std::stringstream ss(spec.substr(colon + 1));
        std::string item;
        while (std::getline(ss, item, ',')) {
            auto eq = item.find('=');
            if (eq == std::string::npos) throw std::invalid_argument("bad complex spec: " + spec);
            std::string key = item.substr(0, eq), val = item.substr(eq + 1);
            try {
                if (key == "d") d = std::stoi(val);
                else if (key == "L") {
                    std::stringstream vs(val);
                    std::string part;
                    while (std::getline(vs, part, 'x')) Ls.push_back(std::stoi(part));
                } else throw std::invalid_argument("unknown key '" + key + "' in complex spec");
            } catch (const std::logic_error& e) {
                if (dynamic_cast<const std::invalid_argument*>(&e) && key != "d" && key != "L") throw;
                throw std::invalid_argument("bad value in complex spec: " + spec);
            }
        }
    }
    if (fam == "sphere") {
        if (d < 1) throw std::invalid_argument("sphere spec needs d");
        return simplex_boundary(d);
    }
    if (Ls.empty()) throw std::invalid_argument("complex spec needs L: " + spec);
    if (fam == "hypercubic") {
        if (Ls.size() == 1) {
            if (d < 1) throw std::invalid_argument("complex spec needs d: " + spec);
            Ls.assign(d, Ls[0]);
        } else if (d >= 0 && d != static_cast<int>(Ls.size())) {
            throw std::invalid_argument("complex spec: d does not match lengths");
        }
        return hypercubic_torus(Ls);
    }
    if (fam == "freudenthal") {
        if (d < 1 || Ls.size() != 1) throw std::invalid_argument("freudenthal spec needs d and a single L");
        return freudenthal_torus(d, Ls[0]);
    }
    throw std::invalid_argument("unknown complex family: " + fam);
}

CellRef dual_map(const CellComplex& cx, CellRef cell, Side from) {
    if (!cx.is_hypercubic()) throw std::invalid_argument("dual_map: complex must be a hypercubic torus");
    if (cell.degree < 0 || cell.degree > cx.dim() || cell.index >= cx.count(cell.degree))
        throw std::out_of_range("dual_map: invalid cell");
    const int d = cx.dim();
    const std::uint32_t full = (1u << d) - 1;
    std::uint32_t x = cx.cube_base(cell.degree, cell.index);
    std::uint32_t S = cx.cube_dirs(cell.degree, cell.index);
    std::uint32_t T = full & ~S;
    // primal (x,S) has centre x + e_S/2; the dual cell through it spans S^c and
    // starts at x - e_{S^c} + (1/2,...,1/2). The inverse undoes that offset.
    std::uint32_t y = (from == Side::primal) ? cx.shift_mask(x, T, -1) : cx.shift_mask(x, S, +1);
    return {d - cell.degree, cx.cube_index(y, T)};
}

} // namespace cubic
