#include "cubic/cochain.hpp"

#include <bit>
#include <optional>
#include <stdexcept>

#include "cubic/terms.hpp"

namespace cubic {

std::string species_name(Species s) {
    switch (s) {
    case Species::a: return "a";
    case Species::b: return "b";
    case Species::c: return "c";
    default: return "none";
    }
}

Species parse_species(const std::string& s) {
    if (s == "a") return Species::a;
    if (s == "b") return Species::b;
    if (s == "c") return Species::c;
    if (s == "none" || s.empty()) return Species::none;
    throw std::invalid_argument("unknown species: " + s);
}

Cochain::Cochain(const CellComplex& cx, int degree, Species sp)
    : cx_(&cx), degree_(degree), species_(sp), bits_(cx.count(degree)) {
    if (degree < 0) throw std::invalid_argument("cochain degree must be >= 0");
}

Cochain Cochain::indicator(const CellComplex& cx, int degree, std::uint32_t cell, Species sp) {
    Cochain c(cx, degree, sp);
    if (cell >= c.size()) throw std::out_of_range("indicator: cell index out of range");
    c.set(cell);
    return c;
}

Cochain Cochain::random(const CellComplex& cx, int degree, Rng& rng, Species sp) {
    Cochain c(cx, degree, sp);
    auto& w = c.bits_.words();
    for (auto& x : w) x = rng();
    if (c.size() % 64) w.back() &= (std::uint64_t{1} << (c.size() % 64)) - 1;
    return c;
}

Cochain& Cochain::operator+=(const Cochain& o) {
    if (cx_ != o.cx_ || degree_ != o.degree_) throw std::invalid_argument("cochain sum: mismatched complex or degree");
    bits_ ^= o.bits_;
    return *this;
}

bool Cochain::operator==(const Cochain& o) const {
    return cx_ == o.cx_ && degree_ == o.degree_ && bits_ == o.bits_;
}

nlohmann::json Cochain::to_json() const {
    return {{"degree", degree_}, {"species", species_name(species_)}, {"cells", support()}};
}

Cochain Cochain::from_json(const CellComplex& cx, const nlohmann::json& j) {
    Cochain c(cx, j.at("degree").get<int>(), parse_species(j.value("species", "none")));
    for (auto i : j.at("cells").get<std::vector<std::uint32_t>>()) {
        if (i >= c.size()) throw std::out_of_range("cochain json: cell index out of range");
        c.set(i);
    }
    return c;
}

namespace {

void require_same(const Cochain& a, const Cochain& b, const char* what) {
    if (&a.complex() != &b.complex()) throw std::invalid_argument(std::string(what) + ": cochains on different complexes");
}

Species merged(Species x, Species y) { return x == y ? x : Species::none; }

} // namespace

Cochain coboundary(const Cochain& a) {
    const auto& cx = a.complex();
    const int k = a.degree();
    Cochain out(cx, k + 1, a.species());
    for (std::uint32_t c = 0; c < out.size(); ++c) {
        bool v = false;
        for (auto f : cx.boundary(k + 1, c)) v ^= a.get(f);
        if (v) out.set(c);
    }
    return out;
}

std::vector<int> integer_coboundary(const Cochain& a) {
    const auto& cx = a.complex();
    const int k = a.degree();
    std::vector<int> out(cx.count(k + 1), 0);
    for (std::uint32_t c = 0; c < out.size(); ++c) {
        auto fs = cx.boundary(k + 1, c);
        auto sg = cx.boundary_signs(k + 1, c);
        int v = 0;
        for (std::size_t t = 0; t < fs.size(); ++t)
            if (a.get(fs[t])) v += sg[t];
        out[c] = v;
    }
    return out;
}

Cochain cup(const Cochain& a, const Cochain& b) {
    require_same(a, b, "cup");
    const auto& cx = a.complex();
    const int p = a.degree(), n = a.degree() + b.degree();
    Cochain out(cx, n, merged(a.species(), b.species()));
    for (std::uint32_t c = 0; c < out.size(); ++c) {
        bool v = false;
        for_each_cup_term(cx, n, c, p, [&](std::uint32_t f, std::uint32_t g, int) { v ^= a.get(f) && b.get(g); });
        if (v) out.set(c);
    }
    return out;
}

Cochain cup1(const Cochain& a, const Cochain& b) {
    require_same(a, b, "cup1");
    const auto& cx = a.complex();
    if (a.degree() < 1 || b.degree() < 1) throw std::invalid_argument("cup1: both degrees must be >= 1");
    const int p = a.degree(), n = a.degree() + b.degree() - 1;
    Cochain out(cx, n, merged(a.species(), b.species()));
    for (std::uint32_t c = 0; c < out.size(); ++c) {
        bool v = false;
        for_each_cup1_term(cx, n, c, p, [&](std::uint32_t f, std::uint32_t g) { v ^= a.get(f) && b.get(g); });
        if (v) out.set(c);
    }
    return out;
}

bool integrate(const Cochain& a, std::span<const std::uint32_t> region) {
    bool v = false;
    for (auto i : region) {
        if (i >= a.size()) throw std::out_of_range("integrate: region cell out of range");
        v ^= a.get(i);
    }
    return v;
}

bool integrate(const Cochain& a) {
    if (a.degree() != a.complex().dim()) throw std::invalid_argument("integrate: fundamental class needs a top-degree cochain");
    return a.weight() & 1;
}

int pontryagin_integral(const Cochain& b) {
    const auto& cx = b.complex();
    if (b.degree() != 2) throw std::invalid_argument("pontryagin_integral: need a 2-cochain");
    if (cx.dim() != 4) throw std::invalid_argument("pontryagin_integral: need a 4-dimensional complex");
    auto db = integer_coboundary(b);
    Cochain w(cx, 3);
    for (std::uint32_t c = 0; c < db.size(); ++c) {
        if (db[c] & 1) throw std::invalid_argument("pontryagin_integral: cochain is not closed");
        if ((db[c] / 2) & 1) w.set(c);
    }
    long long sum = 0;
    for (std::uint32_t c = 0; c < cx.count(4); ++c) {
        int v = 0;
        for_each_cup_term(cx, 4, c, 2, [&](std::uint32_t f, std::uint32_t g, int s) {
            if (b.get(f) && b.get(g)) v += s;
        });
        bool u = false;
        for_each_cup1_term(cx, 4, c, 2, [&](std::uint32_t f, std::uint32_t g) { u ^= b.get(f) && w.get(g); });
        sum += cx.orientation(c) * v + (u ? 2 : 0);
    }
    return static_cast<int>(((sum % 4) + 4) % 4);
}

bool is_torus(const CellComplex& cx) { return cx.is_hypercubic() || cx.is_kuhn(); }

Cochain wrap_cocycle(const CellComplex& cx, int axis) {
    if (!is_torus(cx)) throw std::invalid_argument("wrap_cocycle: complex is not a torus");
    if (axis < 0 || axis >= cx.dim()) throw std::out_of_range("wrap_cocycle: axis out of range");
    Cochain w(cx, 1);
    const int last = cx.lengths()[axis] - 1;
    for (std::uint32_t e = 0; e < w.size(); ++e) {
        std::uint32_t base;
        bool along;
        if (cx.is_hypercubic()) {
            base = cx.cube_base(1, e);
            along = cx.cube_dirs(1, e) == (1u << axis);
        } else {
            base = cx.kuhn_base(1, e);
            along = cx.kuhn_rank(1, e)[axis] == 1;
        }
        if (along && cx.vertex_coords(base)[axis] == last) w.set(e);
    }
    return w;
}

Cochain torus_cocycle(const CellComplex& cx, std::uint32_t axes) {
    if (!is_torus(cx)) throw std::invalid_argument("torus_cocycle: complex is not a torus");
    if (axes == 0) {
        Cochain one(cx, 0);
        for (std::uint32_t v = 0; v < one.size(); ++v) one.set(v);
        return one;
    }
    std::optional<Cochain> acc;
    for (int a = 0; a < cx.dim(); ++a) {
        if (!(axes >> a & 1u)) continue;
        Cochain w = wrap_cocycle(cx, a);
        acc = acc ? cup(*acc, w) : w;
    }
    return *acc;
}

std::vector<BitVec> cocycle_basis(const CellComplex& cx, int k) {
    std::vector<BitVec> rows;
    for (std::uint32_t c = 0; c < cx.count(k + 1); ++c) {
        BitVec r(cx.count(k));
        for (auto f : cx.boundary(k + 1, c)) r.flip(f);
        rows.push_back(std::move(r));
    }
    return nullspace(rows, cx.count(k));
}

Cochain random_closed(const CellComplex& cx, int k, Rng& rng, Species sp) {
    Cochain out(cx, k, sp);
    if (k > 0) {
        Cochain lam = Cochain::random(cx, k - 1, rng);
        out.bits() ^= coboundary(lam).bits();
    }
    if (is_torus(cx)) {
        for (std::uint32_t m = 0; m < (1u << cx.dim()); ++m)
            if (std::popcount(m) == k && rng.bit()) out.bits() ^= torus_cocycle(cx, m).bits();
    } else {
        for (const auto& z : cocycle_basis(cx, k))
            if (rng.bit()) out.bits() ^= z;
    }
    return out;
}

bool IdentityReport::ok() const {
    for (const auto& c : checks)
        if (c.failures) return false;
    return true;
}

nlohmann::json IdentityReport::to_json() const {
    nlohmann::json j;
    j["complex"] = complex;
    j["ok"] = ok();
    for (const auto& c : checks) j["checks"].push_back({{"name", c.name}, {"trials", c.trials}, {"failures", c.failures}});
    return j;
}

IdentityReport identity_suite(const CellComplex& cx, std::size_t trials, std::uint64_t seed) {
    IdentityReport rep;
    rep.complex = cx.name();
    IdentityCheck dd{"d(d(a)) = 0"}, leib{"d(a cup b) = da cup b + a cup db"},
        c1{"a cup b + b cup a = d(a cup1 b) + da cup1 b + a cup1 db"},
        ex{"b cup a cup c = a cup b cup c + d((a cup1 b) cup c), closed a,b,c"};
    const int d = cx.dim();
    Rng rng(seed, 0x1d);
    for (std::size_t t = 0; t < trials; ++t) {
        {
            int k = static_cast<int>(rng.below(d + 1));
            Cochain a = Cochain::random(cx, k, rng);
            ++dd.trials;
            if (!coboundary(coboundary(a)).is_zero()) ++dd.failures;
        }
        if (d >= 1) {
            int p = static_cast<int>(rng.below(d));
            int q = static_cast<int>(rng.below(d - p));
            Cochain a = Cochain::random(cx, p, rng), b = Cochain::random(cx, q, rng);
            Cochain lhs = coboundary(cup(a, b));
            Cochain rhs = cup(coboundary(a), b) + cup(a, coboundary(b));
            ++leib.trials;
            if (!(lhs == rhs)) ++leib.failures;
        }
        if (d >= 2) {
            int p = 1 + static_cast<int>(rng.below(d - 1));
            int q = 1 + static_cast<int>(rng.below(d - p));
            Cochain a = Cochain::random(cx, p, rng), b = Cochain::random(cx, q, rng);
            Cochain lhs = cup(a, b) + cup(b, a);
            Cochain rhs = coboundary(cup1(a, b)) + cup1(coboundary(a), b) + cup1(a, coboundary(b));
            ++c1.trials;
            if (!(lhs == rhs)) ++c1.failures;
        }
        if (d >= 3) {
            int p = 1 + static_cast<int>(rng.below(d - 2));
            int q = 1 + static_cast<int>(rng.below(d - 1 - p));
            int r = d - p - q;
            Cochain a = random_closed(cx, p, rng), b = random_closed(cx, q, rng), c = random_closed(cx, r, rng);
            Cochain lhs = cup(cup(b, a), c);
            Cochain rhs = cup(cup(a, b), c) + coboundary(cup(cup1(a, b), c));
            ++ex.trials;
            if (!(lhs == rhs) || integrate(lhs) != integrate(cup(cup(a, b), c))) ++ex.failures;
        }
    }
    rep.checks = {dd, leib, c1, ex};
    return rep;
}

} // namespace cubic
