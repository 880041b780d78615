#include "cubic/phase.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace cubic {

namespace mono {

Monomial make(std::span<const std::uint32_t> vars) {
    Monomial m = one();
    for (auto v : vars) m = mul(m, var(v));
    return m;
}

int degree(Monomial m) {
    int k = 0;
    while (m) {
        ++k;
        m >>= 21;
    }
    return k;
}

int vars(Monomial m, std::uint32_t out[3]) {
    int k = 0;
    while (m) {
        out[k++] = static_cast<std::uint32_t>(m & 0x1fffff) - 1;
        m >>= 21;
    }
    return k;
}

Monomial mul(Monomial a, Monomial b) {
    if (a == 0) return b;
    if (b == 0) return a;
    std::uint32_t va[3], vb[3], all[6];
    int na = vars(a, va), nb = vars(b, vb);
    int n = 0, i = 0, j = 0;
    while (i < na || j < nb) {
        if (j == nb || (i < na && va[i] < vb[j])) all[n++] = va[i++];
        else if (i == na || vb[j] < va[i]) all[n++] = vb[j++];
        else {
            all[n++] = va[i++];
            ++j;
        }
    }
    if (n > kMaxDegree) throw std::runtime_error("phase polynomial degree would exceed 3");
    Monomial m = 0;
    for (int t = n - 1; t >= 0; --t) m = (m << 21) | (static_cast<Monomial>(all[t]) + 1);
    return m;
}

bool eval(Monomial m, const BitVec& z) {
    while (m) {
        if (!z.get(static_cast<std::size_t>(m & 0x1fffff) - 1)) return false;
        m >>= 21;
    }
    return true;
}

} // namespace mono

PhasePoly PhasePoly::constant(bool one) {
    PhasePoly p;
    if (one) p.terms_.push_back(mono::one());
    return p;
}

PhasePoly PhasePoly::variable(std::uint32_t v) {
    if (v > mono::kMaxVar) throw std::out_of_range("variable index too large");
    PhasePoly p;
    p.terms_.push_back(mono::var(v));
    return p;
}

PhasePoly PhasePoly::linear(std::span<const std::uint32_t> vars) {
    std::vector<Monomial> t;
    for (auto v : vars) t.push_back(mono::var(v));
    return from_terms(std::move(t));
}

PhasePoly PhasePoly::from_terms(std::vector<Monomial> terms) {
    std::sort(terms.begin(), terms.end());
    PhasePoly p;
    for (std::size_t i = 0; i < terms.size();) {
        std::size_t j = i;
        while (j < terms.size() && terms[j] == terms[i]) ++j;
        if ((j - i) & 1) p.terms_.push_back(terms[i]);
        i = j;
    }
    return p;
}

int PhasePoly::degree() const {
    int d = 0;
    for (auto m : terms_) d = std::max(d, mono::degree(m));
    return d;
}

std::vector<std::uint32_t> PhasePoly::variables() const {
    std::vector<std::uint32_t> out;
    for (auto m : terms_) {
        std::uint32_t vs[3];
        int k = mono::vars(m, vs);
        out.insert(out.end(), vs, vs + k);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

PhasePoly& PhasePoly::operator+=(const PhasePoly& o) {
    std::vector<Monomial> out;
    out.reserve(terms_.size() + o.terms_.size());
    std::set_symmetric_difference(terms_.begin(), terms_.end(), o.terms_.begin(), o.terms_.end(), std::back_inserter(out));
    terms_ = std::move(out);
    return *this;
}

PhasePoly operator*(const PhasePoly& a, const PhasePoly& b) {
    std::vector<Monomial> t;
    t.reserve(a.size() * b.size());
    for (auto x : a.terms_)
        for (auto y : b.terms_) t.push_back(mono::mul(x, y));
    return PhasePoly::from_terms(std::move(t));
}

bool PhasePoly::eval(const BitVec& z) const {
    bool v = false;
    for (auto m : terms_) v ^= mono::eval(m, z);
    return v;
}

PhasePoly PhasePoly::shifted(std::span<const std::uint32_t> flips) const {
    std::vector<Monomial> out;
    out.reserve(terms_.size());
    for (auto m : terms_) {
        std::uint32_t vs[3];
        int k = mono::vars(m, vs);
        unsigned flipped = 0;
        for (int i = 0; i < k; ++i)
            if (std::binary_search(flips.begin(), flips.end(), vs[i])) flipped |= 1u << i;
        // (z_v + 1) factors expand into every subset of the flipped variables.
        for (unsigned drop = flipped;; drop = (drop - 1) & flipped) {
            Monomial t = mono::one();
            for (int i = 0; i < k; ++i)
                if (!(drop >> i & 1u)) t = mono::mul(t, mono::var(vs[i]));
            out.push_back(t);
            if (drop == 0) break;
        }
    }
    return from_terms(std::move(out));
}

nlohmann::json PhasePoly::to_json() const {
    nlohmann::json j = nlohmann::json::array();
    for (auto m : terms_) {
        std::uint32_t vs[3];
        int k = mono::vars(m, vs);
        j.push_back(std::vector<std::uint32_t>(vs, vs + k));
    }
    return j;
}

PhasePoly PhasePoly::from_json(const nlohmann::json& j) {
    std::vector<Monomial> t;
    for (const auto& m : j) t.push_back(mono::make(m.get<std::vector<std::uint32_t>>()));
    return from_terms(std::move(t));
}

bool ParityCheck::eval(const BitVec& z) const {
    bool v = false;
    for (auto x : form) v ^= z.get(x);
    return v == value;
}

ParityCheck ParityCheck::shifted(std::span<const std::uint32_t> flips) const {
    ParityCheck c = *this;
    std::size_t i = 0, j = 0;
    bool par = false;
    while (i < form.size() && j < flips.size()) {
        if (form[i] < flips[j]) ++i;
        else if (flips[j] < form[i]) ++j;
        else {
            par = !par;
            ++i;
            ++j;
        }
    }
    c.value ^= par;
    return c;
}

namespace {

std::vector<std::uint32_t> sym_diff(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> out;
    out.reserve(a.size() + b.size());
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

std::vector<std::uint32_t> sorted_unique(std::vector<std::uint32_t> v) {
    std::sort(v.begin(), v.end());
    // Repeated variables cancel in pairs.
    std::vector<std::uint32_t> out;
    for (std::size_t i = 0; i < v.size();) {
        std::size_t j = i;
        while (j < v.size() && v[j] == v[i]) ++j;
        if ((j - i) & 1) out.push_back(v[i]);
        i = j;
    }
    return out;
}

// Gaussian elimination of affine rows. The pivot of each step is the
// remaining variable with the largest key; earlier pivot rows are
// back-substituted, so the result is reduced. Returns false if inconsistent.
template <class Key>
bool eliminate(std::vector<ParityCheck> rows, Key&& key, std::vector<ParityCheck>& out,
               std::vector<std::uint32_t>& pivots) {
    out.clear();
    pivots.clear();
    auto best = [&](const ParityCheck& r) {
        std::uint32_t b = r.form.front();
        for (auto v : r.form)
            if (key(v) > key(b)) b = v;
        return b;
    };
    for (;;) {
        // Drop empty rows, detecting contradictions.
        std::size_t w = 0;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].form.empty()) {
                if (rows[i].value) return false;
                continue;
            }
            if (w != i) rows[w] = std::move(rows[i]);
            ++w;
        }
        rows.resize(w);
        if (rows.empty()) break;
        std::size_t pick = 0;
        std::uint32_t pv = best(rows[0]);
        for (std::size_t i = 1; i < rows.size(); ++i) {
            std::uint32_t b = best(rows[i]);
            if (key(b) > key(pv)) {
                pv = b;
                pick = i;
            }
        }
        ParityCheck r = std::move(rows[pick]);
        rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(pick));
        auto has = [&](const ParityCheck& c) { return std::binary_search(c.form.begin(), c.form.end(), pv); };
        for (auto& o : rows)
            if (has(o)) {
                o.form = sym_diff(o.form, r.form);
                o.value ^= r.value;
            }
        for (auto& o : out)
            if (has(o)) {
                o.form = sym_diff(o.form, r.form);
                o.value ^= r.value;
            }
        out.push_back(std::move(r));
        pivots.push_back(pv);
    }
    return true;
}

PhasePoly substitute_pivots(const PhasePoly& p, const std::vector<ParityCheck>& rows,
                            const std::vector<std::uint32_t>& pivots) {
    std::unordered_map<std::uint32_t, PhasePoly> rep;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        std::vector<Monomial> t;
        for (auto v : rows[i].form)
            if (v != pivots[i]) t.push_back(mono::var(v));
        if (rows[i].value) t.push_back(mono::one());
        rep.emplace(pivots[i], PhasePoly::from_terms(std::move(t)));
    }
    return p.substitute([&](std::uint32_t v) -> const PhasePoly* {
        auto it = rep.find(v);
        return it == rep.end() ? nullptr : &it->second;
    });
}

bool intersects(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) ++i;
        else if (b[j] < a[i]) ++j;
        else return true;
    }
    return false;
}

} // namespace

MagicOperator MagicOperator::zero_op() {
    MagicOperator z;
    z.zero = true;
    return z;
}

MagicOperator MagicOperator::pauli_x(std::vector<std::uint32_t> vars) {
    MagicOperator op;
    op.xmask = sorted_unique(std::move(vars));
    return op;
}

MagicOperator MagicOperator::pauli_z(std::vector<std::uint32_t> vars) {
    MagicOperator op;
    op.phase = PhasePoly::linear(sorted_unique(std::move(vars)));
    return op;
}

MagicOperator MagicOperator::diagonal(PhasePoly phase) {
    MagicOperator op;
    op.phase = std::move(phase);
    return op;
}

MagicOperator MagicOperator::projector(std::vector<std::uint32_t> form, bool value) {
    MagicOperator op;
    op.checks.push_back({sorted_unique(std::move(form)), value});
    canonicalize_checks(op);
    return op;
}

std::vector<std::uint32_t> MagicOperator::read_vars() const {
    std::vector<std::uint32_t> v = phase.variables();
    for (const auto& c : checks) v.insert(v.end(), c.form.begin(), c.form.end());
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

int MagicOperator::apply(BitVec& z) const {
    if (zero) return 0;
    for (const auto& c : checks)
        if (!c.eval(z)) return 0;
    bool s = negative ^ phase.eval(z);
    for (auto v : xmask) z.flip(v);
    return s ? -1 : 1;
}

nlohmann::json MagicOperator::to_json() const {
    if (zero) return {{"zero", true}};
    nlohmann::json j;
    j["x"] = xmask;
    j["phase"] = phase.to_json();
    j["negative"] = negative;
    j["checks"] = nlohmann::json::array();
    for (const auto& c : checks) j["checks"].push_back({{"form", c.form}, {"value", c.value ? 1 : 0}});
    return j;
}

MagicOperator MagicOperator::from_json(const nlohmann::json& j) {
    if (j.value("zero", false)) return zero_op();
    MagicOperator op;
    op.xmask = sorted_unique(j.at("x").get<std::vector<std::uint32_t>>());
    op.phase = PhasePoly::from_json(j.at("phase"));
    op.negative = j.value("negative", false);
    for (const auto& c : j.at("checks"))
        op.checks.push_back({sorted_unique(c.at("form").get<std::vector<std::uint32_t>>()), c.at("value").get<int>() != 0});
    canonicalize_checks(op);
    return op;
}

void canonicalize_checks(MagicOperator& op) {
    if (op.zero) return;
    auto& cs = op.checks;
    std::vector<ParityCheck> kept;
    for (auto& c : cs) {
        if (c.form.empty()) {
            if (c.value) {
                op = MagicOperator::zero_op();
                return;
            }
            continue;
        }
        kept.push_back(std::move(c));
    }
    std::sort(kept.begin(), kept.end());
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
    for (std::size_t i = 1; i < kept.size(); ++i)
        if (kept[i].form == kept[i - 1].form) {
            op = MagicOperator::zero_op();
            return;
        }
    cs = std::move(kept);
}

MagicOperator compose(const MagicOperator& A, const MagicOperator& B) {
    if (A.zero || B.zero) return MagicOperator::zero_op();
    MagicOperator r;
    r.xmask = sym_diff(A.xmask, B.xmask);
    r.phase = B.phase + A.phase.shifted(B.xmask);
    r.negative = A.negative ^ B.negative;
    r.checks = B.checks;
    for (const auto& c : A.checks) r.checks.push_back(c.shifted(B.xmask));
    canonicalize_checks(r);
    return r;
}

MagicOperator adjoint(const MagicOperator& A) {
    if (A.zero) return A;
    MagicOperator r = A;
    r.phase = A.phase.shifted(A.xmask);
    for (auto& c : r.checks) c = c.shifted(A.xmask);
    canonicalize_checks(r);
    return r;
}

bool reduce_modulo(PhasePoly& poly, const std::vector<ParityCheck>& checks) {
    auto pv = poly.variables();
    auto key = [&](std::uint32_t v) -> std::uint64_t {
        bool in = std::binary_search(pv.begin(), pv.end(), v);
        return (static_cast<std::uint64_t>(in) << 32) | v;
    };
    std::vector<ParityCheck> rows;
    std::vector<std::uint32_t> pivots;
    if (!eliminate(checks, key, rows, pivots)) return false;
    poly = substitute_pivots(poly, rows, pivots);
    return true;
}

MagicOperator normal_form(const MagicOperator& A) {
    if (A.zero) return MagicOperator::zero_op();
    std::vector<ParityCheck> rows;
    std::vector<std::uint32_t> pivots;
    if (!eliminate(A.checks, [](std::uint32_t v) { return static_cast<std::uint64_t>(v); }, rows, pivots))
        return MagicOperator::zero_op();
    MagicOperator r;
    r.xmask = A.xmask;
    r.negative = A.negative;
    r.phase = substitute_pivots(A.phase, rows, pivots);
    if (r.phase.constant_term()) {
        r.phase += PhasePoly::constant(true);
        r.negative = !r.negative;
    }
    r.checks = std::move(rows);
    std::sort(r.checks.begin(), r.checks.end());
    return r;
}

namespace {

// Same affine subspace? Both check lists must already be consistent.
bool same_constraints(const std::vector<ParityCheck>& a, const std::vector<ParityCheck>& b) {
    if (a == b) return true;
    auto key = [](std::uint32_t v) { return static_cast<std::uint64_t>(v); };
    std::vector<ParityCheck> ra, rb;
    std::vector<std::uint32_t> pa, pb;
    bool ca = eliminate(a, key, ra, pa), cb = eliminate(b, key, rb, pb);
    if (!ca || !cb) return ca == cb;
    std::sort(ra.begin(), ra.end());
    std::sort(rb.begin(), rb.end());
    return ra == rb;
}

} // namespace

bool equivalent(const MagicOperator& A, const MagicOperator& B) {
    if (A.zero || B.zero) return normal_form(A).zero && normal_form(B).zero;
    if (A.xmask != B.xmask) return normal_form(A).zero && normal_form(B).zero;
    if (!same_constraints(A.checks, B.checks)) return false;
    PhasePoly delta = A.phase + B.phase;
    if (A.negative != B.negative) delta += PhasePoly::constant(true);
    if (delta.is_zero()) return true;
    if (!reduce_modulo(delta, A.checks)) return true; // both Zero
    return delta.is_zero();
}

bool commutes(const MagicOperator& A, const MagicOperator& B) {
    if (A.zero || B.zero) return true;
    if (!intersects(A.xmask, B.read_vars()) && !intersects(B.xmask, A.read_vars())) return true;
    return equivalent(compose(A, B), compose(B, A));
}

} // namespace cubic
