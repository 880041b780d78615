#include "cubic/manifold.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cubic {

namespace {

std::map<std::string, int> parse_monomial(const std::string& s) {
    std::map<std::string, int> out;
    if (s == "1") return out;
    std::stringstream ss(s);
    std::string f;
    while (std::getline(ss, f, '*')) {
        auto caret = f.find('^');
        std::string g = f.substr(0, caret);
        int e = caret == std::string::npos ? 1 : std::stoi(f.substr(caret + 1));
        if (g.empty() || e < 1) throw std::invalid_argument("bad monomial '" + s + "'");
        out[g] += e;
    }
    return out;
}

} // namespace

ManifoldModel ManifoldModel::from_json(const nlohmann::json& j) {
    ManifoldModel m;
    m.name_ = j.at("name").get<std::string>();
    m.description_ = j.value("description", "");
    m.dim_ = j.at("dim").get<int>();
    m.logical_degree_ = j.value("logical_degree", 2);
    std::map<std::string, int> gdeg;
    for (auto& [g, d] : j.at("generators").items()) {
        gdeg[g] = d.get<int>();
        m.generators_.push_back(g);
    }
    for (const auto& c : j.at("classes")) {
        Class cl;
        cl.name = c.get<std::string>();
        cl.exponents = parse_monomial(cl.name);
        for (auto& [g, e] : cl.exponents) {
            auto it = gdeg.find(g);
            if (it == gdeg.end()) throw std::invalid_argument(m.name_ + ": unknown generator " + g);
            cl.degree += it->second * e;
        }
        if (cl.degree > m.dim_) throw std::invalid_argument(m.name_ + ": class above the dimension: " + cl.name);
        if (!m.by_monomial_.emplace(cl.exponents, m.classes_.size()).second)
            throw std::invalid_argument(m.name_ + ": duplicate class " + cl.name);
        m.classes_.push_back(std::move(cl));
    }
    auto tops = m.basis(m.dim_);
    if (tops.size() != 1 || m.basis(0).size() != 1) throw std::invalid_argument(m.name_ + ": need exactly one class in degree 0 and in the top degree");
    m.top_ = tops[0];
    if (j.contains("cup1"))
        for (const auto& e : j.at("cup1")) {
            BitVec v(m.size());
            if (e.size() > 2 && e[2].get<std::string>() != "0") v.set(m.index(e[2].get<std::string>()));
            m.cup1_[{m.index(e[0].get<std::string>()), m.index(e[1].get<std::string>())}] = v;
        }
    if (j.contains("pontryagin") && !j.at("pontryagin").is_null()) {
        const auto& p = j.at("pontryagin");
        m.pontryagin_defined_ = true;
        if (p.contains("slice") && !p.at("slice").is_null()) m.slice_ = m.index(p.at("slice").get<std::string>());
        int need = m.dim_ - (m.slice_ ? m.classes_[*m.slice_].degree : 0);
        if (need != 4) throw std::invalid_argument(m.name_ + ": the Pontryagin slice must be 4-dimensional");
        for (auto& [cl, v] : p.at("values").items()) m.pontryagin_[m.index(cl)] = ((v.get<int>() % 4) + 4) % 4;
        for (auto i : m.basis(2))
            if (!m.pontryagin_.count(i)) throw std::invalid_argument(m.name_ + ": missing Pontryagin value for " + m.classes_[i].name);
    }
    if (j.contains("w2")) m.w2_ = m.index(j.at("w2").get<std::string>());
    if (j.contains("w3")) m.w3_ = m.index(j.at("w3").get<std::string>());
    return m;
}

nlohmann::json ManifoldModel::to_json() const {
    nlohmann::json j;
    j["name"] = name_;
    j["description"] = description_;
    j["dim"] = dim_;
    j["betti"] = betti();
    for (const auto& c : classes_) j["classes"].push_back({{"name", c.name}, {"degree", c.degree}});
    if (w2_) j["w2"] = classes_[*w2_].name;
    if (w3_) j["w3"] = classes_[*w3_].name;
    return j;
}

std::optional<std::size_t> ManifoldModel::find(const std::string& name) const {
    auto it = by_monomial_.find(parse_monomial(name));
    if (it == by_monomial_.end()) return std::nullopt;
    return it->second;
}

std::size_t ManifoldModel::index(const std::string& name) const {
    auto i = find(name);
    if (!i) throw std::invalid_argument(name_ + ": unknown class " + name);
    return *i;
}

std::vector<std::size_t> ManifoldModel::basis(int degree) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < classes_.size(); ++i)
        if (classes_[i].degree == degree) out.push_back(i);
    return out;
}

std::vector<int> ManifoldModel::betti() const {
    std::vector<int> b(dim_ + 1, 0);
    for (const auto& c : classes_) ++b[c.degree];
    return b;
}

BitVec ManifoldModel::element(std::initializer_list<std::string> names) const {
    BitVec v(size());
    for (const auto& n : names) v.flip(index(n));
    return v;
}

BitVec ManifoldModel::unit() const {
    BitVec v(size());
    v.set(basis(0)[0]);
    return v;
}

BitVec ManifoldModel::cup(const BitVec& u, const BitVec& v) const {
    BitVec out(size());
    for (auto i : u.ones())
        for (auto j : v.ones()) {
            auto e = classes_[i].exponents;
            for (auto& [g, k] : classes_[j].exponents) e[g] += k;
            auto it = by_monomial_.find(e);
            if (it != by_monomial_.end()) out.flip(it->second);
        }
    return out;
}

bool ManifoldModel::integrate(const BitVec& u) const { return u.get(top_); }

int ManifoldModel::degree_of(const BitVec& u) const {
    int d = -1;
    for (auto i : u.ones()) {
        if (d >= 0 && classes_[i].degree != d) return -1;
        d = classes_[i].degree;
    }
    return d;
}

BitVec ManifoldModel::cup1(const BitVec& u, const BitVec& v) const {
    BitVec out(size());
    for (auto i : u.ones())
        for (auto j : v.ones()) {
            auto it = cup1_.find({i, j});
            if (it == cup1_.end()) throw std::invalid_argument(name_ + ": no cup-1 entry for " + classes_[i].name + ", " + classes_[j].name);
            out ^= it->second;
        }
    return out;
}

bool ManifoldModel::slice_integral(const BitVec& u, const BitVec& v) const {
    BitVec w = cup(u, v);
    if (slice_) {
        BitVec s(size());
        s.set(*slice_);
        w = cup(w, s);
    }
    return integrate(w);
}

int ManifoldModel::pontryagin(const BitVec& u) const {
    if (!pontryagin_defined_) throw std::invalid_argument(name_ + ": no Pontryagin data");
    auto idx = u.ones();
    int p = 0;
    for (auto i : idx) {
        if (classes_[i].degree != 2) throw std::invalid_argument("Pontryagin square needs a degree-2 class");
        p += pontryagin_.at(i);
    }
    for (std::size_t x = 0; x < idx.size(); ++x)
        for (std::size_t y = x + 1; y < idx.size(); ++y) {
            BitVec a(size()), b(size());
            a.set(idx[x]);
            b.set(idx[y]);
            if (slice_integral(a, b)) p += 2;
        }
    return p % 4;
}

std::string default_manifold_catalog() { return std::string(CUBIC_DATA_DIR) + "/manifolds.json"; }

std::map<std::string, ManifoldModel> load_manifold_library(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open manifold catalog " + path);
    nlohmann::json j = nlohmann::json::parse(in);
    std::map<std::string, ManifoldModel> out;
    for (const auto& m : j.at("models")) {
        auto model = ManifoldModel::from_json(m);
        out.emplace(model.name(), std::move(model));
    }
    return out;
}

ManifoldModel manifold(const std::string& name) {
    auto lib = load_manifold_library();
    auto it = lib.find(name);
    if (it == lib.end()) throw std::invalid_argument("unknown manifold model '" + name + "'");
    return it->second;
}

std::vector<std::string> validate(const ManifoldModel& m) {
    std::vector<std::string> errs;
    const std::size_t N = m.size();
    auto e = [&](std::size_t i) {
        BitVec v(N);
        v.set(i);
        return v;
    };
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j)
            for (std::size_t k = 0; k < N; ++k)
                if (!(m.cup(m.cup(e(i), e(j)), e(k)) == m.cup(e(i), m.cup(e(j), e(k)))))
                    errs.push_back("associativity fails on " + m.cls(i).name + ", " + m.cls(j).name + ", " + m.cls(k).name);
    for (int p = 0; p <= m.dim(); ++p) {
        auto bp = m.basis(p), bq = m.basis(m.dim() - p);
        if (bp.size() != bq.size()) {
            errs.push_back("Betti numbers violate Poincare duality in degree " + std::to_string(p));
            continue;
        }
        std::vector<BitVec> rows;
        for (auto i : bp) {
            BitVec r(bq.size());
            for (std::size_t c = 0; c < bq.size(); ++c) r.set(c, m.integrate(m.cup(e(i), e(bq[c]))));
            rows.push_back(r);
        }
        if (rank(rows, bq.size()) != bp.size()) errs.push_back("degenerate top pairing in degree " + std::to_string(p));
    }
    if (m.has_pontryagin())
        for (auto i : m.basis(2))
            if ((m.pontryagin(e(i)) & 1) != static_cast<int>(m.slice_integral(e(i), e(i))))
                errs.push_back("Pontryagin value of " + m.cls(i).name + " has the wrong parity");
    if (m.w2() && m.w3() && !m.integrate(m.cup(e(*m.w2()), e(*m.w3())))) errs.push_back("w2 cup w3 vanishes");
    return errs;
}

} // namespace cubic
