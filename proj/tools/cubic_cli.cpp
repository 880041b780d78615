#include <cmath>
#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>
#include <json.hpp>

#include "cubic/cochain.hpp"
#include "cubic/config.hpp"
#include "cubic/homology.hpp"
#include "cubic/logical.hpp"
#include "cubic/manifold.hpp"
#include "cubic/saw.hpp"
#include "cubic/stabilizer.hpp"
#include "cubic/thermal.hpp"

using namespace cubic;
using nlohmann::json;

namespace {

constexpr int kOk = 0, kFailed = 1, kUsage = 2;

struct Output {
    std::string prefix;
    // Writes to <prefix><ext> or stdout.
    void write(const std::string& ext, const std::string& text) const {
        if (prefix.empty()) {
            std::cout << text;
            return;
        }
        std::ofstream f(prefix + ext, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + prefix + ext);
        f << text;
    }
};

std::string dump(const json& j) { return j.dump(2) + "\n"; }

CellComplex need_complex(const RunConfig& c) {
    if (c.complex.empty()) throw ConfigError(c.command + " " + c.target + " needs --complex");
    return CellComplex::parse(c.complex);
}

ManifoldModel need_model(const RunConfig& c) {
    const std::string& name = c.manifold.empty() ? c.model : c.manifold;
    if (name.empty()) throw ConfigError(c.command + " " + c.target + " needs --model");
    return manifold(name);
}

int cmd_verify(const RunConfig& c, const Output& out) {
    json rep;
    bool ok = true;
    if (c.target == "cochain") {
        auto cx = need_complex(c);
        auto r = identity_suite(cx, c.samples.value_or(1000), c.seed);
        rep = r.to_json();
        ok = r.ok();
    } else if (c.target == "commute") {
        auto cx = need_complex(c);
        auto [l, m, n] = c.degrees(cx.dim());
        auto h = build_cubic(cx, l, m, n, c.twist);
        auto r = commutation_suite(h);
        rep = r.to_json(h);
        ok = r.ok();
    } else if (c.target == "ccz") {
        auto cx = need_complex(c);
        auto [l, m, n] = c.degrees(cx.dim());
        auto h = build_cubic(cx, l, m, n, true);
        auto r = verify_ccz_symmetry(h, ccz_operator(h.layout), c.samples.value_or(100), c.seed);
        rep = r.to_json();
        ok = r.ok();
    } else if (c.target == "manifolds") {
        rep = json::object();
        for (const auto& [name, m] : load_manifold_library()) {
            auto errs = validate(m);
            rep[name] = errs;
            ok = ok && errs.empty();
        }
    } else {
        throw ConfigError("unknown verify suite '" + c.target + "' (cochain, commute, ccz, manifolds)");
    }
    rep["suite"] = c.target;
    rep["pass"] = ok;
    out.write(".json", dump(rep));
    return ok ? kOk : kFailed;
}

int cmd_compute(const RunConfig& c, const Output& out) {
    if (c.target == "gsd" || c.target == "flat") {
        json j;
        if (!c.model.empty() || !c.manifold.empty()) {
            auto m = need_model(c);
            const int k = m.logical_degree();
            auto t = cup_tensor(m, c.l.value_or(k), c.m.value_or(k), c.n.value_or(k));
            auto fs = enumerate_flat_sectors(t);
            j = {{"model", m.name()}, {"flat_sectors", fs.count}};
            // On a closed manifold each flat sector is one ground state.
            if (c.target == "gsd") j["gsd"] = fs.count;
        } else {
            auto cx = need_complex(c);
            auto [l, m, n] = c.degrees(cx.dim());
            j = {{"complex", cx.name()}, {"flat_sectors", enumerate_flat_sectors(cup_tensor(cx, l, m, n)).count}};
            if (c.target == "gsd") {
                auto g = gsd_monomial(build_cubic(cx, l, m, n, c.twist));
                j["gsd"] = g.gsd;
                j["orbits"] = g.orbits;
            }
        }
        out.write(".json", dump(j));
    } else if (c.target == "distance" || c.target == "params") {
        auto cx = need_complex(c);
        auto [l, m, n] = c.degrees(cx.dim());
        auto p = code_parameters(cx, l, m, n, c.twist, c.budget);
        json j = c.target == "params" ? p.to_json() : json{{"distance", p.distance}, {"exact", p.distance_exact}};
        j["complex"] = cx.name();
        out.write(".json", dump(j));
    } else if (c.target == "betti") {
        auto cx = need_complex(c);
        std::vector<std::size_t> b;
        for (int k = 0; k <= cx.dim(); ++k) b.push_back(homology_basis(cx, k).rank);
        out.write(".json", dump({{"complex", cx.name()}, {"betti", b}}));
    } else if (c.target == "gates") {
        auto t = logical_action(need_model(c), c.gate);
        out.write(".txt", t.to_text());
    } else if (c.target == "tc") {
        json j;
        if (c.mu > 0) {
            j = {{"mu", c.mu}, {"tc", critical_temperature_mu(c.mu, c.eps0)}};
        } else if (c.k) {
            auto t = critical_temperature(*c.k, c.dimension, c.eps0);
            j = {{"k", *c.k}, {"D", c.dimension}, {"tc", t.value}, {"unstable", t.unstable}};
        } else {
            auto cx = need_complex(c);
            auto [l, m, n] = c.degrees(cx.dim());
            auto t = critical_temperature_cubic(cx.dim(), l, m, n, c.eps0);
            j = {{"complex", cx.name()}, {"tc", t.value}, {"unstable", t.unstable}};
        }
        out.write(".json", dump(j));
    } else if (c.target == "saw") {
        SawConfig s;
        s.dimension = c.dimension;
        s.samples = c.samples.value_or(0);
        s.seed = c.seed;
        out.write(".json", dump(saw_entropy(s).to_json()));
    } else if (c.target == "rates") {
        auto cx = need_complex(c);
        json rows = json::array();
        for (const auto& r : rate_table(cx, c.beta))
            rows.push_back({{"sector", r.name}, {"from", r.from}, {"to", r.to}, {"dE", r.dE}, {"ratio", r.ratio}, {"expected", r.expected}});
        out.write(".json", dump({{"beta", c.beta}, {"rates", rows}}));
    } else {
        throw ConfigError("unknown compute target '" + c.target + "' (gsd, flat, distance, params, betti, gates, tc, saw, rates)");
    }
    return kOk;
}

int cmd_simulate(const RunConfig& c, const Output& out) {
    auto cx = need_complex(c);
    auto e = c.experiment();
    ExperimentResult r;
    if (c.target == "memory") r = memory_experiment(cx, e);
    else if (c.target == "pcrit") r = estimate_p_crit(cx, e);
    else throw ConfigError("unknown simulate target '" + c.target + "' (memory, pcrit)");
    out.write(".csv", ExperimentResult::csv_header() + "\n" + r.csv_row() + "\n");
    if (!out.prefix.empty()) {
        json j = r.to_json();
        j["experiment"] = c.target;
        j["config"] = c.to_json();
        j["config"].erase("out"); // so reruns to another prefix stay byte-identical
        out.write(".json", dump(j));
    }
    return kOk;
}

// JSON type a flag value converts to.
enum class Kind { str, integer, uinteger, real };

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"cubic: build, verify and simulate cubic-theory stabilizer models"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string config_path;
    app.add_option("--config", config_path, "JSON config file; flags override it");

    const std::vector<std::tuple<std::string, std::string, Kind, std::string>> flags{
        {"--complex", "complex", Kind::str, "cell complex, e.g. hypercubic:d=5,L=2"},
        {"--model", "model", Kind::str, "manifold model (compute) or toric|cubic (simulate)"},
        {"--manifold", "manifold", Kind::str, "manifold model for gate tables"},
        {"--gate", "gate", Kind::str, "ccz | pontryagin | em_dual"},
        {"--l", "l", Kind::integer, "degree of a"},
        {"--m", "m", Kind::integer, "degree of b"},
        {"--n", "n", Kind::integer, "degree of c"},
        {"--sector", "sector", Kind::str, "loop | membrane"},
        {"--degree", "degree", Kind::integer, "qubit cell degree for simulations"},
        {"--beta", "beta", Kind::real, "inverse bath temperature"},
        {"--beta-dec", "beta_dec", Kind::real, "decoder inverse temperature (default inf)"},
        {"--eps0", "eps0", Kind::real, "energy unit"},
        {"--rule", "rule", Kind::str, "metropolis | heat_bath"},
        {"--sweeps", "sweeps", Kind::uinteger, "bath sweeps per trial"},
        {"--trials", "trials", Kind::uinteger, "independent trials"},
        {"--samples", "samples", Kind::uinteger, "random samples"},
        {"--decode-passes", "decode_passes", Kind::uinteger, "decoder pass budget"},
        {"--seed", "seed", Kind::uinteger, "64-bit seed"},
        {"--budget", "budget", Kind::uinteger, "systole search budget (nodes)"},
        {"--threads", "threads", Kind::uinteger, "worker threads for trials"},
        {"--dimension", "dimension", Kind::integer, "lattice dimension for saw and tc"},
        {"--k", "k", Kind::integer, "excitation dimension for tc"},
        {"--mu", "mu", Kind::real, "connective constant for tc"},
        {"--out", "out", Kind::str, "output path prefix"},
    };

    std::map<std::string, std::string> values;
    std::string target;
    bool twist = true, no_twist = false;
    std::vector<CLI::App*> subs;
    for (const char* name : {"verify", "compute", "simulate"}) {
        auto* s = app.add_subcommand(name);
        subs.push_back(s);
        if (std::string(name) == "verify") s->add_option("--suite,target", target, "cochain | commute | ccz | manifolds");
        else s->add_option("target", target, std::string(name) == "compute" ? "gsd | flat | distance | params | betti | gates | tc | saw | rates" : "memory | pcrit");
        for (const auto& [flag, key, kind, help] : flags) s->add_option(flag, values[key], help);
        s->add_flag("--twist", twist, "twisted model (default)");
        s->add_flag("--no-twist", no_twist, "untwisted model");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        RunConfig cfg = config_path.empty() ? RunConfig{} : RunConfig::load(config_path);
        json overlay = json::object();
        for (auto* s : subs) {
            if (!s->parsed()) continue;
            overlay["command"] = s->get_name();
            if (!target.empty()) overlay["target"] = target;
            for (const auto& [flag, key, kind, help] : flags) {
                if (s->get_option(flag)->count() == 0) continue;
                const std::string& v = values[key];
                try {
                    switch (kind) {
                    case Kind::str: overlay[key] = v; break;
                    case Kind::integer: overlay[key] = std::stoi(v); break;
                    case Kind::uinteger:
                        if (!v.empty() && v[0] == '-') throw std::invalid_argument(v);
                        overlay[key] = std::stoull(v);
                        break;
                    case Kind::real:
                        overlay[key] = (v == "inf" || v == "infinity") ? json("inf") : json(std::stod(v));
                        break;
                    }
                } catch (const std::logic_error&) {
                    throw ConfigError("bad value '" + v + "' for " + flag);
                }
            }
            if (s->get_option("--no-twist")->count()) overlay["twist"] = false;
            else if (s->get_option("--twist")->count()) overlay["twist"] = true;
        }
        cfg.merge(overlay);
        cfg.validate();
        Output out{cfg.out};
        if (cfg.command == "verify") return cmd_verify(cfg, out);
        if (cfg.command == "compute") return cmd_compute(cfg, out);
        return cmd_simulate(cfg, out);
    } catch (const ConfigError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailed;
    }
}
