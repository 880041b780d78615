#include "cubic/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace cubic {

const std::vector<std::string>& RunConfig::keys() {
    static const std::vector<std::string> k{
        "command", "target", "complex", "model",  "manifold", "gate",   "l",       "m",
        "n",       "twist",  "sector",  "degree", "beta",     "beta_dec", "eps0",  "rule",
        "sweeps",  "trials", "samples", "decode_passes", "seed", "budget", "threads", "dimension",
        "k",       "mu",     "out"};
    return k;
}

namespace {

template <class T>
void read(const nlohmann::json& j, const char* key, T& dst) {
    if (!j.contains(key)) return;
    try {
        dst = j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ConfigError(std::string("config key '") + key + "' has the wrong type");
    }
}

template <class T>
void read(const nlohmann::json& j, const char* key, std::optional<T>& dst) {
    if (!j.contains(key)) return;
    if (j.at(key).is_null()) {
        dst.reset();
        return;
    }
    T v{};
    read(j, key, v);
    dst = v;
}

// JSON has no infinity; accept "inf" for beta_dec.
void read_beta(const nlohmann::json& j, const char* key, double& dst) {
    if (!j.contains(key)) return;
    const auto& v = j.at(key);
    if (v.is_string() && (v == "inf" || v == "infinity")) {
        dst = std::numeric_limits<double>::infinity();
        return;
    }
    read(j, key, dst);
}

} // namespace

void RunConfig::merge(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (std::find(keys().begin(), keys().end(), it.key()) == keys().end())
            throw ConfigError("unknown config key '" + it.key() + "'");
    read(j, "command", command);
    read(j, "target", target);
    read(j, "complex", complex);
    read(j, "model", model);
    read(j, "manifold", manifold);
    read(j, "gate", gate);
    read(j, "l", l);
    read(j, "m", m);
    read(j, "n", n);
    read(j, "twist", twist);
    read(j, "sector", sector);
    read(j, "degree", degree);
    read_beta(j, "beta", beta);
    read_beta(j, "beta_dec", beta_dec);
    read(j, "eps0", eps0);
    read(j, "rule", rule);
    read(j, "sweeps", sweeps);
    read(j, "trials", trials);
    read(j, "samples", samples);
    read(j, "decode_passes", decode_passes);
    read(j, "seed", seed);
    read(j, "budget", budget);
    read(j, "threads", threads);
    read(j, "dimension", dimension);
    read(j, "k", k);
    read(j, "mu", mu);
    read(j, "out", out);
}

RunConfig RunConfig::from_json(const nlohmann::json& j) {
    RunConfig c;
    c.merge(j);
    return c;
}

RunConfig RunConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    try {
        return from_json(nlohmann::json::parse(in));
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config file " + path + ": " + e.what());
    }
}

nlohmann::json RunConfig::to_json() const {
    auto opt = [](const std::optional<int>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
    return {{"command", command}, {"target", target}, {"complex", complex}, {"model", model},
            {"manifold", manifold}, {"gate", gate}, {"l", opt(l)}, {"m", opt(m)}, {"n", opt(n)},
            {"twist", twist}, {"sector", sector}, {"degree", opt(degree)}, {"beta", beta},
            {"beta_dec", std::isinf(beta_dec) ? nlohmann::json("inf") : nlohmann::json(beta_dec)},
            {"eps0", eps0}, {"rule", rule}, {"sweeps", sweeps}, {"trials", trials}, {"samples", samples ? nlohmann::json(*samples) : nlohmann::json(nullptr)},
            {"decode_passes", decode_passes}, {"seed", seed}, {"budget", budget}, {"threads", threads},
            {"dimension", dimension}, {"k", opt(k)}, {"mu", mu}, {"out", out}};
}

std::array<int, 3> RunConfig::degrees(int d) const {
    if (l && m && n) return {*l, *m, *n};
    if (l || m || n) throw ConfigError("give all of l, m, n or none");
    if ((d + 1) % 3) throw ConfigError("no default degrees for d = " + std::to_string(d) + "; pass --l --m --n");
    const int k = (d + 1) / 3;
    return {k, k, k};
}

ExperimentConfig RunConfig::experiment() const {
    ExperimentConfig e;
    e.complex = complex;
    e.model = model.empty() ? "toric" : model;
    e.sector = sector;
    e.degree = degree.value_or(2);
    e.beta = beta;
    e.beta_dec = beta_dec;
    e.eps0 = eps0;
    if (rule == "metropolis") e.rule = RuleKind::metropolis;
    else if (rule == "heat_bath") e.rule = RuleKind::heat_bath;
    else throw ConfigError("unknown rule '" + rule + "' (metropolis or heat_bath)");
    e.sweeps = sweeps;
    e.trials = trials;
    e.decode_passes = decode_passes;
    e.seed = seed;
    e.threads = threads;
    return e;
}

void RunConfig::validate() const {
    static const std::vector<std::string> commands{"verify", "compute", "simulate"};
    if (std::find(commands.begin(), commands.end(), command) == commands.end())
        throw ConfigError("unknown command '" + command + "'");
    if (target.empty()) throw ConfigError("missing " + command + " target");
    if (!(beta >= 0)) throw ConfigError("beta must be non-negative");
    if (!(beta_dec >= beta)) throw ConfigError("beta_dec must be at least beta");
    if (!(eps0 > 0)) throw ConfigError("eps0 must be positive");
    if (trials == 0) throw ConfigError("trials must be at least 1");
    if (threads == 0) throw ConfigError("threads must be at least 1");
    if (sector != "loop" && sector != "membrane") throw ConfigError("sector must be loop or membrane");
    if (rule != "metropolis" && rule != "heat_bath") throw ConfigError("rule must be metropolis or heat_bath");
}

} // namespace cubic
