#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <fstream>

#include "cubic/config.hpp"

using namespace cubic;
using nlohmann::json;

TEST_CASE("unknown keys and wrong types are rejected") {
    CHECK_THROWS_AS(RunConfig::from_json({{"betta", 1.0}}), ConfigError);
    CHECK_THROWS_AS(RunConfig::from_json({{"trials", "many"}}), ConfigError);
    CHECK_THROWS_AS(RunConfig::from_json({{"twist", 3.5}}), ConfigError);
    CHECK_THROWS_AS(RunConfig::from_json(json::array()), ConfigError);
}

TEST_CASE("merge overlays only the keys present") {
    auto c = RunConfig::from_json({{"beta", 1.5}, {"trials", 300}, {"complex", "hypercubic:d=4,L=2"}});
    c.merge({{"trials", 50}});
    CHECK(c.beta == 1.5);
    CHECK(c.trials == 50);
    CHECK(c.complex == "hypercubic:d=4,L=2");
    c.merge({{"l", 2}});
    CHECK(c.l == 2);
    c.merge({{"l", nullptr}});
    CHECK_FALSE(c.l.has_value());
}

TEST_CASE("infinite decoder temperature round-trips through JSON") {
    RunConfig c;
    CHECK(std::isinf(c.beta_dec));
    auto j = c.to_json();
    CHECK(j["beta_dec"] == "inf");
    auto back = RunConfig::from_json(j);
    CHECK(std::isinf(back.beta_dec));
    CHECK(back.to_json() == j);
    CHECK(RunConfig::from_json({{"beta_dec", 3.0}}).beta_dec == 3.0);
}

TEST_CASE("default degrees") {
    RunConfig c;
    CHECK(c.degrees(5) == std::array<int, 3>{2, 2, 2});
    CHECK(c.degrees(2) == std::array<int, 3>{1, 1, 1});
    CHECK_THROWS_AS(c.degrees(4), ConfigError);
    c.l = 1;
    CHECK_THROWS_AS(c.degrees(5), ConfigError);
    c.m = 2;
    c.n = 2;
    CHECK(c.degrees(4) == std::array<int, 3>{1, 2, 2});
}

TEST_CASE("validate") {
    RunConfig c;
    c.command = "simulate";
    c.target = "memory";
    CHECK_NOTHROW(c.validate());
    c.beta_dec = 1.0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c.beta_dec = std::numeric_limits<double>::infinity();
    c.sector = "volume";
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c.sector = "membrane";
    c.rule = "glauber";
    CHECK_THROWS_AS(c.validate(), ConfigError);
    CHECK_THROWS_AS(c.experiment(), ConfigError);
    c.rule = "heat_bath";
    CHECK(c.experiment().rule == RuleKind::heat_bath);
    c.command = "explain";
    CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("load from a file") {
    const std::string path = "test_config_tmp.json";
    {
        std::ofstream f(path);
        f << R"({"command": "simulate", "target": "pcrit", "seed": 42, "beta": "inf"})";
    }
    auto c = RunConfig::load(path);
    CHECK(c.seed == 42);
    CHECK(std::isinf(c.beta));
    {
        std::ofstream f(path);
        f << "{not json";
    }
    CHECK_THROWS_AS(RunConfig::load(path), ConfigError);
    std::remove(path.c_str());
    CHECK_THROWS_AS(RunConfig::load("/nonexistent/cfg.json"), ConfigError);
}
