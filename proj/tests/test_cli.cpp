#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lplab/experiments.hpp"

#include <sstream>

using namespace lplab;

TEST_CASE("catalog is nonempty and carries claims") {
    const auto& cat = experiment_catalog();
    CHECK(cat.size() >= 13);
    bool has_g = false, has_martingale = false;
    for (const auto& info : cat) {
        CHECK(!info.claim.empty());
        if (info.name == "g-character-value") has_g = true;
        if (info.name == "martingale-sqrt-p") has_martingale = true;
    }
    CHECK(has_g);
    CHECK(has_martingale);
    CHECK(find_experiment("martingale-sqrt-p") != nullptr);
    CHECK(find_experiment("no-such-thing") == nullptr);
}

TEST_CASE("config parsing: smoke expansion, seeds and overrides") {
    std::stringstream in(
        "# demo\n"
        "experiment = smoke\n"
        "seed = 42\n"
        "output_dir = /tmp/lplab-test\n"
        "override.tolerance = 0.002\n");
    auto cfg = parse_config(in);
    CHECK(cfg.params.seed == 42);
    CHECK(cfg.output_dir == "/tmp/lplab-test");
    CHECK(cfg.params.get("tolerance", 0.0) == 0.002);
    for (const auto& name : cfg.experiments) {
        CHECK(find_experiment(name)->in_smoke);
    }
}

TEST_CASE("config rejects unknown keys, bad N, and unknown experiments") {
    {
        std::stringstream in("experiment = smoke\nbogus_key = 1\n");
        CHECK_THROWS_WITH_AS(parse_config(in), doctest::Contains("bogus_key"),
                             std::invalid_argument);
    }
    {
        std::stringstream in("experiment = smoke\nN = 100\n");
        CHECK_THROWS_WITH_AS(parse_config(in), doctest::Contains("power of two"),
                             std::invalid_argument);
    }
    {
        std::stringstream in("experiment = not-an-experiment\n");
        CHECK_THROWS_WITH_AS(parse_config(in), doctest::Contains("not-an-experiment"),
                             std::invalid_argument);
    }
    {
        std::stringstream in("seed = 2\n");
        CHECK_THROWS_AS(parse_config(in), std::invalid_argument);
    }
    {
        std::stringstream in("experiment = smoke\nexperiment = all\n");
        CHECK_THROWS_AS(parse_config(in), std::invalid_argument);
    }
}

TEST_CASE("experiments rerun byte-identically with a fixed seed") {
    ExperimentParams params;
    params.seed = 7;
    auto a = run_experiment("gT-heat-character", params);
    auto b = run_experiment("gT-heat-character", params);
    REQUIRE(a.artifacts.size() == b.artifacts.size());
    for (std::size_t i = 0; i < a.artifacts.size(); ++i) {
        CHECK(a.artifacts[i].first == b.artifacts[i].first);
        CHECK(a.artifacts[i].second == b.artifacts[i].second);
    }
    CHECK(a.pass);
}

TEST_CASE("unknown experiment names are rejected at run time") {
    ExperimentParams params;
    CHECK_THROWS_AS(run_experiment("missing", params), std::invalid_argument);
}
