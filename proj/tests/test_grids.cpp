#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lplab/grids.hpp"

#include <cmath>
#include <numbers>

using namespace lplab;

TEST_CASE("log grid integrates a smooth dt/t integrand") {
    // integral_0^inf (2 pi t)^2 e^{-4 pi t} dt/t = 1/4
    auto f = [](double t) {
        double a = 2.0 * std::numbers::pi * t;
        return a * a * std::exp(-2.0 * a);
    };
    auto g = LogTimeGrid::standard();
    CHECK(g.integrate(f) == doctest::Approx(0.25).epsilon(1e-6));

    // the halving estimate bounds the node-density error: refining the node
    // count within the same span moves the value by less than the estimate
    auto [value, err] = g.integrate_with_error(f);
    auto finer = LogTimeGrid::geometric(g.t_min, g.t_max, 2 * g.count());
    CHECK(std::abs(finer.integrate(f) - value) <= std::max(err, 1e-14));
}

TEST_CASE("doubling the node count moves a smooth integral by < 1e-6") {
    auto f = [](double t) { return t * std::exp(-t); };  // integral_0^inf e^{-t} dt = 1
    auto coarse = LogTimeGrid::geometric(1e-6, 1e3, 256);
    auto fine = LogTimeGrid::geometric(1e-6, 1e3, 512);
    CHECK(std::abs(fine.integrate(f) - coarse.integrate(f)) < 1e-6);
    CHECK(fine.integrate(f) == doctest::Approx(1.0).epsilon(2e-6));
}

TEST_CASE("nodes are strictly increasing and weights positive") {
    auto g = LogTimeGrid::geometric(1e-3, 1e2, 64);
    for (int j = 1; j < g.count(); ++j) CHECK(g.nodes[j] > g.nodes[j - 1]);
    for (double w : g.weights) CHECK(w > 0);
}

TEST_CASE("error estimate bounds the next refinement step") {
    auto f = [](double t) {
        double a = 2.0 * std::numbers::pi * t;
        return a * a * std::exp(-2.0 * a);
    };
    auto g256 = LogTimeGrid::geometric(1e-4, 1e4, 256);
    auto g512 = LogTimeGrid::geometric(1e-4, 1e4, 512);
    auto [v256, est] = g256.integrate_with_error(f);
    CHECK(std::abs(g512.integrate(f) - v256) <= std::max(est, 1e-14));
}

TEST_CASE("radial grid reproduces the beta integral for heat characters") {
    // integral_0^1 (1-r) (n^2 r^{n^2-1})^2 dr = n^4 / ((2n^2-1) 2n^2)
    auto rg = RadialGrid::standard();
    for (int n : {1, 2, 4, 16}) {
        double got = 0;
        for (int j = 0; j < rg.count(); ++j) {
            double d = static_cast<double>(n) * n * std::pow(rg.r[j], n * n - 1);
            got += rg.weight[j] * d * d;
        }
        double n2 = static_cast<double>(n) * n;
        double exact = n2 * n2 / ((2 * n2 - 1) * 2 * n2);
        CHECK(got == doctest::Approx(exact).epsilon(1e-8));
    }
}

TEST_CASE("invalid grids are rejected") {
    CHECK_THROWS(LogTimeGrid::geometric(0.0, 1.0, 16));
    CHECK_THROWS(LogTimeGrid::geometric(1.0, 0.5, 16));
    CHECK_THROWS(LogTimeGrid::geometric(1e-2, 1e2, 1));
}
