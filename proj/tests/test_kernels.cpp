#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lplab/kernels.hpp"

#include <cmath>
#include <numbers>
#include <vector>

using namespace lplab;

namespace {

constexpr double pi = std::numbers::pi;

// Simpson oracle on [a, b]
template <class F>
double simpson(F f, double a, double b, int n) {
    double h = (b - a) / n, acc = f(a) + f(b);
    for (int i = 1; i < n; ++i) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

}  // namespace

TEST_CASE("symbols at the origin are 1 and decrease in |xi|") {
    for (auto kind : {SemigroupKind::poisson, SemigroupKind::heat}) {
        SemigroupKernel k(kind, 1.0, 1);
        CHECK(k.symbol(0.0) == 1.0);
        double prev = 1.0;
        for (double xi : {0.5, 1.0, 2.0, 7.0}) {
            CHECK(k.symbol(xi) < prev);
            prev = k.symbol(xi);
        }
    }
}

TEST_CASE("semigroup law of symbols holds to 1e-12") {
    for (auto kind : {SemigroupKind::poisson, SemigroupKind::heat}) {
        SemigroupKernel a(kind, 0.3, 1), b(kind, 0.7, 1), c(kind, 1.0, 1);
        for (double xi : {0.1, 1.0, 3.7}) {
            CHECK(std::abs(a.symbol(xi) * b.symbol(xi) - c.symbol(xi)) < 1e-12);
        }
    }
}

TEST_CASE("poisson normalization has unit mass (quadrature oracle)") {
    // x = t tan(theta) turns the mass integral into (1/pi) d theta over (-pi/2, pi/2)
    SemigroupKernel k(SemigroupKind::poisson, 0.05, 1);
    auto integrand = [&](double theta) {
        double c = std::cos(theta);
        if (c < 1e-12) return 0.0;
        double x = 0.05 * std::tan(theta);
        double jac = 0.05 / (c * c);
        return k.value(std::span<const double>{&x, 1}) * jac;
    };
    double mass = simpson(integrand, -pi / 2 + 1e-9, pi / 2 - 1e-9, 4096);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("heat kernel field integrates to 1 and matches its symbol") {
    auto d = Domain::line(1, 16.0, 1024);
    SemigroupKernel k(SemigroupKind::heat, 0.05, 1);
    auto f = kernel_field(k, d);
    double mass = 0;
    for (auto v : f.values) mass += v.real();
    mass *= d.cell_volume();
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));

    // coefficient at m is symbol(m/L)/L for rapidly decaying kernels
    auto s = transform(f);
    for (int m : {0, 1, 5, 32, 100}) {
        std::vector<int> mm{m};
        double expect = k.symbol(m / 16.0) / 16.0;
        CHECK(std::abs(s.at(mm) - cdouble(expect)) < 1e-8);
    }
}

TEST_CASE("poisson field construction reports its tail budget") {
    auto d = Domain::line(1, 8.0, 512);
    SemigroupKernel k(SemigroupKind::poisson, 0.05, 1);
    CHECK_THROWS_WITH_AS(kernel_field(k, d), doctest::Contains("tail"), std::runtime_error);
}

TEST_CASE("Bochner subordination reproduces the poisson symbol") {
    auto grid400 = LogTimeGrid::geometric(1e-6, 1e3, 400);
    std::vector<double> zero{0.0};
    CHECK(subordination_check(1.0, grid400, zero) < 1e-12);

    std::vector<double> xi{1.0};
    CHECK(subordination_check(1.0, grid400, xi) < 1e-6);

    // refinement shrinks the gap (node counts kept below the quadrature floor)
    std::vector<double> xs{0.5, 1.0, 2.0};
    double g25 = subordination_check(1.0, LogTimeGrid::geometric(1e-6, 1e3, 25), xs);
    double g50 = subordination_check(1.0, LogTimeGrid::geometric(1e-6, 1e3, 50), xs);
    double g100 = subordination_check(1.0, LogTimeGrid::geometric(1e-6, 1e3, 100), xs);
    CHECK(g50 < g25);
    CHECK(g100 < g50);
}

TEST_CASE("the poisson-derivative profile passes the Holder validator") {
    auto d = Domain::line(1, 16.0, 2048);
    auto phi = poisson_g_profile(d);
    auto rep = check_holder_class(phi, {.epsilon = 0.5, .delta = 0.5});
    CHECK(rep.pass);
    CHECK(rep.decay_margin <= 1.0 + 1e-3);
    CHECK(rep.holder_margin <= 1.0 + 1e-3);
    CHECK(rep.mean <= 1e-6);
}

TEST_CASE("a mean-one kernel fails the Holder validator on the mean condition") {
    auto d = Domain::line(1, 16.0, 1024);
    auto f = kernel_field(SemigroupKernel(SemigroupKind::heat, 0.05, 1), d);
    auto rep = check_holder_class(f, {.epsilon = 0.5, .delta = 0.5});
    CHECK(!rep.pass);
    CHECK(rep.mean == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("the zero field passes the Holder validator with zero margins") {
    auto d = Domain::line(1, 8.0, 256);
    SampledField z(d);
    auto rep = check_holder_class(z, {.epsilon = 0.5, .delta = 0.5});
    CHECK(rep.pass);
    CHECK(rep.decay_margin == 0);
    CHECK(rep.holder_margin == 0);
    CHECK(rep.mean == 0);
}

TEST_CASE("calderon product of the featured kernel with 4*phi is 1") {
    // oracle: integral of s e^{-4 pi s} ds = 1/(16 pi^2), so
    // 4 * integral (2 pi s)^2 e^{-4 pi s} ds/s = 1
    double oracle = simpson([](double s) { return s * std::exp(-4 * pi * s); }, 0.0, 8.0, 20000);
    CHECK(oracle == doctest::Approx(1.0 / (16 * pi * pi)).epsilon(1e-10));

    auto grid = LogTimeGrid::geometric(1e-7, 1e5, 1024);
    RadialSymbol phi_hat = poisson_g_profile_hat;
    RadialSymbol psi_hat = [](double u) { return 4.0 * poisson_g_profile_hat(u); };
    std::vector<double> xi{0.4, 1.0, 3.0, 17.0};
    auto pair = calderon_product(phi_hat, psi_hat, xi, grid);
    CHECK(pair.max_deviation < 1e-6);

    // psi = phi (unscaled) integrates to 1/4 per xi
    auto quarter = calderon_product(phi_hat, phi_hat, xi, grid);
    for (double v : quarter.product) CHECK(v == doctest::Approx(0.25).epsilon(1e-6));
}

TEST_CASE("calderon product is invariant under dilating the xi set") {
    auto grid = LogTimeGrid::geometric(1e-7, 1e5, 1024);
    RadialSymbol phi_hat = poisson_g_profile_hat;
    std::vector<double> xi1{0.5, 1.0, 2.0};
    std::vector<double> xi2{1.0, 2.0, 4.0};
    auto a = calderon_product(phi_hat, phi_hat, xi1, grid);
    auto b = calderon_product(phi_hat, phi_hat, xi2, grid);
    for (std::size_t i = 0; i < a.product.size(); ++i) {
        CHECK(a.product[i] == doctest::Approx(b.product[i]).epsilon(1e-9));
    }
}

TEST_CASE("make_calderon_partner returns 4*phi for the featured kernel") {
    auto d = Domain::line(1, 16.0, 1024);
    auto phi = poisson_g_profile(d);
    RadialSymbol phi_hat = poisson_g_profile_hat;
    auto grid = LogTimeGrid::geometric(1e-7, 1e5, 1024);
    auto psi = make_calderon_partner(phi, grid, &phi_hat);
    double sup = 0;
    for (auto v : phi.values) sup = std::max(sup, std::abs(v));
    for (std::size_t i = 0; i < phi.size(); i += 97) {
        CHECK(std::abs(psi.values[i] - 4.0 * phi.values[i]) < 1e-6 * sup);
    }

    // scaling phi by lambda scales the partner by 1/lambda
    auto phi2 = phi;
    for (auto& v : phi2.values) v *= 3.0;
    RadialSymbol phi2_hat = [](double u) { return 3.0 * poisson_g_profile_hat(u); };
    auto psi2 = make_calderon_partner(phi2, grid, &phi2_hat);
    for (std::size_t i = 0; i < phi.size(); i += 131) {
        CHECK(std::abs(psi2.values[i] - psi.values[i] / 3.0) < 1e-9);
    }

    RadialSymbol zero = [](double) { return 0.0; };
    CHECK_THROWS_AS(make_calderon_partner(phi, grid, &zero), std::runtime_error);
}

TEST_CASE("sampled profile route: compact mean-zero kernel reproduces itself") {
    // difference of two unit-mass bumps; compact support keeps the sampled
    // transform faithful at all frequencies
    auto d = Domain::line(1, 16.0, 2048);
    SampledField phi(d);
    auto bump = [](double x, double s) {
        double u = x / s;
        return std::abs(u) < 1 ? std::exp(-1.0 / (1 - u * u)) / (0.443994 * s) : 0.0;
    };
    for (int j = 0; j < d.samples; ++j) {
        double x = d.coordinate(j);
        phi.values[j] = bump(x, 1.0) - bump(x, 2.0);
    }
    auto prof = radial_fourier_profile(phi, 16);
    CHECK(std::abs(prof(0.0)) < 1e-10);  // mean zero

    auto grid = LogTimeGrid::geometric(1e-5, 1e4, 1024);
    RadialSymbol phat = [&prof](double u) { return prof(u); };
    double c = calderon_normalization(phat, grid);
    RadialSymbol psi_hat = [&prof, c](double u) { return prof(u) / c; };
    std::vector<double> xi{0.5, 1.0, 2.0, 5.0};
    auto pair = calderon_product(phat, psi_hat, xi, grid);
    CHECK(pair.max_deviation < 1e-6);
}

TEST_CASE("poisson g-kernel regularity: |x|^d bound with a stable constant") {
    // ||K(x)||^2_{L2(dt/t)} = integral of |phi_t(x)|^2 dt/t for the featured kernel
    auto norm_at = [](double x, const LogTimeGrid& g) {
        double acc = 0;
        for (int j = 0; j < g.count(); ++j) {
            double t = g.nodes[j];
            double u = x / t;
            double phi = (1.0 / pi) * (1 - u * u) / ((1 + u * u) * (1 + u * u)) / t;
            acc += g.weights[j] * phi * phi;
        }
        return std::sqrt(acc);
    };
    auto sup_of = [&](const LogTimeGrid& g) {
        double sup = 0;
        for (int i = 0; i <= 40; ++i) {
            double x = 0.1 * std::pow(100.0, i / 40.0);  // log grid over [0.1, 10]
            sup = std::max(sup, x * norm_at(x, g));
        }
        return sup;
    };
    double c512 = sup_of(LogTimeGrid::geometric(1e-6, 1e4, 512));
    double c1024 = sup_of(LogTimeGrid::geometric(1e-6, 1e4, 1024));
    CHECK(c512 > 0);
    CHECK(std::abs(c512 - c1024) / c1024 < 1e-6);
}

TEST_CASE("dyadic bumps form a partition of unity on covered frequencies") {
    auto d = Domain::torus(1, 1024);  // nyquist 512
    auto fam = dyadic_bump_partition(d, -2, 7);
    CHECK(fam.sum(3.0) == doctest::Approx(1.0).epsilon(1e-10));
    for (double xi : {1.0, 2.0, 5.0, 17.0, 100.0}) {
        REQUIRE(fam.fully_covered(xi));
        CHECK(fam.sum(xi) == doctest::Approx(1.0).epsilon(1e-10));
    }
    // support: bump k vanishes at 2^{k-2}
    for (int k : {0, 2, 5}) {
        CHECK(fam.bump_hat(k, std::ldexp(1.0, k - 2)) == 0.0);
    }
    // denominator >= 1 sample-wise on [1/2, 4]
    for (int i = 0; i <= 100; ++i) {
        double xi = 0.5 + i * (3.5 / 100.0);
        CHECK(fam.denominator(xi) >= 1.0 - 1e-12);
    }
    CHECK_THROWS_AS(dyadic_bump_partition(d, 0, 8), std::invalid_argument);
    CHECK(!fam.fully_covered(512.0));
}

TEST_CASE("bump families and calderon reports serialize to json") {
    auto d = Domain::torus(1, 1024);
    auto fam = dyadic_bump_partition(d, 0, 3);
    auto jf = to_json_string(fam);
    CHECK(jf.find("\"k_min\": 0") != std::string::npos);
    CHECK(jf.find("support") != std::string::npos);

    auto grid = LogTimeGrid::geometric(1e-7, 1e5, 512);
    RadialSymbol phi_hat = poisson_g_profile_hat;
    std::vector<double> xi{1.0, 2.0};
    auto pair = calderon_product(phi_hat, phi_hat, xi, grid);
    auto jp = to_json_string(pair);
    CHECK(jp.find("max_deviation") != std::string::npos);
    CHECK(jp.find("products") != std::string::npos);
}
