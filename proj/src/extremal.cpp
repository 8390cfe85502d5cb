#include "lplab/extremal.hpp"

#include "lplab/kernels.hpp"
#include "lplab/sqfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace lplab {

namespace {

constexpr double pi = std::numbers::pi;

}  // namespace

PoissonDilateResult poisson_dilate_bound(std::span<const double> s_list,
                                         std::span<const double> p_grid, const Domain& domain,
                                         const LogTimeGrid& grid) {
    if (domain.dim != 1 || domain.kind != DomainKind::truncated_line)
        throw std::invalid_argument("poisson_dilate_bound: needs a d=1 truncated-line domain");
    if (s_list.empty() || p_grid.empty())
        throw std::invalid_argument("poisson_dilate_bound: empty s-list or p-grid");
    for (double p : p_grid) {
        if (!(p > 1.0 && p <= 2.0))
            throw std::invalid_argument("poisson_dilate_bound: p must lie in (1, 2]");
    }
    PoissonDilateResult res;
    res.p.assign(p_grid.begin(), p_grid.end());
    res.s_list.assign(s_list.begin(), s_list.end());
    res.max_ratio.assign(p_grid.size(), 0.0);
    res.argmax_s.assign(p_grid.size(), 0.0);

    for (double s : s_list) {
        if (!(s >= 2.0 * domain.spacing()))
            throw std::invalid_argument("poisson_dilate_bound: s = " + std::to_string(s) +
                                        " is below two grid cells");
        SemigroupKernel kernel(SemigroupKind::poisson, s, 1);
        SampledField f(domain);
        for (int j = 0; j < domain.samples; ++j) {
            double x = domain.coordinate(j);
            f.values[j] = kernel.value(std::span<const double>{&x, 1});
        }
        auto g = g_semigroup(f, SemigroupKind::poisson, DerivativeMode::time, grid);
        std::vector<double> row(p_grid.size());
        for (std::size_t i = 0; i < p_grid.size(); ++i) {
            row[i] = lp_norm(g, p_grid[i]) / lp_norm(f, p_grid[i]);
            if (row[i] > res.max_ratio[i]) {
                res.max_ratio[i] = row[i];
                res.argmax_s[i] = s;
            }
        }
        res.ratio_table.push_back(std::move(row));
    }
    return res;
}

SampledField lacunary_field(std::span<const cdouble> a, const Domain& domain) {
    if (domain.kind != DomainKind::torus || domain.dim != 1)
        throw std::invalid_argument("lacunary_field: needs a d=1 torus domain");
    int K = static_cast<int>(a.size());
    if (K < 1) throw std::invalid_argument("lacunary_field: empty coefficient vector");
    if ((1 << K) >= domain.samples / 2)
        throw std::invalid_argument("lacunary_field: frequency 2^" + std::to_string(K) +
                                    " overflows the Nyquist band");
    std::vector<std::pair<int, cdouble>> coeffs;
    for (int k = 1; k <= K; ++k) coeffs.emplace_back(1 << k, a[static_cast<std::size_t>(k - 1)]);
    return synth(domain, coeffs);
}

LacunaryCheck lacunary_identity_check(std::span<const cdouble> a,
                                      std::span<const double> p_grid, const Domain& domain,
                                      const RadialGrid& rgrid) {
    double a2 = 0;
    for (const auto& c : a) a2 += std::norm(c);
    a2 = std::sqrt(a2);
    if (a2 == 0) throw std::invalid_argument("lacunary_identity_check: zero coefficients");

    auto f = lacunary_field(a, domain);
    auto g = g_torus_radial(f, SemigroupKind::heat, rgrid);
    LacunaryCheck out;
    out.p.assign(p_grid.begin(), p_grid.end());
    for (double p : p_grid) {
        double r = lp_norm(g, p) / a2;
        out.ratio.push_back(r);
        out.distortion = std::max(out.distortion, std::max(r, 1.0 / r));
    }
    return out;
}

ExponentFit khintchine_growth(std::span<const cdouble> a, std::span<const double> p_grid,
                              const Domain& domain) {
    if (a.size() < 10) throw std::invalid_argument("khintchine_growth: need K >= 10");
    for (double p : p_grid) {
        if (!(p >= 4.0 && p <= 64.0))
            throw std::invalid_argument("khintchine_growth: p-grid must lie in [4, 64]");
    }
    double a2 = 0;
    for (const auto& c : a) a2 += std::norm(c);
    a2 = std::sqrt(a2);
    if (a2 == 0) throw std::invalid_argument("khintchine_growth: zero coefficients");

    auto f = lacunary_field(a, domain);
    std::vector<double> ratios;
    for (double p : p_grid) ratios.push_back(lp_norm(f, p) / a2);
    return fit_loglog(p_grid, ratios, FitRegime::p_to_infinity);
}

MartingaleResult martingale_enumerate(int K, std::span<const double> p_grid) {
    if (K < 2 || K % 2 != 0 || K > 40)
        throw std::invalid_argument("martingale_enumerate: K must be even and in [2, 40]");
    MartingaleResult res;
    res.horizon = K;
    res.p_tau.assign(static_cast<std::size_t>(K) + 1, 0.0);
    res.p_event.assign(static_cast<std::size_t>(K) + 1, 0.0);

    // walk states -2..2 shifted to 0..4; +-2 absorb.
    // p_tau uses step weight 1/2 per sign; p_event additionally requires
    // |cos theta_k| >= 1/sqrt 2, an independent factor 1/2 per step, so its
    // dynamic program carries weight 1/4 per step.
    auto run = [&](double step_weight, std::vector<double>& out) {
        std::vector<double> state(5, 0.0);
        state[2] = 1.0;
        for (int j = 1; j <= K; ++j) {
            std::vector<double> next(5, 0.0);
            double absorbed = 0;
            for (int s = 1; s <= 3; ++s) {
                double mass = state[static_cast<std::size_t>(s)];
                if (mass == 0) continue;
                for (int step : {-1, 1}) {
                    int to = s + step;
                    if (to == 0 || to == 4) {
                        absorbed += mass * step_weight;
                    } else {
                        next[static_cast<std::size_t>(to)] += mass * step_weight;
                    }
                }
            }
            out[static_cast<std::size_t>(j)] = absorbed;
            state = std::move(next);
        }
        double rest = 0;
        for (double v : state) rest += v;
        return rest;
    };
    res.p_tau_beyond = run(0.5, res.p_tau);
    run(0.25, res.p_event);

    res.p.assign(p_grid.begin(), p_grid.end());
    for (double p : p_grid) {
        double acc = 0;
        for (int j = 2; j <= K; j += 2) {
            acc += std::pow(0.5 * j, 0.5 * p) * res.p_event[static_cast<std::size_t>(j)];
        }
        res.growth.push_back(std::pow(acc, 1.0 / p));
    }
    return res;
}

double quarter_step_measure(int quadrature_points) {
    // measure of { theta : sgn(cos theta) = +1, |cos theta| >= 1/sqrt 2 } on
    // the circle with normalized measure, by midpoint quadrature
    double acc = 0;
    double h = 2.0 * pi / quadrature_points;
    for (int i = 0; i < quadrature_points; ++i) {
        double theta = -pi + (i + 0.5) * h;
        double c = std::cos(theta);
        if (c > 0 && std::abs(c) >= 1.0 / std::sqrt(2.0)) acc += h;
    }
    return acc / (2.0 * pi);
}

GaussianMoment gaussian_moment(double p, std::size_t sample_count, unsigned long long seed) {
    if (!(p >= 1.0 && p <= 16.0))
        throw std::invalid_argument("gaussian_moment: p must lie in [1, 16]");
    if (sample_count < 100000)
        throw std::invalid_argument("gaussian_moment: need at least 1e5 samples");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> n01;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    double sum = 0, sum2 = 0;
    for (std::size_t i = 0; i < sample_count; ++i) {
        cdouble g{n01(rng) * inv_sqrt2, n01(rng) * inv_sqrt2};
        double v = std::pow(std::abs(g), p);
        sum += v;
        sum2 += v * v;
    }
    GaussianMoment m;
    m.samples = sample_count;
    m.estimate = sum / static_cast<double>(sample_count);
    double var = sum2 / static_cast<double>(sample_count) - m.estimate * m.estimate;
    m.std_error = std::sqrt(std::max(0.0, var) / static_cast<double>(sample_count));
    if (m.estimate > 0 && m.std_error / m.estimate > 0.25)
        throw std::invalid_argument(
            "gaussian_moment: sample count too small for p = " + std::to_string(p) +
            " (relative standard error " + std::to_string(m.std_error / m.estimate) + ")");
    return m;
}

MzCheck mz_tensor_check(std::span<const cdouble> alpha, double p, std::size_t sample_count,
                        unsigned long long seed) {
    if (alpha.empty()) throw std::invalid_argument("mz_tensor_check: empty coefficient vector");
    if (!(p >= 1.0 && p <= 16.0))
        throw std::invalid_argument("mz_tensor_check: p must lie in [1, 16]");
    if (sample_count < 100000)
        throw std::invalid_argument("mz_tensor_check: need at least 1e5 samples");
    double a2 = 0;
    for (const auto& c : alpha) a2 += std::norm(c);
    double scale = std::pow(a2, 0.5 * p);  // ||alpha||_2^p

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> n01;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    // paired difference D = |sum alpha_k g_k|^p - ||alpha||^p |g_1|^p from one
    // stream; the identity says E[D] = 0
    double dsum = 0, dsum2 = 0, ref = 0;
    for (std::size_t i = 0; i < sample_count; ++i) {
        cdouble combo = 0;
        double first_abs2 = 0;
        for (std::size_t k = 0; k < alpha.size(); ++k) {
            cdouble g{n01(rng) * inv_sqrt2, n01(rng) * inv_sqrt2};
            combo += alpha[k] * g;
            if (k == 0) first_abs2 = std::norm(g);
        }
        double lhs = std::pow(std::abs(combo), p);
        double rhs = scale * std::pow(first_abs2, 0.5 * p);
        dsum += lhs - rhs;
        dsum2 += (lhs - rhs) * (lhs - rhs);
        ref += rhs;
    }
    double n = static_cast<double>(sample_count);
    double mean_d = dsum / n;
    double var_d = std::max(0.0, dsum2 / n - mean_d * mean_d);
    double mean_ref = ref / n;
    MzCheck out;
    out.identity_error = std::abs(mean_d) / mean_ref;
    out.std_error = std::sqrt(var_d / n) / mean_ref;
    return out;
}

}  // namespace lplab
