// Extremal families driving the lower-bound growth orders: dilated Poisson
// kernels, lacunary series, the stopped-random-walk martingale, and the
// complex Gaussian moment identities.
#pragma once

#include "lplab/estimate.hpp"
#include "lplab/field.hpp"
#include "lplab/grids.hpp"

#include <span>
#include <vector>

namespace lplab {

struct PoissonDilateResult {
    std::vector<double> p;
    std::vector<double> max_ratio;     // max over s of ||G(P_s)||_p / ||P_s||_p
    std::vector<double> argmax_s;
    std::vector<std::vector<double>> ratio_table;  // [s-index][p-index]
    std::vector<double> s_list;
};

// d = 1 truncated line; p values in (1, 2].  Each s must span at least two
// grid cells.
PoissonDilateResult poisson_dilate_bound(std::span<const double> s_list,
                                         std::span<const double> p_grid, const Domain& domain,
                                         const LogTimeGrid& grid);

// f = sum_k a_k e^{2 pi i 2^k x}, k = 1..K.
SampledField lacunary_field(std::span<const cdouble> a, const Domain& domain);

struct LacunaryCheck {
    std::vector<double> p;
    std::vector<double> ratio;   // ||G_heat(f)||_p / ||a||_2
    double distortion = 0;       // max over p of max(ratio, 1/ratio)
};

LacunaryCheck lacunary_identity_check(std::span<const cdouble> a,
                                      std::span<const double> p_grid, const Domain& domain,
                                      const RadialGrid& rgrid);

// OLS fit of log(||f||_p / ||a||_2) against log p over the grid.
ExponentFit khintchine_growth(std::span<const cdouble> a, std::span<const double> p_grid,
                              const Domain& domain);

struct MartingaleResult {
    int horizon = 0;
    std::vector<double> p_tau;    // P(tau = j), index j = 0..K
    std::vector<double> p_event;  // P(A_j) = P(tau = j, all |cos| >= 1/sqrt 2)
    double p_tau_beyond = 0;      // P(tau > K)
    std::vector<double> p;        // growth grid
    std::vector<double> growth;   // F(p) = (sum (j/2)^{p/2} P(A_j))^{1/p}
};

// Exact dynamic program over the +-1 walk stopped at |S| = 2; K even, <= 40.
MartingaleResult martingale_enumerate(int K, std::span<const double> p_grid);

// The per-step measure of { sgn(cos theta) = s, |cos theta| >= 1/sqrt 2 } on
// the normalized circle, for either sign s (equals 1/4).
double quarter_step_measure(int quadrature_points = 1 << 16);

struct GaussianMoment {
    double estimate = 0;   // for E|g|^p with E|g|^2 = 1
    double std_error = 0;
    std::size_t samples = 0;
};

GaussianMoment gaussian_moment(double p, std::size_t sample_count, unsigned long long seed);

struct MzCheck {
    double identity_error = 0;  // |E|sum a_k g_k|^p - gamma_p^p ||a||^p| (relative)
    double std_error = 0;       // standard error of the same relative difference
};

// Both sides estimated from the same sample stream.
MzCheck mz_tensor_check(std::span<const cdouble> alpha, double p, std::size_t sample_count,
                        unsigned long long seed);

}  // namespace lplab
