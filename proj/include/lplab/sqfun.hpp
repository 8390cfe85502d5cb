// Square functions: semigroup g-functions (time and full-gradient modes),
// the generic G^phi for a radial kernel symbol, the torus radial g-function,
// the Lusin area integral, the discrete bump g-function, and the H_p norm
// via the nontangential Poisson maximal function.
#pragma once

#include "lplab/field.hpp"
#include "lplab/grids.hpp"
#include "lplab/kernels.hpp"

#include <span>
#include <vector>

namespace lplab {

enum class DerivativeMode { time, full_gradient };

struct SqfunConfig {
    LogTimeGrid grid = LogTimeGrid::standard();
    double aperture = 1.0;
    DerivativeMode mode = DerivativeMode::time;
};

// (integral of t |d/dt T_t f|^2 dt)^{1/2}; full-gradient mode adds the spatial
// derivative components (t-weighted for the Poisson semigroup, unweighted in
// dt for the heat semigroup, keeping both modes scale invariant).
SampledField g_semigroup(const SampledField& f, SemigroupKind kind, DerivativeMode mode,
                         const LogTimeGrid& grid);

// G^phi(f) = (integral of |phi_t * f|^2 dt/t)^{1/2} for a radial symbol.
SampledField g_generic(const SampledField& f, const RadialSymbol& phi_hat,
                       const LogTimeGrid& grid);
// Field overload; gates on the Holder validator unless waived.
SampledField g_generic(const SampledField& f, const SampledField& phi, const LogTimeGrid& grid,
                       bool holder_waiver = false,
                       const HolderParams& params = {0.5, 0.5});

// Torus radial g-function (integral over r in (0,1) of (1-r)|d/dr T_r f|^2)^{1/2};
// poisson uses r^{|m|}, heat uses r^{|m|^2}.
SampledField g_torus_radial(const SampledField& f, SemigroupKind kind, const RadialGrid& rgrid);

// Lusin area integral S_alpha; integrates |psi_t * f(y)|^2 over the cone
// |y - x| < alpha t.  literal_x_form evaluates the integrand at x instead,
// which collapses to a cone-volume multiple of G^psi.
SampledField area_integral(const SampledField& f, const RadialSymbol& psi_hat, double aperture,
                           const LogTimeGrid& grid, bool literal_x_form = false);

// (sum_k |phi_k * f|^2)^{1/2} over the dyadic bump family (d = 1).
SampledField g_discrete(const SampledField& f, const BumpFamily& bumps);

// Nontangential Poisson maximal function over the discrete cone
// { (y, t) : |y - x| < aperture * t, t in grid }, including the smallest
// t node as the boundary-value proxy.
SampledField nontangential_maximal(const SampledField& f, const SqfunConfig& config);
// ||maximal||_p for p in [1, 2].
double hp_norm(const SampledField& f, double p, const SqfunConfig& config);

// Symbol-level hook: combined per-frequency, per-t multiplier magnitudes and
// the quadrature weights, enabling exact small-instance oracles.
struct SymbolTable {
    std::vector<double> t;
    std::vector<double> weight;
    std::vector<std::vector<double>> values;  // [frequency][t-node]
};
SymbolTable g_semigroup_symbol_table(SemigroupKind kind, DerivativeMode mode,
                                     const LogTimeGrid& grid, std::span<const double> xi_norms,
                                     int dim = 1);
// Per-frequency r-derivative magnitudes with the (1-r) dr weights.
SymbolTable g_torus_radial_symbol_table(SemigroupKind kind, const RadialGrid& rgrid,
                                        std::span<const double> freq_norms);

}  // namespace lplab
