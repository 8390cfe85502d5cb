// Semigroup kernels and their symbols, the Holder test class, Calderon
// reproducing pairs, radial Fourier profiles of sampled kernels, and the
// smooth dyadic bump partition of unity.
#pragma once

#include "lplab/field.hpp"
#include "lplab/grids.hpp"

#include <functional>
#include <span>
#include <vector>

namespace lplab {

enum class SemigroupKind { poisson, heat };

struct SemigroupKernel {
    SemigroupKind kind = SemigroupKind::poisson;
    double t = 1.0;
    int dim = 1;

    SemigroupKernel(SemigroupKind kind, double t, int dim);

    // multiplier symbol at |xi|: e^{-2 pi t |xi|} or e^{-4 pi^2 t |xi|^2}
    double symbol(double xi_norm) const;
    // convolution kernel value; unit total mass
    double value(std::span<const double> x) const;
    // mass outside the centered box of the given half-width (upper bound)
    double tail_mass(double half_width) const;
};

// Kernel sampled on a truncated-line domain.  Throws (carrying the tail
// estimate) when the mass outside the domain exceeds 1e-6.
SampledField kernel_field(const SemigroupKernel& k, const Domain& domain);
std::vector<double> kernel_symbol(const SemigroupKernel& k, std::span<const double> xi_norms);

// Sup over the xi list of |quadrature of Bochner's subordination formula
// minus the Poisson symbol|.
double subordination_check(double t, const LogTimeGrid& s_grid,
                           std::span<const double> xi_norms);

// ---- Holder class ------------------------------------------------------------

struct HolderParams {
    double epsilon = 0.5;
    double delta = 0.5;
};

struct HolderReport {
    double decay_margin = 0;    // worst |phi(x)| (1+|x|)^{d+eps}
    double holder_margin = 0;   // worst smoothness quotient over sampled pairs
    double mean = 0;            // rectangle-rule integral of phi
    bool pass = false;
};

HolderReport check_holder_class(const SampledField& phi, const HolderParams& params,
                                int pair_samples = 100000, unsigned seed = 1);

// ---- radial Fourier profiles --------------------------------------------------

// Radial symbol table of a d=1 kernel field.  The field is read as one
// period of the periodized kernel, so its spectrum coefficients sample the
// underlying symbol exactly at the grid frequencies k/L; values in between
// are cubic-interpolated (via sigma(u)/u near the origin, where mean-zero
// symbols vanish linearly).  Evaluations beyond the table return 0.
struct FourierProfile {
    double du = 0;
    double tail_bound = 0;        // |profile| at the cutoff
    std::vector<double> table;    // sigma at u = 0, du, 2du, ...
    std::vector<double> head;     // sigma(u)/u at the first nodes (origin handling)

    double operator()(double u) const;
    double u_max() const { return du * (table.empty() ? 0 : table.size() - 1); }
};

// oversample > 1 refines du = 1/(oversample * L) by zero padding and needs a
// kernel supported inside the cell (negligible boundary values);
// oversample = 0 picks 8 for such kernels and 1 otherwise.
FourierProfile radial_fourier_profile(const SampledField& phi, int oversample = 0);

// The library's featured nondegenerate kernel: phi with
// phi_hat(xi) = 2 pi |xi| e^{-2 pi |xi|} (minus the time derivative of the
// Poisson kernel at t = 1).
SampledField poisson_g_profile(const Domain& domain);
double poisson_g_profile_hat(double xi_norm);

// ---- Calderon pairs -----------------------------------------------------------

// Radial Fourier symbol xi -> phi_hat(|xi|).  Sampled kernels wrap a
// FourierProfile; kernels with closed-form transforms pass them directly
// (a polynomially decaying kernel truncates too badly for the sampled route).
using RadialSymbol = std::function<double(double)>;

struct CalderonPair {
    std::vector<double> xi;        // |xi| test values
    std::vector<double> product;   // integral of phi_hat(t xi) psi_hat(t xi) dt/t
    double max_deviation = 0;      // max |product - 1|
};

CalderonPair calderon_product(const RadialSymbol& phi_hat, const RadialSymbol& psi_hat,
                              std::span<const double> xi_norms, const LogTimeGrid& grid);

// c = integral of phi_hat(t)^2 dt/t; throws when degenerate (outside [1e-6, 1e6]).
double calderon_normalization(const RadialSymbol& phi_hat, const LogTimeGrid& grid);

// psi = phi / c; uses the sampled radial profile of phi unless an analytic
// symbol is supplied.
SampledField make_calderon_partner(const SampledField& phi, const LogTimeGrid& grid,
                                   const RadialSymbol* analytic_hat = nullptr);

// ---- dyadic bump partition ----------------------------------------------------

// Smooth bumps phi_hat_k(xi) = eta(2^{-k}|xi|) / sum_j eta(2^{-j}|xi|) with
// eta supported in (1/2, 4); sum over k of phi_hat_k = 1 on covered bands.
struct BumpFamily {
    int k_min = 0;
    int k_max = 0;

    double eta(double s) const;           // base bump, support (1/2, 4)
    double denominator(double xi) const;  // untruncated sum over j; >= 1 for xi != 0
    double bump_hat(int k, double xi_norm) const;
    double sum(double xi_norm) const;     // over k in [k_min, k_max]
    bool fully_covered(double xi_norm) const;
};

BumpFamily dyadic_bump_partition(const Domain& domain, int k_min, int k_max);

std::string to_json_string(const BumpFamily& fam);
std::string to_json_string(const CalderonPair& pair);

}  // namespace lplab
