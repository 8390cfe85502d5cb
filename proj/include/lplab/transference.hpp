// Vector-valued Fourier multipliers and the transference experiments
// connecting periodic and Euclidean operator bounds.
#pragma once

#include "lplab/dyadic.hpp"
#include "lplab/field.hpp"
#include "lplab/grids.hpp"

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace lplab {

// Symbol xi -> vector in a weighted-l2 space Y (a LogTimeGrid quadrature
// stand-in for L2(R+, dt/t), or a plain finite-dimensional l2).
struct VectorSymbol {
    int ydim = 1;
    std::vector<double> weights;  // Y-norm weights, size ydim
    std::function<cdouble(int component, std::span<const double> xi)> component;
    std::string name;

    double pointwise_norm(std::span<const double> xi) const;
};

VectorSymbol poisson_g_symbol(const LogTimeGrid& grid);
VectorSymbol identity_symbol();
VectorSymbol dyadic_indicator_symbol(const DyadicPartition& partition);
// phi^{(t)}(xi) = phi(t xi)
VectorSymbol scale_symbol(const VectorSymbol& sym, double t);
// restriction to the first k coordinates (remaining ones set to 0)
VectorSymbol restrict_symbol(const VectorSymbol& sym, int k);

struct VectorField {
    Domain domain;
    int ydim = 0;
    std::vector<double> weights;
    std::vector<cdouble> data;  // component-major: data[c * size + i]

    SampledField pointwise_norm() const;
    double lp_norm_y(double p) const;
};

// T_phi f (line) or M_phi f (torus): per-frequency scalar-times-vector action.
VectorField apply_multiplier(const SampledField& f, const VectorSymbol& sym);
// Pointwise Y-norm field of the multiplier output, computed streaming.
SampledField multiplier_norm_field(const SampledField& f, const VectorSymbol& sym);

// (4 pi p t)^{d/2p} || T_phi( P * heat-window ) ||_{L_p(line; Y)} for a torus
// polynomial P; converges to ||M_phi(P)||_{L_p(torus; Y)} as t -> 0.
double gaussian_window_norm(const SampledField& P, const VectorSymbol& sym, double p, double t,
                            const Domain& line_domain);

// t^{d/p'} || M_{phi^{(t)}}( periodization of f_t ) ||_{L_p(torus; Y)};
// converges to ||T_phi(f)||_{L_p(line; Y)} as t -> 0.
double periodization_norm(const SampledField& f, const VectorSymbol& sym, double p, double t,
                          int torus_samples);

struct TransferenceReport {
    double periodic_max = 0;
    double line_max = 0;
    std::string periodic_argmax;
    std::string line_argmax;
    std::vector<std::pair<std::string, double>> periodic_ratios;
    std::vector<std::pair<std::string, double>> line_ratios;
    double tol = 0.05;
    bool pass = false;  // periodic_max <= line_max * (1 + tol)
};

TransferenceReport transference_inequality_check(const VectorSymbol& sym, double p,
                                                 std::span<const SampledField> torus_set,
                                                 std::span<const SampledField> line_set,
                                                 double tol = 0.05);

// Rectangle-rule integral of f(x) H_t(x) over a width-`period` window; tends
// to the torus mean of f as t grows.
double ergodic_average(const SampledField& torus_f, double t, double period, int samples);

struct HypothesesReport {
    double bound = 0;       // sup over the band of the pointwise Y-norm (H1)
    double max_jump = 0;    // largest Y-norm jump between adjacent frequencies
                            // inside one dyadic block (strong-continuity proxy)
    bool bounded = false;
    bool jump_ok = false;
    bool finite_rank = true;   // holds by construction in the finite model
    bool densely_defined = true;
};

HypothesesReport validate_hypotheses(const VectorSymbol& sym, const Domain& domain,
                                     double jump_modulus);

std::string report_to_json_string(const TransferenceReport& r);

}  // namespace lplab
