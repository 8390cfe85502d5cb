// Geometric quadrature grids for the semigroup parameter.  A LogTimeGrid
// discretizes integrals of F(t) dt/t with trapezoid weights in log t; the
// substitution r = e^{-2 pi t} turns the same grid into a quadrature for
// integral_0^1 (1 - r) F(r) dr clustering near r = 1.
#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace lplab {

struct LogTimeGrid {
    double t_min = 0;
    double t_max = 0;
    std::vector<double> nodes;     // strictly increasing
    std::vector<double> weights;   // for integral F(t) dt/t

    static LogTimeGrid geometric(double t_min, double t_max, int count);
    // Default grid used by the semigroup operators: 512 nodes over [1e-4, 1e4].
    static LogTimeGrid standard();

    int count() const { return static_cast<int>(nodes.size()); }

    // Same span with every other node; used for refinement error estimates.
    LogTimeGrid coarsened() const;

    double integrate(const std::function<double(double)>& f) const;
    // (value, |value - coarsened value|): trapezoid-halving error estimate
    std::pair<double, double> integrate_with_error(const std::function<double(double)>& f) const;
};

struct RadialGrid {
    std::vector<double> r;         // in (0, 1), decreasing toward 0
    std::vector<double> weight;    // for integral_0^1 (1 - r) F(r) dr

    // r_j = e^{-2 pi t_j}; weight absorbs both the Jacobian and the (1-r) factor
    static RadialGrid from_log_grid(const LogTimeGrid& g);
    // Default: 512 nodes, t over [1e-10, 10]; resolves characters up to n^2 ~ 1e5.
    static RadialGrid standard();

    int count() const { return static_cast<int>(r.size()); }
};

}  // namespace lplab
