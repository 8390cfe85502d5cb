#include "lplab/grids.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lplab {

LogTimeGrid LogTimeGrid::geometric(double t_min, double t_max, int count) {
    if (!(t_min > 0) || !(t_max > t_min))
        throw std::invalid_argument("LogTimeGrid: need 0 < t_min < t_max");
    if (count < 2) throw std::invalid_argument("LogTimeGrid: need at least 2 nodes");

    LogTimeGrid g;
    g.t_min = t_min;
    g.t_max = t_max;
    g.nodes.resize(count);
    g.weights.resize(count);
    const double u0 = std::log(t_min), u1 = std::log(t_max);
    const double h = (u1 - u0) / (count - 1);
    for (int j = 0; j < count; ++j) {
        g.nodes[j] = std::exp(u0 + j * h);
        g.weights[j] = (j == 0 || j == count - 1) ? 0.5 * h : h;
    }
    return g;
}

LogTimeGrid LogTimeGrid::standard() { return geometric(1e-4, 1e4, 512); }

LogTimeGrid LogTimeGrid::coarsened() const {
    int n = count();
    if (n < 4) throw std::logic_error("LogTimeGrid::coarsened: grid too small");
    LogTimeGrid g;
    g.t_min = t_min;
    g.t_max = t_max;
    for (int j = 0; j < n; j += 2) g.nodes.push_back(nodes[j]);
    // keep the right endpoint so both grids cover the same span
    if ((n - 1) % 2 != 0) g.nodes.push_back(nodes[n - 1]);
    int m = static_cast<int>(g.nodes.size());
    g.weights.resize(m);
    for (int j = 0; j < m; ++j) {
        double left = (j == 0) ? g.nodes[0] : g.nodes[j - 1];
        double right = (j == m - 1) ? g.nodes[m - 1] : g.nodes[j + 1];
        g.weights[j] = 0.5 * std::log(right / left);
        if (j == 0) g.weights[j] = 0.5 * std::log(g.nodes[1] / g.nodes[0]);
        if (j == m - 1) g.weights[j] = 0.5 * std::log(g.nodes[m - 1] / g.nodes[m - 2]);
    }
    return g;
}

double LogTimeGrid::integrate(const std::function<double(double)>& f) const {
    double acc = 0;
    for (int j = 0; j < count(); ++j) acc += weights[j] * f(nodes[j]);
    return acc;
}

std::pair<double, double>
LogTimeGrid::integrate_with_error(const std::function<double(double)>& f) const {
    double full = integrate(f);
    double coarse = coarsened().integrate(f);
    return {full, std::abs(full - coarse)};
}

RadialGrid RadialGrid::from_log_grid(const LogTimeGrid& g) {
    RadialGrid rg;
    rg.r.resize(g.count());
    rg.weight.resize(g.count());
    const double two_pi = 2.0 * std::numbers::pi;
    for (int j = 0; j < g.count(); ++j) {
        double t = g.nodes[j];
        double r = std::exp(-two_pi * t);
        rg.r[j] = r;
        // dr = -2 pi r dt, dt = t * (dt/t); the (1-r) factor is folded in
        rg.weight[j] = g.weights[j] * t * two_pi * r * (1.0 - r);
    }
    return rg;
}

RadialGrid RadialGrid::standard() {
    return from_log_grid(LogTimeGrid::geometric(1e-10, 10.0, 512));
}

}  // namespace lplab
