// Dyadic-cube maximal functions: the sharp maximal f#, BMO_q norms, and the
// Carleson box-energy maximal function.
#pragma once

#include "lplab/field.hpp"
#include "lplab/grids.hpp"
#include "lplab/kernels.hpp"

namespace lplab {

// Dyadic cubes: level j splits each axis into 2^j cells of side L 2^{-j}.
struct CubeFamily {
    Domain domain;
    int level_min = 0;
    int level_max = 0;

    CubeFamily(const Domain& d, int level_min, int level_max);

    int cubes_per_axis(int level) const { return 1 << level; }
    double side(int level) const { return domain.period / cubes_per_axis(level); }
    // flat cube index of a sample at the given level
    std::size_t cube_of(int level, std::span<const int> sample_idx) const;
    std::size_t cube_count(int level) const;
};

// f#(x) = max over dyadic cubes containing x of the L2 mean oscillation.
SampledField sharp_maximal(const SampledField& f, const CubeFamily& cubes);

// ||f#||_q for q in (2, 256].
double bmo_q_norm(const SampledField& f, double q, const CubeFamily& cubes);

// C(x) = max over cubes Q containing x of
// ( |Q|^{-1} integral over Q x (0, side(Q)] of |phi_t * f|^2 dy dt/t )^{1/2}.
SampledField carleson_maximal(const SampledField& f, const RadialSymbol& phi_hat,
                              const CubeFamily& cubes, const LogTimeGrid& grid);

}  // namespace lplab
