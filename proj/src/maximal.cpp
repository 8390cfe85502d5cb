#include "lplab/maximal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace lplab {

CubeFamily::CubeFamily(const Domain& d, int level_min_, int level_max_)
    : domain(d), level_min(level_min_), level_max(level_max_) {
    if (level_min < 0 || level_min > level_max)
        throw std::invalid_argument("CubeFamily: need 0 <= level_min <= level_max");
    if ((domain.samples >> level_max) < 2)
        throw std::invalid_argument("CubeFamily: finest cubes need at least 2 samples per axis");
}

std::size_t CubeFamily::cube_of(int level, std::span<const int> sample_idx) const {
    const int shift = static_cast<int>(std::log2(domain.samples)) - level;
    std::size_t flat = 0;
    for (int a = 0; a < domain.dim; ++a) {
        flat = flat * static_cast<std::size_t>(cubes_per_axis(level)) +
               static_cast<std::size_t>(sample_idx[a] >> shift);
    }
    return flat;
}

std::size_t CubeFamily::cube_count(int level) const {
    std::size_t n = 1;
    for (int a = 0; a < domain.dim; ++a) n *= static_cast<std::size_t>(cubes_per_axis(level));
    return n;
}

SampledField sharp_maximal(const SampledField& f, const CubeFamily& cubes) {
    const Domain& d = f.domain;
    if (!(d == cubes.domain)) throw std::invalid_argument("sharp_maximal: domain mismatch");

    SampledField out(d);
    std::vector<int> idx(d.dim);
    for (int level = cubes.level_min; level <= cubes.level_max; ++level) {
        // two passes: means first, then centered second moments
        std::vector<cdouble> sum(cubes.cube_count(level), cdouble(0));
        std::vector<double> dev2(cubes.cube_count(level), 0.0);
        std::vector<std::size_t> count(cubes.cube_count(level), 0);
        for (std::size_t flat = 0; flat < f.size(); ++flat) {
            d.decode(flat, idx);
            std::size_t q = cubes.cube_of(level, idx);
            sum[q] += f.values[flat];
            ++count[q];
        }
        for (std::size_t q = 0; q < sum.size(); ++q) sum[q] /= static_cast<double>(count[q]);
        for (std::size_t flat = 0; flat < f.size(); ++flat) {
            d.decode(flat, idx);
            std::size_t q = cubes.cube_of(level, idx);
            dev2[q] += std::norm(f.values[flat] - sum[q]);
        }
        std::vector<double> osc(sum.size());
        for (std::size_t q = 0; q < sum.size(); ++q) {
            osc[q] = std::sqrt(dev2[q] / static_cast<double>(count[q]));
        }
        for (std::size_t flat = 0; flat < f.size(); ++flat) {
            d.decode(flat, idx);
            double v = osc[cubes.cube_of(level, idx)];
            if (v > out.values[flat].real()) out.values[flat] = v;
        }
    }
    return out;
}

double bmo_q_norm(const SampledField& f, double q, const CubeFamily& cubes) {
    if (!(q > 2.0 && q <= 256.0))
        throw std::invalid_argument("bmo_q_norm: q must lie in (2, 256]");
    return lp_norm(sharp_maximal(f, cubes), q);
}

SampledField carleson_maximal(const SampledField& f, const RadialSymbol& phi_hat,
                              const CubeFamily& cubes, const LogTimeGrid& grid) {
    const Domain& d = f.domain;
    if (!(d == cubes.domain)) throw std::invalid_argument("carleson_maximal: domain mismatch");
    if (grid.t_min >= cubes.side(cubes.level_max))
        throw std::invalid_argument(
            "carleson_maximal: grid t_min must lie below the smallest cube side " +
            std::to_string(cubes.side(cubes.level_max)));

    auto s = transform(f);
    std::vector<double> xi_norm(s.size());
    for (std::size_t flat = 0; flat < s.size(); ++flat) xi_norm[flat] = s.frequency_norm(flat);

    const int levels = cubes.level_max - cubes.level_min + 1;
    std::vector<std::vector<double>> box(static_cast<std::size_t>(levels));
    for (int l = 0; l < levels; ++l)
        box[static_cast<std::size_t>(l)].assign(cubes.cube_count(cubes.level_min + l), 0.0);

    FourierSpectrum scratch(d);
    std::vector<int> idx(d.dim);
    for (int j = 0; j < grid.count(); ++j) {
        const double t = grid.nodes[j];
        if (t > cubes.side(cubes.level_min)) continue;  // above every box height
        for (std::size_t flat = 0; flat < s.size(); ++flat)
            scratch.coeffs[flat] = s.coeffs[flat] * phi_hat(t * xi_norm[flat]);
        auto u = inverse_transform(scratch);

        // aggregate |u|^2 per cube at the finest level, then scan all levels
        for (int level = cubes.level_min; level <= cubes.level_max; ++level) {
            if (t > cubes.side(level)) continue;
            auto& acc = box[static_cast<std::size_t>(level - cubes.level_min)];
            for (std::size_t flat = 0; flat < u.size(); ++flat) {
                d.decode(flat, idx);
                acc[cubes.cube_of(level, idx)] += grid.weights[j] * std::norm(u.values[flat]);
            }
        }
    }

    // |Q|^{-1} integral over y: the sample average within the cube
    SampledField out(d);
    for (int level = cubes.level_min; level <= cubes.level_max; ++level) {
        auto& acc = box[static_cast<std::size_t>(level - cubes.level_min)];
        double per_cube = static_cast<double>(f.size()) / static_cast<double>(acc.size());
        for (std::size_t flat = 0; flat < f.size(); ++flat) {
            d.decode(flat, idx);
            double v = std::sqrt(acc[cubes.cube_of(level, idx)] / per_cube);
            if (v > out.values[flat].real()) out.values[flat] = v;
        }
    }
    return out;
}

}  // namespace lplab
