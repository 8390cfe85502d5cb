#include "lplab/sqfun.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <stdexcept>
#include <string>

namespace lplab {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double two_pi = 2.0 * pi;

// decay rate of the semigroup symbol at frequency xi: |xi| for poisson-type
// homogeneity, |xi|^2 for heat
double decay_rate(SemigroupKind kind, double xi_norm) {
    return kind == SemigroupKind::heat ? xi_norm * xi_norm : xi_norm;
}

struct ActiveBand {
    bool any = false;
    double min_rate = 0;
    double max_rate = 0;
};

ActiveBand active_band(const FourierSpectrum& s, SemigroupKind kind) {
    double cmax = 0;
    for (const auto& c : s.coeffs) cmax = std::max(cmax, std::abs(c));
    ActiveBand band;
    if (cmax == 0) return band;
    for (std::size_t flat = 0; flat < s.size(); ++flat) {
        if (std::abs(s.coeffs[flat]) <= 1e-13 * cmax) continue;
        double xi = s.frequency_norm(flat);
        if (xi == 0) continue;
        double rate = decay_rate(kind, xi);
        if (!band.any) {
            band.any = true;
            band.min_rate = band.max_rate = rate;
        } else {
            band.min_rate = std::min(band.min_rate, rate);
            band.max_rate = std::max(band.max_rate, rate);
        }
    }
    return band;
}

void check_resolution(const ActiveBand& band, double t_small, double t_large,
                      const char* what) {
    if (!band.any) return;
    if (t_small * band.max_rate >= 0.1)
        throw std::invalid_argument(std::string(what) +
                                    ": grid start does not resolve the largest active "
                                    "frequency (t_min * rate = " +
                                    std::to_string(t_small * band.max_rate) + " >= 0.1)");
    if (t_large * band.min_rate <= 10.0)
        throw std::invalid_argument(std::string(what) +
                                    ": grid end does not resolve the smallest active "
                                    "frequency (t_max * rate = " +
                                    std::to_string(t_large * band.min_rate) + " <= 10)");
}

// accumulate w * |inverse_transform(sym .* f_hat)|^2 into acc
template <class SymbolAt>
void accumulate_component(const FourierSpectrum& s, SymbolAt&& sym, double w,
                          FourierSpectrum& scratch, std::vector<double>& acc) {
    for (std::size_t flat = 0; flat < s.size(); ++flat) {
        scratch.coeffs[flat] = s.coeffs[flat] * sym(flat);
    }
    auto u = inverse_transform(scratch);
    for (std::size_t i = 0; i < u.size(); ++i) acc[i] += w * std::norm(u.values[i]);
}

SampledField sqrt_field(const Domain& d, const std::vector<double>& acc) {
    SampledField out(d);
    for (std::size_t i = 0; i < acc.size(); ++i) out.values[i] = std::sqrt(acc[i]);
    return out;
}

// sliding circular maximum with radius w along one axis (van Herk on a
// tripled buffer)
void sliding_max_axis(std::vector<double>& data, const Domain& d, int axis, int w) {
    const int N = d.samples;
    if (w <= 0) return;
    if (2 * w + 1 >= N) {
        // window wraps the whole axis: global max along each line
        w = N / 2;
    }
    const int window = 2 * w + 1;
    std::size_t stride = 1;
    for (int a = d.dim - 1; a > axis; --a) stride *= static_cast<std::size_t>(N);
    std::size_t lines = d.size() / static_cast<std::size_t>(N);
    std::vector<double> buf(3 * static_cast<std::size_t>(N));
    std::vector<double> pre(buf.size()), suf(buf.size());
    for (std::size_t line = 0; line < lines; ++line) {
        // base index of this line
        std::size_t block = line / stride, offset = line % stride;
        std::size_t base = block * stride * static_cast<std::size_t>(N) + offset;
        for (int i = 0; i < N; ++i) {
            double v = data[base + static_cast<std::size_t>(i) * stride];
            buf[i] = buf[i + N] = buf[i + 2 * N] = v;
        }
        int total = 3 * N;
        for (int i = 0; i < total; ++i) {
            pre[i] = (i % window == 0) ? buf[i] : std::max(pre[i - 1], buf[i]);
        }
        for (int i = total - 1; i >= 0; --i) {
            suf[i] = (i % window == window - 1 || i == total - 1)
                         ? buf[i]
                         : std::max(suf[i + 1], buf[i]);
        }
        for (int i = 0; i < N; ++i) {
            int lo = i + N - w, hi = i + N + w;
            data[base + static_cast<std::size_t>(i) * stride] = std::max(suf[lo], pre[hi]);
        }
    }
}

}  // namespace

SampledField g_semigroup(const SampledField& f, SemigroupKind kind, DerivativeMode mode,
                         const LogTimeGrid& grid) {
    auto s = transform(f);
    auto band = active_band(s, kind);
    check_resolution(band, grid.t_min, grid.t_max, "g_semigroup");
    if (kind == SemigroupKind::heat && mode == DerivativeMode::full_gradient && band.any) {
        // the spatial component integrates e^{-8 pi^2 t |xi|^2} in plain dt,
        // so its truncation below t_min is of relative size t_min * 8 pi^2 |xi|^2
        double rate = 8.0 * pi * pi * band.max_rate;
        if (grid.t_min * rate >= 0.1)
            throw std::invalid_argument(
                "g_semigroup: grid start does not resolve the gradient component "
                "(t_min * 8 pi^2 |xi|^2 = " +
                std::to_string(grid.t_min * rate) + " >= 0.1)");
    }

    const Domain& d = f.domain;
    std::vector<double> xi_norm(s.size());
    std::vector<std::vector<double>> xi_axis;
    for (std::size_t flat = 0; flat < s.size(); ++flat) xi_norm[flat] = s.frequency_norm(flat);
    if (mode == DerivativeMode::full_gradient) {
        xi_axis.assign(d.dim, std::vector<double>(s.size()));
        std::vector<double> xi(d.dim);
        for (std::size_t flat = 0; flat < s.size(); ++flat) {
            s.frequency(flat, xi);
            for (int a = 0; a < d.dim; ++a) xi_axis[a][flat] = xi[a];
        }
    }

    std::vector<double> acc(d.size(), 0.0);
    FourierSpectrum scratch(d);
    for (int j = 0; j < grid.count(); ++j) {
        const double t = grid.nodes[j], w = grid.weights[j];
        if (kind == SemigroupKind::poisson) {
            accumulate_component(
                s,
                [&](std::size_t flat) {
                    double a = two_pi * xi_norm[flat];
                    return cdouble(-t * a * std::exp(-t * a));
                },
                w, scratch, acc);
            if (mode == DerivativeMode::full_gradient) {
                for (int ax = 0; ax < d.dim; ++ax) {
                    accumulate_component(
                        s,
                        [&](std::size_t flat) {
                            double a = two_pi * xi_norm[flat];
                            return cdouble(0.0, t * two_pi * xi_axis[ax][flat]) *
                                   std::exp(-t * a);
                        },
                        w, scratch, acc);
                }
            }
        } else {
            accumulate_component(
                s,
                [&](std::size_t flat) {
                    double b = 4.0 * pi * pi * xi_norm[flat] * xi_norm[flat];
                    return cdouble(-t * b * std::exp(-t * b));
                },
                w, scratch, acc);
            if (mode == DerivativeMode::full_gradient) {
                double rt = std::sqrt(t);
                for (int ax = 0; ax < d.dim; ++ax) {
                    accumulate_component(
                        s,
                        [&](std::size_t flat) {
                            double b = 4.0 * pi * pi * xi_norm[flat] * xi_norm[flat];
                            return cdouble(0.0, rt * two_pi * xi_axis[ax][flat]) *
                                   std::exp(-t * b);
                        },
                        w, scratch, acc);
                }
            }
        }
    }
    return sqrt_field(d, acc);
}

SampledField g_generic(const SampledField& f, const RadialSymbol& phi_hat,
                       const LogTimeGrid& grid) {
    auto s = transform(f);
    check_resolution(active_band(s, SemigroupKind::poisson), grid.t_min, grid.t_max,
                     "g_generic");
    std::vector<double> xi_norm(s.size());
    for (std::size_t flat = 0; flat < s.size(); ++flat) xi_norm[flat] = s.frequency_norm(flat);

    std::vector<double> acc(f.domain.size(), 0.0);
    FourierSpectrum scratch(f.domain);
    for (int j = 0; j < grid.count(); ++j) {
        const double t = grid.nodes[j];
        accumulate_component(
            s, [&](std::size_t flat) { return cdouble(phi_hat(t * xi_norm[flat])); },
            grid.weights[j], scratch, acc);
    }
    return sqrt_field(f.domain, acc);
}

SampledField g_generic(const SampledField& f, const SampledField& phi, const LogTimeGrid& grid,
                       bool holder_waiver, const HolderParams& params) {
    if (!holder_waiver) {
        auto rep = check_holder_class(phi, params);
        if (!rep.pass)
            throw std::invalid_argument(
                "g_generic: kernel fails the Holder-class validator (decay " +
                std::to_string(rep.decay_margin) + ", smoothness " +
                std::to_string(rep.holder_margin) + ", mean " + std::to_string(rep.mean) +
                "); pass holder_waiver to override");
    }
    auto prof = radial_fourier_profile(phi);
    return g_generic(f, [prof = std::move(prof)](double u) { return prof(u); }, grid);
}

SampledField g_torus_radial(const SampledField& f, SemigroupKind kind, const RadialGrid& rgrid) {
    if (f.domain.kind != DomainKind::torus)
        throw std::invalid_argument("g_torus_radial: needs a torus field");
    auto s = transform(f);
    auto band = active_band(s, kind);
    if (band.any) {
        double one_minus_r = 1.0 - rgrid.r.front();
        if (one_minus_r * band.max_rate >= 0.1)
            throw std::invalid_argument(
                "g_torus_radial: largest active frequency unresolved; needs r-nodes with "
                "(1-r) * rate < 0.1, got " +
                std::to_string(one_minus_r * band.max_rate));
        if (-std::log(rgrid.r.back()) * band.min_rate <= 10.0)
            throw std::invalid_argument(
                "g_torus_radial: r-grid does not reach small enough r for the smallest "
                "active frequency");
    }

    std::vector<double> lam(s.size());
    for (std::size_t flat = 0; flat < s.size(); ++flat) {
        lam[flat] = decay_rate(kind, s.frequency_norm(flat));
    }
    std::vector<double> acc(f.domain.size(), 0.0);
    FourierSpectrum scratch(f.domain);
    for (int j = 0; j < rgrid.count(); ++j) {
        const double r = rgrid.r[j];
        accumulate_component(
            s,
            [&](std::size_t flat) {
                double n = lam[flat];
                return cdouble(n == 0 ? 0.0 : n * std::pow(r, n - 1.0));
            },
            rgrid.weight[j], scratch, acc);
    }
    return sqrt_field(f.domain, acc);
}

namespace {

double ball_fourier(int dim, double radius, double xi_norm) {
    double z = two_pi * radius * xi_norm;
    switch (dim) {
        case 1:
            return z == 0 ? 2.0 * radius : std::sin(z) / (pi * xi_norm);
        case 2: {
            double area = pi * radius * radius;
            return z == 0 ? area : 2.0 * area * (std::cyl_bessel_j(1, z) / z);
        }
        default: {
            double vol = 4.0 * pi * radius * radius * radius / 3.0;
            return z == 0 ? vol : vol * 3.0 * (std::sin(z) - z * std::cos(z)) / (z * z * z);
        }
    }
}

}  // namespace

SampledField area_integral(const SampledField& f, const RadialSymbol& psi_hat, double aperture,
                           const LogTimeGrid& grid, bool literal_x_form) {
    if (!(aperture > 0) || aperture > 16.0)
        throw std::invalid_argument("area_integral: aperture must lie in (0, 16]");
    const Domain& d = f.domain;
    auto s = transform(f);
    check_resolution(active_band(s, SemigroupKind::poisson), grid.t_min, grid.t_max,
                     "area_integral");
    std::vector<double> xi_norm(s.size());
    for (std::size_t flat = 0; flat < s.size(); ++flat) xi_norm[flat] = s.frequency_norm(flat);

    std::vector<double> acc(d.size(), 0.0);

    if (literal_x_form) {
        // integrand evaluated at x: the y-integral degenerates to the cone
        // cross-section volume |B(0, alpha t)|
        FourierSpectrum scratch(d);
        for (int j = 0; j < grid.count(); ++j) {
            const double t = grid.nodes[j];
            double vol = ball_fourier(d.dim, aperture * t, 0.0);
            double w = grid.weights[j] * vol / std::pow(t, d.dim);
            accumulate_component(
                s, [&](std::size_t flat) { return cdouble(psi_hat(t * xi_norm[flat])); }, w,
                scratch, acc);
        }
        return sqrt_field(d, acc);
    }

    // double the grid so |psi_t * f|^2 is alias-free, window it spectrally
    Domain big(d.kind, d.dim, d.period, 2 * d.samples);
    FourierSpectrum spec_big(big);
    std::vector<int> m(d.dim);
    std::vector<double> xi_big(big.size());
    for (std::size_t flat = 0; flat < spec_big.size(); ++flat) {
        xi_big[flat] = spec_big.frequency_norm(flat);
    }

    for (int j = 0; j < grid.count(); ++j) {
        const double t = grid.nodes[j];
        std::fill(spec_big.coeffs.begin(), spec_big.coeffs.end(), cdouble(0));
        for (std::size_t flat = 0; flat < s.size(); ++flat) {
            if (s.coeffs[flat] == cdouble(0)) continue;
            std::size_t bflat = 0;
            std::size_t rest = flat;
            for (int a = d.dim - 1; a >= 0; --a) {
                m[a] = d.freq_of_index(static_cast<int>(rest % d.samples));
                rest /= d.samples;
            }
            for (int a = 0; a < d.dim; ++a)
                bflat = bflat * big.samples + static_cast<std::size_t>(big.index_of_freq(m[a]));
            spec_big.coeffs[bflat] = s.coeffs[flat] * psi_hat(t * xi_norm[flat]);
        }
        auto u = inverse_transform(spec_big);
        SampledField usq(big);
        for (std::size_t i = 0; i < u.size(); ++i) usq.values[i] = std::norm(u.values[i]);
        auto w2 = transform(usq);
        const double radius = aperture * t;
        for (std::size_t flat = 0; flat < w2.size(); ++flat) {
            w2.coeffs[flat] *= ball_fourier(d.dim, radius, xi_big[flat]);
        }
        auto conv = inverse_transform(w2);
        const double w = grid.weights[j] / std::pow(t, d.dim);
        // even-indexed samples of the doubled grid are the original grid
        std::vector<int> idx(d.dim);
        for (std::size_t flat = 0; flat < acc.size(); ++flat) {
            d.decode(flat, idx);
            std::size_t bflat = 0;
            for (int a = 0; a < d.dim; ++a)
                bflat = bflat * big.samples + static_cast<std::size_t>(2 * idx[a]);
            acc[flat] += w * std::max(0.0, conv.values[bflat].real());
        }
    }
    return sqrt_field(d, acc);
}

SampledField g_discrete(const SampledField& f, const BumpFamily& bumps) {
    const Domain& d = f.domain;
    if (d.dim != 1) throw std::invalid_argument("g_discrete: d must be 1");
    auto s = transform(f);
    double cmax = 0;
    for (const auto& c : s.coeffs) cmax = std::max(cmax, std::abs(c));
    for (std::size_t flat = 0; flat < s.size(); ++flat) {
        double xi = s.frequency_norm(flat);
        if (xi == 0 || std::abs(s.coeffs[flat]) <= 1e-13 * cmax) continue;
        if (!bumps.fully_covered(xi))
            throw std::invalid_argument("g_discrete: frequency " + std::to_string(xi) +
                                        " outside the covered bands");
    }
    std::vector<double> acc(d.size(), 0.0);
    FourierSpectrum scratch(d);
    for (int k = bumps.k_min; k <= bumps.k_max; ++k) {
        accumulate_component(
            s,
            [&](std::size_t flat) { return cdouble(bumps.bump_hat(k, s.frequency_norm(flat))); },
            1.0, scratch, acc);
    }
    return sqrt_field(d, acc);
}

SampledField nontangential_maximal(const SampledField& f, const SqfunConfig& config) {
    const Domain& d = f.domain;
    auto s = transform(f);
    check_resolution(active_band(s, SemigroupKind::poisson), config.grid.t_min,
                     config.grid.t_max, "nontangential_maximal");
    std::vector<double> xi_norm(s.size());
    for (std::size_t flat = 0; flat < s.size(); ++flat) xi_norm[flat] = s.frequency_norm(flat);

    std::vector<double> maximal(d.size(), 0.0);
    FourierSpectrum scratch(d);
    std::vector<double> slice(d.size());
    for (int j = 0; j < config.grid.count(); ++j) {
        const double t = config.grid.nodes[j];
        for (std::size_t flat = 0; flat < s.size(); ++flat) {
            scratch.coeffs[flat] = s.coeffs[flat] * std::exp(-two_pi * t * xi_norm[flat]);
        }
        auto u = inverse_transform(scratch);
        for (std::size_t i = 0; i < u.size(); ++i) slice[i] = std::abs(u.values[i]);
        int w = static_cast<int>(config.aperture * t / d.spacing());
        for (int ax = 0; ax < d.dim; ++ax) sliding_max_axis(slice, d, ax, w);
        for (std::size_t i = 0; i < maximal.size(); ++i)
            maximal[i] = std::max(maximal[i], slice[i]);
    }
    SampledField out(d);
    for (std::size_t i = 0; i < out.size(); ++i) out.values[i] = maximal[i];
    return out;
}

double hp_norm(const SampledField& f, double p, const SqfunConfig& config) {
    if (!(p >= 1.0 && p <= 2.0)) throw std::invalid_argument("hp_norm: p must lie in [1, 2]");
    return lp_norm(nontangential_maximal(f, config), p);
}

SymbolTable g_semigroup_symbol_table(SemigroupKind kind, DerivativeMode mode,
                                     const LogTimeGrid& grid, std::span<const double> xi_norms,
                                     int dim) {
    (void)dim;
    SymbolTable tab;
    tab.t = grid.nodes;
    tab.weight = grid.weights;
    tab.values.resize(xi_norms.size());
    for (std::size_t i = 0; i < xi_norms.size(); ++i) {
        tab.values[i].resize(grid.nodes.size());
        double xi = std::abs(xi_norms[i]);
        for (int j = 0; j < grid.count(); ++j) {
            double t = grid.nodes[j];
            double time_part, space_part = 0;
            if (kind == SemigroupKind::poisson) {
                double a = two_pi * xi;
                time_part = t * a * std::exp(-t * a);
                if (mode == DerivativeMode::full_gradient)
                    space_part = t * two_pi * xi * std::exp(-t * a);
            } else {
                double b = 4.0 * pi * pi * xi * xi;
                time_part = t * b * std::exp(-t * b);
                if (mode == DerivativeMode::full_gradient)
                    space_part = std::sqrt(t) * two_pi * xi * std::exp(-t * b);
            }
            tab.values[i][j] = std::hypot(time_part, space_part);
        }
    }
    return tab;
}

SymbolTable g_torus_radial_symbol_table(SemigroupKind kind, const RadialGrid& rgrid,
                                        std::span<const double> freq_norms) {
    SymbolTable tab;
    tab.t = rgrid.r;
    tab.weight = rgrid.weight;
    tab.values.resize(freq_norms.size());
    for (std::size_t i = 0; i < freq_norms.size(); ++i) {
        double lam = decay_rate(kind, std::abs(freq_norms[i]));
        tab.values[i].resize(rgrid.r.size());
        for (int j = 0; j < rgrid.count(); ++j) {
            tab.values[i][j] =
                lam == 0 ? 0.0 : lam * std::pow(rgrid.r[static_cast<std::size_t>(j)], lam - 1.0);
        }
    }
    return tab;
}

}  // namespace lplab
