#include "lplab/kernels.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace lplab {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double two_pi = 2.0 * pi;

double unit_sphere_area(int d) {
    // |S^{d-1}| = 2 pi^{d/2} / Gamma(d/2)
    return 2.0 * std::pow(pi, 0.5 * d) / std::tgamma(0.5 * d);
}

}  // namespace

SemigroupKernel::SemigroupKernel(SemigroupKind kind_, double t_, int dim_)
    : kind(kind_), t(t_), dim(dim_) {
    if (!(t > 0)) throw std::invalid_argument("SemigroupKernel: t must be positive");
    if (dim < 1 || dim > 3) throw std::invalid_argument("SemigroupKernel: dim must be in [1,3]");
}

double SemigroupKernel::symbol(double xi_norm) const {
    double a = std::abs(xi_norm);
    return kind == SemigroupKind::poisson ? std::exp(-two_pi * t * a)
                                          : std::exp(-4.0 * pi * pi * t * a * a);
}

double SemigroupKernel::value(std::span<const double> x) const {
    double r2 = 0;
    for (double c : x) r2 += c * c;
    if (kind == SemigroupKind::heat) {
        return std::pow(4.0 * pi * t, -0.5 * dim) * std::exp(-r2 / (4.0 * t));
    }
    // c_d = Gamma((d+1)/2) / pi^{(d+1)/2}, fixed by unit mass
    double cd = std::tgamma(0.5 * (dim + 1)) / std::pow(pi, 0.5 * (dim + 1));
    return cd * t / std::pow(r2 + t * t, 0.5 * (dim + 1));
}

double SemigroupKernel::tail_mass(double half_width) const {
    if (kind == SemigroupKind::heat) {
        double inside_axis = std::erf(half_width / (2.0 * std::sqrt(t)));
        return 1.0 - std::pow(inside_axis, dim);
    }
    if (dim == 1) return 1.0 - (2.0 / pi) * std::atan(half_width / t);
    // |P_t(x)| <= c_d t / |x|^{d+1} gives the radial tail bound below
    double cd = std::tgamma(0.5 * (dim + 1)) / std::pow(pi, 0.5 * (dim + 1));
    return cd * t * unit_sphere_area(dim) / half_width;
}

SampledField kernel_field(const SemigroupKernel& k, const Domain& domain) {
    if (domain.kind != DomainKind::truncated_line)
        throw std::invalid_argument("kernel_field: needs a truncated-line domain");
    if (domain.dim != k.dim) throw std::invalid_argument("kernel_field: dimension mismatch");
    double tail = k.tail_mass(0.5 * domain.period);
    if (tail >= 1e-6)
        throw std::runtime_error("kernel_field: tail mass outside domain is " +
                                 std::to_string(tail) + " (budget 1e-6)");
    SampledField f(domain);
    std::vector<int> idx(domain.dim);
    std::vector<double> x(domain.dim);
    for (std::size_t flat = 0; flat < f.size(); ++flat) {
        domain.decode(flat, idx);
        for (int a = 0; a < domain.dim; ++a) x[a] = domain.coordinate(idx[a]);
        f.values[flat] = k.value(x);
    }
    return f;
}

std::vector<double> kernel_symbol(const SemigroupKernel& k, std::span<const double> xi_norms) {
    std::vector<double> out(xi_norms.size());
    for (std::size_t i = 0; i < xi_norms.size(); ++i) out[i] = k.symbol(xi_norms[i]);
    return out;
}

double subordination_check(double t, const LogTimeGrid& s_grid,
                           std::span<const double> xi_norms) {
    // The measure e^{-s} s^{-1/2} ds has a square-root singularity the log
    // grid cannot reach; the piece over [0, s_min] is added analytically
    // (integral = 2 sqrt(eps) - (2/3) eps^{3/2} + O(eps^{5/2}), damped by the
    // integrand's e^{-b/s} factor).  The quadrature is normalized to unit
    // total mass, so the identity at xi = 0 is exact.
    const double eps = s_grid.t_min;
    auto end_correction = [eps](double b) {
        return (2.0 * std::sqrt(eps) - (2.0 / 3.0) * std::pow(eps, 1.5)) * std::exp(-b / eps);
    };
    auto quad = [&](double b) {
        double acc = 0;
        for (int j = 0; j < s_grid.count(); ++j) {
            double s = s_grid.nodes[j];
            // plain ds integral: fold one factor of s into the dt/t weight
            acc += s_grid.weights[j] * std::sqrt(s) * std::exp(-s) * std::exp(-b / s);
        }
        return acc + end_correction(b);
    };
    const double mass = quad(0.0);
    double worst = 0;
    for (double xi : xi_norms) {
        double target = std::exp(-two_pi * t * std::abs(xi));
        double b = pi * pi * t * t * xi * xi;
        worst = std::max(worst, std::abs(quad(b) / mass - target));
    }
    return worst;
}

HolderReport check_holder_class(const SampledField& phi, const HolderParams& params,
                                int pair_samples, unsigned seed) {
    const Domain& d = phi.domain;
    if (d.kind != DomainKind::truncated_line)
        throw std::invalid_argument("check_holder_class: needs a truncated-line field");
    if (!(params.epsilon > 0) || !(params.delta > 0) || params.delta > 1)
        throw std::invalid_argument("check_holder_class: need eps > 0 and delta in (0,1]");

    HolderReport rep;
    std::vector<int> idx(d.dim);
    std::vector<double> x(d.dim);

    cdouble mean = 0;
    for (std::size_t flat = 0; flat < phi.size(); ++flat) {
        d.decode(flat, idx);
        double r2 = 0;
        for (int a = 0; a < d.dim; ++a) {
            x[a] = d.coordinate(idx[a]);
            r2 += x[a] * x[a];
        }
        double bound = std::pow(1.0 + std::sqrt(r2), d.dim + params.epsilon);
        rep.decay_margin = std::max(rep.decay_margin, std::abs(phi.values[flat]) * bound);
        mean += phi.values[flat];
    }
    rep.mean = std::abs(mean) * d.cell_volume();

    // smoothness condition on a seeded subsample of pairs; half of the pairs
    // are drawn nearby to probe the |x - y| -> 0 regime
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, phi.size() - 1);
    std::uniform_int_distribution<int> step(-64, 64);
    const double exp2 = d.dim + params.epsilon + params.delta;
    std::vector<int> jdx(d.dim);
    std::vector<double> y(d.dim);
    for (int n = 0; n < pair_samples; ++n) {
        std::size_t i = pick(rng);
        std::size_t j;
        if (n % 2 == 0) {
            j = pick(rng);
        } else {
            d.decode(i, jdx);
            for (int a = 0; a < d.dim; ++a)
                jdx[a] = std::clamp(jdx[a] + step(rng), 0, d.samples - 1);
            j = d.encode(jdx);
        }
        if (i == j) continue;
        d.decode(i, idx);
        d.decode(j, jdx);
        double dist2 = 0, rx = 0, ry = 0;
        for (int a = 0; a < d.dim; ++a) {
            x[a] = d.coordinate(idx[a]);
            y[a] = d.coordinate(jdx[a]);
            dist2 += (x[a] - y[a]) * (x[a] - y[a]);
            rx += x[a] * x[a];
            ry += y[a] * y[a];
        }
        double lhs = std::abs(phi.values[i] - phi.values[j]);
        double rhs = std::pow(std::sqrt(dist2), params.delta) *
                     (std::pow(1.0 + std::sqrt(rx), -exp2) + std::pow(1.0 + std::sqrt(ry), -exp2));
        if (rhs > 0) rep.holder_margin = std::max(rep.holder_margin, lhs / rhs);
    }

    rep.pass = rep.decay_margin <= 1.0 + 1e-3 && rep.holder_margin <= 1.0 + 1e-3 &&
               rep.mean <= 1e-6;
    return rep;
}

namespace {

double catmull_rom(const std::vector<double>& tab, double s) {
    auto n = static_cast<std::ptrdiff_t>(tab.size());
    auto i = static_cast<std::ptrdiff_t>(s);
    if (i >= n - 1) return 0;
    double f = s - static_cast<double>(i);
    double p0 = tab[static_cast<std::size_t>(std::max<std::ptrdiff_t>(i - 1, 0))];
    double p1 = tab[static_cast<std::size_t>(i)];
    double p2 = tab[static_cast<std::size_t>(i + 1)];
    double p3 = tab[static_cast<std::size_t>(std::min(i + 2, n - 1))];
    return p1 + 0.5 * f * (p2 - p0 + f * (2 * p0 - 5 * p1 + 4 * p2 - p3 +
                                          f * (3 * (p1 - p2) + p3 - p0)));
}

}  // namespace

double FourierProfile::operator()(double u) const {
    u = std::abs(u);
    if (table.size() < 8 || du <= 0) return 0;
    double s = u / du;
    if (s >= static_cast<double>(table.size() - 1)) return 0;
    if (s < 4.0 && head.size() >= 7) {
        // sigma(u)/u is smooth at the origin even when sigma itself has a
        // |u| corner (slowly decaying kernels); interpolate it instead
        return u * catmull_rom(head, s);
    }
    return catmull_rom(table, s);
}

FourierProfile radial_fourier_profile(const SampledField& phi, int oversample) {
    const Domain& d = phi.domain;
    if (d.dim != 1 || d.kind != DomainKind::truncated_line)
        throw std::invalid_argument("radial_fourier_profile: needs a d=1 truncated-line field");

    double vmax = 0, edge = std::max(std::abs(phi.values.front()), std::abs(phi.values.back()));
    for (const auto& v : phi.values) vmax = std::max(vmax, std::abs(v));
    const bool compact = vmax == 0 || edge <= 1e-9 * vmax;
    if (oversample == 0) oversample = compact ? 8 : 1;
    if (oversample > 1 && !compact)
        throw std::invalid_argument(
            "radial_fourier_profile: oversampling requires a kernel supported inside the "
            "cell (boundary value is " +
            std::to_string(edge / vmax) + " of the peak)");

    SampledField padded = phi;
    if (oversample > 1) {
        Domain dq = Domain::line(1, oversample * d.period, oversample * d.samples);
        padded = SampledField(dq);
        std::size_t offset = static_cast<std::size_t>(d.samples) * (oversample - 1) / 2;
        for (int j = 0; j < d.samples; ++j)
            padded.values[offset + static_cast<std::size_t>(j)] = phi.values[j];
    }
    auto s = transform(padded);
    FourierProfile p;
    p.du = 1.0 / padded.domain.period;
    int points = padded.domain.samples / 2;
    p.table.resize(static_cast<std::size_t>(points));
    for (int k = 0; k < points; ++k) {
        std::vector<int> m{k};
        p.table[static_cast<std::size_t>(k)] = (s.at(m) * padded.domain.period).real();
    }
    p.tail_bound = std::abs(p.table.back());
    if (points >= 8) {
        p.head.resize(7);
        for (int k = 1; k <= 6; ++k)
            p.head[static_cast<std::size_t>(k)] = p.table[static_cast<std::size_t>(k)] / (k * p.du);
        p.head[0] = 3 * p.head[1] - 3 * p.head[2] + p.head[3];
    }
    return p;
}

double poisson_g_profile_hat(double xi_norm) {
    double a = two_pi * std::abs(xi_norm);
    return a * std::exp(-a);
}

SampledField poisson_g_profile(const Domain& domain) {
    if (domain.kind != DomainKind::truncated_line)
        throw std::invalid_argument("poisson_g_profile: needs a truncated-line domain");
    // phi = -(d/dt) P_t |_{t=1}, realized as its periodization over the cell:
    // the synthesis from phi_hat(m/L)/L^d keeps the mean exactly zero, which a
    // plain truncation of the 1/|x|^{d+1} tail cannot do.
    FourierSpectrum s(domain);
    double cellcoef = 1.0;
    for (int a = 0; a < domain.dim; ++a) cellcoef /= domain.period;
    for (std::size_t flat = 0; flat < s.size(); ++flat) {
        s.coeffs[flat] = poisson_g_profile_hat(s.frequency_norm(flat)) * cellcoef;
    }
    return inverse_transform(s);
}

CalderonPair calderon_product(const RadialSymbol& phi_hat, const RadialSymbol& psi_hat,
                              std::span<const double> xi_norms, const LogTimeGrid& grid) {
    CalderonPair out;
    double peak = 0, edge = 0;
    for (double xi : xi_norms) {
        if (xi == 0) throw std::invalid_argument("calderon_product: xi must be nonzero");
        double acc = 0;
        for (int j = 0; j < grid.count(); ++j) {
            double u = grid.nodes[j] * std::abs(xi);
            double term = phi_hat(u) * psi_hat(u);
            acc += grid.weights[j] * term;
            peak = std::max(peak, std::abs(term));
            if (j == 0 || j == grid.count() - 1) edge = std::max(edge, std::abs(term));
        }
        out.xi.push_back(xi);
        out.product.push_back(acc);
        out.max_deviation = std::max(out.max_deviation, std::abs(acc - 1.0));
    }
    if (peak > 0 && edge / peak >= 1e-8)
        throw std::runtime_error("calderon_product: integrand tail " +
                                 std::to_string(edge / peak) +
                                 " of peak at the grid ends (budget 1e-8)");
    return out;
}

double calderon_normalization(const RadialSymbol& phi_hat, const LogTimeGrid& grid) {
    double c = 0;
    for (int j = 0; j < grid.count(); ++j) {
        double v = phi_hat(grid.nodes[j]);
        c += grid.weights[j] * v * v;
    }
    if (!(c >= 1e-6 && c <= 1e6))
        throw std::runtime_error("calderon_normalization: degenerate kernel, c = " +
                                 std::to_string(c));
    return c;
}

SampledField make_calderon_partner(const SampledField& phi, const LogTimeGrid& grid,
                                   const RadialSymbol* analytic_hat) {
    double c;
    if (analytic_hat) {
        c = calderon_normalization(*analytic_hat, grid);
    } else {
        auto prof = radial_fourier_profile(phi);
        c = calderon_normalization([&prof](double u) { return prof(u); }, grid);
    }
    SampledField psi = phi;
    for (auto& v : psi.values) v /= c;
    return psi;
}

double BumpFamily::eta(double s) const {
    if (!(s > 0.5) || !(s < 4.0)) return 0;
    auto q = [](double v) { return v > 0 ? std::exp(-1.0 / v) : 0.0; };
    auto smooth_step = [&](double v) {
        double a = q(v), b = q(1.0 - v);
        return a / (a + b);
    };
    double u = std::log2(s);
    return smooth_step(u + 1.0) * smooth_step(2.0 - u);
}

double BumpFamily::denominator(double xi) const {
    xi = std::abs(xi);
    if (xi == 0) return 0;
    // eta(2^{-j} xi) != 0 only for j in (log2 xi - 2, log2 xi + 1)
    double u = std::log2(xi);
    double acc = 0;
    for (int j = static_cast<int>(std::floor(u)) - 2; j <= static_cast<int>(std::ceil(u)) + 1;
         ++j) {
        acc += eta(std::ldexp(xi, -j));
    }
    return acc;
}

double BumpFamily::bump_hat(int k, double xi_norm) const {
    double xi = std::abs(xi_norm);
    if (xi == 0) return 0;
    double num = eta(std::ldexp(xi, -k));
    if (num == 0) return 0;
    return num / denominator(xi);
}

double BumpFamily::sum(double xi_norm) const {
    double acc = 0;
    for (int k = k_min; k <= k_max; ++k) acc += bump_hat(k, xi_norm);
    return acc;
}

bool BumpFamily::fully_covered(double xi_norm) const {
    double xi = std::abs(xi_norm);
    if (xi == 0) return false;
    double u = std::log2(xi);
    for (int j = static_cast<int>(std::floor(u)) - 2; j <= static_cast<int>(std::ceil(u)) + 1;
         ++j) {
        if (eta(std::ldexp(xi, -j)) != 0 && (j < k_min || j > k_max)) return false;
    }
    return true;
}

BumpFamily dyadic_bump_partition(const Domain& domain, int k_min, int k_max) {
    if (domain.dim != 1) throw std::invalid_argument("dyadic_bump_partition: d must be 1");
    if (k_min > k_max) throw std::invalid_argument("dyadic_bump_partition: empty k range");
    if (std::ldexp(1.0, k_max + 2) > domain.nyquist())
        throw std::invalid_argument("dyadic_bump_partition: Nyquist overflow for k_max = " +
                                    std::to_string(k_max));
    BumpFamily fam;
    fam.k_min = k_min;
    fam.k_max = k_max;
    return fam;
}

std::string to_json_string(const BumpFamily& fam) {
    nlohmann::json j;
    j["k_min"] = fam.k_min;
    j["k_max"] = fam.k_max;
    auto bumps = nlohmann::json::array();
    for (int k = fam.k_min; k <= fam.k_max; ++k) {
        bumps.push_back({{"k", k},
                         {"support", {std::ldexp(1.0, k - 1), std::ldexp(1.0, k + 2)}}});
    }
    j["bumps"] = bumps;
    return j.dump(2);
}

std::string to_json_string(const CalderonPair& pair) {
    nlohmann::json j;
    j["max_deviation"] = pair.max_deviation;
    auto rows = nlohmann::json::array();
    for (std::size_t i = 0; i < pair.xi.size(); ++i) {
        rows.push_back({{"xi", pair.xi[i]}, {"product", pair.product[i]}});
    }
    j["products"] = rows;
    return j.dump(2);
}

}  // namespace lplab
