#include "lplab/transference.hpp"

#include "lplab/kernels.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lplab {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

// nonzero coefficients of a (small) trigonometric polynomial
std::vector<std::pair<std::vector<int>, cdouble>> coefficient_list(const SampledField& f) {
    auto s = transform(f);
    double cmax = 0;
    for (const auto& c : s.coeffs) cmax = std::max(cmax, std::abs(c));
    std::vector<std::pair<std::vector<int>, cdouble>> out;
    std::vector<int> idx(f.domain.dim);
    for (std::size_t flat = 0; flat < s.size(); ++flat) {
        if (std::abs(s.coeffs[flat]) <= 1e-13 * cmax) continue;
        f.domain.decode(flat, idx);
        std::vector<int> m(f.domain.dim);
        for (int a = 0; a < f.domain.dim; ++a) m[a] = f.domain.freq_of_index(idx[a]);
        out.emplace_back(std::move(m), s.coeffs[flat]);
    }
    return out;
}

}  // namespace

double VectorSymbol::pointwise_norm(std::span<const double> xi) const {
    double acc = 0;
    for (int c = 0; c < ydim; ++c) acc += weights[static_cast<std::size_t>(c)] * std::norm(component(c, xi));
    return std::sqrt(acc);
}

VectorSymbol poisson_g_symbol(const LogTimeGrid& grid) {
    VectorSymbol sym;
    sym.ydim = grid.count();
    sym.weights = grid.weights;
    sym.name = "poisson-g";
    auto nodes = grid.nodes;
    sym.component = [nodes](int c, std::span<const double> xi) {
        double r2 = 0;
        for (double v : xi) r2 += v * v;
        double a = two_pi * nodes[static_cast<std::size_t>(c)] * std::sqrt(r2);
        return cdouble(-a * std::exp(-a));
    };
    return sym;
}

VectorSymbol identity_symbol() {
    VectorSymbol sym;
    sym.ydim = 1;
    sym.weights = {1.0};
    sym.name = "identity";
    sym.component = [](int, std::span<const double>) { return cdouble(1.0); };
    return sym;
}

VectorSymbol dyadic_indicator_symbol(const DyadicPartition& partition) {
    VectorSymbol sym;
    sym.ydim = static_cast<int>(partition.rects.size());
    sym.weights.assign(partition.rects.size(), 1.0);
    sym.name = "dyadic-indicator";
    auto p = partition;
    sym.component = [p](int c, std::span<const double> xi) {
        return cdouble(p.locate(xi) == c ? 1.0 : 0.0);
    };
    return sym;
}

VectorSymbol scale_symbol(const VectorSymbol& sym, double t) {
    VectorSymbol out = sym;
    out.name = sym.name + "@" + std::to_string(t);
    auto inner = sym.component;
    out.component = [inner, t](int c, std::span<const double> xi) {
        std::array<double, 3> scaled{};
        for (std::size_t a = 0; a < xi.size(); ++a) scaled[a] = t * xi[a];
        return inner(c, std::span<const double>(scaled.data(), xi.size()));
    };
    return out;
}

VectorSymbol restrict_symbol(const VectorSymbol& sym, int k) {
    if (k < 1 || k > 3) throw std::invalid_argument("restrict_symbol: k must lie in [1, 3]");
    VectorSymbol out = sym;
    out.name = sym.name + "|R^" + std::to_string(k);
    auto inner = sym.component;
    out.component = [inner, k](int c, std::span<const double> xi) {
        // callers pass xi of length <= k; trailing coordinates stay 0
        std::array<double, 3> embedded{};
        for (std::size_t a = 0; a < xi.size() && a < static_cast<std::size_t>(k); ++a)
            embedded[a] = xi[a];
        return inner(c, std::span<const double>(embedded.data(), static_cast<std::size_t>(k)));
    };
    return out;
}

SampledField VectorField::pointwise_norm() const {
    SampledField out(domain);
    const std::size_t n = domain.size();
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0;
        for (int c = 0; c < ydim; ++c)
            acc += weights[static_cast<std::size_t>(c)] * std::norm(data[static_cast<std::size_t>(c) * n + i]);
        out.values[i] = std::sqrt(acc);
    }
    return out;
}

double VectorField::lp_norm_y(double p) const { return lp_norm(pointwise_norm(), p); }

VectorField apply_multiplier(const SampledField& f, const VectorSymbol& sym) {
    const Domain& d = f.domain;
    const std::size_t n = d.size();
    if (static_cast<std::size_t>(sym.ydim) * n > (std::size_t{1} << 26))
        throw std::invalid_argument("apply_multiplier: output too large; use "
                                    "multiplier_norm_field for norm computations");
    auto s = transform(f);
    VectorField out;
    out.domain = d;
    out.ydim = sym.ydim;
    out.weights = sym.weights;
    out.data.resize(static_cast<std::size_t>(sym.ydim) * n);
    FourierSpectrum scratch(d);
    std::vector<double> xi(d.dim);
    for (int c = 0; c < sym.ydim; ++c) {
        for (std::size_t flat = 0; flat < n; ++flat) {
            s.frequency(flat, xi);
            scratch.coeffs[flat] = s.coeffs[flat] * sym.component(c, xi);
        }
        auto u = inverse_transform(scratch);
        std::copy(u.values.begin(), u.values.end(),
                  out.data.begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(c) * n));
    }
    return out;
}

SampledField multiplier_norm_field(const SampledField& f, const VectorSymbol& sym) {
    const Domain& d = f.domain;
    auto s = transform(f);
    std::vector<double> acc(d.size(), 0.0);
    FourierSpectrum scratch(d);
    std::vector<double> xi(d.dim);
    for (int c = 0; c < sym.ydim; ++c) {
        double w = sym.weights[static_cast<std::size_t>(c)];
        if (w == 0) continue;
        for (std::size_t flat = 0; flat < s.size(); ++flat) {
            if (s.coeffs[flat] == cdouble(0)) {
                scratch.coeffs[flat] = 0;
                continue;
            }
            s.frequency(flat, xi);
            scratch.coeffs[flat] = s.coeffs[flat] * sym.component(c, xi);
        }
        auto u = inverse_transform(scratch);
        for (std::size_t i = 0; i < u.size(); ++i) acc[i] += w * std::norm(u.values[i]);
    }
    SampledField out(d);
    for (std::size_t i = 0; i < out.size(); ++i) out.values[i] = std::sqrt(acc[i]);
    return out;
}

double gaussian_window_norm(const SampledField& P, const VectorSymbol& sym, double p, double t,
                            const Domain& line_domain) {
    if (P.domain.kind != DomainKind::torus)
        throw std::invalid_argument("gaussian_window_norm: P must be a torus polynomial");
    if (line_domain.kind != DomainKind::truncated_line || line_domain.dim != P.domain.dim)
        throw std::invalid_argument("gaussian_window_norm: incompatible line domain");
    const int dim = P.domain.dim;
    const double half = 0.5 * line_domain.period;
    double window_tail = std::exp(-4.0 * std::numbers::pi * std::numbers::pi * t * half * half);
    if (window_tail >= 1e-8)
        throw std::invalid_argument("gaussian_window_norm: window tail " +
                                    std::to_string(window_tail) +
                                    " exceeds 1e-8; t too small for this domain");

    auto coeffs = coefficient_list(P);
    SampledField g(line_domain);
    std::vector<int> idx(dim);
    std::vector<double> x(dim);
    for (std::size_t flat = 0; flat < g.size(); ++flat) {
        line_domain.decode(flat, idx);
        double r2 = 0;
        for (int a = 0; a < dim; ++a) {
            x[a] = line_domain.coordinate(idx[a]);
            r2 += x[a] * x[a];
        }
        cdouble val = 0;
        for (const auto& [m, c] : coeffs) {
            double phase = 0;
            for (int a = 0; a < dim; ++a) phase += m[a] * x[a];
            val += c * std::polar(1.0, two_pi * phase);
        }
        g.values[flat] = val * std::exp(-4.0 * std::numbers::pi * std::numbers::pi * t * r2);
    }
    double norm = lp_norm(multiplier_norm_field(g, sym), p);
    return std::pow(4.0 * std::numbers::pi * p * t, 0.5 * dim / p) * norm;
}

double periodization_norm(const SampledField& f, const VectorSymbol& sym, double p, double t,
                          int torus_samples) {
    if (f.domain.kind != DomainKind::truncated_line)
        throw std::invalid_argument("periodization_norm: f must be a truncated-line field");
    if (t * f.domain.period > 1.0)
        throw std::invalid_argument("periodization_norm: support overflow, t L = " +
                                    std::to_string(t * f.domain.period) + " > 1");
    auto per = periodize(f, t, torus_samples);
    auto scaled = scale_symbol(sym, t);
    double norm = lp_norm(multiplier_norm_field(per.field, scaled), p);
    double pprime = p / (p - 1.0);
    return std::pow(t, f.domain.dim / pprime) * norm;
}

TransferenceReport transference_inequality_check(const VectorSymbol& sym, double p,
                                                 std::span<const SampledField> torus_set,
                                                 std::span<const SampledField> line_set,
                                                 double tol) {
    TransferenceReport rep;
    rep.tol = tol;
    int i = 0;
    for (const auto& f : torus_set) {
        double r = lp_norm(multiplier_norm_field(f, sym), p) / lp_norm(f, p);
        std::string id = "torus-" + std::to_string(i++);
        rep.periodic_ratios.emplace_back(id, r);
        if (r > rep.periodic_max) {
            rep.periodic_max = r;
            rep.periodic_argmax = id;
        }
    }
    i = 0;
    for (const auto& f : line_set) {
        double r = lp_norm(multiplier_norm_field(f, sym), p) / lp_norm(f, p);
        std::string id = "line-" + std::to_string(i++);
        rep.line_ratios.emplace_back(id, r);
        if (r > rep.line_max) {
            rep.line_max = r;
            rep.line_argmax = id;
        }
    }
    rep.pass = rep.periodic_max <= rep.line_max * (1.0 + tol);
    return rep;
}

double ergodic_average(const SampledField& torus_f, double t, double period, int samples) {
    if (torus_f.domain.kind != DomainKind::torus)
        throw std::invalid_argument("ergodic_average: f must be a torus field");
    const int dim = torus_f.domain.dim;
    Domain window = Domain::line(dim, period, samples);
    auto coeffs = coefficient_list(torus_f);
    double scale = std::pow(4.0 * std::numbers::pi * t, -0.5 * dim);
    std::vector<int> idx(dim);
    std::vector<double> x(dim);
    double acc = 0;
    for (std::size_t flat = 0; flat < window.size(); ++flat) {
        window.decode(flat, idx);
        double r2 = 0;
        cdouble val = 0;
        for (int a = 0; a < dim; ++a) {
            x[a] = window.coordinate(idx[a]);
            r2 += x[a] * x[a];
        }
        for (const auto& [m, c] : coeffs) {
            double phase = 0;
            for (int a = 0; a < dim; ++a) phase += m[a] * x[a];
            val += c * std::polar(1.0, two_pi * phase);
        }
        acc += val.real() * scale * std::exp(-r2 / (4.0 * t));
    }
    return acc * window.cell_volume();
}

HypothesesReport validate_hypotheses(const VectorSymbol& sym, const Domain& domain,
                                     double jump_modulus) {
    HypothesesReport rep;
    const int half = domain.samples / 2;
    std::vector<double> xi(1), xj(1);
    std::vector<cdouble> a(static_cast<std::size_t>(sym.ydim)),
        b(static_cast<std::size_t>(sym.ydim));
    auto fill = [&](std::span<const double> at, std::vector<cdouble>& out) {
        for (int c = 0; c < sym.ydim; ++c) out[static_cast<std::size_t>(c)] = sym.component(c, at);
    };
    auto ynorm_diff = [&](const std::vector<cdouble>& u, const std::vector<cdouble>& v) {
        double acc = 0;
        for (int c = 0; c < sym.ydim; ++c)
            acc += sym.weights[static_cast<std::size_t>(c)] *
                   std::norm(u[static_cast<std::size_t>(c)] - v[static_cast<std::size_t>(c)]);
        return std::sqrt(acc);
    };
    for (int m = -half; m < half; ++m) {
        xi[0] = m / domain.period;
        rep.bound = std::max(rep.bound, sym.pointwise_norm(xi));
        if (m + 1 < half && m != 0 && m + 1 != 0) {
            // same dyadic block: identical frexp exponent and sign
            int ea = 0, eb = 0;
            std::frexp(std::abs(xi[0]), &ea);
            xj[0] = (m + 1) / domain.period;
            std::frexp(std::abs(xj[0]), &eb);
            if ((xi[0] > 0) == (xj[0] > 0) && ea == eb) {
                fill(xi, a);
                fill(xj, b);
                rep.max_jump = std::max(rep.max_jump, ynorm_diff(a, b));
            }
        }
    }
    rep.bounded = std::isfinite(rep.bound);
    rep.jump_ok = rep.max_jump <= jump_modulus;
    return rep;
}

std::string report_to_json_string(const TransferenceReport& r) {
    nlohmann::json j;
    j["periodic_max"] = r.periodic_max;
    j["line_max"] = r.line_max;
    j["periodic_argmax"] = r.periodic_argmax;
    j["line_argmax"] = r.line_argmax;
    j["tolerance"] = r.tol;
    j["pass"] = r.pass;
    auto arr = nlohmann::json::array();
    for (const auto& [id, v] : r.periodic_ratios) arr.push_back({{"id", id}, {"ratio", v}});
    j["periodic_ratios"] = arr;
    arr = nlohmann::json::array();
    for (const auto& [id, v] : r.line_ratios) arr.push_back({{"id", id}, {"ratio", v}});
    j["line_ratios"] = arr;
    return j.dump(2);
}

}  // namespace lplab
