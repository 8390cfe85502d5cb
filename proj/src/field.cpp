#include "lplab/field.hpp"

#include "lplab/fft.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <istream>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace lplab {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

// parity of the sum of axis indices; equals the frequency parity since N is even
int index_parity(const Domain& d, std::size_t flat) {
    int par = 0;
    for (int a = d.dim - 1; a >= 0; --a) {
        par ^= static_cast<int>(flat % d.samples) & 1;
        flat /= d.samples;
    }
    return par;
}

std::vector<int> shape_of(const Domain& d) {
    return std::vector<int>(static_cast<std::size_t>(d.dim), d.samples);
}

}  // namespace

Domain::Domain(DomainKind kind_, int dim_, double period_, int samples_)
    : kind(kind_), dim(dim_), period(period_), samples(samples_) {
    if (dim < 1 || dim > 3) throw std::invalid_argument("Domain: dim must be in [1, 3]");
    if (samples < 4 || !power_of_two(samples))
        throw std::invalid_argument("Domain: samples must be a power of two >= 4");
    if (!(period > 0)) throw std::invalid_argument("Domain: period must be positive");
    if (kind == DomainKind::torus && period != 1.0)
        throw std::invalid_argument("Domain: torus period is fixed to 1");
}

std::size_t Domain::size() const {
    std::size_t n = 1;
    for (int a = 0; a < dim; ++a) n *= static_cast<std::size_t>(samples);
    return n;
}

double Domain::cell_volume() const {
    double v = 1;
    for (int a = 0; a < dim; ++a) v *= spacing();
    return v;
}

void Domain::decode(std::size_t flat, std::span<int> idx) const {
    for (int a = dim - 1; a >= 0; --a) {
        idx[a] = static_cast<int>(flat % samples);
        flat /= samples;
    }
}

std::size_t Domain::encode(std::span<const int> idx) const {
    std::size_t flat = 0;
    for (int a = 0; a < dim; ++a) flat = flat * samples + static_cast<std::size_t>(idx[a]);
    return flat;
}

SampledField::SampledField(Domain d, std::vector<cdouble> v) : domain(d), values(std::move(v)) {
    if (values.size() != domain.size())
        throw std::invalid_argument("SampledField: value count does not match domain");
}

cdouble FourierSpectrum::at(std::span<const int> m) const {
    std::size_t flat = 0;
    for (int a = 0; a < domain.dim; ++a) {
        if (!domain.freq_in_band(m[a]))
            throw std::invalid_argument("FourierSpectrum::at: frequency outside Nyquist band");
        flat = flat * domain.samples + static_cast<std::size_t>(domain.index_of_freq(m[a]));
    }
    return coeffs[flat];
}

cdouble& FourierSpectrum::at(std::span<const int> m) {
    std::size_t flat = 0;
    for (int a = 0; a < domain.dim; ++a) {
        if (!domain.freq_in_band(m[a]))
            throw std::invalid_argument("FourierSpectrum::at: frequency outside Nyquist band");
        flat = flat * domain.samples + static_cast<std::size_t>(domain.index_of_freq(m[a]));
    }
    return coeffs[flat];
}

void FourierSpectrum::frequency(std::size_t flat, std::span<double> xi) const {
    for (int a = domain.dim - 1; a >= 0; --a) {
        int i = static_cast<int>(flat % domain.samples);
        xi[a] = domain.freq_of_index(i) / domain.period;
        flat /= domain.samples;
    }
}

double FourierSpectrum::frequency_norm(std::size_t flat) const {
    double acc = 0;
    for (int a = domain.dim - 1; a >= 0; --a) {
        int i = static_cast<int>(flat % domain.samples);
        double xi = domain.freq_of_index(i) / domain.period;
        acc += xi * xi;
        flat /= domain.samples;
    }
    return std::sqrt(acc);
}

double FourierSpectrum::l2_norm() const {
    double acc = 0;
    for (const cdouble& c : coeffs) acc += std::norm(c);
    if (domain.kind == DomainKind::truncated_line) {
        for (int a = 0; a < domain.dim; ++a) acc *= domain.period;
    }
    return std::sqrt(acc);
}

FourierSpectrum transform(const SampledField& f) {
    if (f.values.size() != f.domain.size())
        throw std::invalid_argument("transform: field size does not match domain");
    FourierSpectrum s(f.domain);
    auto shape = shape_of(f.domain);
    fft::execute(f.values, s.coeffs, shape, -1);
    const double scale = 1.0 / static_cast<double>(f.domain.size());
    for (std::size_t i = 0; i < s.coeffs.size(); ++i) {
        s.coeffs[i] *= index_parity(f.domain, i) ? -scale : scale;
    }
    return s;
}

SampledField inverse_transform(const FourierSpectrum& s) {
    if (s.coeffs.size() != s.domain.size())
        throw std::invalid_argument("inverse_transform: spectrum size does not match domain");
    std::vector<cdouble> buf(s.coeffs.size());
    for (std::size_t i = 0; i < buf.size(); ++i) {
        buf[i] = index_parity(s.domain, i) ? -s.coeffs[i] : s.coeffs[i];
    }
    SampledField f(s.domain);
    auto shape = shape_of(s.domain);
    fft::execute(buf, f.values, shape, +1);
    return f;
}

SampledField synth(const Domain& domain,
                   std::span<const std::pair<std::vector<int>, cdouble>> coeffs) {
    FourierSpectrum s(domain);
    for (const auto& [m, c] : coeffs) {
        if (static_cast<int>(m.size()) != domain.dim)
            throw std::invalid_argument("synth: frequency dimension mismatch");
        for (int a = 0; a < domain.dim; ++a) {
            if (!domain.freq_in_band(m[a]))
                throw std::invalid_argument("synth: frequency " + std::to_string(m[a]) +
                                            " outside Nyquist band [" +
                                            std::to_string(-domain.samples / 2) + ", " +
                                            std::to_string(domain.samples / 2) + ")");
        }
        s.at(m) += c;
    }
    return inverse_transform(s);
}

SampledField synth(const Domain& domain, std::span<const std::pair<int, cdouble>> coeffs) {
    std::vector<std::pair<std::vector<int>, cdouble>> full;
    full.reserve(coeffs.size());
    for (const auto& [m, c] : coeffs) full.emplace_back(std::vector<int>{m}, c);
    return synth(domain, full);
}

double lp_norm(const SampledField& f, double p) {
    if (!(p >= 1.0 && p <= 256.0)) throw std::invalid_argument("lp_norm: p must lie in [1, 256]");
    double vmax = 0;
    for (const cdouble& v : f.values) vmax = std::max(vmax, std::abs(v));
    if (vmax == 0) return 0;
    double acc = 0;
    for (const cdouble& v : f.values) acc += std::pow(std::abs(v) / vmax, p);
    double measure = f.domain.kind == DomainKind::torus
                         ? 1.0 / static_cast<double>(f.domain.size())
                         : f.domain.cell_volume();
    return vmax * std::pow(acc * measure, 1.0 / p);
}

double sup_norm(const SampledField& f) {
    double vmax = 0;
    for (const cdouble& v : f.values) vmax = std::max(vmax, std::abs(v));
    return vmax;
}

SampledField tensor_product(const SampledField& a, const SampledField& b) {
    const Domain &da = a.domain, &db = b.domain;
    if (da.kind != db.kind || da.samples != db.samples || da.period != db.period)
        throw std::invalid_argument("tensor_product: domain kind/N/period mismatch");
    if (da.dim + db.dim > 3)
        throw std::invalid_argument("tensor_product: result dimension exceeds 3");
    Domain dc(da.kind, da.dim + db.dim, da.period, da.samples);
    SampledField c(dc);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            c.values[i * b.size() + j] = a.values[i] * b.values[j];
        }
    }
    return c;
}

cdouble evaluate(const FourierSpectrum& s, std::span<const double> x) {
    const Domain& d = s.domain;
    if (static_cast<int>(x.size()) != d.dim)
        throw std::invalid_argument("evaluate: point dimension mismatch");
    const int N = d.samples;
    if (d.dim == 1) {
        // Horner in w = e^{2 pi i x / L}:  sum_m c_m w^m = w^{-N/2} sum_k c_{k-N/2} w^k
        const cdouble w = std::polar(1.0, two_pi * x[0] / d.period);
        cdouble acc = 0;
        for (int k = N - 1; k >= 0; --k) {
            int m = k - N / 2;
            acc = acc * w + s.coeffs[static_cast<std::size_t>(m >= 0 ? m : m + N)];
        }
        return acc * std::polar(1.0, -two_pi * x[0] / d.period * (N / 2));
    }
    // general d: separable character tables, then a full sum
    std::vector<std::vector<cdouble>> table(d.dim, std::vector<cdouble>(N));
    for (int a = 0; a < d.dim; ++a) {
        for (int i = 0; i < N; ++i) {
            double m = d.freq_of_index(i);
            table[a][i] = std::polar(1.0, two_pi * m * x[a] / d.period);
        }
    }
    cdouble acc = 0;
    std::vector<int> idx(d.dim);
    for (std::size_t flat = 0; flat < s.size(); ++flat) {
        d.decode(flat, idx);
        cdouble ch = s.coeffs[flat];
        for (int a = 0; a < d.dim; ++a) ch *= table[a][idx[a]];
        acc += ch;
    }
    return acc;
}

cdouble evaluate(const SampledField& f, std::span<const double> x) {
    return evaluate(transform(f), x);
}

cdouble fourier_at(const SampledField& f, std::span<const double> xi) {
    const Domain& d = f.domain;
    if (static_cast<int>(xi.size()) != d.dim)
        throw std::invalid_argument("fourier_at: frequency dimension mismatch");
    if (d.dim == 1) {
        const double x0 = d.coordinate(0);
        const cdouble step = std::polar(1.0, -two_pi * xi[0] * d.spacing());
        cdouble phase = std::polar(1.0, -two_pi * xi[0] * x0);
        cdouble acc = 0;
        for (std::size_t j = 0; j < f.size(); ++j) {
            acc += f.values[j] * phase;
            phase *= step;
        }
        return acc * d.cell_volume();
    }
    std::vector<std::vector<cdouble>> table(d.dim, std::vector<cdouble>(d.samples));
    for (int a = 0; a < d.dim; ++a) {
        for (int i = 0; i < d.samples; ++i) {
            table[a][i] = std::polar(1.0, -two_pi * xi[a] * d.coordinate(i));
        }
    }
    cdouble acc = 0;
    std::vector<int> idx(d.dim);
    for (std::size_t flat = 0; flat < f.size(); ++flat) {
        d.decode(flat, idx);
        cdouble term = f.values[flat];
        for (int a = 0; a < d.dim; ++a) term *= table[a][idx[a]];
        acc += term;
    }
    return acc * d.cell_volume();
}

PeriodizeResult periodize(const SampledField& f, double t, int torus_samples) {
    const Domain& d = f.domain;
    if (d.kind != DomainKind::truncated_line)
        throw std::invalid_argument("periodize: input must be a truncated-line field");
    if (!(t > 0)) throw std::invalid_argument("periodize: t must be positive");

    // |f_t| mass beyond 3 periods, measured on f's own grid: |y| >= 3/(2t)
    double tail = 0, total = 0;
    std::vector<int> idx(d.dim);
    const double cut = 1.5 / t;
    for (std::size_t flat = 0; flat < f.size(); ++flat) {
        d.decode(flat, idx);
        double a = std::abs(f.values[flat]);
        total += a;
        for (int ax = 0; ax < d.dim; ++ax) {
            if (std::abs(d.coordinate(idx[ax])) >= cut) {
                tail += a;
                break;
            }
        }
    }
    PeriodizeResult out;
    out.tail_fraction = total > 0 ? tail / total : 0.0;
    out.decay_warning = out.tail_fraction >= 1e-8;

    Domain torus = Domain::torus(d.dim, torus_samples);
    out.field = SampledField(torus);
    FourierSpectrum spec = transform(f);

    const double half = 0.5 * t * d.period;  // dilated support is [-half, half)^d
    double dilate_scale = 1.0;
    for (int a = 0; a < d.dim; ++a) dilate_scale /= t;

    std::vector<int> tidx(d.dim);
    std::vector<double> y(d.dim);
    std::vector<int> m_lo(d.dim), m_hi(d.dim), m(d.dim);
    for (std::size_t flat = 0; flat < out.field.size(); ++flat) {
        torus.decode(flat, tidx);
        for (int a = 0; a < d.dim; ++a) {
            double x = torus.coordinate(tidx[a]);
            m_lo[a] = static_cast<int>(std::ceil(-half - x));
            m_hi[a] = static_cast<int>(std::floor(half - x));
            m[a] = m_lo[a];
        }
        cdouble acc = 0;
        while (true) {
            bool inside = true;
            for (int a = 0; a < d.dim; ++a) {
                y[a] = (torus.coordinate(tidx[a]) + m[a]) / t;
                if (y[a] < -0.5 * d.period || y[a] >= 0.5 * d.period) inside = false;
            }
            if (inside) acc += evaluate(spec, y);
            int a = d.dim - 1;
            while (a >= 0) {
                if (++m[a] <= m_hi[a]) break;
                m[a] = m_lo[a];
                --a;
            }
            if (a < 0) break;
        }
        out.field.values[flat] = acc * dilate_scale;
    }
    return out;
}

void save_csv(const SampledField& f, std::ostream& out) {
    out << (f.domain.kind == DomainKind::torus ? "torus" : "truncated-line") << ','
        << f.domain.dim << ',' << f.domain.period << ',' << f.domain.samples << '\n';
    char buf[64];
    for (const cdouble& v : f.values) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", v.real(), v.imag());
        out << buf;
    }
}

void save_binary(const SampledField& f, std::ostream& out) {
    const char magic[8] = {'l', 'p', 'f', 'i', 'e', 'l', 'd', '1'};
    out.write(magic, 8);
    std::int32_t kind = f.domain.kind == DomainKind::torus ? 0 : 1;
    std::int32_t dim = f.domain.dim, n = f.domain.samples;
    double period = f.domain.period;
    out.write(reinterpret_cast<const char*>(&kind), 4);
    out.write(reinterpret_cast<const char*>(&dim), 4);
    out.write(reinterpret_cast<const char*>(&period), 8);
    out.write(reinterpret_cast<const char*>(&n), 4);
    out.write(reinterpret_cast<const char*>(f.values.data()),
              static_cast<std::streamsize>(f.values.size() * sizeof(cdouble)));
}

SampledField load_binary(std::istream& in) {
    char magic[8];
    in.read(magic, 8);
    if (std::memcmp(magic, "lpfield1", 8) != 0)
        throw std::runtime_error("load_binary: bad magic");
    std::int32_t kind, dim, n;
    double period;
    in.read(reinterpret_cast<char*>(&kind), 4);
    in.read(reinterpret_cast<char*>(&dim), 4);
    in.read(reinterpret_cast<char*>(&period), 8);
    in.read(reinterpret_cast<char*>(&n), 4);
    Domain d(kind == 0 ? DomainKind::torus : DomainKind::truncated_line, dim, period, n);
    SampledField f(d);
    in.read(reinterpret_cast<char*>(f.values.data()),
            static_cast<std::streamsize>(f.values.size() * sizeof(cdouble)));
    if (!in) throw std::runtime_error("load_binary: truncated stream");
    return f;
}

}  // namespace lplab
