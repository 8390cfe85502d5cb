// Sampled complex fields on the d-torus or a truncated line segment, their
// Fourier spectra, and the basic spectral/norm operations everything else
// builds on.  Conventions:
//   * torus: period-1 cube identified with [-1/2, 1/2)^d, normalized Haar
//     measure, coefficients f(x) = sum_m c_m e^{2 pi i m.x};
//   * truncated line: period-L cube [-L/2, L/2)^d standing in for R^d,
//     Lebesgue measure, physical frequency xi = m / L;
//   * forward transform of a single character is a one-hot spectrum.
#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace lplab {

using cdouble = std::complex<double>;

enum class DomainKind { torus, truncated_line };

struct Domain {
    DomainKind kind = DomainKind::torus;
    int dim = 1;
    double period = 1.0;   // L per axis; always 1 for the torus
    int samples = 0;       // N per axis, power of two, >= 4

    Domain() = default;
    Domain(DomainKind kind, int dim, double period, int samples);

    static Domain torus(int dim, int samples) { return {DomainKind::torus, dim, 1.0, samples}; }
    static Domain line(int dim, double period, int samples) {
        return {DomainKind::truncated_line, dim, period, samples};
    }

    std::size_t size() const;                       // N^d
    double spacing() const { return period / samples; }
    double cell_volume() const;                     // spacing^d
    double nyquist() const { return 0.5 * samples / period; }  // max |xi|

    // axis index in [0, N) -> signed integer frequency in [-N/2, N/2)
    int freq_of_index(int i) const { return i < samples / 2 ? i : i - samples; }
    int index_of_freq(int m) const { return m >= 0 ? m : m + samples; }
    bool freq_in_band(int m) const { return m >= -samples / 2 && m < samples / 2; }

    double coordinate(int i) const { return -0.5 * period + i * spacing(); }

    void decode(std::size_t flat, std::span<int> idx) const;
    std::size_t encode(std::span<const int> idx) const;

    bool operator==(const Domain&) const = default;
};

struct SampledField {
    Domain domain;
    std::vector<cdouble> values;   // row-major, size N^d

    SampledField() = default;
    explicit SampledField(const Domain& d) : domain(d), values(d.size()) {}
    SampledField(Domain d, std::vector<cdouble> v);

    std::size_t size() const { return values.size(); }
    cdouble& operator[](std::size_t i) { return values[i]; }
    const cdouble& operator[](std::size_t i) const { return values[i]; }
};

struct FourierSpectrum {
    Domain domain;
    std::vector<cdouble> coeffs;   // FFT layout per axis, size N^d

    FourierSpectrum() = default;
    explicit FourierSpectrum(const Domain& d) : domain(d), coeffs(d.size()) {}

    std::size_t size() const { return coeffs.size(); }
    cdouble& operator[](std::size_t i) { return coeffs[i]; }
    const cdouble& operator[](std::size_t i) const { return coeffs[i]; }

    // coefficient at an integer frequency vector (must lie in the band)
    cdouble at(std::span<const int> m) const;
    cdouble& at(std::span<const int> m);

    // physical frequency vector of a flat index
    void frequency(std::size_t flat, std::span<double> xi) const;
    double frequency_norm(std::size_t flat) const;   // |xi|

    // l2 norm matching lp_norm(field, 2) through Parseval
    double l2_norm() const;
};

// ---- transforms ------------------------------------------------------------

FourierSpectrum transform(const SampledField& f);
SampledField inverse_transform(const FourierSpectrum& s);

// Trigonometric synthesis from an explicit coefficient list.
SampledField synth(const Domain& domain,
                   std::span<const std::pair<std::vector<int>, cdouble>> coeffs);
// 1-d convenience overload
SampledField synth(const Domain& domain,
                   std::span<const std::pair<int, cdouble>> coeffs);

// ---- norms and products ----------------------------------------------------

// L_p norm; torus uses normalized Haar measure, line uses the rectangle rule
// with cell volume (L/N)^d.  p in [1, 256].
double lp_norm(const SampledField& f, double p);
double sup_norm(const SampledField& f);

SampledField tensor_product(const SampledField& a, const SampledField& b);

// ---- pointwise evaluation of the band-limited model -------------------------

// Evaluate the trigonometric interpolant at an arbitrary point (length d).
cdouble evaluate(const FourierSpectrum& s, std::span<const double> x);
cdouble evaluate(const SampledField& f, std::span<const double> x);

// Rectangle-rule continuous Fourier transform of a line field at an arbitrary
// physical frequency: integral of f(x) e^{-2 pi i xi.x} over the cell.
cdouble fourier_at(const SampledField& f, std::span<const double> xi);

// ---- periodization ----------------------------------------------------------

struct PeriodizeResult {
    SampledField field;        // 1-periodic, on the requested torus grid
    double tail_fraction = 0;  // |f_t| mass beyond 3 periods / total mass
    bool decay_warning = false;
};

// Periodization of the dilate f_t(x) = t^{-d} f(x/t) of a truncated-line
// field: sum over integer translates, evaluated in physical space.
PeriodizeResult periodize(const SampledField& f, double t, int torus_samples);

// ---- snapshots ---------------------------------------------------------------

void save_csv(const SampledField& f, std::ostream& out);
void save_binary(const SampledField& f, std::ostream& out);
SampledField load_binary(std::istream& in);

}  // namespace lplab
