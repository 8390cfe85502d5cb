#include "lplab/corpus.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace lplab {

unsigned long long derive_seed(unsigned long long base, std::string_view tag) {
    unsigned long long h = 1469598103934665603ull ^ base;
    for (char c : tag) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    return h;
}

SampledField random_band_limited(const Domain& domain, int band_lo, int band_hi,
                                 unsigned long long seed, bool mean_zero) {
    if (band_lo < 0 || band_hi < band_lo)
        throw std::invalid_argument("random_band_limited: bad band");
    if (band_hi >= domain.samples / 2)
        throw std::invalid_argument("random_band_limited: band exceeds the Nyquist band");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    FourierSpectrum s(domain);
    // deterministic order: flat index order
    for (std::size_t flat = 0; flat < s.size(); ++flat) {
        double mag = s.frequency_norm(flat) * domain.period;  // integer magnitude
        if (mag == 0) {
            if (mean_zero || band_lo > 0) continue;
        } else if (mag < band_lo || mag > band_hi) {
            continue;
        }
        s.coeffs[flat] = cdouble{g(rng), g(rng)};
    }
    return inverse_transform(s);
}

std::vector<SampledField> make_corpus(const Domain& domain, int count, int band_lo, int band_hi,
                                      unsigned long long seed, bool mean_zero) {
    std::vector<SampledField> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        out.push_back(random_band_limited(domain, band_lo, band_hi,
                                          derive_seed(seed, "member-" + std::to_string(i)),
                                          mean_zero));
    }
    return out;
}

SampledField resample(const SampledField& f, int new_samples) {
    const Domain& d = f.domain;
    Domain fine(d.kind, d.dim, d.period, new_samples);
    if (new_samples < d.samples)
        throw std::invalid_argument("resample: only upsampling is supported");
    auto s = transform(f);
    FourierSpectrum sf(fine);
    std::vector<int> idx(d.dim), m(d.dim);
    for (std::size_t flat = 0; flat < s.size(); ++flat) {
        if (s.coeffs[flat] == cdouble(0)) continue;
        d.decode(flat, idx);
        for (int a = 0; a < d.dim; ++a) m[a] = d.freq_of_index(idx[a]);
        sf.at(m) = s.coeffs[flat];
    }
    return inverse_transform(sf);
}

}  // namespace lplab
