// Seeded test-function generators shared by the experiments and tests.
#pragma once

#include "lplab/field.hpp"

#include <string_view>
#include <vector>

namespace lplab {

// FNV-1a mix of a base seed and a tag, for per-experiment stream derivation.
unsigned long long derive_seed(unsigned long long base, std::string_view tag);

// Random trigonometric polynomial with unit-variance complex Gaussian
// coefficients on integer frequency magnitudes in [band_lo, band_hi].
SampledField random_band_limited(const Domain& domain, int band_lo, int band_hi,
                                 unsigned long long seed, bool mean_zero = true);

std::vector<SampledField> make_corpus(const Domain& domain, int count, int band_lo, int band_hi,
                                      unsigned long long seed, bool mean_zero = true);

// The same coefficient draw realized on another grid (identical continuum
// function, finer sampling).
SampledField resample(const SampledField& f, int new_samples);

}  // namespace lplab
