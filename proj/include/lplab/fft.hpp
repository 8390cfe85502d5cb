// Thin thread-safe wrapper over FFTW complex transforms.  Plans are cached
// per (shape, direction) and created with FFTW_ESTIMATE | FFTW_UNALIGNED so
// execution on caller buffers needs no lock.
#pragma once

#include <complex>
#include <span>
#include <vector>

namespace lplab::fft {

// out = unnormalized DFT of in, sign -1 (forward) or +1 (inverse).
// shape is the per-axis length list (row-major data), in.size() == product.
void execute(std::span<const std::complex<double>> in,
             std::span<std::complex<double>> out,
             std::span<const int> shape, int sign);

}  // namespace lplab::fft
