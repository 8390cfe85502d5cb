#include "lplab/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace lplab::fft {
namespace {

struct PlanCache {
    std::mutex mutex;
    std::map<std::pair<std::vector<int>, int>, fftw_plan> plans;

    fftw_plan get(std::span<const int> shape, int sign) {
        std::vector<int> key_shape(shape.begin(), shape.end());
        std::scoped_lock lock(mutex);
        auto it = plans.find({key_shape, sign});
        if (it != plans.end()) return it->second;

        std::size_t n = 1;
        for (int s : shape) n *= static_cast<std::size_t>(s);
        // dummy buffers only used at planning time (ESTIMATE does not touch them)
        std::vector<fftw_complex> a(n), b(n);
        fftw_plan plan = fftw_plan_dft(static_cast<int>(key_shape.size()), key_shape.data(),
                                       a.data(), b.data(), sign,
                                       FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (!plan) throw std::runtime_error("fftw_plan_dft failed");
        plans.emplace(std::make_pair(std::move(key_shape), sign), plan);
        return plan;
    }
};

PlanCache& cache() {
    static PlanCache c;
    return c;
}

}  // namespace

void execute(std::span<const std::complex<double>> in,
             std::span<std::complex<double>> out,
             std::span<const int> shape, int sign) {
    std::size_t n = 1;
    for (int s : shape) n *= static_cast<std::size_t>(s);
    if (in.size() != n || out.size() != n)
        throw std::invalid_argument("fft::execute: buffer size does not match shape");
    if (sign != FFTW_FORWARD && sign != FFTW_BACKWARD)
        throw std::invalid_argument("fft::execute: sign must be -1 or +1");

    fftw_plan plan = cache().get(shape, sign);
    // out-of-place plan: input must not alias output
    std::vector<std::complex<double>> tmp;
    const std::complex<double>* src = in.data();
    if (in.data() == out.data()) {
        tmp.assign(in.begin(), in.end());
        src = tmp.data();
    }
    fftw_execute_dft(plan,
                     reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(src)),
                     reinterpret_cast<fftw_complex*>(out.data()));
}

}  // namespace lplab::fft
