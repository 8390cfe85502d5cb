#include "lplab/dyadic.hpp"

#include <json.hpp>

#include <cmath>
#include <stdexcept>

namespace lplab {

namespace {

// exponent k with |xi| in [2^{k-1}, 2^k); exact at dyadic boundaries
int band_exponent(double xi_abs) {
    int e = 0;
    std::frexp(xi_abs, &e);
    return e;
}

}  // namespace

bool DyadicInterval::contains(double xi) const {
    if (sign > 0) return xi > 0 && band_exponent(xi) == exponent;
    return xi < 0 && band_exponent(-xi) == exponent;
}

bool DyadicRectangle::contains(std::span<const double> xi) const {
    if (xi.size() != axes.size()) return false;
    for (std::size_t a = 0; a < axes.size(); ++a) {
        if (!axes[a].contains(xi[a])) return false;
    }
    return true;
}

int DyadicPartition::locate(std::span<const double> xi) const {
    // rectangles are ordered lexicographically by axis (sign, exponent);
    // compute the bucket directly instead of scanning
    if (static_cast<int>(xi.size()) != dim) return -1;
    const int span = k_max - k_min + 1;
    int flat = 0;
    for (int a = 0; a < dim; ++a) {
        if (xi[a] == 0) return -1;
        int k = band_exponent(std::abs(xi[a]));
        if (k < k_min || k > k_max) return -1;
        int cell = (xi[a] > 0 ? 0 : span) + (k - k_min);
        flat = flat * 2 * span + cell;
    }
    return flat;
}

bool DyadicPartition::covers(std::span<const double> xi) const { return locate(xi) >= 0; }

DyadicPartition build_partition(int dim, int k_min, int k_max, const Domain& domain) {
    if (dim < 1 || dim > 3) throw std::invalid_argument("build_partition: dim must be in [1,3]");
    if (k_min > k_max) throw std::invalid_argument("build_partition: empty exponent range");
    if (std::ldexp(1.0, k_max) > domain.nyquist())
        throw std::invalid_argument("build_partition: 2^k_max (" +
                                    std::to_string(std::ldexp(1.0, k_max)) +
                                    ") exceeds the Nyquist frequency " +
                                    std::to_string(domain.nyquist()));
    DyadicPartition p;
    p.dim = dim;
    p.k_min = k_min;
    p.k_max = k_max;
    const int span = k_max - k_min + 1;
    std::size_t total = 1;
    for (int a = 0; a < dim; ++a) total *= static_cast<std::size_t>(2 * span);
    p.rects.resize(total);
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::size_t rest = flat;
        std::vector<DyadicInterval> axes(dim);
        for (int a = dim - 1; a >= 0; --a) {
            int cell = static_cast<int>(rest % (2 * span));
            rest /= 2 * span;
            axes[a].sign = cell < span ? 1 : -1;
            axes[a].exponent = k_min + (cell % span);
        }
        p.rects[flat].axes = std::move(axes);
    }
    return p;
}

DyadicPartition full_partition(const Domain& domain) {
    // smallest magnitude 1/L has exponent band_exponent(1/L); the largest
    // coverable band is [Nyquist/2, Nyquist)
    int k_lo = band_exponent(1.0 / domain.period);
    int k_hi = band_exponent(domain.nyquist()) - 1;
    return build_partition(domain.dim, k_lo, k_hi, domain);
}

SampledField partial_sum(const SampledField& f, const DyadicRectangle& r) {
    auto s = transform(f);
    std::vector<double> xi(f.domain.dim);
    for (std::size_t flat = 0; flat < s.size(); ++flat) {
        s.frequency(flat, xi);
        if (!r.contains(xi)) s.coeffs[flat] = 0;
    }
    return inverse_transform(s);
}

SampledField square_function(const SampledField& f, const DyadicPartition& p) {
    const Domain& d = f.domain;
    if (p.dim != d.dim) throw std::invalid_argument("square_function: dimension mismatch");
    auto s = transform(f);

    double cmax = 0;
    for (const auto& c : s.coeffs) cmax = std::max(cmax, std::abs(c));
    const double floor = 1e-13 * cmax;

    std::vector<std::vector<std::size_t>> buckets(p.rects.size());
    std::vector<double> xi(d.dim);
    for (std::size_t flat = 0; flat < s.size(); ++flat) {
        if (std::abs(s.coeffs[flat]) == 0) continue;
        s.frequency(flat, xi);
        bool origin = true;
        for (double v : xi) origin = origin && v == 0;
        if (origin) continue;  // the mean never belongs to a rectangle
        int r = p.locate(xi);
        if (r < 0) {
            if (std::abs(s.coeffs[flat]) <= floor) continue;
            std::string msg = "square_function: frequency (";
            for (int a = 0; a < d.dim; ++a)
                msg += std::to_string(xi[a]) + (a + 1 < d.dim ? "," : ")");
            throw std::invalid_argument(msg + " not covered by the partition");
        }
        buckets[static_cast<std::size_t>(r)].push_back(flat);
    }

    SampledField out(d);
    std::vector<double> acc(d.size(), 0.0);
    FourierSpectrum masked(d);
    for (std::size_t r = 0; r < buckets.size(); ++r) {
        if (buckets[r].empty()) continue;
        std::fill(masked.coeffs.begin(), masked.coeffs.end(), cdouble(0));
        for (std::size_t flat : buckets[r]) masked.coeffs[flat] = s.coeffs[flat];
        auto piece = inverse_transform(masked);
        for (std::size_t i = 0; i < piece.size(); ++i) acc[i] += std::norm(piece.values[i]);
    }
    for (std::size_t i = 0; i < out.size(); ++i) out.values[i] = std::sqrt(acc[i]);
    return out;
}

double tensor_factorization_max_dev(const SampledField& f1, const SampledField& f2,
                                    const DyadicPartition& p1) {
    if (f1.domain.dim != 1 || f2.domain.dim != 1)
        throw std::invalid_argument("tensor_factorization_max_dev: inputs must be d=1");
    auto p2 = build_partition(2, p1.k_min, p1.k_max, f1.domain);
    auto lhs = square_function(tensor_product(f1, f2), p2);
    auto rhs = tensor_product(square_function(f1, p1), square_function(f2, p1));
    double worst = 0;
    for (std::size_t i = 0; i < lhs.size(); ++i)
        worst = std::max(worst, std::abs(lhs.values[i] - rhs.values[i]));
    return worst;
}

std::string to_json_string(const DyadicPartition& p) {
    nlohmann::json j;
    j["dim"] = p.dim;
    j["k_min"] = p.k_min;
    j["k_max"] = p.k_max;
    auto rects = nlohmann::json::array();
    for (const auto& r : p.rects) {
        auto axes = nlohmann::json::array();
        for (const auto& iv : r.axes)
            axes.push_back({{"sign", iv.sign}, {"exponent", iv.exponent}});
        rects.push_back(axes);
    }
    j["rectangles"] = rects;
    return j.dump(2);
}

}  // namespace lplab
