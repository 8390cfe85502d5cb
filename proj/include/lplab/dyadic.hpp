// The rough Littlewood-Paley decomposition: signed dyadic rectangles,
// frequency-restriction partial sums, and the dyadic square function.
#pragma once

#include "lplab/field.hpp"

#include <span>
#include <string>
#include <vector>

namespace lplab {

// One axis factor: [2^{k-1}, 2^k) for sign +1, (-2^k, -2^{k-1}] for sign -1.
struct DyadicInterval {
    int sign = 1;
    int exponent = 1;

    bool contains(double xi) const;
};

struct DyadicRectangle {
    std::vector<DyadicInterval> axes;

    bool contains(std::span<const double> xi) const;
};

struct DyadicPartition {
    int dim = 1;
    int k_min = 1;
    int k_max = 1;
    std::vector<DyadicRectangle> rects;

    // index of the rectangle containing xi, or -1 (origin or uncovered)
    int locate(std::span<const double> xi) const;
    bool covers(std::span<const double> xi) const;
};

// All d-fold products of the signed intervals with exponents in [k_min, k_max].
// Requires 2^{k_max} <= Nyquist of the domain.
DyadicPartition build_partition(int dim, int k_min, int k_max, const Domain& domain);

// Partition whose exponent range covers every representable nonzero grid
// frequency magnitude except the extreme -N/2 row (|xi| = Nyquist).
DyadicPartition full_partition(const Domain& domain);

// Frequency restriction of f to the rectangle.
SampledField partial_sum(const SampledField& f, const DyadicRectangle& r);

// S(f) = sqrt(sum over rectangles of |S_R f|^2).  The mean is silently
// excluded; any other uncovered frequency with a nonzero coefficient throws.
SampledField square_function(const SampledField& f, const DyadicPartition& p);

// max_x |S(f1 (x) f2) - S(f1) (x) S(f2)| over the grid, for d = 1 inputs and
// the product partition built from p1's exponent range.
double tensor_factorization_max_dev(const SampledField& f1, const SampledField& f2,
                                    const DyadicPartition& p1);

std::string to_json_string(const DyadicPartition& p);

}  // namespace lplab
