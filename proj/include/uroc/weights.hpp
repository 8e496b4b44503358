#pragma once

#include <vector>

#include "uroc/detail/int128.hpp"
#include "uroc/sample.hpp"

namespace uroc {

/// Class-count weights w_c over the m-1 binarization thresholds. Numerators
/// and the shared denominator are exact; the denominator can exceed 64 bits
/// on large datasets, so everything accumulates in 128-bit integers.
struct WeightVector {
    std::vector<double> weights;       // size m-1, sum to one
    std::vector<int128> numerators;    // N_c * (n - N_c) with N_c = n_1 + ... + n_c
    int128 denominator = 0;            // sum over c of the numerators
};

inline WeightVector class_weights(const ClassDecomposition& d) {
    const auto m = static_cast<std::size_t>(d.class_count());
    const int128 n = d.size();
    WeightVector w;
    w.numerators.reserve(m - 1);
    int128 cum = 0;
    for (std::size_t c = 0; c + 1 < m; ++c) {
        cum = detail::checked_add(cum, d.class_counts[c]);
        // sum_{i<=c} n_i * sum_{i>c} n_i; also the c-th term of the
        // telescoped double sum sum_{i<j} (j-i) n_i n_j
        const int128 num = detail::checked_mul(cum, n - cum);
        w.numerators.push_back(num);
        w.denominator = detail::checked_add(w.denominator, num);
    }
    w.weights.reserve(m - 1);
    const double den = detail::to_double(w.denominator);
    for (const int128 num : w.numerators)
        w.weights.push_back(detail::to_double(num) / den);
    return w;
}

}  // namespace uroc
