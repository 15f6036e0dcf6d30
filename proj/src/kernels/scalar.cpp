#include "expertrank/kernels.hpp"

#include <cmath>
#include <cstddef>

namespace expertrank::kernels::scalar {

std::pair<double, double> column_range(std::span<const double> column) {
    double lo = column[0];
    double hi = column[0];
    for (std::size_t i = 1; i < column.size(); ++i) {
        lo = column[i] < lo ? column[i] : lo;
        hi = column[i] > hi ? column[i] : hi;
    }
    return {lo, hi};
}

void minmax_normalize(std::span<const double> in, std::span<double> out) {
    if (in.empty()) {
        return;
    }
    const auto [lo, hi] = column_range(in);
    if (!(hi > lo)) {
        for (auto& v : out) {
            v = 0.0;
        }
        return;
    }
    const double span = hi - lo;
    for (std::size_t i = 0; i < in.size(); ++i) {
        out[i] = (in[i] - lo) / span;
    }
}

void accumulate(std::span<double> acc, std::span<const double> x) {
    for (std::size_t i = 0; i < acc.size(); ++i) {
        acc[i] += x[i];
    }
}

void count_nonzero(std::span<double> counts, std::span<const double> raw) {
    for (std::size_t i = 0; i < counts.size(); ++i) {
        counts[i] += raw[i] != 0.0 ? 1.0 : 0.0;
    }
}

void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out) {
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = a[i] * b[i];
    }
}

double l1_distance(std::span<const double> a, std::span<const double> b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sum += std::fabs(a[i] - b[i]);
    }
    return sum;
}

void bm25_term_weights(std::span<const double> freq, std::span<const double> len, double idf,
                       const Bm25Params& params, std::span<double> out) {
    const double k1_plus_1 = params.k1 + 1.0;
    const double one_minus_b = 1.0 - params.b;
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double t = freq[i] / len[i];
        const double norm = params.k1 * (one_minus_b + params.b * (len[i] / params.avg_length));
        out[i] = idf * ((k1_plus_1 * t) / (t + norm));
    }
}

void propagate(std::span<const std::uint32_t> offsets, std::span<const std::uint32_t> sources,
               std::span<const double> coef, std::span<const double> prev, double jump,
               double damping, std::span<double> next) {
    for (std::size_t node = 0; node < next.size(); ++node) {
        double inflow = 0.0;
        for (std::uint32_t e = offsets[node]; e < offsets[node + 1]; ++e) {
            inflow += coef[e] * prev[sources[e]];
        }
        next[node] = jump + damping * inflow;
    }
}

}  // namespace expertrank::kernels::scalar
