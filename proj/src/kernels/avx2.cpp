// Compiled with -mavx2 only; never called unless the CPU reports AVX2.

#include "expertrank/kernels.hpp"

#include <immintrin.h>

#include <cmath>
#include <cstddef>

namespace expertrank::kernels::avx2 {

namespace {

constexpr std::size_t kLanes = 4;

double horizontal_sum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d pair = _mm_add_pd(lo, hi);
    const __m128d swapped = _mm_unpackhi_pd(pair, pair);
    return _mm_cvtsd_f64(_mm_add_sd(pair, swapped));
}

}  // namespace

std::pair<double, double> column_range(std::span<const double> column) {
    const std::size_t n = column.size();
    const double* data = column.data();
    double lo = data[0];
    double hi = data[0];
    std::size_t i = 0;
    if (n >= kLanes) {
        __m256d vlo = _mm256_loadu_pd(data);
        __m256d vhi = vlo;
        for (i = kLanes; i + kLanes <= n; i += kLanes) {
            const __m256d v = _mm256_loadu_pd(data + i);
            vlo = _mm256_min_pd(vlo, v);
            vhi = _mm256_max_pd(vhi, v);
        }
        alignas(32) double lanes_lo[kLanes];
        alignas(32) double lanes_hi[kLanes];
        _mm256_store_pd(lanes_lo, vlo);
        _mm256_store_pd(lanes_hi, vhi);
        lo = lanes_lo[0];
        hi = lanes_hi[0];
        for (std::size_t k = 1; k < kLanes; ++k) {
            lo = lanes_lo[k] < lo ? lanes_lo[k] : lo;
            hi = lanes_hi[k] > hi ? lanes_hi[k] : hi;
        }
    }
    for (; i < n; ++i) {
        lo = data[i] < lo ? data[i] : lo;
        hi = data[i] > hi ? data[i] : hi;
    }
    return {lo, hi};
}

void minmax_normalize(std::span<const double> in, std::span<double> out) {
    if (in.empty()) {
        return;
    }
    const std::size_t n = in.size();
    const auto [lo, hi] = column_range(in);
    if (!(hi > lo)) {
        const __m256d zero = _mm256_setzero_pd();
        std::size_t i = 0;
        for (; i + kLanes <= n; i += kLanes) {
            _mm256_storeu_pd(out.data() + i, zero);
        }
        for (; i < n; ++i) {
            out[i] = 0.0;
        }
        return;
    }
    const double span = hi - lo;
    const __m256d vlo = _mm256_set1_pd(lo);
    const __m256d vspan = _mm256_set1_pd(span);
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) {
        const __m256d v = _mm256_loadu_pd(in.data() + i);
        _mm256_storeu_pd(out.data() + i, _mm256_div_pd(_mm256_sub_pd(v, vlo), vspan));
    }
    for (; i < n; ++i) {
        out[i] = (in[i] - lo) / span;
    }
}

void accumulate(std::span<double> acc, std::span<const double> x) {
    const std::size_t n = acc.size();
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) {
        const __m256d a = _mm256_loadu_pd(acc.data() + i);
        const __m256d b = _mm256_loadu_pd(x.data() + i);
        _mm256_storeu_pd(acc.data() + i, _mm256_add_pd(a, b));
    }
    for (; i < n; ++i) {
        acc[i] += x[i];
    }
}

void count_nonzero(std::span<double> counts, std::span<const double> raw) {
    const std::size_t n = counts.size();
    const __m256d zero = _mm256_setzero_pd();
    const __m256d one = _mm256_set1_pd(1.0);
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) {
        const __m256d v = _mm256_loadu_pd(raw.data() + i);
        const __m256d nonzero = _mm256_cmp_pd(v, zero, _CMP_NEQ_UQ);
        const __m256d c = _mm256_loadu_pd(counts.data() + i);
        _mm256_storeu_pd(counts.data() + i, _mm256_add_pd(c, _mm256_and_pd(nonzero, one)));
    }
    for (; i < n; ++i) {
        counts[i] += raw[i] != 0.0 ? 1.0 : 0.0;
    }
}

void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out) {
    const std::size_t n = out.size();
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) {
        const __m256d va = _mm256_loadu_pd(a.data() + i);
        const __m256d vb = _mm256_loadu_pd(b.data() + i);
        _mm256_storeu_pd(out.data() + i, _mm256_mul_pd(va, vb));
    }
    for (; i < n; ++i) {
        out[i] = a[i] * b[i];
    }
}

double l1_distance(std::span<const double> a, std::span<const double> b) {
    const std::size_t n = a.size();
    const __m256d sign_mask = _mm256_set1_pd(-0.0);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a.data() + i), _mm256_loadu_pd(b.data() + i));
        acc = _mm256_add_pd(acc, _mm256_andnot_pd(sign_mask, d));
    }
    double sum = horizontal_sum(acc);
    for (; i < n; ++i) {
        sum += std::fabs(a[i] - b[i]);
    }
    return sum;
}

void bm25_term_weights(std::span<const double> freq, std::span<const double> len, double idf,
                       const Bm25Params& params, std::span<double> out) {
    const std::size_t n = out.size();
    const double k1_plus_1 = params.k1 + 1.0;
    const double one_minus_b = 1.0 - params.b;
    const __m256d vk1p1 = _mm256_set1_pd(k1_plus_1);
    const __m256d vk1 = _mm256_set1_pd(params.k1);
    const __m256d vomb = _mm256_set1_pd(one_minus_b);
    const __m256d vb = _mm256_set1_pd(params.b);
    const __m256d vavg = _mm256_set1_pd(params.avg_length);
    const __m256d vidf = _mm256_set1_pd(idf);
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) {
        const __m256d f = _mm256_loadu_pd(freq.data() + i);
        const __m256d l = _mm256_loadu_pd(len.data() + i);
        const __m256d t = _mm256_div_pd(f, l);
        const __m256d norm =
            _mm256_mul_pd(vk1, _mm256_add_pd(vomb, _mm256_mul_pd(vb, _mm256_div_pd(l, vavg))));
        const __m256d w = _mm256_div_pd(_mm256_mul_pd(vk1p1, t), _mm256_add_pd(t, norm));
        _mm256_storeu_pd(out.data() + i, _mm256_mul_pd(vidf, w));
    }
    for (; i < n; ++i) {
        const double t = freq[i] / len[i];
        const double norm = params.k1 * (one_minus_b + params.b * (len[i] / params.avg_length));
        out[i] = idf * ((k1_plus_1 * t) / (t + norm));
    }
}

void propagate(std::span<const std::uint32_t> offsets, std::span<const std::uint32_t> sources,
               std::span<const double> coef, std::span<const double> prev, double jump,
               double damping, std::span<double> next) {
    const double* base = prev.data();
    for (std::size_t node = 0; node < next.size(); ++node) {
        std::uint32_t e = offsets[node];
        const std::uint32_t end = offsets[node + 1];
        double inflow = 0.0;
        if (end - e >= kLanes) {
            __m256d acc = _mm256_setzero_pd();
            for (; e + kLanes <= end; e += kLanes) {
                const __m128i idx =
                    _mm_loadu_si128(reinterpret_cast<const __m128i*>(sources.data() + e));
                const __m256d gathered = _mm256_i32gather_pd(base, idx, 8);
                acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(coef.data() + e), gathered));
            }
            inflow = horizontal_sum(acc);
        }
        for (; e < end; ++e) {
            inflow += coef[e] * prev[sources[e]];
        }
        next[node] = jump + damping * inflow;
    }
}

}  // namespace expertrank::kernels::avx2
