#pragma once

// Data-parallel inner loops used by the scoring and fusion stages.
//
// Every kernel has a scalar reference implementation and, on x86-64, an AVX2
// variant. The variant is picked once at startup from the CPU feature bits;
// set EXPERTRANK_ISA=scalar in the environment to force the reference path.
//
// Elementwise kernels (normalize, accumulate, count, multiply, bm25 weights)
// are bit-identical across variants. Reductions (l1_distance, the PageRank
// gather) reassociate sums and agree only to rounding.

#include <cstdint>
#include <span>
#include <string_view>
#include <utility>

namespace expertrank::kernels {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);

/// Variant selected for this process.
Isa active_isa();

/// True when the running CPU can execute `isa`.
bool isa_supported(Isa isa);

/// Forces a variant; used by the equivalence tests. Throws std::invalid_argument
/// when the CPU cannot run it.
void set_active_isa(Isa isa);

struct Bm25Params {
    double k1 = 1.2;
    double b = 0.75;
    double avg_length = 1.0;
};

/// min and max of a non-empty column.
std::pair<double, double> column_range(std::span<const double> column);

/// out[i] = (in[i] - min) / (max - min); all zeros when max == min.
void minmax_normalize(std::span<const double> in, std::span<double> out);

/// acc[i] += x[i]
void accumulate(std::span<double> acc, std::span<const double> x);

/// counts[i] += (raw[i] != 0.0 ? 1 : 0)
void count_nonzero(std::span<double> counts, std::span<const double> raw);

/// out[i] = a[i] * b[i]
void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out);

/// Sum of |a[i] - b[i]|.
double l1_distance(std::span<const double> a, std::span<const double> b);

/// BM25 term-frequency component with length-normalized frequency:
///   t = freq / len
///   out[i] = idf * (k1 + 1) * t / (t + k1 * (1 - b + b * len / avg_length))
/// len[i] must be positive.
void bm25_term_weights(std::span<const double> freq, std::span<const double> len, double idf,
                       const Bm25Params& params, std::span<double> out);

/// One sweep of the weighted random-jump recurrence over a CSR in-edge list:
///   next[i] = jump + damping * sum_{e in row i} coef[e] * prev[source[e]]
/// offsets has next.size() + 1 entries.
void propagate(std::span<const std::uint32_t> offsets, std::span<const std::uint32_t> sources,
               std::span<const double> coef, std::span<const double> prev, double jump,
               double damping, std::span<double> next);

namespace scalar {
std::pair<double, double> column_range(std::span<const double> column);
void minmax_normalize(std::span<const double> in, std::span<double> out);
void accumulate(std::span<double> acc, std::span<const double> x);
void count_nonzero(std::span<double> counts, std::span<const double> raw);
void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out);
double l1_distance(std::span<const double> a, std::span<const double> b);
void bm25_term_weights(std::span<const double> freq, std::span<const double> len, double idf,
                       const Bm25Params& params, std::span<double> out);
void propagate(std::span<const std::uint32_t> offsets, std::span<const std::uint32_t> sources,
               std::span<const double> coef, std::span<const double> prev, double jump,
               double damping, std::span<double> next);
}  // namespace scalar

#if defined(EXPERTRANK_HAVE_AVX2)
namespace avx2 {
std::pair<double, double> column_range(std::span<const double> column);
void minmax_normalize(std::span<const double> in, std::span<double> out);
void accumulate(std::span<double> acc, std::span<const double> x);
void count_nonzero(std::span<double> counts, std::span<const double> raw);
void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out);
double l1_distance(std::span<const double> a, std::span<const double> b);
void bm25_term_weights(std::span<const double> freq, std::span<const double> len, double idf,
                       const Bm25Params& params, std::span<double> out);
void propagate(std::span<const std::uint32_t> offsets, std::span<const std::uint32_t> sources,
               std::span<const double> coef, std::span<const double> prev, double jump,
               double damping, std::span<double> next);
}  // namespace avx2
#endif

}  // namespace expertrank::kernels
