#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "expertrank/kernels.hpp"

namespace expertrank::kernels {

namespace {

Isa detect() {
#if defined(EXPERTRANK_HAVE_AVX2)
    if (const char* forced = std::getenv("EXPERTRANK_ISA")) {
        if (std::string_view(forced) == "scalar") {
            return Isa::scalar;
        }
    }
    __builtin_cpu_init();
    if (__builtin_cpu_supports("avx2")) {
        return Isa::avx2;
    }
#endif
    return Isa::scalar;
}

std::atomic<Isa>& selected() {
    static std::atomic<Isa> isa{detect()};
    return isa;
}

bool use_avx2() {
#if defined(EXPERTRANK_HAVE_AVX2)
    return selected().load(std::memory_order_relaxed) == Isa::avx2;
#else
    return false;
#endif
}

}  // namespace

std::string_view isa_name(Isa isa) {
    switch (isa) {
        case Isa::scalar:
            return "scalar";
        case Isa::avx2:
            return "avx2";
    }
    return "unknown";
}

Isa active_isa() { return selected().load(); }

bool isa_supported(Isa isa) {
    if (isa == Isa::scalar) {
        return true;
    }
#if defined(EXPERTRANK_HAVE_AVX2)
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

void set_active_isa(Isa isa) {
    if (!isa_supported(isa)) {
        throw std::invalid_argument("instruction set not supported on this CPU: " +
                                    std::string(isa_name(isa)));
    }
    selected().store(isa);
}

#if defined(EXPERTRANK_HAVE_AVX2)
#define EXPERTRANK_DISPATCH(fn, ...) \
    (use_avx2() ? avx2::fn(__VA_ARGS__) : scalar::fn(__VA_ARGS__))
#else
#define EXPERTRANK_DISPATCH(fn, ...) scalar::fn(__VA_ARGS__)
#endif

std::pair<double, double> column_range(std::span<const double> column) {
    if (column.empty()) {
        throw std::invalid_argument("column_range: empty column");
    }
    return EXPERTRANK_DISPATCH(column_range, column);
}

void minmax_normalize(std::span<const double> in, std::span<double> out) {
    if (in.size() != out.size()) {
        throw std::invalid_argument("minmax_normalize: size mismatch");
    }
    EXPERTRANK_DISPATCH(minmax_normalize, in, out);
}

void accumulate(std::span<double> acc, std::span<const double> x) {
    if (acc.size() != x.size()) {
        throw std::invalid_argument("accumulate: size mismatch");
    }
    EXPERTRANK_DISPATCH(accumulate, acc, x);
}

void count_nonzero(std::span<double> counts, std::span<const double> raw) {
    if (counts.size() != raw.size()) {
        throw std::invalid_argument("count_nonzero: size mismatch");
    }
    EXPERTRANK_DISPATCH(count_nonzero, counts, raw);
}

void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out) {
    if (a.size() != out.size() || b.size() != out.size()) {
        throw std::invalid_argument("multiply: size mismatch");
    }
    EXPERTRANK_DISPATCH(multiply, a, b, out);
}

double l1_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("l1_distance: size mismatch");
    }
    return EXPERTRANK_DISPATCH(l1_distance, a, b);
}

void bm25_term_weights(std::span<const double> freq, std::span<const double> len, double idf,
                       const Bm25Params& params, std::span<double> out) {
    if (freq.size() != out.size() || len.size() != out.size()) {
        throw std::invalid_argument("bm25_term_weights: size mismatch");
    }
    EXPERTRANK_DISPATCH(bm25_term_weights, freq, len, idf, params, out);
}

void propagate(std::span<const std::uint32_t> offsets, std::span<const std::uint32_t> sources,
               std::span<const double> coef, std::span<const double> prev, double jump,
               double damping, std::span<double> next) {
    if (offsets.size() != next.size() + 1 || prev.size() != next.size() ||
        sources.size() != coef.size()) {
        throw std::invalid_argument("propagate: size mismatch");
    }
    EXPERTRANK_DISPATCH(propagate, offsets, sources, coef, prev, jump, damping, next);
}

#undef EXPERTRANK_DISPATCH

}  // namespace expertrank::kernels
