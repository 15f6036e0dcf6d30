#include <catch_amalgamated.hpp>

#include <cmath>
#include <cstring>
#include <random>
#include <vector>

#include "expertrank/kernels.hpp"

namespace k = expertrank::kernels;

namespace {

std::vector<double> random_column(std::mt19937_64& rng, std::size_t n, bool with_zeros) {
    std::uniform_real_distribution<double> u(-50.0, 50.0);
    std::vector<double> v(n);
    for (auto& x : v) {
        x = (with_zeros && rng() % 4 == 0) ? 0.0 : u(rng);
    }
    return v;
}

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
    return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("scalar kernels on small inputs") {
    std::vector<double> in{2, 4, 6}, out(3);
    k::scalar::minmax_normalize(in, out);
    CHECK(out == std::vector<double>{0.0, 0.5, 1.0});

    std::vector<double> flat{5, 5, 5};
    k::scalar::minmax_normalize(flat, out);
    CHECK(out == std::vector<double>{0.0, 0.0, 0.0});

    std::vector<double> counts(3, 0.0);
    k::scalar::count_nonzero(counts, std::vector<double>{0.0, -0.0, 3.0});
    CHECK(counts == std::vector<double>{0.0, 0.0, 1.0});

    CHECK(k::scalar::l1_distance(std::vector<double>{1, 2}, std::vector<double>{2, 0}) == 3.0);
    CHECK(k::scalar::column_range(std::vector<double>{3, -1, 7}) == std::pair{-1.0, 7.0});
}

TEST_CASE("public wrappers reject mismatched sizes") {
    std::vector<double> a(3), b(4);
    CHECK_THROWS_AS(k::accumulate(a, b), std::invalid_argument);
    CHECK_THROWS_AS(k::multiply(a, a, b), std::invalid_argument);
    CHECK_THROWS_AS(k::column_range(std::span<const double>{}), std::invalid_argument);
}

#if defined(EXPERTRANK_HAVE_AVX2)

TEST_CASE("avx2 kernels match the scalar reference") {
    if (!k::isa_supported(k::Isa::avx2)) {
        SKIP("cpu has no avx2");
    }
    std::mt19937_64 rng(11);
    for (std::size_t n = 0; n <= 67; ++n) {
        INFO("n = " << n);
        const auto a = random_column(rng, n, true);
        const auto b = random_column(rng, n, true);

        if (n > 0) {
            CHECK(k::scalar::column_range(a) == k::avx2::column_range(a));
        }

        std::vector<double> s(n), v(n);
        if (n > 0) {
            k::scalar::minmax_normalize(a, s);
            k::avx2::minmax_normalize(a, v);
            CHECK(same_bits(s, v));
            const std::vector<double> flat(n, 2.5);
            k::scalar::minmax_normalize(flat, s);
            k::avx2::minmax_normalize(flat, v);
            CHECK(same_bits(s, v));
        }

        s = a;
        v = a;
        k::scalar::accumulate(s, b);
        k::avx2::accumulate(v, b);
        CHECK(same_bits(s, v));

        s.assign(n, 1.0);
        v.assign(n, 1.0);
        k::scalar::count_nonzero(s, a);
        k::avx2::count_nonzero(v, a);
        CHECK(same_bits(s, v));

        k::scalar::multiply(a, b, s);
        k::avx2::multiply(a, b, v);
        CHECK(same_bits(s, v));

        const double ls = k::scalar::l1_distance(a, b);
        const double lv = k::avx2::l1_distance(a, b);
        CHECK(std::abs(ls - lv) <= 1e-12 * std::max(1.0, ls));

        std::vector<double> freq(n), len(n);
        for (std::size_t i = 0; i < n; ++i) {
            len[i] = static_cast<double>(1 + rng() % 40);
            freq[i] = static_cast<double>(rng() % (static_cast<unsigned>(len[i]) + 1));
        }
        const k::Bm25Params params{1.2, 0.75, 7.3};
        k::scalar::bm25_term_weights(freq, len, 1.7, params, s);
        k::avx2::bm25_term_weights(freq, len, 1.7, params, v);
        CHECK(same_bits(s, v));
    }
}

TEST_CASE("avx2 propagate matches the scalar reference to rounding") {
    if (!k::isa_supported(k::Isa::avx2)) {
        SKIP("cpu has no avx2");
    }
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 1 + rng() % 120;
        std::vector<std::uint32_t> offsets{0}, sources;
        std::vector<double> coef;
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t deg = rng() % 13;
            for (std::size_t e = 0; e < deg; ++e) {
                sources.push_back(static_cast<std::uint32_t>(rng() % n));
                coef.push_back(1.0 / static_cast<double>(1 + rng() % 5));
            }
            offsets.push_back(static_cast<std::uint32_t>(sources.size()));
        }
        std::vector<double> prev(n);
        for (auto& p : prev) {
            p = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
        }
        std::vector<double> s(n), v(n);
        k::scalar::propagate(offsets, sources, coef, prev, 0.5 / n, 0.5, s);
        k::avx2::propagate(offsets, sources, coef, prev, 0.5 / n, 0.5, v);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(std::abs(s[i] - v[i]) <= 1e-14 * std::max(1.0, s[i]));
        }
    }
}

TEST_CASE("dispatch can be forced to the reference path") {
    const auto before = k::active_isa();
    k::set_active_isa(k::Isa::scalar);
    CHECK(k::active_isa() == k::Isa::scalar);
    k::set_active_isa(before);
    CHECK(k::active_isa() == before);
}

#endif
