// SPDX-License-Identifier: MIT
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"
#include "support/oracles.hpp"
#include "trdim/errors.hpp"
#include "trdim/series.hpp"
#include "trdim/weights.hpp"

using namespace trdim;

TEST_CASE("construction validates the standing assumptions") {
    CHECK_THROWS_AS(ProductWeights::poly_decay(0.0), InvalidArgument);
    CHECK_THROWS_AS(ProductWeights::poly_decay(-2.0), InvalidArgument);
    CHECK_THROWS_AS(ProductWeights::explicit_sequence({}), InvalidArgument);
    CHECK_THROWS_AS(ProductWeights::explicit_sequence({0.5, 0.7}), InvalidArgument);
    CHECK_THROWS_AS(ProductWeights::explicit_sequence({1.2, 0.7}), InvalidArgument);
    CHECK_THROWS_AS(ProductWeights::explicit_sequence({0.5, 0.0}), InvalidArgument);
    CHECK_NOTHROW(ProductWeights::explicit_sequence({1.0, 1.0, 0.3}));
    CHECK_THROWS_AS(PODWeights::make(0.0, 1.0, 1.0, 4.0, 10), InvalidArgument);
    CHECK_THROWS_AS(PODWeights::make(1.0, 1.0, -0.5, 4.0, 10), InvalidArgument);
    CHECK_THROWS_AS(PODWeights::make(1.0, 1.0, 1.0, 4.0, 0), InvalidArgument);
}

TEST_CASE("subset weights") {
    const WeightModel poly{ProductWeights::poly_decay(2.0, 10)};
    const WeightModel pod{PODWeights::make(1.0, 1.0, 1.0, 4.0, 10)};
    const std::int64_t u12[] = {1, 2};
    CHECK(subset_weight(poly, u12) == doctest::Approx(0.25));
    CHECK(subset_weight(pod, u12) == doctest::Approx(0.125));
    CHECK(subset_weight(poly, {}) == 1.0);
    CHECK(subset_weight(pod, {}) == 1.0);  // c1 = 1
    const WeightModel pod2{PODWeights::make(0.7, 1.0, 1.0, 4.0, 10)};
    CHECK(subset_weight(pod2, {}) == doctest::Approx(0.7));

    const std::int64_t bad[] = {1, 11};
    CHECK_THROWS_AS((void)subset_weight(poly, bad), InvalidArgument);
    const std::int64_t unsorted[] = {2, 1};
    CHECK_THROWS_AS((void)subset_weight(poly, unsorted), InvalidArgument);
}

TEST_CASE("product weights are multiplicative over disjoint sets") {
    std::mt19937_64 rng(7);
    const auto w = testing::random_product_instance(rng, 12);
    const WeightModel model{w};
    const std::int64_t s = *w.dimension();
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::int64_t> u, v;
        for (std::int64_t j = 1; j <= s; ++j) {
            switch (rng() % 3) {
                case 0: u.push_back(j); break;
                case 1: v.push_back(j); break;
                default: break;
            }
        }
        std::vector<std::int64_t> uv = u;
        uv.insert(uv.end(), v.begin(), v.end());
        std::sort(uv.begin(), uv.end());
        CHECK(subset_weight(model, uv) ==
              doctest::Approx(subset_weight(model, u) * subset_weight(model, v))
                  .epsilon(1e-13));
    }
}

TEST_CASE("adding a coordinate never increases a product weight") {
    const WeightModel model{ProductWeights::poly_decay(1.0, 8)};
    std::vector<std::int64_t> u = {2, 5};
    const double base = subset_weight(model, u);
    for (std::int64_t j : {1, 3, 7, 8}) {
        auto v = u;
        v.push_back(j);
        std::sort(v.begin(), v.end());
        CHECK(subset_weight(model, v) <= base);
    }
}

TEST_CASE("kernel evaluation") {
    SUBCASE("one variable, full weight") {
        const auto w = ProductWeights::explicit_sequence({1.0});
        const double x[] = {1.0};
        CHECK(kernel_eval(w, x, x) == doctest::Approx(2.0));
    }
    SUBCASE("anchored at zero") {
        const auto w = ProductWeights::poly_decay(2.0, 5);
        const std::vector<double> zero(5, 0.0), other = {0.1, 0.9, 0.5, 0.3, 1.0};
        CHECK(kernel_eval(w, zero, other) == 1.0);
    }
    SUBCASE("symmetry and diagonal lower bound") {
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        const auto w = ProductWeights::poly_decay(1.0, 6);
        for (int t = 0; t < 20; ++t) {
            std::vector<double> x(6), y(6);
            for (auto& v : x) v = unif(rng);
            for (auto& v : y) v = unif(rng);
            CHECK(kernel_eval(w, x, y) == doctest::Approx(kernel_eval(w, y, x)));
            CHECK(kernel_eval(w, x, x) >= 1.0);
        }
    }
    SUBCASE("domain validation") {
        const auto w = ProductWeights::poly_decay(2.0, 2);
        const double bad[] = {0.5, 1.5};
        const double ok[] = {0.5, 0.5};
        CHECK_THROWS_AS((void)kernel_eval(w, bad, ok), InvalidArgument);
        const double shorter[] = {0.5};
        CHECK_THROWS_AS((void)kernel_eval(w, shorter, shorter), InvalidArgument);
    }
}

TEST_CASE("product kernel equals the subset-sum kernel") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (std::int64_t s : {1, 2, 3, 5, 8, 12}) {
        const auto w = ProductWeights::poly_decay(1.0, s);
        std::vector<double> x(static_cast<std::size_t>(s)), y(x);
        for (auto& v : x) v = unif(rng);
        for (auto& v : y) v = unif(rng);
        const double direct = kernel_eval(w, x, y);
        const double oracle = testing::kernel_subset_sum(w, x, y);
        CHECK(testing::rel_close(direct, oracle, 1e-12));
    }
    // one larger exhaustive point (2^20 subsets)
    const auto w = ProductWeights::poly_decay(2.0, 20);
    std::vector<double> ones(20, 1.0);
    CHECK(testing::rel_close(kernel_eval(w, ones, ones),
                             testing::kernel_subset_sum(w, ones, ones), 1e-12));
}

TEST_CASE("weight sum") {
    SUBCASE("finite") {
        const auto w = ProductWeights::poly_decay(2.0, 2);
        const auto r = weight_sum(w);
        CHECK(r.value == doctest::Approx(2.5));
        CHECK(r.exactness == Exactness::exact);
    }
    SUBCASE("infinite, summable: estimate is bracketed by a rigorous interval") {
        const auto w = ProductWeights::poly_decay(2.0);
        const auto r = weight_sum(w);
        CHECK(r.exactness == Exactness::upper_bound);
        // partial product over 10^6 terms plus integral tail bracket
        double head_log = 0.0;
        for (std::int64_t j = 1000000; j >= 1; --j)
            head_log += std::log1p(std::pow(static_cast<double>(j), -2.0));
        const auto tail = tail_sum_poly(2.0, 1000000, std::nullopt);
        const double lower = std::exp(head_log);
        const double upper = std::exp(head_log + tail.upper);
        CHECK(r.value >= lower);
        // the J=1000 estimate carries its own (tiny) integral slack beyond
        // the tighter 10^6-term bracket
        CHECK(r.value <= upper * (1.0 + 1e-9));
    }
    SUBCASE("harmonic weights diverge") {
        CHECK_THROWS_AS((void)weight_sum(ProductWeights::poly_decay(1.0)), DivergentError);
    }
}

TEST_CASE("explicit weights load from file") {
    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path();
    const auto good = dir / "trdim_gammas_ok.txt";
    {
        std::ofstream out(good);
        out << "1.0\n0.5\n\n0.25\n";
    }
    const auto w = ProductWeights::load(good);
    REQUIRE(w.dimension() == 3);
    CHECK(w.gamma(2) == doctest::Approx(0.5));
    fs::remove(good);

    const auto bad = dir / "trdim_gammas_bad.txt";
    {
        std::ofstream out(bad);
        out << "1.0\nnot-a-number\n";
    }
    CHECK_THROWS_AS(ProductWeights::load(bad), InvalidArgument);
    fs::remove(bad);
    CHECK_THROWS_AS(ProductWeights::load(dir / "trdim_missing.txt"), InvalidArgument);
}
