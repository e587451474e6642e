// SPDX-License-Identifier: MIT
#include <cmath>
#include <future>
#include <random>

#include "doctest.h"
#include "support/oracles.hpp"
#include "trdim/errors.hpp"
#include "trdim/truncation.hpp"

using namespace trdim;

namespace {
const ExponentConfig cfg22 = ExponentConfig::make(2.0, 2.0);
}

TEST_CASE("exact product tail") {
    const auto w = ProductWeights::poly_decay(1.0, 3);
    SUBCASE("hand-enumerated anchor") {
        const auto tb = tail_exact_product(w, cfg22, 1);
        REQUIRE(tb.raw_power.has_value());
        CHECK(testing::rel_close(*tb.raw_power, 0.28125, 1e-13));
        CHECK(tb.value == doctest::Approx(std::sqrt(0.28125)));
        CHECK(tb.exactness == Exactness::exact);
    }
    SUBCASE("empty tail") {
        CHECK(tail_exact_product(w, cfg22, 3).value == 0.0);
    }
    SUBCASE("preconditions") {
        CHECK_THROWS_AS(tail_exact_product(w, ExponentConfig::make(1.0, 2.0), 1), ModeMismatch);
        CHECK_THROWS_AS(tail_exact_product(ProductWeights::poly_decay(2.0), cfg22, 1),
                        InvalidArgument);
        CHECK_THROWS_AS(tail_exact_product(w, cfg22, 4), InvalidArgument);
    }
    SUBCASE("agrees with subset enumeration across configs") {
        std::mt19937_64 rng(31);
        for (int t = 0; t < 30; ++t) {
            const auto inst = testing::random_product_instance(rng, 14);
            const std::int64_t s = *inst.dimension();
            for (double p : {2.0, infinity}) {
                for (double q : {1.0, 2.0}) {
                    const auto cfg = ExponentConfig::make(p, q);
                    for (std::int64_t k = 0; k <= s; ++k) {
                        const double direct = *tail_exact_product(inst, cfg, k).raw_power;
                        const double oracle = testing::raw_tail_subset_sum(inst, cfg, k);
                        CHECK(testing::rel_close(direct, oracle, 1e-12));
                    }
                }
            }
        }
    }
}

TEST_CASE("product tail upper bound") {
    const auto w = ProductWeights::poly_decay(1.0, 3);
    SUBCASE("three-factor instance dominates the exact tail") {
        const auto bound = tail_bound_product(w, cfg22, 1);
        CHECK(bound.value == doctest::Approx(0.5424498).epsilon(1e-6));
        CHECK(bound.value >= tail_exact_product(w, cfg22, 1).value);
        CHECK(bound.exactness == Exactness::upper_bound);
    }
    SUBCASE("empty tail") {
        CHECK(tail_bound_product(w, cfg22, 3).value == 0.0);
    }
    SUBCASE("dominance on random instances") {
        std::mt19937_64 rng(37);
        for (int t = 0; t < 40; ++t) {
            const auto inst = testing::random_product_instance(rng, 12);
            const auto cfg = ExponentConfig::make((rng() % 2) ? 2.0 : infinity,
                                                  (rng() % 2) ? 1.0 : 2.0);
            for (std::int64_t k = 0; k <= *inst.dimension(); ++k)
                CHECK(tail_bound_product(inst, cfg, k).value >=
                      tail_exact_product(inst, cfg, k).value * (1.0 - 1e-12));
        }
    }
    SUBCASE("infinite decay requires a convergent tail") {
        CHECK_THROWS_AS(tail_bound_product(ProductWeights::poly_decay(0.4), cfg22, 1),
                        DivergentError);
        CHECK_NOTHROW(tail_bound_product(ProductWeights::poly_decay(3.0), cfg22, 1));
    }
}

TEST_CASE("p = 1 tail") {
    SUBCASE("closed form for polynomial decay") {
        const WeightModel w{ProductWeights::poly_decay(2.0)};
        CHECK(tail_p1(w, 3).value == doctest::Approx(0.0625));
        CHECK(tail_p1(w, 0).value == 1.0);
    }
    SUBCASE("finite model with full cut") {
        const WeightModel w{ProductWeights::poly_decay(2.0, 5)};
        CHECK(tail_p1(w, 5).value == 0.0);
    }
    SUBCASE("closed form equals enumeration on random instances") {
        std::mt19937_64 rng(41);
        for (int t = 0; t < 25; ++t) {
            const WeightModel w{testing::random_product_instance(rng, 10)};
            const std::int64_t s = *model_dimension(w);
            for (std::int64_t k = 0; k <= s; ++k)
                CHECK(tail_p1(w, k).value == doctest::Approx(max_weight_brute_force(w, k)));
        }
    }
    SUBCASE("POD models enumerate") {
        const WeightModel pod{PODWeights::make(1.0, 1.0, 1.0, 4.0, 8)};
        for (std::int64_t k = 0; k <= 8; ++k)
            CHECK(tail_p1(pod, k).value == doctest::Approx(max_weight_brute_force(pod, k)));
        const WeightModel big{PODWeights::make(1.0, 1.0, 1.0, 4.0, 30)};
        CHECK_THROWS_AS(tail_p1(big, 2), EnumerationLimitError);
    }
}

TEST_CASE("POD tail series factor") {
    const auto pod = PODWeights::make(1.0, 1.0, 1.0, 4.0, 15);
    SUBCASE("boundary cases") {
        CHECK(pod_T(pod, cfg22, 15) == 0.0);
        // single-term series: ((k+1)^{b p*} y)^{1/p*}
        const auto one = PODWeights::make(1.0, 1.0, 1.0, 4.0, 6);
        const double pst = 2.0, apst = 8.0;
        const double y = 1.0 / (2.0 * (apst - 1.0) * std::pow(5.5, apst - 1.0));
        CHECK(pod_T(one, cfg22, 5) ==
              doctest::Approx(std::sqrt(std::pow(6.0, 2.0) * y)).epsilon(1e-13));
        (void)pst;
    }
    SUBCASE("nested multiplication equals direct summation") {
        CHECK(testing::rel_close(pod_T(pod, cfg22, 5), testing::pod_T_direct(pod, cfg22, 5),
                                 1e-12));
        std::mt19937_64 rng(43);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        for (int t = 0; t < 40; ++t) {
            const auto cfg = ExponentConfig::make((rng() % 2) ? 2.0 : infinity, 2.0);
            const double b = unif(rng);
            const double a = std::max(1.0 / cfg.p_star, b) + 0.5 + 2.0 * unif(rng);
            const auto m = PODWeights::make(0.5 + unif(rng), 0.5 + unif(rng), b, a,
                                            5 + static_cast<std::int64_t>(rng() % 40));
            const std::int64_t k = static_cast<std::int64_t>(rng() % m.dimension);
            CHECK(testing::rel_close(pod_T(m, cfg, k), testing::pod_T_direct(m, cfg, k), 1e-12));
        }
    }
    SUBCASE("admissibility") {
        CHECK_THROWS_AS(pod_T(PODWeights::make(1, 1, 1, 0.4, 10), cfg22, 2),
                        AdmissibilityError);
        CHECK_THROWS_AS(pod_T(PODWeights::make(1, 1, 2.0, 1.5, 10), cfg22, 2),
                        AdmissibilityError);
    }
}

TEST_CASE("POD head factor") {
    SUBCASE("k = 2 closed structure") {
        const auto pod = PODWeights::make(1.0, 1.0, 1.0, 4.0, 100);
        const double lin = 0.5 * (1.0 + std::pow(2.0, -8.0));
        const double last = std::pow(2.0, -6.0) / 4.0;
        CHECK(pod_head_bound(pod, cfg22, 2) ==
              doctest::Approx(std::sqrt(1.0 + lin + last)).epsilon(1e-13));
    }
    SUBCASE("bound dominates the exact head") {
        const auto pod = PODWeights::make(1.0, 1.0, 1.0, 4.0, 100);
        for (std::int64_t k : {2, 3, 5, 8, 13, 21}) {
            CHECK(pod_head_bound(pod, cfg22, k) >= pod_head_exact(pod, cfg22, k));
        }
    }
    SUBCASE("b = 0 reduces toward the scaled product head") {
        // with no cardinality factor the exact head is a plain product
        const auto pod = PODWeights::make(1.0, 0.8, 0.0, 4.0, 50);
        for (std::int64_t k : {2, 4, 8}) {
            double head_log = 0.0;
            for (std::int64_t j = k; j >= 1; --j)
                head_log += std::log1p(std::pow(0.8 * std::pow(double(j), -4.0), 2.0) / 2.0);
            const double exact_head = std::exp(head_log / 2.0);
            const double bound = pod_head_bound(pod, cfg22, k);
            CHECK(testing::rel_close(pod_head_exact(pod, cfg22, k), exact_head, 1e-12));
            CHECK(bound >= exact_head);
            CHECK(bound <= exact_head * 1.05);  // integral-estimate slack stays small here
        }
    }
    SUBCASE("small cuts use the exact head") {
        const auto pod = PODWeights::make(0.5, 1.0, 1.0, 4.0, 10);
        CHECK(pod_head_bound(pod, cfg22, 0) == doctest::Approx(0.5));
        CHECK(pod_head_bound(pod, cfg22, 1) ==
              doctest::Approx(0.5 * std::sqrt(1.0 + 0.5)));
    }
}

TEST_CASE("POD tail bound and exact tails") {
    const auto pod = PODWeights::make(1.0, 1.0, 1.0, 4.0, 12);
    SUBCASE("full cut is zero") {
        CHECK(pod_tail_bound(pod, cfg22, 12).value == 0.0);
        CHECK(pod_tail_exact(pod, cfg22, 12).value == 0.0);
    }
    SUBCASE("exact evaluator agrees with subset enumeration") {
        for (double p : {2.0, infinity}) {
            const auto cfg = ExponentConfig::make(p, 2.0);
            for (std::int64_t k = 0; k <= 12; ++k) {
                const auto esp = pod_tail_exact(pod, cfg, k);
                const auto brute = tail_brute_force(WeightModel{pod}, cfg, k);
                CHECK(testing::rel_close(*esp.raw_power, *brute.raw_power, 1e-12));
            }
        }
    }
    SUBCASE("bound dominates enumeration for k >= 2") {
        std::mt19937_64 rng(47);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        for (int t = 0; t < 25; ++t) {
            const auto cfg = ExponentConfig::make((rng() % 2) ? 2.0 : infinity,
                                                  (rng() % 2) ? 1.0 : 2.0);
            const double b = unif(rng);
            const double a = std::max(1.0 / cfg.p_star, b) + 0.5 + 2.5 * unif(rng);
            const auto m = PODWeights::make(0.5 + unif(rng), 0.5 + unif(rng), b, a,
                                            4 + static_cast<std::int64_t>(rng() % 9));
            for (std::int64_t k = 2; k <= m.dimension; ++k) {
                const auto bound = pod_tail_bound(m, cfg, k);
                const auto brute = tail_brute_force(WeightModel{m}, cfg, k);
                CHECK(*bound.raw_power >= *brute.raw_power * (1.0 - 1e-12));
            }
        }
    }
}

TEST_CASE("brute-force tail") {
    SUBCASE("anchor and edges") {
        const WeightModel w{ProductWeights::poly_decay(1.0, 3)};
        const auto tb = tail_brute_force(w, cfg22, 1);
        CHECK(testing::rel_close(*tb.raw_power, 0.28125, 1e-13));
        CHECK(tail_brute_force(w, cfg22, 3).value == 0.0);
    }
    SUBCASE("enumeration cap") {
        const WeightModel w{ProductWeights::poly_decay(2.0, 23)};
        CHECK_THROWS_AS(tail_brute_force(w, cfg22, 1), EnumerationLimitError);
    }
    SUBCASE("p = 1 is rejected") {
        const WeightModel w{ProductWeights::poly_decay(2.0, 3)};
        CHECK_THROWS_AS(tail_brute_force(w, ExponentConfig::make(1.0, 2.0), 1), ModeMismatch);
    }
}

TEST_CASE("combined error") {
    TailBound tail{0.4, 0.16, 1, Exactness::exact};
    CHECK(combined_error(0.3, tail, ExponentConfig::make(2.0, 2.0)) == doctest::Approx(0.5));
    CHECK(combined_error(0.3, tail, ExponentConfig::make(1.0, 2.0)) == doctest::Approx(0.4));
    CHECK(combined_error(0.3, tail, ExponentConfig::make(infinity, 2.0)) ==
          doctest::Approx(0.7));
    CHECK(combined_error(0.0, tail, cfg22) == doctest::Approx(tail.value));
    TailBound zero{0.0, 0.0, 1, Exactness::exact};
    CHECK(combined_error(0.3, zero, cfg22) == doctest::Approx(0.3));
    CHECK_THROWS_AS(combined_error(-0.1, tail, cfg22), InvalidArgument);
}

TEST_CASE("truncated evaluators") {
    SUBCASE("anchored terms vanish") {
        Evaluator f = [](std::span<const double> x) { return x[0] + x[0] * x[1]; };
        auto g = truncate_function(f, 1, 2);
        for (double t : {0.0, 0.25, 0.5, 1.0}) {
            const double x[] = {t};
            CHECK(g(x) == doctest::Approx(t));
        }
    }
    SUBCASE("k = s is the identity") {
        Evaluator f = [](std::span<const double> x) { return x[0] * 2.0 + x[1]; };
        auto g = truncate_function(f, 2, 2);
        const double x[] = {0.3, 0.7};
        CHECK(g(x) == doctest::Approx(1.3));
    }
    SUBCASE("a pure product dies at the anchor") {
        Evaluator f = [](std::span<const double> x) { return x[0] * x[1] * x[2]; };
        auto g = truncate_function(f, 2, 3);
        const double x[] = {0.9, 0.8};
        CHECK(g(x) == 0.0);
    }
    SUBCASE("agrees with f on the anchored slice") {
        Evaluator f = [](std::span<const double> x) {
            double v = 1.0;
            for (double c : x) v *= (1.0 + c);
            return v;
        };
        auto g = truncate_function(f, 2, 4);
        const double x[] = {0.2, 0.4};
        const double full[] = {0.2, 0.4, 0.0, 0.0};
        CHECK(g(x) == doctest::Approx(f(full)));
    }
    SUBCASE("arity is validated") {
        Evaluator f = [](std::span<const double>) { return 0.0; };
        auto g = truncate_function(f, 1, 3);
        const double x[] = {0.1, 0.2};
        CHECK_THROWS_AS(g(x), InvalidArgument);
        CHECK_THROWS_AS(truncate_function(f, 4, 3), InvalidArgument);
    }
}

TEST_CASE("tail operations are nonincreasing in k") {
    const auto w = ProductWeights::poly_decay(2.0, 40);
    const auto pod = PODWeights::make(1.0, 1.0, 1.0, 4.0, 60);
    double prev_exact = infinity, prev_bound = infinity, prev_pod = infinity;
    for (std::int64_t k = 0; k <= 40; ++k) {
        const double e = tail_exact_product(w, cfg22, k).value;
        const double b = tail_bound_product(w, cfg22, k).value;
        CHECK(e <= prev_exact);
        CHECK(b <= prev_bound);
        prev_exact = e;
        prev_bound = b;
    }
    for (std::int64_t k = 2; k <= 60; ++k) {
        const double v = pod_tail_bound(pod, cfg22, k).value;
        CHECK(v <= prev_pod);
        prev_pod = v;
    }
}

TEST_CASE("evaluator probes match the one-shot operation") {
    const auto w = ProductWeights::poly_decay(3.0, 500);
    const ProductTailEvaluator eval(w, cfg22);
    for (std::int64_t k : {0, 1, 7, 100, 499, 500})
        CHECK(testing::rel_close(eval.raw_tail(k), *tail_exact_product(w, cfg22, k).raw_power,
                                 1e-12));
}

TEST_CASE("concurrent evaluation is stable") {
    const auto w = ProductWeights::poly_decay(2.0, 64);
    const double expect = *tail_exact_product(w, cfg22, 5).raw_power;
    std::vector<std::future<bool>> futs;
    for (int t = 0; t < 4; ++t)
        futs.push_back(std::async(std::launch::async, [&] {
            for (int i = 0; i < 200; ++i)
                if (*tail_exact_product(w, cfg22, 5).raw_power != expect) return false;
            return true;
        }));
    for (auto& f : futs) CHECK(f.get());
}
