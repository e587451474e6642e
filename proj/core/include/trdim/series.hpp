// SPDX-License-Identifier: MIT
#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>

namespace trdim {

/// Integral bracket for a polynomial tail sum; `exact` is set when the sum
/// was over a finite range and computed directly.
struct TailBracket {
    double lower = 0.0;
    double upper = 0.0;
    std::optional<double> exact;
};

/// Brackets sum_{j=k+1}^{s} j^{-exponent} between
/// int_{k+1}^{s+1} x^{-r} dx and int_{k+1/2}^{s+1/2} x^{-r} dx.
/// For s = infinity requires exponent > 1; finite sums are accumulated from
/// the smallest term upward.
TailBracket tail_sum_poly(double exponent, std::int64_t k,
                          std::optional<std::int64_t> s);

/// Upper estimate of prod_{j=1}^{inf} (1 + scale * j^{-decay_exponent}):
/// the head product up to `cutoff` times exp of the integral tail bound
/// scale * (cutoff + 1/2)^{1-r} / (r - 1).
double infinite_product_upper(double decay_exponent, double scale,
                              std::int64_t cutoff = 1000);

/// prod_{j=1}^{s} (1 + x_j) - prod_{j=1}^{k} (1 + x_j) for x_j >= 0, with
/// s = increments.size(). Evaluated as H_k * expm1(sum_{j>k} log1p(x_j)),
/// which stays accurate when the tail contributes less than one ulp of the
/// head product.
double stable_product_difference(std::span<const double> increments, std::int64_t k);

namespace detail {

/// sum_{j=lo}^{hi} log1p(f(j)), accumulated with j descending so that for
/// nonincreasing f the smallest terms are added first.
template <class F>
double log1p_sum_desc(F&& f, std::int64_t lo, std::int64_t hi) {
    double acc = 0.0;
    for (std::int64_t j = hi; j >= lo; --j) acc += std::log1p(f(j));
    return acc;
}

/// Core of stable_product_difference over a generator of increments.
template <class F>
double product_difference(F&& f, std::int64_t k, std::int64_t s) {
    const double head_log = log1p_sum_desc(f, 1, k);
    const double tail_log = log1p_sum_desc(f, k + 1, s);
    return std::exp(head_log) * std::expm1(tail_log);
}

/// Compensated (Neumaier) accumulator.
struct StableSum {
    double sum = 0.0;
    double carry = 0.0;
    void add(double v) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            carry += (sum - t) + v;
        else
            carry += (v - t) + sum;
        sum = t;
    }
    [[nodiscard]] double get() const { return sum + carry; }
};

}  // namespace detail
}  // namespace trdim
