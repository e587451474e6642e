// SPDX-License-Identifier: MIT
#include "trdim/series.hpp"

#include <cmath>
#include <string>

#include "trdim/errors.hpp"

namespace trdim {

namespace {

// int_a^b x^{-r} dx, b possibly infinite; requires r > 1 when b is infinite.
double power_integral(double r, double a, double b) {
    if (r == 1.0) return std::log(b / a);
    // (a^{1-r} - b^{1-r}) / (r - 1), stable for both r > 1 and r < 1
    const double fa = std::pow(a, 1.0 - r);
    const double fb = std::isinf(b) ? 0.0 : std::pow(b, 1.0 - r);
    return (fa - fb) / (r - 1.0);
}

}  // namespace

TailBracket tail_sum_poly(double exponent, std::int64_t k, std::optional<std::int64_t> s) {
    if (!(exponent > 0.0))
        throw InvalidArgument("tail_sum_poly: exponent must be positive");
    if (k < 0) throw InvalidArgument("tail_sum_poly: k must be nonnegative");
    if (!s) {
        if (exponent <= 1.0)
            throw DivergentError("tail_sum_poly: sum_{j>k} j^{-r} diverges for r <= 1");
        TailBracket br;
        const double kk = static_cast<double>(k);
        br.lower = power_integral(exponent, kk + 1.0, std::numeric_limits<double>::infinity());
        br.upper = power_integral(exponent, kk + 0.5, std::numeric_limits<double>::infinity());
        return br;
    }
    if (k > *s) throw InvalidArgument("tail_sum_poly: k exceeds s");
    TailBracket br;
    double sum = 0.0;
    for (std::int64_t j = *s; j > k; --j) sum += std::pow(static_cast<double>(j), -exponent);
    br.exact = sum;
    const double kk = static_cast<double>(k);
    const double ss = static_cast<double>(*s);
    br.lower = power_integral(exponent, kk + 1.0, ss + 1.0);
    br.upper = power_integral(exponent, kk + 0.5, ss + 0.5);
    return br;
}

double infinite_product_upper(double decay_exponent, double scale, std::int64_t cutoff) {
    if (!(decay_exponent > 1.0))
        throw DivergentError("infinite_product_upper: requires decay exponent > 1");
    if (!(scale > 0.0)) throw InvalidArgument("infinite_product_upper: scale must be positive");
    if (cutoff < 1) throw InvalidArgument("infinite_product_upper: cutoff must be >= 1");
    const double head_log = detail::log1p_sum_desc(
        [&](std::int64_t j) { return scale * std::pow(static_cast<double>(j), -decay_exponent); },
        1, cutoff);
    const double tail = scale * std::pow(static_cast<double>(cutoff) + 0.5, 1.0 - decay_exponent) /
                        (decay_exponent - 1.0);
    return std::exp(head_log + tail);
}

double stable_product_difference(std::span<const double> increments, std::int64_t k) {
    const auto s = static_cast<std::int64_t>(increments.size());
    if (k < 0 || k > s)
        throw InvalidArgument("stable_product_difference: k must lie in [0, s]");
    for (double x : increments)
        if (!(x >= 0.0))
            throw InvalidArgument("stable_product_difference: increments must be >= 0");
    return detail::product_difference(
        [&](std::int64_t j) { return increments[static_cast<std::size_t>(j - 1)]; }, k, s);
}

}  // namespace trdim
