// SPDX-License-Identifier: MIT
#include "trdim/exponents.hpp"

#include <cmath>
#include <string>

#include "trdim/errors.hpp"
#include "trdim/series.hpp"

namespace trdim {

double conjugate_exponent(double p) {
    if (!(p >= 1.0))
        throw InvalidArgument("conjugate_exponent: p must satisfy 1 <= p <= inf");
    if (p == 1.0) return infinity;
    if (std::isinf(p)) return 1.0;
    return p / (p - 1.0);
}

ExponentConfig ExponentConfig::make(double p, double q, NormVariant variant) {
    if (!(p >= 1.0)) throw InvalidArgument("ExponentConfig: p must satisfy 1 <= p <= inf");
    if (!(q >= 1.0)) throw InvalidArgument("ExponentConfig: q must satisfy 1 <= q <= inf");
    ExponentConfig cfg;
    cfg.p = p;
    cfg.q = q;
    cfg.p_star = conjugate_exponent(p);
    cfg.norm_variant = variant;
    cfg.combine_mode = (p == 1.0) ? CombineMode::max : CombineMode::power_pstar;
    if (variant == NormVariant::exact_q1) {
        if (q != 1.0)
            throw InvalidArgument("ExponentConfig: the exact-norm variant applies to q = 1 only");
        if (p == 1.0)
            throw ModeMismatch("ExponentConfig: the exact-norm variant requires p > 1");
        cfg.C = 1.0 + cfg.p_star;
    } else if (p == 1.0) {
        cfg.C = 1.0;  // unused: the p = 1 tail is a max, not a weighted sum
    } else if (std::isinf(q)) {
        cfg.C = 1.0;  // continuous limit of (q/p* + 1)^{p*/q}
        cfg.extrapolated = true;
    } else {
        cfg.C = std::pow(q / cfg.p_star + 1.0, cfg.p_star / q);
    }
    return cfg;
}

double embedding_factor(const ExponentConfig& cfg) {
    if (cfg.combine_mode == CombineMode::max)
        throw ModeMismatch("embedding_factor: undefined for p = 1 (max combine rule)");
    return cfg.C;
}

double embedding_norm_upper(const ExponentConfig& cfg) {
    if (cfg.combine_mode == CombineMode::max) return 1.0;  // q/p* + 1 -> 1 as p* -> inf
    if (std::isinf(cfg.q)) return 1.0;
    return std::pow(cfg.q / cfg.p_star + 1.0, -1.0 / cfg.q);
}

double embedding_norm_exact_q1(double p) {
    if (p == 1.0)
        throw ModeMismatch("embedding_norm_exact_q1: requires p > 1");
    const double pst = conjugate_exponent(p);
    return std::pow(1.0 + pst, -1.0 / pst);
}

BoundResult continuity_bound_Ss(const ProductWeights& model, const ExponentConfig& cfg,
                                std::int64_t cutoff) {
    if (cfg.combine_mode == CombineMode::max)
        throw ModeMismatch("continuity_bound_Ss: requires p > 1");
    const double pst = cfg.p_star;
    const double C = cfg.C;
    if (auto dim = model.dimension()) {
        const double log_sum = detail::log1p_sum_desc(
            [&](std::int64_t j) { return std::pow(model.gamma(j), pst) / C; }, 1, *dim);
        return {std::exp(log_sum / pst), Exactness::exact};
    }
    const double a = model.decay_exponent();
    if (a * pst <= 1.0)
        throw DivergentError("continuity_bound_Ss: continuity condition fails, "
                             "sum of gamma_j^{p*} diverges");
    const double P = infinite_product_upper(a * pst, 1.0 / C, cutoff);
    return {std::pow(P, 1.0 / pst), Exactness::upper_bound};
}

}  // namespace trdim
