// SPDX-License-Identifier: MIT
#include "trdim/truncation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "trdim/errors.hpp"

namespace trdim {

namespace {

void require_power_mode(const ExponentConfig& cfg, const char* op) {
    if (cfg.combine_mode == CombineMode::max)
        throw ModeMismatch(std::string(op) + ": requires p > 1 (use the p = 1 max-form ops)");
}

std::int64_t require_finite_dimension(const ProductWeights& model, const char* op) {
    auto dim = model.dimension();
    if (!dim) throw InvalidArgument(std::string(op) + ": requires a finite dimension");
    return *dim;
}

void check_cut(std::int64_t k, std::int64_t s, const char* op) {
    if (k < 0 || k > s)
        throw InvalidArgument(std::string(op) + ": cut k must lie in [0, " +
                              std::to_string(s) + "]");
}

void check_pod_admissible(const PODWeights& m, const ExponentConfig& cfg, const char* op) {
    const double floor = std::max(1.0 / cfg.p_star, m.b);
    if (!(m.a > floor))
        throw AdmissibilityError(std::string(op) + ": requires a > max(1/p*, b) = " +
                                 std::to_string(floor));
}

// (n!)^e via lgamma; only used where n can be large.
double factorial_power_log(std::int64_t n, double e) {
    return e * std::lgamma(static_cast<double>(n) + 1.0);
}

}  // namespace

// ============================================================================
// Product-weight tails
// ============================================================================

TailBound tail_exact_product(const ProductWeights& model, const ExponentConfig& cfg,
                             std::int64_t k) {
    require_power_mode(cfg, "tail_exact_product");
    const std::int64_t s = require_finite_dimension(model, "tail_exact_product");
    check_cut(k, s, "tail_exact_product");
    const double pst = cfg.p_star;
    const double C = cfg.C;
    const double raw = detail::product_difference(
        [&](std::int64_t j) { return std::pow(model.gamma(j), pst) / C; }, k, s);
    return {std::pow(raw, 1.0 / pst), raw, k, Exactness::exact};
}

TailBound tail_bound_product(const ProductWeights& model, const ExponentConfig& cfg,
                             std::int64_t k, std::int64_t cutoff) {
    require_power_mode(cfg, "tail_bound_product");
    if (k < 0) throw InvalidArgument("tail_bound_product: k must be nonnegative");
    const double pst = cfg.p_star;
    const double C = cfg.C;
    double product;    // prod_j (1 + gamma_j^{p*}/C), possibly overestimated
    double tail_sum;   // sum_{j>k} gamma_j^{p*}, possibly overestimated
    if (auto dim = model.dimension()) {
        check_cut(k, *dim, "tail_bound_product");
        product = std::exp(detail::log1p_sum_desc(
            [&](std::int64_t j) { return std::pow(model.gamma(j), pst) / C; }, 1, *dim));
        tail_sum = 0.0;
        for (std::int64_t j = *dim; j > k; --j) tail_sum += std::pow(model.gamma(j), pst);
    } else {
        const double a = model.decay_exponent();
        if (a * pst <= 1.0)
            throw DivergentError("tail_bound_product: continuity condition fails for a*p* <= 1");
        product = infinite_product_upper(a * pst, 1.0 / C, cutoff);
        tail_sum = tail_sum_poly(a * pst, k, std::nullopt).upper;
    }
    const double raw = product * (-std::expm1(-tail_sum / C));
    return {std::pow(raw, 1.0 / pst), raw, k, Exactness::upper_bound};
}

TailBound tail_p1(const WeightModel& model, std::int64_t k) {
    if (k < 0) throw InvalidArgument("tail_p1: k must be nonnegative");
    if (const auto* pw = std::get_if<ProductWeights>(&model)) {
        auto dim = pw->dimension();
        if (dim && k >= *dim) return {0.0, std::nullopt, k, Exactness::exact};
        // gamma_j <= 1, so the singleton {k+1} dominates every u not in [k]
        return {pw->gamma(k + 1), std::nullopt, k, Exactness::exact};
    }
    const auto& pod = std::get<PODWeights>(model);
    if (pod.dimension > max_enumerable_dimension)
        throw EnumerationLimitError("tail_p1: POD max requires enumeration, dimension > " +
                                    std::to_string(max_enumerable_dimension));
    return {max_weight_brute_force(model, k), std::nullopt, k, Exactness::exact};
}

// ============================================================================
// POD tails
// ============================================================================

double pod_T(const PODWeights& model, const ExponentConfig& cfg, std::int64_t k) {
    require_power_mode(cfg, "pod_T");
    check_pod_admissible(model, cfg, "pod_T");
    const std::int64_t s = model.dimension;
    check_cut(k, s, "pod_T");
    if (k == s) return 0.0;
    const double pst = cfg.p_star;
    const double apst = model.a * pst;
    const double bpst = model.b * pst;
    const double y = std::pow(model.c2, pst) /
                     (cfg.C * (apst - 1.0) * std::pow(static_cast<double>(k) + 0.5, apst - 1.0));
    const std::int64_t len = s - k;
    double T = y * std::pow(static_cast<double>(s), bpst) / static_cast<double>(len);
    for (std::int64_t l = len - 1; l >= 1; --l)
        T = (T + 1.0) * std::pow(static_cast<double>(l + k), bpst) * y / static_cast<double>(l);
    return std::pow(T, 1.0 / pst);
}

double pod_head_bound(const PODWeights& model, const ExponentConfig& cfg, std::int64_t k) {
    require_power_mode(cfg, "pod_head_bound");
    check_pod_admissible(model, cfg, "pod_head_bound");
    check_cut(k, model.dimension, "pod_head_bound");
    if (k == 0) return model.c1;
    const double pst = cfg.p_star;
    const double C = cfg.C;
    const double apst = model.a * pst;
    const double bpst = model.b * pst;
    const double c2p = std::pow(model.c2, pst);
    double linear = 0.0;
    for (std::int64_t j = k; j >= 1; --j)
        linear += c2p * std::pow(static_cast<double>(j), -apst) / C;
    if (k == 1) return model.c1 * std::pow(1.0 + linear, 1.0 / pst);
    // level sums |u| >= 2 estimated per level; the factorial power and z^l
    // are carried as one running product to stay inside double range
    const double z = c2p / (C * (apst - 1.0) * std::pow(1.5, apst - 1.0));
    const double w = (apst - 1.0) * std::pow(1.5, apst - 1.0);
    double B = 0.0;
    double g = z;  // (l!)^{b p* - 1} z^l
    for (std::int64_t l = 2; l < k; ++l) {
        g *= std::pow(static_cast<double>(l), bpst - 1.0) * z;
        B += g * (static_cast<double>(l) * w + 1.0);
    }
    B += std::exp(factorial_power_log(k, bpst - apst) +
                  static_cast<double>(k) * pst * std::log(model.c2) -
                  static_cast<double>(k) * std::log(C));
    return model.c1 * std::pow(1.0 + linear + B, 1.0 / pst);
}

TailBound pod_tail_bound(const PODWeights& model, const ExponentConfig& cfg, std::int64_t k) {
    const double value = pod_head_bound(model, cfg, k) * pod_T(model, cfg, k);
    return {value, std::pow(value, cfg.p_star), k, Exactness::upper_bound};
}

// ============================================================================
// Exact POD evaluators (elementary symmetric polynomials)
// ============================================================================

namespace {

// e_0..e_n of the factors t_1..t_n.
std::vector<double> elementary_symmetric(const std::vector<double>& t) {
    std::vector<double> e(t.size() + 1, 0.0);
    e[0] = 1.0;
    std::size_t n = 0;
    for (double v : t) {
        ++n;
        for (std::size_t l = n; l >= 1; --l) e[l] += v * e[l - 1];
    }
    return e;
}

std::vector<double> pod_tail_factors(const PODWeights& m, const ExponentConfig& cfg,
                                     std::int64_t lo, std::int64_t hi) {
    std::vector<double> t;
    t.reserve(static_cast<std::size_t>(hi - lo + 1));
    for (std::int64_t j = lo; j <= hi; ++j)
        t.push_back(std::pow(m.gamma(j), cfg.p_star) / cfg.C);
    return t;
}

}  // namespace

double pod_head_exact(const PODWeights& model, const ExponentConfig& cfg, std::int64_t k) {
    require_power_mode(cfg, "pod_head_exact");
    check_cut(k, model.dimension, "pod_head_exact");
    const double pst = cfg.p_star;
    const double bpst = model.b * pst;
    const auto e = elementary_symmetric(pod_tail_factors(model, cfg, 1, k));
    detail::StableSum raw;
    raw.add(1.0);  // empty subset
    for (std::int64_t l = 1; l <= k; ++l) {
        const double el = e[static_cast<std::size_t>(l)];
        if (el > 0.0) raw.add(std::exp(factorial_power_log(l, bpst) + std::log(el)));
    }
    return model.c1 * std::pow(raw.get(), 1.0 / pst);
}

TailBound pod_tail_exact(const PODWeights& model, const ExponentConfig& cfg, std::int64_t k) {
    require_power_mode(cfg, "pod_tail_exact");
    const std::int64_t s = model.dimension;
    check_cut(k, s, "pod_tail_exact");
    if (k == s) return {0.0, 0.0, k, Exactness::exact};
    const double pst = cfg.p_star;
    const double bpst = model.b * pst;
    const auto eh = elementary_symmetric(pod_tail_factors(model, cfg, 1, k));
    const auto et = elementary_symmetric(pod_tail_factors(model, cfg, k + 1, s));
    detail::StableSum raw;
    for (std::int64_t l = s - k; l >= 1; --l) {
        const double etl = et[static_cast<std::size_t>(l)];
        if (!(etl > 0.0)) continue;
        for (std::int64_t m = k; m >= 0; --m) {
            const double ehm = eh[static_cast<std::size_t>(m)];
            if (!(ehm > 0.0)) continue;
            raw.add(std::exp(factorial_power_log(m + l, bpst) + std::log(etl) + std::log(ehm)));
        }
    }
    const double c1p = std::pow(model.c1, pst);
    const double value = model.c1 * std::pow(raw.get(), 1.0 / pst);
    return {value, c1p * raw.get(), k, Exactness::exact};
}

// ============================================================================
// Brute-force oracles
// ============================================================================

namespace {

struct EnumerationSetup {
    std::int64_t s = 0;
    std::vector<double> term;       // per-mask product of coordinate factors
    std::vector<double> level_mul;  // per-cardinality multiplier
};

EnumerationSetup prepare_enumeration(const WeightModel& model, double pst, double C,
                                     const char* op) {
    auto dim = model_dimension(model);
    if (!dim) throw InvalidArgument(std::string(op) + ": requires a finite dimension");
    const std::int64_t s = *dim;
    if (s > max_enumerable_dimension)
        throw EnumerationLimitError(std::string(op) + ": dimension " + std::to_string(s) +
                                    " exceeds the enumeration cap " +
                                    std::to_string(max_enumerable_dimension));
    EnumerationSetup setup;
    setup.s = s;
    std::vector<double> t(static_cast<std::size_t>(s));
    for (std::int64_t j = 1; j <= s; ++j) {
        const double g = std::visit([&](const auto& m) { return m.gamma(j); }, model);
        t[static_cast<std::size_t>(j - 1)] = std::pow(g, pst) / C;
    }
    setup.term.assign(std::size_t{1} << s, 1.0);
    for (std::size_t m = 1; m < setup.term.size(); ++m) {
        const int j = std::countr_zero(m);
        setup.term[m] = setup.term[m & (m - 1)] * t[static_cast<std::size_t>(j)];
    }
    setup.level_mul.assign(static_cast<std::size_t>(s + 1), 1.0);
    if (const auto* pod = std::get_if<PODWeights>(&model)) {
        const double c1p = std::pow(pod->c1, pst);
        for (std::int64_t l = 0; l <= s; ++l)
            setup.level_mul[static_cast<std::size_t>(l)] =
                c1p * std::exp(factorial_power_log(l, pod->b * pst));
    }
    return setup;
}

}  // namespace

TailBound tail_brute_force(const WeightModel& model, const ExponentConfig& cfg,
                           std::int64_t k) {
    require_power_mode(cfg, "tail_brute_force");
    auto setup = prepare_enumeration(model, cfg.p_star, cfg.C, "tail_brute_force");
    check_cut(k, setup.s, "tail_brute_force");
    const std::size_t n_masks = std::size_t{1} << setup.s;
    const std::size_t head_mask = (std::size_t{1} << k) - 1;
    detail::StableSum raw;
    for (std::size_t m = 1; m < n_masks; ++m) {
        if ((m & ~head_mask) == 0) continue;  // u within [k]
        raw.add(setup.level_mul[static_cast<std::size_t>(std::popcount(m))] * setup.term[m]);
    }
    const double r = raw.get();
    return {std::pow(r, 1.0 / cfg.p_star), r, k, Exactness::exact};
}

double max_weight_brute_force(const WeightModel& model, std::int64_t k) {
    auto dim = model_dimension(model);
    if (!dim) throw InvalidArgument("max_weight_brute_force: requires a finite dimension");
    const std::int64_t s = *dim;
    if (s > max_enumerable_dimension)
        throw EnumerationLimitError("max_weight_brute_force: dimension exceeds the cap");
    check_cut(k, s, "max_weight_brute_force");
    std::vector<std::int64_t> u;
    double best = 0.0;
    const std::size_t n_masks = std::size_t{1} << s;
    const std::size_t head_mask = (std::size_t{1} << k) - 1;
    for (std::size_t m = 1; m < n_masks; ++m) {
        if ((m & ~head_mask) == 0) continue;
        u.clear();
        for (std::int64_t j = 0; j < s; ++j)
            if (m & (std::size_t{1} << j)) u.push_back(j + 1);
        best = std::max(best, subset_weight(model, u));
    }
    return best;
}

// ============================================================================
// Combination and truncated evaluation
// ============================================================================

double combined_error(double algo_error, const TailBound& tail, const ExponentConfig& cfg) {
    if (!(algo_error >= 0.0))
        throw InvalidArgument("combined_error: algorithm error must be nonnegative");
    if (cfg.combine_mode == CombineMode::max) return std::max(algo_error, tail.value);
    const double pst = cfg.p_star;
    return std::pow(std::pow(algo_error, pst) + std::pow(tail.value, pst), 1.0 / pst);
}

Evaluator truncate_function(Evaluator f, std::int64_t k, std::int64_t s) {
    if (s < 0 || k < 0 || k > s)
        throw InvalidArgument("truncate_function: need 0 <= k <= s");
    return [f = std::move(f), k, s](std::span<const double> x) {
        if (static_cast<std::int64_t>(x.size()) != k)
            throw InvalidArgument("truncated evaluator expects " + std::to_string(k) +
                                  " coordinates");
        std::vector<double> full(static_cast<std::size_t>(s), 0.0);
        std::copy(x.begin(), x.end(), full.begin());
        return f(full);
    };
}

// ============================================================================
// ProductTailEvaluator
// ============================================================================

ProductTailEvaluator::ProductTailEvaluator(const ProductWeights& model,
                                           const ExponentConfig& cfg) {
    require_power_mode(cfg, "ProductTailEvaluator");
    s_ = require_finite_dimension(model, "ProductTailEvaluator");
    const double pst = cfg.p_star;
    const double C = cfg.C;
    std::vector<double> l(static_cast<std::size_t>(s_) + 1, 0.0);
    for (std::int64_t j = 1; j <= s_; ++j)
        l[static_cast<std::size_t>(j)] = std::log1p(std::pow(model.gamma(j), pst) / C);
    head_log_.assign(static_cast<std::size_t>(s_) + 1, 0.0);
    tail_log_.assign(static_cast<std::size_t>(s_) + 1, 0.0);
    for (std::int64_t j = 1; j <= s_; ++j)
        head_log_[static_cast<std::size_t>(j)] =
            head_log_[static_cast<std::size_t>(j - 1)] + l[static_cast<std::size_t>(j)];
    for (std::int64_t j = s_; j >= 1; --j)
        tail_log_[static_cast<std::size_t>(j - 1)] =
            tail_log_[static_cast<std::size_t>(j)] + l[static_cast<std::size_t>(j)];
}

double ProductTailEvaluator::raw_tail(std::int64_t k) const {
    check_cut(k, s_, "ProductTailEvaluator::raw_tail");
    return std::exp(head_log_[static_cast<std::size_t>(k)]) *
           std::expm1(tail_log_[static_cast<std::size_t>(k)]);
}

}  // namespace trdim
