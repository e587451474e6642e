// SPDX-License-Identifier: MIT
#include "trdim/dimension.hpp"

#include <cmath>
#include <string>

#include "trdim/errors.hpp"

namespace trdim {

namespace {

// Decimal error demands are not exactly representable in binary; values this
// close to an integer are treated as that integer before applying ceilings.
constexpr double kSnapTol = 1e-9;

double snap_integer(double x) {
    const double r = std::round(x);
    return std::abs(x - r) <= kSnapTol ? r : x;
}

std::int64_t ceil_clamped(double x) {
    if (!std::isfinite(x))
        throw NoSolutionError("cut size overflows the representable range");
    const double c = std::ceil(snap_integer(x));
    if (c >= 9.0e18) throw NoSolutionError("cut size overflows the representable range");
    return c < 0.0 ? 0 : static_cast<std::int64_t>(c);
}

void check_epsilon(double eps) {
    if (!(eps > 0.0)) throw InvalidArgument("epsilon must be positive");
}

// Monotone threshold search: smallest k in [0, max_k] with crit(k) <= thr.
// crit must be nonincreasing in k. Returns the result with certificate
// fields filled from the final probes.
template <class Crit>
DimensionResult monotone_search(Crit&& crit, double thr, std::int64_t max_k,
                                const std::function<void(std::int64_t, double)>& on_probe) {
    auto probe = [&](std::int64_t k) {
        const double v = crit(k);
        if (on_probe) on_probe(k, v);
        return v;
    };
    DimensionResult res;
    res.threshold = thr;
    double v0 = probe(0);
    if (v0 <= thr) {
        res.k = 0;
        res.tail_at_k = v0;
        return res;
    }
    std::int64_t lo = 0;  // known failing
    double lo_val = v0;
    std::int64_t hi = 1;
    double hi_val = probe(hi);
    while (hi_val > thr) {
        if (hi >= max_k)
            throw NoSolutionError("threshold unreachable at the largest admissible cut");
        lo = hi;
        lo_val = hi_val;
        hi = std::min(hi * 2, max_k);
        hi_val = probe(hi);
    }
    while (hi - lo > 1) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        const double v = probe(mid);
        if (v <= thr) {
            hi = mid;
            hi_val = v;
        } else {
            lo = mid;
            lo_val = v;
        }
    }
    res.k = hi;
    res.tail_at_k = hi_val;
    res.tail_before = lo_val;
    return res;
}

}  // namespace

DimensionResult dim_p1_polydecay(double a, double epsilon) {
    if (!(a > 0.0)) throw InvalidArgument("dim_p1_polydecay: a must be positive");
    check_epsilon(epsilon);
    DimensionResult res;
    res.k = ceil_clamped(snap_integer(std::pow(epsilon, -1.0 / a)) - 1.0);
    res.is_exact_dimension = true;
    res.method_used = SolveMethod::closed_form;
    res.mode = ThresholdMode::definition;
    res.criterion = "gamma_{k+1} <= eps";
    res.threshold = epsilon;
    res.tail_at_k = std::pow(static_cast<double>(res.k) + 1.0, -a);
    if (res.k > 0) res.tail_before = std::pow(static_cast<double>(res.k), -a);
    return res;
}

DimensionResult k_eps_closed_form(double a, const ExponentConfig& cfg, double epsilon,
                                  double product_value) {
    if (cfg.combine_mode == CombineMode::max)
        throw ModeMismatch("k_eps_closed_form: requires p > 1");
    check_epsilon(epsilon);
    if (!(product_value >= 1.0))
        throw InvalidArgument("k_eps_closed_form: product_value must be >= 1");
    const double pst = cfg.p_star;
    if (!(a > 1.0 / pst))
        throw AdmissibilityError("k_eps_closed_form: requires a > 1/p*");
    const double m = a * pst - 1.0;
    DimensionResult res;
    res.method_used = SolveMethod::closed_form;
    res.mode = ThresholdMode::budget;
    res.criterion = "integral bound on sum_{j>k} j^{-a p*} <= -C log(1 - eps^{p*}/(2P))";
    const double x = std::pow(epsilon, pst) / 2.0 / product_value;
    if (x >= 1.0) {
        // the whole budget is already met with no coordinates kept
        res.k = 0;
        res.budget_vacuous = true;
        res.threshold = infinity;
        res.tail_at_k = std::pow(0.5, -m) / m;
        return res;
    }
    const double rhs = -cfg.C * std::log1p(-x);
    if (!(rhs > 0.0))
        throw NoSolutionError("k_eps_closed_form: error demand underflows at this p*");
    res.threshold = rhs;
    res.k = ceil_clamped(std::pow(1.0 / (m * rhs), 1.0 / m) - 0.5);
    res.tail_at_k = std::pow(static_cast<double>(res.k) + 0.5, -m) / m;
    if (res.k > 0)
        res.tail_before = std::pow(static_cast<double>(res.k) - 0.5, -m) / m;
    return res;
}

DimensionResult k_eps_scan(const DimensionQuery& query) {
    if (query.cfg.combine_mode == CombineMode::max)
        throw ModeMismatch("k_eps_scan: requires p > 1 (p = 1 is handled by dim_upper_bound)");
    check_epsilon(query.epsilon);
    const double pst = query.cfg.p_star;
    const double eps = query.epsilon;
    const bool budget = query.mode == ThresholdMode::budget;

    DimensionResult res;
    if (const auto* pw = std::get_if<ProductWeights>(&query.model)) {
        const bool finite = pw->dimension().has_value();
        SolveMethod method = query.method;
        if (method == SolveMethod::automatic)
            method = finite ? SolveMethod::direct_scan : SolveMethod::bound_scan;
        if (method == SolveMethod::closed_form)
            throw InvalidArgument("k_eps_scan: the closed form applies to budget-mode "
                                  "polynomial-decay queries; request a scan method here");
        if (method == SolveMethod::direct_scan) {
            if (!finite)
                throw InvalidArgument("k_eps_scan: direct scan requires a finite dimension");
            ProductTailEvaluator eval(*pw, query.cfg);
            if (budget) {
                const double thr = std::pow(eps, pst) / 2.0;
                res = monotone_search([&](std::int64_t k) { return eval.raw_tail(k); }, thr,
                                      eval.dimension(), query.on_probe);
                res.criterion = "raw tail <= eps^{p*}/2";
            } else {
                res = monotone_search(
                    [&](std::int64_t k) { return std::pow(eval.raw_tail(k), 1.0 / pst); }, eps,
                    eval.dimension(), query.on_probe);
                res.criterion = "tail value <= eps";
            }
        } else {
            const std::int64_t max_k =
                pw->dimension().value_or(std::int64_t{1} << 40);
            auto bound_raw = [&](std::int64_t k) {
                return *tail_bound_product(*pw, query.cfg, k, query.cutoff).raw_power;
            };
            if (budget) {
                const double thr = std::pow(eps, pst) / 2.0;
                res = monotone_search(bound_raw, thr, max_k, query.on_probe);
                res.criterion = "raw tail bound <= eps^{p*}/2";
            } else {
                res = monotone_search(
                    [&](std::int64_t k) { return std::pow(bound_raw(k), 1.0 / pst); }, eps,
                    max_k, query.on_probe);
                res.criterion = "tail value bound <= eps";
            }
        }
        res.method_used = method;
    } else {
        const auto& pod = std::get<PODWeights>(query.model);
        if (query.method == SolveMethod::direct_scan || query.method == SolveMethod::closed_form)
            throw InvalidArgument("k_eps_scan: POD models support the bound scan only");
        auto value = [&](std::int64_t k) { return pod_tail_bound(pod, query.cfg, k).value; };
        if (budget) {
            const double thr = eps / std::pow(2.0, 1.0 / pst);
            res = monotone_search(value, thr, pod.dimension, query.on_probe);
            res.criterion = "tail value bound <= eps/2^{1/p*}";
        } else {
            res = monotone_search(value, eps, pod.dimension, query.on_probe);
            res.criterion = "tail value bound <= eps";
        }
        res.method_used = SolveMethod::bound_scan;
    }
    res.mode = query.mode;
    res.is_exact_dimension = false;
    if (!res.certificate_holds())
        throw NoSolutionError("k_eps_scan: minimality certificate failed (non-monotone tail)");
    return res;
}

namespace {

DimensionResult dim_p1(const DimensionQuery& query) {
    const double eps = query.epsilon;
    DimensionResult res;
    res.is_exact_dimension = true;
    res.mode = query.mode;  // p = 1 uses gamma_{k+1} <= eps in both modes
    res.criterion = "max weight over discarded subsets <= eps";
    res.threshold = eps;
    if (const auto* pw = std::get_if<ProductWeights>(&query.model)) {
        auto dim = pw->dimension();
        std::int64_t k;
        if (pw->is_poly_decay()) {
            k = ceil_clamped(snap_integer(std::pow(eps, -1.0 / pw->decay_exponent())) - 1.0);
            res.method_used = SolveMethod::closed_form;
        } else {
            // nonincreasing sequence: first index with gamma_{k+1} <= eps
            std::int64_t lo = 0, hi = *dim;
            while (lo < hi) {
                const std::int64_t mid = lo + (hi - lo) / 2;
                if (pw->gamma(mid + 1) <= eps)
                    hi = mid;
                else
                    lo = mid + 1;
            }
            k = lo;
            res.method_used = SolveMethod::direct_scan;
        }
        if (dim && k > *dim) k = *dim;
        res.k = k;
        res.tail_at_k = tail_p1(query.model, k).value;
        if (k > 0) res.tail_before = tail_p1(query.model, k - 1).value;
        return res;
    }
    const auto& pod = std::get<PODWeights>(query.model);
    auto crit = [&](std::int64_t k) { return tail_p1(query.model, k).value; };
    res = monotone_search(crit, eps, pod.dimension, query.on_probe);
    res.is_exact_dimension = true;
    res.mode = query.mode;
    res.criterion = "max weight over discarded subsets <= eps";
    res.method_used = SolveMethod::direct_scan;
    return res;
}

}  // namespace

DimensionResult dim_upper_bound(const DimensionQuery& query) {
    check_epsilon(query.epsilon);
    if (query.cfg.combine_mode == CombineMode::max) return dim_p1(query);
    DimensionQuery q = query;
    q.mode = ThresholdMode::definition;
    return k_eps_scan(q);
}

DimensionResult solve_dimension(const DimensionQuery& query) {
    check_epsilon(query.epsilon);
    if (query.cfg.combine_mode == CombineMode::max) return dim_p1(query);
    const auto* pw = std::get_if<ProductWeights>(&query.model);
    const bool poly = pw && pw->is_poly_decay();
    if (query.method == SolveMethod::closed_form && !poly)
        throw InvalidArgument("solve_dimension: the closed form requires polynomial decay");
    const bool want_closed =
        query.mode == ThresholdMode::budget && poly &&
        (query.method == SolveMethod::closed_form ||
         (query.method == SolveMethod::automatic && !pw->dimension().has_value()));
    if (want_closed) {
        const double a = pw->decay_exponent();
        const double pst = query.cfg.p_star;
        const double C = query.cfg.C;
        double product;
        if (auto dim = pw->dimension()) {
            product = std::exp(detail::log1p_sum_desc(
                [&](std::int64_t j) {
                    return std::pow(static_cast<double>(j), -a * pst) / C;
                },
                1, *dim));
        } else {
            if (a * pst <= 1.0)
                throw DivergentError("solve_dimension: continuity condition fails for a*p* <= 1");
            product = infinite_product_upper(a * pst, 1.0 / C, query.cutoff);
        }
        DimensionResult res = k_eps_closed_form(a, query.cfg, query.epsilon, product);
        if (auto dim = pw->dimension(); dim && res.k > *dim) {
            res.k = *dim;  // the empty tail at k = s always meets the budget
            res.tail_at_k = 0.0;
            res.tail_before.reset();
        }
        return res;
    }
    return k_eps_scan(query);
}

}  // namespace trdim
