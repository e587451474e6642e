// SPDX-License-Identifier: MIT
#pragma once

#include <functional>
#include <vector>

#include "trdim/exponents.hpp"
#include "trdim/series.hpp"
#include "trdim/weights.hpp"

namespace trdim {

/// A truncation-error quantity at cut k. `value` is the error term (the
/// p*-th root of the tail sum, or the max weight for p = 1); `raw_power` is
/// the underlying sum_{u not within [k]} gamma_u^{p*} / C^{|u|} when one exists.
struct TailBound {
    double value = 0.0;
    std::optional<double> raw_power;
    std::int64_t k = 0;
    Exactness exactness = Exactness::exact;
};

// ============================================================================
// Product-weight tails
// ============================================================================

/// Exact tail sum for a finite product model, computed as the stable product
/// difference prod_{j<=s}(1 + x_j) - prod_{j<=k}(1 + x_j) with
/// x_j = gamma_j^{p*}/C. Requires p > 1.
TailBound tail_exact_product(const ProductWeights& model, const ExponentConfig& cfg,
                             std::int64_t k);

/// Upper bound
///   prod_j (1 + x_j) * (1 - exp(-(1/C) sum_{j>k} gamma_j^{p*}))
/// on the raw tail; valid for finite s and, via tail-controlled estimates,
/// for s = infinity. Requires p > 1.
TailBound tail_bound_product(const ProductWeights& model, const ExponentConfig& cfg,
                             std::int64_t k, std::int64_t cutoff = 1000);

/// p = 1 tail, max_{u not within [k]} gamma_u. Closed form gamma_{k+1} for
/// product weights (gamma_j <= 1); subset enumeration for small POD models.
TailBound tail_p1(const WeightModel& model, std::int64_t k);

// ============================================================================
// POD-weight tails
// ============================================================================

/// Tail series factor T(k) of the POD bound, the p*-th root of
///   sum_{l=1}^{s-k} ((l+k)!/k!)^{b p*} y^l / l!,
/// y = c2^{p*} / (C (a p* - 1) (k + 1/2)^{a p* - 1}), evaluated backwards by
/// nested multiplication T := (T + 1) (l + k)^{b p*} y / l.
double pod_T(const PODWeights& model, const ExponentConfig& cfg, std::int64_t k);

/// Upper bound on the head factor (sum_{v within [k]} gamma_v^{p*}/C^{|v|})^{1/p*}
/// for k >= 2; the exact head (at most two levels) for k < 2.
double pod_head_bound(const PODWeights& model, const ExponentConfig& cfg, std::int64_t k);

/// pod_head_bound(k) * pod_T(k), an upper bound on the POD truncation error.
TailBound pod_tail_bound(const PODWeights& model, const ExponentConfig& cfg, std::int64_t k);

/// Exact POD head factor via elementary-symmetric-polynomial recurrences;
/// same scale as pod_head_bound.
double pod_head_exact(const PODWeights& model, const ExponentConfig& cfg, std::int64_t k);

/// Exact POD tail via head/tail elementary-symmetric polynomials. O(k(s-k))
/// terms; intended as an internal oracle for moderate s.
TailBound pod_tail_exact(const PODWeights& model, const ExponentConfig& cfg, std::int64_t k);

// ============================================================================
// Oracles and combination
// ============================================================================

/// Exact tail by enumerating all u within [s] with u not within [k]
/// (s <= max_enumerable_dimension). Requires p > 1.
TailBound tail_brute_force(const WeightModel& model, const ExponentConfig& cfg,
                           std::int64_t k);

/// max_{u not within [k]} gamma_u by subset enumeration (p = 1 oracle).
double max_weight_brute_force(const WeightModel& model, std::int64_t k);

/// (e^{p*} + tail^{p*})^{1/p*} for p > 1; max(e, tail) for p = 1.
double combined_error(double algo_error, const TailBound& tail, const ExponentConfig& cfg);

using Evaluator = std::function<double(std::span<const double>)>;

/// Restriction x -> f(x_1, ..., x_k, 0, ..., 0) of an s-variate evaluator.
Evaluator truncate_function(Evaluator f, std::int64_t k, std::int64_t s);

/// O(1)-per-probe exact raw tail over a fixed finite product model, backed by
/// prefix/suffix log1p sums. Used by the scan solvers.
class ProductTailEvaluator {
public:
    ProductTailEvaluator(const ProductWeights& model, const ExponentConfig& cfg);

    [[nodiscard]] double raw_tail(std::int64_t k) const;
    [[nodiscard]] std::int64_t dimension() const { return s_; }

private:
    std::int64_t s_ = 0;
    std::vector<double> head_log_;  // head_log_[k] = sum_{j<=k} log1p(x_j)
    std::vector<double> tail_log_;  // tail_log_[k] = sum_{j>k}  log1p(x_j)
};

}  // namespace trdim
