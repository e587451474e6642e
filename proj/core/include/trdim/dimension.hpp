// SPDX-License-Identifier: MIT
#pragma once

#include <functional>
#include <string>

#include "trdim/truncation.hpp"

namespace trdim {

/// Threshold the truncation cut must meet: the dimension definition
/// (tail value <= eps) or the split error budget (raw tail <= eps^{p*}/2,
/// leaving the other half to the inner algorithm).
enum class ThresholdMode { definition, budget };

enum class SolveMethod { automatic, closed_form, bound_scan, direct_scan };

struct DimensionQuery {
    WeightModel model{ProductWeights::poly_decay(1.0)};
    ExponentConfig cfg;
    double epsilon = 0.0;
    ThresholdMode mode = ThresholdMode::budget;
    SolveMethod method = SolveMethod::automatic;
    std::int64_t cutoff = 1000;
    std::function<void(std::int64_t, double)> on_probe;  // per-probe observer
};

struct DimensionResult {
    std::int64_t k = 0;
    bool is_exact_dimension = false;  // true only for p = 1
    SolveMethod method_used = SolveMethod::automatic;
    ThresholdMode mode = ThresholdMode::budget;
    std::string criterion;            // what tail_at_k is compared against
    double threshold = 0.0;
    double tail_at_k = 0.0;
    std::optional<double> tail_before;  // criterion value at k - 1
    bool budget_vacuous = false;  // closed form: budget already met at k = 0

    [[nodiscard]] bool certificate_holds() const {
        return tail_at_k <= threshold && (!tail_before || *tail_before > threshold);
    }
};

/// Exact truncation dimension for p = 1 and gamma_j = j^{-a}:
/// k = ceil(eps^{-1/a} - 1), clamped at 0.
DimensionResult dim_p1_polydecay(double a, double epsilon);

/// Closed-form budget cut for gamma_j = j^{-a} and p > 1:
///   k = ceil((-(C (a p* - 1))^{-1} / log(1 - eps^{p*}/(2 P)))^{1/(a p* - 1)} - 1/2)
/// where P = product_value = prod_j (1 + j^{-a p*}/C) for the config's C.
/// Returns k = 0 with budget_vacuous set when the log argument is
/// nonpositive.
DimensionResult k_eps_closed_form(double a, const ExponentConfig& cfg, double epsilon,
                                  double product_value);

/// Minimal k meeting the mode's threshold, found by exponential expansion
/// then binary search over the monotone tail evaluator (exact product
/// difference for finite product models, tail-controlled bounds for
/// s = infinity, POD bound for POD models). Requires p > 1.
DimensionResult k_eps_scan(const DimensionQuery& query);

/// Upper bound on the truncation dimension: exact for p = 1 (gamma_{k+1}
/// threshold), definition-mode scan for p > 1.
DimensionResult dim_upper_bound(const DimensionQuery& query);

/// Front-end dispatcher: p = 1 closed forms, budget-mode closed form for
/// infinite polynomial decay, scans otherwise.
DimensionResult solve_dimension(const DimensionQuery& query);

}  // namespace trdim
