// SPDX-License-Identifier: MIT
#pragma once

#include "trdim/types.hpp"
#include "trdim/weights.hpp"

namespace trdim {

/// How per-subset error terms combine: p*-th powers for p > 1, max for p = 1.
enum class CombineMode { power_pstar, max };

/// Which embedding-norm constant enters the tail sums: the generic bound
/// ||S|| <= (q/p* + 1)^{-1/q}, or the known exact norm for q = 1.
enum class NormVariant { prop1_bound, exact_q1 };

/// Conjugate exponent p* with 1/p + 1/p* = 1; conjugate(1) = inf,
/// conjugate(inf) = 1.
double conjugate_exponent(double p);

/// The (p, q) configuration and the per-coordinate factor C entering every
/// tail sum as C^{-|u|}.
struct ExponentConfig {
    double p = 2.0;
    double q = 2.0;
    double p_star = 2.0;
    double C = 2.0;
    CombineMode combine_mode = CombineMode::power_pstar;
    NormVariant norm_variant = NormVariant::prop1_bound;
    bool extrapolated = false;  // q = inf: C = 1 by continuous limit

    static ExponentConfig make(double p, double q,
                               NormVariant variant = NormVariant::prop1_bound);
};

/// C = (q/p* + 1)^{p*/q} (or 1 + p* in the exact-q1 variant). Requires p > 1;
/// for p = 1 the tail uses the max rule and no such factor exists.
double embedding_factor(const ExponentConfig& cfg);

/// Upper bound (q/p* + 1)^{-1/q} on the univariate embedding norm ||S||.
double embedding_norm_upper(const ExponentConfig& cfg);

/// Exact ||S|| = (1 + p*)^{-1/p*} for q = 1, p > 1.
double embedding_norm_exact_q1(double p);

/// Upper bound [prod_{j=1}^{s} (1 + gamma_j^{p*}/C)]^{1/p*} on ||S_s|| for a
/// product model; for s = infinity a tail-controlled upper estimate.
/// Throws DivergentError when the continuity condition fails.
BoundResult continuity_bound_Ss(const ProductWeights& model, const ExponentConfig& cfg,
                                std::int64_t cutoff = 1000);

}  // namespace trdim
