// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "trdim/types.hpp"

namespace trdim {

/// Largest dimension for which subset enumeration (2^s terms) is allowed.
inline constexpr std::int64_t max_enumerable_dimension = 22;

// ============================================================================
// Product weights: gamma_u = prod_{j in u} gamma_j
// ============================================================================

/// Coordinate weights 1 >= gamma_1 >= gamma_2 >= ... > 0, either an explicit
/// finite sequence or the polynomial-decay generator gamma_j = j^{-a}
/// (finite or infinite dimension). The empty subset has weight 1.
class ProductWeights {
public:
    /// gamma_j = j^{-a}, a > 0; dimension absent means s = infinity.
    static ProductWeights poly_decay(double a,
                                     std::optional<std::int64_t> dimension = std::nullopt);

    /// Explicit nonincreasing sequence in (0, 1]; dimension = gammas.size().
    static ProductWeights explicit_sequence(std::vector<double> gammas);

    /// Reads one positive decimal per line, index order 1..s.
    static ProductWeights load(const std::filesystem::path& file);

    [[nodiscard]] double gamma(std::int64_t j) const;
    [[nodiscard]] std::optional<std::int64_t> dimension() const { return dim_; }
    [[nodiscard]] bool is_poly_decay() const { return poly_; }
    [[nodiscard]] double decay_exponent() const;  // poly-decay models only

private:
    ProductWeights() = default;
    std::vector<double> gammas_;
    double a_ = 0.0;
    bool poly_ = false;
    std::optional<std::int64_t> dim_;
};

// ============================================================================
// Product order-dependent (POD) weights:
//   gamma_u = c1 * (|u|!)^b * prod_{j in u} c2 * j^{-a},  gamma_{} = c1
// ============================================================================

struct PODWeights {
    double c1 = 1.0;
    double c2 = 1.0;
    double b = 1.0;
    double a = 1.0;
    std::int64_t dimension = 1;

    static PODWeights make(double c1, double c2, double b, double a, std::int64_t dimension);

    [[nodiscard]] double gamma(std::int64_t j) const;  // c2 * j^{-a}
};

using WeightModel = std::variant<ProductWeights, PODWeights>;

/// Dimension of a model; nullopt for an infinite product model.
[[nodiscard]] std::optional<std::int64_t> model_dimension(const WeightModel& model);

/// gamma_u for a sorted set u of coordinate indices (ascending, 1-based).
[[nodiscard]] double subset_weight(const WeightModel& model, std::span<const std::int64_t> u);

/// Reproducing kernel of the p = 2 space,
/// K(x, y) = prod_j (1 + gamma_j^2 min(x_j, y_j)) on [0,1]^s.
[[nodiscard]] double kernel_eval(const ProductWeights& model,
                                 std::span<const double> x,
                                 std::span<const double> y);

/// Sum of all subset weights, prod_j (1 + gamma_j). For s = infinity this is
/// a tail-controlled upper estimate; throws DivergentError if the gamma_j are
/// not summable.
[[nodiscard]] BoundResult weight_sum(const ProductWeights& model, std::int64_t cutoff = 1000);

}  // namespace trdim
