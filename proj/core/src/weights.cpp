// SPDX-License-Identifier: MIT
#include "trdim/weights.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "trdim/errors.hpp"
#include "trdim/series.hpp"

namespace trdim {

// ============================================================================
// ProductWeights
// ============================================================================

ProductWeights ProductWeights::poly_decay(double a, std::optional<std::int64_t> dimension) {
    if (!(a > 0.0))
        throw InvalidArgument("poly_decay: exponent a must be positive, got " +
                              std::to_string(a));
    if (dimension && *dimension < 1)
        throw InvalidArgument("poly_decay: dimension must be >= 1");
    ProductWeights w;
    w.poly_ = true;
    w.a_ = a;
    w.dim_ = dimension;
    return w;
}

ProductWeights ProductWeights::explicit_sequence(std::vector<double> gammas) {
    if (gammas.empty()) throw InvalidArgument("explicit_sequence: empty weight sequence");
    double prev = 1.0;
    for (std::size_t i = 0; i < gammas.size(); ++i) {
        const double g = gammas[i];
        if (!(g > 0.0) || !std::isfinite(g))
            throw InvalidArgument("explicit_sequence: gamma_" + std::to_string(i + 1) +
                                  " must be a positive finite real");
        if (g > prev)
            throw InvalidArgument("explicit_sequence: weights must satisfy 1 >= gamma_1 >= "
                                  "gamma_2 >= ... > 0; violated at index " +
                                  std::to_string(i + 1));
        prev = g;
    }
    ProductWeights w;
    w.dim_ = static_cast<std::int64_t>(gammas.size());
    w.gammas_ = std::move(gammas);
    return w;
}

ProductWeights ProductWeights::load(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw InvalidArgument("cannot open weight file: " + file.string());
    std::vector<double> gammas;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ss(line);
        double g;
        if (!(ss >> g)) {
            std::string rest;
            ss.clear();
            if (ss >> rest || !line.empty()) {
                bool blank = line.find_first_not_of(" \t\r") == std::string::npos;
                if (blank) continue;
                throw InvalidArgument(file.string() + ":" + std::to_string(lineno) +
                                      ": expected one decimal per line");
            }
            continue;
        }
        std::string trailing;
        if (ss >> trailing)
            throw InvalidArgument(file.string() + ":" + std::to_string(lineno) +
                                  ": expected one decimal per line");
        gammas.push_back(g);
    }
    return explicit_sequence(std::move(gammas));
}

double ProductWeights::gamma(std::int64_t j) const {
    if (j < 1) throw InvalidArgument("gamma: index must be >= 1");
    if (dim_ && j > *dim_)
        throw InvalidArgument("gamma: index " + std::to_string(j) + " exceeds dimension " +
                              std::to_string(*dim_));
    if (poly_) return std::pow(static_cast<double>(j), -a_);
    return gammas_[static_cast<std::size_t>(j - 1)];
}

double ProductWeights::decay_exponent() const {
    if (!poly_) throw InvalidArgument("decay_exponent: not a polynomial-decay model");
    return a_;
}

// ============================================================================
// PODWeights
// ============================================================================

PODWeights PODWeights::make(double c1, double c2, double b, double a,
                            std::int64_t dimension) {
    if (!(c1 > 0.0)) throw InvalidArgument("POD weights: c1 must be positive");
    if (!(c2 > 0.0)) throw InvalidArgument("POD weights: c2 must be positive");
    if (!(b >= 0.0)) throw InvalidArgument("POD weights: b must be nonnegative");
    if (!(a > 0.0)) throw InvalidArgument("POD weights: a must be positive");
    if (dimension < 1) throw InvalidArgument("POD weights: dimension must be >= 1");
    return PODWeights{c1, c2, b, a, dimension};
}

double PODWeights::gamma(std::int64_t j) const {
    if (j < 1 || j > dimension) throw InvalidArgument("gamma: index out of range");
    return c2 * std::pow(static_cast<double>(j), -a);
}

// ============================================================================
// Model operations
// ============================================================================

std::optional<std::int64_t> model_dimension(const WeightModel& model) {
    if (const auto* pw = std::get_if<ProductWeights>(&model)) return pw->dimension();
    return std::get<PODWeights>(model).dimension;
}

namespace {

// (n!)^e without overflowing for large n.
double factorial_power(std::int64_t n, double e) {
    if (n <= 1 || e == 0.0) return 1.0;
    if (n <= 170) {
        double f = 1.0;
        for (std::int64_t i = 2; i <= n; ++i) f *= static_cast<double>(i);
        return std::pow(f, e);
    }
    return std::exp(e * std::lgamma(static_cast<double>(n) + 1.0));
}

void validate_subset(std::span<const std::int64_t> u,
                     std::optional<std::int64_t> dimension) {
    std::int64_t prev = 0;
    for (std::int64_t j : u) {
        if (j <= prev)
            throw InvalidArgument("subset_weight: indices must be strictly ascending and >= 1");
        if (dimension && j > *dimension)
            throw InvalidArgument("subset_weight: index " + std::to_string(j) +
                                  " exceeds dimension " + std::to_string(*dimension));
        prev = j;
    }
}

}  // namespace

double subset_weight(const WeightModel& model, std::span<const std::int64_t> u) {
    validate_subset(u, model_dimension(model));
    if (const auto* pw = std::get_if<ProductWeights>(&model)) {
        double g = 1.0;  // empty product
        for (std::int64_t j : u) g *= pw->gamma(j);
        return g;
    }
    const auto& pod = std::get<PODWeights>(model);
    double g = pod.c1 * factorial_power(static_cast<std::int64_t>(u.size()), pod.b);
    for (std::int64_t j : u) g *= pod.gamma(j);
    return g;
}

double kernel_eval(const ProductWeights& model, std::span<const double> x,
                   std::span<const double> y) {
    if (x.size() != y.size())
        throw InvalidArgument("kernel_eval: point dimensions differ");
    const auto s = static_cast<std::int64_t>(x.size());
    if (auto dim = model.dimension(); dim && s != *dim)
        throw InvalidArgument("kernel_eval: points must have the model's dimension");
    double K = 1.0;
    for (std::int64_t j = 0; j < s; ++j) {
        if (!(x[j] >= 0.0 && x[j] <= 1.0) || !(y[j] >= 0.0 && y[j] <= 1.0))
            throw InvalidArgument("kernel_eval: coordinates must lie in [0,1]");
        const double g = model.gamma(j + 1);
        K *= 1.0 + g * g * std::min(x[j], y[j]);
    }
    return K;
}

BoundResult weight_sum(const ProductWeights& model, std::int64_t cutoff) {
    if (auto dim = model.dimension()) {
        const double log_sum =
            detail::log1p_sum_desc([&](std::int64_t j) { return model.gamma(j); }, 1, *dim);
        return {std::exp(log_sum), Exactness::exact};
    }
    const double a = model.decay_exponent();
    if (a <= 1.0)
        throw DivergentError("weight_sum: sum of gamma_j = j^{-a} diverges for a <= 1");
    return {infinite_product_upper(a, 1.0, cutoff), Exactness::upper_bound};
}

}  // namespace trdim
