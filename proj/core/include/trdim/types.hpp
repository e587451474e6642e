// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <limits>
#include <optional>

namespace trdim {

/// Marks p, q or s = infinity in the extended-real parameter ranges.
inline constexpr double infinity = std::numeric_limits<double>::infinity();

enum class Exactness { exact, upper_bound };

/// A computed quantity together with whether it is exact or an upper estimate.
struct BoundResult {
    double value = 0.0;
    Exactness exactness = Exactness::exact;
};

}  // namespace trdim
