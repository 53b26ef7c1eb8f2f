#pragma once

#include <cstdint>

namespace ringgeom {

/// Mean of a sampled (or exhaustively enumerated) quantity.
struct Estimate {
    double estimate = 0.0;
    double stderr_ = 0.0;  // 0 when exact
    std::uint64_t samples = 0;
    bool exact = false;
};

/// An explicit-constant inequality evaluated on a concrete set.
struct BoundCheck {
    std::uint64_t value = 0;
    double bound = 0.0;
    bool holds = false;
    double ratio = 0.0;  // value / bound
};

/// Default ceiling on scalar work for exact counting modes.
inline constexpr std::uint64_t kExactWorkBudget = 10'000'000'000ULL;

}  // namespace ringgeom
