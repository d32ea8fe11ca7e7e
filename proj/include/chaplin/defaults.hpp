#pragma once

#include <cstddef>

namespace chaplin {

// Rectangular kernel window in tokens. Chosen from the window sweep over the
// Hamlet fixture recorded in docs/kernel_sweep.md (regenerate with
// `chaplin sweep`).
inline constexpr std::size_t kDefaultWindow = 60;

// Exponential kernel decay length in tokens.
inline constexpr double kDefaultDecayLength = 40.0;

inline constexpr double kDefaultNodeThreshold = 0.15;
inline constexpr double kDefaultEdgeThreshold = 0.15;

}  // namespace chaplin
