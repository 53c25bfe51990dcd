#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "umoead/pfl.hpp"

namespace umoead::uniformity {

inline constexpr double kDefaultSoftK = 50.0;

struct SeparationReport {
    double delta = 0.0;
    std::size_t first = 0;   // lexicographically first pair attaining delta
    std::size_t second = 0;
    double soft_delta = 0.0;
};

/// Exact minimum pairwise Euclidean distance; soft_delta evaluated at
/// sharpness soft_k.
SeparationReport min_pairwise(std::span<const std::vector<double>> points,
                              double soft_k = kDefaultSoftK);

/// Log-sum-exp relaxation over ordered pairs: -(1/K) log sum_{i != j}
/// exp(-K rho_ij). Lower-bounds the hard minimum; may be negative.
double soft_min_pairwise(std::span<const std::vector<double>> points, double K);

/// Componentwise clamp to [0, pi/2].
std::vector<double> project_box(std::vector<double> theta);

enum class AscentObjective { HardMin, SoftMin };

struct AdjustConfig {
    int steps = 500;
    double lr = 1e-2;
    AscentObjective objective = AscentObjective::HardMin;
    double soft_k = kDefaultSoftK;
    double tie_eps = 1e-12;     // pairs within this of the minimum count as tied
    int halving_patience = 20;  // halve the step after this many non-improving steps
};

enum class AdjustStatus { Ok, DegenerateModel };

struct AdjustResult {
    std::vector<std::vector<double>> angles;
    double delta = 0.0;  // best separation among predicted objectives
    AdjustStatus status = AdjustStatus::Ok;
};

/// Projected gradient ascent of the minimal pairwise distance among the
/// surrogate predictions. Hard-min mode moves only the angles of the tied
/// minimal pairs (averaged subgradient); the best iterate is tracked and
/// returned, so the resulting separation never falls below the initial one.
AdjustResult adjust_angles(const pfl::Surrogate& model,
                           std::vector<std::vector<double>> angles,
                           const AdjustConfig& config);

}  // namespace umoead::uniformity
