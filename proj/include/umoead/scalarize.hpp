#pragma once

#include <span>
#include <vector>

namespace umoead::scalarize {

// Boundary weights from the simplex lattice would divide by zero in the
// aggregation; components are floored at this value and renormalized.
inline constexpr double kWeightFloor = 1e-6;

std::vector<double> clamp_weight(std::span<const double> lambda);

/// Modified Tchebycheff aggregation max_i (y_i - z_i) / lambda_i, with the
/// weight clamped away from zero first.
double mtche(std::span<const double> y, std::span<const double> lambda,
             std::span<const double> z);

/// Spherical-coordinate angle -> simplex weight: lambda_1 = cos^2 theta_1,
/// lambda_i = sin^2 theta_1 ... sin^2 theta_{i-1} cos^2 theta_i, and the last
/// component takes the full sine product.
std::vector<double> angle_to_weight(std::span<const double> theta);

/// Inverse of angle_to_weight. When a leading sine product vanishes the
/// remaining angles are set to 0 (any value is consistent there).
std::vector<double> weight_to_angle(std::span<const double> lambda);

/// All simplex-lattice vectors with components in {0, 1/H, ..., 1} summing
/// to 1, in lexicographic order.
std::vector<std::vector<double>> das_dennis(int m, int H);

/// Componentwise minimum update of the ideal point.
void update_ideal(std::vector<double>& z, std::span<const double> y);

}  // namespace umoead::scalarize
