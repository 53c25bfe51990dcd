#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace umoead::metrics {

struct MetricsRecord {
    double hv = 0.0;
    double spacing = 0.0;
    double sparsity = 0.0;
    double delta = 0.0;
    double soft_delta = 0.0;
    std::vector<double> ref_point;
    double soft_k = 50.0;
};

/// Hypervolume dominated by points strictly inside the reference point.
/// m = 2 uses an exact sweep, m = 3 exact slicing, m >= 4 Monte Carlo with
/// a fixed internal stream.
double hypervolume(std::span<const std::vector<double>> points, std::span<const double> ref);

struct McEstimate {
    double value = 0.0;
    double std_error = 0.0;
};

/// Sampling estimate of the same quantity, usable as an independent check
/// against the exact routes.
McEstimate hypervolume_monte_carlo(std::span<const std::vector<double>> points,
                                   std::span<const double> ref, std::size_t samples,
                                   std::uint64_t seed);

/// Population standard deviation of the nearest-neighbor distances.
double spacing(std::span<const std::vector<double>> points);

/// Mean of squared consecutive gaps per objective column, columns sorted
/// ascending: (1/(N-1)) sum_j sum_i (y_j(i) - y_j(i+1))^2.
double sparsity(std::span<const std::vector<double>> points);

MetricsRecord report(std::span<const std::vector<double>> points, std::span<const double> ref,
                     double soft_k);

/// Flat JSON object with fixed keys: hv, spacing, sparsity, delta,
/// soft_delta, ref_point, K.
std::string record_to_json_string(const MetricsRecord& record);
MetricsRecord record_from_json_string(const std::string& text);

}  // namespace umoead::metrics
