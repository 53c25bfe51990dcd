#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "umoead/metrics.hpp"
#include "umoead/moead.hpp"

namespace umoead::harness {

struct PflRunConfig {
    std::vector<int> hidden{64, 64};
    int epochs = 1000;
    double lr = 1e-2;
    std::string init_checkpoint;  // optional warm-start / resume checkpoint

    bool operator==(const PflRunConfig&) const = default;
};

struct AdjustRunConfig {
    int steps = 500;
    double lr = 1e-2;
    std::string objective = "hard";  // "hard" or "soft"
    double soft_k = 50.0;

    bool operator==(const AdjustRunConfig&) const = default;
};

struct MetricsRunConfig {
    std::vector<double> ref;  // empty -> 1.1 x front nadir (or set nadir)
    double soft_k = 50.0;

    bool operator==(const MetricsRunConfig&) const = default;
};

struct RunConfig {
    std::string problem = "zdt1";
    int n_var = 0;       // 0 -> problem default
    int population = 0;  // N; 0 -> derived from partitions
    int partitions = 0;  // Das-Dennis H; 0 -> derived from population
    int neighborhood = 0;  // T; 0 -> ceil(N/10), min 2
    int outer_rounds = 5;
    int inner_generations = 50;
    std::string mode = "umoead";  // "umoead" or "moead"
    std::string elite_update = "classic";
    int replacement_cap = 2;
    std::uint64_t seed = 1;
    moead::OperatorConfig operators;
    PflRunConfig pfl;
    AdjustRunConfig adjust;
    MetricsRunConfig metrics;
    std::vector<std::vector<double>> initial_weights;  // optional override
    std::string output_dir;

    bool operator==(const RunConfig&) const = default;
};

RunConfig config_from_json_string(const std::string& text);
std::string config_to_json_string(const RunConfig& config);

/// Fills every derived field (N, H, T, p_m, reference point) and validates;
/// the result round-trips through JSON unchanged.
RunConfig resolve(const RunConfig& config);

struct PhaseTiming {
    double evolve_seconds = 0.0;
    double pfl_seconds = 0.0;
    double adjust_seconds = 0.0;
    double metrics_seconds = 0.0;
    double total_seconds = 0.0;
};

struct RunReport {
    RunConfig config;  // resolved echo
    std::uint64_t seed = 0;
    std::vector<metrics::MetricsRecord> rounds;
    std::vector<std::vector<double>> final_x;
    std::vector<std::vector<double>> final_y;
    std::vector<std::vector<double>> final_weights;
    std::vector<std::vector<double>> final_angles;
    PhaseTiming timing;
};

RunReport run(const RunConfig& config);

/// Writes objectives.csv, weights.csv, metrics.json and config.json. The
/// CSV format is fixed: header row, ',' separator, '.' decimal point,
/// 17-significant-digit reals.
void export_report(const RunReport& report, const std::filesystem::path& dir);

/// Full report as JSON (includes wall-clock timing, so two otherwise equal
/// runs differ only under the "timing" key).
std::string report_to_json_string(const RunReport& report);

}  // namespace umoead::harness
