#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "umoead/problems.hpp"

namespace umoead::moead {

struct Individual {
    std::vector<double> x;
    std::vector<double> y;
};

struct OperatorConfig {
    double eta_c = 15.0;
    double p_c = 0.9;
    double eta_m = 20.0;
    double p_m = -1.0;  // < 0 resolves to 1/n

    bool operator==(const OperatorConfig&) const = default;
};

// "Classic" installs a child into the neighbor subproblems it improves
// (capped). "Literal" re-selects each subproblem's solution among its current
// neighbors plus incumbent and never injects the child; kept for fidelity
// testing only.
enum class EliteUpdate { Classic, Literal };

struct StepConfig {
    OperatorConfig operators;
    EliteUpdate elite = EliteUpdate::Classic;
    int replacement_cap = 2;
    int threads = 1;
};

struct PopulationState {
    std::vector<Individual> individuals;
    std::vector<std::vector<double>> weights;
    std::vector<std::vector<double>> angles;
    std::vector<std::vector<int>> neighborhoods;
    std::vector<double> ideal;
    std::uint64_t seed = 0;
    // Global generation counter; drives the per-subproblem random substreams
    // so that round boundaries do not perturb the random sequence.
    std::uint64_t generation = 0;

    int size() const { return static_cast<int>(individuals.size()); }
    int num_objectives() const { return static_cast<int>(ideal.size()); }
};

/// T nearest weights (Euclidean, ties by index) for every subproblem; each
/// list starts with the subproblem itself.
std::vector<std::vector<int>> build_neighborhoods(
    const std::vector<std::vector<double>>& weights, int T);

PopulationState init_population(const problems::Problem& problem,
                                std::vector<std::vector<double>> weights, int T,
                                std::uint64_t seed);

/// Draws the SBX spread factor from its polynomial density given u ~ U[0,1).
double sbx_spread_factor(double u, double eta_c);

std::vector<double> sbx_crossover(std::span<const double> x1, std::span<const double> x2,
                                  std::span<const double> lower, std::span<const double> upper,
                                  double eta_c, double p_c, std::mt19937_64& rng);

std::vector<double> poly_mutation(std::span<const double> x, std::span<const double> lower,
                                  std::span<const double> upper, double eta_m, double p_m,
                                  std::mt19937_64& rng);

/// One generation: candidates for all subproblems are produced from the
/// start-of-step snapshot (parallelizable), then the ideal point and elite
/// updates are committed serially in index order.
void generation_step(PopulationState& state, const problems::Problem& problem,
                     const StepConfig& config);

/// Installs new subproblem weights, recomputing angles and neighborhoods;
/// each index keeps its incumbent solution.
void refresh_weights(PopulationState& state, std::vector<std::vector<double>> new_weights,
                     int T);

}  // namespace umoead::moead
