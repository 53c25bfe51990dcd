#include "umoead/moead.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "umoead/errors.hpp"
#include "umoead/rng.hpp"
#include "umoead/scalarize.hpp"

namespace umoead::moead {

namespace {

constexpr std::uint64_t kInitTag = 0xA11CE5EDULL;
constexpr std::uint64_t kStepTag = 0x5EED57EFULL;

double sq_distance(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

}  // namespace

std::vector<std::vector<int>> build_neighborhoods(
    const std::vector<std::vector<double>>& weights, int T) {
    const int N = static_cast<int>(weights.size());
    if (T < 2 || T > N)
        throw ConfigError("neighborhood size must satisfy 2 <= T <= N, got T=" +
                          std::to_string(T) + ", N=" + std::to_string(N));
    std::vector<std::vector<int>> neighborhoods(static_cast<std::size_t>(N));
    std::vector<int> order(static_cast<std::size_t>(N));
    for (int j = 0; j < N; ++j) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return sq_distance(weights[static_cast<std::size_t>(a)],
                               weights[static_cast<std::size_t>(j)]) <
                   sq_distance(weights[static_cast<std::size_t>(b)],
                               weights[static_cast<std::size_t>(j)]);
        });
        neighborhoods[static_cast<std::size_t>(j)].assign(order.begin(), order.begin() + T);
    }
    return neighborhoods;
}

PopulationState init_population(const problems::Problem& problem,
                                std::vector<std::vector<double>> weights, int T,
                                std::uint64_t seed) {
    const int N = static_cast<int>(weights.size());
    if (N < 2) throw ConfigError("population must contain at least 2 subproblems");

    PopulationState state;
    state.seed = seed;
    state.neighborhoods = build_neighborhoods(weights, T);
    state.weights = std::move(weights);
    state.angles.reserve(static_cast<std::size_t>(N));
    for (const auto& w : state.weights) state.angles.push_back(scalarize::weight_to_angle(w));

    state.individuals.resize(static_cast<std::size_t>(N));
    for (int j = 0; j < N; ++j) {
        auto rng = rng::substream(seed, kInitTag, static_cast<std::uint64_t>(j));
        Individual& ind = state.individuals[static_cast<std::size_t>(j)];
        ind.x.resize(static_cast<std::size_t>(problem.n));
        for (int i = 0; i < problem.n; ++i) {
            std::uniform_real_distribution<double> dist(problem.lower[static_cast<std::size_t>(i)],
                                                        problem.upper[static_cast<std::size_t>(i)]);
            ind.x[static_cast<std::size_t>(i)] = dist(rng);
        }
        ind.y = problems::evaluate(problem, ind.x);
    }

    state.ideal.assign(static_cast<std::size_t>(problem.m),
                       std::numeric_limits<double>::infinity());
    for (const Individual& ind : state.individuals) scalarize::update_ideal(state.ideal, ind.y);
    for (double& z : state.ideal) z -= 1e-3;
    return state;
}

double sbx_spread_factor(double u, double eta_c) {
    if (u <= 0.5) return std::pow(2.0 * u, 1.0 / (eta_c + 1.0));
    return std::pow(1.0 / (2.0 * (1.0 - u)), 1.0 / (eta_c + 1.0));
}

std::vector<double> sbx_crossover(std::span<const double> x1, std::span<const double> x2,
                                  std::span<const double> lower, std::span<const double> upper,
                                  double eta_c, double p_c, std::mt19937_64& rng) {
    std::vector<double> child(x1.begin(), x1.end());
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t i = 0; i < child.size(); ++i) {
        if (unit(rng) > p_c) continue;
        if (std::abs(x1[i] - x2[i]) < 1e-14) continue;
        const double beta = sbx_spread_factor(unit(rng), eta_c);
        // Either of the two symmetric SBX children, chosen per variable.
        const double sign = unit(rng) < 0.5 ? 1.0 : -1.0;
        const double c = 0.5 * ((1.0 + sign * beta) * x1[i] + (1.0 - sign * beta) * x2[i]);
        child[i] = std::clamp(c, lower[i], upper[i]);
    }
    return child;
}

std::vector<double> poly_mutation(std::span<const double> x, std::span<const double> lower,
                                  std::span<const double> upper, double eta_m, double p_m,
                                  std::mt19937_64& rng) {
    std::vector<double> out(x.begin(), x.end());
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (unit(rng) > p_m) continue;
        const double range = upper[i] - lower[i];
        const double u = unit(rng);
        const double d1 = (out[i] - lower[i]) / range;
        const double d2 = (upper[i] - out[i]) / range;
        double dq;
        if (u < 0.5) {
            const double b = 2.0 * u + (1.0 - 2.0 * u) * std::pow(1.0 - d1, eta_m + 1.0);
            dq = std::pow(b, 1.0 / (eta_m + 1.0)) - 1.0;
        } else {
            const double b =
                2.0 * (1.0 - u) + 2.0 * (u - 0.5) * std::pow(1.0 - d2, eta_m + 1.0);
            dq = 1.0 - std::pow(b, 1.0 / (eta_m + 1.0));
        }
        out[i] = std::clamp(out[i] + dq * range, lower[i], upper[i]);
    }
    return out;
}

namespace {

Individual make_candidate(const PopulationState& state, const problems::Problem& problem,
                          const StepConfig& config, int j) {
    auto rng = rng::substream(state.seed, kStepTag, state.generation,
                              static_cast<std::uint64_t>(j));
    const auto& mates = state.neighborhoods[static_cast<std::size_t>(j)];
    std::uniform_int_distribution<int> pick(0, static_cast<int>(mates.size()) - 1);
    const int a = pick(rng);
    int b = pick(rng);
    while (b == a) b = pick(rng);

    const OperatorConfig& ops = config.operators;
    const double p_m = ops.p_m < 0.0 ? 1.0 / static_cast<double>(problem.n) : ops.p_m;
    Individual child;
    child.x = sbx_crossover(state.individuals[static_cast<std::size_t>(mates[static_cast<std::size_t>(a)])].x,
                            state.individuals[static_cast<std::size_t>(mates[static_cast<std::size_t>(b)])].x,
                            problem.lower, problem.upper, ops.eta_c, ops.p_c, rng);
    child.x = poly_mutation(child.x, problem.lower, problem.upper, ops.eta_m, p_m, rng);
    child.y = problems::evaluate(problem, child.x);
    return child;
}

}  // namespace

void generation_step(PopulationState& state, const problems::Problem& problem,
                     const StepConfig& config) {
    const int N = state.size();
    std::vector<Individual> candidates(static_cast<std::size_t>(N));

    const int threads = std::max(1, config.threads);
    if (threads == 1 || N < 2 * threads) {
        for (int j = 0; j < N; ++j)
            candidates[static_cast<std::size_t>(j)] = make_candidate(state, problem, config, j);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        std::atomic<int> next{0};
        for (int t = 0; t < threads; ++t) {
            pool.emplace_back([&] {
                for (int j = next.fetch_add(1); j < N; j = next.fetch_add(1))
                    candidates[static_cast<std::size_t>(j)] =
                        make_candidate(state, problem, config, j);
            });
        }
        for (auto& th : pool) th.join();
    }

    // Serial commit: freeze the ideal point first so every replacement
    // decision this generation is made against the same z.
    for (const Individual& child : candidates) scalarize::update_ideal(state.ideal, child.y);

    if (config.elite == EliteUpdate::Classic) {
        for (int j = 0; j < N; ++j) {
            const Individual& child = candidates[static_cast<std::size_t>(j)];
            int replaced = 0;
            for (int i : state.neighborhoods[static_cast<std::size_t>(j)]) {
                if (replaced >= config.replacement_cap) break;
                const auto& w = state.weights[static_cast<std::size_t>(i)];
                const double g_child = scalarize::mtche(child.y, w, state.ideal);
                const double g_old =
                    scalarize::mtche(state.individuals[static_cast<std::size_t>(i)].y, w,
                                     state.ideal);
                if (g_child < g_old) {
                    state.individuals[static_cast<std::size_t>(i)] = child;
                    ++replaced;
                }
            }
        }
    } else {
        // Literal reading of the update: re-select among current neighbors
        // plus incumbent; the generated children are never installed.
        std::vector<Individual> selected(static_cast<std::size_t>(N));
        for (int j = 0; j < N; ++j) {
            const auto& w = state.weights[static_cast<std::size_t>(j)];
            int best = j;
            double g_best = scalarize::mtche(state.individuals[static_cast<std::size_t>(j)].y, w,
                                             state.ideal);
            for (int i : state.neighborhoods[static_cast<std::size_t>(j)]) {
                const double g =
                    scalarize::mtche(state.individuals[static_cast<std::size_t>(i)].y, w,
                                     state.ideal);
                if (g < g_best) {
                    g_best = g;
                    best = i;
                }
            }
            selected[static_cast<std::size_t>(j)] = state.individuals[static_cast<std::size_t>(best)];
        }
        state.individuals = std::move(selected);
    }

    ++state.generation;
}

void refresh_weights(PopulationState& state, std::vector<std::vector<double>> new_weights,
                     int T) {
    if (new_weights.size() != state.weights.size())
        throw ConfigError("refresh_weights: weight count must match the population");
    state.neighborhoods = build_neighborhoods(new_weights, T);
    state.weights = std::move(new_weights);
    state.angles.clear();
    for (const auto& w : state.weights) state.angles.push_back(scalarize::weight_to_angle(w));
}

}  // namespace umoead::moead
