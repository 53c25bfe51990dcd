#pragma once

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace umoead::problems {

/// A box-constrained benchmark problem. The evaluator maps a decision vector
/// to m objective values. Problems with a known Pareto front additionally
/// carry a signed front residual used by the ray-intersection oracle: for a
/// point y on the ray of a positive weight, pf_residual(y) < 0 strictly below
/// the front, > 0 strictly above, and 0 exactly on it.
struct Problem {
    std::string id;
    int m = 0;
    int n = 0;
    std::vector<double> lower;
    std::vector<double> upper;

    // Raw evaluator; bounds are checked by evaluate() before dispatch.
    std::function<void(std::span<const double>, std::span<double>)> evaluate_fn;

    // Known-front description (empty/absent for plugin problems without one).
    std::function<double(std::span<const double>)> pf_residual;
    // Membership test for the resolved intersection point (e.g. the ZDT6
    // front only spans y1 >= 0.2808).
    std::function<bool(std::span<const double>)> pf_contains;
    // Componentwise maximum of the true front; used for default HV reference
    // points. Empty when unknown.
    std::vector<double> pf_nadir;

    // Closed-form weight-to-objective map, where one exists.
    std::function<std::vector<double>(std::span<const double>)> analytic_h_fn;
};

/// Registers a problem family under a stable lowercase id. The factory
/// receives the requested decision dimension (0 = family default).
void register_problem(const std::string& id, std::function<Problem(int)> factory);

/// Instantiates a registered problem. n = 0 selects the family default.
Problem make(std::string_view id, int n = 0);

std::vector<std::string> registered_ids();

/// Bounds-checked objective evaluation.
std::vector<double> evaluate(const Problem& problem, std::span<const double> x);

/// Exact Pareto objective on the ray of lambda (ideal point 0), for the
/// problems with a closed form (zdt1, zdt2, dtlz1).
std::vector<double> analytic_h(const Problem& problem, std::span<const double> lambda);

/// Independent ray-front intersection by bisection on the ray scale, to
/// absolute tolerance tol on the scale factor.
std::vector<double> numeric_h_oracle(const Problem& problem, std::span<const double> lambda,
                                     double tol);

}  // namespace umoead::problems
