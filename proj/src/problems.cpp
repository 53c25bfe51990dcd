#include "umoead/problems.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "umoead/errors.hpp"

namespace umoead::problems {

namespace {

constexpr double kPi = std::numbers::pi;

double zdt_g_linear(std::span<const double> x) {
    double s = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) s += x[i];
    return 1.0 + 9.0 * s / static_cast<double>(x.size() - 1);
}

void eval_zdt1(std::span<const double> x, std::span<double> y) {
    const double g = zdt_g_linear(x);
    y[0] = x[0];
    y[1] = g * (1.0 - std::sqrt(x[0] / g));
}

void eval_zdt2(std::span<const double> x, std::span<double> y) {
    const double g = zdt_g_linear(x);
    y[0] = x[0];
    y[1] = g * (1.0 - (x[0] / g) * (x[0] / g));
}

void eval_zdt4(std::span<const double> x, std::span<double> y) {
    const std::size_t n = x.size();
    double s = 0.0;
    for (std::size_t i = 1; i < n; ++i) s += x[i] * x[i] - 10.0 * std::cos(4.0 * kPi * x[i]);
    const double g = 1.0 + 10.0 * static_cast<double>(n - 1) + s;
    y[0] = x[0];
    y[1] = g * (1.0 - std::sqrt(x[0] / g));
}

void eval_zdt6(std::span<const double> x, std::span<double> y) {
    const std::size_t n = x.size();
    const double f1 = 1.0 - std::exp(-4.0 * x[0]) * std::pow(std::sin(6.0 * kPi * x[0]), 6.0);
    double s = 0.0;
    for (std::size_t i = 1; i < n; ++i) s += x[i];
    const double g = 1.0 + 9.0 * std::pow(s / static_cast<double>(n - 1), 0.25);
    y[0] = f1;
    y[1] = g * (1.0 - (f1 / g) * (f1 / g));
}

// Smallest attainable first objective of ZDT6: the first hump of
// exp(-4x) sin^6(6 pi x) peaks where tan(6 pi x) = 9 pi.
double zdt6_f1_min() {
    static const double value = [] {
        const double x = std::atan(9.0 * kPi) / (6.0 * kPi);
        return 1.0 - std::exp(-4.0 * x) * std::pow(std::sin(6.0 * kPi * x), 6.0);
    }();
    return value;
}

// Rastrigin-style distance function shared by DTLZ1 and DTLZ3.
double dtlz_g_multimodal(std::span<const double> x, int m) {
    const std::size_t k = x.size() - static_cast<std::size_t>(m) + 1;
    double s = 0.0;
    for (std::size_t i = x.size() - k; i < x.size(); ++i) {
        const double t = x[i] - 0.5;
        s += t * t - std::cos(20.0 * kPi * t);
    }
    return 100.0 * (static_cast<double>(k) + s);
}

double dtlz_g_sphere(std::span<const double> x, int m) {
    const std::size_t k = x.size() - static_cast<std::size_t>(m) + 1;
    double s = 0.0;
    for (std::size_t i = x.size() - k; i < x.size(); ++i) {
        const double t = x[i] - 0.5;
        s += t * t;
    }
    return s;
}

void eval_dtlz1(std::span<const double> x, std::span<double> y) {
    const int m = static_cast<int>(y.size());
    const double g = dtlz_g_multimodal(x, m);
    for (int i = 0; i < m; ++i) {
        double v = 0.5 * (1.0 + g);
        for (int j = 0; j < m - 1 - i; ++j) v *= x[static_cast<std::size_t>(j)];
        if (i > 0) v *= 1.0 - x[static_cast<std::size_t>(m - 1 - i)];
        y[static_cast<std::size_t>(i)] = v;
    }
}

// DTLZ2/3/4 share the spherical objective shape; alpha is the DTLZ4 bias
// exponent (1 for DTLZ2/3), multimodal selects the DTLZ3 distance function.
void eval_dtlz_sphere(std::span<const double> x, std::span<double> y, double alpha,
                      bool multimodal) {
    const int m = static_cast<int>(y.size());
    const double g = multimodal ? dtlz_g_multimodal(x, m) : dtlz_g_sphere(x, m);
    for (int i = 0; i < m; ++i) {
        double v = 1.0 + g;
        for (int j = 0; j < m - 1 - i; ++j)
            v *= std::cos(std::pow(x[static_cast<std::size_t>(j)], alpha) * kPi / 2.0);
        if (i > 0)
            v *= std::sin(std::pow(x[static_cast<std::size_t>(m - 1 - i)], alpha) * kPi / 2.0);
        y[static_cast<std::size_t>(i)] = v;
    }
}

Problem base_problem(std::string id, int m, int n) {
    Problem p;
    p.id = std::move(id);
    p.m = m;
    p.n = n;
    p.lower.assign(static_cast<std::size_t>(n), 0.0);
    p.upper.assign(static_cast<std::size_t>(n), 1.0);
    return p;
}

// Stable closed forms for the ray scale (conjugate of the quadratic-root
// expressions, exact on the open interval lambda_1 in (0, 1)).
double zdt1_ray_scale(double l1) {
    return 2.0 / (2.0 - l1 + std::sqrt(4.0 * l1 - 3.0 * l1 * l1));
}

double zdt2_ray_scale(double l1) {
    return 2.0 / (1.0 - l1 + std::sqrt(5.0 * l1 * l1 - 2.0 * l1 + 1.0));
}

Problem make_zdt(const std::string& id, int n) {
    Problem p = base_problem(id, 2, n);
    p.pf_nadir = {1.0, 1.0};
    if (id == "zdt1") {
        p.evaluate_fn = eval_zdt1;
        p.pf_residual = [](std::span<const double> y) { return y[1] - (1.0 - std::sqrt(y[0])); };
        p.analytic_h_fn = [](std::span<const double> lambda) {
            const double k = zdt1_ray_scale(lambda[0]);
            return std::vector<double>{k * lambda[0], k * lambda[1]};
        };
    } else if (id == "zdt2") {
        p.evaluate_fn = eval_zdt2;
        p.pf_residual = [](std::span<const double> y) { return y[1] - (1.0 - y[0] * y[0]); };
        p.analytic_h_fn = [](std::span<const double> lambda) {
            const double k = zdt2_ray_scale(lambda[0]);
            return std::vector<double>{k * lambda[0], k * lambda[1]};
        };
    } else if (id == "zdt4") {
        p.evaluate_fn = eval_zdt4;
        for (int i = 1; i < n; ++i) {
            p.lower[static_cast<std::size_t>(i)] = -10.0;
            p.upper[static_cast<std::size_t>(i)] = 10.0;
        }
        p.pf_residual = [](std::span<const double> y) { return y[1] - (1.0 - std::sqrt(y[0])); };
    } else {  // zdt6
        p.evaluate_fn = eval_zdt6;
        p.pf_residual = [](std::span<const double> y) { return y[1] - (1.0 - y[0] * y[0]); };
        p.pf_contains = [](std::span<const double> y) { return y[0] >= zdt6_f1_min() - 1e-12; };
        p.pf_nadir = {1.0, 1.0 - zdt6_f1_min() * zdt6_f1_min()};
    }
    return p;
}

Problem make_dtlz(const std::string& id, int n) {
    Problem p = base_problem(id, 3, n);
    if (id == "dtlz1") {
        p.evaluate_fn = eval_dtlz1;
        p.pf_residual = [](std::span<const double> y) {
            double s = 0.0;
            for (double v : y) s += v;
            return s - 0.5;
        };
        p.pf_nadir = {0.5, 0.5, 0.5};
        p.analytic_h_fn = [](std::span<const double> lambda) {
            std::vector<double> y(lambda.size());
            for (std::size_t i = 0; i < lambda.size(); ++i) y[i] = 0.5 * lambda[i];
            return y;
        };
    } else {
        const bool multimodal = id == "dtlz3";
        const double alpha = id == "dtlz4" ? 100.0 : 1.0;
        p.evaluate_fn = [alpha, multimodal](std::span<const double> x, std::span<double> y) {
            eval_dtlz_sphere(x, y, alpha, multimodal);
        };
        p.pf_residual = [](std::span<const double> y) {
            double s = 0.0;
            for (double v : y) s += v * v;
            return s - 1.0;
        };
        p.pf_nadir = {1.0, 1.0, 1.0};
    }
    return p;
}

struct Registry {
    std::mutex mutex;
    std::map<std::string, std::function<Problem(int)>> factories;
};

void register_suite(Registry& r) {
    // Literature-standard default dimensions.
    const std::pair<const char*, int> suite[] = {
        {"zdt1", 30}, {"zdt2", 30}, {"zdt4", 10}, {"zdt6", 10},
        {"dtlz1", 7}, {"dtlz2", 12}, {"dtlz3", 12}, {"dtlz4", 12},
    };
    for (const auto& [id, default_n] : suite) {
        std::string name = id;
        int dn = default_n;
        r.factories[name] = [name, dn](int n) {
            const int dim = n > 0 ? n : dn;
            if (dim < 2) throw ConfigError(name + ": decision dimension must be >= 2");
            return name.starts_with("zdt") ? make_zdt(name, dim) : make_dtlz(name, dim);
        };
    }
}

Registry& registry() {
    static Registry reg;
    static std::once_flag once;
    std::call_once(once, [] { register_suite(reg); });
    return reg;
}

}  // namespace

void register_problem(const std::string& id, std::function<Problem(int)> factory) {
    Registry& reg = registry();
    std::lock_guard lock(reg.mutex);
    reg.factories[id] = std::move(factory);
}

Problem make(std::string_view id, int n) {
    Registry& reg = registry();
    std::function<Problem(int)> factory;
    {
        std::lock_guard lock(reg.mutex);
        auto it = reg.factories.find(std::string(id));
        if (it == reg.factories.end())
            throw NotAvailableError("unknown problem id: " + std::string(id));
        factory = it->second;
    }
    return factory(n);
}

std::vector<std::string> registered_ids() {
    Registry& reg = registry();
    std::lock_guard lock(reg.mutex);
    std::vector<std::string> ids;
    ids.reserve(reg.factories.size());
    for (const auto& [id, _] : reg.factories) ids.push_back(id);
    return ids;
}

std::vector<double> evaluate(const Problem& problem, std::span<const double> x) {
    if (static_cast<int>(x.size()) != problem.n)
        throw std::invalid_argument(problem.id + ": expected " + std::to_string(problem.n) +
                                    " variables, got " + std::to_string(x.size()));
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] >= problem.lower[i] && x[i] <= problem.upper[i]))
            throw std::domain_error(problem.id + ": variable " + std::to_string(i) +
                                    " out of bounds: " + std::to_string(x[i]));
    }
    std::vector<double> y(static_cast<std::size_t>(problem.m));
    problem.evaluate_fn(x, y);
    return y;
}

namespace {

void check_weight(const Problem& problem, std::span<const double> lambda, bool strict) {
    if (static_cast<int>(lambda.size()) != problem.m)
        throw std::invalid_argument(problem.id + ": weight must have " +
                                    std::to_string(problem.m) + " components");
    for (std::size_t i = 0; i < lambda.size(); ++i) {
        if (std::isnan(lambda[i]) || lambda[i] < 0.0 || (strict && lambda[i] == 0.0))
            throw std::domain_error(problem.id + ": weight component " + std::to_string(i) +
                                    " must be strictly positive");
    }
}

}  // namespace

std::vector<double> analytic_h(const Problem& problem, std::span<const double> lambda) {
    if (!problem.analytic_h_fn)
        throw NotAvailableError(problem.id + ": no closed-form weight-to-objective map");
    check_weight(problem, lambda, /*strict=*/true);
    return problem.analytic_h_fn(lambda);
}

std::vector<double> numeric_h_oracle(const Problem& problem, std::span<const double> lambda,
                                     double tol) {
    if (!problem.pf_residual)
        throw NotAvailableError(problem.id + ": Pareto front parameterization unknown");
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    check_weight(problem, lambda, /*strict=*/true);

    const auto point_at = [&](double k) {
        std::vector<double> y(lambda.size());
        for (std::size_t i = 0; i < lambda.size(); ++i) y[i] = k * lambda[i];
        return y;
    };

    // All suite fronts live inside [0,1]^m, so the scale is bracketed well
    // below 10. The residual is negative at the origin side of the front.
    constexpr double kMaxScale = 10.0;
    constexpr int kMaxIterations = 200;
    if (problem.pf_residual(point_at(kMaxScale)) < 0.0)
        throw NoIntersectionError(problem.id + ": weight ray does not reach the front");

    double lo = 0.0;
    double hi = kMaxScale;
    for (int it = 0; it < kMaxIterations && (hi - lo) > tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (problem.pf_residual(point_at(mid)) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    std::vector<double> y = point_at(0.5 * (lo + hi));
    if (problem.pf_contains && !problem.pf_contains(y))
        throw NoIntersectionError(problem.id + ": weight ray misses the attainable front");
    return y;
}

}  // namespace umoead::problems
