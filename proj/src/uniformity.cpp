#include "umoead/uniformity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <stdexcept>

#include "umoead/errors.hpp"
#include "umoead/rng.hpp"

namespace umoead::uniformity {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

double distance(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

}  // namespace

SeparationReport min_pairwise(std::span<const std::vector<double>> points, double soft_k) {
    const std::size_t n = points.size();
    if (n < 2) throw ConfigError("min_pairwise: need at least 2 points");
    SeparationReport report;
    report.delta = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = distance(points[i], points[j]);
            if (d < report.delta) {
                report.delta = d;
                report.first = i;
                report.second = j;
            }
        }
    }
    report.soft_delta = soft_min_pairwise(points, soft_k);
    return report;
}

double soft_min_pairwise(std::span<const std::vector<double>> points, double K) {
    const std::size_t n = points.size();
    if (n < 2) throw ConfigError("soft_min_pairwise: need at least 2 points");
    if (!(K > 0.0)) throw std::invalid_argument("soft_min_pairwise: K must be positive");

    double d_min = std::numeric_limits<double>::infinity();
    std::vector<double> dists;
    dists.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = distance(points[i], points[j]);
            dists.push_back(d);
            d_min = std::min(d_min, d);
        }
    }
    // Ordered pairs count each unordered pair twice; shift by the minimum
    // to keep the exponentials in range.
    double s = 0.0;
    for (double d : dists) s += 2.0 * std::exp(-K * (d - d_min));
    return d_min - std::log(s) / K;
}

std::vector<double> project_box(std::vector<double> theta) {
    for (double& t : theta) t = std::clamp(t, 0.0, kHalfPi);
    return theta;
}

namespace {

struct PairDistances {
    std::vector<std::vector<double>> d;  // full symmetric matrix, zero diagonal

    explicit PairDistances(std::span<const std::vector<double>> pts)
        : d(pts.size(), std::vector<double>(pts.size(), 0.0)) {
        for (std::size_t i = 0; i + 1 < pts.size(); ++i)
            for (std::size_t j = i + 1; j < pts.size(); ++j)
                d[i][j] = d[j][i] = distance(pts[i], pts[j]);
    }

    void refresh_row(std::span<const std::vector<double>> pts, std::size_t i) {
        for (std::size_t j = 0; j < pts.size(); ++j) {
            if (j == i) continue;
            d[i][j] = d[j][i] = distance(pts[i], pts[j]);
        }
    }

    double minimum(std::size_t* arg_i = nullptr, std::size_t* arg_j = nullptr) const {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i + 1 < d.size(); ++i) {
            for (std::size_t j = i + 1; j < d.size(); ++j) {
                if (d[i][j] < best) {
                    best = d[i][j];
                    if (arg_i) *arg_i = i;
                    if (arg_j) *arg_j = j;
                }
            }
        }
        return best;
    }
};

// Accumulates J_i^T (y_i - y_j) / rho into grad[i] (and the mirrored term
// into grad[j]) scaled by weight.
void add_pair_gradient(const pfl::Surrogate& model,
                       const std::vector<std::vector<double>>& angles,
                       const std::vector<std::vector<double>>& preds, std::size_t i,
                       std::size_t j, double dist, double weight,
                       std::vector<std::vector<double>>& grad) {
    if (dist <= 0.0) return;
    const int m = model.output_dim();
    const int q = model.input_dim();
    std::vector<double> diff(static_cast<std::size_t>(m));
    for (int c = 0; c < m; ++c)
        diff[static_cast<std::size_t>(c)] =
            (preds[i][static_cast<std::size_t>(c)] - preds[j][static_cast<std::size_t>(c)]) / dist;
    const pfl::Jacobian ji = model.input_jacobian(angles[i]);
    const pfl::Jacobian jj = model.input_jacobian(angles[j]);
    for (int c = 0; c < q; ++c) {
        double gi = 0.0;
        double gj = 0.0;
        for (int r = 0; r < m; ++r) {
            gi += ji.at(r, c) * diff[static_cast<std::size_t>(r)];
            gj -= jj.at(r, c) * diff[static_cast<std::size_t>(r)];
        }
        grad[i][static_cast<std::size_t>(c)] += weight * gi;
        grad[j][static_cast<std::size_t>(c)] += weight * gj;
    }
}

}  // namespace

AdjustResult adjust_angles(const pfl::Surrogate& model,
                           std::vector<std::vector<double>> angles,
                           const AdjustConfig& config) {
    const std::size_t n = angles.size();
    if (n < 2) throw ConfigError("adjust_angles: need at least 2 angles");
    const int q = model.input_dim();
    for (auto& theta : angles) {
        if (static_cast<int>(theta.size()) != q)
            throw std::invalid_argument("adjust_angles: angle dimension mismatch");
        theta = project_box(std::move(theta));
    }

    std::vector<std::vector<double>> preds(n);
    for (std::size_t i = 0; i < n; ++i) preds[i] = model.predict(angles[i]);

    // A model collapsing everything to one prediction has no usable
    // gradient anywhere.
    {
        double spread = 0.0;
        for (std::size_t i = 1; i < n; ++i) spread = std::max(spread, distance(preds[0], preds[i]));
        if (spread == 0.0) {
            AdjustResult result;
            result.angles = std::move(angles);
            result.delta = 0.0;
            result.status = AdjustStatus::DegenerateModel;
            return result;
        }
    }

    PairDistances dist(preds);

    // Duplicated predictions start with a zero subgradient; nudge the
    // affected angles deterministically to break the tie.
    if (dist.minimum() == 0.0) {
        for (std::size_t i = 0; i + 1 < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                if (dist.d[i][j] > 0.0) continue;
                for (int c = 0; c < q; ++c) {
                    const auto bit = rng::splitmix64((j << 20) ^ static_cast<std::uint64_t>(c));
                    angles[j][static_cast<std::size_t>(c)] += (bit & 1) ? 1e-3 : -1e-3;
                }
                angles[j] = project_box(std::move(angles[j]));
                preds[j] = model.predict(angles[j]);
                dist.refresh_row(preds, j);
            }
        }
    }

    std::vector<std::vector<double>> best_angles = angles;
    double best_delta = dist.minimum();
    double lr = config.lr;
    int stall = 0;

    std::vector<std::vector<double>> grad(n, std::vector<double>(static_cast<std::size_t>(q)));
    for (int step = 0; step < config.steps && lr > 0.0; ++step) {
        for (auto& g : grad) std::fill(g.begin(), g.end(), 0.0);
        std::set<std::size_t> moved;

        if (config.objective == AscentObjective::HardMin) {
            const double current = dist.minimum();
            // Subgradient of the min: only the tied minimal pairs move.
            std::vector<std::pair<std::size_t, std::size_t>> tied;
            for (std::size_t i = 0; i + 1 < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j)
                    if (dist.d[i][j] <= current + config.tie_eps) tied.emplace_back(i, j);
            const double w = 1.0 / static_cast<double>(tied.size());
            for (const auto& [i, j] : tied) {
                add_pair_gradient(model, angles, preds, i, j, dist.d[i][j], w, grad);
                moved.insert(i);
                moved.insert(j);
            }
        } else {
            // Smooth ascent of the log-sum-exp relaxation: every pair
            // contributes with its softmax weight.
            const double d_min = dist.minimum();
            double total = 0.0;
            for (std::size_t i = 0; i + 1 < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j)
                    total += 2.0 * std::exp(-config.soft_k * (dist.d[i][j] - d_min));
            for (std::size_t i = 0; i + 1 < n; ++i) {
                for (std::size_t j = i + 1; j < n; ++j) {
                    const double w =
                        2.0 * std::exp(-config.soft_k * (dist.d[i][j] - d_min)) / total;
                    if (w < 1e-14) continue;
                    add_pair_gradient(model, angles, preds, i, j, dist.d[i][j], w, grad);
                    moved.insert(i);
                    moved.insert(j);
                }
            }
        }

        for (std::size_t i : moved) {
            bool changed = false;
            for (int c = 0; c < q; ++c) {
                if (grad[i][static_cast<std::size_t>(c)] != 0.0) changed = true;
                angles[i][static_cast<std::size_t>(c)] += lr * grad[i][static_cast<std::size_t>(c)];
            }
            angles[i] = project_box(std::move(angles[i]));
            if (changed) {
                preds[i] = model.predict(angles[i]);
                dist.refresh_row(preds, i);
            }
        }

        const double delta = dist.minimum();
        if (delta > best_delta) {
            best_delta = delta;
            best_angles = angles;
            stall = 0;
        } else if (++stall >= config.halving_patience) {
            lr *= 0.5;
            stall = 0;
        }
    }

    AdjustResult result;
    result.angles = std::move(best_angles);
    result.delta = best_delta;
    result.status = AdjustStatus::Ok;
    return result;
}

}  // namespace umoead::uniformity
