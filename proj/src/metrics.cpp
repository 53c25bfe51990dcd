#include "umoead/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "nlohmann/json.hpp"
#include "umoead/errors.hpp"
#include "umoead/rng.hpp"
#include "umoead/uniformity.hpp"

namespace umoead::metrics {

namespace {

constexpr std::uint64_t kMonteCarloTag = 0x48564D43ULL;
constexpr std::size_t kDefaultMcSamples = 1000000;

// Only points strictly inside the reference box contribute.
std::vector<std::vector<double>> inside_ref(std::span<const std::vector<double>> points,
                                            std::span<const double> ref) {
    std::vector<std::vector<double>> kept;
    for (const auto& p : points) {
        if (p.size() != ref.size())
            throw std::invalid_argument("hypervolume: point/reference dimension mismatch");
        bool in = true;
        for (std::size_t i = 0; i < ref.size(); ++i)
            if (!(p[i] < ref[i])) {
                in = false;
                break;
            }
        if (in) kept.push_back(p);
    }
    return kept;
}

double hv2_sorted(std::vector<std::pair<double, double>>& pts, double ref0, double ref1) {
    std::sort(pts.begin(), pts.end());
    double hv = 0.0;
    double min_y2 = ref1;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double next_x = i + 1 < pts.size() ? pts[i + 1].first : ref0;
        min_y2 = std::min(min_y2, pts[i].second);
        hv += (next_x - pts[i].first) * (ref1 - min_y2);
    }
    return hv;
}

double hv2(const std::vector<std::vector<double>>& pts, double ref0, double ref1) {
    std::vector<std::pair<double, double>> xy;
    xy.reserve(pts.size());
    for (const auto& p : pts) xy.emplace_back(p[0], p[1]);
    return hv2_sorted(xy, ref0, ref1);
}

// Slice along the third objective: within the slab [z_k, z_{k+1}) the
// dominated area is the 2-D hypervolume of every point at or below z_k.
double hv3(const std::vector<std::vector<double>>& pts, std::span<const double> ref) {
    std::vector<double> zs;
    zs.reserve(pts.size());
    for (const auto& p : pts) zs.push_back(p[2]);
    std::sort(zs.begin(), zs.end());
    zs.erase(std::unique(zs.begin(), zs.end()), zs.end());

    double hv = 0.0;
    for (std::size_t k = 0; k < zs.size(); ++k) {
        const double top = k + 1 < zs.size() ? zs[k + 1] : ref[2];
        std::vector<std::pair<double, double>> slab;
        for (const auto& p : pts)
            if (p[2] <= zs[k]) slab.emplace_back(p[0], p[1]);
        hv += (top - zs[k]) * hv2_sorted(slab, ref[0], ref[1]);
    }
    return hv;
}

}  // namespace

double hypervolume(std::span<const std::vector<double>> points, std::span<const double> ref) {
    const int m = static_cast<int>(ref.size());
    if (m < 2) throw ConfigError("hypervolume: need at least 2 objectives");
    const std::vector<std::vector<double>> pts = inside_ref(points, ref);
    if (pts.empty()) return 0.0;
    if (m == 2) return hv2(pts, ref[0], ref[1]);
    if (m == 3) return hv3(pts, ref);
    return hypervolume_monte_carlo(points, ref, kDefaultMcSamples, 0).value;
}

McEstimate hypervolume_monte_carlo(std::span<const std::vector<double>> points,
                                   std::span<const double> ref, std::size_t samples,
                                   std::uint64_t seed) {
    const int m = static_cast<int>(ref.size());
    if (m < 2) throw ConfigError("hypervolume: need at least 2 objectives");
    if (samples == 0) throw std::invalid_argument("hypervolume_monte_carlo: need samples > 0");
    std::vector<std::vector<double>> pts = inside_ref(points, ref);
    McEstimate est;
    if (pts.empty()) return est;

    std::vector<double> lo(ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i) {
        lo[i] = std::numeric_limits<double>::infinity();
        for (const auto& p : pts) lo[i] = std::min(lo[i], p[i]);
    }
    double box = 1.0;
    for (std::size_t i = 0; i < ref.size(); ++i) box *= ref[i] - lo[i];

    // Early-exit point order: ascending first objective lets the scan stop
    // once no remaining point can dominate the sample.
    std::sort(pts.begin(), pts.end(),
              [](const auto& a, const auto& b) { return a[0] < b[0]; });

    auto rng = rng::substream(seed, kMonteCarloTag);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> u(ref.size());
    std::size_t hits = 0;
    for (std::size_t s = 0; s < samples; ++s) {
        for (std::size_t i = 0; i < ref.size(); ++i) u[i] = lo[i] + (ref[i] - lo[i]) * unit(rng);
        for (const auto& p : pts) {
            if (p[0] > u[0]) break;
            bool dominates = true;
            for (std::size_t i = 1; i < ref.size(); ++i)
                if (p[i] > u[i]) {
                    dominates = false;
                    break;
                }
            if (dominates) {
                ++hits;
                break;
            }
        }
    }
    const double frac = static_cast<double>(hits) / static_cast<double>(samples);
    est.value = box * frac;
    est.std_error = box * std::sqrt(frac * (1.0 - frac) / static_cast<double>(samples));
    return est;
}

double spacing(std::span<const std::vector<double>> points) {
    const std::size_t n = points.size();
    if (n < 2) throw ConfigError("spacing: need at least 2 points");
    std::vector<double> nn(n, std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double s = 0.0;
            for (std::size_t c = 0; c < points[i].size(); ++c) {
                const double d = points[i][c] - points[j][c];
                s += d * d;
            }
            const double dist = std::sqrt(s);
            nn[i] = std::min(nn[i], dist);
            nn[j] = std::min(nn[j], dist);
        }
    }
    double mean = 0.0;
    for (double d : nn) mean += d;
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (double d : nn) var += (d - mean) * (d - mean);
    return std::sqrt(var / static_cast<double>(n));
}

double sparsity(std::span<const std::vector<double>> points) {
    const std::size_t n = points.size();
    if (n < 2) throw ConfigError("sparsity: need at least 2 points");
    const std::size_t m = points[0].size();
    double total = 0.0;
    std::vector<double> column(n);
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t i = 0; i < n; ++i) column[i] = points[i][j];
        std::sort(column.begin(), column.end());
        for (std::size_t i = 0; i + 1 < n; ++i) {
            const double d = column[i + 1] - column[i];
            total += d * d;
        }
    }
    return total / static_cast<double>(n - 1);
}

MetricsRecord report(std::span<const std::vector<double>> points, std::span<const double> ref,
                     double soft_k) {
    if (points.size() < 2) throw ConfigError("metrics report: need at least 2 points");
    MetricsRecord record;
    record.hv = hypervolume(points, ref);
    record.spacing = spacing(points);
    record.sparsity = sparsity(points);
    const uniformity::SeparationReport sep = uniformity::min_pairwise(points, soft_k);
    record.delta = sep.delta;
    record.soft_delta = sep.soft_delta;
    record.ref_point.assign(ref.begin(), ref.end());
    record.soft_k = soft_k;
    return record;
}

std::string record_to_json_string(const MetricsRecord& record) {
    nlohmann::json j;
    j["hv"] = record.hv;
    j["spacing"] = record.spacing;
    j["sparsity"] = record.sparsity;
    j["delta"] = record.delta;
    j["soft_delta"] = record.soft_delta;
    j["ref_point"] = record.ref_point;
    j["K"] = record.soft_k;
    return j.dump();
}

MetricsRecord record_from_json_string(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    MetricsRecord record;
    record.hv = j.at("hv").get<double>();
    record.spacing = j.at("spacing").get<double>();
    record.sparsity = j.at("sparsity").get<double>();
    record.delta = j.at("delta").get<double>();
    record.soft_delta = j.at("soft_delta").get<double>();
    record.ref_point = j.at("ref_point").get<std::vector<double>>();
    record.soft_k = j.at("K").get<double>();
    return record;
}

}  // namespace umoead::metrics
