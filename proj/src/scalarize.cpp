#include "umoead/scalarize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace umoead::scalarize {

std::vector<double> clamp_weight(std::span<const double> lambda) {
    std::vector<double> w(lambda.begin(), lambda.end());
    double sum = 0.0;
    for (double& v : w) {
        v = std::max(v, kWeightFloor);
        sum += v;
    }
    for (double& v : w) v /= sum;
    return w;
}

double mtche(std::span<const double> y, std::span<const double> lambda,
             std::span<const double> z) {
    if (y.size() != lambda.size() || y.size() != z.size())
        throw std::invalid_argument("mtche: mismatched dimensions");
    const std::vector<double> w = clamp_weight(lambda);
    double value = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (std::isnan(y[i]) || std::isnan(z[i]))
            throw std::domain_error("mtche: NaN input");
        value = std::max(value, (y[i] - z[i]) / w[i]);
    }
    return value;
}

std::vector<double> angle_to_weight(std::span<const double> theta) {
    const std::size_t m = theta.size() + 1;
    std::vector<double> lambda(m);
    double sine_product = 1.0;  // product of sin^2 over the leading angles
    for (std::size_t i = 0; i + 1 < m; ++i) {
        const double c = std::cos(theta[i]);
        const double s = std::sin(theta[i]);
        lambda[i] = sine_product * c * c;
        sine_product *= s * s;
    }
    lambda[m - 1] = sine_product;
    return lambda;
}

std::vector<double> weight_to_angle(std::span<const double> lambda) {
    if (lambda.size() < 2) throw std::invalid_argument("weight_to_angle: need m >= 2");
    const std::size_t m = lambda.size();
    std::vector<double> theta(m - 1, 0.0);
    double sine_product = 1.0;  // product of sin over the resolved angles
    for (std::size_t i = 0; i + 1 < m; ++i) {
        if (sine_product < 1e-12) break;  // remaining mass is zero; angles stay 0
        double c = std::sqrt(std::max(lambda[i], 0.0)) / sine_product;
        c = std::clamp(c, -1.0, 1.0);
        theta[i] = std::acos(c);
        sine_product *= std::sin(theta[i]);
    }
    return theta;
}

namespace {

void das_dennis_rec(int m, int H, int remaining, std::vector<double>& prefix,
                    std::vector<std::vector<double>>& out) {
    if (static_cast<int>(prefix.size()) == m - 1) {
        prefix.push_back(static_cast<double>(remaining) / H);
        out.push_back(prefix);
        prefix.pop_back();
        return;
    }
    for (int ticks = 0; ticks <= remaining; ++ticks) {
        prefix.push_back(static_cast<double>(ticks) / H);
        das_dennis_rec(m, H, remaining - ticks, prefix, out);
        prefix.pop_back();
    }
}

}  // namespace

std::vector<std::vector<double>> das_dennis(int m, int H) {
    if (m < 2 || H < 1) throw std::invalid_argument("das_dennis: need m >= 2 and H >= 1");
    std::vector<std::vector<double>> out;
    std::vector<double> prefix;
    das_dennis_rec(m, H, H, prefix, out);
    return out;
}

void update_ideal(std::vector<double>& z, std::span<const double> y) {
    if (z.size() != y.size()) throw std::invalid_argument("update_ideal: mismatched dimensions");
    for (std::size_t i = 0; i < z.size(); ++i) z[i] = std::min(z[i], y[i]);
}

}  // namespace umoead::scalarize
