#include "umoead/pfl.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "nlohmann/json.hpp"
#include "umoead/errors.hpp"
#include "umoead/rng.hpp"

namespace umoead::pfl {

namespace {

// Offset of layer l's weight block inside the flat parameter vector; the
// bias block follows the weights. Layer l maps dims[l] -> dims[l+1].
std::size_t layer_offset(const std::vector<int>& dims, int layer) {
    std::size_t off = 0;
    for (int l = 0; l < layer; ++l)
        off += static_cast<std::size_t>(dims[l] + 1) * static_cast<std::size_t>(dims[l + 1]);
    return off;
}

std::size_t total_params(const std::vector<int>& dims) {
    return layer_offset(dims, static_cast<int>(dims.size()) - 1);
}

}  // namespace

PflModel::PflModel(int num_objectives, std::vector<int> hidden, std::uint64_t seed) {
    if (num_objectives < 2) throw ConfigError("PflModel: need at least 2 objectives");
    dims_.push_back(num_objectives - 1);
    for (int h : hidden) {
        if (h < 1) throw ConfigError("PflModel: hidden widths must be positive");
        dims_.push_back(h);
    }
    dims_.push_back(num_objectives);

    params_.assign(total_params(dims_), 0.0);
    auto rng = rng::substream(seed, 0x9F1DA7A5ULL);
    for (int l = 0; l + 1 < static_cast<int>(dims_.size()); ++l) {
        const int fan_in = dims_[static_cast<std::size_t>(l)];
        const int fan_out = dims_[static_cast<std::size_t>(l) + 1];
        const double bound = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
        std::uniform_real_distribution<double> dist(-bound, bound);
        double* w = params_.data() + layer_offset(dims_, l);
        for (int i = 0; i < fan_out * fan_in; ++i) w[i] = dist(rng);
        // biases stay zero
    }
}

void PflModel::forward(std::span<const double> theta, std::span<double> y) const {
    if (static_cast<int>(theta.size()) != input_dim() ||
        static_cast<int>(y.size()) != output_dim())
        throw std::invalid_argument("PflModel::forward: dimension mismatch");

    std::vector<double> act(theta.begin(), theta.end());
    const int layers = static_cast<int>(dims_.size()) - 1;
    for (int l = 0; l < layers; ++l) {
        const int in = dims_[static_cast<std::size_t>(l)];
        const int out = dims_[static_cast<std::size_t>(l) + 1];
        const double* w = params_.data() + layer_offset(dims_, l);
        const double* b = w + static_cast<std::size_t>(out) * static_cast<std::size_t>(in);
        std::vector<double> next(static_cast<std::size_t>(out));
        for (int o = 0; o < out; ++o) {
            double s = b[o];
            const double* row = w + static_cast<std::size_t>(o) * static_cast<std::size_t>(in);
            for (int i = 0; i < in; ++i) s += row[i] * act[static_cast<std::size_t>(i)];
            next[static_cast<std::size_t>(o)] = l + 1 < layers ? std::tanh(s) : s;
        }
        act = std::move(next);
    }
    std::copy(act.begin(), act.end(), y.begin());
}

Jacobian PflModel::input_jacobian(std::span<const double> theta) const {
    if (static_cast<int>(theta.size()) != input_dim())
        throw std::invalid_argument("PflModel::input_jacobian: dimension mismatch");

    const int layers = static_cast<int>(dims_.size()) - 1;
    // Forward accumulation: carry d(act)/d(theta) through every layer.
    std::vector<double> act(theta.begin(), theta.end());
    Jacobian jac(input_dim(), input_dim());
    for (int i = 0; i < input_dim(); ++i) jac.at(i, i) = 1.0;

    for (int l = 0; l < layers; ++l) {
        const int in = dims_[static_cast<std::size_t>(l)];
        const int out = dims_[static_cast<std::size_t>(l) + 1];
        const double* w = params_.data() + layer_offset(dims_, l);
        const double* b = w + static_cast<std::size_t>(out) * static_cast<std::size_t>(in);
        std::vector<double> next(static_cast<std::size_t>(out));
        Jacobian next_jac(out, input_dim());
        for (int o = 0; o < out; ++o) {
            const double* row = w + static_cast<std::size_t>(o) * static_cast<std::size_t>(in);
            double s = b[o];
            for (int i = 0; i < in; ++i) s += row[i] * act[static_cast<std::size_t>(i)];
            double scale = 1.0;
            if (l + 1 < layers) {
                const double t = std::tanh(s);
                next[static_cast<std::size_t>(o)] = t;
                scale = 1.0 - t * t;
            } else {
                next[static_cast<std::size_t>(o)] = s;
            }
            for (int c = 0; c < input_dim(); ++c) {
                double g = 0.0;
                for (int i = 0; i < in; ++i) g += row[i] * jac.at(i, c);
                next_jac.at(o, c) = scale * g;
            }
        }
        act = std::move(next);
        jac = std::move(next_jac);
    }
    return jac;
}

std::vector<std::vector<double>> PflModel::forward_batch(
    const std::vector<std::vector<double>>& thetas) const {
    std::vector<std::vector<double>> out;
    out.reserve(thetas.size());
    for (const auto& theta : thetas) out.push_back(predict(theta));
    return out;
}

double PflModel::mse(std::span<const TrainingPair> pairs) const {
    if (pairs.empty()) throw ConfigError("PflModel: empty training set");
    double loss = 0.0;
    std::vector<double> y(static_cast<std::size_t>(output_dim()));
    for (const TrainingPair& p : pairs) {
        forward(p.theta, y);
        for (std::size_t i = 0; i < y.size(); ++i) {
            const double d = y[i] - p.y[i];
            loss += d * d;
        }
    }
    return loss / static_cast<double>(pairs.size());
}

std::vector<double> PflModel::parameter_gradient(std::span<const TrainingPair> pairs) const {
    if (pairs.empty()) throw ConfigError("PflModel: empty training set");
    const int layers = static_cast<int>(dims_.size()) - 1;
    std::vector<double> grad(params_.size(), 0.0);

    // Per-layer activations for one sample, then standard backprop.
    std::vector<std::vector<double>> acts(static_cast<std::size_t>(layers) + 1);
    for (const TrainingPair& p : pairs) {
        acts[0].assign(p.theta.begin(), p.theta.end());
        for (int l = 0; l < layers; ++l) {
            const int in = dims_[static_cast<std::size_t>(l)];
            const int out = dims_[static_cast<std::size_t>(l) + 1];
            const double* w = params_.data() + layer_offset(dims_, l);
            const double* b = w + static_cast<std::size_t>(out) * static_cast<std::size_t>(in);
            acts[static_cast<std::size_t>(l) + 1].assign(static_cast<std::size_t>(out), 0.0);
            for (int o = 0; o < out; ++o) {
                const double* row = w + static_cast<std::size_t>(o) * static_cast<std::size_t>(in);
                double s = b[o];
                for (int i = 0; i < in; ++i)
                    s += row[i] * acts[static_cast<std::size_t>(l)][static_cast<std::size_t>(i)];
                acts[static_cast<std::size_t>(l) + 1][static_cast<std::size_t>(o)] =
                    l + 1 < layers ? std::tanh(s) : s;
            }
        }

        // d(loss)/d(output) for loss = mean over pairs of ||pred - y||^2.
        std::vector<double> delta(acts.back().size());
        for (std::size_t i = 0; i < delta.size(); ++i)
            delta[i] = 2.0 * (acts.back()[i] - p.y[i]) / static_cast<double>(pairs.size());

        for (int l = layers - 1; l >= 0; --l) {
            const int in = dims_[static_cast<std::size_t>(l)];
            const int out = dims_[static_cast<std::size_t>(l) + 1];
            const double* w = params_.data() + layer_offset(dims_, l);
            double* gw = grad.data() + layer_offset(dims_, l);
            double* gb = gw + static_cast<std::size_t>(out) * static_cast<std::size_t>(in);
            const auto& below = acts[static_cast<std::size_t>(l)];
            std::vector<double> delta_below(static_cast<std::size_t>(in), 0.0);
            for (int o = 0; o < out; ++o) {
                const double d = delta[static_cast<std::size_t>(o)];
                const double* row = w + static_cast<std::size_t>(o) * static_cast<std::size_t>(in);
                double* grow = gw + static_cast<std::size_t>(o) * static_cast<std::size_t>(in);
                gb[o] += d;
                for (int i = 0; i < in; ++i) {
                    grow[i] += d * below[static_cast<std::size_t>(i)];
                    delta_below[static_cast<std::size_t>(i)] += d * row[i];
                }
            }
            if (l > 0) {
                // Pull the gradient through the tanh of the layer below.
                for (int i = 0; i < in; ++i) {
                    const double a = below[static_cast<std::size_t>(i)];
                    delta_below[static_cast<std::size_t>(i)] *= 1.0 - a * a;
                }
            }
            delta = std::move(delta_below);
        }
    }
    return grad;
}

std::vector<double> PflModel::fit(std::span<const TrainingPair> pairs, int epochs, double lr,
                                  const FitOptions& options) {
    if (pairs.empty()) throw ConfigError("PflModel: empty training set");
    for (const TrainingPair& p : pairs) {
        if (static_cast<int>(p.theta.size()) != input_dim() ||
            static_cast<int>(p.y.size()) != output_dim())
            throw std::invalid_argument("PflModel::fit: pair dimension mismatch");
    }
    std::vector<double> history;
    history.reserve(static_cast<std::size_t>(epochs) + 1);
    std::vector<double> velocity(params_.size(), 0.0);
    std::vector<double> second(params_.size(), 0.0);
    constexpr double kBeta1 = 0.9;
    constexpr double kBeta2 = 0.999;
    constexpr double kEps = 1e-8;
    for (int e = 0; e < epochs; ++e) {
        history.push_back(mse(pairs));
        const std::vector<double> grad = parameter_gradient(pairs);
        if (options.adam) {
            const double t = static_cast<double>(e) + 1.0;
            const double correction =
                std::sqrt(1.0 - std::pow(kBeta2, t)) / (1.0 - std::pow(kBeta1, t));
            for (std::size_t i = 0; i < params_.size(); ++i) {
                velocity[i] = kBeta1 * velocity[i] + (1.0 - kBeta1) * grad[i];
                second[i] = kBeta2 * second[i] + (1.0 - kBeta2) * grad[i] * grad[i];
                params_[i] -= lr * correction * velocity[i] / (std::sqrt(second[i]) + kEps);
            }
        } else {
            for (std::size_t i = 0; i < params_.size(); ++i) {
                velocity[i] = options.momentum * velocity[i] - lr * grad[i];
                params_[i] += velocity[i];
            }
        }
    }
    history.push_back(mse(pairs));
    return history;
}

void PflModel::save(const std::filesystem::path& path) const {
    nlohmann::json header;
    header["layer_dims"] = dims_;
    header["activation"] = "tanh";
    header["param_count"] = params_.size();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open checkpoint for writing: " + path.string());
    out << header.dump() << '\n';
    for (double v : params_) {
        std::uint64_t bits;
        std::memcpy(&bits, &v, sizeof bits);
        unsigned char bytes[8];
        for (int i = 0; i < 8; ++i) bytes[i] = static_cast<unsigned char>(bits >> (8 * i));
        out.write(reinterpret_cast<const char*>(bytes), 8);
    }
    if (!out) throw std::runtime_error("failed writing checkpoint: " + path.string());
}

PflModel PflModel::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open checkpoint: " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("truncated checkpoint: " + path.string());
    const nlohmann::json header = nlohmann::json::parse(line);
    const std::vector<int> dims = header.at("layer_dims").get<std::vector<int>>();
    if (dims.size() < 2 || dims.back() < 2)
        throw std::runtime_error("invalid checkpoint header: " + path.string());

    std::vector<int> hidden(dims.begin() + 1, dims.end() - 1);
    PflModel model(dims.back(), hidden, 0);
    if (model.dims_ != dims) throw std::runtime_error("inconsistent checkpoint dims");
    const std::size_t count = header.at("param_count").get<std::size_t>();
    if (count != model.params_.size())
        throw std::runtime_error("checkpoint parameter count mismatch");
    for (std::size_t i = 0; i < count; ++i) {
        unsigned char bytes[8];
        if (!in.read(reinterpret_cast<char*>(bytes), 8))
            throw std::runtime_error("truncated checkpoint payload: " + path.string());
        std::uint64_t bits = 0;
        for (int b = 0; b < 8; ++b) bits |= static_cast<std::uint64_t>(bytes[b]) << (8 * b);
        std::memcpy(&model.params_[i], &bits, sizeof(double));
    }
    return model;
}

}  // namespace umoead::pfl
