#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace umoead::pfl {

/// Dense row-major matrix, sized rows x cols.
struct Jacobian {
    int rows = 0;
    int cols = 0;
    std::vector<double> a;

    Jacobian() = default;
    Jacobian(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0.0) {}
    double& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
    double at(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }
};

/// Any differentiable map from weight angles to predicted objectives. The
/// weight-adjustment ascent only needs forward values and input Jacobians,
/// so frozen analytic surrogates can stand in for a trained model in tests.
class Surrogate {
public:
    virtual ~Surrogate() = default;
    virtual int input_dim() const = 0;
    virtual int output_dim() const = 0;
    virtual void forward(std::span<const double> theta, std::span<double> y) const = 0;
    virtual Jacobian input_jacobian(std::span<const double> theta) const = 0;

    std::vector<double> predict(std::span<const double> theta) const {
        std::vector<double> y(static_cast<std::size_t>(output_dim()));
        forward(theta, y);
        return y;
    }
};

struct TrainingPair {
    std::vector<double> theta;
    std::vector<double> y;
};

struct FitOptions {
    double momentum = 0.0;
    bool adam = false;  // adaptive per-parameter steps; lr is the Adam step size
};

/// Fully-connected tanh network mapping an (m-1)-dim weight angle to an
/// m-dim objective prediction. Parameters live in one flat vector, layer by
/// layer (weights row-major, then biases).
class PflModel final : public Surrogate {
public:
    PflModel(int num_objectives, std::vector<int> hidden, std::uint64_t seed);

    int input_dim() const override { return dims_.front(); }
    int output_dim() const override { return dims_.back(); }
    void forward(std::span<const double> theta, std::span<double> y) const override;
    Jacobian input_jacobian(std::span<const double> theta) const override;

    std::vector<std::vector<double>> forward_batch(
        const std::vector<std::vector<double>>& thetas) const;

    /// Full-batch gradient descent on the mean squared error. Returns the
    /// loss before each update plus the final loss (size epochs + 1).
    std::vector<double> fit(std::span<const TrainingPair> pairs, int epochs, double lr,
                            const FitOptions& options = FitOptions{});

    double mse(std::span<const TrainingPair> pairs) const;

    /// Gradient of the MSE loss with respect to the flat parameter vector.
    std::vector<double> parameter_gradient(std::span<const TrainingPair> pairs) const;

    const std::vector<int>& layer_dims() const { return dims_; }
    const std::vector<double>& parameters() const { return params_; }
    std::vector<double>& parameters() { return params_; }

    /// Checkpoint format: one-line JSON header, then the parameters as
    /// little-endian 64-bit reals.
    void save(const std::filesystem::path& path) const;
    static PflModel load(const std::filesystem::path& path);

private:
    std::vector<int> dims_;  // [m-1, hidden..., m]
    std::vector<double> params_;
};

}  // namespace umoead::pfl
