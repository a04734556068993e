#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace wncs {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Thrown when the dense eigensolver fails to converge or its result does not
// pass the determinant consistency check. No partial spectrum is returned.
class spectrum_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Discrete-time LTI loop  x[t+1] = A x[t] + B u[t] + w[t],  y[t] = C x[t],
// with w[t] ~ N(0, Sigma). Construction validates every shape and the
// covariance; instances are immutable afterwards.
class PlantModel {
public:
    static constexpr double kSymmetryTol = 1e-9;
    static constexpr double kPsdTol = 1e-9;

    PlantModel(Matrix a, Matrix b, Matrix c, std::optional<Matrix> sigma = std::nullopt);

    const Matrix& a() const { return a_; }
    const Matrix& b() const { return b_; }
    const Matrix& c() const { return c_; }
    const Matrix& sigma() const { return sigma_; }

    Eigen::Index states() const { return a_.rows(); }
    Eigen::Index inputs() const { return b_.cols(); }

private:
    Matrix a_;
    Matrix b_;
    Matrix c_;
    Matrix sigma_;
};

struct EigenAnalysis {
    std::vector<double> magnitudes;  // |lambda_i(A)|, in solver order
    double unstable_product = 1.0;   // product of magnitudes above 1 + tol
    double rate_threshold_bits = 0.0;
};

struct StepResult {
    Vector x_next;
    double y = 0.0;
};

struct StateTrajectory {
    std::vector<Vector> states;   // x[0..T]
    std::vector<Vector> inputs;   // u[0..T-1]
    std::vector<double> outputs;  // y[0..T]
};

inline constexpr double kDefaultEigenTol = 1e-9;
inline constexpr int kEigenMaxIterations = 1000;

// Magnitudes strictly above 1 + tol count as unstable. Throws spectrum_error
// when the QR iteration exceeds max_iterations.
EigenAnalysis eigen_analyze(const PlantModel& plant, double tol = kDefaultEigenTol,
                            int max_iterations = kEigenMaxIterations);

// Rate threshold log2(product) for a known unstable-eigenvalue product.
double rate_threshold(double unstable_product);

StepResult step(const PlantModel& plant, const Vector& x, const Vector& u, const Vector& w);

// u[t] = -gain * x[t] when a gain is given, zero otherwise. Without a seed the
// process noise is identically zero.
StateTrajectory simulate(const PlantModel& plant, const Vector& x0, const std::optional<Matrix>& gain,
                         int horizon, std::optional<std::uint64_t> noise_seed = std::nullopt);

// Loads {"A": [[...]], "B": [[...]], "C": [[...]], "Sigma": [[...]]}; Sigma optional.
PlantModel load_plant(const std::string& path);

}  // namespace wncs
