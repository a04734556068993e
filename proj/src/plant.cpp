#include "wncs/plant.hpp"

#include "wncs/config.hpp"
#include "wncs/rng.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace wncs {

namespace {

constexpr double kDetCheckRelTol = 1e-6;
constexpr double kCholeskyJitter = 1e-12;

std::string shape(const Matrix& m) {
    std::ostringstream os;
    os << m.rows() << "x" << m.cols();
    return os.str();
}

void require_finite(const Matrix& m, const char* name) {
    if (!m.allFinite()) throw std::invalid_argument(std::string(name) + " contains non-finite entries");
}

}  // namespace

PlantModel::PlantModel(Matrix a, Matrix b, Matrix c, std::optional<Matrix> sigma)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
    const Eigen::Index m = a_.rows();
    if (m < 1 || a_.cols() != m) throw std::invalid_argument("A must be square and non-empty, got " + shape(a_));
    if (b_.rows() != m || b_.cols() < 1) {
        throw std::invalid_argument("B must have " + std::to_string(m) + " rows and at least one column, got " +
                                    shape(b_));
    }
    if (c_.rows() != 1 || c_.cols() != m) {
        throw std::invalid_argument("C must be 1x" + std::to_string(m) + ", got " + shape(c_));
    }
    sigma_ = sigma ? std::move(*sigma) : Matrix::Zero(m, m);
    if (sigma_.rows() != m || sigma_.cols() != m) {
        throw std::invalid_argument("Sigma must be " + std::to_string(m) + "x" + std::to_string(m) + ", got " +
                                    shape(sigma_));
    }
    require_finite(a_, "A");
    require_finite(b_, "B");
    require_finite(c_, "C");
    require_finite(sigma_, "Sigma");

    if ((sigma_ - sigma_.transpose()).cwiseAbs().maxCoeff() > kSymmetryTol) {
        throw std::invalid_argument("Sigma is not symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> sym(sigma_, Eigen::EigenvaluesOnly);
    if (sym.info() != Eigen::Success) throw spectrum_error("spectrum not computed: Sigma eigensolver failed");
    if (sym.eigenvalues().minCoeff() < -kPsdTol) {
        throw std::invalid_argument("Sigma is not positive semidefinite");
    }
}

double rate_threshold(double unstable_product) {
    if (!(unstable_product >= 1.0)) throw std::invalid_argument("unstable product must be >= 1");
    return std::log2(unstable_product);
}

EigenAnalysis eigen_analyze(const PlantModel& plant, double tol, int max_iterations) {
    if (!(tol >= 0.0)) throw std::invalid_argument("tol must be >= 0");
    if (max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
    const Matrix& a = plant.a();

    // Hessenberg reduction followed by shifted (Francis) QR.
    Eigen::EigenSolver<Matrix> solver;
    solver.setMaxIterations(max_iterations);
    solver.compute(a, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
        throw spectrum_error("spectrum not computed: QR iteration did not converge within " +
                             std::to_string(max_iterations) + " iterations");
    }

    EigenAnalysis out;
    out.magnitudes.reserve(static_cast<std::size_t>(a.rows()));
    double all_product = 1.0;
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        const double mag = std::abs(solver.eigenvalues()[i]);
        out.magnitudes.push_back(mag);
        all_product *= mag;
        if (mag > 1.0 + tol) out.unstable_product *= mag;
    }

    const double det = std::abs(a.determinant());
    const double scale = std::pow(std::max(1.0, a.cwiseAbs().maxCoeff()), static_cast<double>(a.rows()));
    if (std::abs(det - all_product) > kDetCheckRelTol * std::max(det, all_product) + 1e-12 * scale) {
        throw spectrum_error("spectrum not computed: |det(A)| disagrees with the product of eigenvalue magnitudes");
    }

    out.rate_threshold_bits = std::log2(out.unstable_product);
    return out;
}

StepResult step(const PlantModel& plant, const Vector& x, const Vector& u, const Vector& w) {
    if (x.size() != plant.states()) throw std::invalid_argument("state vector has wrong dimension");
    if (u.size() != plant.inputs()) throw std::invalid_argument("input vector has wrong dimension");
    if (w.size() != plant.states()) throw std::invalid_argument("noise vector has wrong dimension");
    StepResult r;
    r.x_next = plant.a() * x + plant.b() * u + w;
    r.y = (plant.c() * x)(0, 0);
    return r;
}

StateTrajectory simulate(const PlantModel& plant, const Vector& x0, const std::optional<Matrix>& gain,
                         int horizon, std::optional<std::uint64_t> noise_seed) {
    if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
    const Eigen::Index m = plant.states();
    const Eigen::Index n = plant.inputs();
    if (x0.size() != m) throw std::invalid_argument("x0 has wrong dimension");
    if (gain && (gain->rows() != n || gain->cols() != m)) {
        throw std::invalid_argument("gain must be " + std::to_string(n) + "x" + std::to_string(m));
    }

    std::optional<Xoshiro256> rng;
    Matrix noise_factor;
    if (noise_seed) {
        rng.emplace(*noise_seed);
        Eigen::LLT<Matrix> llt(plant.sigma() + kCholeskyJitter * Matrix::Identity(m, m));
        if (llt.info() != Eigen::Success) throw std::invalid_argument("Sigma could not be Cholesky-factored");
        noise_factor = llt.matrixL();
    }

    const auto steps = static_cast<std::size_t>(horizon);
    StateTrajectory traj;
    traj.states.reserve(steps + 1);
    traj.inputs.reserve(steps);
    traj.outputs.reserve(steps + 1);

    Vector x = x0;
    Vector z(m);
    for (std::size_t t = 0; t < steps; ++t) {
        Vector u = gain ? Vector(-(*gain) * x) : Vector::Zero(n);
        Vector w = Vector::Zero(m);
        if (rng) {
            for (Eigen::Index k = 0; k < m; ++k) z[k] = rng->standard_normal();
            w = noise_factor * z;
        }
        StepResult r = step(plant, x, u, w);
        traj.states.push_back(x);
        traj.inputs.push_back(std::move(u));
        traj.outputs.push_back(r.y);
        x = std::move(r.x_next);
    }
    traj.outputs.push_back((plant.c() * x)(0, 0));
    traj.states.push_back(std::move(x));
    return traj;
}

PlantModel load_plant(const std::string& path) {
    const config::Json doc = config::read_json_file(path);
    if (!doc.is_object()) throw config_error(path, "plant file must hold a JSON object");
    std::optional<Matrix> sigma;
    if (doc.contains("Sigma")) sigma = config::get_matrix(doc, "Sigma", "");
    try {
        return PlantModel(config::get_matrix(doc, "A", ""), config::get_matrix(doc, "B", ""),
                          config::get_matrix(doc, "C", ""), std::move(sigma));
    } catch (const std::invalid_argument& e) {
        throw config_error(path, e.what());
    }
}

}  // namespace wncs
