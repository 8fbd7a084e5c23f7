#pragma once

#include <vector>

#include <Eigen/Dense>

#include "pgmp/kinematics.hpp"
#include "pgmp/rng.hpp"

namespace pgmp {

using Dataset = std::vector<JointConfig>;

// Covariance regularization added at every estimation step (rad^2).
inline constexpr double kCovarianceFloor = 1e-6;

// Finite Gaussian mixture over joint space.
struct Fgmm {
    std::vector<double> weights;
    std::vector<Eigen::VectorXd> means;
    std::vector<Eigen::MatrixXd> covariances;

    int componentCount() const { return static_cast<int>(weights.size()); }
    int dimension() const { return means.empty() ? 0 : static_cast<int>(means.front().size()); }

    // Throws std::invalid_argument if weights do not sum to 1 (1e-12),
    // any weight is negative, or any covariance is not symmetric positive
    // definite.
    void validate() const;
};

// log N(q | mu, sigma), evaluated through a Cholesky factorization.
// Throws std::invalid_argument if sigma is not positive definite.
double logGaussianPdf(const Eigen::VectorXd& q, const Eigen::VectorXd& mu,
                      const Eigen::MatrixXd& sigma);
double gaussianPdf(const Eigen::VectorXd& q, const Eigen::VectorXd& mu,
                   const Eigen::MatrixXd& sigma);

double logMixtureDensity(const JointConfig& q, const Fgmm& model);
double mixtureDensity(const JointConfig& q, const Fgmm& model);

struct KmeansResult {
    std::vector<int> assignments;
    Fgmm model;
};

// Lloyd's iterations to convergence (or an internal cap). Cluster moments
// seed the mixture: centroid means, sample covariance + floor, size-
// proportional weights. Empty clusters are re-seeded at the point farthest
// from its centroid. Throws if the dataset is smaller than k.
KmeansResult kmeansInit(const Dataset& data, int k, Rng& rng);

struct EmOptions {
    double tol{1e-6};   // convergence threshold on the log-likelihood
    int max_iter{200};
};

struct EmResult {
    Fgmm model;
    std::vector<double> log_likelihood;  // one entry per iteration
    int iterations{0};
    bool converged{false};
};

// Expectation-maximization with log-space responsibilities. The trace holds
// the total data log-likelihood after each iteration.
EmResult emFit(const Dataset& data, int k, const EmOptions& options, Rng& rng);

// Draws one configuration: component by weight, then a Gaussian draw via
// the Cholesky factor of its covariance.
JointConfig sampleFgmm(const Fgmm& model, Rng& rng);

}  // namespace pgmp
