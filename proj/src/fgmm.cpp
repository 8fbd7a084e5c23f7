#include "pgmp/fgmm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pgmp {

namespace {

Eigen::LLT<Eigen::MatrixXd> cholesky(const Eigen::MatrixXd& sigma) {
    if (sigma.rows() != sigma.cols())
        throw std::invalid_argument("covariance matrix must be square");
    if ((sigma - sigma.transpose()).cwiseAbs().maxCoeff() > 1e-9)
        throw std::invalid_argument("covariance matrix must be symmetric");
    Eigen::LLT<Eigen::MatrixXd> llt(sigma);
    if (llt.info() != Eigen::Success)
        throw std::invalid_argument("covariance matrix must be positive definite");
    return llt;
}

double logDetFromLlt(const Eigen::LLT<Eigen::MatrixXd>& llt) {
    return 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
}

void checkData(const Dataset& data, int k) {
    if (k < 1) throw std::invalid_argument("component count must be at least 1");
    if (static_cast<int>(data.size()) < k)
        throw std::invalid_argument("dataset smaller than the component count");
    const Eigen::Index n = data.front().size();
    for (const JointConfig& q : data) {
        if (q.size() != n) throw std::invalid_argument("dataset has mixed dimensions");
        if (!q.allFinite()) throw std::invalid_argument("dataset contains non-finite values");
    }
}

double logSumExp(const Eigen::VectorXd& v) {
    const double m = v.maxCoeff();
    if (!std::isfinite(m)) return m;  // all -inf
    return m + std::log((v.array() - m).exp().sum());
}

}  // namespace

void Fgmm::validate() const {
    if (weights.empty() || weights.size() != means.size() ||
        weights.size() != covariances.size())
        throw std::invalid_argument("mixture components are inconsistent");
    double sum = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw std::invalid_argument("mixture weight is negative");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("mixture weights must sum to 1");
    const Eigen::Index n = means.front().size();
    for (std::size_t k = 0; k < means.size(); ++k) {
        if (means[k].size() != n || covariances[k].rows() != n || covariances[k].cols() != n)
            throw std::invalid_argument("mixture component dimensions are inconsistent");
        cholesky(covariances[k]);
    }
}

double logGaussianPdf(const Eigen::VectorXd& q, const Eigen::VectorXd& mu,
                      const Eigen::MatrixXd& sigma) {
    if (q.size() != mu.size() || sigma.rows() != q.size())
        throw std::invalid_argument("logGaussianPdf: dimension mismatch");
    const auto llt = cholesky(sigma);
    const Eigen::VectorXd diff = q - mu;
    const double quad = diff.dot(llt.solve(diff));
    const double n = static_cast<double>(q.size());
    return -0.5 * (n * std::log(2.0 * M_PI) + logDetFromLlt(llt) + quad);
}

double gaussianPdf(const Eigen::VectorXd& q, const Eigen::VectorXd& mu,
                   const Eigen::MatrixXd& sigma) {
    return std::exp(logGaussianPdf(q, mu, sigma));
}

double logMixtureDensity(const JointConfig& q, const Fgmm& model) {
    if (q.size() != model.dimension())
        throw std::invalid_argument("mixtureDensity: dimension mismatch");
    Eigen::VectorXd terms(model.componentCount());
    for (int k = 0; k < model.componentCount(); ++k) {
        terms[k] = model.weights[k] > 0.0
                       ? std::log(model.weights[k]) +
                             logGaussianPdf(q, model.means[k], model.covariances[k])
                       : -std::numeric_limits<double>::infinity();
    }
    return logSumExp(terms);
}

double mixtureDensity(const JointConfig& q, const Fgmm& model) {
    return std::exp(logMixtureDensity(q, model));
}

KmeansResult kmeansInit(const Dataset& data, int k, Rng& rng) {
    checkData(data, k);
    const int m = static_cast<int>(data.size());
    const Eigen::Index n = data.front().size();

    // distinct random points as initial centroids
    std::vector<int> pool(m);
    for (int i = 0; i < m; ++i) pool[i] = i;
    std::vector<Eigen::VectorXd> centroids;
    centroids.reserve(k);
    for (int c = 0; c < k; ++c) {
        const int pick = c + static_cast<int>(rng.uniformInt(m - c));
        std::swap(pool[c], pool[pick]);
        centroids.push_back(data[pool[c]]);
    }

    std::vector<int> assign(m, -1);
    constexpr int kMaxIterations = 100;
    for (int iter = 0; iter < kMaxIterations; ++iter) {
        bool changed = false;
        for (int j = 0; j < m; ++j) {
            int best = 0;
            double best_d = (data[j] - centroids[0]).squaredNorm();
            for (int c = 1; c < k; ++c) {
                const double d = (data[j] - centroids[c]).squaredNorm();
                if (d < best_d) {
                    best_d = d;
                    best = c;
                }
            }
            if (assign[j] != best) {
                assign[j] = best;
                changed = true;
            }
        }

        std::vector<Eigen::VectorXd> sums(k, Eigen::VectorXd::Zero(n));
        std::vector<int> counts(k, 0);
        for (int j = 0; j < m; ++j) {
            sums[assign[j]] += data[j];
            ++counts[assign[j]];
        }
        for (int c = 0; c < k; ++c) {
            if (counts[c] > 0) {
                centroids[c] = sums[c] / counts[c];
                continue;
            }
            // re-seed an empty cluster at the point farthest from its centroid
            int farthest = 0;
            double far_d = -1.0;
            for (int j = 0; j < m; ++j) {
                const double d = (data[j] - centroids[assign[j]]).squaredNorm();
                if (d > far_d) {
                    far_d = d;
                    farthest = j;
                }
            }
            centroids[c] = data[farthest];
            assign[farthest] = c;
            changed = true;
        }
        if (!changed) break;
    }

    KmeansResult out;
    out.assignments = assign;
    out.model.weights.resize(k);
    out.model.means.resize(k);
    out.model.covariances.resize(k);
    for (int c = 0; c < k; ++c) {
        std::vector<int> members;
        for (int j = 0; j < m; ++j)
            if (assign[j] == c) members.push_back(j);
        Eigen::VectorXd mean = Eigen::VectorXd::Zero(n);
        for (int j : members) mean += data[j];
        if (!members.empty()) mean /= static_cast<double>(members.size());
        Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(n, n);
        for (int j : members) {
            const Eigen::VectorXd d = data[j] - mean;
            cov += d * d.transpose();
        }
        if (!members.empty()) cov /= static_cast<double>(members.size());
        cov += kCovarianceFloor * Eigen::MatrixXd::Identity(n, n);
        out.model.weights[c] = static_cast<double>(members.size()) / m;
        out.model.means[c] = mean;
        out.model.covariances[c] = cov;
    }
    return out;
}

EmResult emFit(const Dataset& data, int k, const EmOptions& options, Rng& rng) {
    checkData(data, k);
    if (options.tol <= 0.0) throw std::invalid_argument("emFit: tol must be positive");
    const int m = static_cast<int>(data.size());
    const Eigen::Index n = data.front().size();

    EmResult out;
    out.model = kmeansInit(data, k, rng).model;

    Eigen::MatrixXd resp(m, k);
    double previous = -std::numeric_limits<double>::infinity();
    for (int iter = 0; iter < options.max_iter; ++iter) {
        // E-step in log space; the per-point normalizers sum to the
        // total log-likelihood of the current parameters.
        double loglik = 0.0;
        Eigen::VectorXd terms(k);
        std::vector<Eigen::LLT<Eigen::MatrixXd>> llts;
        std::vector<double> logdets, logw;
        llts.reserve(k);
        for (int c = 0; c < k; ++c) {
            llts.push_back(cholesky(out.model.covariances[c]));
            logdets.push_back(logDetFromLlt(llts.back()));
            logw.push_back(out.model.weights[c] > 0.0
                               ? std::log(out.model.weights[c])
                               : -std::numeric_limits<double>::infinity());
        }
        const double log2pi = static_cast<double>(n) * std::log(2.0 * M_PI);
        for (int j = 0; j < m; ++j) {
            for (int c = 0; c < k; ++c) {
                if (!std::isfinite(logw[c])) {
                    terms[c] = -std::numeric_limits<double>::infinity();
                    continue;
                }
                const Eigen::VectorXd diff = data[j] - out.model.means[c];
                const double quad = diff.dot(llts[c].solve(diff));
                terms[c] = logw[c] - 0.5 * (log2pi + logdets[c] + quad);
            }
            const double norm = logSumExp(terms);
            loglik += norm;
            for (int c = 0; c < k; ++c)
                resp(j, c) = std::isfinite(terms[c]) ? std::exp(terms[c] - norm) : 0.0;
        }
        out.log_likelihood.push_back(loglik);
        out.iterations = iter + 1;
        if (iter > 0 && std::abs(loglik - previous) < options.tol) {
            out.converged = true;
            break;
        }
        previous = loglik;

        // M-step
        for (int c = 0; c < k; ++c) {
            const double mk = resp.col(c).sum();
            out.model.weights[c] = mk / m;
            if (mk <= std::numeric_limits<double>::min()) {
                // component lost all responsibility; keep its mean, floor
                // its covariance so the model stays valid
                out.model.covariances[c] =
                    kCovarianceFloor * Eigen::MatrixXd::Identity(n, n);
                continue;
            }
            Eigen::VectorXd mean = Eigen::VectorXd::Zero(n);
            for (int j = 0; j < m; ++j) mean += resp(j, c) * data[j];
            mean /= mk;
            Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(n, n);
            for (int j = 0; j < m; ++j) {
                const Eigen::VectorXd d = data[j] - mean;
                cov += resp(j, c) * (d * d.transpose());
            }
            cov /= mk;
            cov += kCovarianceFloor * Eigen::MatrixXd::Identity(n, n);
            out.model.means[c] = mean;
            out.model.covariances[c] = 0.5 * (cov + cov.transpose());
        }
    }
    return out;
}

JointConfig sampleFgmm(const Fgmm& model, Rng& rng) {
    if (model.componentCount() == 0) throw std::invalid_argument("sampleFgmm: empty model");
    const double u = rng.uniform01();
    double acc = 0.0;
    int pick = model.componentCount() - 1;
    for (int c = 0; c < model.componentCount(); ++c) {
        acc += model.weights[c];
        if (u < acc) {
            pick = c;
            break;
        }
    }
    const auto llt = cholesky(model.covariances[pick]);
    const Eigen::VectorXd z = rng.normalVector(model.dimension());
    return model.means[pick] + llt.matrixL() * z;
}

}  // namespace pgmp
