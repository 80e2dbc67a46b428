#include "zetalab/log_poly_fit.hpp"

#include "zetalab/errors.hpp"

#include <cmath>

namespace zetalab {

LogPolyFit fit_log_cubic(const Eigen::VectorXd& ell, const Eigen::VectorXd& y,
                         const std::string& regressor, double condition_limit) {
    const Eigen::Index m = ell.size();
    require(m == y.size(), "regressor/response length mismatch");
    require(m >= 4, "need at least 4 points for a cubic fit");

    Eigen::MatrixXd X(m, 4);
    X.col(0).setOnes();
    for (int j = 1; j < 4; ++j) X.col(j) = X.col(j - 1).cwiseProduct(ell);

    Eigen::Vector4d scale;
    for (int j = 0; j < 4; ++j) {
        scale[j] = X.col(j).norm();
        if (scale[j] == 0.0) scale[j] = 1.0;
    }
    const Eigen::MatrixXd Xs = X * scale.cwiseInverse().asDiagonal();

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(Xs, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double cond = sv(0) / sv(3);
    if (!std::isfinite(cond) || cond > condition_limit)
        throw fit_degenerate("design matrix condition " + std::to_string(cond) +
                             " exceeds limit for regressor " + regressor);

    const Eigen::Vector4d cs = svd.solve(y);
    const Eigen::Vector4d c = cs.cwiseQuotient(scale);
    if (!c.allFinite()) throw fit_degenerate("non-finite fit coefficients for " + regressor);

    LogPolyFit fit;
    fit.coeffs = c;
    fit.residual_norm = (X * c - y).norm();
    fit.condition = cond;
    fit.regressor = regressor;

    // Var(c_scaled) = sigma^2 V S^-2 V^T with sigma^2 from the residual
    const double dof = double(m - 4);
    const double sigma2 = dof > 0 ? fit.residual_norm * fit.residual_norm / dof : 0.0;
    const Eigen::Matrix4d V = svd.matrixV();
    for (int j = 0; j < 4; ++j) {
        double var = 0.0;
        for (int k = 0; k < 4; ++k) var += V(j, k) * V(j, k) / (sv(k) * sv(k));
        fit.coeff_stderr[j] = std::sqrt(sigma2 * var) / scale[j];
    }
    return fit;
}

} // namespace zetalab
