#ifndef ZETALAB_LOG_POLY_FIT_HPP
#define ZETALAB_LOG_POLY_FIT_HPP

// Least squares against {1, l, l^2, l^3} for a logarithmic regressor l.
// The Vandermonde columns are rescaled to unit norm before the SVD solve;
// the condition number reported is that of the scaled design.

#include <string>

#include <Eigen/Dense>

namespace zetalab {

struct LogPolyFit {
    Eigen::Vector4d coeffs;        // c0..c3 multiplying l^j
    Eigen::Vector4d coeff_stderr;  // per-coefficient standard error
    double residual_norm = 0.0;    // ||y - X c||_2
    double condition = 0.0;        // of the column-scaled design
    std::string regressor;

    double eval(double ell) const {
        return coeffs[0] + ell * (coeffs[1] + ell * (coeffs[2] + ell * coeffs[3]));
    }
};

// ell[i], y[i] pairs; throws fit_degenerate when the scaled design's
// condition exceeds `condition_limit` or the solve is non-finite.
LogPolyFit fit_log_cubic(const Eigen::VectorXd& ell, const Eigen::VectorXd& y,
                         const std::string& regressor, double condition_limit = 1e10);

} // namespace zetalab

#endif
