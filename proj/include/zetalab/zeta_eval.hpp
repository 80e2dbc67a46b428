#ifndef ZETALAB_ZETA_EVAL_HPP
#define ZETALAB_ZETA_EVAL_HPP

// zeta(1/2+it) point evaluation and |zeta(1/2+it)|^2 grid sampling.
//
// Method selection is driven by an explicit error budget: Riemann-Siegel
// (O(sqrt t)) wherever its truncation+rounding model meets the requested
// absolute error, Euler-Maclaurin (O(t), arbitrary accuracy) below the
// crossover and for strict targets.  Grids are deterministic: every value
// depends only on its own ordinate, so partitioning across workers cannot
// change a single bit.

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

namespace zetalab {

inline constexpr double kMinAbsError = 1e-13;
inline constexpr double kMaxAbsError = 1e-3;
inline constexpr double kRsCrossoverT = 50.0;

// zeta(1/2+it) with |error| <= target_abs_error; negative t by reflection.
std::complex<double> zeta_half_line(double t, double target_abs_error);

// |zeta(1/2+it)|^2 through the same dispatch.
double abs_zeta_sq(double t, double target_abs_error);

// Uniform samples of |zeta(1/2 + i(t0 + k dt))|^2.
struct ZetaGrid {
    double t0 = 0.0;
    double dt = 0.0;
    Eigen::VectorXd values;

    std::int64_t count() const { return values.size(); }
    double t_at(std::int64_t k) const { return t0 + double(k) * dt; }
    double t_end() const { return t_at(count() - 1); }
    bool spans(double a, double b) const {
        return count() >= 2 && t0 <= a + 1e-9 * dt && b <= t_end() + 1e-9 * dt;
    }
};

// Samples every ordinate t0 + k dt <= t1.  workers = 0 picks the hardware
// concurrency.
ZetaGrid sample_abs2_grid(double t0, double t1, double dt, double target_abs_error,
                          int workers = 0);

// Cumulative integral of a sampled grid: composite Simpson on even node
// pairs, third-order end rules on odd nodes, quadratic interpolation inside
// partial cells.  integrate(a,b) = C(b)-C(a) by construction, so interval
// additivity is exact.  Non-owning: the grid must outlive this object.
class SecondMomentIntegral {
public:
    explicit SecondMomentIntegral(const ZetaGrid& grid);

    double integrate(double a, double b) const;
    const ZetaGrid& grid() const { return *grid_; }

private:
    double cumulative_at(double x) const;
    const ZetaGrid* grid_;
    Eigen::VectorXd cum_;
};

// One-shot composite quadrature of |zeta|^2 over [a,b] within the grid span.
double quad_abs2(const ZetaGrid& grid, double a, double b);

} // namespace zetalab

#endif
