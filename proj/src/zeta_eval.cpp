#include "zetalab/zeta_eval.hpp"

#include "zetalab/errors.hpp"
#include "zetalab/euler_maclaurin.hpp"
#include "zetalab/riemann_siegel.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

namespace zetalab {

namespace {

// Phase-rounding floor of the double-precision paths (arguments ~ t log t
// carry ulp-level noise that accumulates over the main sums).
double double_phase_noise(double t) { return 2e-15 * (t + 10.0); }

void validate_eps(double eps) {
    require(std::isfinite(eps) && eps >= kMinAbsError && eps <= kMaxAbsError,
            "target_abs_error must lie in [1e-13, 1e-3]");
}

bool rs_eligible(double t, double eps) {
    if (t < kRsCrossoverT) return false;
    return rs_truncation_bound(t) + double_phase_noise(t) * 0.1 <= 0.5 * eps;
}

} // namespace

std::complex<double> zeta_half_line(double t, double target_abs_error) {
    require(std::isfinite(t), "ordinate t must be finite");
    validate_eps(target_abs_error);
    if (t < 0.0) return std::conj(zeta_half_line(-t, target_abs_error));

    if (rs_eligible(t, target_abs_error)) return rs_zeta_accurate(t);

    if (target_abs_error >= 4.0 * double_phase_noise(t)) {
        return em_zeta_half_line<double>(t, target_abs_error).value;
    }
    const auto r = em_zeta_half_line<long double>((long double)t, (long double)target_abs_error);
    return std::complex<double>(double(r.value.real()), double(r.value.imag()));
}

double abs_zeta_sq(double t, double target_abs_error) {
    require(std::isfinite(t), "ordinate t must be finite");
    validate_eps(target_abs_error);
    if (t < 0.0) t = -t;
    if (rs_eligible(t, target_abs_error)) {
        const double z = rs_z_accurate(t);
        return z * z;
    }
    return std::norm(zeta_half_line(t, target_abs_error));
}

ZetaGrid sample_abs2_grid(double t0, double t1, double dt, double target_abs_error, int workers) {
    require(std::isfinite(t0) && std::isfinite(t1) && std::isfinite(dt), "grid bounds must be finite");
    require(t0 >= 2.0, "grid start must satisfy t0 >= 2");
    require(t1 > t0, "grid range is empty (need t1 > t0)");
    require(dt > 0.0 && dt <= 0.05, "grid step must satisfy 0 < dt <= 0.05");
    validate_eps(target_abs_error);

    const std::int64_t count = std::int64_t(std::floor((t1 - t0) / dt + 1e-9)) + 1;

    ZetaGrid grid;
    grid.t0 = t0;
    grid.dt = dt;
    grid.values.resize(count);

    const double t_max = t0 + double(count - 1) * dt;
    const RsTermTable table(std::size_t(std::sqrt(t_max / (2.0 * M_PI))) + 2);
    const double eps = target_abs_error;

    // Fast path needs both the truncation model and the double-phase noise
    // to clear the budget; otherwise fall to the per-point dispatcher.
    auto fill_range = [&](std::int64_t lo, std::int64_t hi) {
        for (std::int64_t k = lo; k < hi; ++k) {
            const double t = t0 + double(k) * dt;
            double v;
            if (t >= kRsCrossoverT &&
                rs_truncation_bound(t) + double_phase_noise(t) <= 0.25 * eps) {
                const double z = rs_z_fast(t, table);
                v = z * z;
            } else {
                v = abs_zeta_sq(t, eps);
            }
            grid.values[k] = v;
        }
    };

    int nw = workers > 0 ? workers : int(std::thread::hardware_concurrency());
    nw = std::clamp(nw, 1, 64);
    if (nw == 1 || count < 4096) {
        fill_range(0, count);
    } else {
        std::vector<std::thread> pool;
        const std::int64_t chunk = (count + nw - 1) / nw;
        for (int w = 0; w < nw; ++w) {
            const std::int64_t lo = w * chunk;
            const std::int64_t hi = std::min<std::int64_t>(count, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back(fill_range, lo, hi);
        }
        for (auto& th : pool) th.join();
    }
    return grid;
}

SecondMomentIntegral::SecondMomentIntegral(const ZetaGrid& grid) : grid_(&grid) {
    require(grid.count() >= 3, "grid too short for quadrature");
    const std::int64_t n = grid.count();
    const double dt = grid.dt;
    const auto& f = grid.values;
    cum_.resize(n);
    cum_[0] = 0.0;
    // Kahan-compensated chain of Simpson pairs along the even nodes; odd
    // nodes hang off the chain with a third-order three-point rule.
    double acc = 0.0, comp = 0.0;
    for (std::int64_t k = 1; k < n; ++k) {
        if (k % 2 == 0) {
            const double inc = dt / 3.0 * (f[k - 2] + 4.0 * f[k - 1] + f[k]);
            const double y = inc - comp;
            const double t = acc + y;
            comp = (t - acc) - y;
            acc = t;
            cum_[k] = acc;
        } else if (k + 1 < n) {
            cum_[k] = cum_[k - 1] + dt / 12.0 * (5.0 * f[k - 1] + 8.0 * f[k] - f[k + 1]);
        } else {
            cum_[k] = cum_[k - 1] + dt / 12.0 * (-f[k - 2] + 8.0 * f[k - 1] + 5.0 * f[k]);
        }
    }
}

double SecondMomentIntegral::cumulative_at(double x) const {
    const auto& g = *grid_;
    const double u = (x - g.t0) / g.dt;
    std::int64_t k = std::int64_t(std::floor(u));
    k = std::clamp<std::int64_t>(k, 0, g.count() - 2);
    const double frac = x - g.t_at(k);
    if (frac == 0.0) return cum_[k];
    // integrate the quadratic through three neighbouring nodes from t_k to x
    const std::int64_t base = std::clamp<std::int64_t>(k - 1, 0, g.count() - 3);
    const double f0 = g.values[base], f1 = g.values[base + 1], f2 = g.values[base + 2];
    const double dt = g.dt;
    // Newton form on nodes base, base+1, base+2; s measured from t_base
    const double d1 = (f1 - f0) / dt;
    const double d2 = (f2 - 2.0 * f1 + f0) / (2.0 * dt * dt);
    const double s0 = double(k - base) * dt;
    const double s1 = s0 + frac;
    auto prim = [&](double s) {
        // antiderivative of f0 + d1*s + d2*s*(s-dt)
        return f0 * s + d1 * s * s / 2.0 + d2 * (s * s * s / 3.0 - dt * s * s / 2.0);
    };
    return cum_[k] + (prim(s1) - prim(s0));
}

double SecondMomentIntegral::integrate(double a, double b) const {
    const auto& g = *grid_;
    require(std::isfinite(a) && std::isfinite(b) && b >= a, "need a <= b, both finite");
    require(g.spans(a, a) && g.spans(b, b), "integration interval outside the sampled grid");
    if (a == b) return 0.0;
    return cumulative_at(b) - cumulative_at(a);
}

double quad_abs2(const ZetaGrid& grid, double a, double b) {
    return SecondMomentIntegral(grid).integrate(a, b);
}

} // namespace zetalab
