#ifndef ZETALAB_RIEMANN_SIEGEL_HPP
#define ZETALAB_RIEMANN_SIEGEL_HPP

// Riemann-Siegel evaluation of Z(t) and zeta(1/2+it) for t >= 50:
//
//   Z(t) = 2 sum_{n<=m} n^{-1/2} cos(theta(t) - t log n)
//        + (-1)^{m-1} (t/2pi)^{-1/4} sum_{j<=3} C_j(p) (t/2pi)^{-j/2},
//
// m = floor(sqrt(t/2pi)), p = frac(sqrt(t/2pi)), and the C_j are derivative
// combinations of Psi(p) = cos(2pi(p^2-p-1/16))/cos(2pi p).  The C_j are
// evaluated through truncated Taylor jets (cancellation-safe across the
// removable singularities at p=1/4, 3/4) and cached on a dense Hermite
// interpolation table.  |zeta(1/2+it)| = |Z(t)|, zeta = Z e^{-i theta}.

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

namespace zetalab {

// theta(t) = arg Gamma(1/4 + it/2) - (t/2) log pi, by its asymptotic series.
double rs_theta(double t);
long double rs_theta_ld(long double t);

// C_0..C_3 at p in [0,1], straight from the Psi jets (table-free; used to
// build the table and by tests).
std::array<double, 4> rs_correction_coeffs(double p);

// Remainder-after-C3 bound used for method selection; empirically calibrated
// against the Euler-Maclaurin oracle, with margin.
double rs_truncation_bound(double t);

// Precomputed log n and n^{-1/2} for the main sum.
struct RsTermTable {
    std::vector<double> log_n;      // [0] unused
    std::vector<double> inv_sqrt_n;
    explicit RsTermTable(std::size_t m_max);
};

// Z(t) with double-precision phase arithmetic (grid workhorse; abs error
// ~1e-8 at t ~ 1e5 from phase rounding alone, on top of the truncation bound).
double rs_z_fast(double t, const RsTermTable& table);

// Z(t) with extended-precision phase arithmetic (point evaluations; phase
// rounding pushed to ~1e-13).
double rs_z_accurate(double t);

// zeta(1/2+it) = Z(t) e^{-i theta(t)}, extended-precision phases.
std::complex<double> rs_zeta_accurate(double t);

} // namespace zetalab

#endif
