#ifndef ZETALAB_TEST_ORACLES_HPP
#define ZETALAB_TEST_ORACLES_HPP

// Independent reference implementations for the test suites: a long-double
// Euler-Maclaurin zeta oracle, generic adaptive Simpson quadrature, and
// brute-force divisor counting.  These deliberately avoid the code paths they
// are used to check.

#include "zetalab/euler_maclaurin.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>

namespace zetalab::testing {

inline std::complex<long double> oracle_zeta(long double t) {
    return em_zeta_half_line<long double>(t, 1e-16L).value;
}

inline long double oracle_abs2(long double t) { return std::norm(oracle_zeta(t)); }

// adaptive Simpson on [a,b] to absolute tolerance tol
template <class F>
double adaptive_simpson(F f, double a, double b, double tol, int depth = 48) {
    struct Impl {
        F f;
        double run(double a, double m, double b, double fa, double fm, double fb, double whole,
                   double tol, int depth) {
            const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
            const double flm = f(lm), frm = f(rm);
            const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
            const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
            if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
                return left + right + (left + right - whole) / 15.0;
            return run(a, lm, m, fa, flm, fm, left, tol / 2, depth - 1) +
                   run(m, rm, b, fm, frm, fb, right, tol / 2, depth - 1);
        }
    } impl{f};
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return impl.run(a, m, b, fa, fm, fb, whole, tol, depth);
}

template <class F>
std::complex<double> adaptive_simpson_complex(F f, double a, double b, double tol) {
    const double re = adaptive_simpson([&](double x) { return f(x).real(); }, a, b, tol);
    const double im = adaptive_simpson([&](double x) { return f(x).imag(); }, a, b, tol);
    return {re, im};
}

// int e^{Ax - Bx^2} dx over the real line, Re B > 0.  The integrand
// oscillates like e^{-i Im(B) x^2}; adaptive Simpson started on the whole
// interval can false-converge on such phases, so the range is pre-split to
// resolve every oscillation before the adaptive refinement runs.
inline std::complex<double> gaussian_integral_oracle(std::complex<double> A,
                                                     std::complex<double> B, double tol) {
    const double reach =
        std::abs(A) / (2.0 * B.real()) + std::sqrt(40.0 / B.real()) + 2.0;
    const double pi = 3.141592653589793238462643383279502884;
    const double turns =
        std::abs(B.imag()) * reach * reach / pi + std::abs(A.imag()) * reach / pi;
    const int pieces = 16 + 4 * int(turns);
    const double h = 2.0 * reach / pieces;
    std::complex<double> total(0.0, 0.0);
    for (int i = 0; i < pieces; ++i) {
        const double lo = -reach + i * h;
        total += adaptive_simpson_complex(
            [&](double x) { return std::exp(A * x - B * x * x); }, lo, lo + h, tol / pieces);
    }
    return total;
}

inline std::int64_t brute_divisor_count(std::int64_t n) {
    std::int64_t c = 0;
    for (std::int64_t k = 1; k * k <= n; ++k) {
        if (n % k == 0) c += (k * k == n) ? 1 : 2;
    }
    return c;
}

} // namespace zetalab::testing

#endif
