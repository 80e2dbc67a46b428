#ifndef ZETALAB_EULER_MACLAURIN_HPP
#define ZETALAB_EULER_MACLAURIN_HPP

// Euler-Maclaurin evaluation of zeta(1/2 + it):
//
//   zeta(s) = sum_{n<N} n^{-s} + N^{-s}/2 + N^{1-s}/(s-1)
//           + sum_{k>=1} B_{2k}/(2k)! * s(s+1)...(s+2k-2) * N^{1-s-2k} + R_K,
//
//   |R_K| <= |(s+2K+1)/(sigma+2K+1)| * |first omitted term|.
//
// O(N) with N ~ t, so this is the reference path: it serves small t, strict
// accuracy targets, and (instantiated with long double) the oracle that the
// fast Riemann-Siegel path is validated against.  The correction series is
// asymptotic; the driver enlarges N until the remainder bound meets eps.

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>

namespace zetalab {

namespace detail {

// B_2 .. B_48.
inline constexpr long double kBernoulli2k[] = {
    1.0L / 6,
    -1.0L / 30,
    1.0L / 42,
    -1.0L / 30,
    5.0L / 66,
    -691.0L / 2730,
    7.0L / 6,
    -3617.0L / 510,
    43867.0L / 798,
    -174611.0L / 330,
    854513.0L / 138,
    -236364091.0L / 2730,
    8553103.0L / 6,
    -23749461029.0L / 870,
    8615841276005.0L / 14322,
    -7709321041217.0L / 510,
    2577687858367.0L / 6,
    -26315271553053477373.0L / 1919190,
    2929993913841559.0L / 6,
    -261082718496449122051.0L / 13530,
    1520097643918070802691.0L / 1806,
    -27833269579301024235023.0L / 690,
    596451111593912163277961.0L / 282,
    -5609403368997817686249127547.0L / 46410,
};
inline constexpr int kBernCount = sizeof(kBernoulli2k) / sizeof(kBernoulli2k[0]);

// B_{2k}/(2k)! for k = 1..kBernCount.
inline const long double* bern_over_fact() {
    static long double tab[kBernCount] = {};
    static bool init = [] {
        long double fact = 1.0L;
        for (int k = 1; k <= kBernCount; ++k) {
            fact *= (2 * k - 1) * (2 * k);
            tab[k - 1] = kBernoulli2k[k - 1] / fact;
        }
        return true;
    }();
    (void)init;
    return tab;
}

} // namespace detail

template <class Real>
struct EmEvaluation {
    std::complex<Real> value;
    Real remainder_bound; // bound on |truncation error|, excl. rounding
    long terms;           // length of the main sum
};

// zeta(1/2 + it) for any finite real t (negative t by reflection).
template <class Real>
EmEvaluation<Real> em_zeta_half_line(Real t, Real eps) {
    using C = std::complex<Real>;
    if (t < Real(0)) {
        EmEvaluation<Real> r = em_zeta_half_line<Real>(-t, eps);
        r.value = std::conj(r.value);
        return r;
    }
    const C s(Real(0.5), t);
    const C s_minus_1 = s - C(Real(1));

    long n_len = std::max<long>(24, (long)(Real(0.6) * t) + 24);
    EmEvaluation<Real> best{};
    Real best_bound = Real(-1);

    for (int attempt = 0; attempt < 6; ++attempt) {
        const long n_terms = n_len;

        // main sum, compensated, fixed ascending order
        C sum(0), comp(0);
        for (long n = 1; n < n_terms; ++n) {
            const Real ln_n = std::log(Real(n));
            const Real r = Real(1) / std::sqrt(Real(n));
            const Real ph = t * ln_n;
            const C term(r * std::cos(ph), -r * std::sin(ph));
            const C y = term - comp;
            const C tmp = sum + y;
            comp = (tmp - sum) - y;
            sum = tmp;
        }

        const Real ln_N = std::log(Real(n_terms));
        const Real rN = Real(1) / std::sqrt(Real(n_terms));
        const Real phN = t * ln_N;
        const C N_pow_ms(rN * std::cos(phN), -rN * std::sin(phN)); // N^{-s}

        C val = sum + Real(0.5) * N_pow_ms + Real(n_terms) * N_pow_ms / s_minus_1;

        // correction series; poly = s(s+1)...(s+2k-2), npw = N^{1-s-2k}
        const long double* bf = detail::bern_over_fact();
        const Real N2 = Real(n_terms) * Real(n_terms);
        C poly = s;
        C npw = N_pow_ms / Real(n_terms);
        Real prev_mag = std::numeric_limits<Real>::max();
        Real bound = std::numeric_limits<Real>::max();
        for (int k = 1; k <= detail::kBernCount; ++k) {
            if (k > 1) {
                poly *= (s + Real(2 * k - 3)) * (s + Real(2 * k - 2));
                npw /= N2;
            }
            const C term = Real(bf[k - 1]) * poly * npw;
            const Real mag = std::abs(term);
            if (mag > prev_mag) { // divergence onset: stop before this term
                bound = prev_mag * (std::abs(s + Real(2 * k + 1)) / Real(2 * k + 1.5));
                break;
            }
            val += term;
            prev_mag = mag;
            bound = mag * (std::abs(s + Real(2 * k + 1)) / Real(2 * k + 1.5));
            if (bound < eps / 16) break;
        }

        if (best_bound < 0 || bound < best_bound) {
            best = {val, bound, n_terms};
            best_bound = bound;
        }
        if (bound <= eps / 2) break;
        n_len = n_len * 3 / 2 + 16;
    }
    return best;
}

} // namespace zetalab

#endif
