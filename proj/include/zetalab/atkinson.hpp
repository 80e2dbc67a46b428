#ifndef ZETALAB_ATKINSON_HPP
#define ZETALAB_ATKINSON_HPP

// Atkinson's explicit formula for the mean-square error term
//
//   E(T) = int_0^T |zeta(1/2+it)|^2 dt - T(log(T/2pi) + 2 gamma - 1)
//        = Sigma1(T) + Sigma2(T) + O(log^2 T),
//
//   Sigma1 = sqrt2 (T/2pi)^{1/4} sum_{n<=N} (-1)^n d(n) n^{-3/4} e(T,n) cos f(T,n)
//   Sigma2 = -2 sum_{n<=N'} d(n) n^{-1/2} log(T/2pi n)^{-1}
//                cos(T log(T/2pi n) - T + pi/4)
//   N'     = T/2pi + N/2 - sqrt(N^2/4 + NT/2pi)
//
// together with the direct route to E(T) through sampled quadrature, the
// short-interval mean square of E, and the Jutila main-term sum it is
// compared against.

#include "zetalab/divisor_table.hpp"
#include "zetalab/zeta_eval.hpp"

#include <cstdint>
#include <filesystem>
#include <vector>

namespace zetalab {

// log(x + sqrt(1+x^2)), odd, cancellation-safe on both signs.
double arsinh(double x);

// f(T,n) = 2T arsinh(sqrt(pi n / 2T)) + sqrt(2 pi n T + pi^2 n^2) - pi/4
double phase_f(double T, std::int64_t n);

// e(T,n) = (1 + pi n/2T)^{-1/4} { (2T/pi n)^{1/2} arsinh(sqrt(pi n/2T)) }^{-1},
// validated for 1 <= n < T.
double amplitude_e(double T, std::int64_t n);

// N'(T,N) as above.
double atkinson_n_prime(double T, double N);

struct AtkinsonDecomposition {
    double T = 0;
    double N = 0;
    double N_prime = 0;
    double sigma1 = 0;
    double sigma2 = 0;
    double value = 0; // sigma1 + sigma2
};

// Truncation N in [0.1 T, 10 T]; the divisor table must cover max(N, N').
// Phase arguments grow like sqrt(NT), so T*N <= 1e12 is enforced.
AtkinsonDecomposition atkinson_E(double T, double N, const DivisorTable& table);

// E(T) from the sampled grid; the [0,2] head of the integral is a frozen
// high-accuracy constant, the grid must start at t0 <= 2.
double direct_E(double T, const SecondMomentIntegral& integral);

struct EDiffMeanSquare {
    double value = 0;
    bool asymptotic_regime = false; // HU >= T^{1+eps} with eps = 0.05
};

// int_T^{T+H} (E(x+U) - E(x))^2 dx over the grid nodes.
EDiffMeanSquare mean_square_E_diff(double T, double H, double U,
                                   const SecondMomentIntegral& integral);

// Jutila's short-interval main term
//   (1/4pi^2) sum_{n <= T/2U} d^2(n) n^{-3/2}
//       int_T^{T+H} x^{1/2} |exp(2 pi i U sqrt(n/x)) - 1|^2 dx,
// inner integrals by oscillation-resolving composite Simpson.  With
// e_version the constants become 1/sqrt(2pi) and sqrt(2pi).
double jutila_main_term(double T, double H, double U, const DivisorTable& table,
                        bool e_version = false);

struct AtkinsonCsvRow {
    AtkinsonDecomposition decomposition;
    double e_direct = 0;
};

// CSV `T,N,Nprime,sigma1,sigma2,E_atkinson,E_direct,residual`.
void write_atkinson_csv(const std::filesystem::path& path, const std::vector<AtkinsonCsvRow>& rows);

} // namespace zetalab

#endif
