#ifndef ZETALAB_SMOOTHED_MOMENT_HPP
#define ZETALAB_SMOOTHED_MOMENT_HPP

// The Gaussian-smoothed second moment
//
//   I1(t,G) = (1/sqrt pi) int |zeta(1/2+it+iu)|^2 e^{-(u/G)^2} du
//
// by direct quadrature over a sampled grid (truncated at |u| = G log t), and
// the explicit formula for the shifted difference
//
//   I1(t+s,G) - I1(t,G) = O(1) + sqrt2 G sum_{n <= t G^{-2} log t} (-1)^n d(n)
//       n^{-1/2} { u(t+s,n) H(t+s,n) - u(t,n) H(t,n) },
//
//   u(t,n) = { (t/2pi n + 1/4)^{1/2} - 1/2 }^{-1/2},
//   H(T,n) = exp(-G^2 arsinh^2 sqrt(pi n/2T)) sin f(T,n),
//
// with f from the Atkinson phases.  The canonical shift is s = G; the shift
// is exposed as a parameter so short-interval runs can take s = U <= G.

#include "zetalab/divisor_table.hpp"
#include "zetalab/zeta_eval.hpp"

#include <complex>
#include <cstdint>
#include <filesystem>
#include <vector>

namespace zetalab {

struct MomentSample {
    enum class Method { direct, explicit_diff };
    double t = 0;
    double G = 0;
    double value = 0;
    Method method = Method::direct;
    // direct: Gaussian truncation bound e^{-L^2/2}; explicit_diff: the O(1)
    // remainder scale of the formula (not computed, carried as metadata).
    double reported_remainder = 0;
};

// Direct quadrature of I1(t,G); the grid must span [t - G log t, t + G log t].
MomentSample i1_direct(double t, double G, const ZetaGrid& grid);

// u(t,n); valid while the inner square root exceeds 1/2, i.e. t > 2 pi n ... 0.
double moment_u(double t, std::int64_t n);

// H(T,n) with the exact Gaussian damp (or the simplified exp(-pi n G^2/T)).
double moment_H(double T, std::int64_t n, double G, bool exact_damp = true);

// Explicit formula for I1(t+shift,G) - I1(t,G).  The divisor table must cover
// n <= trunc_factor * t G^{-2} log t.  exact_damp=false switches to the
// Taylor-simplified damp for reproducing the reduced chain; trunc_factor
// stretches the cutoff (the Gaussian damp makes the tail negligible).
MomentSample i1_shifted_diff(double t, double G, double shift, const DivisorTable& table,
                             bool exact_damp = true, double trunc_factor = 1.0);

// Canonical shift = G.
MomentSample i1_explicit_diff(double t, double G, const DivisorTable& table,
                              bool exact_damp = true);

// int_-inf^inf exp(Ax - Bx^2) dx = sqrt(pi/B) exp(A^2/4B), Re B > 0.
std::complex<double> gaussian_closed_form(std::complex<double> A, std::complex<double> B);

// CSV `t,G,method,value`.
void write_moment_csv(const std::filesystem::path& path, const std::vector<MomentSample>& rows);

} // namespace zetalab

#endif
