#ifndef ZETALAB_DIVISOR_TABLE_HPP
#define ZETALAB_DIVISOR_TABLE_HPP

// Sieved divisor function d(n) with prefix sums of d and d^2, the divisor
// error term Delta(x), and the cubic-log fit of the d^2 summatory main term.
//
//   Delta(x) = sum_{n<=x} d(n) - x(log x + 2 gamma - 1)
//   D2(x)    = sum_{n<=x} d^2(n) ~ x (d3 log^3 x + ... + d0)

#include "zetalab/log_poly_fit.hpp"

#include <cstdint>
#include <filesystem>
#include <vector>

namespace zetalab {

inline constexpr double kEulerGamma = 0.577215664901532860606512090082;

struct DivisorTable {
    std::int64_t n_max = 0;
    std::vector<std::uint32_t> d;       // d[n], 1 <= n <= n_max; d[0] unused
    std::vector<std::int64_t> prefix_d; // sum_{m<=n} d(m)
    std::vector<std::int64_t> prefix_d2;
};

// Exact d(n) for n <= n_max by the O(n log n) incrementing sieve.
DivisorTable divisor_sieve(std::int64_t n_max);

// Delta(x) for 1 <= x <= n_max.
double delta(double x, const DivisorTable& table);

// Sum of d^2(n) over n <= x (exact prefix lookup).
std::int64_t d2_summatory(double x, const DivisorTable& table);

// Fit of D2(x)/x against {1, log x, log^2 x, log^3 x} on the given sample
// points (>= 8 of them, geometrically spaced, max <= n_max).
LogPolyFit fit_d2_main_term(const std::vector<double>& xs, const DivisorTable& table);

// CSV `x,d2_sum,delta`, one record per sample, full round-trip precision.
void write_divisor_csv(const std::filesystem::path& path, const std::vector<double>& xs,
                       const DivisorTable& table);

} // namespace zetalab

#endif
