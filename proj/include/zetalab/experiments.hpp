#ifndef ZETALAB_EXPERIMENTS_HPP
#define ZETALAB_EXPERIMENTS_HPP

// Mean-square experiments and the cubic-log coefficient fits:
//
//   long interval:   int_T^{2T}  (I1(t+G,G) - I1(t,G))^2 dt
//                      ~ T G sum a_j log^j(sqrt T / G)
//   short interval:  J(T;G,H,U) = int_T^{T+H} (I1(t+U,G) - I1(t,G))^2 dt
//                      ~ (H U^2 / G) log^3(sqrt T / G)  up to constants
//   divisor:         int_T^{2T}  (Delta(x+U) - Delta(x))^2 dx
//                      ~ T U sum c_j log^j(sqrt T / U),  c3 = 8/pi^2
//
// plus the error-budget arithmetic for the remainder orders
// T^{1+eps} G^{1/2} and T^{1/2+eps} G^2 (eps fixed at 0.05 throughout).

#include "zetalab/divisor_table.hpp"
#include "zetalab/log_poly_fit.hpp"
#include "zetalab/smoothed_moment.hpp"
#include "zetalab/zeta_eval.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace zetalab {

inline constexpr double kRangeEps = 0.05;

struct ExperimentRecord {
    double T = 0, G = 0, U = 0, H = 0, step = 0;
    double statistic = 0;
    double normalized = 0;
};

struct ExperimentResult {
    std::string experiment_id;
    std::vector<ExperimentRecord> records;
    std::optional<LogPolyFit> fit;
    std::string budget_notes; // regime flags and remainder notes
};

// Riemann-sum mean square of I1(t+G,G)-I1(t,G) over [T,2T] at the given
// step; each integrand evaluation is a Gaussian-weighted quadrature over the
// grid.  Flags G > T^{0.45} (normalization no longer asymptotic) in the notes.
ExperimentResult meansq_i1_long(double T, double G, const ZetaGrid& grid, double step);

// Same statistic through the explicit-formula route (no grid).
ExperimentResult meansq_i1_long_explicit(double T, double G, const DivisorTable& table,
                                         double step);

struct ShortIntervalCheck {
    bool u_above_min = false; // U >= T^eps
    bool u_le_g = false;      // U <= G
    bool g_in_range = false;  // G <= sqrt(T)/2
    bool h_in_range = false;  // T^eps <= H <= T
    bool hu_large = false;    // H U >= T^{1+eps}
    bool ok() const { return u_above_min && u_le_g && g_in_range && h_in_range && hu_large; }
};

ShortIntervalCheck validate_short_interval(double T, double G, double H, double U);

// J(T;G,H,U); the validator's verdict is reported, not enforced.
ExperimentResult meansq_i1_short(double T, double H, double U, double G, const ZetaGrid& grid,
                                 double step);

// Midpoint Riemann sum of (Delta(x+U)-Delta(x))^2 over [T,2T].
ExperimentResult meansq_delta_diff(double T, double U, const DivisorTable& table, double step);

// Fit of statistic/(T G) against {1,l,l^2,l^3}, l = log(sqrt T/G), over a
// ladder of long-interval results (>= 8 pairs spanning >= 1.5 in l).
LogPolyFit fit_theorem1(const std::vector<ExperimentResult>& results);

// As fit_theorem1 but for the divisor experiment: statistic/(T U) against
// l = log(sqrt T / U).
LogPolyFit fit_delta_ladder(const std::vector<ExperimentResult>& results);

struct BudgetLine {
    double T = 0, G = 0;
    double remainder_half_power = 0; // T^{1+eps} sqrt(G)
    double remainder_g_squared = 0;  // T^{1/2+eps} G^2
    double main_term = 0;            // T G * fit(l), or T G l^3 without a fit
    double ratio = 0;
    bool flagged = false; // remainder above 10% of the main term
};

struct BudgetReport {
    std::vector<BudgetLine> lines;
};

BudgetReport error_budget(const ExperimentResult& result);

// CSV `experiment_id,T,G,U,H,step,statistic,normalized`.
void write_experiment_csv(const std::filesystem::path& path,
                          const std::vector<ExperimentResult>& results);

// CSV `regressor,c0,c1,c2,c3,residual_norm,condition`.
void write_fit_csv(const std::filesystem::path& path, const std::vector<LogPolyFit>& fits);

} // namespace zetalab

#endif
