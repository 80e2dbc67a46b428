#include "zetalab/smoothed_moment.hpp"

#include "zetalab/atkinson.hpp"
#include "zetalab/csv_writer.hpp"
#include "zetalab/errors.hpp"

#include <cmath>

namespace zetalab {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kSqrtPi = 1.772453850905516027298167483341145183;

struct Kahan {
    double sum = 0.0, comp = 0.0;
    void add(double x) {
        const double y = x - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};
} // namespace

MomentSample i1_direct(double t, double G, const ZetaGrid& grid) {
    require(std::isfinite(t) && t > 1.0, "i1_direct needs t > 1");
    require(std::isfinite(G) && G >= 1.0, "i1_direct needs G >= 1");
    const double L = std::log(t);
    require(grid.spans(t - G * L, t + G * L), "grid does not span [t - G log t, t + G log t]");

    const std::int64_t k0 = std::int64_t(std::ceil((t - G * L - grid.t0) / grid.dt - 1e-9));
    const std::int64_t k1 = std::int64_t(std::floor((t + G * L - grid.t0) / grid.dt + 1e-9));
    require(k1 - k0 >= 2, "smoothing window shorter than two grid steps");

    auto weighted = [&](std::int64_t k) {
        const double u = (grid.t_at(k) - t) / G;
        return grid.values[k] * std::exp(-u * u);
    };

    Kahan acc;
    std::int64_t k = k0;
    for (; k + 2 <= k1; k += 2)
        acc.add(grid.dt / 3.0 * (weighted(k) + 4.0 * weighted(k + 1) + weighted(k + 2)));
    if (k + 1 == k1)
        acc.add(grid.dt / 12.0 * (-weighted(k - 1) + 8.0 * weighted(k) + 5.0 * weighted(k + 1)));

    MomentSample s;
    s.t = t;
    s.G = G;
    s.value = acc.sum / kSqrtPi;
    s.method = MomentSample::Method::direct;
    s.reported_remainder = std::exp(-L * L / 2.0);
    return s;
}

double moment_u(double t, std::int64_t n) {
    require(t > 0.0 && n >= 1, "u(t,n) needs t > 0, n >= 1");
    const double r = std::sqrt(t / (2.0 * kPi * double(n)) + 0.25) - 0.5;
    require(r > 0.0, "u(t,n) undefined: t/2pi n too small");
    return 1.0 / std::sqrt(r);
}

double moment_H(double T, std::int64_t n, double G, bool exact_damp) {
    const double w = kPi * double(n) / (2.0 * T);
    double damp;
    if (exact_damp) {
        const double a = arsinh(std::sqrt(w));
        damp = std::exp(-G * G * a * a);
    } else {
        damp = std::exp(-G * G * w); // arsinh^2 sqrt(w) ~ w
    }
    return damp * std::sin(phase_f(T, n));
}

MomentSample i1_shifted_diff(double t, double G, double shift, const DivisorTable& table,
                             bool exact_damp, double trunc_factor) {
    require(std::isfinite(t) && t >= 100.0, "explicit formula needs t >= 100");
    require(std::isfinite(G) && G >= std::pow(t, 0.05) && G <= 0.5 * std::sqrt(t),
            "G must satisfy t^0.05 <= G <= sqrt(t)/2");
    require(std::isfinite(shift) && shift >= 0.0, "shift must be >= 0");
    require(trunc_factor >= 1.0, "trunc_factor must be >= 1");

    const double L = std::log(t);
    const auto n_cut = std::int64_t(std::floor(trunc_factor * t * L / (G * G)));
    require(table.n_max >= n_cut, "divisor table shorter than t G^-2 log t");

    // Sign convention fixed by the smoothed Atkinson expansion (and confirmed
    // against the direct quadrature route): the alternating factor is
    // (-1)^{n-1}, matching Sigma1 pushed through the Gaussian smoothing.
    Kahan acc;
    for (std::int64_t n = 1; n <= n_cut; ++n) {
        const double term =
            double(table.d[std::size_t(n)]) / std::sqrt(double(n)) *
            (moment_u(t + shift, n) * moment_H(t + shift, n, G, exact_damp) -
             moment_u(t, n) * moment_H(t, n, G, exact_damp));
        acc.add((n % 2 == 0) ? -term : term);
    }

    MomentSample s;
    s.t = t;
    s.G = G;
    s.value = M_SQRT2 * G * acc.sum;
    s.method = MomentSample::Method::explicit_diff;
    s.reported_remainder = 1.0; // the formula's O(1) term
    return s;
}

MomentSample i1_explicit_diff(double t, double G, const DivisorTable& table, bool exact_damp) {
    return i1_shifted_diff(t, G, G, table, exact_damp);
}

std::complex<double> gaussian_closed_form(std::complex<double> A, std::complex<double> B) {
    require(B.real() > 0.0, "gaussian integral needs Re B > 0");
    return std::sqrt(kPi / B) * std::exp(A * A / (4.0 * B));
}

void write_moment_csv(const std::filesystem::path& path, const std::vector<MomentSample>& rows) {
    AtomicCsvWriter w(path);
    w.raw_line("t,G,method,value");
    for (const auto& r : rows) {
        w.raw_line(AtomicCsvWriter::num(r.t) + "," + AtomicCsvWriter::num(r.G) + "," +
                   (r.method == MomentSample::Method::direct ? "direct" : "explicit_diff") + "," +
                   AtomicCsvWriter::num(r.value));
    }
    w.commit();
}

} // namespace zetalab
