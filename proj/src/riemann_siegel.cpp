#include "zetalab/riemann_siegel.hpp"

#include "zetalab/taylor_series.hpp"

#include <cmath>
#include <mutex>

namespace zetalab {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr long double kPiL = 3.141592653589793238462643383279502884L;

// Degree of the Psi jets; C_3 needs Psi^(9), table slopes need one more.
constexpr int kJetDeg = 12;
using Jet = TaylorSeries<kJetDeg>;

// Jet of Psi(p + x) = cos(q(p+x)) / cos(2pi(p+x)), q(z) = 2pi(z^2 - z - 1/16).
// Numerator and denominator share simple zeros at z = 1/4 and 3/4; when p is
// close to one of them both jets are deflated by the common root first.
Jet psi_jet(double p) {
    const Jet z = Jet::linear(p, 1.0);
    Jet q = (z * z - z) * (2.0 * kPi);
    q.c[0] -= 2.0 * kPi / 16.0;
    Jet num_sin, num_cos;
    sincos_series(q, num_sin, num_cos);

    Jet den_sin, den_cos;
    sincos_series(z * (2.0 * kPi), den_sin, den_cos);

    double root = 0.0;
    bool deflate = false;
    for (double ps : {0.25, 0.75}) {
        if (std::abs(p - ps) < 0.06) {
            root = ps - p;
            deflate = true;
        }
    }
    if (deflate) {
        num_cos = num_cos.deflate(root);
        den_cos = den_cos.deflate(root);
    }
    return num_cos * den_cos.reciprocal();
}

std::array<double, 4> coeffs_from_jet(const Jet& psi) {
    const double pi2 = kPi * kPi;
    const double pi4 = pi2 * pi2;
    const double pi6 = pi4 * pi2;
    std::array<double, 4> c{};
    c[0] = psi.derivative(0);
    c[1] = -psi.derivative(3) / (96.0 * pi2);
    c[2] = psi.derivative(2) / (64.0 * pi2) + psi.derivative(6) / (18432.0 * pi4);
    c[3] = -psi.derivative(1) / (64.0 * pi2) - psi.derivative(5) / (3840.0 * pi4) -
           psi.derivative(9) / (5308416.0 * pi6);
    return c;
}

// Hermite table for C_0..C_3 over p in [0,1].
struct CorrectionTable {
    static constexpr int kNodes = 4096;
    std::array<std::vector<double>, 4> value;
    std::array<std::vector<double>, 4> slope;

    CorrectionTable() {
        for (auto& v : value) v.resize(kNodes + 1);
        for (auto& v : slope) v.resize(kNodes + 1);
        const double pi2 = kPi * kPi;
        const double pi4 = pi2 * pi2;
        const double pi6 = pi4 * pi2;
        for (int i = 0; i <= kNodes; ++i) {
            const double p = double(i) / kNodes;
            const Jet psi = psi_jet(p);
            const auto c = coeffs_from_jet(psi);
            for (int j = 0; j < 4; ++j) value[j][i] = c[j];
            slope[0][i] = psi.derivative(1);
            slope[1][i] = -psi.derivative(4) / (96.0 * pi2);
            slope[2][i] = psi.derivative(3) / (64.0 * pi2) + psi.derivative(7) / (18432.0 * pi4);
            slope[3][i] = -psi.derivative(2) / (64.0 * pi2) - psi.derivative(6) / (3840.0 * pi4) -
                          psi.derivative(10) / (5308416.0 * pi6);
        }
    }

    std::array<double, 4> eval(double p) const {
        if (p < 0.0) p = 0.0;
        if (p > 1.0) p = 1.0;
        const double u = p * kNodes;
        int i = int(u);
        if (i >= kNodes) i = kNodes - 1;
        const double h = 1.0 / kNodes;
        const double x = (u - i) ; // in [0,1)
        const double x2 = x * x, x3 = x2 * x;
        const double h00 = 2 * x3 - 3 * x2 + 1;
        const double h10 = x3 - 2 * x2 + x;
        const double h01 = -2 * x3 + 3 * x2;
        const double h11 = x3 - x2;
        std::array<double, 4> c{};
        for (int j = 0; j < 4; ++j) {
            c[j] = h00 * value[j][i] + h01 * value[j][i + 1] +
                   h * (h10 * slope[j][i] + h11 * slope[j][i + 1]);
        }
        return c;
    }
};

const CorrectionTable& correction_table() {
    static const CorrectionTable table;
    return table;
}

double correction_sum(double tau, int m) {
    const double p = tau - m;
    const auto c = correction_table().eval(p);
    const double a = 1.0 / std::sqrt(tau); // (t/2pi)^{-1/4} since tau^2 = t/2pi
    const double r = 1.0 / tau;            // (t/2pi)^{-1/2}
    const double sum = c[0] + r * (c[1] + r * (c[2] + r * c[3]));
    const double sign = (m % 2 == 1) ? 1.0 : -1.0; // (-1)^{m-1}
    return sign * a * sum;
}

} // namespace

double rs_theta(double t) {
    const double lg = std::log(t / (2.0 * kPi));
    const double t2 = t * t;
    return 0.5 * t * lg - 0.5 * t - kPi / 8.0 + 1.0 / (48.0 * t) + 7.0 / (5760.0 * t * t2) +
           31.0 / (80640.0 * t2 * t2 * t);
}

long double rs_theta_ld(long double t) {
    const long double lg = std::log(t / (2.0L * kPiL));
    const long double t2 = t * t;
    return 0.5L * t * lg - 0.5L * t - kPiL / 8.0L + 1.0L / (48.0L * t) +
           7.0L / (5760.0L * t * t2) + 31.0L / (80640.0L * t2 * t2 * t);
}

std::array<double, 4> rs_correction_coeffs(double p) { return coeffs_from_jet(psi_jet(p)); }

RsTermTable::RsTermTable(std::size_t m_max) {
    log_n.resize(m_max + 1, 0.0);
    inv_sqrt_n.resize(m_max + 1, 0.0);
    for (std::size_t n = 1; n <= m_max; ++n) {
        log_n[n] = std::log(double(n));
        inv_sqrt_n[n] = 1.0 / std::sqrt(double(n));
    }
}

double rs_z_fast(double t, const RsTermTable& table) {
    const double tau = std::sqrt(t / (2.0 * kPi));
    const int m = int(tau);
    const double th = rs_theta(t);
    double sum = 0.0;
    for (int n = 1; n <= m; ++n) {
        sum += table.inv_sqrt_n[n] * std::cos(th - t * table.log_n[n]);
    }
    return 2.0 * sum + correction_sum(tau, m);
}

double rs_z_accurate(double t) {
    const long double tl = t;
    const double tau = std::sqrt(t / (2.0 * kPi));
    const int m = int(tau);
    const long double th = rs_theta_ld(tl);
    long double sum = 0.0L;
    for (int n = 1; n <= m; ++n) {
        const long double ph = th - tl * std::log((long double)n);
        sum += std::cos(ph) / std::sqrt((long double)n);
    }
    return double(2.0L * sum) + correction_sum(tau, m);
}

std::complex<double> rs_zeta_accurate(double t) {
    const double z = rs_z_accurate(t);
    const long double th = rs_theta_ld((long double)t);
    // e^{-i theta} with the phase reduced in extended precision
    const long double tp = 2.0L * kPiL;
    const long double red = th - tp * std::floor(th / tp);
    return std::complex<double>(z * double(std::cos(red)), -z * double(std::sin(red)));
}

double rs_truncation_bound(double t) {
    // Gabcke-style remainder after C_3 decays like t^{-9/4}; the constant
    // below is the empirical envelope vs the Euler-Maclaurin oracle on
    // [50, 2e5], widened 10x.
    return 0.2 * std::pow(t, -2.25);
}

} // namespace zetalab
