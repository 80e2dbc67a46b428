#include "zetalab/atkinson.hpp"

#include "zetalab/csv_writer.hpp"
#include "zetalab/errors.hpp"

#include <cmath>

namespace zetalab {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kTwoPi = 2.0 * kPi;

// int_0^2 |zeta(1/2+it)|^2 dt, frozen from an adaptive high-accuracy pass.
constexpr double kHeadIntegral0to2 = 1.6173410075373803;

// e(T,n) without the n < T range check (Sigma1 may reach past T when N > T;
// the closed form stays well defined).
double amplitude_unchecked(double T, double n) {
    const double w = kPi * n / (2.0 * T); // (2T/pi n)^{1/2} = w^{-1/2}
    const double a = arsinh(std::sqrt(w));
    return std::pow(1.0 + w, -0.25) * std::sqrt(w) / a;
}

// Kahan accumulator
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

double arsinh(double x) {
    if (x < 0.0) return -arsinh(-x);
    // log1p form avoids cancellation and keeps small-x accuracy
    return std::log1p(x + x * x / (1.0 + std::sqrt(1.0 + x * x)));
}

double phase_f(double T, std::int64_t n) {
    require(T > 0.0 && n >= 1, "phase f needs T > 0, n >= 1");
    const double nn = double(n);
    return 2.0 * T * arsinh(std::sqrt(kPi * nn / (2.0 * T))) +
           std::sqrt(kTwoPi * nn * T + kPi * kPi * nn * nn) - kPi / 4.0;
}

double amplitude_e(double T, std::int64_t n) {
    require(T > 0.0 && n >= 1, "amplitude e needs T > 0, n >= 1");
    require(double(n) < T, "amplitude e is defined for 1 <= n < T");
    return amplitude_unchecked(T, double(n));
}

double atkinson_n_prime(double T, double N) {
    return T / kTwoPi + N / 2.0 - std::sqrt(N * N / 4.0 + N * T / kTwoPi);
}

AtkinsonDecomposition atkinson_E(double T, double N, const DivisorTable& table) {
    require(std::isfinite(T) && T >= 10.0, "atkinson_E needs T >= 10");
    require(N >= 0.1 * T && N <= 10.0 * T, "truncation N must lie in [0.1 T, 10 T]");
    require(T * N <= 1e12, "phase arguments overflow double precision past T*N = 1e12");
    const double n_prime = atkinson_n_prime(T, N);
    require(double(table.n_max) >= std::max(N, n_prime),
            "divisor table shorter than max(N, N')");

    AtkinsonDecomposition dec;
    dec.T = T;
    dec.N = N;
    dec.N_prime = n_prime;

    const auto n1 = std::int64_t(std::floor(N));
    Kahan s1;
    for (std::int64_t n = 1; n <= n1; ++n) {
        const double nn = double(n);
        const double term = double(table.d[std::size_t(n)]) * std::pow(nn, -0.75) *
                            amplitude_unchecked(T, nn) * std::cos(phase_f(T, n));
        s1.add((n % 2 == 0) ? term : -term);
    }
    dec.sigma1 = M_SQRT2 * std::pow(T / kTwoPi, 0.25) * s1.sum;

    const auto n2 = std::int64_t(std::floor(n_prime));
    Kahan s2;
    for (std::int64_t n = 1; n <= n2; ++n) {
        const double nn = double(n);
        const double lg = std::log(T / (kTwoPi * nn));
        s2.add(double(table.d[std::size_t(n)]) / std::sqrt(nn) / lg *
               std::cos(T * lg - T + kPi / 4.0));
    }
    dec.sigma2 = -2.0 * s2.sum;

    dec.value = dec.sigma1 + dec.sigma2;
    return dec;
}

double direct_E(double T, const SecondMomentIntegral& integral) {
    const ZetaGrid& g = integral.grid();
    require(g.t0 <= 2.0, "grid must start at t0 <= 2 (the [0,2] head is precomputed)");
    require(T >= 2.0 && g.spans(2.0, T), "grid does not span [2, T]");
    const double moment = kHeadIntegral0to2 + integral.integrate(2.0, T);
    return moment - T * (std::log(T / kTwoPi) + 2.0 * kEulerGamma - 1.0);
}

EDiffMeanSquare mean_square_E_diff(double T, double H, double U,
                                   const SecondMomentIntegral& integral) {
    const ZetaGrid& g = integral.grid();
    require(std::isfinite(T) && std::isfinite(H) && std::isfinite(U), "non-finite arguments");
    require(H > 0.0 && U >= 0.0, "need H > 0 and U >= 0");
    require(g.spans(T, T + H + U), "grid does not span [T, T+H+U]");

    EDiffMeanSquare out;
    out.asymptotic_regime = (U >= 1.0) && (H * U >= std::pow(T, 1.05));
    if (U == 0.0) return out;

    const std::int64_t k0 = std::int64_t(std::ceil((T - g.t0) / g.dt - 1e-9));
    const std::int64_t k1 = std::int64_t(std::floor((T + H - g.t0) / g.dt + 1e-9));
    require(k1 - k0 >= 2, "integration window shorter than two grid steps");

    // E(x+U) - E(x) only needs the sampled integral over [x, x+U]:
    // the [0, x] head cancels in the difference.
    auto main_term = [&](double x) { return x * (std::log(x / kTwoPi) + 2.0 * kEulerGamma - 1.0); };
    auto sq_diff = [&](std::int64_t k) {
        const double x = g.t_at(k);
        const double d = integral.integrate(x, x + U) - (main_term(x + U) - main_term(x));
        return d * d;
    };

    // composite Simpson over the node range, third-order rule on an odd tail
    Kahan acc;
    std::int64_t k = k0;
    for (; k + 2 <= k1; k += 2)
        acc.add(g.dt / 3.0 * (sq_diff(k) + 4.0 * sq_diff(k + 1) + sq_diff(k + 2)));
    if (k + 1 == k1)
        acc.add(g.dt / 12.0 * (-sq_diff(k - 1) + 8.0 * sq_diff(k) + 5.0 * sq_diff(k + 1)));
    out.value = acc.sum;
    return out;
}

double jutila_main_term(double T, double H, double U, const DivisorTable& table, bool e_version) {
    require(std::isfinite(T) && T > 0.0 && H > 0.0 && U >= 0.0, "bad (T,H,U)");
    if (U == 0.0) return 0.0;

    const auto n_cut = std::int64_t(std::floor(T / (2.0 * U)));
    require(table.n_max >= n_cut, "divisor table shorter than T/(2U)");

    const double pref = e_version ? 1.0 / std::sqrt(kTwoPi) : 1.0 / (4.0 * kPi * kPi);
    const double phase_c = e_version ? std::sqrt(kTwoPi) : kTwoPi;

    Kahan total;
    for (std::int64_t n = 1; n <= n_cut; ++n) {
        const double nn = double(n);
        const double half_amp = 0.5 * phase_c * U * std::sqrt(nn);
        // |e^{i phi} - 1|^2 = 4 sin^2(phi/2), phi = phase_c * U * sqrt(n/x)
        auto integrand = [&](double x) {
            const double s = std::sin(half_amp / std::sqrt(x));
            return std::sqrt(x) * 4.0 * s * s;
        };
        const double oscillations =
            half_amp / kPi * (1.0 / std::sqrt(T) - 1.0 / std::sqrt(T + H));
        std::int64_t panels = std::max<std::int64_t>(16, std::int64_t(64.0 * oscillations) + 1);
        if (panels % 2) ++panels;
        const double h = H / double(panels);
        Kahan inner;
        for (std::int64_t j = 0; j + 2 <= panels; j += 2) {
            const double x = T + double(j) * h;
            inner.add(h / 3.0 * (integrand(x) + 4.0 * integrand(x + h) + integrand(x + 2.0 * h)));
        }
        const double dn = double(table.d[std::size_t(n)]);
        total.add(dn * dn * std::pow(nn, -1.5) * inner.sum);
    }
    return pref * total.sum;
}

void write_atkinson_csv(const std::filesystem::path& path,
                        const std::vector<AtkinsonCsvRow>& rows) {
    AtomicCsvWriter w(path);
    w.raw_line("T,N,Nprime,sigma1,sigma2,E_atkinson,E_direct,residual");
    for (const auto& r : rows) {
        const auto& d = r.decomposition;
        w.raw_line(AtomicCsvWriter::num(d.T) + "," + AtomicCsvWriter::num(d.N) + "," +
                   AtomicCsvWriter::num(d.N_prime) + "," + AtomicCsvWriter::num(d.sigma1) + "," +
                   AtomicCsvWriter::num(d.sigma2) + "," + AtomicCsvWriter::num(d.value) + "," +
                   AtomicCsvWriter::num(r.e_direct) + "," +
                   AtomicCsvWriter::num(d.value - r.e_direct));
    }
    w.commit();
}

} // namespace zetalab
