#include "zetalab/divisor_table.hpp"

#include "zetalab/csv_writer.hpp"
#include "zetalab/errors.hpp"

#include <cmath>

namespace zetalab {

DivisorTable divisor_sieve(std::int64_t n_max) {
    require(n_max >= 1, "n_max must be >= 1");
    require(n_max <= 100000000, "n_max above the 1e8 memory guard");

    DivisorTable t;
    t.n_max = n_max;
    t.d.assign(std::size_t(n_max) + 1, 0);
    for (std::int64_t k = 1; k <= n_max; ++k)
        for (std::int64_t m = k; m <= n_max; m += k) t.d[std::size_t(m)]++;

    t.prefix_d.assign(std::size_t(n_max) + 1, 0);
    t.prefix_d2.assign(std::size_t(n_max) + 1, 0);
    for (std::int64_t n = 1; n <= n_max; ++n) {
        const std::int64_t dn = t.d[std::size_t(n)];
        t.prefix_d[std::size_t(n)] = t.prefix_d[std::size_t(n - 1)] + dn;
        t.prefix_d2[std::size_t(n)] = t.prefix_d2[std::size_t(n - 1)] + dn * dn;
    }
    return t;
}

double delta(double x, const DivisorTable& table) {
    require(std::isfinite(x) && x >= 1.0, "Delta(x) needs x >= 1");
    require(x <= double(table.n_max), "x beyond the sieved range");
    const auto fx = std::int64_t(std::floor(x));
    return double(table.prefix_d[std::size_t(fx)]) - x * (std::log(x) + 2.0 * kEulerGamma - 1.0);
}

std::int64_t d2_summatory(double x, const DivisorTable& table) {
    require(std::isfinite(x) && x >= 1.0, "d2 summatory needs x >= 1");
    require(x <= double(table.n_max), "x beyond the sieved range");
    return table.prefix_d2[std::size_t(std::floor(x))];
}

LogPolyFit fit_d2_main_term(const std::vector<double>& xs, const DivisorTable& table) {
    require(xs.size() >= 8, "need at least 8 sample points");
    Eigen::VectorXd ell(Eigen::Index(xs.size())), y(Eigen::Index(xs.size()));
    for (std::size_t i = 0; i < xs.size(); ++i) {
        require(xs[i] >= 2.0 && xs[i] <= double(table.n_max), "sample point outside table");
        ell[Eigen::Index(i)] = std::log(xs[i]);
        y[Eigen::Index(i)] = double(d2_summatory(xs[i], table)) / xs[i];
    }
    return fit_log_cubic(ell, y, "log x");
}

void write_divisor_csv(const std::filesystem::path& path, const std::vector<double>& xs,
                       const DivisorTable& table) {
    AtomicCsvWriter w(path);
    w.raw_line("x,d2_sum,delta");
    for (double x : xs) {
        w.raw_line(AtomicCsvWriter::num(x) + "," + std::to_string(d2_summatory(x, table)) + "," +
                   AtomicCsvWriter::num(delta(x, table)));
    }
    w.commit();
}

} // namespace zetalab
