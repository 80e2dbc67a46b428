// zetalab: grid-cache management, explicit-formula checks, and the
// mean-square experiments, all emitting CSV artifacts.
//
//   zetalab sample-zeta   --T 1000 --H 50 [--dt 0.01 --accuracy 1e-6]
//   zetalab e-term        --T 5000
//   zetalab i1            --T 100000 --G 56
//   zetalab meansq-delta  --T 1000000 --U 63.1
//   zetalab meansq-i1     --T 100000 --G 56
//   zetalab meansq-i1-short --T 100000 --G 166.8 --U 46.4 --H 27826
//   zetalab fit-d2        --nmax 10000000 --out fit.csv
//   zetalab fit-theorem1  --out ladder.csv
//   zetalab report        --out fits.csv in1.csv [in2.csv ...]
//   zetalab cache-gc      --max-bytes 2000000000
//
// Exit codes: 0 success, 2 validation error, 3 IO error, 4 numeric failure.

#include "zetalab/atkinson.hpp"
#include "zetalab/csv_writer.hpp"
#include "zetalab/divisor_table.hpp"
#include "zetalab/errors.hpp"
#include "zetalab/experiments.hpp"
#include "zetalab/grid_io.hpp"
#include "zetalab/smoothed_moment.hpp"
#include "zetalab/zeta_eval.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace {

using namespace zetalab;
namespace fs = std::filesystem;

struct Options {
    double T = 0, G = 0, U = 0, H = 0;
    double dt = 0.01;
    double step = 0;
    std::int64_t nmax = 0;
    double accuracy = 1e-6;
    std::string cache_dir;
    std::string out;
    int workers = 0;
};

fs::path resolve_cache(const Options& opt) {
    if (!opt.cache_dir.empty()) return opt.cache_dir;
    if (const char* env = std::getenv("ZETALAB_CACHE")) return env;
    return "zetalab-cache";
}

// Cached grid covering [lo, hi], span rounded outward to 500-multiples so
// nearby experiments share files.
ZetaGrid grid_for(const Options& opt, double lo, double hi) {
    lo = std::max(2.0, std::floor(lo / 500.0) * 500.0);
    hi = std::ceil(hi / 500.0) * 500.0;
    const double t0 = std::floor(lo / opt.dt) * opt.dt;
    return cached_abs2_grid(resolve_cache(opt), std::max(2.0, t0), hi, opt.dt, opt.accuracy,
                            opt.workers);
}

DivisorTable table_for(const Options& opt, double needed) {
    const std::int64_t n = opt.nmax > 0 ? opt.nmax : std::int64_t(needed) + 2;
    return divisor_sieve(n);
}

int cmd_sample_zeta(const Options& opt) {
    require(opt.T >= 2.0 && opt.H > 0.0, "sample-zeta needs --T >= 2 and --H > 0");
    const fs::path cache = resolve_cache(opt);
    ZetaGrid g = cached_abs2_grid(cache, opt.T, opt.T + opt.H, opt.dt, opt.accuracy, opt.workers);
    std::printf("grid: t0=%.6f dt=%g count=%lld cache=%s\n", g.t0, g.dt,
                (long long)g.count(), cache.c_str());
    if (!opt.out.empty()) {
        AtomicCsvWriter w(opt.out);
        w.raw_line("t,abs_zeta_sq");
        for (std::int64_t k = 0; k < g.count(); ++k)
            w.raw_line(AtomicCsvWriter::num(g.t_at(k)) + "," + AtomicCsvWriter::num(g.values[k]));
        w.commit();
    }
    return 0;
}

int cmd_e_term(const Options& opt) {
    require(opt.T >= 10.0, "e-term needs --T >= 10");
    const double N = opt.T; // default truncation N = T
    DivisorTable table = table_for(opt, N);
    ZetaGrid g = grid_for(opt, 2.0, opt.T + 1.0);
    SecondMomentIntegral integral(g);

    AtkinsonCsvRow row;
    row.decomposition = atkinson_E(opt.T, N, table);
    row.e_direct = direct_E(opt.T, integral);
    std::printf("T=%g  E_atkinson=%.6f  E_direct=%.6f  residual=%.6f  (10 log^2 T = %.1f)\n",
                opt.T, row.decomposition.value, row.e_direct,
                row.decomposition.value - row.e_direct,
                10.0 * std::log(opt.T) * std::log(opt.T));
    if (!opt.out.empty()) write_atkinson_csv(opt.out, {row});
    return 0;
}

int cmd_i1(const Options& opt) {
    require(opt.T >= 100.0 && opt.G >= 1.0, "i1 needs --T >= 100 and --G >= 1");
    require(opt.G >= std::pow(opt.T, 0.05) && opt.G <= 0.5 * std::sqrt(opt.T),
            "G must satisfy T^0.05 <= G <= sqrt(T)/2 (explicit-formula range)");
    const double L = std::log(opt.T + opt.G);
    ZetaGrid g = grid_for(opt, opt.T - opt.G * L, opt.T + opt.G + opt.G * L);
    DivisorTable table = table_for(opt, opt.T * std::log(opt.T) / (opt.G * opt.G));

    std::vector<MomentSample> rows;
    rows.push_back(i1_direct(opt.T, opt.G, g));
    rows.push_back(i1_explicit_diff(opt.T, opt.G, table));
    std::printf("I1(t,G)=%.6f   I1(t+G,G)-I1(t,G) [explicit]=%.6f\n", rows[0].value,
                rows[1].value);
    if (!opt.out.empty()) write_moment_csv(opt.out, rows);
    return 0;
}

int cmd_meansq_delta(const Options& opt) {
    require(opt.T >= 10.0, "meansq-delta needs --T >= 10");
    const double step = opt.step > 0 ? opt.step : std::max(0.25, opt.U / 8.0);
    DivisorTable table = table_for(opt, 2.0 * opt.T + opt.U);
    ExperimentResult r = meansq_delta_diff(opt.T, opt.U, table, step);
    std::printf("meansq-delta: T=%g U=%g statistic=%.8e normalized=%.6f\n", opt.T, opt.U,
                r.records[0].statistic, r.records[0].normalized);
    if (!opt.out.empty()) write_experiment_csv(opt.out, {r});
    return 0;
}

int cmd_meansq_i1(const Options& opt) {
    require(opt.T >= 100.0 && opt.G >= 1.0, "meansq-i1 needs --T >= 100 and --G >= 1");
    require(opt.G >= std::pow(opt.T, 0.05) && opt.G <= 0.5 * std::sqrt(opt.T),
            "G must satisfy T^0.05 <= G <= sqrt(T)/2 (long mean-square range)");
    const double step = opt.step > 0 ? opt.step : opt.G / 8.0;
    const double hi = 2.0 * opt.T + opt.G;
    ZetaGrid g = grid_for(opt, opt.T - opt.G * std::log(opt.T), hi + opt.G * std::log(hi));
    ExperimentResult r = meansq_i1_long(opt.T, opt.G, g, step);
    std::printf("meansq-i1: T=%g G=%g statistic=%.8e normalized=%.6f%s%s\n", opt.T, opt.G,
                r.records[0].statistic, r.records[0].normalized,
                r.budget_notes.empty() ? "" : "  ", r.budget_notes.c_str());
    if (!opt.out.empty()) write_experiment_csv(opt.out, {r});
    return 0;
}

int cmd_meansq_i1_short(const Options& opt) {
    require(opt.T >= 100.0 && opt.G >= 1.0 && opt.H > 0.0,
            "meansq-i1-short needs --T >= 100, --G >= 1, --H > 0");
    const double step = opt.step > 0 ? opt.step : opt.G / 8.0;
    const double hi = opt.T + opt.H + opt.U;
    ZetaGrid g = grid_for(opt, opt.T - opt.G * std::log(opt.T), hi + opt.G * std::log(hi));
    ExperimentResult r = meansq_i1_short(opt.T, opt.H, opt.U, opt.G, g, step);
    std::printf("meansq-i1-short: T=%g G=%g U=%g H=%g statistic=%.8e normalized=%.6f\n", opt.T,
                opt.G, opt.U, opt.H, r.records[0].statistic, r.records[0].normalized);
    if (!r.budget_notes.empty()) std::printf("  [%s]\n", r.budget_notes.c_str());
    if (!opt.out.empty()) write_experiment_csv(opt.out, {r});
    return 0;
}

int cmd_fit_d2(const Options& opt) {
    const std::int64_t nmax = opt.nmax > 0 ? opt.nmax : 10000000;
    require(nmax >= 100000, "fit-d2 needs --nmax >= 1e5");
    DivisorTable table = divisor_sieve(nmax);
    std::vector<double> xs;
    for (double x = 1e4; x <= double(nmax); x *= 1.5) xs.push_back(x);
    xs.push_back(double(nmax));
    LogPolyFit fit = fit_d2_main_term(xs, table);
    std::printf("fit-d2: d0=%.6f d1=%.6f d2=%.6f d3=%.7f  condition=%.3g\n", fit.coeffs[0],
                fit.coeffs[1], fit.coeffs[2], fit.coeffs[3], fit.condition);
    if (!opt.out.empty()) {
        write_fit_csv(opt.out, {fit});
        write_divisor_csv(fs::path(opt.out).string() + ".samples.csv", xs, table);
    }
    return 0;
}

int cmd_fit_theorem1(const Options& opt) {
    // ladder: T geometric in [1e4, 2e5], G = T^theta
    std::vector<double> Ts = {1e4, 2.114742526881128e4, 4.47213595499958e4,
                              9.457416090031758e4, 2e5};
    std::vector<double> thetas = {0.25, 0.30, 0.35, 0.40};
    std::vector<ExperimentResult> results;
    for (double T : Ts) {
        const double g_max = std::pow(T, thetas.back());
        const double hi = 2.0 * T + g_max;
        ZetaGrid grid = grid_for(opt, T - g_max * std::log(T), hi + g_max * std::log(hi));
        for (double theta : thetas) {
            const double G = std::pow(T, theta);
            ExperimentResult r = meansq_i1_long(T, G, grid, G / 8.0);
            std::printf("  T=%9.0f theta=%.2f G=%8.2f statistic=%.6e normalized=%.4f\n", T,
                        theta, G, r.records[0].statistic, r.records[0].normalized);
            results.push_back(std::move(r));
        }
    }
    LogPolyFit fit = fit_theorem1(results);
    std::printf("fit-theorem1: a0=%.4f a1=%.4f a2=%.4f a3=%.5f  condition=%.3g\n", fit.coeffs[0],
                fit.coeffs[1], fit.coeffs[2], fit.coeffs[3], fit.condition);
    if (!opt.out.empty()) {
        write_experiment_csv(opt.out, results);
        std::vector<LogPolyFit> fits = {fit};
        write_fit_csv(fs::path(opt.out).string() + ".fit.csv", fits);
    }
    return 0;
}

int cmd_report(const Options& opt, const std::vector<std::string>& inputs) {
    require(!inputs.empty(), "report needs at least one experiment CSV");
    std::map<std::string, std::vector<ExperimentResult>> groups;
    for (const auto& in : inputs) {
        std::ifstream f(in);
        if (!f) throw io_error("cannot open: " + in);
        std::string line;
        if (!std::getline(f, line)) throw io_error("empty CSV: " + in);
        while (std::getline(f, line)) {
            if (line.empty()) continue;
            std::istringstream ss(line);
            std::string id, field;
            std::getline(ss, id, ',');
            ExperimentRecord rec;
            double* slots[7] = {&rec.T, &rec.G, &rec.U, &rec.H, &rec.step, &rec.statistic,
                                &rec.normalized};
            for (double* slot : slots) {
                if (!std::getline(ss, field, ',')) throw io_error("short CSV row in " + in);
                *slot = std::strtod(field.c_str(), nullptr);
            }
            ExperimentResult r;
            r.experiment_id = id;
            r.records.push_back(rec);
            groups[id].push_back(std::move(r));
        }
    }
    std::vector<LogPolyFit> fits;
    for (auto& [id, results] : groups) {
        if (id == "meansq-delta") {
            fits.push_back(fit_delta_ladder(results));
        } else if (id == "meansq-i1-long" || id == "meansq-i1-long-explicit") {
            fits.push_back(fit_theorem1(results));
            for (const auto& r : results)
                for (const auto& line : error_budget(r).lines)
                    if (line.flagged)
                        std::printf("  budget flag: T=%g G=%g remainder/main=%.3f\n", line.T,
                                    line.G, line.ratio);
        } else {
            std::printf("  skipping id '%s' (no fit shape defined)\n", id.c_str());
        }
    }
    require(!fits.empty(), "no fittable experiment groups found");
    for (const auto& f : fits)
        std::printf("fit[%s]: c0=%.5f c1=%.5f c2=%.5f c3=%.5f\n", f.regressor.c_str(),
                    f.coeffs[0], f.coeffs[1], f.coeffs[2], f.coeffs[3]);
    if (!opt.out.empty()) write_fit_csv(opt.out, fits);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"desk-scale laboratory for the mean square of zeta on the critical line"};
    app.set_config("--config");

    Options opt;
    std::vector<std::string> report_inputs;
    std::uint64_t max_bytes = 0;

    app.add_option("--T", opt.T, "base ordinate / interval start");
    app.add_option("--G", opt.G, "Gaussian smoothing width");
    app.add_option("--U", opt.U, "shift");
    app.add_option("--H", opt.H, "interval length");
    app.add_option("--dt", opt.dt, "grid step (default 0.01)");
    app.add_option("--step", opt.step, "outer sampling step (0 = rule default)");
    app.add_option("--nmax", opt.nmax, "divisor sieve bound (0 = auto)");
    app.add_option("--accuracy", opt.accuracy, "zeta absolute-error target (default 1e-6)");
    app.add_option("--cache-dir", opt.cache_dir, "grid cache directory (default $ZETALAB_CACHE)");
    app.add_option("--out", opt.out, "output CSV path");
    app.add_option("--workers", opt.workers, "worker threads (0 = hardware)");

    auto* c_sample = app.add_subcommand("sample-zeta", "sample |zeta(1/2+it)|^2 on [T, T+H]");
    auto* c_eterm = app.add_subcommand("e-term", "Atkinson vs direct E(T)");
    auto* c_i1 = app.add_subcommand("i1", "I1(t,G): direct value and explicit difference");
    auto* c_md = app.add_subcommand("meansq-delta", "mean square of Delta(x+U)-Delta(x) on [T,2T]");
    auto* c_mi = app.add_subcommand("meansq-i1", "mean square of I1(t+G,G)-I1(t,G) on [T,2T]");
    auto* c_ms = app.add_subcommand("meansq-i1-short", "J(T;G,H,U) over [T,T+H]");
    auto* c_fd = app.add_subcommand("fit-d2", "fit the d^2(n) summatory main term");
    auto* c_ft = app.add_subcommand("fit-theorem1", "run the (T,G) ladder and fit a_j");
    auto* c_rep = app.add_subcommand("report", "fit coefficient reports from experiment CSVs");
    auto* c_gc = app.add_subcommand("cache-gc", "evict least-recently-used cache grids");
    c_rep->add_option("inputs", report_inputs, "experiment CSV files");
    c_gc->add_option("--max-bytes", max_bytes, "cache size budget")->required();
    for (auto* sc : app.get_subcommands({})) sc->fallthrough();
    app.require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (c_sample->parsed()) return cmd_sample_zeta(opt);
        if (c_eterm->parsed()) return cmd_e_term(opt);
        if (c_i1->parsed()) return cmd_i1(opt);
        if (c_md->parsed()) return cmd_meansq_delta(opt);
        if (c_mi->parsed()) return cmd_meansq_i1(opt);
        if (c_ms->parsed()) return cmd_meansq_i1_short(opt);
        if (c_fd->parsed()) return cmd_fit_d2(opt);
        if (c_ft->parsed()) return cmd_fit_theorem1(opt);
        if (c_rep->parsed()) return cmd_report(opt, report_inputs);
        if (c_gc->parsed()) {
            CacheGcReport rep = cache_gc(resolve_cache(opt), max_bytes);
            std::printf("cache-gc: scanned=%llu evicted=%llu (%llu bytes) skipped_locked=%llu remaining=%llu bytes\n",
                        (unsigned long long)rep.scanned_files, (unsigned long long)rep.evicted_files,
                        (unsigned long long)rep.evicted_bytes, (unsigned long long)rep.skipped_locked,
                        (unsigned long long)rep.remaining_bytes);
            return 0;
        }
    } catch (const rejected_input& e) {
        std::fprintf(stderr, "input rejected: %s\n", e.what());
        return 2;
    } catch (const io_error& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return 3;
    } catch (const fit_degenerate& e) {
        std::fprintf(stderr, "numeric failure: %s\n", e.what());
        return 4;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "numeric failure: %s\n", e.what());
        return 4;
    }
    return 0;
}
