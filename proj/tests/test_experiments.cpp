#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "zetalab/errors.hpp"
#include "zetalab/experiments.hpp"
#include "zetalab/grid_io.hpp"

#include <fstream>
#include <random>

using namespace zetalab;

namespace {

std::filesystem::path test_cache() {
    if (const char* env = std::getenv("ZETALAB_CACHE")) return env;
    return std::filesystem::temp_directory_path() / "zetalab-test-cache";
}

// spans [T - GL, 2T + G + GL] for T = 2e4, G up to T^0.4
const ZetaGrid& grid_long_20k() {
    static const ZetaGrid g = cached_abs2_grid(test_cache(), 19000.0, 41500.0, 0.01, 1e-6);
    return g;
}

const DivisorTable& table_50k() {
    static const DivisorTable t = divisor_sieve(50000);
    return t;
}

} // namespace

TEST_CASE("meansq_delta_diff: zero shift, positivity, step stability") {
    const auto& table = table_50k();
    const double T = 20000.0;

    const auto zero = meansq_delta_diff(T, 0.0, table, 1.0);
    CHECK(zero.records[0].statistic == 0.0);

    const double U = 0.25 * std::sqrt(T);
    const double step = std::max(0.25, U / 8.0);
    const auto a = meansq_delta_diff(T, U, table, step);
    CHECK(a.records[0].statistic >= 0.0);
    const auto b = meansq_delta_diff(T, U, table, step / 2.0);
    CHECK(std::abs(b.records[0].statistic / a.records[0].statistic - 1.0) <= 0.02);

    CHECK_THROWS_AS(meansq_delta_diff(T, 0.6 * std::sqrt(T), table, 1.0), rejected_input);
    CHECK_THROWS_AS(meansq_delta_diff(1e6, 10.0, table, 1.0), rejected_input); // table short
}

TEST_CASE("meansq_i1_long basics and route coherence") {
    const ZetaGrid& g = grid_long_20k();
    const double T = 20000.0;
    const double G = std::pow(T, 0.35);

    const auto direct = meansq_i1_long(T, G, g, G / 8.0);
    CHECK(direct.records[0].statistic >= 0.0);
    CHECK(direct.records[0].normalized > 0.0);

    // deep inside the admissible range the remainder note stays quiet
    const double g_cool = std::pow(T, 0.25);
    CHECK(meansq_i1_long(T, g_cool, g, g_cool / 8.0).budget_notes.empty());

    // explicit-formula route lands on the same statistic
    const auto expl = meansq_i1_long_explicit(T, G, table_50k(), G / 8.0);
    const double ratio = direct.records[0].statistic / expl.records[0].statistic;
    CHECK(ratio >= 0.8);
    CHECK(ratio <= 1.25);

    // the short runner with H=T, U=G must reproduce the long statistic
    const auto short_run = meansq_i1_short(T, T, G, G, g, G / 8.0);
    CHECK(short_run.records[0].statistic ==
          doctest::Approx(direct.records[0].statistic).epsilon(1e-12));

    // widening the window never lowers the un-normalized statistic
    const auto wider = meansq_i1_short(T, 1.05 * T, G, G, g, G / 8.0);
    CHECK(wider.records[0].statistic >= short_run.records[0].statistic);

    CHECK_THROWS_AS(meansq_i1_long(T, G, g, G), rejected_input); // step > G/4
    CHECK_THROWS_AS(meansq_i1_long(T, 0.6 * std::sqrt(T), g, 1.0), rejected_input);

    // at the upper limit G ~ sqrt(T)/2 the remainder orders rival the main
    // term and the runner must say so
    const auto hot = meansq_i1_long(T, 70.0, g, 70.0 / 8.0);
    CHECK_FALSE(hot.budget_notes.empty());
}

TEST_CASE("meansq_i1_short: zero shift and regime notes") {
    const ZetaGrid& g = grid_long_20k();
    const double T = 20000.0, G = std::pow(T, 0.4);

    const auto zero = meansq_i1_short(T, 5000.0, 0.0, G, g, G / 8.0);
    CHECK(zero.records[0].statistic == 0.0);
    CHECK_FALSE(zero.budget_notes.empty()); // U below T^eps is reported

    const auto run = meansq_i1_short(T, 5000.0, 20.0, G, g, G / 8.0);
    CHECK(run.records[0].statistic >= 0.0);
    CHECK(run.records[0].normalized >= 0.0);
}

TEST_CASE("short-interval validator") {
    // the canonical exponent pattern U = T^{1/3}, G = T^{4/9}, H = T^{8/9}
    // satisfies every inequality once T is large enough (2^18 for G <= sqrt T/2)
    const double T = 1e6;
    const auto ok = validate_short_interval(T, std::pow(T, 4.0 / 9.0), std::pow(T, 8.0 / 9.0),
                                            std::pow(T, 1.0 / 3.0));
    CHECK(ok.u_above_min);
    CHECK(ok.u_le_g);
    CHECK(ok.g_in_range);
    CHECK(ok.h_in_range);
    CHECK(ok.hu_large);
    CHECK(ok.ok());

    // at desk scale the same pattern violates G <= sqrt(T)/2
    const double Td = 1e4;
    const auto desk = validate_short_interval(Td, std::pow(Td, 4.0 / 9.0),
                                              std::pow(Td, 8.0 / 9.0), std::pow(Td, 1.0 / 3.0));
    CHECK_FALSE(desk.g_in_range);
    CHECK_FALSE(desk.ok());

    const auto bad = validate_short_interval(T, 100.0, std::pow(T, 8.0 / 9.0), 200.0);
    CHECK_FALSE(bad.u_le_g);
}

TEST_CASE("fit_theorem1 exact-model recovery and preconditions") {
    // synthesize a ladder whose statistic follows T G (a0 + a1 l + a2 l^2 + a3 l^3)
    const Eigen::Vector4d truth(0.8, -0.2, 0.35, 1.4);
    std::vector<ExperimentResult> ladder;
    for (double T : {1e4, 3e4, 1e5, 3e5}) {
        for (double theta : {0.25, 0.32, 0.40}) {
            ExperimentResult r;
            r.experiment_id = "meansq-i1-long";
            ExperimentRecord rec;
            rec.T = T;
            rec.G = std::pow(T, theta);
            const double ell = std::log(std::sqrt(T) / rec.G);
            rec.statistic =
                T * rec.G *
                (truth[0] + ell * (truth[1] + ell * (truth[2] + ell * truth[3])));
            r.records.push_back(rec);
            ladder.push_back(r);
        }
    }
    const LogPolyFit fit = fit_theorem1(ladder);
    for (int j = 0; j < 4; ++j) CHECK(fit.coeffs[j] == doctest::Approx(truth[j]).epsilon(1e-9));

    // too few points
    std::vector<ExperimentResult> few(ladder.begin(), ladder.begin() + 5);
    CHECK_THROWS_AS(fit_theorem1(few), rejected_input);

    // insufficient regressor span
    std::vector<ExperimentResult> narrow;
    for (int i = 0; i < 10; ++i) {
        ExperimentResult r = ladder[0];
        narrow.push_back(r);
    }
    CHECK_THROWS_AS(fit_theorem1(narrow), rejected_input);
}

TEST_CASE("error budget arithmetic") {
    auto result_for = [](double T, double theta) {
        ExperimentResult r;
        ExperimentRecord rec;
        rec.T = T;
        rec.G = std::pow(T, theta);
        rec.statistic = 1.0;
        r.records.push_back(rec);
        return r;
    };

    // G = T^{0.49}: remainder dominates
    const auto hot = error_budget(result_for(1e5, 0.49));
    REQUIRE(hot.lines.size() == 1);
    CHECK(hot.lines[0].ratio > 0.1);
    CHECK(hot.lines[0].flagged);

    // G = T^{0.30}, T = 1e5: plausible asymptotic regime
    const auto cool = error_budget(result_for(1e5, 0.30));
    CHECK(cool.lines[0].ratio < 1.0);

    // ratio grows monotonically in G at fixed T
    double prev = -1.0;
    for (double theta = 0.20; theta <= 0.49 + 1e-9; theta += 0.01) {
        const auto line = error_budget(result_for(1e5, theta)).lines[0];
        CHECK(line.ratio > prev);
        prev = line.ratio;
    }
}

TEST_CASE("delta-fit residuals stay far below the main term") {
    // post-fit residuals on a dense U-ladder at T = 1e6 hold a few-percent
    // band relative to the fitted main term (they oscillate, no monotone
    // trend, so the band is the meaningful desk-scale statement)
    const double T = 1e6;
    const DivisorTable table = divisor_sieve(std::int64_t(2 * T + 600));
    std::vector<ExperimentResult> ladder;
    for (double theta = 0.175; theta <= 0.4 + 1e-9; theta += 0.025) {
        const double U = std::pow(T, theta);
        ladder.push_back(meansq_delta_diff(T, U, table, std::max(0.25, U / 8.0)));
    }
    const LogPolyFit fit = fit_delta_ladder(ladder);
    for (const auto& r : ladder) {
        const auto& rec = r.records[0];
        const double ell = std::log(std::sqrt(T) / rec.U);
        const double main = rec.T * rec.U * fit.eval(ell);
        CHECK(std::abs(rec.statistic - main) <= 0.05 * main);
    }
}

TEST_CASE("reproducibility from a cached grid") {
    const ZetaGrid& g = grid_long_20k();
    const double T = 20000.0, G = std::pow(T, 0.3);
    const auto a = meansq_i1_long(T, G, g, G / 8.0);
    const auto b = meansq_i1_long(T, G, g, G / 8.0);
    CHECK(a.records[0].statistic == b.records[0].statistic);
    CHECK(a.records[0].normalized == b.records[0].normalized);
}

TEST_CASE("experiment and fit CSV emission") {
    namespace fs = std::filesystem;
    ExperimentResult r;
    r.experiment_id = "meansq-delta";
    ExperimentRecord rec;
    rec.T = 1e6;
    rec.U = 63.095734448019364;
    rec.step = 7.886967342467;
    rec.statistic = 2.1913034e9;
    rec.normalized = 1.6463;
    r.records.push_back(rec);

    const fs::path p = fs::temp_directory_path() / "experiments.csv";
    write_experiment_csv(p, {r});
    std::ifstream f(p);
    std::string line;
    REQUIRE(std::getline(f, line));
    CHECK(line == "experiment_id,T,G,U,H,step,statistic,normalized");
    REQUIRE(std::getline(f, line));
    CHECK(line.rfind("meansq-delta,1000000,0,63.095734448019364,0,", 0) == 0);

    LogPolyFit fit;
    fit.coeffs = Eigen::Vector4d(1.0, 2.0, 3.0, 0.25);
    fit.residual_norm = 0.5;
    fit.condition = 123.0;
    fit.regressor = "log x";
    const fs::path pf = fs::temp_directory_path() / "fits.csv";
    write_fit_csv(pf, {fit});
    std::ifstream ff(pf);
    REQUIRE(std::getline(ff, line));
    CHECK(line == "regressor,c0,c1,c2,c3,residual_norm,condition");
    REQUIRE(std::getline(ff, line));
    CHECK(line == "log x,1,2,3,0.25,0.5,123");
    fs::remove(p);
    fs::remove(pf);
}
