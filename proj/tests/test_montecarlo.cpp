#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "gdnc/montecarlo.hpp"

using namespace gdnc;

namespace {

RunConfig base_run(Scheme scheme, std::vector<double> snrDb) {
    RunConfig run;
    const ChannelParams ch = ChannelParams::from_db(10.0, 0.5);
    switch (scheme) {
        case Scheme::DF: run.scheme = make_df_config(ch); break;
        case Scheme::BNC: run.scheme = make_bnc_config(ch); break;
        case Scheme::DNC: run.scheme = make_dnc_config(ch); break;
        case Scheme::GDNC: {
            SchemeConfig cfg;
            cfg.scheme = Scheme::GDNC;
            cfg.M = 2;
            cfg.k1 = 2;
            cfg.k2 = 2;
            cfg.code = golden_gdnc();
            cfg.channel = ch;
            run.scheme = cfg;
            break;
        }
    }
    if (run.scheme.scheme != Scheme::DF)
        run.scheme.code.dmin = min_distance_erasure(run.scheme.code);
    run.snrDb = std::move(snrDb);
    run.seed = 2024;
    return run;
}

bool same_curve(const FerCurve& a, const FerCurve& b) {
    if (a.points.size() != b.points.size()) return false;
    for (std::size_t i = 0; i < a.points.size(); ++i) {
        const auto &x = a.points[i], &y = b.points[i];
        if (x.trials != y.trials || x.failures != y.failures ||
            x.frameFailures != y.frameFailures)
            return false;
        if (x.fer != y.fer || x.ciLow != y.ciLow || x.ciHigh != y.ciHigh) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("wilson interval sanity") {
    const auto empty = wilson_ci(0, 0);
    REQUIRE(empty.low == 0.0);
    REQUIRE(empty.high == 1.0);

    const auto half = wilson_ci(50, 100);
    REQUIRE(half.low < 0.5);
    REQUIRE(half.high > 0.5);
    REQUIRE_THAT(half.high - half.low, Catch::Matchers::WithinAbs(2 * 1.96 * 0.05, 0.01));

    const auto none = wilson_ci(0, 100);
    REQUIRE(none.low == 0.0);
    REQUIRE(none.high > 0.0);
    const auto all = wilson_ci(100, 100);
    REQUIRE(all.high == 1.0);
    REQUIRE(all.low < 1.0);

    // shrinks with n
    REQUIRE(wilson_ci(500, 1000).high - wilson_ci(500, 1000).low <
            wilson_ci(50, 100).high - wilson_ci(50, 100).low);
}

TEST_CASE("wilson interval coverage (meta test)") {
    // Repeatedly estimate a known p; the 95% interval must cover it
    // in at least 90 of 100 independent runs.
    const double p = 0.3;
    int covered = 0;
    for (int rep = 0; rep < 100; ++rep) {
        RngStream rng = RngStream::derive(555, rep);
        const int N = 2000;
        std::uint64_t hits = 0;
        for (int i = 0; i < N; ++i) hits += rng.next_unit() < p;
        const auto ci = wilson_ci(hits, N);
        covered += (ci.low <= p && p <= ci.high);
    }
    REQUIRE(covered >= 90);
}

TEST_CASE("sweep is deterministic across repeated runs and worker counts") {
    RunConfig run = base_run(Scheme::GDNC, {6.0, 10.0});
    run.maxTrials = 40000;
    run.computeExact = false;

    const FerCurve once = run_sweep(run);
    const FerCurve twice = run_sweep(run);
    REQUIRE(same_curve(once, twice));

    RunConfig par = run;
    par.workers = 4;
    REQUIRE(same_curve(once, run_sweep(par)));

    // and determinism holds with early stopping enabled
    RunConfig stop = run;
    stop.ciRelHalfWidth = 0.2;
    RunConfig stopPar = stop;
    stopPar.workers = 4;
    REQUIRE(same_curve(run_sweep(stop), run_sweep(stopPar)));
}

TEST_CASE("different seeds give different realizations") {
    RunConfig a = base_run(Scheme::GDNC, {0.0});
    a.maxTrials = 20000;
    a.computeExact = false;
    RunConfig b = a;
    b.seed = a.seed + 1;
    REQUIRE(!same_curve(run_sweep(a), run_sweep(b)));
}

TEST_CASE("hopeless channel: every trial fails") {
    RunConfig run = base_run(Scheme::GDNC, {-60.0});  // Pe ~ 1
    run.maxTrials = 200;
    run.computeExact = false;
    const FerCurve c = run_sweep(run);
    REQUIRE(c.points[0].trials == 200);
    REQUIRE(c.points[0].failures == 200);
    REQUIRE(c.points[0].fer == 1.0);
    REQUIRE(c.points[0].frameFailures == 200);
}

TEST_CASE("single trial works") {
    RunConfig run = base_run(Scheme::DF, {-60.0});
    run.maxTrials = 1;
    run.computeExact = false;
    const FerCurve c = run_sweep(run);
    REQUIRE(c.points[0].trials == 1);
    REQUIRE(c.points[0].fer == 1.0);
}

TEST_CASE("early stopping halts at a chunk boundary once the CI is tight") {
    RunConfig run = base_run(Scheme::GDNC, {0.0});  // high fer -> quick convergence
    run.maxTrials = 1000000;
    run.ciRelHalfWidth = 0.1;
    run.chunk = 1000;
    run.computeExact = false;
    const FerCurve c = run_sweep(run);
    REQUIRE(c.points[0].trials < run.maxTrials);
    REQUIRE(c.points[0].trials % run.chunk == 0);
    const auto& pt = c.points[0];
    REQUIRE((pt.ciHigh - pt.ciLow) / 2 <= run.ciRelHalfWidth * pt.fer);
}

TEST_CASE("mc agrees with the exact oracle within 3 sigma for every scheme") {
    for (Scheme s : {Scheme::DF, Scheme::BNC, Scheme::DNC, Scheme::GDNC}) {
        RunConfig run = base_run(s, {6.0});
        run.maxTrials = 200000;
        const FerCurve c = run_sweep(run);
        const auto& pt = c.points[0];
        CAPTURE(scheme_name(s), pt.fer, pt.exact);
        REQUIRE(!std::isnan(pt.exact));
        const double sigma = std::sqrt(pt.exact * (1 - pt.exact) / double(pt.trials));
        REQUIRE_THAT(pt.fer, Catch::Matchers::WithinAbs(pt.exact, 3 * sigma));
        REQUIRE(!std::isnan(pt.analytic));
    }
}

TEST_CASE("fer decreases with snr and analytic/exact columns are filled") {
    RunConfig run = base_run(Scheme::DNC, {0.0, 6.0, 12.0});
    run.maxTrials = 50000;
    const FerCurve c = run_sweep(run);
    REQUIRE(c.points[0].fer > c.points[2].fer);
    for (const auto& pt : c.points) {
        REQUIRE(!std::isnan(pt.exact));
        REQUIRE(pt.ciLow <= pt.fer);
        REQUIRE(pt.fer <= pt.ciHigh);
    }
    REQUIRE(!std::isnan(c.slopeExact));
}

TEST_CASE("sweep validates its inputs") {
    RunConfig run = base_run(Scheme::GDNC, {});
    REQUIRE_THROWS_AS(run_sweep(run), UsageError);
    run = base_run(Scheme::GDNC, {10.0});
    run.maxTrials = 0;
    REQUIRE_THROWS_AS(run_sweep(run), UsageError);
    run = base_run(Scheme::GDNC, {10.0});
    run.workers = 0;
    REQUIRE_THROWS_AS(run_sweep(run), UsageError);
    run = base_run(Scheme::GDNC, {10.0});
    run.scheme.code.dmin.reset();  // uncertified code
    REQUIRE_THROWS_AS(run_sweep(run), UsageError);
}

TEST_CASE("compare requires a shared snr grid") {
    RunConfig a = base_run(Scheme::DF, {0.0, 10.0});
    RunConfig b = base_run(Scheme::DNC, {0.0, 12.0});
    a.maxTrials = b.maxTrials = 10;
    a.computeExact = b.computeExact = false;
    REQUIRE_THROWS_AS(compare_schemes({a, b}), UsageError);
    REQUIRE_THROWS_AS(compare_schemes({}), UsageError);
    b.snrDb = a.snrDb;
    const auto curves = compare_schemes({a, b});
    REQUIRE(curves.size() == 2);
    REQUIRE(curves[0].points.size() == 2);
}
