#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <thread>
#include <vector>

#include "gdnc/analysis.hpp"
#include "gdnc/protocol.hpp"

namespace gdnc {

struct WilsonInterval {
    double low = 0.0, high = 1.0;
};

/// 95% Wilson score interval for a binomial proportion.
inline WilsonInterval wilson_ci(std::uint64_t failures, std::uint64_t trials, double z = 1.959964) {
    if (trials == 0) return {0.0, 1.0};
    const double n = double(trials);
    const double phat = double(failures) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (phat + z2 / (2 * n)) / denom;
    const double half = z / denom * std::sqrt(phat * (1 - phat) / n + z2 / (4 * n * n));
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

struct RunConfig {
    SchemeConfig scheme;            // channel field is overridden per snr point
    std::vector<double> snrDb;
    std::uint64_t maxTrials = 100000;
    double ciRelHalfWidth = 0.0;    // early-stop target; 0 disables
    std::uint64_t seed = 0;
    int workers = 1;
    std::uint64_t chunk = 16384;    // early-stop decisions at fixed boundaries
    bool computeExact = true;
    std::uint64_t exactBudget = kDefaultOutageBudget;
};

struct FerPoint {
    double snrDb = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t failures = 0;       // target message I_1(1) not recovered
    std::uint64_t frameFailures = 0;  // any of user 1's k1 packets lost
    double fer = 0.0;
    double ciLow = 0.0;
    double ciHigh = 1.0;
    double analytic = std::numeric_limits<double>::quiet_NaN();
    double exact = std::numeric_limits<double>::quiet_NaN();
};

struct FerCurve {
    std::vector<FerPoint> points;
    double slopeExact = std::numeric_limits<double>::quiet_NaN();  // top two points, oracle
    double slopeMc = std::numeric_limits<double>::quiet_NaN();     // simulated, where fer > 0
};

namespace detail {

struct TrialCounts {
    std::uint64_t failures = 0;
    std::uint64_t frameFailures = 0;
};

/// Runs trials [begin, end) of one snr point. Per-trial rng streams are
/// derived from (seed, snr index, trial index), so the outcome of a trial
/// does not depend on scheduling.
inline TrialCounts run_trials(const SchemeConfig& cfg, std::uint64_t seed, std::size_t snrIdx,
                              std::uint64_t begin, std::uint64_t end) {
    TrialCounts counts;
    const int k1 = cfg.k1;
    for (std::uint64_t t = begin; t < end; ++t) {
        RngStream rng = RngStream::derive(seed, snrIdx, t);
        const RoundRealization rr = run_round(cfg, rng);
        if (!rr.recovered[0]) ++counts.failures;
        bool frameLost = false;
        for (int i = 0; i < k1 && !frameLost; ++i) frameLost = !rr.recovered[i];
        if (frameLost) ++counts.frameFailures;
    }
    return counts;
}

}  // namespace detail

/// Monte Carlo FER sweep. Deterministic for a given (config, seed)
/// independently of the worker count: per-trial streams are counter
/// based, chunks end at fixed trial indices, and partial counts merge by
/// integer addition.
inline FerCurve run_sweep(const RunConfig& run) {
    if (run.snrDb.empty()) throw UsageError("snr grid must be nonempty");
    if (run.maxTrials < 1) throw UsageError("trials must be >= 1");
    if (run.workers < 1) throw UsageError("workers must be >= 1");
    if (run.scheme.scheme != Scheme::DF && !run.scheme.code.dmin)
        throw UsageError("code must be certified before simulation");

    FerCurve curve;
    for (std::size_t s = 0; s < run.snrDb.size(); ++s) {
        SchemeConfig cfg = run.scheme;
        cfg.channel = ChannelParams::from_db(run.snrDb[s], run.scheme.channel.rate);
        cfg.validate();

        FerPoint pt;
        pt.snrDb = run.snrDb[s];
        std::uint64_t done = 0;
        while (done < run.maxTrials) {
            const std::uint64_t end = std::min(run.maxTrials, done + run.chunk);
            const std::uint64_t span = end - done;
            const int W = int(std::min<std::uint64_t>(run.workers, span));
            std::vector<detail::TrialCounts> parts(W);
            std::vector<std::thread> threads;
            for (int w = 0; w < W; ++w) {
                const std::uint64_t b = done + span * w / W;
                const std::uint64_t e = done + span * (w + 1) / W;
                threads.emplace_back([&, w, b, e] {
                    parts[w] = detail::run_trials(cfg, run.seed, s, b, e);
                });
            }
            for (auto& th : threads) th.join();
            for (const auto& p : parts) {
                pt.failures += p.failures;
                pt.frameFailures += p.frameFailures;
            }
            done = end;

            if (run.ciRelHalfWidth > 0 && pt.failures >= 16) {
                const auto ci = wilson_ci(pt.failures, done);
                const double fer = double(pt.failures) / double(done);
                if ((ci.high - ci.low) / 2 <= run.ciRelHalfWidth * fer) break;
            }
        }
        pt.trials = done;
        pt.fer = double(pt.failures) / double(done);
        const auto ci = wilson_ci(pt.failures, done);
        pt.ciLow = ci.low;
        pt.ciHigh = ci.high;

        try {
            pt.analytic = analytic_outage(cfg.scheme, cfg.M, cfg.k1, cfg.k2, cfg.reciprocal,
                                          pe(cfg.channel.g));
        } catch (const UsageError&) {
        }
        if (run.computeExact) {
            try {
                pt.exact = exact_outage_enumeration(cfg, run.exactBudget);
            } catch (const BudgetError&) {
            }
        }
        curve.points.push_back(pt);
    }

    const std::size_t np = curve.points.size();
    if (np >= 2) {
        const auto& a = curve.points[np - 2];
        const auto& b = curve.points[np - 1];
        auto lin = [](double db) { return std::pow(10.0, db / 10.0); };
        if (!std::isnan(a.exact) && !std::isnan(b.exact) && a.exact > 0 && b.exact > 0)
            curve.slopeExact = diversity_slope({{lin(a.snrDb), a.exact}, {lin(b.snrDb), b.exact}});
        if (a.fer > 0 && b.fer > 0)
            curve.slopeMc = diversity_slope({{lin(a.snrDb), a.fer}, {lin(b.snrDb), b.fer}});
    }
    return curve;
}

/// Joint sweep over several configurations sharing one snr grid.
inline std::vector<FerCurve> compare_schemes(const std::vector<RunConfig>& runs) {
    if (runs.empty()) throw UsageError("compare needs at least one configuration");
    for (const auto& r : runs)
        if (r.snrDb != runs.front().snrDb)
            throw UsageError("compare requires all configurations to share the snr grid");
    std::vector<FerCurve> out;
    for (const auto& r : runs) out.push_back(run_sweep(r));
    return out;
}

}  // namespace gdnc
