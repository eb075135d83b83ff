// gdnc: cooperative network-coding outage simulator and block-code toolbox.
//
// Subcommands:
//   simulate  Monte Carlo FER sweep (CSV + JSON summary)
//   compare   joint sweep of several configs sharing one snr grid
//   mindist   certify the minimum distance of a code
//   design    construct a systematic code (cauchy | random-search)
//   analyze   analytic vs exact outage at a working point
//
// Exit codes: 0 success, 2 usage error, 3 enumeration-budget refusal.

#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "gdnc/experiment.hpp"

namespace {

using namespace gdnc;

std::string out_path(const std::string& prefix, const std::string& suffix) {
    return prefix.empty() ? suffix : prefix + "_" + suffix;
}

int cmd_simulate(const std::string& configPath, const ExperimentFile& flags, bool haveConfig) {
    // Flag-built configs take the same normalization/validation path as
    // file-loaded ones (baseline schemes pin k1/k2, trials checked, ...).
    ExperimentFile exp =
        haveConfig ? ExperimentFile::load(configPath) : ExperimentFile::from_json(flags.to_json());
    const auto t0 = std::chrono::steady_clock::now();
    RunConfig run = exp.resolve();
    FerCurve curve = run_sweep(run);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    const std::string prefix = exp.output.empty() ? exp.scheme : exp.output;
    {
        std::ofstream csv(prefix + ".csv");
        if (!csv) throw UsageError("cannot write " + prefix + ".csv");
        write_fer_csv(csv, curve);
    }
    {
        std::ofstream js(prefix + ".json");
        if (!js) throw UsageError("cannot write " + prefix + ".json");
        js << summary_json(exp, curve, secs).dump(2) << '\n';
    }
    std::cout << "wrote " << prefix << ".csv and " << prefix << ".json ("
              << curve.points.size() << " snr points, " << secs << " s)\n";
    if (!std::isnan(curve.slopeExact))
        std::cout << "diversity slope (exact oracle, top 2 points): " << curve.slopeExact << '\n';
    return 0;
}

int cmd_compare(const std::vector<std::string>& configPaths, const std::string& outPath) {
    std::vector<ExperimentFile> exps;
    std::vector<RunConfig> runs;
    std::vector<std::string> labels;
    for (const auto& p : configPaths) {
        exps.push_back(ExperimentFile::load(p));
        runs.push_back(exps.back().resolve());
        std::string label = exps.back().scheme;
        for (const auto& l : labels)
            if (l == label) label += "_" + std::to_string(labels.size());
        labels.push_back(label);
    }
    const auto curves = compare_schemes(runs);
    std::ofstream csv(outPath);
    if (!csv) throw UsageError("cannot write " + outPath);
    write_compare_csv(csv, labels, curves);
    std::cout << "wrote " << outPath << '\n';
    for (std::size_t i = 0; i < labels.size(); ++i)
        std::cout << labels[i] << ": slope(exact) = " << curves[i].slopeExact << '\n';
    return 0;
}

int cmd_mindist(const std::string& codePath, const std::string& golden) {
    CodeSpec code;
    if (!golden.empty()) {
        if (golden == "dnc") code = golden_dnc();
        else if (golden == "gdnc") code = golden_gdnc();
        else throw UsageError("--golden must be dnc or gdnc");
    } else {
        std::ifstream in(codePath);
        if (!in) throw UsageError("cannot open code file: " + codePath);
        code = read_code(in);
    }
    code.dmin = min_distance_exhaustive(code);
    std::cout << "q = " << code.field->q() << "  k = " << code.k << "  n = " << code.n
              << "  modulus = " << code.field->modulus_encoded() << '\n'
              << "dmin = " << code.dmin->dmin << "  (singleton bound "
              << singleton_bound(code.k, code.n) << ")\n"
              << "mds = " << (is_mds(code) ? "true" : "false") << '\n'
              << "witness =";
    for (auto v : code.dmin->witness) std::cout << ' ' << int(v);
    std::cout << '\n';
    return 0;
}

int cmd_design(int q, int k, int n, const std::string& strategy, std::uint64_t seed, int maxTries,
               const std::string& outPath) {
    auto field = Field::make_order(q);
    CodeSpec code;
    if (strategy == "cauchy") code = design_cauchy(field, k, n);
    else if (strategy == "random-search") code = design_random_search(field, k, n, seed, maxTries);
    else throw UsageError("--strategy must be cauchy or random-search");

    std::cout << "designed " << k << "/" << n << " code over GF(" << q << "): dmin = "
              << code.dmin->dmin << ", mds = " << (is_mds(code) ? "true" : "false") << '\n';
    if (!outPath.empty()) {
        std::ofstream out(outPath);
        if (!out) throw UsageError("cannot write " + outPath);
        write_code(out, code);
        std::cout << "wrote " << outPath << '\n';
    } else {
        write_code(std::cout, code);
    }
    return 0;
}

int cmd_analyze(const std::string& scheme, int M, int k1, int k2, bool reciprocal, double peArg,
                double snrDb, double rate) {
    double p = peArg;
    if (p < 0) {
        const auto ch = ChannelParams::from_db(snrDb, rate);
        p = pe(ch.g);
    } else if (p > 1.0) {
        throw UsageError("--pe must lie in [0, 1]");
    }
    const Scheme s = scheme_from_name(scheme);
    if (s != Scheme::GDNC) {
        k1 = 1;
        k2 = s == Scheme::DNC ? M - 1 : 1;
    }

    std::cout << "scheme = " << scheme << "  M = " << M << "  k1 = " << k1 << "  k2 = " << k2
              << "  reciprocal = " << (reciprocal ? "true" : "false") << "  Pe = " << p << '\n';
    std::cout << "predicted diversity (Theorem): " << M + k2
              << "   singleton-bound diversity: " << gdnc_diversity_bound(M, k2) << '\n';

    double analytic = std::numeric_limits<double>::quiet_NaN();
    try {
        analytic = analytic_outage(s, M, k1, k2, reciprocal, p);
        std::cout << "analytic leading term: " << analytic << '\n';
    } catch (const UsageError& e) {
        std::cout << "analytic leading term: unavailable (" << e.what() << ")\n";
    }

    if (p == 0.0) {
        std::cout << "exact outage: 0\n";
        return 0;
    }
    ExperimentFile exp;
    exp.scheme = scheme;
    exp.M = M;
    exp.k1 = k1;
    exp.k2 = k2;
    exp.reciprocal = reciprocal;
    RunConfig run = exp.resolve();
    run.scheme.channel.g = g_from_pe(p);
    const double exact = exact_outage_enumeration(run.scheme);
    std::cout << "exact outage: " << exact << '\n';
    if (!std::isnan(analytic) && analytic > 0)
        std::cout << "exact/analytic ratio: " << exact / analytic << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"generalized dynamic-network coding outage simulator"};
    app.require_subcommand(1);
    std::cout.precision(10);

    // simulate
    auto* sim = app.add_subcommand("simulate", "Monte Carlo FER sweep");
    std::string simConfig;
    ExperimentFile flags;
    std::vector<double> snrList;
    sim->add_option("--config", simConfig, "experiment config file (JSON)");
    sim->add_option("--scheme", flags.scheme, "df|bnc|dnc|gdnc");
    sim->add_option("--M", flags.M, "number of users");
    sim->add_option("--k1", flags.k1, "broadcast packets per user per round");
    sim->add_option("--k2", flags.k2, "parity packets per user per round");
    sim->add_flag("--reciprocal", flags.reciprocal, "reciprocal inter-user channels");
    sim->add_option("--rate", flags.rate, "per-transmission rate R (bits/channel use)");
    sim->add_option("--snr-db", snrList, "snr grid in dB");
    sim->add_option("--trials", flags.trials, "max trials per snr point");
    sim->add_option("--ci-target", flags.ciTarget, "relative CI half-width early-stop target");
    sim->add_option("--seed", flags.seed, "rng seed");
    sim->add_option("--workers", flags.workers, "worker threads");
    sim->add_option("--out", flags.output, "output path prefix");

    // compare
    auto* cmp = app.add_subcommand("compare", "joint sweep of several configs");
    std::vector<std::string> cmpConfigs;
    std::string cmpOut = "compare.csv";
    cmp->add_option("--config", cmpConfigs, "experiment config files")->required();
    cmp->add_option("--out", cmpOut, "output CSV path");

    // mindist
    auto* md = app.add_subcommand("mindist", "certify minimum distance");
    std::string mdCode, mdGolden;
    md->add_option("--code", mdCode, "code file (text format)");
    md->add_option("--golden", mdGolden, "dnc|gdnc");

    // design
    auto* ds = app.add_subcommand("design", "construct a systematic code");
    int dq = 8, dk = 4, dn = 8, dTries = 1000;
    std::uint64_t dSeed = 0;
    std::string dStrategy = "cauchy", dOut;
    ds->add_option("--q", dq, "field order")->required();
    ds->add_option("--k", dk, "information length")->required();
    ds->add_option("--n", dn, "block length")->required();
    ds->add_option("--strategy", dStrategy, "cauchy|random-search");
    ds->add_option("--seed", dSeed, "search seed");
    ds->add_option("--max-tries", dTries, "search tries");
    ds->add_option("--out", dOut, "output code file");

    // analyze
    auto* an = app.add_subcommand("analyze", "analytic vs exact outage");
    std::string aScheme = "gdnc";
    int aM = 2, aK1 = 2, aK2 = 2;
    bool aRec = false;
    double aPe = -1, aSnrDb = 20, aRate = 0.5;
    an->add_option("--scheme", aScheme, "df|bnc|dnc|gdnc");
    an->add_option("--M", aM, "number of users");
    an->add_option("--k1", aK1, "broadcast packets");
    an->add_option("--k2", aK2, "parity packets");
    an->add_flag("--reciprocal", aRec, "reciprocal inter-user channels");
    an->add_option("--pe", aPe, "per-link outage probability");
    an->add_option("--snr-db", aSnrDb, "snr in dB (used when --pe absent)");
    an->add_option("--rate", aRate, "per-transmission rate R");

    try {
        app.parse(argc, argv);
        if (sim->parsed()) {
            if (!snrList.empty()) flags.snrDb = snrList;
            return cmd_simulate(simConfig, flags, !simConfig.empty());
        }
        if (cmp->parsed()) return cmd_compare(cmpConfigs, cmpOut);
        if (md->parsed()) {
            if (mdCode.empty() && mdGolden.empty())
                throw gdnc::UsageError("mindist needs --code or --golden");
            return cmd_mindist(mdCode, mdGolden);
        }
        if (ds->parsed()) return cmd_design(dq, dk, dn, dStrategy, dSeed, dTries, dOut);
        if (an->parsed()) return cmd_analyze(aScheme, aM, aK1, aK2, aRec, aPe, aSnrDb, aRate);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? 2 : 0;
    } catch (const gdnc::BudgetError& e) {
        std::cerr << "budget refusal: " << e.what() << '\n';
        return 3;
    } catch (const gdnc::UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
