#pragma once

#include <fstream>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gdnc/montecarlo.hpp"

namespace gdnc {

using json = nlohmann::json;

namespace detail {

inline void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                                const std::string& where) {
    for (const auto& item : obj.items()) {
        if (!allowed.count(item.key()))
            throw UsageError("unknown key '" + item.key() + "' in " + where);
    }
}

inline std::vector<double> parse_snr_grid(const json& j) {
    std::vector<double> grid;
    if (j.is_array()) {
        for (const auto& v : j) grid.push_back(v.get<double>());
    } else if (j.is_object()) {
        reject_unknown_keys(j, {"min", "max", "step"}, "snr_db");
        const double lo = j.at("min").get<double>();
        const double hi = j.at("max").get<double>();
        const double step = j.at("step").get<double>();
        if (step <= 0) throw UsageError("snr_db.step must be > 0");
        for (double s = lo; s <= hi + 1e-9; s += step) grid.push_back(s);
    } else {
        throw UsageError("snr_db must be a list or {min, max, step}");
    }
    if (grid.empty()) throw UsageError("snr grid must be nonempty");
    return grid;
}

}  // namespace detail

/// Structured experiment configuration, mirroring RunConfig/SchemeConfig.
/// Unknown keys are rejected; defaults are documented in the README.
struct ExperimentFile {
    std::string scheme = "gdnc";
    int M = 2, k1 = 2, k2 = 2;
    bool reciprocal = false;
    double rate = 0.5;
    // code source
    std::string codeSource = "default";  // default | golden | file | design
    std::string goldenName;              // dnc | gdnc
    std::string codePath;
    std::string designStrategy = "cauchy";
    std::uint64_t designSeed = 0;
    int designMaxTries = 1000;
    // optional explicit field for design
    int fieldP = 0, fieldM = 0;
    std::optional<std::vector<int>> fieldModulus;
    // run parameters
    std::vector<double> snrDb = {10.0};
    std::uint64_t trials = 100000;
    double ciTarget = 0.0;
    std::uint64_t seed = 0;
    int workers = 1;
    std::string output;

    static ExperimentFile from_json(const json& j) {
        detail::reject_unknown_keys(j,
                                    {"scheme", "M", "k1", "k2", "reciprocal", "rate", "field",
                                     "code", "snr_db", "trials", "ci_target", "seed", "workers",
                                     "output"},
                                    "experiment config");
        ExperimentFile e;
        if (j.contains("scheme")) e.scheme = j.at("scheme").get<std::string>();
        scheme_from_name(e.scheme);  // validates
        if (j.contains("M")) e.M = j.at("M").get<int>();
        if (j.contains("k1")) e.k1 = j.at("k1").get<int>();
        if (j.contains("k2")) e.k2 = j.at("k2").get<int>();
        if (e.scheme != "gdnc") {
            // baselines fix their own layout
            e.k1 = 1;
            e.k2 = e.scheme == "dnc" ? e.M - 1 : 1;
        }
        if (j.contains("reciprocal")) e.reciprocal = j.at("reciprocal").get<bool>();
        if (j.contains("rate")) e.rate = j.at("rate").get<double>();
        if (j.contains("field")) {
            const auto& f = j.at("field");
            detail::reject_unknown_keys(f, {"p", "m", "modulus"}, "field");
            e.fieldP = f.at("p").get<int>();
            e.fieldM = f.at("m").get<int>();
            if (f.contains("modulus")) e.fieldModulus = f.at("modulus").get<std::vector<int>>();
        }
        if (j.contains("code")) {
            const auto& c = j.at("code");
            detail::reject_unknown_keys(c, {"source", "name", "path", "strategy", "seed", "max_tries"},
                                        "code");
            e.codeSource = c.at("source").get<std::string>();
            if (e.codeSource == "golden") e.goldenName = c.at("name").get<std::string>();
            else if (e.codeSource == "file") e.codePath = c.at("path").get<std::string>();
            else if (e.codeSource == "design") {
                if (c.contains("strategy")) e.designStrategy = c.at("strategy").get<std::string>();
                if (c.contains("seed")) e.designSeed = c.at("seed").get<std::uint64_t>();
                if (c.contains("max_tries")) e.designMaxTries = c.at("max_tries").get<int>();
            } else {
                throw UsageError("code.source must be golden|file|design");
            }
        }
        if (j.contains("snr_db")) e.snrDb = detail::parse_snr_grid(j.at("snr_db"));
        if (j.contains("trials")) e.trials = j.at("trials").get<std::uint64_t>();
        if (e.trials < 1) throw UsageError("trials must be >= 1");
        if (j.contains("ci_target")) e.ciTarget = j.at("ci_target").get<double>();
        if (j.contains("seed")) e.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("workers")) e.workers = j.at("workers").get<int>();
        if (j.contains("output")) e.output = j.at("output").get<std::string>();
        return e;
    }

    static ExperimentFile load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw UsageError("cannot open config file: " + path);
        json j;
        try {
            in >> j;
        } catch (const json::exception& ex) {
            throw UsageError("config parse error in " + path + ": " + ex.what());
        }
        return from_json(j);
    }

    json to_json() const {
        json j;
        j["scheme"] = scheme;
        j["M"] = M;
        j["k1"] = k1;
        j["k2"] = k2;
        j["reciprocal"] = reciprocal;
        j["rate"] = rate;
        if (fieldP) {
            j["field"] = {{"p", fieldP}, {"m", fieldM}};
            if (fieldModulus) j["field"]["modulus"] = *fieldModulus;
        }
        json c;
        if (codeSource == "golden") c = {{"source", "golden"}, {"name", goldenName}};
        else if (codeSource == "file") c = {{"source", "file"}, {"path", codePath}};
        else if (codeSource == "design")
            c = {{"source", "design"},
                 {"strategy", designStrategy},
                 {"seed", designSeed},
                 {"max_tries", designMaxTries}};
        if (!c.is_null()) j["code"] = c;
        j["snr_db"] = snrDb;
        j["trials"] = trials;
        if (ciTarget > 0) j["ci_target"] = ciTarget;
        j["seed"] = seed;
        j["workers"] = workers;
        if (!output.empty()) j["output"] = output;
        return j;
    }

    std::shared_ptr<const Field> resolve_field() const {
        if (fieldP) return Field::make(fieldP, fieldM, fieldModulus);
        // default: smallest GF(2^m) whose order covers the block length
        const int n = (k1 + k2) * M;
        int m = 1;
        while ((1 << m) < n && m < 8) ++m;
        return Field::make(2, m);
    }

    CodeSpec resolve_code() const {
        const Scheme s = scheme_from_name(scheme);
        if (s == Scheme::DF) return CodeSpec{};
        if (codeSource == "golden" || (codeSource == "default" && s == Scheme::DNC && M == 2))
            {
                if (codeSource == "golden" && goldenName == "dnc") return golden_dnc();
                if (codeSource == "golden" && goldenName == "gdnc") return golden_gdnc();
                if (codeSource == "golden")
                    throw UsageError("unknown golden code '" + goldenName + "' (dnc|gdnc)");
                return golden_dnc();
            }
        if (codeSource == "file") {
            std::ifstream in(codePath);
            if (!in) throw UsageError("cannot open code file: " + codePath);
            return read_code(in);
        }
        if (codeSource == "default") {
            if (s == Scheme::BNC)
                return make_code(Field::make(2, 1), 2, 4, {{1, 0, 1, 1}, {0, 1, 1, 1}});
            if (s == Scheme::GDNC && M == 2 && k1 == 2 && k2 == 2) return golden_gdnc();
            return design_cauchy(resolve_field(), k1 * M, (k1 + k2) * M);
        }
        if (codeSource == "design") {
            const int k = k1 * M, n = (k1 + k2) * M;
            if (designStrategy == "cauchy") return design_cauchy(resolve_field(), k, n);
            if (designStrategy == "random-search")
                return design_random_search(resolve_field(), k, n, designSeed, designMaxTries);
            throw UsageError("code.strategy must be cauchy|random-search");
        }
        throw UsageError("code.source must be golden|file|design");
    }

    RunConfig resolve() const {
        RunConfig run;
        run.scheme.scheme = scheme_from_name(scheme);
        run.scheme.M = M;
        run.scheme.k1 = k1;
        run.scheme.k2 = k2;
        run.scheme.reciprocal = reciprocal;
        run.scheme.channel = ChannelParams::from_db(snrDb.front(), rate);
        run.scheme.code = resolve_code();
        if (run.scheme.scheme != Scheme::DF && !run.scheme.code.dmin)
            run.scheme.code.dmin = min_distance_exhaustive(run.scheme.code);
        run.snrDb = snrDb;
        run.maxTrials = trials;
        run.ciRelHalfWidth = ciTarget;
        run.seed = seed;
        run.workers = workers;
        run.scheme.validate();
        return run;
    }
};

/// CSV emission with the pinned column set.
inline void write_fer_csv(std::ostream& os, const FerCurve& curve) {
    os << "snr_db,trials,failures,fer,ci_low,ci_high,analytic,exact\n";
    os.precision(17);
    for (const auto& p : curve.points) {
        os << p.snrDb << ',' << p.trials << ',' << p.failures << ',' << p.fer << ',' << p.ciLow
           << ',' << p.ciHigh << ',' << p.analytic << ',' << p.exact << '\n';
    }
}

struct CsvRow {
    double snrDb, fer, ciLow, ciHigh, analytic, exact;
    std::uint64_t trials, failures;
};

inline std::vector<CsvRow> read_fer_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != "snr_db,trials,failures,fer,ci_low,ci_high,analytic,exact")
        throw UsageError("unexpected CSV header");
    std::vector<CsvRow> rows;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (cells.size() != 8) throw UsageError("bad CSV row: " + line);
        try {
            CsvRow r{};
            r.snrDb = std::stod(cells[0]);
            r.trials = std::stoull(cells[1]);
            r.failures = std::stoull(cells[2]);
            r.fer = std::stod(cells[3]);
            r.ciLow = std::stod(cells[4]);
            r.ciHigh = std::stod(cells[5]);
            r.analytic = std::stod(cells[6]);
            r.exact = std::stod(cells[7]);
            rows.push_back(r);
        } catch (const std::exception&) {
            throw UsageError("bad CSV row: " + line);
        }
    }
    return rows;
}

inline void write_compare_csv(std::ostream& os, const std::vector<std::string>& labels,
                              const std::vector<FerCurve>& curves) {
    os << "snr_db";
    for (const auto& l : labels) os << ",fer_" << l << ",analytic_" << l << ",exact_" << l;
    os << '\n';
    os.precision(17);
    for (std::size_t i = 0; i < curves.front().points.size(); ++i) {
        os << curves.front().points[i].snrDb;
        for (const auto& c : curves)
            os << ',' << c.points[i].fer << ',' << c.points[i].analytic << ',' << c.points[i].exact;
        os << '\n';
    }
}

inline json summary_json(const ExperimentFile& exp, const FerCurve& curve, double runtimeSeconds) {
    json j;
    j["config"] = exp.to_json();
    j["overall_rate"] = double(exp.k1) / (exp.k1 + exp.k2);
    j["diversity_slope_exact"] = curve.slopeExact;
    j["diversity_slope_mc"] = curve.slopeMc;
    j["runtime_seconds"] = runtimeSeconds;
    json pts = json::array();
    for (const auto& p : curve.points) {
        pts.push_back({{"snr_db", p.snrDb},
                       {"trials", p.trials},
                       {"failures", p.failures},
                       {"fer", p.fer},
                       {"frame_fer", double(p.frameFailures) / double(p.trials)}});
    }
    j["points"] = pts;
    return j;
}

}  // namespace gdnc
