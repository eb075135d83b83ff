#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct CliResult {
    int exitCode = -1;
    std::string output;  // stdout + stderr
};

const fs::path kWorkDir = fs::temp_directory_path() / "gdnc_cli_tests";

CliResult run_cli(const std::string& args) {
    fs::create_directories(kWorkDir);
    const fs::path log = kWorkDir / "out.log";
    const std::string cmd = "cd '" + kWorkDir.string() + "' && '" + GDNC_CLI_PATH + "' " + args +
                            " > '" + log.string() + "' 2>&1";
    const int raw = std::system(cmd.c_str());
    CliResult r;
    r.exitCode = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    std::ifstream in(log);
    std::stringstream ss;
    ss << in.rdbuf();
    r.output = ss.str();
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
}

}  // namespace

TEST_CASE("help exits 0, bad usage exits 2") {
    REQUIRE(run_cli("--help").exitCode == 0);
    REQUIRE(run_cli("simulate --help").exitCode == 0);
    REQUIRE(run_cli("").exitCode == 2);                      // missing subcommand
    REQUIRE(run_cli("frobnicate").exitCode == 2);            // unknown subcommand
    REQUIRE(run_cli("simulate --no-such-flag").exitCode == 2);
    REQUIRE(run_cli("simulate --scheme turbo --trials 10").exitCode == 2);
    REQUIRE(run_cli("mindist").exitCode == 2);               // needs --code or --golden
    REQUIRE(run_cli("simulate --config /no/such/file.json").exitCode == 2);
}

TEST_CASE("mindist certifies the built-in codes") {
    const auto dnc = run_cli("mindist --golden dnc");
    REQUIRE(dnc.exitCode == 0);
    REQUIRE(dnc.output.find("dmin = 3") != std::string::npos);
    REQUIRE(dnc.output.find("mds = true") != std::string::npos);

    const auto gdnc = run_cli("mindist --golden gdnc");
    REQUIRE(gdnc.exitCode == 0);
    REQUIRE(gdnc.output.find("q = 8") != std::string::npos);
    REQUIRE(gdnc.output.find("dmin = 5") != std::string::npos);
    REQUIRE(gdnc.output.find("mds = true") != std::string::npos);

    REQUIRE(run_cli("mindist --golden nope").exitCode == 2);
}

TEST_CASE("design writes a code file that mindist accepts") {
    const auto d = run_cli("design --q 8 --k 4 --n 8 --out designed.code");
    REQUIRE(d.exitCode == 0);
    REQUIRE(d.output.find("dmin = 5") != std::string::npos);
    const auto m = run_cli("mindist --code designed.code");
    REQUIRE(m.exitCode == 0);
    REQUIRE(m.output.find("dmin = 5") != std::string::npos);

    // infeasible cauchy parameters are a usage error
    REQUIRE(run_cli("design --q 4 --k 4 --n 8").exitCode == 2);
    // oversized exhaustive certification is a budget refusal
    REQUIRE(run_cli("design --q 256 --k 5 --n 12").exitCode == 3);
}

TEST_CASE("analyze prints diversity and the exact/analytic ratio") {
    const auto a = run_cli("analyze --scheme gdnc --M 2 --k1 2 --k2 2 --pe 1e-4");
    REQUIRE(a.exitCode == 0);
    REQUIRE(a.output.find("predicted diversity (Theorem): 4") != std::string::npos);
    REQUIRE(a.output.find("exact/analytic ratio") != std::string::npos);

    const auto zero = run_cli("analyze --scheme dnc --pe 0");
    REQUIRE(zero.exitCode == 0);
    REQUIRE(zero.output.find("exact outage: 0") != std::string::npos);

    REQUIRE(run_cli("analyze --scheme gdnc --pe 2.0").exitCode == 2);
}

TEST_CASE("simulate writes csv and json; identical seeds give identical files") {
    const std::string common =
        "simulate --scheme gdnc --M 2 --k1 2 --k2 2 --snr-db 6 --snr-db 10 "
        "--trials 5000 ";
    REQUIRE(run_cli(common + "--seed 7 --out runA").exitCode == 0);
    REQUIRE(run_cli(common + "--seed 7 --out runB").exitCode == 0);
    REQUIRE(run_cli(common + "--seed 7 --workers 4 --out runC").exitCode == 0);

    const std::string a = slurp(kWorkDir / "runA.csv");
    REQUIRE(a.rfind("snr_db,trials,failures,fer,ci_low,ci_high,analytic,exact\n", 0) == 0);
    REQUIRE(a == slurp(kWorkDir / "runB.csv"));
    REQUIRE(a == slurp(kWorkDir / "runC.csv"));

    const std::string js = slurp(kWorkDir / "runA.json");
    REQUIRE(js.find("\"overall_rate\": 0.5") != std::string::npos);

    // a different seed changes the realization
    REQUIRE(run_cli(common + "--seed 8 --out runD").exitCode == 0);
    REQUIRE(a != slurp(kWorkDir / "runD.csv"));
}

TEST_CASE("simulate accepts a json config file") {
    write_file(kWorkDir / "exp.json", R"({
        "scheme": "dnc",
        "snr_db": [4.0, 8.0],
        "trials": 2000,
        "seed": 3,
        "output": "dncrun"
    })");
    const auto r = run_cli("simulate --config exp.json");
    REQUIRE(r.exitCode == 0);
    REQUIRE(fs::exists(kWorkDir / "dncrun.csv"));
    REQUIRE(fs::exists(kWorkDir / "dncrun.json"));

    write_file(kWorkDir / "bad.json", R"({"scheme": "dnc", "bogus": 1})");
    REQUIRE(run_cli("simulate --config bad.json").exitCode == 2);
    write_file(kWorkDir / "notjson.json", "{{{");
    REQUIRE(run_cli("simulate --config notjson.json").exitCode == 2);
}

TEST_CASE("compare joins several configs on one grid") {
    write_file(kWorkDir / "c_df.json",
               R"({"scheme": "df", "snr_db": [4.0, 8.0], "trials": 2000, "seed": 1})");
    write_file(kWorkDir / "c_gdnc.json",
               R"({"scheme": "gdnc", "snr_db": [4.0, 8.0], "trials": 2000, "seed": 1})");
    const auto r = run_cli("compare --config c_df.json --config c_gdnc.json --out cmp.csv");
    REQUIRE(r.exitCode == 0);
    const std::string csv = slurp(kWorkDir / "cmp.csv");
    REQUIRE(csv.rfind("snr_db,fer_df,analytic_df,exact_df,fer_gdnc,analytic_gdnc,exact_gdnc\n",
                      0) == 0);

    write_file(kWorkDir / "c_other.json",
               R"({"scheme": "gdnc", "snr_db": [4.0, 10.0], "trials": 2000, "seed": 1})");
    REQUIRE(run_cli("compare --config c_df.json --config c_other.json --out x.csv").exitCode == 2);
}
