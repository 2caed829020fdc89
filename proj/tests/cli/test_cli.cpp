#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "app.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const fs::path kData = CLF_TEST_DATA_DIR;

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "clf");
    std::ostringstream out, err;
    const int code = clf::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / "clf_cli_tests" / name;
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json load(const fs::path& p) { return json::parse(slurp(p)); }

std::vector<std::vector<double>> read_csv(const fs::path& p) {
    std::ifstream in(p);
    std::string line;
    std::getline(in, line);
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

TEST(Extract, SyntheticFixtureGives200Rates) {
    const auto dir = scratch("extract");
    const auto r = invoke({"--out-dir", dir.string(), "extract", (kData / "synthetic_gdp.csv").string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(read_csv(dir / "growth.csv").size(), 200u);
    EXPECT_EQ(read_csv(dir / "growth_raw.csv").size(), 200u);
}

TEST(Extract, GapYearIsInputError) {
    const auto r = invoke({"--out-dir", scratch("gap").string(), "extract", (kData / "gap_gdp.csv").string()});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("non-contiguous years"), std::string::npos);
    EXPECT_NE(r.err.find("line "), std::string::npos);
}

TEST(Extract, ConstantGdpGivesZeroRates) {
    const auto dir = scratch("constant");
    ASSERT_EQ(invoke({"--out-dir", dir.string(), "extract", (kData / "constant_gdp.csv").string()}).code, 0);
    for (const auto& row : read_csv(dir / "growth.csv")) EXPECT_EQ(row[1], 0.0);
}

TEST(Extract, MissingFileIsInputError) {
    EXPECT_EQ(invoke({"extract", (kData / "no_such_file.csv").string()}).code, 2);
}

TEST(Extract, JsonFormat) {
    const auto dir = scratch("extract_json");
    ASSERT_EQ(invoke({"--format", "json", "--out-dir", dir.string(), "extract", (kData / "synthetic_gdp.csv").string()})
                  .code,
              0);
    const json j = load(dir / "growth.json");
    EXPECT_EQ(j["year"].size(), 200u);
    EXPECT_EQ(j["rate"].size(), 200u);
}

TEST(Simulate, GaussianQuadraticIsUnimodal) {
    const auto dir = scratch("sim_ou");
    ASSERT_EQ(invoke({"--out-dir", dir.string(), "simulate", "--beta", "2", "--mu", "2"}).code, 0);
    EXPECT_EQ(load(dir / "modes.json")["count"], 1);
}

TEST(Simulate, QuarticWithLevyNoiseIsBimodal) {
    const auto dir = scratch("sim_quartic");
    ASSERT_EQ(invoke({"--out-dir", dir.string(), "simulate", "--beta", "4", "--mu", "1.5"}).code, 0);
    const json m = load(dir / "modes.json");
    EXPECT_EQ(m["count"], 2);
    EXPECT_TRUE(m["is_bimodal"].get<bool>());
}

TEST(Simulate, SameSeedIsByteIdentical) {
    const std::vector<std::string> flags = {"simulate", "--beta", "3", "--mu", "1.2", "--steps", "200000"};
    const auto a = scratch("det_a"), b = scratch("det_b");
    auto run_in = [&](const fs::path& dir) {
        std::vector<std::string> args = {"--seed", "42", "--out-dir", dir.string()};
        args.insert(args.end(), flags.begin(), flags.end());
        return invoke(args).code;
    };
    ASSERT_EQ(run_in(a), 0);
    ASSERT_EQ(run_in(b), 0);
    for (const char* f : {"trajectory.csv", "density.csv", "modes.json"}) EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;

    const auto c = scratch("det_c");
    ASSERT_EQ(invoke({"--seed", "43", "--out-dir", c.string(), "simulate", "--beta", "3", "--mu", "1.2", "--steps",
                   "200000"})
                  .code,
              0);
    EXPECT_NE(slurp(a / "trajectory.csv"), slurp(c / "trajectory.csv"));
}

TEST(Simulate, InvalidParameterIsInputError) {
    EXPECT_EQ(invoke({"--out-dir", scratch("bad_mu").string(), "simulate", "--mu", "2.5"}).code, 2);
    EXPECT_EQ(invoke({"--out-dir", scratch("bad_alpha").string(), "simulate", "--alpha", "-1"}).code, 2);
}

TEST(Simulate, GnuplotScripts) {
    const auto dir = scratch("gnuplot");
    ASSERT_EQ(invoke({"--gnuplot", "--out-dir", dir.string(), "simulate", "--steps", "20000"}).code, 0);
    EXPECT_TRUE(fs::exists(dir / "density.gp"));
    EXPECT_NE(slurp(dir / "density.gp").find("density.csv"), std::string::npos);
}

TEST(Density, QuarticCauchyIsBimodalAndSymmetric) {
    const auto dir = scratch("density");
    ASSERT_EQ(invoke({"--out-dir", dir.string(), "density", "--beta", "4", "--mu", "1", "--grid-points", "2049"}).code, 0);
    const json m = load(dir / "modes.json");
    ASSERT_EQ(m["count"], 2);
    const double a = m["modes"][0]["location"], b = m["modes"][1]["location"];
    EXPECT_NEAR(a, -b, 1e-9);
}

TEST(Tails, ParetoFixtureRecoversExponent) {
    const auto dir = scratch("tails");
    ASSERT_EQ(invoke({"--out-dir", dir.string(), "tails", (kData / "pareto_growth.csv").string(), "--side", "right"})
                  .code,
              0);
    const json t = load(dir / "tails_right.json");
    EXPECT_NEAR(t["nu_hat"].get<double>(), 1.7, 0.05);
    for (const char* key : {"x_min", "se", "n_tail", "ks_distance", "lr_statistic", "p_value"})
        EXPECT_TRUE(t.contains(key)) << key;
    EXPECT_TRUE(fs::exists(dir / "ccdf_right.csv"));
    EXPECT_FALSE(fs::exists(dir / "tails_left.json"));
}

TEST(Tails, TooFewPointsIsInputError) {
    const auto dir = scratch("tails_short");
    fs::create_directories(dir);
    {
        std::ofstream f(dir / "short.csv");
        f << "year,rate\n";
        for (int i = 0; i < 8; ++i) f << 2000 + i << "," << 0.5 * i + 0.1 << "\n";
    }
    EXPECT_EQ(invoke({"--out-dir", dir.string(), "tails", (dir / "short.csv").string(), "--side", "right"}).code, 2);
}

TEST(Fit, SyntheticFixtureRecoversTruthWithinTwoSe) {
    const auto dir = scratch("fit");
    const auto r = invoke({"--out-dir", dir.string(), "fit", (kData / "synthetic_growth.csv").string(), "--boot", "100"});
    ASSERT_EQ(r.code, 0) << r.err;
    const json f = load(dir / "fit.json");
    // Parameters the fixture generator used.
    const std::vector<std::pair<const char*, double>> truth = {
        {"alpha", 0.5}, {"beta", 2.2}, {"r0", 1.2}, {"mu", 1.5}, {"D", 1.5}};
    for (const auto& [name, value] : truth)
        EXPECT_LE(std::abs(f[name].get<double>() - value), 2.0 * f["se"][name].get<double>()) << name;
    EXPECT_EQ(f["n_points"], 198);
    EXPECT_EQ(f["excluded_years"].size(), 2u);
    EXPECT_NEAR(f["nu_hat"].get<double>(), f["beta"].get<double>() + f["mu"].get<double>() - 2.0, 1e-12);

    const auto force = read_csv(dir / "force.csv");
    ASSERT_EQ(force.size(), 201u);
    for (const auto& row : force) {
        EXPECT_LE(row[2], row[1] + 1e-12);
        EXPECT_GE(row[3], row[1] - 1e-12);
    }
}

TEST(Fit, ExclusionNotSmallerThanSeriesIsInputError) {
    const auto r = invoke({"--out-dir", scratch("fit_k").string(), "fit", (kData / "synthetic_growth.csv").string(),
                        "--exclude", "200", "--boot", "0"});
    EXPECT_EQ(r.code, 2);
}

TEST(Fit, ConstantSeriesIsNumericalFailure) {
    const auto dir = scratch("fit_const");
    fs::create_directories(dir);
    {
        std::ofstream f(dir / "flat.csv");
        f << "year,rate\n";
        for (int i = 0; i < 60; ++i) f << 1900 + i << ",1.5\n";
    }
    EXPECT_EQ(invoke({"--out-dir", dir.string(), "fit", (dir / "flat.csv").string(), "--boot", "0"}).code, 3);
}

TEST(Fit, BootstrapIsByteReproducible) {
    const auto a = scratch("fit_det_a"), b = scratch("fit_det_b");
    for (const auto& dir : {a, b})
        ASSERT_EQ(invoke({"--seed", "9", "--out-dir", dir.string(), "fit", (kData / "synthetic_growth.csv").string(),
                       "--boot", "20", "--starts", "4"})
                      .code,
                  0);
    EXPECT_EQ(slurp(a / "fit.json"), slurp(b / "fit.json"));
    EXPECT_EQ(slurp(a / "force.csv"), slurp(b / "force.csv"));
}

TEST(Config, FileSetsOptionsAndFlagsOverride) {
    const auto dir = scratch("config");
    fs::create_directories(dir);
    {
        std::ofstream f(dir / "run.json");
        f << R"({"seed": 5, "format": "json", "simulate": {"steps": 20000, "beta": 3}})";
    }
    ASSERT_EQ(invoke({"--config", (dir / "run.json").string(), "--format", "csv", "--out-dir", (dir / "out").string(),
                   "simulate"})
                  .code,
              0);
    EXPECT_TRUE(fs::exists(dir / "out" / "density.csv"));
    const json m = load(dir / "out" / "modes.json");
    EXPECT_EQ(m["model"]["beta"], 3.0);
    EXPECT_EQ(m["n_points"], 1800);
}

TEST(Config, MalformedFileIsInputError) {
    const auto dir = scratch("config_bad");
    fs::create_directories(dir);
    std::ofstream(dir / "bad.json") << "{not json";
    EXPECT_EQ(invoke({"--config", (dir / "bad.json").string(), "simulate"}).code, 2);
}

TEST(Reproduce, SyntheticFixtureRunsEveryStage) {
    const auto dir = scratch("reproduce");
    const auto r = invoke({"--out-dir", dir.string(), "reproduce", (kData / "synthetic_gdp.csv").string(), "--boot", "40"});
    ASSERT_EQ(r.code, 0) << r.err;
    const json rep = load(dir / "report.json");
    for (const char* stage : {"extract", "density", "tails", "fit", "consistency"})
        EXPECT_EQ(rep["stages"][stage]["status"], "ok") << stage;
    EXPECT_FALSE(rep["checks"].empty());
    for (const auto& c : rep["checks"]) EXPECT_TRUE(c.contains("pass"));
}

TEST(Reproduce, EmptyFileFailsFirstStageAndSkipsTheRest) {
    const auto dir = scratch("reproduce_empty");
    fs::create_directories(dir);
    std::ofstream(dir / "empty.csv").close();
    const auto r = invoke({"--out-dir", dir.string(), "reproduce", (dir / "empty.csv").string()});
    EXPECT_EQ(r.code, 2);
    const json rep = load(dir / "report.json");
    EXPECT_EQ(rep["stages"]["extract"]["status"], "failed");
    for (const char* stage : {"density", "tails", "fit", "consistency"})
        EXPECT_EQ(rep["stages"][stage]["status"], "skipped") << stage;
}

TEST(Usage, HelpAndErrors) {
    EXPECT_EQ(invoke({"--help"}).code, 0);
    EXPECT_EQ(invoke({}).code, 2);
    EXPECT_EQ(invoke({"frobnicate"}).code, 2);
    EXPECT_EQ(invoke({"--format", "xml", "simulate"}).code, 2);
}
