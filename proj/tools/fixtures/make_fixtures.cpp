// Writes the bundled test fixtures into the directory given as argv[1].
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "clf/calibration.hpp"
#include "clf/random.hpp"

namespace fs = std::filesystem;

namespace {

// Parameters of the synthetic economy. Same shape as the US estimates, wider noise.
const clf::ModelParams kFixture{0.5, 2.2, 1.2, 1.5, 1.5};
constexpr std::uint64_t kSeed = 20240601;
constexpr int kFirstYear = 1800;

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

void write_gdp(const fs::path& path, const clf::GrowthSeries& g, double gdp0) {
    std::ofstream out(path);
    out << "year,gdp\n";
    double gdp = gdp0;
    out << g.years.front() - 1 << "," << num(gdp) << "\n";
    for (std::size_t i = 0; i < g.size(); ++i) {
        gdp *= std::exp(g.rates[i] / 100.0);
        out << g.years[i] << "," << num(gdp) << "\n";
    }
}

void write_growth(const fs::path& path, const clf::GrowthSeries& g) {
    std::ofstream out(path);
    out << "year,rate\n";
    for (std::size_t i = 0; i < g.size(); ++i) out << g.years[i] << "," << num(g.rates[i]) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: clf_make_fixtures <dir>\n";
        return 2;
    }
    const fs::path dir = argv[1];
    fs::create_directories(dir);

    clf::Rng rng(kSeed);
    const clf::GrowthSeries growth = clf::simulate_series(kFixture, 200, rng, 1.0, kFirstYear + 1);
    write_growth(dir / "synthetic_growth.csv", growth);
    write_gdp(dir / "synthetic_gdp.csv", growth, 1000.0);

    {
        std::ofstream out(dir / "gap_gdp.csv");
        out << "year,gdp\n";
        for (int y = 1950; y <= 1970; ++y)
            if (y != 1961) out << y << "," << num(1000.0 * std::exp(0.02 * (y - 1950))) << "\n";
    }
    {
        std::ofstream out(dir / "constant_gdp.csv");
        out << "year,gdp\n";
        for (int y = 1900; y <= 1940; ++y) out << y << ",5000\n";
    }
    {
        // Pure Pareto growth rates, nu = 1.7, x_min = 1.
        clf::Rng prng(clf::derive_seed(kSeed, 1));
        std::ofstream out(dir / "pareto_growth.csv");
        out << "year,rate\n";
        for (int i = 0; i < 5000; ++i)
            out << i + 1 << "," << num(std::pow(clf::uniform_open(prng), -1.0 / 1.7)) << "\n";
    }
    std::cout << "fixtures written to " << dir.string() << "\n";
    return 0;
}
