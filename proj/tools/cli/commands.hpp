#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "output.hpp"

namespace clf::cli {

struct GlobalOptions {
    std::uint64_t seed = 1;
    std::filesystem::path out_dir = ".";
    TableFormat format = TableFormat::csv;
    bool gnuplot = false;
    unsigned threads = 0;
};

struct ModelOptions {
    double alpha = 1.0;
    double beta = 2.0;
    double r0 = 0.0;
    double mu = 2.0;
    double D = 1.0;
};

struct ExtractOptions {
    std::filesystem::path input;
    std::size_t levels = 3;
    std::string threshold = "soft";
};

struct SimulateOptions {
    ModelOptions model;
    double dt = 0.01;
    std::size_t steps = 10000000;
    std::optional<std::size_t> burn_in;
    std::size_t thin = 10;
    std::optional<double> r_init;
    std::size_t grid_points = 1024;
    std::optional<double> bandwidth;
    // KDE smoothing shaves the shallow dip between modes, so sample densities use a lower cut.
    double min_prominence = 0.02;
};

struct DensityOptions {
    ModelOptions model;
    std::size_t grid_points = 4096;
    std::optional<double> half_width;
    double tol = 1e-8;
    double min_prominence = 0.05;
};

struct TailsOptions {
    std::filesystem::path input;
    std::string side = "both";
    double pivot = 1.5;
    std::size_t min_tail = 10;
};

struct FitCmdOptions {
    std::filesystem::path input;
    std::size_t exclude = 2;
    std::size_t boot = 200;
    std::size_t starts = 16;
    bool loo = false;
};

struct ReproduceOptions {
    std::filesystem::path input;
    std::size_t levels = 3;
    double pivot = 1.5;
    std::size_t exclude = 2;
    std::size_t boot = 100;
    std::size_t starts = 16;
    bool loo = false;
};

int cmd_extract(const GlobalOptions& g, const ExtractOptions& o, std::ostream& out);
int cmd_simulate(const GlobalOptions& g, const SimulateOptions& o, std::ostream& out);
int cmd_density(const GlobalOptions& g, const DensityOptions& o, std::ostream& out);
int cmd_tails(const GlobalOptions& g, const TailsOptions& o, std::ostream& out);
int cmd_fit(const GlobalOptions& g, const FitCmdOptions& o, std::ostream& out);
/// Writes report.json even when a stage fails; returns the exit code of the first failure.
int cmd_reproduce(const GlobalOptions& g, const ReproduceOptions& o, std::ostream& out, std::ostream& err);

}  // namespace clf::cli
