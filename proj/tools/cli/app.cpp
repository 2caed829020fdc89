#include "app.hpp"

#include <algorithm>
#include <exception>
#include <memory>
#include <ostream>

#include <CLI11.hpp>

#include "clf/error.hpp"
#include "commands.hpp"
#include "json_config.hpp"

namespace clf::cli {
namespace {

void add_model_flags(CLI::App* cmd, ModelOptions& m) {
    cmd->add_option("--alpha", m.alpha, "restoring strength")->capture_default_str();
    cmd->add_option("--beta", m.beta, "potential exponent")->capture_default_str();
    cmd->add_option("--r0", m.r0, "potential center")->capture_default_str();
    cmd->add_option("--mu", m.mu, "stable index in (0, 2]")->capture_default_str();
    cmd->add_option("--D", m.D, "noise scale")->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Confined Levy flight model of growth rate fluctuations", "clf"};
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();

    GlobalOptions g;
    std::string format = "csv";
    app.add_option("--seed", g.seed, "random seed; fixes every stochastic output")->capture_default_str();
    app.add_option("--out-dir", g.out_dir, "directory for output files")->capture_default_str();
    app.add_option("--format", format, "table format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    app.add_option("--threads", g.threads, "worker threads (0 = hardware concurrency)");
    app.add_flag("--gnuplot", g.gnuplot, "also write gnuplot scripts");
    app.config_formatter(std::make_shared<JsonConfig>());
    app.set_config("--config", "", "JSON config file; command-line flags take precedence");

    ExtractOptions ex;
    auto* extract = app.add_subcommand("extract", "GDP csv -> smoothed annual growth rates");
    extract->add_option("input", ex.input, "csv with year,value rows")->required()->check(CLI::ExistingFile);
    extract->add_option("--levels", ex.levels, "wavelet levels");
    extract->add_option("--threshold", ex.threshold, "soft or hard")->check(CLI::IsMember({"soft", "hard"}));

    SimulateOptions sim;
    auto* simulate = app.add_subcommand("simulate", "simulate the SDE and estimate its density");
    add_model_flags(simulate, sim.model);
    simulate->add_option("--dt", sim.dt, "time step");
    simulate->add_option("--steps", sim.steps, "number of steps");
    simulate->add_option("--burn-in", sim.burn_in, "discarded steps (default 10% of steps)");
    simulate->add_option("--thin", sim.thin, "keep every n-th point");
    simulate->add_option("--r-init", sim.r_init, "initial rate (default r0)");
    simulate->add_option("--grid-points", sim.grid_points, "KDE grid size");
    simulate->add_option("--bandwidth", sim.bandwidth, "KDE bandwidth (default Silverman)");
    simulate->add_option("--min-prominence", sim.min_prominence, "relative mode prominence");

    DensityOptions den;
    auto* density = app.add_subcommand("density", "stationary density of the fractional Fokker-Planck equation");
    add_model_flags(density, den.model);
    density->add_option("--grid-points", den.grid_points, "output grid size");
    density->add_option("--half-width", den.half_width, "grid half-width around r0");
    density->add_option("--tol", den.tol, "convergence tolerance");
    density->add_option("--min-prominence", den.min_prominence, "relative mode prominence");

    TailsOptions ta;
    auto* tails = app.add_subcommand("tails", "power-law tail fits of a growth series");
    tails->add_option("input", ta.input, "growth csv (year,rate)")->required()->check(CLI::ExistingFile);
    tails->add_option("--side", ta.side, "left, right or both")->check(CLI::IsMember({"left", "right", "both"}));
    tails->add_option("--pivot", ta.pivot, "left tail pivot: x = pivot - r");
    tails->add_option("--min-tail", ta.min_tail, "minimum points above x_min");

    FitCmdOptions fi;
    auto* fit = app.add_subcommand("fit", "maximum likelihood calibration with bootstrap errors");
    fit->add_option("input", fi.input, "growth csv (year,rate)")->required()->check(CLI::ExistingFile);
    fit->add_option("--exclude", fi.exclude, "drop the k largest |r| before fitting");
    fit->add_option("--boot", fi.boot, "bootstrap replicates (0 skips errors)");
    fit->add_option("--starts", fi.starts, "optimizer starts");
    fit->add_flag("--loo", fi.loo, "leave-one-out stability report");

    ReproduceOptions re;
    auto* reproduce = app.add_subcommand("reproduce", "full pipeline from a GDP csv to report.json");
    reproduce->add_option("input", re.input, "csv with year,value rows")->required();
    reproduce->add_option("--levels", re.levels, "wavelet levels");
    reproduce->add_option("--pivot", re.pivot, "left tail pivot");
    reproduce->add_option("--exclude", re.exclude, "drop the k largest |r| before fitting");
    reproduce->add_option("--boot", re.boot, "bootstrap replicates (0 skips errors)");
    reproduce->add_option("--starts", re.starts, "optimizer starts");
    reproduce->add_flag("--loo", re.loo, "leave-one-out stability report");

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    std::vector<std::string> rest(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
    std::reverse(rest.begin(), rest.end());  // CLI11 parses a reversed vector
    try {
        app.parse(rest);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    g.format = format == "json" ? TableFormat::json : TableFormat::csv;

    try {
        if (*extract) return cmd_extract(g, ex, out);
        if (*simulate) return cmd_simulate(g, sim, out);
        if (*density) return cmd_density(g, den, out);
        if (*tails) return cmd_tails(g, ta, out);
        if (*fit) return cmd_fit(g, fi, out);
        if (*reproduce) return cmd_reproduce(g, re, out, err);
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}

}  // namespace clf::cli
