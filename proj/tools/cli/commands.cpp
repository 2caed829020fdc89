#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <ostream>

#include "clf/calibration.hpp"
#include "clf/error.hpp"
#include "clf/growth.hpp"
#include "clf/stationary.hpp"
#include "clf/stats.hpp"
#include "clf/tails.hpp"

namespace clf::cli {
namespace {

using nlohmann::json;

ThresholdMode parse_threshold(const std::string& s) {
    if (s == "soft") return ThresholdMode::soft;
    if (s == "hard") return ThresholdMode::hard;
    throw InvalidArgument("threshold must be 'soft' or 'hard'");
}

void prepare(const GlobalOptions& g) {
    std::error_code ec;
    std::filesystem::create_directories(g.out_dir, ec);
    if (ec) throw InvalidArgument("cannot create output directory " + g.out_dir.string() + ": " + ec.message());
}

std::vector<double> as_doubles(const std::vector<int>& v) { return {v.begin(), v.end()}; }

std::vector<Column> growth_columns(const GrowthSeries& s) {
    return {{"year", as_doubles(s.years), true}, {"rate", s.rates, false}};
}

std::vector<Column> density_columns(const DensityGrid& d, const std::string& x_name = "x") {
    std::vector<double> x(d.spec().n_points);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = d.spec().x(i);
    return {{x_name, x, false}, {"density", d.values(), false}};
}

json modes_json(const ModeReport& m) {
    json modes = json::array();
    for (std::size_t i = 0; i < m.count(); ++i) modes.push_back({{"location", m.locations[i]}, {"density", m.densities[i]}});
    return {{"count", m.count()}, {"is_bimodal", m.is_bimodal}, {"modes", modes}};
}

json model_json(const ModelParams& p) {
    return {{"alpha", p.alpha}, {"beta", p.beta}, {"r0", p.r0}, {"mu", p.mu}, {"D", p.D}};
}

ModelParams to_params(const ModelOptions& m) {
    ModelParams p{m.alpha, m.beta, m.r0, m.mu, m.D};
    p.validate();
    return p;
}

struct TailReport {
    TailFitResult fit;
    LrTestResult lr;
    std::vector<double> samples;
};

TailReport analyze_tail(const GrowthSeries& g, const std::string& side, double pivot, std::size_t min_tail) {
    TailReport r;
    r.samples = side == "left" ? left_tail_transform(g, pivot) : right_tail_values(g.rates);
    XminOptions xo;
    xo.min_tail = min_tail;
    r.fit = fit_power_law(r.samples, select_xmin(r.samples, xo));
    r.lr = lr_test_pl_vs_se(r.samples, r.fit.x_min);
    return r;
}

json tail_json(const std::string& side, const TailReport& r) {
    return {{"side", side},
            {"x_min", r.fit.x_min},
            {"nu_hat", r.fit.nu_hat},
            {"se", r.fit.se},
            {"n_tail", r.fit.n_tail},
            {"ks_distance", r.fit.ks_distance},
            {"lr_statistic", r.lr.statistic},
            {"p_value", r.lr.p_value}};
}

json calibration_json(const CalibrationResult& c, std::size_t failures) {
    return {{"alpha", c.params.alpha},
            {"beta", c.params.beta},
            {"r0", c.params.r0},
            {"mu", c.params.mu},
            {"D", c.params.D},
            {"log_lik", c.log_lik},
            {"se", {{"alpha", c.se.alpha}, {"beta", c.se.beta}, {"r0", c.se.r0}, {"mu", c.se.mu}, {"D", c.se.D}}},
            {"nu_hat", c.nu_hat},
            {"n_boot", c.n_boot},
            {"bootstrap_failures", failures},
            {"excluded_years", c.excluded_years},
            {"n_points", c.n_points}};
}

json loo_json(const LooReport& r) {
    json entries = json::array();
    for (const auto& e : r.entries)
        entries.push_back({{"year", e.year},
                           {"flagged", e.flagged},
                           {"shift",
                            {{"alpha", e.shift.alpha}, {"beta", e.shift.beta}, {"r0", e.shift.r0}, {"mu", e.shift.mu},
                             {"D", e.shift.D}}}});
    return {{"flagged_years", r.flagged_years},
            {"max_shift",
             {{"alpha", r.max_shift.alpha}, {"beta", r.max_shift.beta}, {"r0", r.max_shift.r0}, {"mu", r.max_shift.mu},
              {"D", r.max_shift.D}}},
            {"entries", entries}};
}

struct FitOutcome {
    CalibrationResult result;
    std::vector<ModelParams> replicates;
    std::size_t failures = 0;
};

FitOutcome run_fit(const GrowthSeries& growth, std::size_t exclude, std::size_t boot, std::size_t starts,
                   const GlobalOptions& g) {
    const Exclusion ex = exclude_extremes(growth, exclude);
    FitOptions fo;
    fo.n_starts = starts;
    fo.threads = g.threads;
    FitOutcome out;
    out.result = fit_mle(ex.kept, fo);
    out.result.excluded_years = ex.excluded_years;
    if (boot > 0) {
        BootstrapOptions bo;
        bo.n_boot = boot;
        bo.threads = g.threads;
        const auto b = bootstrap_errors(ex.kept, out.result.params, g.seed, bo);
        out.result.se = b.se;
        out.result.n_boot = boot;
        out.replicates = b.replicates;
        out.failures = b.n_failed;
    }
    return out;
}

void write_force(const GlobalOptions& g, const FitOutcome& f, const GrowthSeries& data) {
    const auto [lo, hi] = std::minmax_element(data.rates.begin(), data.rates.end());
    const auto band = force_band(f.result.params, f.replicates, *lo, *hi, 201);
    write_table(g.out_dir, "force",
                {{"r", band.r}, {"force", band.force}, {"force_lo", band.lo}, {"force_hi", band.hi}}, g.format);
}

GridSpec sample_grid(const std::vector<double>& x, double bandwidth, std::size_t points) {
    std::vector<double> sorted = x;
    std::sort(sorted.begin(), sorted.end());
    const double lo = stats::quantile_sorted(sorted, 0.001) - 3.0 * bandwidth;
    const double hi = stats::quantile_sorted(sorted, 0.999) + 3.0 * bandwidth;
    return {lo, hi, points};
}

bool gnuplot_enabled(const GlobalOptions& g, std::ostream& out) {
    if (!g.gnuplot) return false;
    if (g.format != TableFormat::csv) {
        out << "note: --gnuplot needs --format csv; no scripts written\n";
        return false;
    }
    return true;
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const InputError*>(&e)) return 2;
    return 3;
}

}  // namespace

int cmd_extract(const GlobalOptions& g, const ExtractOptions& o, std::ostream& out) {
    const auto mode = parse_threshold(o.threshold);
    const GdpSeries gdp = load_gdp_csv(o.input);
    prepare(g);
    const GrowthSeries raw = raw_growth(gdp);
    const GrowthSeries smooth = wavelet_smooth(raw, o.levels, mode);
    const auto path = write_table(g.out_dir, "growth", growth_columns(smooth), g.format);
    write_table(g.out_dir, "growth_raw", growth_columns(raw), g.format);
    if (gnuplot_enabled(g, out))
        write_gnuplot(g.out_dir, "growth.gp",
                      "set xlabel 'year'\nset ylabel 'growth rate (%/yr)'\n"
                      "plot 'growth_raw.csv' using 1:2 with lines lc 'gray', 'growth.csv' using 1:2 with lines lw 2\n");
    out << "wrote " << smooth.size() << " growth rates to " << path.string() << "\n";
    return 0;
}

int cmd_simulate(const GlobalOptions& g, const SimulateOptions& o, std::ostream& out) {
    const ModelParams p = to_params(o.model);
    SimConfig cfg = SimConfig::with_default_burn_in(o.dt, o.steps, o.thin, o.r_init.value_or(p.r0));
    if (o.burn_in) cfg.burn_in = *o.burn_in;
    cfg.validate();
    if (o.grid_points < 3) throw InvalidArgument("grid-points must be at least 3");
    prepare(g);

    Rng rng(g.seed);
    const Trajectory tr = simulate(p.potential(), p.noise(), cfg, rng);
    const double bw = o.bandwidth.value_or(silverman_bandwidth(tr.rates));
    const DensityGrid density = kde(tr.rates, bw, sample_grid(tr.rates, bw, o.grid_points));
    const ModeReport modes = find_modes(density, o.min_prominence);

    write_table(g.out_dir, "trajectory", {{"time", tr.times}, {"rate", tr.rates}}, g.format);
    write_table(g.out_dir, "density", density_columns(density, "rate"), g.format);
    json report = modes_json(modes);
    report["bandwidth"] = bw;
    report["n_points"] = tr.rates.size();
    report["model"] = model_json(p);
    report["predicted_tail_exponent"] = predicted_tail_exponent(p.beta, p.mu);
    report["variance_finite"] = variance_is_finite(p.beta, p.mu);
    write_json(g.out_dir, "modes.json", report);
    if (gnuplot_enabled(g, out)) {
        write_gnuplot(g.out_dir, "trajectory.gp",
                      "set xlabel 'time'\nset ylabel 'rate'\nplot 'trajectory.csv' using 1:2 with lines\n");
        write_gnuplot(g.out_dir, "density.gp",
                      "set xlabel 'rate'\nset ylabel 'density'\nplot 'density.csv' using 1:2 with lines lw 2\n");
    }
    out << "simulated " << tr.rates.size() << " points; " << modes.count() << " mode(s)\n";
    return 0;
}

int cmd_density(const GlobalOptions& g, const DensityOptions& o, std::ostream& out) {
    const ModelParams p = to_params(o.model);
    const Potential pot = p.potential();
    const StableParams noise = p.noise();
    GridSpec grid = default_stationary_grid(pot, noise);
    const double half = o.half_width.value_or(grid.x_max - p.r0);
    grid = GridSpec{p.r0 - half, p.r0 + half, o.grid_points};
    FfpOptions fo;
    fo.tol = o.tol;
    prepare(g);

    const FfpSolution sol = solve_stationary_ffp_detailed(pot, noise, grid, fo);
    const ModeReport modes = find_modes(sol.density, o.min_prominence);
    write_table(g.out_dir, "density", density_columns(sol.density, "rate"), g.format);
    json report = modes_json(modes);
    report["model"] = model_json(p);
    report["solver_steps"] = sol.steps;
    report["characteristic_width"] = characteristic_width(pot, noise);
    report["predicted_tail_exponent"] = predicted_tail_exponent(p.beta, p.mu);
    report["variance_finite"] = variance_is_finite(p.beta, p.mu);
    write_json(g.out_dir, "modes.json", report);
    if (gnuplot_enabled(g, out))
        write_gnuplot(g.out_dir, "density.gp",
                      "set xlabel 'rate'\nset ylabel 'stationary density'\n"
                      "plot 'density.csv' using 1:2 with lines lw 2\n");
    out << "stationary density after " << sol.steps << " steps; " << modes.count() << " mode(s)\n";
    return 0;
}

int cmd_tails(const GlobalOptions& g, const TailsOptions& o, std::ostream& out) {
    if (o.side != "left" && o.side != "right" && o.side != "both")
        throw InvalidArgument("side must be left, right or both");
    const GrowthSeries growth = load_growth_csv(o.input);
    prepare(g);
    std::vector<std::string> sides;
    if (o.side != "right") sides.push_back("left");
    if (o.side != "left") sides.push_back("right");
    std::string plots;
    for (const auto& side : sides) {
        const TailReport r = analyze_tail(growth, side, o.pivot, o.min_tail);
        write_json(g.out_dir, "tails_" + side + ".json", tail_json(side, r));
        const auto c = ccdf(r.samples);
        std::vector<double> x, pr;
        for (const auto& pt : c) x.push_back(pt.x), pr.push_back(pt.probability);
        write_table(g.out_dir, "ccdf_" + side, {{"x", x}, {"ccdf", pr}}, g.format);
        plots += (plots.empty() ? "plot " : ", ") + std::string("'ccdf_") + side + ".csv' using 1:2 with points title '" +
                 side + "'";
        out << side << " tail: nu_hat = " << format_number(r.fit.nu_hat) << " +- " << format_number(r.fit.se)
            << ", p = " << format_number(r.lr.p_value) << "\n";
    }
    if (gnuplot_enabled(g, out))
        write_gnuplot(g.out_dir, "tails.gp", "set logscale xy\nset xlabel 'x'\nset ylabel 'CCDF'\n" + plots + "\n");
    return 0;
}

int cmd_fit(const GlobalOptions& g, const FitCmdOptions& o, std::ostream& out) {
    const GrowthSeries growth = load_growth_csv(o.input);
    prepare(g);
    const FitOutcome f = run_fit(growth, o.exclude, o.boot, o.starts, g);
    write_json(g.out_dir, "fit.json", calibration_json(f.result, f.failures));
    write_force(g, f, growth);
    if (o.loo) {
        const auto kept = exclude_extremes(growth, o.exclude).kept;
        write_json(g.out_dir, "loo.json", loo_json(leave_one_out_stability(kept, f.result, 2.0, g.threads)));
    }
    if (gnuplot_enabled(g, out))
        write_gnuplot(g.out_dir, "force.gp",
                      "set xlabel 'rate'\nset ylabel 'force'\n"
                      "plot 'force.csv' using 1:3:4 with filledcurves fs transparent solid 0.3 title 'band', "
                      "'' using 1:2 with lines lw 2 title 'force'\n");
    const auto& p = f.result.params;
    out << "beta = " << format_number(p.beta) << ", mu = " << format_number(p.mu) << ", r0 = " << format_number(p.r0)
        << ", nu = " << format_number(f.result.nu_hat) << "\n";
    return 0;
}

int cmd_reproduce(const GlobalOptions& g, const ReproduceOptions& o, std::ostream& out, std::ostream& err) {
    prepare(g);
    json report{{"input", o.input.string()}, {"seed", g.seed}};
    json stages = json::object();
    json checks = json::array();
    int code = 0;
    auto check = [&](const std::string& name, const std::string& target, double value, bool pass) {
        checks.push_back({{"name", name}, {"target", target}, {"value", value}, {"pass", pass}});
    };

    GrowthSeries growth;
    std::optional<TailReport> left, right;
    std::optional<FitOutcome> fit;

    auto stage = [&](const std::string& name, const std::function<json()>& body) {
        if (code != 0) {
            stages[name] = {{"status", "skipped"}};
            return;
        }
        try {
            json s = body();
            s["status"] = "ok";
            stages[name] = s;
        } catch (const std::exception& e) {
            code = exit_code_for(e);
            stages[name] = {{"status", "failed"}, {"error", e.what()}};
            err << "error: " << name << ": " << e.what() << "\n";
        }
    };

    stage("extract", [&] {
        const GrowthSeries raw = raw_growth(load_gdp_csv(o.input));
        growth = wavelet_smooth(raw, o.levels);
        write_table(g.out_dir, "growth", growth_columns(growth), g.format);
        const double mean = stats::mean(growth.rates);
        check("mean growth", "[1.5, 2.5]", mean, mean >= 1.5 && mean <= 2.5);
        return json{{"n_points", growth.size()}, {"mean", mean}, {"sd", stats::std_dev(growth.rates)}};
    });
    stage("density", [&] {
        const double bw = silverman_bandwidth(growth.rates);
        const auto [lo, hi] = std::minmax_element(growth.rates.begin(), growth.rates.end());
        const DensityGrid d = kde(growth.rates, bw, GridSpec{*lo - 3 * bw, *hi + 3 * bw, 512});
        write_table(g.out_dir, "kde", density_columns(d, "rate"), g.format);
        const ModeReport m = find_modes(d);
        check("KDE mode count", "2", static_cast<double>(m.count()), m.count() == 2);
        json s = modes_json(m);
        s["bandwidth"] = bw;
        return s;
    });
    stage("tails", [&] {
        left = analyze_tail(growth, "left", o.pivot, 10);
        right = analyze_tail(growth, "right", o.pivot, 10);
        check("left tail exponent", "[1.5, 2.0]", left->fit.nu_hat, left->fit.nu_hat >= 1.5 && left->fit.nu_hat <= 2.0);
        check("right tail exponent", "[1.5, 2.0]", right->fit.nu_hat,
              right->fit.nu_hat >= 1.5 && right->fit.nu_hat <= 2.0);
        check("left LR p-value", "0.96 +- 0.15", left->lr.p_value, std::abs(left->lr.p_value - 0.96) <= 0.15);
        check("right LR p-value", "0.61 +- 0.15", right->lr.p_value, std::abs(right->lr.p_value - 0.61) <= 0.15);
        return json{{"left", tail_json("left", *left)}, {"right", tail_json("right", *right)}};
    });
    stage("fit", [&] {
        fit = run_fit(growth, o.exclude, o.boot, o.starts, g);
        write_force(g, *fit, growth);
        const auto& p = fit->result.params;
        check("beta", "[2.0, 2.4]", p.beta, p.beta >= 2.0 && p.beta <= 2.4);
        check("mu", "[1.1, 1.9]", p.mu, p.mu >= 1.1 && p.mu <= 1.9);
        check("r0", "[0.6, 1.8]", p.r0, p.r0 >= 0.6 && p.r0 <= 1.8);
        check("nu = beta + mu - 2", "[1.3, 2.1]", fit->result.nu_hat, fit->result.nu_hat >= 1.3 && fit->result.nu_hat <= 2.1);
        json s = calibration_json(fit->result, fit->failures);
        if (o.loo) {
            const auto kept = exclude_extremes(growth, o.exclude).kept;
            s["leave_one_out"] = loo_json(leave_one_out_stability(kept, fit->result, 2.0, g.threads));
        }
        return s;
    });
    stage("consistency", [&] {
        const double nu_fit = fit->result.nu_hat;
        const double lo = std::min(left->fit.nu_hat, right->fit.nu_hat);
        const double hi = std::max(left->fit.nu_hat, right->fit.nu_hat);
        const bool consistent = std::abs(nu_fit - 1.7) <= 0.2 && lo >= 1.5 && hi <= 2.0;
        check("fitted nu agrees with tail exponents", "1.7 +- 0.2 with tails in [1.5, 2.0]", nu_fit, consistent);
        return json{{"nu_fit", nu_fit}, {"nu_tails", {left->fit.nu_hat, right->fit.nu_hat}}, {"consistent", consistent}};
    });

    report["stages"] = stages;
    report["checks"] = checks;
    report["status"] = code == 0 ? "ok" : "failed";
    write_json(g.out_dir, "report.json", report);
    if (gnuplot_enabled(g, out) && code == 0) {
        write_gnuplot(g.out_dir, "kde.gp", "plot 'kde.csv' using 1:2 with lines lw 2\n");
        write_gnuplot(g.out_dir, "force.gp",
                      "plot 'force.csv' using 1:3:4 with filledcurves fs transparent solid 0.3, '' using 1:2 with lines\n");
    }
    std::size_t passed = 0;
    for (const auto& c : checks) passed += c["pass"].get<bool>();
    out << "report: " << passed << "/" << checks.size() << " checks pass"
        << (code == 0 ? "" : "; pipeline stopped early") << "\n";
    return code;
}

}  // namespace clf::cli
