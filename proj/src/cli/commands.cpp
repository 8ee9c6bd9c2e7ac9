#include "twave/cli/commands.hpp"

#include "twave/abelian.hpp"
#include "twave/cli/io.hpp"
#include "twave/dynamics.hpp"
#include "twave/equilibria.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>

namespace twave::cli {

using ojson = nlohmann::ordered_json;

namespace {

ojson base_report(const std::string& command, const RunConfig& cfg) {
    ojson r;
    r["command"] = command;
    r["tool_version"] = kToolVersion;
    r["inputs"] = echo_inputs(cfg);
    return r;
}

void add_warnings(ojson& report, const std::vector<std::string>& warnings) {
    ojson list = ojson::array();
    for (const auto& w : warnings)
        if (std::find(list.begin(), list.end(), w) == list.end()) list.push_back(w);
    report["warnings"] = list;
}

std::string join_path(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

ojson annulus_json(const Annulus& a) {
    ojson j;
    j["center_u"] = a.center_u;
    j["h_interval"] = {a.h.lo, a.h.hi};
    j["u_range"] = {a.u_range.lo, a.u_range.hi};
    j["boundary"] = to_string(a.boundary_kind);
    j["saddles"] = a.saddles;
    return j;
}

} // namespace

CommandResult cmd_classify(const RunConfig& cfg) {
    const SystemParams& p = cfg.params;
    CommandResult res{base_report("classify", cfg)};
    const Regime regime = regime_of(p);
    ojson results;
    results["regime"] = to_string(regime);
    ojson eq = ojson::array();
    for (const auto& e : classify(p))
        eq.push_back({{"u", e.location.u}, {"y", e.location.y}, {"kind", to_string(e.kind)},
                      {"jacobian_det", e.jacobian_det}});
    results["equilibria"] = eq;
    try {
        results["annulus"] = annulus_json(annulus(p));
    } catch (const NoAnnulus&) {
        results["annulus"] = nullptr;
        results["note"] = "no annulus";
    }
    res.report["results"] = results;
    add_warnings(res.report, {});
    return res;
}

CommandResult cmd_abelian_scan(const RunConfig& cfg) {
    const SystemParams& p = cfg.params;
    CommandResult res{base_report("abelian-scan", cfg)};
    const Annulus a = annulus(p);
    const int n = p.n;
    const std::string csv_path = cfg.csv.empty() ? join_path(cfg.output_dir, "abelian_scan.csv") : cfg.csv;

    AbelianOptions opt;
    std::vector<AbelianSample> samples;
    {
        CsvWriter w(csv_path, {"h", "A0", "An", "Gn"});
        for (double h : scan_grid(a, cfg.grid_size, cfg.grid_margin)) {
            const AbelianSample s = ratio_G(p, a, n, h, opt);
            w.row({s.h, s.A0, s.An, s.Gn});
            samples.push_back(s);
        }
    }
    const MonotonicityReport mono = assess_monotonicity(a, n, std::move(samples));
    const RatioInterval interval = ratio_interval(p, n, opt);

    ojson results;
    results["regime"] = to_string(a.regime);
    results["n"] = n;
    results["h_interval"] = {a.h.lo, a.h.hi};
    results["csv"] = csv_path;
    results["samples"] = mono.samples.size();
    results["monotonicity"] = {{"strictly_monotone", mono.strictly_monotone},
                               {"direction", mono.direction},
                               {"guaranteed", mono.guaranteed},
                               {"identically_zero", mono.identically_zero},
                               {"g_min", mono.g_min},
                               {"g_max", mono.g_max}};
    if (interval.empty) {
        results["ratio_interval"] = nullptr;
        results["message"] = kIdenticallyZeroWarning;
    } else {
        results["boundary_limits"] = {{"K_center", interval.K_center}, {"K_boundary", interval.K_boundary}};
        results["ratio_interval"] = {interval.lower, interval.upper};
    }
    res.report["results"] = results;
    std::vector<std::string> warnings = mono.warnings;
    warnings.insert(warnings.end(), interval.warnings.begin(), interval.warnings.end());
    add_warnings(res.report, warnings);
    return res;
}

CommandResult cmd_find_cycle(const RunConfig& cfg) {
    CommandResult res{base_report("find-cycle", cfg)};
    CycleOptions opt;
    opt.ret.tol = cfg.tol;
    const CycleReport c = find_limit_cycle(cfg.params, opt);

    ojson results;
    results["result"] = to_string(c.outcome);
    if (!c.reason.empty()) results["reason"] = c.reason;
    results["ratio"] = c.ratio;
    if (c.interval.empty) results["ratio_interval"] = nullptr;
    else results["ratio_interval"] = {c.interval.lower, c.interval.upper};
    if (c.outcome != CycleOutcome::None) {
        results["predicted_h"] = c.predicted_h;
        results["initial_guess_u"] = c.initial_guess_u;
        results["fixed_point_u"] = c.fixed_point_u;
        results["energy_h"] = c.energy_h;
        results["stability"] = to_string(c.stability);
        results["return_map_slope"] = c.return_map_slope;
        results["iterations"] = c.iterations;
        results["history"] = c.history;
    }
    res.report["results"] = results;
    add_warnings(res.report, c.warnings);
    return res;
}

CommandResult cmd_phase_portrait(const RunConfig& cfg) {
    const SystemParams& p = cfg.params;
    CommandResult res{base_report("phase-portrait", cfg)};
    std::vector<PhasePoint> seeds = cfg.seeds;
    bool auto_seeds = false;
    if (seeds.empty()) {
        try {
            seeds = default_seeds(p);
            auto_seeds = true;
        } catch (const NoAnnulus&) {
            throw ConfigError("no annulus; supply explicit seeds");
        }
    }

    PortraitOptions opt;
    opt.tol = cfg.tol;
    const auto entries = phase_portrait(p, seeds, cfg.eta_span, opt);

    ojson list = ojson::array();
    std::vector<SvgSeries> series;
    std::vector<std::string> warnings;
    int ok = 0;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const PortraitEntry& e = entries[i];
        ojson item;
        item["index"] = i;
        item["seed"] = {e.seed.u, e.seed.y};
        if (e.trajectory) {
            const Trajectory& t = *e.trajectory;
            const std::string path = join_path(cfg.output_dir, "trajectory_" + std::to_string(i) + ".csv");
            write_trajectory_csv(path, t);
            item["csv"] = path;
            item["samples"] = t.samples.size();
            item["eta_range"] = {t.front().eta, t.back().eta};
            item["termination"] = to_string(t.termination);
            item["energy_drift"] = t.energy_drift();
            SvgSeries s;
            s.label = "seed (" + format_double(e.seed.u) + ", " + format_double(e.seed.y) + ")";
            for (const auto& smp : t.samples) s.points.push_back(smp.point);
            series.push_back(std::move(s));
            ++ok;
        } else {
            item["error"] = e.error;
            warnings.push_back("seed " + std::to_string(i) + " failed: " + e.error);
        }
        list.push_back(item);
    }

    ojson results;
    results["auto_seeds"] = auto_seeds;
    results["both_directions"] = p.epsilon == 0.0;
    results["trajectories"] = list;
    if (!cfg.svg.empty()) {
        std::ofstream os(cfg.svg);
        if (!os) throw ConfigError("cannot write '" + cfg.svg + "'");
        write_svg(os, series, "Phase portrait: beta=" + format_double(p.beta) + ", u0=" + format_double(p.u0) +
                                  ", k=" + format_double(p.k));
        results["svg"] = cfg.svg;
    }
    res.report["results"] = results;
    add_warnings(res.report, warnings);
    res.exit_code = ok > 0 ? kSuccess : kAccuracyFailure;
    return res;
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const InvalidParams*>(&e) ||
        dynamic_cast<const UnsupportedRegime*>(&e) || dynamic_cast<const NoAnnulus*>(&e) ||
        dynamic_cast<const ContractError*>(&e) || dynamic_cast<const DomainError*>(&e))
        return kInvalidInput;
    return kAccuracyFailure;
}

namespace {

template <class T>
void bind_flag(CLI::App& app, const std::string& name, std::optional<T>& slot, const std::string& help) {
    app.add_option_function<T>(name, [&slot](const T& v) { slot = v; }, help);
}

void add_common_flags(CLI::App& app, Overrides& ov) {
    bind_flag(app, "--beta", ov.beta, "cubic coefficient beta > 0");
    bind_flag(app, "--u0", ov.u0, "reaction root u0");
    bind_flag(app, "--k", ov.k, "reaction root k");
    bind_flag(app, "--n", ov.n, "convection exponent n >= 2");
    bind_flag(app, "--alpha0", ov.alpha0, "constant damping coefficient");
    bind_flag(app, "--alphan", ov.alphan, "coefficient of u^n in the damping");
    bind_flag(app, "--epsilon", ov.epsilon, "perturbation size");
    bind_flag(app, "--ratio", ov.ratio, "alpha0 / alphan (sets alpha0)");
    bind_flag(app, "--grid-size", ov.grid_size, "number of energy levels in the scan");
    bind_flag(app, "--grid-margin", ov.grid_margin, "relative distance of the grid from the annulus ends");
    bind_flag(app, "--rel-tol", ov.rel_tol, "integrator relative tolerance");
    bind_flag(app, "--abs-tol", ov.abs_tol, "integrator absolute tolerance");
    app.add_option_function<std::vector<double>>(
           "--seeds", [&ov](const std::vector<double>& v) { ov.seeds = v; }, "seed points u1,y1,u2,y2,...")
        ->delimiter(',')
        ->allow_extra_args(false);
    bind_flag(app, "--eta-span", ov.eta_span, "integration length");
    bind_flag(app, "--out", ov.out, "report path (default stdout)");
    bind_flag(app, "--csv", ov.csv, "CSV path for abelian-scan");
    bind_flag(app, "--svg", ov.svg, "SVG path for phase-portrait");
    bind_flag(app, "--output-dir", ov.output_dir, "directory for generated CSV files");
}

} // namespace

int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Periodic traveling waves of a reaction-convection-diffusion equation"};
    app.require_subcommand(1);
    std::string config_path;
    bool timing = false;
    Overrides ov;

    struct Sub {
        const char* name;
        const char* help;
        CommandResult (*run)(const RunConfig&);
    };
    const Sub subs[] = {
        {"classify", "equilibria, regime and periodic annulus", cmd_classify},
        {"abelian-scan", "Abelian integral ratio over the annulus", cmd_abelian_scan},
        {"find-cycle", "limit cycle of the perturbed system", cmd_find_cycle},
        {"phase-portrait", "trajectories from seed points", cmd_phase_portrait},
    };
    for (const Sub& s : subs) {
        CLI::App* sc = app.add_subcommand(s.name, s.help);
        sc->add_option("--config", config_path, "JSON configuration file");
        sc->add_flag("--timing", timing, "include wall-clock timing in the report");
        add_common_flags(*sc, ov);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kInvalidInput;
    }

    const Sub* chosen = nullptr;
    for (const Sub& s : subs)
        if (app.got_subcommand(s.name)) chosen = &s;

    try {
        const nlohmann::json doc = config_path.empty() ? nlohmann::json::object() : load_config_file(config_path);
        const RunConfig cfg = resolve_config(doc, ov);
        if (!cfg.output_dir.empty()) std::filesystem::create_directories(cfg.output_dir);

        const auto t0 = std::chrono::steady_clock::now();
        CommandResult res = chosen->run(cfg);
        if (timing)
            res.report["timing_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

        const std::string text = res.report.dump(2) + "\n";
        if (cfg.out.empty()) {
            out << text;
        } else {
            std::ofstream f(cfg.out);
            if (!f) throw ConfigError("cannot write '" + cfg.out + "'");
            f << text;
        }
        return res.exit_code;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e);
    }
}

} // namespace twave::cli
