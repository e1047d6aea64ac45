// mtkink: kink-soliton transport and cavity estimates for microtubule
// protofilaments. One binary, six subcommands, deterministic outputs.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "mtkink/errors.hpp"
#include "mtkink/scenario.hpp"
#include "mtkink/units.hpp"

#ifndef MTK_DEFAULT_PARAMS_PATH
#define MTK_DEFAULT_PARAMS_PATH "params/biological.json"
#endif

namespace {

using nlohmann::json;

struct GlobalOpts {
    std::string params_path = MTK_DEFAULT_PARAMS_PATH;
    bool params_given = false;
    std::string out_prefix;
    int jobs = 1;
    std::string convention = "paper";
};

mtk::DetuningConvention parse_convention(const std::string& s) {
    if (s == "paper") return mtk::DetuningConvention::paper;
    if (s == "spectroscopic") return mtk::DetuningConvention::spectroscopic;
    throw mtk::ValidationError(
        "--convention: expected \"paper\" or \"spectroscopic\", got \"" + s + "\"");
}

mtk::RunOptions make_run_options(const GlobalOpts& g, bool need_params) {
    mtk::RunOptions opt;
    opt.out_prefix = g.out_prefix;
    opt.jobs = std::max(1, g.jobs);
    opt.convention = parse_convention(g.convention);
    // The default parameter file is optional; an explicit --params must load.
    if (g.params_given || need_params) {
        opt.params = mtk::load_parameters(g.params_path);
    } else if (std::ifstream probe(g.params_path, std::ios::binary); probe) {
        opt.params = mtk::load_parameters(g.params_path);
    }
    return opt;
}

// --set key=value: key is a dot path, value a JSON literal (bare words fall
// back to strings, so `--set orientation=backward` does what it looks like).
void apply_set(json& params, const std::string& kv) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0)
        throw mtk::ValidationError("--set: expected key=value, got \"" + kv + "\"");
    const std::string key = kv.substr(0, eq);
    const std::string text = kv.substr(eq + 1);
    json value;
    try {
        value = json::parse(text);
    } catch (const json::parse_error&) {
        value = text;
    }
    json* cur = &params;
    std::string seg;
    for (char c : key) {
        if (c == '.') {
            if (seg.empty())
                throw mtk::ValidationError("--set: empty path segment in \"" + key + "\"");
            cur = &(*cur)[seg];
            seg.clear();
        } else {
            seg += c;
        }
    }
    if (seg.empty())
        throw mtk::ValidationError("--set: empty path segment in \"" + key + "\"");
    (*cur)[seg] = value;
}

mtk::Scenario make_scenario(const std::string& kind, const std::string& scenario_path,
                            const std::vector<std::string>& sets) {
    mtk::Scenario s;
    if (!scenario_path.empty()) {
        s = mtk::load_scenario(scenario_path);
        if (s.kind != kind)
            throw mtk::ValidationError(scenario_path + ": kind \"" + s.kind +
                                       "\" does not match subcommand \"" + kind + "\"");
    } else {
        s.kind = kind;
        s.parameters = json::object();
    }
    for (const auto& kv : sets) apply_set(s.parameters, kv);
    return s;
}

void emit_manifest(const mtk::Scenario& s, const mtk::RunOptions& opt,
                   const std::string& started, std::vector<std::string>& outputs,
                   const std::vector<mtk::GoldenComparison>& golden = {}) {
    mtk::RunManifest m;
    m.version = mtk::tool_version();
    m.kind = s.kind;
    m.digest = mtk::scenario_digest(s);
    m.started_utc = started;
    m.finished_utc = mtk::utc_timestamp();
    m.outputs = outputs;
    m.golden = golden;
    const std::string path = mtk::run_prefix(s, opt) + "_manifest.json";
    mtk::write_manifest(m, path);
    outputs.push_back(path);
}

int run_single(const std::string& kind, const GlobalOpts& g,
               const std::string& scenario_path, const std::vector<std::string>& sets) {
    const std::string started = mtk::utc_timestamp();
    const mtk::Scenario s = make_scenario(kind, scenario_path, sets);
    const mtk::RunOptions opt = make_run_options(g, false);

    if (s.sweep_axis)
        throw mtk::ValidationError(
            "scenario has a sweep_axis; run it with the sweep subcommand");

    mtk::RunResult r = mtk::run_scenario(s, opt);
    emit_manifest(s, opt, started, r.outputs);

    json out;
    out["kind"] = s.kind;
    out["digest"] = mtk::scenario_digest(s);
    out["values"] = r.values;
    out["outputs"] = r.outputs;
    std::cout << out.dump(2) << '\n';
    return 0;
}

int run_cavity_verb(const std::string& verb, const GlobalOpts& g,
                    const std::string& scenario_path,
                    const std::vector<std::string>& sets) {
    const std::string started = mtk::utc_timestamp();
    const mtk::Scenario s = make_scenario("cavity-pipeline", scenario_path, sets);
    mtk::RunOptions opt = make_run_options(g, false);
    opt.write_files = (verb == "pipeline");

    mtk::RunResult r = mtk::run_scenario(s, opt);
    if (opt.write_files) emit_manifest(s, opt, started, r.outputs);

    // every verb answers from the same chain; non-pipeline verbs print a slice
    auto slice = [&](std::initializer_list<const char*> keys) {
        json out;
        for (const char* k : keys) {
            auto it = r.values.find(k);
            if (it != r.values.end()) out[k] = it->second;
        }
        return out;
    };

    json out;
    if (verb == "pipeline") {
        out["kind"] = s.kind;
        out["digest"] = mtk::scenario_digest(s);
        out["values"] = r.values;
        out["outputs"] = r.outputs;
    } else if (verb == "dipole") {
        out = slice({"dimer_dipole", "dimer_dipole_debye", "alignment_threshold_debye",
                     "mt_dimer_count", "mt_total_dipole_debye"});
    } else if (verb == "crossover") {
        out = slice({"crossover_water_water", "crossover_dimer_water"});
    } else if (verb == "rabi") {
        out = slice({"vacuum_field_si", "vacuum_field_gaussian_as_printed",
                     "field_used", "rabi_coupling", "rabi_coupling_collective",
                     "coupling_in_band", "rabi_peak_plus", "rabi_peak_minus",
                     "rabi_weight_plus", "rabi_weight_minus", "rabi_splitting",
                     "detuning"});
    } else if (verb == "collapse") {
        out = slice({"quality_factor", "lifetime_formula_si",
                     "lifetime_formula_gaussian", "lifetime_gaussian_over_hbar",
                     "dissipation_time", "collapse_n", "collapse_detuning_ratio",
                     "collapse_time", "collapse_lower_bound", "collapse_sin_sq"});
    }
    std::cout << out.dump(2) << '\n';
    return 0;
}

int run_sweep_cmd(const GlobalOpts& g, const std::string& scenario_path,
                  const std::vector<std::string>& sets) {
    if (scenario_path.empty())
        throw mtk::ValidationError("sweep: --scenario is required");
    const std::string started = mtk::utc_timestamp();
    mtk::Scenario s = mtk::load_scenario(scenario_path);
    for (const auto& kv : sets) apply_set(s.parameters, kv);
    const mtk::RunOptions opt = make_run_options(g, false);

    mtk::SweepResult r = mtk::run_sweep(s, opt);
    emit_manifest(s, opt, started, r.outputs);

    int failed = 0;
    for (const auto& row : r.rows)
        if (!row.error.empty()) ++failed;

    json out;
    out["kind"] = "sweep";
    out["digest"] = mtk::scenario_digest(s);
    out["axis"] = r.axis_path;
    out["points"] = r.rows.size();
    out["failed_points"] = failed;
    out["outputs"] = r.outputs;
    std::cout << out.dump(2) << '\n';
    return 0;
}

int run_report_cmd(const GlobalOpts& g, std::string golden_path) {
    const std::string started = mtk::utc_timestamp();
    if (golden_path.empty()) golden_path = mtk::golden_dir() + "/golden.json";

    const mtk::MTParameters p = mtk::load_parameters(g.params_path);
    const mtk::ReportResult rep = mtk::run_report(p, golden_path);

    std::printf("%-42s %15s %15s %10s %-11s %s\n", "name", "expected", "actual",
                "ratio", "origin", "status");
    int passed = 0;
    for (const auto& c : rep.comparisons) {
        if (!c.found) {
            std::printf("%-42s %15.8g %15s %10s %-11s %s\n", c.entry.name.c_str(),
                        c.entry.expected, "-", "-", c.entry.origin.c_str(),
                        "MISSING");
            continue;
        }
        std::printf("%-42s %15.8g %15.8g %10.6f %-11s %s\n", c.entry.name.c_str(),
                    c.entry.expected, c.actual, c.ratio, c.entry.origin.c_str(),
                    c.pass ? "pass" : "FAIL");
        if (c.pass) ++passed;
    }
    std::printf("%d/%zu comparisons passed\n", passed, rep.comparisons.size());

    mtk::Scenario s;
    s.kind = "report";
    s.parameters = json::object({{"golden_table", golden_path}});
    mtk::RunOptions opt = make_run_options(g, false);

    const std::string prefix = mtk::run_prefix(s, opt);
    std::vector<std::string> outputs;
    {
        json out;
        out["all_pass"] = rep.all_pass;
        json rows = json::array();
        for (const auto& c : rep.comparisons) {
            json row;
            row["name"] = c.entry.name;
            row["expected"] = c.entry.expected;
            row["actual"] = c.actual;
            row["ratio"] = c.ratio;
            row["rel_tol"] = c.entry.rel_tol;
            row["origin"] = c.entry.origin;
            if (!c.entry.note.empty()) row["note"] = c.entry.note;
            row["pass"] = c.pass;
            rows.push_back(std::move(row));
        }
        out["comparisons"] = std::move(rows);
        const std::string path = prefix + "_report.json";
        std::ofstream f(path, std::ios::binary);
        if (!f) throw mtk::ValidationError("cannot open output file: " + path);
        f << out.dump(2) << '\n';
        outputs.push_back(path);
    }
    emit_manifest(s, opt, started, outputs, rep.comparisons);

    if (!rep.all_pass)
        throw mtk::GoldenMismatch("golden comparison failed; see " + prefix +
                                  "_report.json");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"kink-soliton transport and cavity estimates for microtubule "
                 "protofilaments"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--params", g.params_path,
                   "physical parameter file (JSON)")
        ->each([&](const std::string&) { g.params_given = true; });
    app.add_option("--out-prefix", g.out_prefix, "output path prefix");
    app.add_option("--jobs", g.jobs, "max concurrent sweep points");
    app.add_option("--convention", g.convention,
                   "detuning sign convention: paper | spectroscopic");

    struct SubArgs {
        std::string scenario;
        std::vector<std::string> sets;
    };
    auto add_common = [](CLI::App* sub, SubArgs& a) {
        sub->fallthrough(); // global flags remain valid after the subcommand
        sub->add_option("--scenario", a.scenario, "scenario file (JSON)");
        sub->add_option("--set", a.sets,
                        "override a scenario parameter, key=value (repeatable)");
    };

    SubArgs kink_args, sim_args, tdva_args, cav_args, sweep_args;
    std::string cavity_verb = "pipeline", golden_path;

    CLI::App* kink = app.add_subcommand("kink-analytic",
                                        "closed-form traveling kink and residuals");
    add_common(kink, kink_args);
    CLI::App* sim = app.add_subcommand("simulate",
                                       "lattice dynamics and terminal-speed fit");
    add_common(sim, sim_args);
    CLI::App* tdva_cmd = app.add_subcommand("tdva",
                                            "variational quantum-corrected kink");
    add_common(tdva_cmd, tdva_args);
    CLI::App* cavity = app.add_subcommand("cavity", "cavity-QED estimate chain");
    cavity->add_option("verb", cavity_verb,
                       "dipole | crossover | rabi | collapse | pipeline")
        ->check(CLI::IsMember({"dipole", "crossover", "rabi", "collapse", "pipeline"}));
    add_common(cavity, cav_args);
    CLI::App* sweep = app.add_subcommand("sweep", "run a scenario over an axis");
    add_common(sweep, sweep_args);
    CLI::App* report = app.add_subcommand("report", "golden-value comparison table");
    report->fallthrough();
    report->add_option("--golden", golden_path,
                       "golden table (default: $MTK_GOLDEN_DIR/golden.json)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (kink->parsed())
            return run_single("kink-analytic", g, kink_args.scenario, kink_args.sets);
        if (sim->parsed())
            return run_single("simulate", g, sim_args.scenario, sim_args.sets);
        if (tdva_cmd->parsed())
            return run_single("tdva", g, tdva_args.scenario, tdva_args.sets);
        if (cavity->parsed())
            return run_cavity_verb(cavity_verb, g, cav_args.scenario, cav_args.sets);
        if (sweep->parsed())
            return run_sweep_cmd(g, sweep_args.scenario, sweep_args.sets);
        if (report->parsed())
            return run_report_cmd(g, golden_path);
    } catch (const mtk::GoldenMismatch& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const mtk::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const mtk::NumericalError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 2;
}
