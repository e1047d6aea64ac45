#include "mtkink/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "mtkink/csv.hpp"
#include "mtkink/errors.hpp"
#include "mtkink/lattice.hpp"
#include "mtkink/tdva.hpp"
#include "mtkink/traveling_wave.hpp"

#ifndef MTK_DEFAULT_GOLDEN_DIR
#define MTK_DEFAULT_GOLDEN_DIR "golden"
#endif

namespace mtk {

using nlohmann::json;

std::string tool_version() { return "0.1.0"; }

// ---------------------------------------------------------------------------
// validated JSON reading

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ValidationError(path + ": " + what);
}

// Whitelist reader over one JSON object; collects every unknown key so the
// error names all offending paths at once.
struct Doc {
    const json& obj;
    std::string prefix;
    std::set<std::string> seen;

    Doc(const json& o, std::string p) : obj(o), prefix(std::move(p)) {
        if (!obj.is_object()) fail(prefix, "expected an object");
    }

    std::string at(const std::string& key) const { return prefix + "." + key; }

    const json* find(const std::string& key) {
        seen.insert(key);
        auto it = obj.find(key);
        return it == obj.end() ? nullptr : &*it;
    }

    bool number(const std::string& key, double& out) {
        const json* j = find(key);
        if (!j) return false;
        if (!j->is_number()) fail(at(key), "expected a number");
        out = j->get<double>();
        if (!std::isfinite(out)) fail(at(key), "must be finite");
        return true;
    }

    bool integer(const std::string& key, long long& out) {
        const json* j = find(key);
        if (!j) return false;
        if (!j->is_number_integer()) fail(at(key), "expected an integer");
        out = j->get<long long>();
        return true;
    }

    bool boolean(const std::string& key, bool& out) {
        const json* j = find(key);
        if (!j) return false;
        if (!j->is_boolean()) fail(at(key), "expected a boolean");
        out = j->get<bool>();
        return true;
    }

    bool text(const std::string& key, std::string& out) {
        const json* j = find(key);
        if (!j) return false;
        if (!j->is_string()) fail(at(key), "expected a string");
        out = j->get<std::string>();
        return true;
    }

    void done() const {
        std::vector<std::string> unknown;
        for (auto it = obj.begin(); it != obj.end(); ++it)
            if (!seen.count(it.key())) unknown.push_back(at(it.key()));
        if (unknown.empty()) return;
        std::string msg = "unknown key";
        if (unknown.size() > 1) msg += "s";
        msg += ": ";
        for (size_t i = 0; i < unknown.size(); ++i) {
            if (i) msg += ", ";
            msg += unknown[i];
        }
        throw ValidationError(msg);
    }
};

FrontOrientation parse_orientation(const std::string& s, const std::string& path) {
    if (s == "forward") return FrontOrientation::forward;
    if (s == "backward") return FrontOrientation::backward;
    fail(path, "expected \"forward\" or \"backward\", got \"" + s + "\"");
}

BoundaryKind parse_boundary(const std::string& s, const std::string& path) {
    if (s == "dirichlet") return BoundaryKind::dirichlet;
    if (s == "periodic") return BoundaryKind::periodic;
    fail(path, "expected \"dirichlet\" or \"periodic\", got \"" + s + "\"");
}

std::vector<std::string> split_path(const std::string& path) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : path) {
        if (c == '.') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    for (const auto& p : parts)
        if (p.empty()) fail("sweep_axis.path", "empty segment in \"" + path + "\"");
    return parts;
}

const json* resolve_path(const json& root, const std::vector<std::string>& parts) {
    const json* cur = &root;
    for (const auto& p : parts) {
        if (!cur->is_object()) return nullptr;
        auto it = cur->find(p);
        if (it == cur->end()) return nullptr;
        cur = &*it;
    }
    return cur;
}

void set_path(json& root, const std::vector<std::string>& parts, double value) {
    json* cur = &root;
    for (size_t i = 0; i + 1 < parts.size(); ++i) cur = &(*cur)[parts[i]];
    // keep integral axis values integer-typed so integer parameters stay sweepable
    if (value == std::nearbyint(value) && std::abs(value) < 9.0e18)
        (*cur)[parts.back()] = static_cast<long long>(value);
    else
        (*cur)[parts.back()] = value;
}

} // namespace

// ---------------------------------------------------------------------------
// scenario documents

Scenario parse_scenario(const json& doc, const std::string& origin) {
    Doc d(doc, origin);
    Scenario s;

    if (!d.text("kind", s.kind)) fail(origin + ".kind", "required");
    static const std::set<std::string> kinds{"kink-analytic", "simulate", "tdva",
                                             "cavity-pipeline", "sweep"};
    if (!kinds.count(s.kind))
        fail(origin + ".kind", "unrecognized kind \"" + s.kind + "\"");

    if (const json* p = d.find("parameters")) {
        if (!p->is_object()) fail(origin + ".parameters", "expected an object");
        s.parameters = *p;
    } else {
        s.parameters = json::object();
    }

    d.text("output_prefix", s.output_prefix);
    d.integer("seed", s.seed);

    if (const json* ax = d.find("sweep_axis")) {
        Doc a(*ax, origin + ".sweep_axis");
        SweepAxis axis;
        if (!a.text("path", axis.path)) fail(origin + ".sweep_axis.path", "required");
        const json* vals = a.find("values");
        if (!vals) fail(origin + ".sweep_axis.values", "required");
        if (!vals->is_array() || vals->empty())
            fail(origin + ".sweep_axis.values", "expected a nonempty array");
        for (size_t i = 0; i < vals->size(); ++i) {
            const json& v = (*vals)[i];
            if (!v.is_number())
                fail(origin + ".sweep_axis.values[" + std::to_string(i) + "]",
                     "expected a number");
            const double x = v.get<double>();
            if (!std::isfinite(x))
                fail(origin + ".sweep_axis.values[" + std::to_string(i) + "]",
                     "must be finite");
            axis.values.push_back(x);
        }
        a.done();

        const auto parts = split_path(axis.path);
        if (!resolve_path(s.parameters, parts))
            fail(origin + ".sweep_axis.path",
                 "parameters path \"" + axis.path + "\" does not exist");
        s.sweep_axis = std::move(axis);
    }

    d.done();
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open scenario file: " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
    return parse_scenario(doc, path);
}

std::string scenario_digest(const Scenario& s) {
    json doc;
    doc["kind"] = s.kind;
    doc["parameters"] = s.parameters;
    doc["output_prefix"] = s.output_prefix;
    doc["seed"] = s.seed;
    if (s.sweep_axis) {
        doc["sweep_axis"]["path"] = s.sweep_axis->path;
        doc["sweep_axis"]["values"] = s.sweep_axis->values;
    }
    // nlohmann objects iterate key-sorted, so dump() is a canonical form
    const std::string text = doc.dump();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a64:%016llx",
                  static_cast<unsigned long long>(h));
    return buf;
}

// ---------------------------------------------------------------------------
// shared run helpers

std::string run_prefix(const Scenario& s, const RunOptions& opt) {
    std::string prefix = !opt.out_prefix.empty() ? opt.out_prefix : s.output_prefix;
    if (prefix.empty()) prefix = "mtk_out";
    const std::filesystem::path parent = std::filesystem::path(prefix).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
    return prefix;
}

namespace {

void write_summary(const std::string& prefix, const std::string& kind,
                   const std::map<std::string, double>& values,
                   std::vector<std::string>& outputs) {
    const std::string path = prefix + "_summary.json";
    json j;
    j["kind"] = kind;
    j["values"] = values;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot open output file: " + path);
    out << j.dump(2) << '\n';
    outputs.push_back(path);
}

// Dimensionless front speed selected by friction: w = rho_s / sqrt(rho_s^2 +
// rho_tilde^2), the solution of rho_tilde w / sqrt(1 - w^2) = rho_s.
double selected_w(double rho_s, double rho_tilde) {
    if (rho_s == 0) return 0;
    if (rho_tilde == 0) return rho_s > 0 ? 1.0 : -1.0;
    return rho_s / std::hypot(rho_s, rho_tilde);
}

struct DimensionlessDefaults {
    bool have = false;
    double sigma = 0;
    double rho_tilde = 0;
};

DimensionlessDefaults defaults_from(const RunOptions& opt) {
    DimensionlessDefaults d;
    if (opt.params) {
        const DimensionlessSystem sys = nondimensionalize(*opt.params, 0.0);
        d.have = true;
        d.sigma = sys.sigma;
        d.rho_tilde = sys.rho_tilde;
    }
    return d;
}

// ---------------------------------------------------------------------------
// kind: kink-analytic

RunResult run_kink(const Scenario& s, const RunOptions& opt) {
    Doc d(s.parameters, "parameters");
    const DimensionlessDefaults dd = defaults_from(opt);

    double sigma = dd.sigma, rho_tilde = dd.have ? dd.rho_tilde : 1.0;
    const bool has_sigma = d.number("sigma", sigma);
    d.number("rho_tilde", rho_tilde);
    if (!has_sigma && !dd.have)
        fail("parameters.sigma", "required when no physical parameter file is given");
    if (rho_tilde < 0) fail("parameters.rho_tilde", "must be >= 0");

    std::string otext = "forward";
    d.text("orientation", otext);
    const FrontOrientation o = parse_orientation(otext, "parameters.orientation");

    double xi_min = -12, xi_max = 12;
    long long n_points = 481;
    d.number("xi_min", xi_min);
    d.number("xi_max", xi_max);
    d.integer("n_points", n_points);
    if (!(xi_max > xi_min)) fail("parameters.xi_max", "must exceed xi_min");
    if (n_points < 2) fail("parameters.n_points", "must be at least 2");
    d.done();

    const KinkSolution sol = kink_profile(sigma, o);
    const double w = selected_w(sol.rho, rho_tilde);

    RunResult r;
    double max_resid = 0;
    const std::string prefix = run_prefix(s, opt);
    {
        std::unique_ptr<CsvWriter> csv;
        if (opt.write_files)
            csv = std::make_unique<CsvWriter>(
                prefix + "_kink.csv", std::vector<std::string>{"xi", "psi", "residual"});
        const double h = (xi_max - xi_min) / static_cast<double>(n_points - 1);
        for (long long i = 0; i < n_points; ++i) {
            const double xi = xi_min + h * static_cast<double>(i);
            const double resid = ode_residual(sol, xi);
            max_resid = std::max(max_resid, std::abs(resid));
            if (csv) csv->row_values({xi, sol.psi(xi), resid});
        }
        if (csv) r.outputs.push_back(csv->path());
    }

    auto& v = r.values;
    v["sigma"] = sigma;
    v["rho_tilde"] = rho_tilde;
    v["root_a"] = sol.roots.a;
    v["root_d"] = sol.roots.d;
    v["root_b"] = sol.roots.b;
    v["rho_selected"] = sol.rho;
    v["c1"] = sol.c1;
    v["c2"] = sol.c2;
    v["c3"] = sol.c3;
    v["psi_minus"] = sol.psi_minus;
    v["psi_plus"] = sol.psi_plus;
    v["psi_zero"] = 0.5 * (sol.roots.a + sol.roots.b);
    v["w_selected"] = w;
    v["max_abs_residual"] = max_resid;

    if (opt.params) {
        const MTParameters& p = *opt.params;
        v["sound_speed_si"] = p.sound_speed();
        v["v_selected_si"] = w * p.sound_speed();
        if (std::abs(w) < 1.0) {
            const KinkEnergyReport e = kink_energy(p, w * p.sound_speed());
            const double eV = p.constants.electron_volt;
            v["binding_closed_form_eV"] = e.closed_form.binding / eV;
            v["binding_integrated_eV"] = e.integrated_rest / eV;
            v["effective_mass_kg"] = e.closed_form.effective_mass;
            v["energy_large_deviation"] = e.large_deviation ? 1.0 : 0.0;
        }
    }

    if (opt.write_files) write_summary(prefix, s.kind, v, r.outputs);
    return r;
}

// ---------------------------------------------------------------------------
// kind: simulate

RunResult run_simulate(const Scenario& s, const RunOptions& opt) {
    Doc d(s.parameters, "parameters");
    const DimensionlessDefaults dd = defaults_from(opt);

    double sigma = dd.sigma, rho_tilde = dd.have ? dd.rho_tilde : 1.0;
    const bool has_sigma = d.number("sigma", sigma);
    d.number("rho_tilde", rho_tilde);
    if (!has_sigma && !dd.have)
        fail("parameters.sigma", "required when no physical parameter file is given");
    if (rho_tilde < 0) fail("parameters.rho_tilde", "must be >= 0");

    double dx = 0.05, x_min = -50, x_max = 50, t_end = 30;
    d.number("dx", dx);
    d.number("x_min", x_min);
    d.number("x_max", x_max);
    d.number("t_end", t_end);
    if (!(dx > 0)) fail("parameters.dx", "must be positive");
    if (!(x_max > x_min)) fail("parameters.x_max", "must exceed x_min");
    if (!(t_end > 0)) fail("parameters.t_end", "must be positive");

    double dt = 0.4 * dx;
    d.number("dt", dt);

    double v_init = 0;
    double v_factor = 0;
    const bool has_v = d.number("v_init", v_init);
    const bool has_factor = d.number("v_init_factor", v_factor);
    if (has_v && has_factor)
        fail("parameters.v_init_factor", "give either v_init or v_init_factor, not both");

    std::string otext = "forward", btext = "dirichlet";
    d.text("orientation", otext);
    d.text("boundary", btext);
    const FrontOrientation o = parse_orientation(otext, "parameters.orientation");
    const BoundaryKind bc = parse_boundary(btext, "parameters.boundary");

    long long sample_stride = 25, snapshot_stride = 0;
    double discard = 0.2;
    d.integer("sample_stride", sample_stride);
    d.integer("snapshot_stride", snapshot_stride);
    d.number("discard_fraction", discard);
    if (sample_stride < 1) fail("parameters.sample_stride", "must be >= 1");
    if (snapshot_stride < 0) fail("parameters.snapshot_stride", "must be >= 0");
    d.done();

    Grid1D grid;
    grid.x0 = x_min;
    grid.dx = dx;
    grid.n = static_cast<int>(std::llround((x_max - x_min) / dx)) + 1;
    grid.bc = bc;

    const double rho_s = selection_rho(cubic_roots(sigma), o);
    const double w_pred = selected_w(rho_s, rho_tilde);
    if (has_factor) v_init = v_factor * w_pred;

    LatticeState state = init_kink(grid, sigma, rho_tilde, v_init, o);
    const double e0 = total_energy(state);

    const long long steps = static_cast<long long>(std::ceil(t_end / dt));
    if (snapshot_stride == 0) snapshot_stride = std::max<long long>(1, steps / 4);
    // observer fires on sample strides only; align the snapshot period to them
    snapshot_stride =
        ((snapshot_stride + sample_stride - 1) / sample_stride) * sample_stride;

    const std::string prefix = run_prefix(s, opt);
    RunResult r;
    std::unique_ptr<CsvWriter> snap;
    if (opt.write_files)
        snap = std::make_unique<CsvWriter>(
            prefix + "_snapshots.csv",
            std::vector<std::string>{"t", "x", "u", "u_t"});
    long long last_dump = -1;
    auto dump = [&](const LatticeState& st) {
        if (!snap) return;
        for (int i = 0; i < st.grid.n; ++i)
            snap->row_values({st.t, st.grid.x(i), st.u[i], st.ut[i]});
        last_dump = st.steps;
    };

    FrontTrack track = evolve(state, t_end, dt, static_cast<int>(sample_stride),
                              [&](const LatticeState& st) {
                                  if (st.steps % snapshot_stride == 0) dump(st);
                              });
    if (last_dump != state.steps) dump(state);
    if (snap) r.outputs.push_back(snap->path());

    if (opt.write_files) {
        CsvWriter front(prefix + "_front.csv",
                        std::vector<std::string>{"t", "x_front"});
        for (size_t i = 0; i < track.t.size(); ++i)
            front.row_values({track.t[i], track.x[i]});
        r.outputs.push_back(front.path());
    }

    const SpeedFit fit = measure_speed(track, discard);
    const double e1 = total_energy(state);

    auto& v = r.values;
    v["sigma"] = sigma;
    v["rho_tilde"] = rho_tilde;
    v["dx"] = dx;
    v["dt"] = dt;
    v["steps"] = static_cast<double>(state.steps);
    v["v_init"] = v_init;
    v["w_predicted"] = w_pred;
    v["w_fitted"] = fit.speed;
    v["fit_std_error"] = fit.std_error;
    v["fit_samples"] = fit.samples_used;
    if (w_pred != 0) v["speed_ratio"] = fit.speed / w_pred;
    v["energy_initial"] = e0;
    v["energy_final"] = e1;
    if (e0 != 0) v["energy_drift_rel"] = (e1 - e0) / std::abs(e0);

    if (opt.write_files) write_summary(prefix, s.kind, v, r.outputs);
    return r;
}

// ---------------------------------------------------------------------------
// kind: tdva

RunResult run_tdva(const Scenario& s, const RunOptions& opt) {
    Doc d(s.parameters, "parameters");

    double Sigma = 0.1, sigma_drive = 0.0;
    d.number("Sigma", Sigma);
    d.number("sigma", sigma_drive);
    if (Sigma < 0) fail("parameters.Sigma", "must be >= 0");

    std::string otext = "forward", kernel = "uniform";
    d.text("orientation", otext);
    d.text("kernel", kernel);
    const FrontOrientation o = parse_orientation(otext, "parameters.orientation");
    if (kernel != "uniform" && kernel != "free")
        fail("parameters.kernel", "expected \"uniform\" or \"free\"");

    double dx = 0.05, x_min = -10, x_max = 10, dt = 0.01;
    long long steps = 0;
    d.number("dx", dx);
    d.number("x_min", x_min);
    d.number("x_max", x_max);
    d.number("dt", dt);
    d.integer("steps", steps);
    if (!(dx > 0)) fail("parameters.dx", "must be positive");
    if (!(x_max > x_min)) fail("parameters.x_max", "must exceed x_min");
    if (steps < 0) fail("parameters.steps", "must be >= 0");
    d.done();

    const QuantumKink q = modified_soliton_solve(SmearingWidth(Sigma), sigma_drive, o);

    Grid1D grid;
    grid.x0 = x_min;
    grid.dx = dx;
    grid.n = static_cast<int>(std::llround((x_max - x_min) / dx)) + 1;

    const std::string prefix = run_prefix(s, opt);
    RunResult r;
    double max_resid = 0;
    {
        std::unique_ptr<CsvWriter> csv;
        if (opt.write_files)
            csv = std::make_unique<CsvWriter>(
                prefix + "_profile.csv",
                std::vector<std::string>{"xi", "u", "residual"});
        for (int i = 0; i < grid.n; ++i) {
            const double xi = grid.x(i);
            const double resid = q.residual(xi);
            max_resid = std::max(max_resid, std::abs(resid));
            if (csv) csv->row_values({xi, q.u(xi), resid});
        }
        if (csv) r.outputs.push_back(csv->path());
    }

    KernelPair kernels = free_vacuum_kernels(grid, q.mass2);
    if (kernel == "uniform") kernels = with_uniform_width(kernels, SmearingWidth(Sigma));

    MeanFieldState state = MeanFieldState::make(kernels);
    for (int i = 0; i < grid.n; ++i) state.C[i] = q.u(grid.x(i));

    const Polynomial U = Polynomial::quartic_well(sigma_drive);
    const double e0 = energy_functional(state, U);

    double drift = 0, stationarity = 0;
    if (steps > 0) {
        const SmearedForce force = make_smeared_force(U, smearing_widths(kernels));
        std::vector<double> prev;
        for (long long k = 0; k < steps; ++k) {
            prev = state.C;
            cd_hamilton_step(state, force, dt);
            double dmax = 0;
            for (int i = 0; i < grid.n; ++i)
                dmax = std::max(dmax, std::abs(state.C[i] - prev[i]));
            stationarity = std::max(stationarity, dmax);
        }
        const double e1 = energy_functional(state, U);
        drift = std::abs(e1 - e0) / std::max(std::abs(e0), 1e-30);
    }

    const std::vector<double> widths = smearing_widths(kernels);
    auto& v = r.values;
    v["Sigma"] = Sigma;
    v["sigma_drive"] = sigma_drive;
    v["mass2"] = q.mass2;
    v["sigma_effective"] = q.sigma_effective;
    v["rho"] = q.rho;
    v["vacuum_minus"] = q.vacuum_minus;
    v["vacuum_plus"] = q.vacuum_plus;
    v["width_factor"] = q.width_factor;
    v["max_abs_residual"] = max_resid;
    v["energy_total"] = e0;
    v["kernel_width_min"] = *std::min_element(widths.begin(), widths.end());
    v["kernel_width_max"] = *std::max_element(widths.begin(), widths.end());
    if (steps > 0) {
        v["energy_drift"] = drift;
        v["stationarity_max_step"] = stationarity;
        v["steps"] = static_cast<double>(steps);
        v["dt"] = dt;
    }

    if (opt.write_files) write_summary(prefix, s.kind, v, r.outputs);
    return r;
}

// ---------------------------------------------------------------------------
// kind: cavity-pipeline

FieldConvention parse_field_convention(const std::string& s, const std::string& path) {
    if (s == "si") return FieldConvention::si;
    if (s == "gaussian-as-printed") return FieldConvention::gaussian_as_printed;
    fail(path, "expected \"si\" or \"gaussian-as-printed\", got \"" + s + "\"");
}

UnitSystem parse_unit_system(const std::string& s, const std::string& path) {
    if (s == "si") return UnitSystem::si;
    if (s == "gaussian") return UnitSystem::gaussian;
    fail(path, "expected \"si\" or \"gaussian\", got \"" + s + "\"");
}

RunResult run_cavity(const Scenario& s, const RunOptions& opt) {
    Doc d(s.parameters, "parameters");

    CavityParameters p = default_cavity_parameters();
    p.convention = opt.convention;
    d.number("omega0", p.omega0);
    d.number("omega_c", p.omega_c);
    d.integer("n_dimers", p.n_dimers);
    d.integer("n_quanta", p.n_quanta);
    d.number("eps_rel", p.eps_rel);
    d.number("volume", p.volume);
    d.number("d_dimer", p.d_dimer);
    d.number("d_water", p.d_water);
    d.number("n_water", p.n_water);
    d.number("length", p.length);
    d.number("T_r", p.T_r);
    d.number("temperature", p.temperature);

    PipelineConfig cfg;
    d.number("cos_theta", cfg.cos_theta);
    d.number("named_field", cfg.named_field);
    d.boolean("use_named_field", cfg.use_named_field);
    std::string fc, ls;
    if (d.text("field_convention", fc))
        cfg.field_convention = parse_field_convention(fc, "parameters.field_convention");
    if (d.text("lifetime_system", ls))
        cfg.lifetime_system = parse_unit_system(ls, "parameters.lifetime_system");
    d.number("witness_time", cfg.witness_time);
    d.number("band_lo", cfg.band_lo);
    d.number("band_hi", cfg.band_hi);
    d.number("align_field", cfg.align_field);
    d.number("align_temperature", cfg.align_temperature);
    d.number("crossover_eps_rel", cfg.crossover_eps_rel);
    d.number("d_dimer_suppressed", cfg.d_dimer_suppressed);
    d.done();

    const CavityChain chain = cavity_pipeline(p, cfg);

    RunResult r;
    const std::string prefix = run_prefix(s, opt);
    if (opt.write_files) {
        CsvWriter csv(prefix + "_pipeline.csv",
                      std::vector<std::string>{"name", "value", "unit", "origin"});
        for (const PipelineRow& row : chain.rows)
            csv.row({row.name, format_double(row.value), row.unit, row.origin});
        r.outputs.push_back(csv.path());
    }

    for (const PipelineRow& row : chain.rows) r.values[row.name] = row.value;

    if (opt.write_files) write_summary(prefix, s.kind, r.values, r.outputs);
    return r;
}

} // namespace

RunResult run_scenario(const Scenario& s, const RunOptions& opt) {
    if (s.kind == "kink-analytic") return run_kink(s, opt);
    if (s.kind == "simulate") return run_simulate(s, opt);
    if (s.kind == "tdva") return run_tdva(s, opt);
    if (s.kind == "cavity-pipeline") return run_cavity(s, opt);
    if (s.kind == "sweep")
        throw ValidationError("a sweep scenario must be executed with run_sweep");
    throw ValidationError("unrecognized scenario kind: " + s.kind);
}

// ---------------------------------------------------------------------------
// sweeps

SweepResult run_sweep(const Scenario& s, const RunOptions& opt) {
    if (!s.sweep_axis)
        throw ValidationError("sweep execution requires a sweep_axis");

    std::string base_kind = s.kind;
    json base_params = s.parameters;
    if (s.kind == "sweep") {
        auto it = base_params.find("base_kind");
        if (it == base_params.end() || !it->is_string())
            throw ValidationError(
                "parameters.base_kind: required string for kind \"sweep\"");
        base_kind = it->get<std::string>();
        if (base_kind == "sweep")
            throw ValidationError("parameters.base_kind: nested sweeps are not supported");
        base_params.erase("base_kind");
    }

    const auto parts = split_path(s.sweep_axis->path);
    if (!resolve_path(base_params, parts))
        throw ValidationError("sweep_axis.path: parameters path \"" +
                              s.sweep_axis->path + "\" does not exist");

    const std::vector<double>& values = s.sweep_axis->values;
    const int n = static_cast<int>(values.size());

    SweepResult result;
    result.axis_path = s.sweep_axis->path;
    result.rows.resize(n);

    RunOptions child_opt = opt;
    child_opt.write_files = false;
    child_opt.jobs = 1;

    auto run_point = [&](int i) {
        SweepRow row;
        row.index = i;
        row.axis_value = values[i];
        try {
            Scenario point;
            point.kind = base_kind;
            point.parameters = base_params;
            set_path(point.parameters, parts, values[i]);
            row.values = run_scenario(point, child_opt).values;
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        result.rows[i] = std::move(row); // exclusive slot: no synchronization needed
    };

    const int jobs = std::max(1, std::min(opt.jobs, n));
    if (jobs == 1) {
        for (int i = 0; i < n; ++i) run_point(i);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        pool.reserve(jobs);
        for (int j = 0; j < jobs; ++j)
            pool.emplace_back([&]() {
                for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1))
                    run_point(i);
            });
        for (auto& t : pool) t.join();
    }

    std::set<std::string> columns;
    for (const SweepRow& row : result.rows)
        for (const auto& [k, _] : row.values) columns.insert(k);
    result.value_columns.assign(columns.begin(), columns.end());

    if (opt.write_files) {
        const std::string prefix = run_prefix(s, opt);
        std::vector<std::string> header{"index", "axis:" + s.sweep_axis->path};
        header.insert(header.end(), result.value_columns.begin(),
                      result.value_columns.end());
        header.push_back("error");
        CsvWriter csv(prefix + "_sweep.csv", header);
        for (const SweepRow& row : result.rows) {
            std::vector<std::string> cells{std::to_string(row.index),
                                           format_double(row.axis_value)};
            for (const std::string& col : result.value_columns) {
                auto it = row.values.find(col);
                cells.push_back(it == row.values.end() ? std::string()
                                                       : format_double(it->second));
            }
            cells.push_back(row.error);
            csv.row(cells);
        }
        result.outputs.push_back(csv.path());
    }
    return result;
}

// ---------------------------------------------------------------------------
// golden table

std::vector<GoldenEntry> load_golden_table(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open golden table: " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }

    Doc top(doc, "golden");
    const json* entries = top.find("entries");
    if (!entries || !entries->is_array())
        throw ValidationError("golden.entries: expected an array");
    top.done();

    std::vector<GoldenEntry> out;
    std::set<std::string> names;
    for (size_t i = 0; i < entries->size(); ++i) {
        Doc e((*entries)[i], "golden.entries[" + std::to_string(i) + "]");
        GoldenEntry g;
        if (!e.text("name", g.name)) fail(e.prefix + ".name", "required");
        if (!e.number("expected", g.expected)) fail(e.prefix + ".expected", "required");
        if (!e.number("rel_tol", g.rel_tol)) fail(e.prefix + ".rel_tol", "required");
        if (!e.text("origin", g.origin)) fail(e.prefix + ".origin", "required");
        e.text("note", g.note);
        e.done();
        if (g.origin != "literature" && g.origin != "computed")
            fail(e.prefix + ".origin", "expected \"literature\" or \"computed\"");
        if (g.rel_tol < 0) fail(e.prefix + ".rel_tol", "must be >= 0");
        if (!names.insert(g.name).second) fail(e.prefix + ".name", "duplicate: " + g.name);
        out.push_back(std::move(g));
    }
    return out;
}

std::string golden_dir() {
    if (const char* env = std::getenv("MTK_GOLDEN_DIR"); env && *env) return env;
    return MTK_DEFAULT_GOLDEN_DIR;
}

std::map<std::string, double> golden_actuals(const MTParameters& p) {
    std::map<std::string, double> m;
    const PhysicalConstants& c = p.constants;
    const double eV = c.electron_volt;

    // dimensionless traveling-wave anchors
    m["sigma_critical"] = sigma_critical();
    {
        const CubicRoots r = cubic_roots(0.2);
        m["cubic_lower_root_sigma_0p2"] = r.a;
        m["cubic_middle_root_sigma_0p2"] = r.d;
        m["cubic_upper_root_sigma_0p2"] = r.b;
        m["selection_rho_sigma_0p2"] = selection_rho(r);
    }
    {
        // energy of the undriven unit kink, int [ psi'^2/2 + (psi^2-1)^2/4 ]
        const KinkSolution k0 = kink_profile(0.0);
        const double h = 1e-3;
        const int n = 40001;
        double acc = 0;
        for (int i = 0; i < n; ++i) {
            const double xi = -20.0 + h * i;
            const double du = k0.dpsi(xi);
            const double u = k0.psi(xi);
            const double f = 0.5 * du * du + 0.25 * (u * u - 1) * (u * u - 1);
            acc += (i == 0 || i == n - 1) ? 0.5 * f : f;
        }
        m["kink_unit_energy"] = acc * h;
    }

    // physical parameter set
    {
        const DimensionlessSystem sys = nondimensionalize(p, 0.0);
        m["sound_speed_si"] = p.sound_speed();
        m["sigma_biological"] = sys.sigma;
        m["rho_tilde_biological"] = sys.rho_tilde;
        m["selected_velocity_si"] = selected_velocity(p);

        const KinkEnergyReport e = kink_energy(p, 0.0);
        m["binding_energy_eV"] = e.closed_form.binding / eV;
        m["binding_energy_literature_eV"] = e.closed_form.binding / eV;
        m["effective_mass_kg"] = e.closed_form.effective_mass;
        m["effective_mass_literature_kg"] = e.closed_form.effective_mass;
        m["rest_integral_eV"] = e.integrated_rest / eV;
        m["transfer_time_si"] = transfer_time(1e-6, 2.0);
    }

    // cavity estimates at the named defaults
    {
        const CavityParameters cav = default_cavity_parameters();
        const CavityChain chain = cavity_pipeline(cav);

        m["dimer_dipole_debye"] = chain.dimer_dipole.debye;
        m["dimer_dipole_literature_debye"] = chain.dimer_dipole.debye;
        m["alignment_threshold_debye"] = chain.alignment_threshold.debye;
        m["alignment_threshold_literature_debye"] = chain.alignment_threshold.debye;
        m["mt_dipole_literature_debye"] =
            mt_total_dipole(5280, debye_to_si(15.0, cav.constants), cav.constants).debye;
        m["mt_dimer_count_formula"] = static_cast<double>(
            mt_total_dipole(3.5e-6, 12, 8e-9, debye_to_si(15.0, cav.constants),
                            cav.constants)
                .n_dimers);
        m["mt_dimer_count_rabi"] = static_cast<double>(cav.n_dimers);

        m["vacuum_field_si_v_per_m"] = chain.vacuum_field.si;
        m["vacuum_field_gaussian_v_per_m"] = chain.vacuum_field.gaussian_as_printed;
        m["vacuum_field_literature_v_per_m"] = chain.vacuum_field.si;

        m["rabi_coupling_si"] = chain.lambda;
        m["rabi_collective_si"] = chain.lambda_collective;
        m["rabi_collective_literature"] = chain.lambda_collective;
        m["rabi_splitting_defaults"] = chain.peaks.splitting;

        m["quality_factor_defaults"] = chain.quality;
        m["quality_factor_literature"] = chain.quality;

        m["lifetime_formula_si"] = chain.lifetime.evaluated_si;
        m["lifetime_formula_gaussian"] = chain.lifetime.evaluated_gaussian;
        m["lifetime_gaussian_over_hbar_s"] = chain.lifetime.evaluated_gaussian_over_hbar;
        m["dissipation_time_si"] = cav.T_r;

        m["collapse_witness_n"] = static_cast<double>(chain.collapse.n);
        m["collapse_witness_ratio"] = chain.collapse.ratio;
        m["collapse_witness_time_s"] = chain.collapse.t_collapse;
        m["collapse_lower_bound_n1_s"] = chain.collapse.lower_bound;

        m["crossover_water_water_m"] = chain.crossover_water_water;
        m["crossover_dimer_water_m"] = chain.crossover_dimer_water;
        {
            const double eps = 10.0 * cav.constants.eps0;
            const double r = chain.crossover_water_water;
            const DipoleVector di{cav.d_water, 0, 0};
            const DipoleVector dj{cav.d_water, 0, 0};
            const double e_dd =
                dipole_dipole_energy(di, dj, Vec3{r, 0, 0}, eps, cav.constants);
            m["dipole_energy_at_crossover_eV"] = std::abs(e_dd) / eV;
            m["dipole_energy_at_crossover_literature_eV"] = std::abs(e_dd) / eV;
        }
    }

    return m;
}

ReportResult run_report(const MTParameters& p, const std::string& golden_path) {
    const std::vector<GoldenEntry> entries = load_golden_table(golden_path);
    const std::map<std::string, double> actual = golden_actuals(p);

    ReportResult r;
    for (const GoldenEntry& e : entries) {
        GoldenComparison cmp;
        cmp.entry = e;
        auto it = actual.find(e.name);
        if (it == actual.end()) {
            cmp.found = false;
            cmp.pass = false;
        } else {
            cmp.found = true;
            cmp.actual = it->second;
            cmp.ratio = e.expected != 0 ? cmp.actual / e.expected : 0.0;
            cmp.pass = std::abs(cmp.actual - e.expected) <=
                       e.rel_tol * std::abs(e.expected);
        }
        if (!cmp.pass) r.all_pass = false;
        r.comparisons.push_back(std::move(cmp));
    }
    return r;
}

// ---------------------------------------------------------------------------
// manifests

std::string utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

json manifest_json(const RunManifest& m) {
    json j;
    j["version"] = m.version;
    j["kind"] = m.kind;
    j["scenario_digest"] = m.digest;
    j["started_utc"] = m.started_utc;
    j["finished_utc"] = m.finished_utc;
    j["outputs"] = m.outputs;
    json golden = json::array();
    for (const GoldenComparison& c : m.golden) {
        json g;
        g["name"] = c.entry.name;
        g["expected"] = c.entry.expected;
        g["actual"] = c.actual;
        g["ratio"] = c.ratio;
        g["rel_tol"] = c.entry.rel_tol;
        g["origin"] = c.entry.origin;
        g["pass"] = c.pass;
        golden.push_back(std::move(g));
    }
    j["golden"] = std::move(golden);
    return j;
}

void write_manifest(const RunManifest& m, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot open output file: " + path);
    out << manifest_json(m).dump(2) << '\n';
}

} // namespace mtk
