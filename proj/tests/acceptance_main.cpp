// Acceptance gate: ten end-to-end checks, one [PASS]/[FAIL] line each.
// Tolerances are pinned here, next to the checks they govern. Exit status is
// the number of failed criteria, so 0 means the gate is clean.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mtkink/cavity.hpp"
#include "mtkink/errors.hpp"
#include "mtkink/lattice.hpp"
#include "mtkink/scenario.hpp"
#include "mtkink/tdva.hpp"
#include "mtkink/traveling_wave.hpp"
#include "mtkink/units.hpp"

using namespace mtk;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void line(int k, bool ok, const std::string& text) {
    std::printf("[%s] %2d. %s\n", ok ? "PASS" : "FAIL", k, text.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

void info(const std::string& text) {
    std::printf("[INFO]     %s\n", text.c_str());
    std::fflush(stdout);
}

// runs one criterion, turning any stray exception into a FAIL line
void criterion(int k, const std::function<std::string()>& body) {
    try {
        const std::string text = body();
        line(k, true, text);
    } catch (const std::exception& e) {
        line(k, false, std::string("exception: ") + e.what());
    }
}

struct Check {
    bool ok = true;
    std::string why;
    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            why = what;
        }
    }
};

std::string fmt(const char* pattern, ...) {
    char buf[256];
    va_list args;
    va_start(args, pattern);
    std::vsnprintf(buf, sizeof buf, pattern, args);
    va_end(args);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// 64-point Gauss-Hermite rule via the Jacobi matrix, independent of the
// library's finite-sum smearing
void gauss_hermite(int m, std::vector<double>& x, std::vector<double>& w) {
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(m, m);
    for (int k = 1; k < m; ++k)
        J(k - 1, k) = J(k, k - 1) = std::sqrt(0.5 * k);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    x.resize(m);
    w.resize(m);
    const double sqrt_pi = std::sqrt(std::acos(-1.0));
    for (int k = 0; k < m; ++k) {
        x[k] = es.eigenvalues()(k);
        const double v0 = es.eigenvectors()(0, k);
        w[k] = sqrt_pi * v0 * v0;
    }
}

} // namespace

int main() {
    const auto suite_start = std::chrono::steady_clock::now();
    const MTParameters params = load_parameters(MTK_PARAMS_PATH);

    // ----- 1. analytic selection chain on random (sigma, gamma)
    criterion(1, [&] {
        const auto t0 = std::chrono::steady_clock::now();
        std::mt19937_64 rng(20240601);
        std::uniform_real_distribution<double> e_dist(200.0, 8300.0);
        std::uniform_real_distribution<double> lg(-13.0, -9.0);
        Check c;
        const double sig_cap = 0.95 * sigma_critical();
        for (int it = 0; it < 200; ++it) {
            MTParameters p = params;
            p.E_field = e_dist(rng);
            p.gamma = std::pow(10.0, lg(rng));
            const DimensionlessSystem sys = nondimensionalize(p, 0.0);
            c.require(std::abs(sys.sigma) < sig_cap, "sigma left the sampled band");

            const KinkSolution sol = kink_profile(sys.sigma);
            double worst = 0;
            for (double xi = -8.0; xi <= 8.0; xi += 0.25)
                worst = std::max(worst, std::abs(ode_residual(sol, xi)));
            c.require(worst < 1e-10, fmt("residual %.3g at sigma=%.4f", worst,
                                         sys.sigma));

            const double closed = selected_velocity(p);
            const double solved = selected_velocity_rootsolve(p);
            c.require(std::abs(closed - solved) <= 1e-10 * std::abs(closed),
                      fmt("velocity routes differ: %.12g vs %.12g", closed,
                          solved));
        }
        const double el = seconds_since(t0);
        c.require(el < 5.0, fmt("took %.1fs (budget 5s)", el));
        if (!c.ok) throw std::runtime_error(c.why);
        return fmt("selection chain: 200 random (sigma, gamma), residual < 1e-10, "
                   "velocity routes agree to 1e-10 (%.2fs)", el);
    });

    // ----- 2. lattice front reaches the selected terminal speed
    criterion(2, [&] {
        const auto t0 = std::chrono::steady_clock::now();
        const double sigma = 0.2;
        const double rho_t = nondimensionalize(params, 0.0).rho_tilde;
        const double rho_s = selection_rho(cubic_roots(sigma));
        const double w_pred = rho_s / std::sqrt(rho_s * rho_s + rho_t * rho_t);

        Check c;
        double worst = 0;
        for (double factor : {0.0, 1.5}) {
            Grid1D g{-50.0, 0.05, 2001, BoundaryKind::dirichlet};
            LatticeState s =
                init_kink(g, sigma, rho_t, factor * w_pred, FrontOrientation::forward);
            FrontTrack tr = evolve(s, 30.0, 0.02, 25, {});
            const SpeedFit fit = measure_speed(tr, 0.3);
            const double dev = std::abs(fit.speed / w_pred - 1.0);
            worst = std::max(worst, dev);
            c.require(dev <= 0.02,
                      fmt("v_init=%.1f*v_pred: fitted %.6g vs %.6g (%.2f%% off)",
                          factor, fit.speed, w_pred, 100 * dev));
        }
        const double el = seconds_since(t0);
        c.require(el < 30.0, fmt("took %.1fs (budget 30s)", el));
        if (!c.ok) throw std::runtime_error(c.why);
        return fmt("terminal speed: from rest and from 1.5x, fitted within 2%% "
                   "of selection (worst %.3f%%, %.1fs)", 100 * worst, el);
    });

    // ----- 3. conservation without friction, dissipation with it
    criterion(3, [&] {
        Check c;
        Grid1D g{-20.0, 0.05, 801, BoundaryKind::dirichlet};

        LatticeState s = init_kink(g, 0.0, 0.0, 0.3, FrontOrientation::forward);
        const double e0 = total_energy(s);
        evolve(s, 10.0, 0.001, 100, {});  // exactly 1e4 steps
        const double drift = std::abs(total_energy(s) - e0) / std::abs(e0);
        c.require(s.steps == 10000, fmt("expected 1e4 steps, took %lld",
                                        static_cast<long long>(s.steps)));
        c.require(drift < 1e-6, fmt("frictionless drift %.3g", drift));

        LatticeState d = init_kink(g, 0.0, 1.0, 0.3, FrontOrientation::forward);
        std::vector<double> energies{total_energy(d)};
        evolve(d, 10.0, 0.02, 10,
               [&](const LatticeState& st) { energies.push_back(total_energy(st)); });
        for (size_t i = 1; i < energies.size(); ++i)
            c.require(energies[i] <= energies[i - 1] + 1e-12,
                      fmt("energy rose at sample %zu: %.15g -> %.15g", i,
                          energies[i - 1], energies[i]));
        if (!c.ok) throw std::runtime_error(c.why);
        return fmt("energy: frictionless drift %.2g over 1e4 steps (< 1e-6); "
                   "damped run monotone over %zu samples", drift,
                   energies.size());
    });

    // ----- 4. energy integral against the refined oracle, plus magnitude anchors
    criterion(4, [&] {
        Check c;

        MTParameters undriven = params;
        undriven.E_field = 0.0;
        const KinkEnergyReport oracle = kink_energy(undriven, 0.0);

        Grid1D g{-20.0, 0.05, 801, BoundaryKind::dirichlet};
        LatticeState s = init_kink(g, 0.0, 0.0, 0.0, FrontOrientation::forward);
        const double lattice_joule = total_energy(s) * energy_scale(undriven);
        const double rel =
            std::abs(lattice_joule - oracle.integrated_rest) / oracle.integrated_rest;
        c.require(rel <= 0.01,
                  fmt("lattice integral off by %.3g relative", rel));

        const KinkEnergyReport shipped = kink_energy(params, 0.0);
        if (shipped.large_deviation)
            info(fmt("closed-form coefficients sit %.0f%% from the integral of "
                     "record (flagged, informational)",
                     100 * shipped.closed_form_rel_dev));

        const double binding_eV =
            shipped.closed_form.binding / params.constants.electron_volt;
        c.require(binding_eV > 0.1 && binding_eV < 10.0,
                  fmt("binding %.3g eV outside [0.1, 10]", binding_eV));
        const double mstar = shipped.closed_form.effective_mass;
        c.require(mstar > 5e-28 && mstar < 5e-26,
                  fmt("effective mass %.3g kg outside [5e-28, 5e-26]", mstar));
        if (!c.ok) throw std::runtime_error(c.why);
        return fmt("static kink energy matches refined integral to %.2g "
                   "(<= 1%%); binding %.3g eV, M* %.2g kg in range", rel,
                   binding_eV, mstar);
    });

    // ----- 5. transfer time is exact
    criterion(5, [&] {
        const double t = transfer_time(1e-6, 2.0);
        if (t != 5e-7)
            throw std::runtime_error(fmt("transfer_time(1e-6, 2.0) = %.17g", t));
        return std::string("transfer time (1 um, 2 m/s) == 5e-7 s exactly");
    });

    // ----- 6. variational sector: smearing, vacua, functional, conservation
    criterion(6, [&] {
        Check c;

        std::vector<double> gx, gw;
        gauss_hermite(64, gx, gw);
        const double inv_sqrt_pi = 1.0 / std::sqrt(std::acos(-1.0));
        std::mt19937_64 rng(20240602);
        std::uniform_real_distribution<double> coeff(-2.0, 2.0);
        std::uniform_int_distribution<int> deg(1, 8);
        std::uniform_real_distribution<double> sig_d(0.0, 0.4);
        std::uniform_int_distribution<int> ord(0, 2);
        for (int it = 0; it < 100; ++it) {
            std::vector<double> cs(deg(rng) + 1);
            for (double& v : cs) v = coeff(rng);
            if (cs.back() == 0) cs.back() = 1.0;
            const Polynomial U{cs};
            const double Sigma = sig_d(rng);
            const int n = ord(rng);
            const Polynomial M = gaussian_smear(U, SmearingWidth(Sigma), n);
            const Polynomial Un = U.derivative(n);
            for (double z : {-1.5, -0.3, 0.8, 2.0}) {
                double quad = 0;
                for (int j = 0; j < 64; ++j)
                    quad += gw[j] * Un(z + std::sqrt(2.0 * Sigma) * gx[j]);
                quad *= inv_sqrt_pi;
                c.require(std::abs(M(z) - quad) <=
                              1e-10 * std::max(1.0, std::abs(quad)),
                          fmt("smearing vs quadrature: %.12g vs %.12g", M(z),
                              quad));
            }

            const Polynomial M0 = gaussian_smear(U, SmearingWidth(0.0), n);
            const auto& ref = Un.coefficients();
            const auto& got = M0.coefficients();
            c.require(got.size() == ref.size(), "Sigma=0 degree changed");
            for (size_t i = 0; i < ref.size() && i < got.size(); ++i)
                c.require(std::abs(got[i] - ref[i]) <=
                              1e-10 * std::max(1.0, std::abs(ref[i])),
                          "Sigma=0 did not reduce to the plain derivative");
        }

        for (double Sigma : {0.05, 0.1, 0.2}) {
            const QuantumKink q = modified_soliton_solve(SmearingWidth(Sigma));
            const double m = std::sqrt(1.0 - 3.0 * Sigma);
            c.require(std::abs(q.vacuum_minus - m) < 1e-12 &&
                          std::abs(q.vacuum_plus + m) < 1e-12,
                      fmt("vacua at Sigma=%.2f: %.12g, %.12g", Sigma,
                          q.vacuum_minus, q.vacuum_plus));
        }
        bool restored = false;
        try {
            modified_soliton_solve(SmearingWidth(1.0 / 3.0));
        } catch (const SymmetryRestored&) {
            restored = true;
        }
        c.require(restored, "Sigma = 1/3 did not raise SymmetryRestored");

        Grid1D g{-10.0, 0.1, 201, BoundaryKind::dirichlet};
        {
            const KernelPair kp = free_vacuum_kernels(g, 1.0);
            const MeanFieldState vac = MeanFieldState::make(kp);
            const double e = energy_functional(vac, Polynomial::quartic_well(0.0));
            c.require(e == 0.0, fmt("free vacuum energy %.3g != 0", e));
        }
        {
            const double sigma = 0.2;
            LatticeState ls = init_kink(g, sigma, 0.0, 0.2, FrontOrientation::forward);
            const KernelPair kp = free_vacuum_kernels(g, 1.0);
            MeanFieldState mf = MeanFieldState::make(kp);
            mf.C = ls.u;
            mf.D = ls.ut;
            const Polynomial U{std::vector<double>{-ls.well_offset, -sigma, -0.5,
                                                   0.0, 0.25}};
            const double e_mf = energy_functional(mf, U);
            const double e_cl = total_energy(ls);
            c.require(std::abs(e_mf - e_cl) <= 1e-10 * std::max(1.0, std::abs(e_cl)),
                      fmt("classical identity: %.15g vs %.15g", e_mf, e_cl));
        }
        double drift = 0;
        {
            const QuantumKink q = modified_soliton_solve(SmearingWidth(0.1));
            KernelPair kp = with_uniform_width(free_vacuum_kernels(g, q.mass2),
                                               SmearingWidth(0.1));
            MeanFieldState st = MeanFieldState::make(kp);
            for (int i = 0; i < g.n; ++i) st.C[i] = q.u(g.x(i));
            const Polynomial U = Polynomial::quartic_well(0.0);
            const SmearedForce f = make_smeared_force(U, smearing_widths(kp));
            const double e0 = energy_functional(st, U);
            for (int k = 0; k < 10000; ++k) cd_hamilton_step(st, f, 0.002);
            drift = std::abs(energy_functional(st, U) - e0) / std::abs(e0);
            c.require(drift < 1e-6, fmt("mean-field drift %.3g", drift));
        }
        if (!c.ok) throw std::runtime_error(c.why);
        return fmt("variational sector: quadrature match, exact reductions, "
                   "vacua, functional identities, 1e4-step drift %.2g", drift);
    });

    // ----- 7. Rabi spectrum against the 2x2 oracle and the estimate band
    criterion(7, [&] {
        Check c;

        CavityParameters res = default_cavity_parameters();
        res.omega_c = res.omega0;  // resonance
        const double lam = 3e9;
        const RabiSpectrum rs = rabi_peaks(res, lam);
        const double gN = lam * std::sqrt(static_cast<double>(res.n_dimers));
        c.require(std::abs(rs.omega_plus - (res.omega0 + gN)) <=
                          1e-12 * res.omega0 &&
                      std::abs(rs.omega_minus - (res.omega0 - gN)) <=
                          1e-12 * res.omega0,
                  "resonant peaks are not omega0 +- lambda sqrt(N)");
        c.require(std::abs(rs.weight_plus - 0.5) < 1e-12 &&
                      std::abs(rs.weight_minus - 0.5) < 1e-12,
                  "resonant weights are not 1/2");

        std::mt19937_64 rng(20240603);
        std::uniform_real_distribution<double> om(11.0, 13.0);
        std::uniform_real_distribution<double> lg(8.0, 12.0);
        std::uniform_int_distribution<long long> nn(1, 10000);
        for (int it = 0; it < 1000; ++it) {
            CavityParameters p = default_cavity_parameters();
            p.omega0 = std::pow(10.0, om(rng));
            p.omega_c = std::pow(10.0, om(rng));
            p.n_dimers = nn(rng);
            p.convention = (it % 2 == 0) ? DetuningConvention::paper
                                         : DetuningConvention::spectroscopic;
            const double lambda = std::pow(10.0, lg(rng));
            const RabiSpectrum got = rabi_peaks(p, lambda);

            const double delta = (p.convention == DetuningConvention::paper)
                                     ? p.omega_c - p.omega0
                                     : p.omega0 - p.omega_c;
            const double gn = lambda * std::sqrt(static_cast<double>(p.n_dimers));
            Eigen::Matrix2d H;
            H << p.omega0, gn, gn, p.omega0 - delta;
            Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(H);
            const double lo = es.eigenvalues()(0), hi = es.eigenvalues()(1);
            const double w_lo = es.eigenvectors()(0, 0) * es.eigenvectors()(0, 0);
            const double w_hi = es.eigenvectors()(0, 1) * es.eigenvectors()(0, 1);

            const double scale = std::max(std::abs(hi), std::abs(lo));
            c.require(std::abs(got.omega_plus - hi) <= 1e-10 * scale &&
                          std::abs(got.omega_minus - lo) <= 1e-10 * scale,
                      "peaks disagree with the eigenvalue oracle");
            c.require(std::abs(got.weight_plus - w_hi) <= 1e-10 &&
                          std::abs(got.weight_minus - w_lo) <= 1e-10,
                      "weights disagree with the eigenvector oracle");
        }

        const CavityChain chain = cavity_pipeline(default_cavity_parameters());
        const double ratio_g = chain.lambda_collective / 3e11;
        c.require(ratio_g > 1.0 / 3.0 && ratio_g < 3.0,
                  fmt("collective coupling %.3g not within 3x of 3e11",
                      chain.lambda_collective));
        const double ratio_f = chain.vacuum_field.si / 1e4;
        c.require(ratio_f > 0.1 && ratio_f < 10.0,
                  fmt("vacuum field %.3g not within 10x of 1e4",
                      chain.vacuum_field.si));
        if (!c.ok) throw std::runtime_error(c.why);
        return fmt("Rabi: resonant exact, 1000-case oracle match, lambda*sqrtN "
                   "= %.3g (3e11 band), E_c = %.3g (1e4 band)",
                   chain.lambda_collective, chain.vacuum_field.si);
    });

    // ----- 8. collapse-time witness and the lower-bound inequality
    criterion(8, [&] {
        Check c;
        const CavityChain chain = cavity_pipeline(default_cavity_parameters());
        const CollapseWitness& w = chain.collapse;
        c.require(w.n >= 1 && w.n <= 10, fmt("witness n = %lld", w.n));
        c.require(w.ratio >= 10.0 && w.ratio <= 100.0,
                  fmt("witness ratio = %.3g", w.ratio));
        c.require(w.t_collapse >= 1e-7 && w.t_collapse <= 1e-6,
                  fmt("witness collapse time %.3g outside [1e-7, 1e-6]",
                      w.t_collapse));

        std::mt19937_64 rng(20240604);
        std::uniform_int_distribution<long long> nd(1, 10);
        std::uniform_int_distribution<long long> Nd(1, 100000);
        std::uniform_real_distribution<double> lgl(8.0, 11.0);
        std::uniform_real_distribution<double> rat(10.0, 100.0);
        std::uniform_real_distribution<double> lgt(-6.0, -3.0);
        int checked = 0;
        for (int it = 0; it < 1000; ++it) {
            const long long n = nd(rng), N = Nd(rng);
            const double lambda = std::pow(10.0, lgl(rng));
            const double Delta = rat(rng) * lambda;
            const double t = std::pow(10.0, lgt(rng));
            try {
                const CollapseEstimate ce =
                    collapse_time(1e-4, n, N, lambda, Delta, t);
                c.require(ce.t_collapse >= ce.lower_bound * (1.0 - 1e-12),
                          fmt("bound violated: %.6g < %.6g", ce.t_collapse,
                              ce.lower_bound));
                ++checked;
            } catch (const DivergentCollapse&) {
                // phase node; the estimate legitimately diverges there
            }
        }
        c.require(checked > 900, fmt("only %d/1000 tuples were checkable", checked));
        if (!c.ok) throw std::runtime_error(c.why);
        return fmt("collapse: witness (n=%lld, ratio=%.0f) gives %.3g s in "
                   "[1e-7, 1e-6]; bound held on %d random tuples",
                   w.n, w.ratio, w.t_collapse, checked);
    });

    // ----- 9. dipole arithmetic and quality factor
    criterion(9, [&] {
        Check c;
        const DipoleEstimate dimer = dimer_dipole_estimate(36.0, 4e-9, 80.0);
        c.require(dimer.debye > 86.0 && dimer.debye < 90.0,
                  fmt("dimer dipole %.4g D outside [86, 90]", dimer.debye));

        const TotalDipole total = mt_total_dipole(5280, debye_to_si(15.0));
        c.require(total.debye == 79200.0,
                  fmt("5280 x 15 D = %.10g D, expected 79200 exactly",
                      total.debye));

        const DipoleEstimate align = min_alignment_dipole(2.1e5, 294.0);
        c.require(std::abs(align.debye / 6000.0 - 1.0) <= 0.10,
                  fmt("alignment threshold %.4g D not within 10%% of 6000",
                      align.debye));

        const CavityParameters cav = default_cavity_parameters();
        const double Q = quality_factor(cav.omega_c, cav.T_r);
        c.require(Q >= 1e8 && Q < 1e9, fmt("Q = %.3g outside order 1e8", Q));
        if (!c.ok) throw std::runtime_error(c.why);
        return fmt("dipoles: dimer %.1f D, rough total 79200 D exact, "
                   "alignment %.0f D, Q = %.1e", dimer.debye, align.debye, Q);
    });

    // ----- 10. determinism, sweep order-independence, golden report exit 0
    criterion(10, [&] {
        Check c;
        const fs::path dir = "acceptance_scratch";
        fs::remove_all(dir);
        fs::create_directories(dir);

        {
            std::ofstream sc(dir / "kink.json", std::ios::binary);
            sc << R"({"kind":"kink-analytic","parameters":{"sigma":0.2,"rho_tilde":1.0}})"
               << "\n";
        }
        const std::string cli = MTK_CLI_PATH;
        for (const char* tag : {"one", "two"}) {
            const std::string cmd = cli + " kink-analytic --scenario " +
                                    (dir / "kink.json").string() + " --out-prefix " +
                                    (dir / tag / "r").string() + " > /dev/null 2>&1";
            const int rc = std::system(cmd.c_str());
            c.require(rc != -1 && WIFEXITED(rc) && WEXITSTATUS(rc) == 0,
                      fmt("CLI run failed (status %d)", rc));
        }
        for (const char* f : {"r_kink.csv", "r_summary.json"}) {
            const std::string a = slurp((dir / "one" / f).string());
            const std::string b = slurp((dir / "two" / f).string());
            c.require(!a.empty() && a == b,
                      fmt("%s differs between identical runs", f));
        }

        Scenario sweep;
        sweep.kind = "kink-analytic";
        sweep.parameters = {{"sigma", 0.0}, {"rho_tilde", 1.0}, {"n_points", 81}};
        sweep.sweep_axis = SweepAxis{"sigma", {0.0, 0.05, 0.1, 0.15, 0.2, 0.25}};
        RunOptions o1;
        o1.jobs = 1;
        o1.out_prefix = (dir / "serial/s").string();
        RunOptions o4;
        o4.jobs = 4;
        o4.out_prefix = (dir / "parallel/s").string();
        const SweepResult r1 = run_sweep(sweep, o1);
        const SweepResult r4 = run_sweep(sweep, o4);
        c.require(r1.rows.size() == r4.rows.size(), "sweep row counts differ");
        for (size_t i = 0; i < r1.rows.size() && i < r4.rows.size(); ++i)
            c.require(r1.rows[i].values == r4.rows[i].values &&
                          r1.rows[i].error == r4.rows[i].error,
                      fmt("sweep row %zu depends on the job count", i));
        c.require(!r1.outputs.empty() && !r4.outputs.empty() &&
                      slurp(r1.outputs[0]) == slurp(r4.outputs[0]),
                  "sweep CSV depends on the job count");

        const std::string report_cmd = cli + " report --params " MTK_PARAMS_PATH
                                             " --golden " MTK_GOLDEN_PATH
                                             " --out-prefix " +
                                       (dir / "rep/r").string() +
                                       " > /dev/null 2>&1";
        const int rc = std::system(report_cmd.c_str());
        c.require(rc != -1 && WIFEXITED(rc) && WEXITSTATUS(rc) == 0,
                  fmt("report exited with status %d, expected 0",
                      rc == -1 ? rc : WEXITSTATUS(rc)));

        const double total = seconds_since(suite_start);
        c.require(total < 180.0, fmt("suite took %.1fs (budget 180s)", total));
        if (!c.ok) throw std::runtime_error(c.why);
        return fmt("determinism: byte-identical reruns, job-count-independent "
                   "sweep, report exit 0 (suite total %.1fs)", total);
    });

    std::printf("%d/10 criteria passed\n", 10 - g_failures);
    return g_failures;
}
