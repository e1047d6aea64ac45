#include "mtkink/cavity.hpp"

#include <cmath>
#include <string>

#include "mtkink/errors.hpp"
#include "mtkink/units.hpp"

namespace mtk {

namespace {
constexpr double kPi = 3.14159265358979323846;

void require_finite(double v, const char* what) {
    if (!std::isfinite(v))
        throw ValidationError(std::string(what) + " must be finite");
}
} // namespace

double Vec3::norm() const { return std::sqrt(x * x + y * y + z * z); }
double Vec3::dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }

double CavityParameters::detuning() const {
    const double d = omega_c - omega0;
    return convention == DetuningConvention::paper ? d : -d;
}

void CavityParameters::validate() const {
    if (!(eps_rel > 0)) throw ValidationError("eps_rel must be positive");
    if (n_dimers < 1) throw ValidationError("n_dimers must be at least 1");
    if (n_quanta < 0) throw ValidationError("n_quanta must be >= 0");
    for (auto [v, name] : {std::pair<double, const char*>{omega0, "omega0"},
                           {omega_c, "omega_c"},
                           {volume, "volume"},
                           {d_dimer, "d_dimer"},
                           {d_water, "d_water"},
                           {n_water, "n_water"},
                           {length, "length"},
                           {T_r, "T_r"},
                           {temperature, "temperature"}}) {
        require_finite(v, name);
        if (v < 0) throw ValidationError(std::string(name) + " must be >= 0");
    }
}

CavityParameters default_cavity_parameters() {
    CavityParameters p;
    const double radius = 7.5e-9;
    p.volume = kPi * radius * radius * p.length;
    p.d_dimer = dimer_dipole_estimate(36, 4e-9, 80, p.constants).si;
    p.d_water = 2.0 * p.constants.e_charge * 0.2e-10;
    p.n_dimers = mt_total_dipole(p.length, 13, 8e-9, p.d_dimer, p.constants).n_dimers;
    p.validate();
    return p;
}

double dipole_dipole_energy(const DipoleVector& d_i, const DipoleVector& d_j,
                            const Vec3& r_vec, double eps,
                            const PhysicalConstants&) {
    for (double v : {d_i.x, d_i.y, d_i.z, d_j.x, d_j.y, d_j.z,
                     r_vec.x, r_vec.y, r_vec.z})
        require_finite(v, "dipole/separation component");
    if (!(eps > 0)) throw ValidationError("permittivity must be positive");
    const double r = r_vec.norm();
    if (!(r > 0)) throw ZeroSeparation("dipole separation must be nonzero");
    const Vec3 eta{r_vec.x / r, r_vec.y / r, r_vec.z / r};
    const double angular = 3.0 * eta.dot(d_i) * eta.dot(d_j) - d_i.dot(d_j);
    return -angular / (4.0 * kPi * eps * r * r * r);
}

double thermal_crossover_radius(double p1, double p2, double eps, double T,
                                const PhysicalConstants& c) {
    if (!(p1 > 0) || !(p2 > 0)) throw ValidationError("dipole magnitudes must be positive");
    if (!(eps > 0)) throw ValidationError("permittivity must be positive");
    if (!(T > 0)) throw ValidationError("temperature must be positive");
    // collinear geometry maximizes |3 cos^2 - ...| at a factor of 2
    return std::cbrt(2.0 * p1 * p2 / (4.0 * kPi * eps * c.k_B * T));
}

DipoleEstimate dimer_dipole_estimate(double charge_units, double separation,
                                     double eps_rel, const PhysicalConstants& c) {
    if (charge_units < 0) throw ValidationError("charge_units must be >= 0");
    if (!(separation > 0)) throw ValidationError("separation must be positive");
    if (!(eps_rel > 0)) throw ValidationError("eps_rel must be positive");
    const double si = charge_units * c.e_charge * separation / eps_rel;
    return {si, si_to_debye(si, c)};
}

DipoleEstimate min_alignment_dipole(double E_field, double T,
                                    const PhysicalConstants& c) {
    if (!(E_field > 0)) throw ValidationError("E_field must be positive");
    if (!(T > 0)) throw ValidationError("temperature must be positive");
    const double si = c.k_B * T / E_field;
    return {si, si_to_debye(si, c)};
}

TotalDipole mt_total_dipole(double length, int n_protofilaments,
                            double dimer_length, double p_dimer_axial,
                            const PhysicalConstants& c) {
    if (!(dimer_length > 0)) throw ValidationError("dimer_length must be positive");
    if (length < 0) throw ValidationError("length must be >= 0");
    if (n_protofilaments < 1) throw ValidationError("n_protofilaments must be >= 1");
    // round half up, with slack so quotients like 3.5e-6/8e-9 (437.4999...94
    // in floating point, 437.5 exactly) land on the intended integer
    const double ratio = length / dimer_length;
    const long long per_filament =
        static_cast<long long>(std::floor(ratio + 0.5 + 1e-9 * ratio));
    return mt_total_dipole(per_filament * n_protofilaments, p_dimer_axial, c);
}

TotalDipole mt_total_dipole(long long n_dimers, double p_dimer_axial,
                            const PhysicalConstants& c) {
    if (n_dimers < 0) throw ValidationError("n_dimers must be >= 0");
    const double si = static_cast<double>(n_dimers) * p_dimer_axial;
    // scale the per-dimer Debye value, not the summed SI one: the integer
    // factor last keeps round counts of round dipoles exact (5280 x 15 D
    // is 79200 D, not 79200 plus rounding)
    const double debye = static_cast<double>(n_dimers) * si_to_debye(p_dimer_axial, c);
    return {n_dimers, si, debye};
}

VacuumField vacuum_field_amplitude(double omega_c, double eps_rel, double volume,
                                   FieldConvention convention,
                                   const PhysicalConstants& c) {
    if (!(omega_c > 0)) throw ValidationError("omega_c must be positive");
    if (!(eps_rel > 0)) throw ValidationError("eps_rel must be positive");
    if (!(volume > 0)) throw ValidationError("volume must be positive");
    const double eps = eps_rel * c.eps0;
    VacuumField f;
    f.si = std::sqrt(c.hbar * omega_c / (2.0 * eps * volume));
    f.gaussian_as_printed = std::sqrt(2.0 * kPi * c.hbar * omega_c / (eps * volume));
    f.convention = convention;
    f.primary = convention == FieldConvention::si ? f.si : f.gaussian_as_printed;
    return f;
}

double rabi_coupling(double E_c, double d, double cos_theta,
                     const PhysicalConstants& c) {
    if (!(E_c >= 0)) throw ValidationError("E_c must be >= 0");
    if (!(d >= 0)) throw ValidationError("dipole magnitude must be >= 0");
    if (!(std::abs(cos_theta) <= 1))
        throw ValidationError("cos_theta must lie in [-1, 1]");
    return E_c * d * cos_theta / c.hbar;
}

RabiSpectrum rabi_peaks(const CavityParameters& p, double lambda) {
    p.validate();
    if (!(lambda >= 0)) throw ValidationError("lambda must be >= 0");

    const double delta = p.detuning();
    const double g = lambda * std::sqrt(static_cast<double>(p.n_dimers));
    const double split = std::sqrt(delta * delta + 4.0 * g * g);
    const double mu_plus = -0.5 * delta + 0.5 * split;  // shifts relative to omega0
    const double mu_minus = -0.5 * delta - 0.5 * split;

    RabiSpectrum s;
    s.omega_plus = p.omega0 + mu_plus;
    s.omega_minus = p.omega0 + mu_minus;
    s.lambda = lambda;
    s.lambda_collective = g;
    s.detuning = delta;
    s.splitting = split;

    if (g == 0) {
        if (delta == 0) {
            s.weight_plus = s.weight_minus = 0.5; // degenerate bare modes
        } else {
            // uncoupled: all emitter weight sits on the peak at omega0
            s.weight_plus = mu_plus == 0 ? 1.0 : 0.0;
            s.weight_minus = 1.0 - s.weight_plus;
        }
    } else {
        // emitter fraction of each dressed mode; mu+ mu- = -g^2 makes them sum to 1
        s.weight_plus = g * g / (g * g + mu_plus * mu_plus);
        s.weight_minus = mu_plus * mu_plus / (g * g + mu_plus * mu_plus);
    }
    return s;
}

LifetimeAudit dipole_quanta_lifetime(const CavityParameters& p, UnitSystem system) {
    p.validate();
    if (!(p.d_water > 0)) throw ValidationError("d_water must be positive");
    if (!(p.n_water > 0)) throw ValidationError("n_water must be positive");
    if (!(p.volume > 0)) throw ValidationError("volume must be positive");
    if (!(p.length > 0)) throw ValidationError("length must be positive");

    const PhysicalConstants& c = p.constants;

    const double si = c.c_light * c.hbar * c.hbar * p.volume /
                      (4.0 * kPi * p.d_water * p.d_water * p.eps_rel * c.eps0 *
                       p.n_water * p.length);

    // literal cgs transcription: statC*cm dipole, dimensionless permittivity
    const double c_cgs = c.c_light * 100.0;
    const double hbar_cgs = c.hbar * 1e7;
    const double vol_cgs = p.volume * 1e6;
    const double d_cgs = p.d_water / c.debye * 1e-18;
    const double len_cgs = p.length * 100.0;
    const double gaussian = c_cgs * hbar_cgs * hbar_cgs * vol_cgs /
                            (4.0 * kPi * d_cgs * d_cgs * p.eps_rel * p.n_water *
                             len_cgs);

    LifetimeAudit a;
    a.system = system;
    a.evaluated_si = si;
    a.evaluated_gaussian = gaussian;
    a.evaluated_gaussian_over_hbar = gaussian / hbar_cgs;
    a.value = system == UnitSystem::si ? si : gaussian;
    a.pure_time = false;
    a.dim_mass = 3;
    a.dim_length = 8;
    a.dim_time = -9;
    a.dim_current = -4;
    a.si_dimension = "kg^3 m^8 s^-9 A^-4";
    a.gaussian_dimension = "g cm^2 s^-1 (action)";
    a.downstream_default = p.T_r;
    return a;
}

CollapseEstimate collapse_time(double T_r, long long n, long long N,
                               double lambda, double Delta, double t) {
    if (!(T_r > 0)) throw ValidationError("T_r must be positive");
    if (n < 1) throw ValidationError("n must be >= 1");
    if (N < 1) throw ValidationError("N must be >= 1");
    if (Delta == 0) throw ValidationError("detuning must be nonzero");
    if (!(lambda >= 0)) throw ValidationError("lambda must be >= 0");
    if (!(t >= 0)) throw ValidationError("t must be >= 0");

    CollapseEstimate e;
    e.phase = static_cast<double>(N) * static_cast<double>(n) * lambda * lambda *
              t / Delta;
    const double s = std::sin(e.phase);
    e.sin_sq = s * s;
    e.lower_bound = T_r / (2.0 * static_cast<double>(n) * static_cast<double>(N));
    if (e.sin_sq < 1e-12)
        throw DivergentCollapse("interaction phase sits at a node (sin^2 = " +
                                std::to_string(e.sin_sq) +
                                "); collapse time diverges");
    e.t_collapse = e.lower_bound / e.sin_sq;
    return e;
}

CollapseWitness collapse_witness_search(double T_r, long long N, double lambda,
                                        double t, double t_lo, double t_hi,
                                        long long n_lo, long long n_hi) {
    if (!(lambda > 0)) throw ValidationError("lambda must be positive");
    if (!(t_lo > 0) || !(t_hi > t_lo))
        throw ValidationError("need 0 < t_lo < t_hi");
    if (n_lo < 1 || n_hi < n_lo)
        throw ValidationError("need 1 <= n_lo <= n_hi");
    for (long long n = n_lo; n <= n_hi; ++n) {
        for (int ratio = 10; ratio <= 100; ++ratio) {
            const double Delta = static_cast<double>(ratio) * lambda;
            CollapseEstimate e;
            try {
                e = collapse_time(T_r, n, N, lambda, Delta, t);
            } catch (const DivergentCollapse&) {
                continue;
            }
            if (e.t_collapse >= t_lo && e.t_collapse <= t_hi) {
                CollapseWitness w;
                w.n = n;
                w.ratio = static_cast<double>(ratio);
                w.t = t;
                w.lambda = lambda;
                w.Delta = Delta;
                w.sin_sq = e.sin_sq;
                w.t_collapse = e.t_collapse;
                w.lower_bound = e.lower_bound;
                return w;
            }
        }
    }
    throw NumericalError("no collapse witness found in n = " + std::to_string(n_lo) +
                         ".." + std::to_string(n_hi) + ", Delta/lambda = 10..100");
}

double quality_factor(double omega_c, double T_r) {
    if (!(omega_c > 0)) throw ValidationError("omega_c must be positive");
    if (!(T_r > 0)) throw ValidationError("T_r must be positive");
    return omega_c * T_r;
}

CavityChain cavity_pipeline(const CavityParameters& p, const PipelineConfig& cfg) {
    p.validate();
    const PhysicalConstants& c = p.constants;

    CavityChain ch;
    ch.params = p;
    ch.config = cfg;

    ch.dimer_dipole = {p.d_dimer, si_to_debye(p.d_dimer, c)};
    ch.alignment_threshold =
        min_alignment_dipole(cfg.align_field, cfg.align_temperature, c);

    const double d_suppressed = cfg.d_dimer_suppressed > 0
                                    ? cfg.d_dimer_suppressed
                                    : debye_to_si(15.0, c);
    ch.total_dipole = mt_total_dipole(3.5e-6, 12, 8e-9, d_suppressed, c);

    ch.vacuum_field =
        vacuum_field_amplitude(p.omega_c, p.eps_rel, p.volume,
                               cfg.field_convention, c);
    ch.field_used = cfg.use_named_field ? cfg.named_field : ch.vacuum_field.primary;
    ch.field_origin = cfg.use_named_field ? "literature" : "computed";

    ch.lambda = rabi_coupling(ch.field_used, p.d_dimer, cfg.cos_theta, c);
    ch.lambda_collective =
        ch.lambda * std::sqrt(static_cast<double>(p.n_dimers));
    ch.coupling_in_band = ch.lambda_collective >= cfg.band_lo &&
                          ch.lambda_collective <= cfg.band_hi;

    ch.peaks = rabi_peaks(p, ch.lambda);
    ch.quality = quality_factor(p.omega_c, p.T_r);
    ch.lifetime = dipole_quanta_lifetime(p, cfg.lifetime_system);
    // a requested quanta count pins the search to that n; 0 scans the full range
    const long long n_lo = p.n_quanta >= 1 ? p.n_quanta : 1;
    const long long n_hi = p.n_quanta >= 1 ? p.n_quanta : 10;
    ch.collapse = collapse_witness_search(p.T_r, p.n_dimers, ch.lambda,
                                          cfg.witness_time, 1e-7, 1e-6, n_lo, n_hi);

    const double eps_protein = cfg.crossover_eps_rel * c.eps0;
    ch.crossover_water_water = thermal_crossover_radius(
        p.d_water, p.d_water, eps_protein, p.temperature, c);
    ch.crossover_dimer_water = thermal_crossover_radius(
        d_suppressed, p.d_water, eps_protein, p.temperature, c);

    auto lit = [&](const char* name, double value, const char* unit) {
        ch.rows.push_back({name, value, unit, "literature"});
    };
    auto num = [&](const char* name, double value, const char* unit) {
        ch.rows.push_back({name, value, unit, "computed"});
    };

    lit("omega_c", p.omega_c, "rad/s");
    lit("omega_0", p.omega0, "rad/s");
    num("dimer_dipole", ch.dimer_dipole.si, "C*m");
    num("dimer_dipole_debye", ch.dimer_dipole.debye, "D");
    num("alignment_threshold_debye", ch.alignment_threshold.debye, "D");
    num("mt_dimer_count", static_cast<double>(ch.total_dipole.n_dimers), "1");
    num("mt_total_dipole_debye", ch.total_dipole.debye, "D");
    num("vacuum_field_si", ch.vacuum_field.si, "V/m");
    num("vacuum_field_gaussian_as_printed", ch.vacuum_field.gaussian_as_printed,
        "V/m");
    ch.rows.push_back({"field_used", ch.field_used, "V/m", ch.field_origin});
    num("rabi_coupling", ch.lambda, "rad/s");
    num("rabi_coupling_collective", ch.lambda_collective, "rad/s");
    num("coupling_in_band", ch.coupling_in_band ? 1.0 : 0.0, "bool");
    num("rabi_peak_plus", ch.peaks.omega_plus, "rad/s");
    num("rabi_peak_minus", ch.peaks.omega_minus, "rad/s");
    num("rabi_weight_plus", ch.peaks.weight_plus, "1");
    num("rabi_weight_minus", ch.peaks.weight_minus, "1");
    num("rabi_splitting", ch.peaks.splitting, "rad/s");
    num("detuning", ch.peaks.detuning, "rad/s");
    num("quality_factor", ch.quality, "1");
    num("lifetime_formula_si", ch.lifetime.evaluated_si, "see audit");
    num("lifetime_formula_gaussian", ch.lifetime.evaluated_gaussian, "see audit");
    num("lifetime_gaussian_over_hbar", ch.lifetime.evaluated_gaussian_over_hbar, "s");
    lit("dissipation_time", p.T_r, "s");
    num("collapse_n", static_cast<double>(ch.collapse.n), "1");
    num("collapse_detuning_ratio", ch.collapse.ratio, "1");
    num("collapse_time", ch.collapse.t_collapse, "s");
    num("collapse_lower_bound", ch.collapse.lower_bound, "s");
    num("collapse_sin_sq", ch.collapse.sin_sq, "1");
    num("crossover_water_water", ch.crossover_water_water, "m");
    num("crossover_dimer_water", ch.crossover_dimer_water, "m");

    return ch;
}

} // namespace mtk
