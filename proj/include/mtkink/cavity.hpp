#pragma once

// Cavity-electrodynamics estimates for a microtubule treated as a lossy
// resonator: dipole arithmetic, vacuum-field amplitude, collective Rabi
// coupling and splitting, dipole-quanta lifetime (with a dimensional audit of
// the printed formula), coherent-state collapse time, and quality factor.
// Everything here is a pure function of its inputs.

#include <string>
#include <vector>

#include "mtkink/constants.hpp"

namespace mtk {

struct Vec3 {
    double x = 0, y = 0, z = 0;
    double norm() const;
    double dot(const Vec3& o) const;
};

using DipoleVector = Vec3; // components in C*m

enum class DetuningConvention {
    paper,         // Delta = omega_c - omega0
    spectroscopic, // Delta = omega0 - omega_c
};

enum class FieldConvention {
    si,                  // E_c = sqrt(hbar w_c / (2 eps V))
    gaussian_as_printed, // E_c = sqrt(2 pi hbar w_c / (eps V)), eps = eps_rel eps0
};

enum class UnitSystem { si, gaussian };

struct CavityParameters {
    double omega0 = 1e12;  // dimer transition frequency, rad/s
    double omega_c = 6e12; // cavity-mode frequency, rad/s
    long long n_dimers = 1625;
    long long n_quanta = 1;
    double eps_rel = 80;    // relative dielectric constant of the medium
    double volume = 0;      // cavity volume, m^3 (default set by default_cavity_parameters)
    double d_dimer = 0;     // dimer transition dipole, C*m
    double d_water = 0;     // single water-molecule dipole, C*m
    double n_water = 1e8;   // water molecules inside `volume`
    double length = 1e-6;   // resonator length, m
    double T_r = 1e-4;      // cavity dissipation time, s
    double temperature = 300; // K
    DetuningConvention convention = DetuningConvention::paper;
    PhysicalConstants constants{};

    double detuning() const; // signed, per the convention flag
    void validate() const;   // throws ValidationError on bad magnitudes
};

// The named estimate set used throughout: interior radius 7.5 nm, length
// 1 um, 13 protofilaments of 8 nm dimers, mobile charge 36 e displaced 4 nm
// and screened by eps_rel = 80, water dipole 2 e x 0.2 Angstrom.
CavityParameters default_cavity_parameters();

struct DipoleEstimate {
    double si;    // C*m
    double debye;
};

// -(1/4 pi eps) [3 (rhat.di)(rhat.dj) - di.dj] / |r|^3, eps absolute (F/m).
double dipole_dipole_energy(const DipoleVector& d_i, const DipoleVector& d_j,
                            const Vec3& r_vec, double eps,
                            const PhysicalConstants& c = {});

// Radius where the orientation-maximized (collinear, factor 2) interaction of
// two dipoles of magnitudes p1, p2 equals k_B T. eps absolute (F/m).
double thermal_crossover_radius(double p1, double p2, double eps, double T,
                                const PhysicalConstants& c = {});

// charge_units e displaced by `separation`, screened by eps_rel.
DipoleEstimate dimer_dipole_estimate(double charge_units, double separation,
                                     double eps_rel,
                                     const PhysicalConstants& c = {});

// k_B T / E: the dipole whose field energy matches the thermal scale.
DipoleEstimate min_alignment_dipole(double E_field, double T,
                                    const PhysicalConstants& c = {});

struct TotalDipole {
    long long n_dimers;
    double si;    // C*m
    double debye;
};

// All-aligned optimistic bound: N = round(length/dimer_length) * protofilaments.
TotalDipole mt_total_dipole(double length, int n_protofilaments,
                            double dimer_length, double p_dimer_axial,
                            const PhysicalConstants& c = {});
// Same bound with the count supplied directly.
TotalDipole mt_total_dipole(long long n_dimers, double p_dimer_axial,
                            const PhysicalConstants& c = {});

struct VacuumField {
    double primary;             // value under the requested convention, V/m
    double si;
    double gaussian_as_printed;
    FieldConvention convention;
};

VacuumField vacuum_field_amplitude(double omega_c, double eps_rel, double volume,
                                   FieldConvention convention,
                                   const PhysicalConstants& c = {});

// Single-emitter coupling lambda = E_c d cos(theta) / hbar.
double rabi_coupling(double E_c, double d, double cos_theta,
                     const PhysicalConstants& c = {});

struct RabiSpectrum {
    double omega_plus;    // rad/s, always >= omega_minus
    double omega_minus;
    double weight_plus;   // emitter weight of each peak; sum to 1
    double weight_minus;
    double lambda;             // single-emitter coupling, rad/s
    double lambda_collective;  // lambda sqrt(N)
    double detuning;           // signed Delta actually used
    double splitting;          // omega_plus - omega_minus
};

// Peaks at omega0 - Delta/2 +- (1/2) sqrt(Delta^2 + 4 N lambda^2); the weights
// are the emitter fractions of the two dressed modes.
RabiSpectrum rabi_peaks(const CavityParameters& p, double lambda);

struct LifetimeAudit {
    double value;            // the formula, evaluated in `system`
    UnitSystem system;
    // "evaluated_si" rather than "si_value": glibc's <signal.h> claims
    // si_value as a macro and this header must survive being included after it.
    double evaluated_si;       // literal SI evaluation
    double evaluated_gaussian; // literal Gaussian (cgs) evaluation, lands in erg*s
    double evaluated_gaussian_over_hbar; // seconds; what the printed number evidently meant
    bool pure_time;          // false: the expression does not reduce to seconds
    int dim_mass, dim_length, dim_time, dim_current; // SI base exponents
    std::string si_dimension;
    std::string gaussian_dimension;
    double downstream_default; // the quoted T_r used by every consumer
};

// c hbar^2 V / (4 pi d_w^2 eps N_w L), evaluated literally in both unit
// systems plus a dimensional audit; downstream code uses params.T_r instead.
LifetimeAudit dipole_quanta_lifetime(const CavityParameters& p, UnitSystem system);

struct CollapseEstimate {
    double t_collapse;
    double lower_bound; // T_r / (2 n N), reached when sin^2 = 1
    double sin_sq;
    double phase;       // N n lambda^2 t / Delta
};

CollapseEstimate collapse_time(double T_r, long long n, long long N,
                               double lambda, double Delta, double t);

struct CollapseWitness {
    long long n;       // quanta count
    double ratio;      // Delta / lambda
    double t;          // interaction time fed to the phase
    double lambda;
    double Delta;
    double sin_sq;
    double t_collapse;
    double lower_bound;
};

// First tuple (n ascending over [n_lo, n_hi], integer ratio ascending over
// 10..100) whose collapse time lands inside [t_lo, t_hi]. Deterministic.
CollapseWitness collapse_witness_search(double T_r, long long N, double lambda,
                                        double t, double t_lo = 1e-7,
                                        double t_hi = 1e-6, long long n_lo = 1,
                                        long long n_hi = 10);

double quality_factor(double omega_c, double T_r);

// --- full chain --------------------------------------------------------------

struct PipelineConfig {
    double cos_theta = 0.2;         // axial fraction of the dimer dipole
    double named_field = 1e4;       // V/m; quoted value used downstream
    bool use_named_field = true;    // false: feed the computed amplitude forward
    FieldConvention field_convention = FieldConvention::si;
    UnitSystem lifetime_system = UnitSystem::si;
    double witness_time = 1e-4;     // s, interaction time for the collapse phase
    double band_lo = 1e11;          // rad/s, expected collective-coupling band
    double band_hi = 9e11;
    double align_field = 2.1e5;     // V/m, alignment experiment drive
    double align_temperature = 294; // K
    double crossover_eps_rel = 10;  // protein medium between water and dimer
    double d_dimer_suppressed = 0;  // C*m; 0 = 15 D default
};

struct PipelineRow {
    std::string name;
    double value;
    std::string unit;
    std::string origin; // "literature" or "computed"
};

struct CavityChain {
    CavityParameters params;
    PipelineConfig config;
    DipoleEstimate dimer_dipole;
    DipoleEstimate alignment_threshold;
    TotalDipole total_dipole;       // 3.5 um, 12 protofilaments, 15 D axial
    VacuumField vacuum_field;
    double field_used;              // V/m, what the coupling consumed
    std::string field_origin;
    double lambda;
    double lambda_collective;
    bool coupling_in_band;
    RabiSpectrum peaks;
    double quality;
    LifetimeAudit lifetime;
    CollapseWitness collapse;
    double crossover_water_water;   // m
    double crossover_dimer_water;   // m
    std::vector<PipelineRow> rows;  // ordered, annotated table of the above
};

CavityChain cavity_pipeline(const CavityParameters& p, const PipelineConfig& cfg = {});

} // namespace mtk
