#pragma once

#include <string>

#include "mtkink/constants.hpp"

namespace mtk {

// Protofilament model parameters, all SI. The displacement field u(x,t) obeys
//
//   M u_tt - k R0^2 u_xx - A u + B u^3 + gamma u_t - q E = 0
//
// with A sign-carrying: A = -ferro_const * (T - Tc), positive in the
// low-temperature (ferroelectric) phase where the double well exists.
struct MTParameters {
    double M = 0;            // dimer effective mass, kg
    double k = 0;            // longitudinal stiffness, N/m
    double R0 = 0;           // dimer equilibrium spacing, m
    double A = 0;            // quadratic coefficient, J/m^2 (sign-carrying)
    double B = 0;            // quartic coefficient, J/m^4, must be > 0
    double gamma = 0;        // per-dimer viscous drag, kg/s
    double q = 0;            // mobile charge riding the kink, C
    double E_field = 0;      // axial electric field, V/m
    double T = 0;            // temperature, K
    double Tc = 0;           // transition temperature, K
    double ferro_const = 0;  // |const| in A = -const*(T - Tc), J/(m^2 K)

    PhysicalConstants constants;
    ReferenceTimescales timescales;

    // Sound speed of the u-field, v0 = sqrt(k/M) * R0.
    double sound_speed() const;
};

// A = -ferro_const * (T - Tc). Positive below Tc.
double ferroelectric_A(double T, double Tc, double ferro_const);

// Pinned Debye conversion (exactly *3.33564e-30 C m per Debye).
double debye_to_si(double d, const PhysicalConstants& c = {});
double si_to_debye(double cm, const PhysicalConstants& c = {});

// Scales and dimensionless groups of the canonical form
//
//   psi_tautau - psi_chichi + rho_tilde psi_tau + psi^3 - psi - sigma = 0
//
// reached via u = amplitude_scale * psi, x = length_scale * chi,
// t = time_scale * tau. In a frame moving at velocity v the profile equation
// becomes psi'' + rho psi' - psi^3 + psi + sigma = 0 with
// rho = gamma v [M A (v0^2 - v^2)]^(-1/2).
struct DimensionlessSystem {
    double sigma = 0;      // q sqrt(B) |A|^(-3/2) E
    double rho = 0;        // traveling-frame friction parameter at velocity v
    double rho_tilde = 0;  // gamma / sqrt(M A), friction in the canonical PDE
    double w = 0;          // v / v0, frame velocity in units of sound speed

    double amplitude_scale = 0;  // sqrt(A/B), m
    double length_scale = 0;     // v0 sqrt(M/A), m  (= 1/alpha at v = 0)
    double time_scale = 0;       // sqrt(M/A), s
    double velocity_scale = 0;   // v0, m/s

    // alpha(v) = sqrt(A / (M (v0^2 - v^2))), the traveling-frame inverse
    // length for the velocity used to build this system.
    double alpha = 0;
};

// Throws DegeneratePotential if A <= 0 or B <= 0, SupersonicFrame if
// |v| >= v0.
DimensionlessSystem nondimensionalize(const MTParameters& p, double v);

// Recovered physical triple from a dimensionless system plus the structural
// parameters (M, k, R0, A, B, q). Round-trips nondimensionalize to 1e-12.
struct PhysicalDrive {
    double E_field = 0;  // V/m
    double gamma = 0;    // kg/s
    double v = 0;        // m/s
};
PhysicalDrive redimensionalize(const MTParameters& structural,
                               const DimensionlessSystem& sys);

// Energy carried by one unit of the dimensionless functional
// integral dchi [ psi_tau^2/2 + psi_chi^2/2 + W(psi) ] when mapped back to
// (1/R0) integral dx of the physical density: (A^2/B) * length_scale / R0.
double energy_scale(const MTParameters& p);

// Parameter document loader. Accepts a JSON file with top-level keys
//   mt_parameters        (required)
//   constants_override   (optional, any subset of PhysicalConstants fields)
//   reference_timescales (optional, any subset of ReferenceTimescales fields)
// "A" may be given directly or left out, in which case it is computed from
// (T, Tc, ferro_const). Unknown keys anywhere are rejected with their path.
MTParameters load_parameters(const std::string& path);
MTParameters parse_parameters(const std::string& json_text,
                              const std::string& origin = "<inline>");

} // namespace mtk
