#pragma once

#include <functional>
#include <vector>

#include "mtkink/traveling_wave.hpp"

namespace mtk {

// The solver works on the canonical dimensionless equation
//
//   psi_tautau - psi_chichi + rho_tilde psi_tau + psi^3 - psi - sigma = 0
//
// (unit wave speed). Physical runs map in and out through
// DimensionlessSystem; nothing in here carries SI units.

enum class BoundaryKind { dirichlet, periodic };

struct Grid1D {
    double x0 = 0;   // left edge
    double dx = 0;   // spacing, > 0
    int n = 0;       // site count, >= 16
    BoundaryKind bc = BoundaryKind::dirichlet;

    double x(int i) const { return x0 + dx * i; }
    double length() const { return dx * (n - 1); }
};

struct LatticeState {
    Grid1D grid;
    double t = 0;
    std::vector<double> u;   // field at sites
    std::vector<double> ut;  // time derivative at sites
    double sigma = 0;
    double rho_tilde = 0;
    long steps = 0;

    // Set at init: default front-tracking level (midpoint of the connected
    // vacua) and the well value subtracted in total_energy so the deeper
    // vacuum scores zero energy density.
    double front_level = 0;
    double well_offset = 0;
};

struct FrontTrack {
    std::vector<double> t;
    std::vector<double> x;
    double level = 0;
};

struct SpeedFit {
    double speed = 0;      // slope of x(t)
    double std_error = 0;  // standard error of the slope
    int samples_used = 0;
};

// Samples the analytic selected front at rest frame velocity v_init (in
// units of the wave speed, |v_init| < 1), with the co-moving time derivative.
// Throws UnderResolved when the kink width 1/c2 is under four grid spacings,
// SupersonicFrame on |v_init| >= 1, ValidationError on bad grids (n < 16).
LatticeState init_kink(const Grid1D& grid, double sigma, double rho_tilde,
                       double v_init,
                       FrontOrientation o = FrontOrientation::forward);

// One velocity-Verlet step with the friction term folded implicitly into
// both velocity half-kicks (exact division, unconditionally stable in
// rho_tilde). Throws CFLViolation when dt > 0.5 dx and NonFinite if the
// state leaves the representable range.
void step(LatticeState& s, double dt);

// Advances to t_end, sampling the front position every `stride` steps
// (including the initial state and the final one). The optional observer is
// called at every sample with the current state.
FrontTrack evolve(LatticeState& s, double t_end, double dt, int stride,
                  const std::function<void(const LatticeState&)>& observer = {});

// Position where the field crosses `level`, linearly interpolated between
// the two bracketing sites. Throws NoFront when there is no crossing and
// MultipleCrossings when there are several. The one-argument form uses the
// level stored at init.
double front_position(const LatticeState& s);
double front_position(const LatticeState& s, double level);

// Least-squares slope of x(t) after discarding the leading transient
// fraction of samples (default 20%). Requires >= 10 samples after the
// discard, else InsufficientSamples.
SpeedFit measure_speed(const FrontTrack& track, double discard_fraction = 0.2);

// Trapezoid energy of the dimensionless functional
//   int dchi [ ut^2/2 + u_chi^2/2 + W(u) - well_offset ],
// W(u) = u^4/4 - u^2/2 - sigma u, gradient term summed over links. With the
// init_kink offset the deeper vacuum has zero energy density.
double total_energy(const LatticeState& s);

// Multiply a dimensionless lattice energy by energy_scale(p) to get joules.

} // namespace mtk
