#include "mtkink/traveling_wave.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mtkink/errors.hpp"

namespace mtk {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kDegenerateTol = 1e-9;
} // namespace

double sigma_critical() {
    return 2.0 / (3.0 * std::sqrt(3.0));
}

// Depressed cubic t^3 + p t + q with p = -1, q = -sigma. Inside the fold
// (|sigma| < 2/(3 sqrt3)) all roots are real and the numerically stable form
// is the trigonometric one; a guarded Newton polish then tightens each root
// to machine precision.
CubicRoots cubic_roots(double sigma) {
    const double crit = sigma_critical();
    if (std::abs(sigma) > crit * (1.0 + 4e-16))
        throw ComplexRoots("|sigma| = " + std::to_string(std::abs(sigma)) +
                           " exceeds 2/(3 sqrt 3) ~= " + std::to_string(crit) +
                           "; only one real root");

    // cos(phi) = (3q/2p) sqrt(-3/p) with p = -1, q = -sigma.
    double cosphi = 1.5 * sigma * std::sqrt(3.0);
    cosphi = std::clamp(cosphi, -1.0, 1.0);
    const double phi = std::acos(cosphi);
    const double m = 2.0 / std::sqrt(3.0);

    double r[3];
    for (int j = 0; j < 3; ++j)
        r[j] = m * std::cos((phi - 2.0 * kPi * j) / 3.0);
    std::sort(r, r + 3);

    // The polish is a no-op away from the fold and recovers the last digit
    // near it; skipped where f' ~ 0 (double root) since the trig form is
    // already the right answer there.
    for (int j = 0; j < 3; ++j) {
        const double f = r[j] * r[j] * r[j] - r[j] - sigma;
        const double fp = 3.0 * r[j] * r[j] - 1.0;
        if (std::abs(fp) > 1e-8) {
            const double step = f / fp;
            if (std::abs(step) < 1e-6) r[j] -= step;
        }
    }
    std::sort(r, r + 3);

    CubicRoots out;
    out.a = r[0];
    out.d = r[1];
    out.b = r[2];
    out.sigma = sigma;
    out.degenerate = (r[1] - r[0] < kDegenerateTol) || (r[2] - r[1] < kDegenerateTol);
    return out;
}

double selection_rho(const CubicRoots& r, FrontOrientation o) {
    if (r.b - r.a < kDegenerateTol)
        throw DegenerateRoots("outer roots coincide (b - a = " +
                              std::to_string(r.b - r.a) + "); no front exists");
    const double mag = (3.0 / kSqrt2) * std::abs(r.d);
    return o == FrontOrientation::forward ? mag : -mag;
}

double KinkSolution::psi(double xi) const {
    return c1 * (std::tanh(c2 * xi) + c3);
}

double KinkSolution::dpsi(double xi) const {
    const double s = 1.0 / std::cosh(c2 * xi);
    return c1 * c2 * s * s;
}

double KinkSolution::ddpsi(double xi) const {
    const double s = 1.0 / std::cosh(c2 * xi);
    return -2.0 * c1 * c2 * c2 * s * s * std::tanh(c2 * xi);
}

// The logistic front between the outer roots,
//   psi(xi) = a + (b - a) / (1 + exp((b - a) xi / sqrt2)),
// rewritten as c1 (tanh(c2 xi) + c3). As printed it descends from b to a;
// that branch satisfies the profile equation with rho = -(3/sqrt2) d, and its
// mirror (xi -> -xi) with rho = +(3/sqrt2) d. `forward` picks whichever of
// the two puts the deeper vacuum at xi = -infinity, which is the branch with
// rho = (3/sqrt2)|d| >= 0 and the front running toward +x.
KinkSolution kink_profile(double sigma, FrontOrientation o) {
    KinkSolution s;
    s.roots = cubic_roots(sigma);
    s.orientation = o;
    s.rho = selection_rho(s.roots, o);

    const double a = s.roots.a, b = s.roots.b, d = s.roots.d;
    s.c2 = (b - a) / (2.0 * kSqrt2);

    // Descending branch (b at -inf) carries rho = -(3/sqrt2) d; it is the
    // forward branch when d <= 0 (sigma >= 0, deeper vacuum is b).
    const bool descending = (o == FrontOrientation::forward) ? (d <= 0) : (d > 0);
    if (descending) {
        s.c1 = -(b - a) / 2.0;
        s.c3 = -(a + b) / (b - a);
        s.psi_minus = b;
        s.psi_plus = a;
    } else {
        s.c1 = (b - a) / 2.0;
        s.c3 = (a + b) / (b - a);
        s.psi_minus = a;
        s.psi_plus = b;
    }
    return s;
}

double ode_residual(const KinkSolution& s, double xi, double rho) {
    const double p = s.psi(xi);
    return s.ddpsi(xi) + rho * s.dpsi(xi) - p * p * p + p + s.roots.sigma;
}

double ode_residual(const KinkSolution& s, double xi) {
    return ode_residual(s, xi, s.rho);
}

double selected_velocity(const MTParameters& p) {
    const DimensionlessSystem sys = nondimensionalize(p, 0.0);
    const double v0 = sys.velocity_scale;
    if (p.gamma == 0.0) return v0;

    const CubicRoots r = cubic_roots(sys.sigma);
    if (r.d == 0.0) return 0.0;

    const double bracket =
        1.0 + 2.0 * p.gamma * p.gamma / (9.0 * r.d * r.d * p.M * p.A);
    return v0 / std::sqrt(bracket);
}

// Independent route: rho(gamma, v) = gamma v [M A (v0^2 - v^2)]^(-1/2) is
// strictly increasing on [0, v0), so bisect it against the selected value.
double selected_velocity_rootsolve(const MTParameters& p) {
    const DimensionlessSystem sys = nondimensionalize(p, 0.0);
    const double v0 = sys.velocity_scale;
    if (p.gamma == 0.0) return v0;

    const CubicRoots r = cubic_roots(sys.sigma);
    const double target = (3.0 / kSqrt2) * std::abs(r.d);
    if (target == 0.0) return 0.0;

    const double denom0 = std::sqrt(p.M * p.A);
    auto rho_of = [&](double v) {
        return p.gamma * v / (denom0 * std::sqrt(v0 * v0 - v * v));
    };

    double lo = 0.0, hi = v0 * (1.0 - 1e-15);
    if (rho_of(hi) < target) return hi;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (rho_of(mid) < target)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

namespace {

struct ProfileIntegral {
    double value = 0;
    double step = 0;
    int levels = 0;
};

// (1/R0) int dx [ M u_t^2/2 + k R0^2 u_x^2/2 + B (u^2 - A/B)^2/4 ] over the
// analytic symmetric-well profile at speed v. With u = u0 psi(alpha (x - vt))
// the x integral becomes (1 / (alpha R0)) int dxi of
//   (M v^2 + k R0^2) alpha^2 u0^2 psi'^2 / 2 + (A^2/4B) (psi^2 - 1)^2,
// evaluated by trapezoid and refined by halving the step until two
// successive levels agree to 0.1%.
ProfileIntegral integrate_profile_energy(const MTParameters& p, double v) {
    const double v0 = p.sound_speed();
    const double u0 = std::sqrt(p.A / p.B);
    const double alpha = std::sqrt(p.A / (p.M * (v0 * v0 - v * v)));
    const KinkSolution s = kink_profile(0.0);

    const double grad_coef =
        0.5 * (p.M * v * v + p.k * p.R0 * p.R0) * alpha * alpha * u0 * u0;
    const double well_coef = p.A * p.A / (4.0 * p.B);
    auto density = [&](double xi) {
        const double dp = s.dpsi(xi);
        const double ps = s.psi(xi);
        const double w = ps * ps - 1.0;
        return grad_coef * dp * dp + well_coef * w * w;
    };

    // sech^4 tails; this span truncates far below the 0.1% target.
    const double span = 12.0 / s.c2;

    auto trap = [&](int n) {
        const double h = 2.0 * span / n;
        double sum = 0.5 * (density(-span) + density(span));
        for (int i = 1; i < n; ++i) sum += density(-span + h * i);
        return sum * h;
    };

    ProfileIntegral out;
    int n = 64;
    double prev = trap(n);
    for (int level = 1; level <= 20; ++level) {
        n *= 2;
        const double cur = trap(n);
        out.levels = level;
        const bool converged = std::abs(cur - prev) <= 1e-3 * std::abs(cur);
        prev = cur;
        if (converged) break;
    }
    out.step = 2.0 * span / n;
    out.value = prev / (alpha * p.R0);
    return out;
}

} // namespace

KinkEnergyReport kink_energy(const MTParameters& p, double v) {
    const double v0 = p.sound_speed();
    if (std::abs(v) >= v0)
        throw SupersonicFrame("kink velocity " + std::to_string(v) +
                              " m/s is at or above the sound speed");

    KinkEnergyReport rep;

    const double alpha_v = std::sqrt(p.A / (p.M * (v0 * v0 - v * v)));
    const double c1 = 2.0 * kSqrt2 / 3.0;
    const double c2 = kSqrt2 / 3.0;

    rep.closed_form.binding = c1 * p.A * p.A / p.B + c2 * p.k * p.A / p.B;
    rep.closed_form.effective_mass =
        (4.0 / (3.0 * kSqrt2)) * p.M * p.A * alpha_v / (p.R0 * p.B);
    rep.closed_form.kinetic = 0.5 * rep.closed_form.effective_mass * v * v;
    rep.closed_form.total = rep.closed_form.binding + rep.closed_form.kinetic;

    const ProfileIntegral rest = integrate_profile_energy(p, 0.0);
    const ProfileIntegral moving = integrate_profile_energy(p, v);
    rep.integrated_rest = rest.value;
    rep.integrated_total = moving.value;
    rep.integration_step = moving.step;
    rep.refinement_levels = moving.levels;
    rep.closed_form_rel_dev =
        std::abs(rep.closed_form.binding - rep.integrated_rest) / rep.integrated_rest;
    rep.large_deviation = rep.closed_form_rel_dev > 0.20;
    return rep;
}

double transfer_time(double length, double v) {
    if (!(length > 0))
        throw ValidationError("transfer length must be positive, got " +
                              std::to_string(length));
    if (v == 0.0) throw ZeroVelocity("transfer time undefined at v = 0");
    return length / std::abs(v);
}

} // namespace mtk
