#include "mtkink/lattice.hpp"

#include <cmath>
#include <string>

#include "mtkink/errors.hpp"

namespace mtk {

namespace {

void validate_grid(const Grid1D& g) {
    if (g.n < 16)
        throw ValidationError("grid needs at least 16 sites, got " + std::to_string(g.n));
    if (!(g.dx > 0))
        throw ValidationError("grid spacing must be positive");
}

double well(double u, double sigma) {
    return 0.25 * u * u * u * u - 0.5 * u * u - sigma * u;
}

// Force -dH/du at every site: u_chichi + u - u^3 + sigma. Returns the sum of
// the field as a cheap finiteness witness.
double forces(const LatticeState& s, std::vector<double>& F) {
    const int n = s.grid.n;
    const double inv_dx2 = 1.0 / (s.grid.dx * s.grid.dx);
    const std::vector<double>& u = s.u;
    double watch = 0;

    auto local = [&](double ui) { return ui - ui * ui * ui + s.sigma; };

    if (s.grid.bc == BoundaryKind::periodic) {
        for (int i = 0; i < n; ++i) {
            const double up = u[(i + 1) % n];
            const double um = u[(i + n - 1) % n];
            F[i] = (up - 2.0 * u[i] + um) * inv_dx2 + local(u[i]);
            watch += u[i];
        }
    } else {
        // Dirichlet: end sites are pinned, their force is never used.
        F[0] = 0;
        F[n - 1] = 0;
        for (int i = 1; i < n - 1; ++i) {
            F[i] = (u[i + 1] - 2.0 * u[i] + u[i - 1]) * inv_dx2 + local(u[i]);
            watch += u[i];
        }
    }
    return watch;
}

} // namespace

LatticeState init_kink(const Grid1D& grid, double sigma, double rho_tilde,
                       double v_init, FrontOrientation o) {
    validate_grid(grid);
    if (std::abs(v_init) >= 1.0)
        throw SupersonicFrame("initial front velocity " + std::to_string(v_init) +
                              " must satisfy |v| < 1 (units of the wave speed)");
    if (rho_tilde < 0)
        throw ValidationError("rho_tilde must be >= 0");

    const KinkSolution prof = kink_profile(sigma, o);

    const double width = 1.0 / prof.c2;
    if (width < 4.0 * grid.dx)
        throw UnderResolved("kink width " + std::to_string(width) +
                            " is under four grid spacings (dx = " +
                            std::to_string(grid.dx) + ")");

    LatticeState s;
    s.grid = grid;
    s.sigma = sigma;
    s.rho_tilde = rho_tilde;
    s.u.resize(grid.n);
    s.ut.resize(grid.n);
    s.front_level = 0.5 * (prof.roots.a + prof.roots.b);

    const double g = 1.0 / std::sqrt(1.0 - v_init * v_init);
    for (int i = 0; i < grid.n; ++i) {
        const double xi = g * grid.x(i);
        s.u[i] = prof.psi(xi);
        s.ut[i] = -v_init * g * prof.dpsi(xi);
    }
    if (grid.bc == BoundaryKind::dirichlet) {
        s.ut[0] = 0;
        s.ut[grid.n - 1] = 0;
    }

    s.well_offset = std::min(well(prof.roots.a, sigma), well(prof.roots.b, sigma));
    return s;
}

void step(LatticeState& s, double dt) {
    const double dx = s.grid.dx;
    if (!(dt > 0)) throw ValidationError("dt must be positive");
    if (dt > 0.5 * dx + 1e-15 * dx)
        throw CFLViolation("dt = " + std::to_string(dt) +
                           " exceeds the stability bound 0.5 dx = " +
                           std::to_string(0.5 * dx));

    const int n = s.grid.n;
    const int lo = s.grid.bc == BoundaryKind::dirichlet ? 1 : 0;
    const int hi = s.grid.bc == BoundaryKind::dirichlet ? n - 1 : n;
    const double half = 0.5 * dt;
    const double damp = 1.0 / (1.0 + half * s.rho_tilde);

    static thread_local std::vector<double> F;
    F.resize(n);

    forces(s, F);
    for (int i = lo; i < hi; ++i) s.ut[i] = (s.ut[i] + half * F[i]) * damp;
    for (int i = lo; i < hi; ++i) s.u[i] += dt * s.ut[i];

    const double watch = forces(s, F);
    for (int i = lo; i < hi; ++i) s.ut[i] = (s.ut[i] + half * F[i]) * damp;

    if (!std::isfinite(watch))
        throw NonFinite("field became non-finite at t = " + std::to_string(s.t));

    s.t += dt;
    s.steps += 1;
}

FrontTrack evolve(LatticeState& s, double t_end, double dt, int stride,
                  const std::function<void(const LatticeState&)>& observer) {
    if (stride < 1) throw ValidationError("sample stride must be >= 1");
    FrontTrack track;
    track.level = s.front_level;

    auto sample = [&]() {
        track.t.push_back(s.t);
        track.x.push_back(front_position(s));
        if (observer) observer(s);
    };

    sample();
    long k = 0;
    while (s.t < t_end - 0.5 * dt) {
        step(s, dt);
        if (++k % stride == 0) sample();
    }
    if (k % stride != 0) sample();
    return track;
}

double front_position(const LatticeState& s) {
    return front_position(s, s.front_level);
}

double front_position(const LatticeState& s, double level) {
    const int n = s.grid.n;
    int found = 0;
    double pos = 0, second = 0;
    for (int i = 0; i + 1 < n; ++i) {
        const double l = s.u[i] - level;
        const double r = s.u[i + 1] - level;
        double here;
        if (l == 0.0)
            here = s.grid.x(i);
        else if (l * r < 0.0)
            here = s.grid.x(i) + s.grid.dx * (l / (l - r));
        else
            continue;
        if (found == 0)
            pos = here;
        else if (found == 1)
            second = here;
        ++found;
    }
    if (s.u[n - 1] == level) {
        if (found == 0)
            pos = s.grid.x(n - 1);
        else if (found == 1)
            second = s.grid.x(n - 1);
        ++found;
    }

    if (found == 0)
        throw NoFront("field never crosses level " + std::to_string(level));
    if (found > 1)
        throw MultipleCrossings("field crosses level " + std::to_string(level) +
                                " " + std::to_string(found) + " times (first at " +
                                std::to_string(pos) + ", next at " +
                                std::to_string(second) + ")");
    return pos;
}

SpeedFit measure_speed(const FrontTrack& track, double discard_fraction) {
    if (discard_fraction < 0 || discard_fraction >= 1)
        throw ValidationError("discard fraction must be in [0, 1)");
    const int total = static_cast<int>(track.t.size());
    const int start = static_cast<int>(total * discard_fraction);
    const int m = total - start;
    if (m < 10)
        throw InsufficientSamples("speed fit needs >= 10 samples after the transient "
                                  "discard, have " + std::to_string(m));

    double st = 0, sx = 0;
    for (int i = start; i < total; ++i) {
        st += track.t[i];
        sx += track.x[i];
    }
    const double mt = st / m, mx = sx / m;
    double stt = 0, stx = 0;
    for (int i = start; i < total; ++i) {
        const double dt = track.t[i] - mt;
        stt += dt * dt;
        stx += dt * (track.x[i] - mx);
    }
    if (stt == 0) throw InsufficientSamples("all samples at the same time");

    SpeedFit fit;
    fit.speed = stx / stt;
    fit.samples_used = m;

    double ssr = 0;
    for (int i = start; i < total; ++i) {
        const double r = (track.x[i] - mx) - fit.speed * (track.t[i] - mt);
        ssr += r * r;
    }
    fit.std_error = m > 2 ? std::sqrt(ssr / (m - 2) / stt) : 0.0;
    return fit;
}

double total_energy(const LatticeState& s) {
    const int n = s.grid.n;
    const double dx = s.grid.dx;
    const bool periodic = s.grid.bc == BoundaryKind::periodic;

    double site = 0;
    for (int i = 0; i < n; ++i) {
        const double density =
            0.5 * s.ut[i] * s.ut[i] + well(s.u[i], s.sigma) - s.well_offset;
        const double w = (!periodic && (i == 0 || i == n - 1)) ? 0.5 : 1.0;
        site += w * density;
    }

    double grad = 0;
    const int links = periodic ? n : n - 1;
    for (int i = 0; i < links; ++i) {
        const double diff = s.u[(i + 1) % n] - s.u[i];
        grad += diff * diff;
    }

    return dx * site + 0.5 * grad / dx;
}

} // namespace mtk
