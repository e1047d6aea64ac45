#include "mtkink/tdva.hpp"

#include <cmath>
#include <string>

#include "mtkink/errors.hpp"

namespace mtk {

namespace {
constexpr int kMaxDegree = 12;

void trim(std::vector<double>& c) {
    while (c.size() > 1 && c.back() == 0.0) c.pop_back();
}
} // namespace

Polynomial::Polynomial(std::vector<double> ascending) : c_(std::move(ascending)) {
    if (c_.empty()) c_.push_back(0.0);
    trim(c_);
    if (degree() > kMaxDegree)
        throw ValidationError("polynomial degree " + std::to_string(degree()) +
                              " exceeds the supported maximum " +
                              std::to_string(kMaxDegree));
}

Polynomial Polynomial::quartic_well(double sigma_drive) {
    return Polynomial({0.0, -sigma_drive, -0.5, 0.0, 0.25});
}

double Polynomial::operator()(double z) const {
    double acc = 0;
    for (int i = static_cast<int>(c_.size()) - 1; i >= 0; --i) acc = acc * z + c_[i];
    return acc;
}

Polynomial Polynomial::derivative(int order) const {
    if (order < 0) throw ValidationError("derivative order must be >= 0");
    std::vector<double> c = c_;
    for (int pass = 0; pass < order; ++pass) {
        if (c.size() == 1) {
            c = {0.0};
            break;
        }
        std::vector<double> d(c.size() - 1);
        for (size_t i = 1; i < c.size(); ++i) d[i - 1] = c[i] * static_cast<double>(i);
        c = std::move(d);
    }
    return Polynomial(c);
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    std::vector<double> c(std::max(c_.size(), o.c_.size()), 0.0);
    for (size_t i = 0; i < c_.size(); ++i) c[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) c[i] += o.c_[i];
    return Polynomial(c);
}

Polynomial Polynomial::operator*(double s) const {
    std::vector<double> c = c_;
    for (double& v : c) v *= s;
    return Polynomial(c);
}

SmearingWidth::SmearingWidth(double v) : value(v) {
    if (!(v >= 0))
        throw ValidationError("smearing width must be >= 0, got " + std::to_string(v));
}

Polynomial gaussian_smear(const Polynomial& U, SmearingWidth Sigma, int n) {
    if (n < 0) throw ValidationError("derivative order must be >= 0");
    Polynomial out = U.derivative(n);
    Polynomial term = out;
    double weight = 1.0;
    for (int k = 1; n + 2 * k <= U.degree(); ++k) {
        weight *= Sigma.value / (2.0 * k);
        term = term.derivative(2);
        if (term.degree() == 0 && term.coefficients()[0] == 0.0) break;
        out = out + term * weight;
    }
    return out;
}

// --- quantum kink -----------------------------------------------------------

double QuantumKink::u(double xi) const {
    const double m = std::sqrt(mass2);
    return m * base.psi(m * xi);
}

double QuantumKink::du(double xi) const {
    const double m = std::sqrt(mass2);
    return m * m * base.dpsi(m * xi);
}

double QuantumKink::ddu(double xi) const {
    const double m = std::sqrt(mass2);
    return m * m * m * base.ddpsi(m * xi);
}

double QuantumKink::residual(double xi) const {
    const double val = u(xi);
    return ddu(xi) + rho * du(xi) - val * val * val + mass2 * val + sigma_drive;
}

QuantumKink modified_soliton_solve(SmearingWidth Sigma, double sigma_drive,
                                   FrontOrientation o) {
    const double mass2 = 1.0 - 3.0 * Sigma.value;
    if (mass2 <= 1e-12)
        throw SymmetryRestored("smeared mass term 1 - 3 Sigma = " +
                               std::to_string(mass2) +
                               " <= 0: the double well is gone, no kink exists");

    QuantumKink q;
    q.Sigma = Sigma.value;
    q.mass2 = mass2;
    q.sigma_drive = sigma_drive;
    const double m = std::sqrt(mass2);
    q.sigma_effective = sigma_drive / (mass2 * m);
    q.base = kink_profile(q.sigma_effective, o);
    q.rho = m * q.base.rho;
    q.vacuum_minus = m * q.base.psi_minus;
    q.vacuum_plus = m * q.base.psi_plus;
    q.width_factor = std::sqrt(mass2 / 2.0);
    return q;
}

// --- kernels ----------------------------------------------------------------

namespace {

Eigen::MatrixXd minus_laplacian(const Grid1D& g) {
    const int n = g.n;
    const double inv_dx2 = 1.0 / (g.dx * g.dx);
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        T(i, i) = 2.0 * inv_dx2;
        if (i + 1 < n) {
            T(i, i + 1) = -inv_dx2;
            T(i + 1, i) = -inv_dx2;
        }
    }
    if (g.bc == BoundaryKind::periodic) {
        T(0, n - 1) += -inv_dx2;
        T(n - 1, 0) += -inv_dx2;
    }
    return T;
}

} // namespace

KernelPair free_vacuum_kernels(const Grid1D& grid, double mass2) {
    if (grid.n < 16)
        throw ValidationError("grid needs at least 16 sites, got " + std::to_string(grid.n));
    if (!(grid.dx > 0)) throw ValidationError("grid spacing must be positive");

    Eigen::MatrixXd H = minus_laplacian(grid);
    for (int i = 0; i < grid.n; ++i) H(i, i) += mass2;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
    if (es.info() != Eigen::Success)
        throw SingularKernel("eigendecomposition of the lattice operator failed");

    Eigen::VectorXd inv2w(grid.n);
    for (int i = 0; i < grid.n; ++i) {
        const double lambda = es.eigenvalues()(i);
        if (!(lambda > 0))
            throw SingularKernel("mode with omega^2 = " + std::to_string(lambda) +
                                 " <= 0: free vacuum kernel undefined");
        inv2w(i) = 1.0 / (2.0 * std::sqrt(lambda));
    }

    KernelPair k;
    k.grid = grid;
    k.mass2 = mass2;
    k.G0 = (es.eigenvectors() * inv2w.asDiagonal() * es.eigenvectors().transpose()) /
           grid.dx;
    k.G = k.G0;
    return k;
}

KernelPair with_uniform_width(const KernelPair& base, SmearingWidth Sigma) {
    KernelPair k = base;
    k.G = base.G0 +
          Sigma.value * Eigen::MatrixXd::Identity(base.grid.n, base.grid.n);
    return k;
}

std::vector<double> smearing_widths(const KernelPair& k) {
    std::vector<double> w(k.grid.n);
    for (int i = 0; i < k.grid.n; ++i) {
        double v = k.G(i, i) - k.G0(i, i);
        if (v < 0 && v > -1e-12) v = 0;  // roundoff guard at the free point
        if (v < 0)
            throw ValidationError("negative smearing width " + std::to_string(v) +
                                  " at site " + std::to_string(i));
        w[i] = v;
    }
    return w;
}

MeanFieldState MeanFieldState::make(const KernelPair& kernels) {
    MeanFieldState s;
    s.grid = kernels.grid;
    s.C.assign(kernels.grid.n, 0.0);
    s.D.assign(kernels.grid.n, 0.0);
    s.kernels = kernels;
    s.Pi = Eigen::MatrixXd::Zero(kernels.grid.n, kernels.grid.n);
    return s;
}

// --- energy -----------------------------------------------------------------

namespace {

// Inverse through Cholesky; throws SingularKernel when the matrix is not SPD
// at working precision.
Eigen::MatrixXd spd_inverse(const Eigen::MatrixXd& K, const char* name) {
    Eigen::LLT<Eigen::MatrixXd> llt(K);
    if (llt.info() != Eigen::Success)
        throw SingularKernel(std::string(name) +
                             " is not positive definite at working precision");
    const auto& L = llt.matrixLLT();
    double dmin = L(0, 0), dmax = L(0, 0);
    for (int i = 0; i < K.rows(); ++i) {
        dmin = std::min(dmin, L(i, i));
        dmax = std::max(dmax, L(i, i));
    }
    if (!(dmin > 0) || (dmin / dmax) * (dmin / dmax) < 1e-15)
        throw SingularKernel(std::string(name) + " is numerically singular "
                             "(condition beyond working precision)");
    return llt.solve(Eigen::MatrixXd::Identity(K.rows(), K.cols()));
}

double site_weight(const Grid1D& g, int i) {
    if (g.bc == BoundaryKind::periodic) return 1.0;
    return (i == 0 || i == g.n - 1) ? 0.5 : 1.0;
}

// Second-difference coincidence limit summed over links:
// sum_links (K(i+1,i+1) - 2 K(i,i+1) + K(i,i)) / dx.
double gradient_trace(const Eigen::MatrixXd& K, const Grid1D& g) {
    const int n = g.n;
    const int links = g.bc == BoundaryKind::periodic ? n : n - 1;
    double acc = 0;
    for (int i = 0; i < links; ++i) {
        const int j = (i + 1) % n;
        acc += K(j, j) - 2.0 * K(i, j) + K(i, i);
    }
    return acc / g.dx;
}

} // namespace

double energy_functional(const MeanFieldState& s, const Polynomial& U) {
    const Grid1D& g = s.grid;
    const int n = g.n;
    const double dx = g.dx;

    const std::vector<double> widths = smearing_widths(s.kernels);

    // classical sector: D^2/2 + M^(0)[C] on sites, gradient on links
    double site = 0;
    for (int i = 0; i < n; ++i) {
        const Polynomial M0 = gaussian_smear(U, SmearingWidth(widths[i]), 0);
        site += site_weight(g, i) * (0.5 * s.D[i] * s.D[i] + M0(s.C[i]));
    }
    double grad = 0;
    const int links = g.bc == BoundaryKind::periodic ? n : n - 1;
    for (int i = 0; i < links; ++i) {
        const double diff = s.C[(i + 1) % n] - s.C[i];
        grad += diff * diff;
    }
    double total = dx * site + 0.5 * grad / dx;

    // kernel sector; all three G terms carry a -G0 counterpart so the free
    // vacuum scores zero identically.
    const Eigen::MatrixXd Ginv = spd_inverse(s.kernels.G, "G");
    const Eigen::MatrixXd G0inv = spd_inverse(s.kernels.G0, "G0");

    double diag_part = 0;
    for (int i = 0; i < n; ++i)
        diag_part += site_weight(g, i) * (Ginv(i, i) - G0inv(i, i));
    total += diag_part / (8.0 * dx);

    if (s.Pi.size() > 0 && s.Pi.cwiseAbs().maxCoeff() > 0) {
        const Eigen::MatrixXd PGP = s.Pi * s.kernels.G * s.Pi;
        double pi_part = 0;
        for (int i = 0; i < n; ++i) pi_part += site_weight(g, i) * PGP(i, i);
        total += 2.0 * dx * dx * dx * pi_part;
    }

    total += 0.5 * (gradient_trace(s.kernels.G, g) - gradient_trace(s.kernels.G0, g));

    return total;
}

std::vector<double> energy_density(const MeanFieldState& s, const Polynomial& U) {
    const Grid1D& g = s.grid;
    const int n = g.n;
    const double dx = g.dx;
    const std::vector<double> widths = smearing_widths(s.kernels);

    const Eigen::MatrixXd Ginv = spd_inverse(s.kernels.G, "G");
    const Eigen::MatrixXd G0inv = spd_inverse(s.kernels.G0, "G0");
    const bool has_pi = s.Pi.size() > 0 && s.Pi.cwiseAbs().maxCoeff() > 0;
    Eigen::MatrixXd PGP;
    if (has_pi) PGP = s.Pi * s.kernels.G * s.Pi;

    std::vector<double> rho(n, 0.0);
    for (int i = 0; i < n; ++i) {
        const Polynomial M0 = gaussian_smear(U, SmearingWidth(widths[i]), 0);
        rho[i] = 0.5 * s.D[i] * s.D[i] + M0(s.C[i]) +
                 (Ginv(i, i) - G0inv(i, i)) / (8.0 * dx * dx);
        if (has_pi) rho[i] += 2.0 * dx * dx * PGP(i, i);
    }

    // split each link's gradient contributions onto its endpoints
    const int links = g.bc == BoundaryKind::periodic ? n : n - 1;
    for (int i = 0; i < links; ++i) {
        const int j = (i + 1) % n;
        const double cdiff = s.C[j] - s.C[i];
        const double kdiff = (s.kernels.G(j, j) - 2.0 * s.kernels.G(i, j) +
                              s.kernels.G(i, i)) -
                             (s.kernels.G0(j, j) - 2.0 * s.kernels.G0(i, j) +
                              s.kernels.G0(i, i));
        const double link_density =
            0.5 * cdiff * cdiff / (dx * dx) + 0.5 * kdiff / (dx * dx);
        rho[i] += 0.5 * link_density;
        rho[j] += 0.5 * link_density;
    }
    return rho;
}

// --- dynamics ---------------------------------------------------------------

SmearedForce make_smeared_force(const Polynomial& U, const std::vector<double>& widths) {
    SmearedForce f;
    f.M1.reserve(widths.size());
    for (double w : widths) f.M1.push_back(gaussian_smear(U, SmearingWidth(w), 1));
    return f;
}

void cd_hamilton_step(MeanFieldState& s, const SmearedForce& f, double dt) {
    const Grid1D& g = s.grid;
    const int n = g.n;
    if (static_cast<int>(f.M1.size()) != n)
        throw ValidationError("smeared force has wrong site count");
    if (!(dt > 0)) throw ValidationError("dt must be positive");
    if (dt > 0.5 * g.dx + 1e-15 * g.dx)
        throw CFLViolation("dt = " + std::to_string(dt) +
                           " exceeds the stability bound 0.5 dx");

    const int lo = g.bc == BoundaryKind::dirichlet ? 1 : 0;
    const int hi = g.bc == BoundaryKind::dirichlet ? n - 1 : n;
    const double inv_dx2 = 1.0 / (g.dx * g.dx);
    const double half = 0.5 * dt;

    static thread_local std::vector<double> F;
    F.resize(n);

    auto forces = [&]() {
        double watch = 0;
        for (int i = lo; i < hi; ++i) {
            const double up = s.C[(i + 1) % n];
            const double um = s.C[(i + n - 1) % n];
            F[i] = (up - 2.0 * s.C[i] + um) * inv_dx2 - f.M1[i](s.C[i]);
            watch += s.C[i];
        }
        return watch;
    };

    forces();
    for (int i = lo; i < hi; ++i) s.D[i] += half * F[i];
    for (int i = lo; i < hi; ++i) s.C[i] += dt * s.D[i];
    const double watch = forces();
    for (int i = lo; i < hi; ++i) s.D[i] += half * F[i];

    if (!std::isfinite(watch))
        throw NonFinite("mean field became non-finite at t = " + std::to_string(s.t));
    s.t += dt;
}

void cd_hamilton_step(MeanFieldState& s, const Polynomial& U, double dt) {
    const SmearedForce f = make_smeared_force(U, smearing_widths(s.kernels));
    cd_hamilton_step(s, f, dt);
}

} // namespace mtk
