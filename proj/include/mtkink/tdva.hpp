#pragma once

#include <vector>

#include <Eigen/Dense>

#include "mtkink/lattice.hpp"
#include "mtkink/traveling_wave.hpp"

namespace mtk {

// Real polynomial with ascending coefficients, hard-capped at degree 12
// (plenty for a quartic well and its Gaussian-smeared descendants).
class Polynomial {
public:
    Polynomial() : c_{0.0} {}
    explicit Polynomial(std::vector<double> ascending);

    static Polynomial quartic_well(double sigma_drive);  // z^4/4 - z^2/2 - sigma z

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<double>& coefficients() const { return c_; }

    double operator()(double z) const;       // Horner
    Polynomial derivative(int order = 1) const;

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator*(double s) const;

private:
    std::vector<double> c_;
};

// Gaussian smearing width Sigma = G(x,x) - G0(x,x) >= 0.
struct SmearingWidth {
    double value = 0;
    SmearingWidth() = default;
    explicit SmearingWidth(double v);  // ValidationError if v < 0
};

// M^(n)[U](z) = sum_k Sigma^k / (2^k k!) U^(n+2k)(z): the exact finite-sum
// form of exp((Sigma/2) d^2/dz^2) applied to the n-th derivative, i.e. the
// Gaussian expectation E[U^(n)(z + w)], w ~ N(0, Sigma).
Polynomial gaussian_smear(const Polynomial& U, SmearingWidth Sigma, int n = 0);

// Kink of the smeared quartic equation
//   u'' + rho u' - u^3 + (1 - 3 Sigma) u + sigma_drive = 0,
// obtained from the bare profile by the exact rescaling u = m psi(m xi),
// m = sqrt(1 - 3 Sigma), sigma_eff = sigma_drive / m^3. Vacua sit at
// m * (outer roots); for sigma_drive = 0 they are +-sqrt(1 - 3 Sigma) and
// the width factor is sqrt((1 - 3 Sigma)/2).
struct QuantumKink {
    double Sigma = 0;
    double mass2 = 0;            // 1 - 3 Sigma
    double sigma_effective = 0;  // sigma_drive / mass2^(3/2)
    double sigma_drive = 0;
    double vacuum_minus = 0;     // u at xi -> -infinity
    double vacuum_plus = 0;      // u at xi -> +infinity
    double width_factor = 0;     // sqrt(mass2 / 2)
    double rho = 0;              // selected friction parameter, unscaled xi
    KinkSolution base;           // canonical profile at sigma_effective

    double u(double xi) const;
    double du(double xi) const;
    double ddu(double xi) const;
    // u'' + rho u' - u^3 + mass2 u + sigma_drive, exact derivatives.
    double residual(double xi) const;
};

// Throws SymmetryRestored when 1 - 3 Sigma <= 0 (within roundoff): the
// smeared well has lost its minima and no kink exists.
QuantumKink modified_soliton_solve(SmearingWidth Sigma, double sigma_drive = 0,
                                   FrontOrientation o = FrontOrientation::forward);

// Two-point kernels on the grid, stored as kernel matrices: K(i,j) ~ K(x_i,
// x_j). G and G0 must be symmetric positive definite; Pi symmetric.
struct KernelPair {
    Grid1D grid;
    double mass2 = 0;
    Eigen::MatrixXd G;
    Eigen::MatrixXd G0;
};

// Free massive vacuum kernel by spectral decomposition of the discrete
// Laplacian: G0 = (1/dx) V diag(1/(2 omega)) V^T, omega = sqrt(lambda +
// mass2) over Laplacian eigenvalues lambda. G starts equal to G0. Throws
// SingularKernel if any omega is not strictly positive.
KernelPair free_vacuum_kernels(const Grid1D& grid, double mass2);

// Same pair with the fluctuation diagonal lifted: G = G0 + Sigma I, so every
// site carries smearing width Sigma.
KernelPair with_uniform_width(const KernelPair& base, SmearingWidth Sigma);

// Per-site smearing widths G(i,i) - G0(i,i).
std::vector<double> smearing_widths(const KernelPair& k);

struct MeanFieldState {
    Grid1D grid;
    double t = 0;
    std::vector<double> C;   // mean field
    std::vector<double> D;   // its conjugate momentum density
    KernelPair kernels;
    Eigen::MatrixXd Pi;      // kernel momentum, symmetric (zero when absent)

    static MeanFieldState make(const KernelPair& kernels);
};

// Energy of the Gaussian variational state,
//   int dx [ D^2/2 + C_x^2/2 + M^(0)[C]
//            + (1/8) <x|G^-1|x> + 2 (Pi G Pi)(x,x) + (1/2) dxdy G|coinc
//            - (1/8) <x|G0^-1|x> - (1/2) dxdy G0|coinc ],
// transcribed with trapezoid site weights, link gradients and discrete
// second-difference coincidence limits, so that the classical sector matches
// lattice total_energy term by term. The built-in G0 subtraction makes the
// configuration C = D = 0, G = G0, Pi = 0 score exactly zero (for U with
// U(0) = 0). Throws SingularKernel when G cannot be factorized.
double energy_functional(const MeanFieldState& s, const Polynomial& U);

// Integrand of the above per site (sums to the total under site weights).
std::vector<double> energy_density(const MeanFieldState& s, const Polynomial& U);

// Per-site smeared force polynomials M^(1), frozen-kernel sector.
struct SmearedForce {
    std::vector<Polynomial> M1;
};
SmearedForce make_smeared_force(const Polynomial& U, const std::vector<double>& widths);

// Symplectic kick-drift-kick update of (C, D) under
//   dD/dt = C_xx - M^(1)[C],  dC/dt = D,
// with the kernels held frozen. Identical arithmetic to the lattice step at
// rho_tilde = 0, so the Sigma = 0 limit reproduces it exactly.
void cd_hamilton_step(MeanFieldState& s, const SmearedForce& f, double dt);
void cd_hamilton_step(MeanFieldState& s, const Polynomial& U, double dt);

} // namespace mtk
