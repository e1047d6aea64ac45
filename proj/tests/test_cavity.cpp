#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>
#include <set>

#include "mtkink/cavity.hpp"
#include "mtkink/errors.hpp"

using namespace mtk;

namespace {
const PhysicalConstants kC{};

bool close_rel(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}
}  // namespace

TEST_CASE("pair interaction arithmetic") {
    const double eps = 10.0 * kC.eps0;
    const double p1 = 3e-30, p2 = 7e-30, r = 4e-10;
    const DipoleVector di{p1, 0, 0};
    const DipoleVector dj{p2, 0, 0};

    // collinear head-to-tail: factor -2 (attractive)
    const double e_par = dipole_dipole_energy(di, dj, Vec3{r, 0, 0}, eps);
    const double scale = p1 * p2 / (4.0 * M_PI * eps * r * r * r);
    CHECK(e_par == doctest::Approx(-2.0 * scale).epsilon(1e-13));

    // side by side: factor +1 (repulsive)
    const double e_perp = dipole_dipole_energy(di, dj, Vec3{0, r, 0}, eps);
    CHECK(e_perp == doctest::Approx(scale).epsilon(1e-13));

    // crossed: the trace term and the projector term both vanish
    const double e_cross =
        dipole_dipole_energy(di, DipoleVector{0, p2, 0}, Vec3{0, 0, r}, eps);
    CHECK(std::abs(e_cross) < 1e-16 * scale);
}

TEST_CASE("pair interaction symmetries") {
    std::mt19937 rng(909);
    std::uniform_real_distribution<double> comp(-5e-30, 5e-30);
    std::uniform_real_distribution<double> pos(-6e-10, 6e-10);
    const double eps = kC.eps0;
    for (int trial = 0; trial < 50; ++trial) {
        const DipoleVector a{comp(rng), comp(rng), comp(rng)};
        const DipoleVector b{comp(rng), comp(rng), comp(rng)};
        Vec3 r{pos(rng), pos(rng), pos(rng)};
        if (r.norm() < 1e-10) r.x += 3e-10;

        const double e = dipole_dipole_energy(a, b, r, eps);
        CHECK(close_rel(dipole_dipole_energy(b, a, r, eps), e, 1e-13));
        CHECK(close_rel(dipole_dipole_energy(a, b, Vec3{-r.x, -r.y, -r.z}, eps),
                        e, 1e-13));
        // bilinear in each dipole
        const DipoleVector a3{3 * a.x, 3 * a.y, 3 * a.z};
        CHECK(close_rel(dipole_dipole_energy(a3, b, r, eps), 3 * e, 1e-13));
        // r^-3 envelope
        const Vec3 r2{2 * r.x, 2 * r.y, 2 * r.z};
        CHECK(close_rel(dipole_dipole_energy(a, b, r2, eps), e / 8.0, 1e-12));
        // halving the screening doubles the energy
        CHECK(close_rel(dipole_dipole_energy(a, b, r, 0.5 * eps), 2 * e, 1e-13));
    }
    CHECK_THROWS_AS(
        dipole_dipole_energy(DipoleVector{1e-30, 0, 0}, DipoleVector{1e-30, 0, 0},
                             Vec3{0, 0, 0}, eps),
        ZeroSeparation);
}

TEST_CASE("thermal crossover radius balances the collinear interaction") {
    const double eps = 10.0 * kC.eps0, T = 300.0;
    const double p1 = 6.4e-30, p2 = 2.9e-28;
    const double r = thermal_crossover_radius(p1, p2, eps, T);
    const double e = dipole_dipole_energy(DipoleVector{p1, 0, 0},
                                          DipoleVector{p2, 0, 0},
                                          Vec3{r, 0, 0}, eps);
    CHECK(std::abs(e) == doctest::Approx(kC.k_B * T).epsilon(1e-12));
    CHECK_THROWS_AS(thermal_crossover_radius(0.0, p2, eps, T), ValidationError);
}

TEST_CASE("dimer dipole estimate is plain screened charge displacement") {
    const DipoleEstimate d = dimer_dipole_estimate(36.0, 4e-9, 80.0);
    const double expect = 36.0 * kC.e_charge * 4e-9 / 80.0;
    CHECK(d.si == doctest::Approx(expect).epsilon(1e-15));
    CHECK(d.si == doctest::Approx(2.8839179412e-28).epsilon(1e-10));
    CHECK(d.debye == doctest::Approx(d.si / kC.debye).epsilon(1e-15));
    CHECK(d.debye == doctest::Approx(86.457709501025292).epsilon(1e-12));
}

TEST_CASE("alignment threshold dipole is k_B T over E") {
    const DipoleEstimate d = min_alignment_dipole(2.1e5, 294.0);
    CHECK(d.si == doctest::Approx(kC.k_B * 294.0 / 2.1e5).epsilon(1e-15));
    CHECK(d.debye == doctest::Approx(5794.7158566272146).epsilon(1e-12));
}

TEST_CASE("aligned-dimer counting rounds half up") {
    const double p15 = 15.0 * kC.debye;
    // 3.5 um / 8 nm is exactly 437.5 in real arithmetic
    CHECK(mt_total_dipole(3.5e-6, 12, 8e-9, p15).n_dimers == 5256);
    CHECK(mt_total_dipole(3.496e-6, 12, 8e-9, p15).n_dimers == 5244);
    CHECK(mt_total_dipole(1e-6, 13, 8e-9, p15).n_dimers == 1625);

    const TotalDipole direct = mt_total_dipole(5280, p15);
    CHECK(direct.n_dimers == 5280);
    CHECK(direct.debye == doctest::Approx(79200.0).epsilon(1e-12));
    CHECK(direct.si == doctest::Approx(5280.0 * p15).epsilon(1e-15));
}

TEST_CASE("vacuum field amplitude in both conventions") {
    const CavityParameters p = default_cavity_parameters();
    const double eps = p.eps_rel * kC.eps0;

    const VacuumField si =
        vacuum_field_amplitude(p.omega_c, p.eps_rel, p.volume, FieldConvention::si);
    CHECK(si.si ==
          doctest::Approx(std::sqrt(kC.hbar * p.omega_c / (2.0 * eps * p.volume)))
              .epsilon(1e-14));
    CHECK(si.si == doctest::Approx(50273.966288584452).epsilon(1e-12));
    CHECK(si.primary == si.si);

    const VacuumField ga = vacuum_field_amplitude(p.omega_c, p.eps_rel, p.volume,
                                                  FieldConvention::gaussian_as_printed);
    CHECK(ga.gaussian_as_printed ==
          doctest::Approx(std::sqrt(2.0 * M_PI * kC.hbar * p.omega_c / (eps * p.volume)))
              .epsilon(1e-14));
    CHECK(ga.gaussian_as_printed == doctest::Approx(178216.57029699121).epsilon(1e-12));
    CHECK(ga.primary == ga.gaussian_as_printed);

    // the printed convention is sqrt(4 pi) hotter than the SI one
    CHECK(ga.gaussian_as_printed / si.si ==
          doctest::Approx(std::sqrt(4.0 * M_PI)).epsilon(1e-13));

    CHECK_THROWS_AS(vacuum_field_amplitude(p.omega_c, p.eps_rel, 0.0,
                                           FieldConvention::si),
                    ValidationError);
}

TEST_CASE("single-emitter coupling") {
    const double lam = rabi_coupling(1e4, 2.8839179412e-28, 0.2);
    CHECK(lam ==
          doctest::Approx(1e4 * 2.8839179412e-28 * 0.2 / kC.hbar).epsilon(1e-14));
    CHECK(lam == doctest::Approx(5469362815.7142382).epsilon(1e-12));
    CHECK_THROWS_AS(rabi_coupling(1e4, 1e-28, 1.5), ValidationError);
}

TEST_CASE("resonant peaks sit at omega0 plus-minus the collective coupling") {
    CavityParameters p = default_cavity_parameters();
    p.omega_c = p.omega0;  // Delta = 0
    const double lam = 2e9;
    const RabiSpectrum s = rabi_peaks(p, lam);
    const double g = lam * std::sqrt(static_cast<double>(p.n_dimers));
    CHECK(s.omega_plus == doctest::Approx(p.omega0 + g).epsilon(1e-14));
    CHECK(s.omega_minus == doctest::Approx(p.omega0 - g).epsilon(1e-14));
    CHECK(s.weight_plus == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(s.weight_minus == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(s.splitting == doctest::Approx(2.0 * g).epsilon(1e-14));
}

TEST_CASE("uncoupled spectrum is the bare pair") {
    CavityParameters p = default_cavity_parameters();
    const RabiSpectrum s = rabi_peaks(p, 0.0);
    // Delta = omega_c - omega0 = 5e12 here; the dressed pair is
    // {omega0, omega0 - Delta} and the emitter weight is all on omega0
    CHECK(s.omega_plus == doctest::Approx(p.omega0).epsilon(1e-14));
    CHECK(s.omega_minus == doctest::Approx(p.omega0 - s.detuning).epsilon(1e-14));
    CHECK(s.weight_plus == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(s.weight_minus) < 1e-12);
}

TEST_CASE("dressed peaks and weights match a direct eigensolve") {
    std::mt19937 rng(1111);
    std::uniform_real_distribution<double> omega(1e11, 1e13);
    std::uniform_real_distribution<double> loglam(8.0, 12.0);
    std::uniform_int_distribution<long long> ndist(1, 10000);
    std::uniform_int_distribution<int> conv(0, 1);

    for (int trial = 0; trial < 1000; ++trial) {
        CavityParameters p = default_cavity_parameters();
        p.omega0 = omega(rng);
        p.omega_c = omega(rng);
        p.n_dimers = ndist(rng);
        p.convention = conv(rng) ? DetuningConvention::paper
                                 : DetuningConvention::spectroscopic;
        const double lam = std::pow(10.0, loglam(rng));

        const RabiSpectrum s = rabi_peaks(p, lam);
        const double g = lam * std::sqrt(static_cast<double>(p.n_dimers));
        const double Delta = p.detuning();

        Eigen::Matrix2d h;
        h << p.omega0, g, g, p.omega0 - Delta;
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(h);

        CHECK(close_rel(s.omega_minus, es.eigenvalues()(0), 1e-10));
        CHECK(close_rel(s.omega_plus, es.eigenvalues()(1), 1e-10));
        // emitter weights: squared first components of the dressed modes
        const double wminus = es.eigenvectors()(0, 0) * es.eigenvectors()(0, 0);
        const double wplus = es.eigenvectors()(0, 1) * es.eigenvectors()(0, 1);
        CHECK(std::abs(s.weight_minus - wminus) < 1e-10);
        CHECK(std::abs(s.weight_plus - wplus) < 1e-10);
        CHECK(s.weight_plus + s.weight_minus == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(s.omega_plus >= s.omega_minus);
        CHECK(s.splitting ==
              doctest::Approx(s.omega_plus - s.omega_minus).epsilon(1e-13));
        CHECK(s.lambda == lam);
        CHECK(close_rel(s.lambda_collective, g, 1e-14));
    }
}

TEST_CASE("detuning follows the convention flag") {
    CavityParameters p = default_cavity_parameters();
    p.convention = DetuningConvention::paper;
    CHECK(p.detuning() == doctest::Approx(5e12).epsilon(1e-15));
    p.convention = DetuningConvention::spectroscopic;
    CHECK(p.detuning() == doctest::Approx(-5e12).epsilon(1e-15));

    // mirrored detuning mirrors the spectrum around omega0 - Delta/2... the
    // peak gap is insensitive to the sign
    const RabiSpectrum a = rabi_peaks(
        [] {
            CavityParameters q = default_cavity_parameters();
            q.convention = DetuningConvention::paper;
            return q;
        }(),
        3e9);
    const RabiSpectrum b = rabi_peaks(
        [] {
            CavityParameters q = default_cavity_parameters();
            q.convention = DetuningConvention::spectroscopic;
            return q;
        }(),
        3e9);
    CHECK(a.splitting == doctest::Approx(b.splitting).epsilon(1e-13));
    CHECK(a.detuning == -b.detuning);
}

TEST_CASE("quality factor of the default resonator") {
    CHECK(quality_factor(6e12, 1e-4) == 600000000.0);
    CHECK_THROWS_AS(quality_factor(0.0, 1e-4), ValidationError);
}

TEST_CASE("lifetime formula audit") {
    const CavityParameters p = default_cavity_parameters();

    const LifetimeAudit si = dipole_quanta_lifetime(p, UnitSystem::si);
    const double eps = p.eps_rel * kC.eps0;
    const double literal = kC.c_light * kC.hbar * kC.hbar * p.volume /
                           (4.0 * M_PI * p.d_water * p.d_water * eps * p.n_water *
                            p.length);
    CHECK(si.value == doctest::Approx(literal).epsilon(1e-13));
    CHECK(si.evaluated_si == si.value);
    CHECK(si.evaluated_si == doctest::Approx(1.6115955999823899e-17).epsilon(1e-10));

    // the printed expression is not a time in SI units
    CHECK_FALSE(si.pure_time);
    CHECK(si.dim_mass == 3);
    CHECK(si.dim_length == 8);
    CHECK(si.dim_time == -9);
    CHECK(si.dim_current == -4);

    const LifetimeAudit ga = dipole_quanta_lifetime(p, UnitSystem::gaussian);
    CHECK(ga.value == ga.evaluated_gaussian);
    CHECK(ga.evaluated_gaussian == doctest::Approx(1.5876806402067378e-31).epsilon(1e-10));
    CHECK(ga.evaluated_gaussian_over_hbar ==
          doctest::Approx(0.00015055215914296883).epsilon(1e-10));
    // it reads as an action in cgs; dividing by hbar lands on seconds
    CHECK(ga.evaluated_gaussian_over_hbar ==
          doctest::Approx(ga.evaluated_gaussian / 1.054571817e-27).epsilon(1e-12));

    CHECK(si.downstream_default == p.T_r);
}

TEST_CASE("collapse estimate follows the closed formula") {
    const double T_r = 1e-4, lam = 5.5e9, Delta = 5.5e10, t = 1e-4;
    const long long n = 2, N = 1625;
    const CollapseEstimate e = collapse_time(T_r, n, N, lam, Delta, t);

    const double phase = static_cast<double>(N) * n * lam * lam * t / Delta;
    CHECK(e.phase == doctest::Approx(phase).epsilon(1e-13));
    CHECK(e.sin_sq == doctest::Approx(std::sin(phase) * std::sin(phase)).epsilon(1e-12));
    CHECK(e.lower_bound == doctest::Approx(T_r / (2.0 * n * N)).epsilon(1e-15));
    CHECK(e.t_collapse == doctest::Approx(e.lower_bound / e.sin_sq).epsilon(1e-13));

    CHECK_THROWS_AS(collapse_time(T_r, n, N, lam, Delta, 0.0), DivergentCollapse);
    CHECK_THROWS_AS(collapse_time(T_r, n, N, lam, 0.0, t), ValidationError);
    CHECK_THROWS_AS(collapse_time(T_r, 0, N, lam, Delta, t), ValidationError);
}

TEST_CASE("collapse time never beats its lower bound") {
    std::mt19937 rng(1212);
    std::uniform_real_distribution<double> loglam(7.0, 11.0);
    std::uniform_real_distribution<double> ratio(1.5, 200.0);
    std::uniform_real_distribution<double> logt(-6.0, -3.0);
    std::uniform_int_distribution<long long> ndist(1, 20);
    std::uniform_int_distribution<long long> bigN(1, 100000);

    int checked = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const double lam = std::pow(10.0, loglam(rng));
        const long long n = ndist(rng), N = bigN(rng);
        try {
            const CollapseEstimate e =
                collapse_time(1e-4, n, N, lam, ratio(rng) * lam,
                              std::pow(10.0, logt(rng)));
            CHECK(e.t_collapse >= e.lower_bound * (1.0 - 1e-12));
            ++checked;
        } catch (const DivergentCollapse&) {
            // a node: the bound statement is vacuous there
        }
    }
    CHECK(checked > 900);
}

TEST_CASE("witness search walks n then the detuning ratio") {
    const double lam = 5469362815.7142382;
    const CollapseWitness w = collapse_witness_search(1e-4, 1625, lam, 1e-4);
    CHECK(w.n == 1);
    CHECK(w.ratio == 10.0);
    CHECK(w.Delta == doctest::Approx(10.0 * lam).epsilon(1e-15));
    CHECK(w.sin_sq == doctest::Approx(0.20541561453762688).epsilon(1e-10));
    CHECK(w.t_collapse == doctest::Approx(1.4979012592830247e-07).epsilon(1e-10));
    CHECK(w.lower_bound == doctest::Approx(3.076923076923077e-08).epsilon(1e-13));

    // a witness exists separately at every quanta count in the decade
    for (long long k = 1; k <= 10; ++k) {
        const CollapseWitness wk =
            collapse_witness_search(1e-4, 1625, lam, 1e-4, 1e-7, 1e-6, k, k);
        CHECK(wk.n == k);
        CHECK(wk.t_collapse >= 1e-7);
        CHECK(wk.t_collapse <= 1e-6);
    }

    // an impossible target interval exhausts the scan
    CHECK_THROWS_AS(collapse_witness_search(1e-4, 1625, lam, 1e-4, 1e-30, 2e-30),
                    NumericalError);
    CHECK_THROWS_AS(collapse_witness_search(1e-4, 1625, lam, 1e-4, 1e-6, 1e-7),
                    ValidationError);
}

TEST_CASE("full chain wiring") {
    const CavityParameters p = default_cavity_parameters();
    const CavityChain ch = cavity_pipeline(p);

    CHECK(ch.lambda == doctest::Approx(5469362815.7142382).epsilon(1e-12));
    CHECK(ch.lambda_collective == doctest::Approx(220477063696.24042).epsilon(1e-12));
    CHECK(ch.coupling_in_band);
    CHECK(ch.field_used == 1e4);
    CHECK(ch.field_origin == "literature");
    CHECK(ch.peaks.splitting == doctest::Approx(5019406393435.8281).epsilon(1e-12));
    CHECK(ch.quality == 600000000.0);
    CHECK(ch.collapse.n == 1);
    CHECK(ch.crossover_water_water == doctest::Approx(2.6121766608821285e-10).epsilon(1e-12));
    CHECK(ch.crossover_dimer_water == doctest::Approx(5.1820614726290332e-10).epsilon(1e-12));

    // the interaction of two waters right at the crossover is thermal
    const double e_cross = dipole_dipole_energy(
        DipoleVector{p.d_water, 0, 0}, DipoleVector{p.d_water, 0, 0},
        Vec3{ch.crossover_water_water, 0, 0}, 10.0 * kC.eps0);
    CHECK(std::abs(e_cross) ==
          doctest::Approx(kC.k_B * p.temperature).epsilon(1e-12));

    // rows: unique names, sanctioned origins, spot-checked values
    std::set<std::string> names;
    for (const PipelineRow& row : ch.rows) {
        CHECK(names.insert(row.name).second);
        CHECK((row.origin == "literature" || row.origin == "computed"));
        if (row.name == "rabi_coupling_collective")
            CHECK(row.value == doctest::Approx(ch.lambda_collective).epsilon(1e-15));
        if (row.name == "quality_factor") CHECK(row.value == ch.quality);
        if (row.name == "collapse_sin_sq")
            CHECK(row.value == doctest::Approx(ch.collapse.sin_sq).epsilon(1e-15));
    }
    CHECK(names.count("dimer_dipole_debye") == 1);
    CHECK(names.count("vacuum_field_si") == 1);
    CHECK(names.count("crossover_dimer_water") == 1);
}

TEST_CASE("chain options change the advertised inputs") {
    const CavityParameters p = default_cavity_parameters();

    PipelineConfig cfg;
    cfg.use_named_field = false;
    const CavityChain ch = cavity_pipeline(p, cfg);
    CHECK(ch.field_used == doctest::Approx(ch.vacuum_field.si).epsilon(1e-15));
    CHECK(ch.field_origin == "computed");
    CHECK(ch.lambda ==
          doctest::Approx(rabi_coupling(ch.vacuum_field.si, p.d_dimer, cfg.cos_theta))
              .epsilon(1e-14));

    // pinning the quanta count pins the witness
    CavityParameters p3 = p;
    p3.n_quanta = 3;
    CHECK(cavity_pipeline(p3).collapse.n == 3);
    CavityParameters p0 = p;
    p0.n_quanta = 0;  // full decade scan
    CHECK(cavity_pipeline(p0).collapse.n == 1);

    // a band the coupling misses is reported, not hidden
    PipelineConfig narrow;
    narrow.band_lo = 1e12;
    narrow.band_hi = 2e12;
    CHECK_FALSE(cavity_pipeline(p, narrow).coupling_in_band);
}

TEST_CASE("parameter validation") {
    CavityParameters p = default_cavity_parameters();
    p.eps_rel = 0;
    CHECK_THROWS_AS(p.validate(), ValidationError);
    p = default_cavity_parameters();
    p.n_dimers = 0;
    CHECK_THROWS_AS(p.validate(), ValidationError);
    p = default_cavity_parameters();
    p.n_quanta = -1;
    CHECK_THROWS_AS(p.validate(), ValidationError);
    CHECK_NOTHROW(default_cavity_parameters().validate());
}

TEST_CASE("named estimate set") {
    const CavityParameters p = default_cavity_parameters();
    CHECK(p.omega0 == 1e12);
    CHECK(p.omega_c == 6e12);
    CHECK(p.n_dimers == 1625);
    CHECK(p.volume ==
          doctest::Approx(M_PI * 7.5e-9 * 7.5e-9 * 1e-6).epsilon(1e-13));
    CHECK(p.d_dimer == doctest::Approx(2.8839179412e-28).epsilon(1e-10));
    CHECK(p.d_water ==
          doctest::Approx(2.0 * kC.e_charge * 0.2e-10).epsilon(1e-13));
    CHECK(p.T_r == 1e-4);
}
