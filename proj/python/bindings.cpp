#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "mtkink/cavity.hpp"
#include "mtkink/errors.hpp"
#include "mtkink/scenario.hpp"
#include "mtkink/tdva.hpp"
#include "mtkink/traveling_wave.hpp"
#include "mtkink/units.hpp"

namespace py = pybind11;
using nlohmann::json;

namespace {

mtk::FrontOrientation orientation_from(const std::string& s) {
    if (s == "forward") return mtk::FrontOrientation::forward;
    if (s == "backward") return mtk::FrontOrientation::backward;
    throw mtk::ValidationError("orientation: expected \"forward\" or \"backward\"");
}

// Scenario execution with parameters supplied as a JSON string; returns the
// flat summary map. The CLI and this binding share one code path.
std::map<std::string, double> run_scenario_json(const std::string& kind,
                                                const std::string& parameters_json,
                                                const std::string& params_path,
                                                const std::string& out_prefix,
                                                bool write_files, int jobs,
                                                const std::string& convention) {
    json doc;
    doc["kind"] = kind;
    doc["parameters"] = parameters_json.empty()
                            ? json::object()
                            : json::parse(parameters_json);
    mtk::Scenario s = mtk::parse_scenario(doc, "<python>");

    mtk::RunOptions opt;
    opt.out_prefix = out_prefix;
    opt.jobs = jobs;
    opt.write_files = write_files;
    if (!params_path.empty()) opt.params = mtk::load_parameters(params_path);
    if (convention == "spectroscopic")
        opt.convention = mtk::DetuningConvention::spectroscopic;
    else if (convention != "paper")
        throw mtk::ValidationError("convention: expected \"paper\" or \"spectroscopic\"");

    return mtk::run_scenario(s, opt).values;
}

py::dict report_dict(const std::string& params_path, const std::string& golden_path) {
    const mtk::MTParameters p = mtk::load_parameters(params_path);
    const mtk::ReportResult r = mtk::run_report(p, golden_path);
    py::list rows;
    for (const auto& c : r.comparisons) {
        py::dict row;
        row["name"] = c.entry.name;
        row["expected"] = c.entry.expected;
        row["actual"] = c.actual;
        row["ratio"] = c.ratio;
        row["rel_tol"] = c.entry.rel_tol;
        row["origin"] = c.entry.origin;
        row["pass"] = c.pass;
        rows.append(std::move(row));
    }
    py::dict out;
    out["all_pass"] = r.all_pass;
    out["comparisons"] = std::move(rows);
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "kink-soliton transport and cavity estimates for microtubule "
              "protofilaments";

    py::register_exception<mtk::ValidationError>(m, "ValidationError",
                                                 PyExc_ValueError);
    py::register_exception<mtk::NumericalError>(m, "NumericalError",
                                                PyExc_ArithmeticError);

    py::class_<mtk::MTParameters>(m, "Parameters")
        .def_readonly("M", &mtk::MTParameters::M)
        .def_readonly("k", &mtk::MTParameters::k)
        .def_readonly("R0", &mtk::MTParameters::R0)
        .def_readonly("A", &mtk::MTParameters::A)
        .def_readonly("B", &mtk::MTParameters::B)
        .def_readonly("gamma", &mtk::MTParameters::gamma)
        .def_readonly("q", &mtk::MTParameters::q)
        .def_readonly("E_field", &mtk::MTParameters::E_field)
        .def("sound_speed", &mtk::MTParameters::sound_speed);
    m.def("load_parameters", &mtk::load_parameters, py::arg("path"));

    py::class_<mtk::DimensionlessSystem>(m, "DimensionlessSystem")
        .def_readonly("sigma", &mtk::DimensionlessSystem::sigma)
        .def_readonly("rho", &mtk::DimensionlessSystem::rho)
        .def_readonly("rho_tilde", &mtk::DimensionlessSystem::rho_tilde)
        .def_readonly("w", &mtk::DimensionlessSystem::w)
        .def_readonly("amplitude_scale", &mtk::DimensionlessSystem::amplitude_scale)
        .def_readonly("length_scale", &mtk::DimensionlessSystem::length_scale)
        .def_readonly("time_scale", &mtk::DimensionlessSystem::time_scale)
        .def_readonly("velocity_scale", &mtk::DimensionlessSystem::velocity_scale);
    m.def("nondimensionalize", &mtk::nondimensionalize, py::arg("params"),
          py::arg("velocity") = 0.0);

    m.def("sigma_critical", &mtk::sigma_critical);
    m.def(
        "cubic_roots",
        [](double sigma) {
            const mtk::CubicRoots r = mtk::cubic_roots(sigma);
            return py::make_tuple(r.a, r.d, r.b);
        },
        py::arg("sigma"), "real roots of z^3 - z - sigma = 0, as (a, d, b)");

    py::class_<mtk::KinkSolution>(m, "KinkSolution")
        .def_readonly("rho", &mtk::KinkSolution::rho)
        .def_readonly("c1", &mtk::KinkSolution::c1)
        .def_readonly("c2", &mtk::KinkSolution::c2)
        .def_readonly("c3", &mtk::KinkSolution::c3)
        .def_readonly("psi_minus", &mtk::KinkSolution::psi_minus)
        .def_readonly("psi_plus", &mtk::KinkSolution::psi_plus)
        .def("psi", &mtk::KinkSolution::psi, py::arg("xi"))
        .def("dpsi", &mtk::KinkSolution::dpsi, py::arg("xi"))
        .def(
            "residual",
            [](const mtk::KinkSolution& k, double xi) {
                return mtk::ode_residual(k, xi);
            },
            py::arg("xi"));
    m.def(
        "kink_profile",
        [](double sigma, const std::string& orientation) {
            return mtk::kink_profile(sigma, orientation_from(orientation));
        },
        py::arg("sigma"), py::arg("orientation") = "forward");

    m.def("selected_velocity", &mtk::selected_velocity, py::arg("params"));
    m.def("selected_velocity_rootsolve", &mtk::selected_velocity_rootsolve,
          py::arg("params"));
    m.def("transfer_time", &mtk::transfer_time, py::arg("length"),
          py::arg("velocity"));

    py::class_<mtk::KinkEnergy>(m, "KinkEnergy")
        .def_readonly("binding", &mtk::KinkEnergy::binding)
        .def_readonly("kinetic", &mtk::KinkEnergy::kinetic)
        .def_readonly("total", &mtk::KinkEnergy::total)
        .def_readonly("effective_mass", &mtk::KinkEnergy::effective_mass);
    py::class_<mtk::KinkEnergyReport>(m, "KinkEnergyReport")
        .def_readonly("closed_form", &mtk::KinkEnergyReport::closed_form)
        .def_readonly("integrated_rest", &mtk::KinkEnergyReport::integrated_rest)
        .def_readonly("integrated_total", &mtk::KinkEnergyReport::integrated_total)
        .def_readonly("closed_form_rel_dev",
                      &mtk::KinkEnergyReport::closed_form_rel_dev)
        .def_readonly("large_deviation", &mtk::KinkEnergyReport::large_deviation);
    m.def("kink_energy", &mtk::kink_energy, py::arg("params"), py::arg("velocity"));

    py::class_<mtk::QuantumKink>(m, "QuantumKink")
        .def_readonly("Sigma", &mtk::QuantumKink::Sigma)
        .def_readonly("mass2", &mtk::QuantumKink::mass2)
        .def_readonly("sigma_effective", &mtk::QuantumKink::sigma_effective)
        .def_readonly("vacuum_minus", &mtk::QuantumKink::vacuum_minus)
        .def_readonly("vacuum_plus", &mtk::QuantumKink::vacuum_plus)
        .def_readonly("width_factor", &mtk::QuantumKink::width_factor)
        .def("u", &mtk::QuantumKink::u, py::arg("xi"))
        .def("residual", &mtk::QuantumKink::residual, py::arg("xi"));
    m.def(
        "quantum_kink",
        [](double Sigma, double sigma, const std::string& orientation) {
            return mtk::modified_soliton_solve(mtk::SmearingWidth(Sigma), sigma,
                                               orientation_from(orientation));
        },
        py::arg("Sigma"), py::arg("sigma") = 0.0,
        py::arg("orientation") = "forward");

    m.def(
        "dimer_dipole_estimate",
        [](double charge_units, double separation, double eps_rel) {
            const mtk::DipoleEstimate d =
                mtk::dimer_dipole_estimate(charge_units, separation, eps_rel);
            return py::make_tuple(d.si, d.debye);
        },
        py::arg("charge_units") = 36.0, py::arg("separation") = 4e-9,
        py::arg("eps_rel") = 80.0, "returns (C*m, debye)");

    m.def("tool_version", &mtk::tool_version);
    m.def("run_scenario", &run_scenario_json, py::arg("kind"),
          py::arg("parameters") = "", py::arg("params_path") = "",
          py::arg("out_prefix") = "", py::arg("write_files") = false,
          py::arg("jobs") = 1, py::arg("convention") = "paper",
          "run one scenario; parameters is a JSON object string; returns the "
          "summary values");
    m.def("golden_report", &report_dict, py::arg("params_path"),
          py::arg("golden_path"));
}
