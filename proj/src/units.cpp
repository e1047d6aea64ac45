#include "mtkink/units.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include <nlohmann/json.hpp>

#include "mtkink/errors.hpp"

namespace mtk {

using nlohmann::json;

double MTParameters::sound_speed() const {
    return std::sqrt(k / M) * R0;
}

double ferroelectric_A(double T, double Tc, double ferro_const) {
    if (ferro_const < 0)
        throw ValidationError("ferro_const must be >= 0, got " + std::to_string(ferro_const));
    return -ferro_const * (T - Tc);
}

double debye_to_si(double d, const PhysicalConstants& c) {
    return d * c.debye;
}

double si_to_debye(double cm, const PhysicalConstants& c) {
    return cm / c.debye;
}

static void check_well(const MTParameters& p) {
    if (!(p.A > 0) || !(p.B > 0))
        throw DegeneratePotential(
            "double well requires A > 0 and B > 0 (A = " + std::to_string(p.A) +
            " J/m^2, B = " + std::to_string(p.B) + " J/m^4); no kink exists");
    if (!(p.M > 0) || !(p.k > 0) || !(p.R0 > 0))
        throw ValidationError("M, k, R0 must all be positive");
}

DimensionlessSystem nondimensionalize(const MTParameters& p, double v) {
    check_well(p);
    const double v0 = p.sound_speed();
    if (std::abs(v) >= v0)
        throw SupersonicFrame("frame velocity " + std::to_string(v) +
                              " m/s is at or above the sound speed " +
                              std::to_string(v0) + " m/s");

    DimensionlessSystem s;
    s.velocity_scale = v0;
    s.time_scale = std::sqrt(p.M / p.A);
    s.length_scale = v0 * s.time_scale;
    s.amplitude_scale = std::sqrt(p.A / p.B);
    s.w = v / v0;
    s.sigma = p.q * std::sqrt(p.B) * std::pow(p.A, -1.5) * p.E_field;
    s.rho_tilde = p.gamma / std::sqrt(p.M * p.A);
    s.alpha = std::sqrt(p.A / (p.M * (v0 * v0 - v * v)));
    s.rho = p.gamma * v / std::sqrt(p.M * p.A * (v0 * v0 - v * v));
    return s;
}

PhysicalDrive redimensionalize(const MTParameters& structural,
                               const DimensionlessSystem& sys) {
    check_well(structural);
    const MTParameters& p = structural;
    PhysicalDrive d;
    d.E_field = sys.sigma * std::pow(p.A, 1.5) / (p.q * std::sqrt(p.B));
    d.gamma = sys.rho_tilde * std::sqrt(p.M * p.A);
    d.v = sys.w * p.sound_speed();
    return d;
}

double energy_scale(const MTParameters& p) {
    check_well(p);
    const double lscale = p.sound_speed() * std::sqrt(p.M / p.A);
    return (p.A * p.A / p.B) * lscale / p.R0;
}

// ---------------------------------------------------------------------------
// parameter document loading

namespace {

[[noreturn]] void fail_path(const std::string& path, const std::string& what) {
    throw ValidationError(path + ": " + what);
}

double require_number(const json& j, const std::string& path) {
    if (!j.is_number()) fail_path(path, "expected a number");
    return j.get<double>();
}

// Reads object fields through a whitelist, rejecting anything unknown with a
// path-qualified message.
struct FieldReader {
    const json& obj;
    std::string prefix;
    std::set<std::string> seen;

    FieldReader(const json& o, std::string p) : obj(o), prefix(std::move(p)) {
        if (!obj.is_object()) fail_path(prefix, "expected an object");
    }

    bool take(const std::string& key, double& out) {
        seen.insert(key);
        auto it = obj.find(key);
        if (it == obj.end()) return false;
        out = require_number(*it, prefix + "." + key);
        return true;
    }

    void finish() const {
        for (auto it = obj.begin(); it != obj.end(); ++it) {
            if (!seen.count(it.key()))
                fail_path(prefix + "." + it.key(), "unknown key");
        }
    }
};

} // namespace

MTParameters parse_parameters(const std::string& text, const std::string& origin) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(origin + ": " + e.what());
    }
    if (!doc.is_object()) throw ValidationError(origin + ": top level must be an object");

    for (auto it = doc.begin(); it != doc.end(); ++it) {
        const std::string& k = it.key();
        if (k != "mt_parameters" && k != "constants_override" && k != "reference_timescales")
            fail_path(k, "unknown key");
    }
    if (!doc.contains("mt_parameters"))
        throw ValidationError(origin + ": missing required key mt_parameters");

    MTParameters p;

    {
        FieldReader r(doc["mt_parameters"], "mt_parameters");
        bool has_M = r.take("M", p.M);
        bool has_k = r.take("k", p.k);
        bool has_R0 = r.take("R0", p.R0);
        bool has_B = r.take("B", p.B);
        r.take("gamma", p.gamma);
        r.take("q", p.q);
        r.take("E_field", p.E_field);
        bool has_T = r.take("T", p.T);
        bool has_Tc = r.take("Tc", p.Tc);
        bool has_fc = r.take("ferro_const", p.ferro_const);
        bool has_A = r.take("A", p.A);
        r.finish();

        if (!has_M || !has_k || !has_R0 || !has_B)
            throw ValidationError("mt_parameters: M, k, R0 and B are required");
        if (!has_A) {
            if (!has_T || !has_Tc || !has_fc)
                throw ValidationError(
                    "mt_parameters: provide A directly or the triple (T, Tc, ferro_const)");
            p.A = ferroelectric_A(p.T, p.Tc, p.ferro_const);
        } else if (has_T && has_Tc && has_fc) {
            const double implied = ferroelectric_A(p.T, p.Tc, p.ferro_const);
            const double scale = std::max(std::abs(p.A), std::abs(implied));
            if (scale > 0 && std::abs(p.A - implied) > 1e-9 * scale)
                throw ValidationError(
                    "mt_parameters.A: inconsistent with -ferro_const*(T - Tc) = " +
                    std::to_string(implied));
        }
    }

    if (doc.contains("constants_override")) {
        FieldReader r(doc["constants_override"], "constants_override");
        r.take("hbar", p.constants.hbar);
        r.take("k_B", p.constants.k_B);
        r.take("e_charge", p.constants.e_charge);
        r.take("eps0", p.constants.eps0);
        r.take("c_light", p.constants.c_light);
        r.take("debye", p.constants.debye);
        r.take("electron_volt", p.constants.electron_volt);
        r.finish();
    }

    if (doc.contains("reference_timescales")) {
        FieldReader r(doc["reference_timescales"], "reference_timescales");
        r.take("frohlich_low", p.timescales.frohlich_low);
        r.take("frohlich_high", p.timescales.frohlich_high);
        r.take("tegmark_low", p.timescales.tegmark_low);
        r.take("tegmark_high", p.timescales.tegmark_high);
        r.take("algae_transport", p.timescales.algae_transport);
        r.take("transfer_time", p.timescales.transfer_time);
        r.take("cavity_Tr", p.timescales.cavity_Tr);
        r.finish();
    }

    if (!(p.M > 0) || !(p.k > 0) || !(p.R0 > 0))
        throw ValidationError("mt_parameters: M, k and R0 must be positive");
    if (!(p.B > 0))
        throw ValidationError("mt_parameters.B: must be positive");
    if (p.gamma < 0)
        throw ValidationError("mt_parameters.gamma: must be >= 0");

    return p;
}

MTParameters load_parameters(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open parameter file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_parameters(ss.str(), path);
}

} // namespace mtk
