#pragma once

// Operational surface: JSON scenario documents, deterministic single runs and
// parameter sweeps, the golden comparison report, and run manifests. All file
// bodies are byte-stable across repeated runs; wall-clock timestamps appear
// only in manifests.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mtkink/cavity.hpp"
#include "mtkink/units.hpp"

namespace mtk {

struct SweepAxis {
    std::string path;            // dot-separated path into `parameters`
    std::vector<double> values;  // finite, nonempty
};

struct Scenario {
    std::string kind;  // kink-analytic | simulate | tdva | cavity-pipeline | sweep
    nlohmann::json parameters;  // object; schema depends on kind
    std::optional<SweepAxis> sweep_axis;
    std::string output_prefix;  // fragment, may be overridden by --out-prefix
    long long seed = 0;         // reserved; nothing stochastic yet
};

Scenario parse_scenario(const nlohmann::json& doc, const std::string& origin);
Scenario load_scenario(const std::string& path);

std::string tool_version();
// Stable content hash (fnv1a64 over the key-sorted serialization), invariant
// under key reordering in the source document.
std::string scenario_digest(const Scenario& s);

struct RunOptions {
    std::string out_prefix;  // when nonempty, overrides scenario.output_prefix
    int jobs = 1;
    std::optional<MTParameters> params;  // physical defaults for sigma/rho_tilde
    DetuningConvention convention = DetuningConvention::paper;
    bool write_files = true;
};

struct RunResult {
    std::map<std::string, double> values;  // flat named summary
    std::vector<std::string> outputs;      // files written (CSV + summary JSON)
};

// Output prefix a run will use: --out-prefix when set, else the scenario's
// output_prefix, else "mtk_out". Creates the parent directory.
std::string run_prefix(const Scenario& s, const RunOptions& opt);

// Executes one non-sweep scenario. Throws on validation or numerical failure.
RunResult run_scenario(const Scenario& s, const RunOptions& opt);

struct SweepRow {
    int index = 0;
    double axis_value = 0;
    std::map<std::string, double> values;
    std::string error;  // empty on success
};

struct SweepResult {
    std::string axis_path;
    std::vector<std::string> value_columns;  // sorted union over all rows
    std::vector<SweepRow> rows;              // ordered by axis index
    std::vector<std::string> outputs;
};

// Runs every axis point (concurrently up to opt.jobs), assembling rows by
// index so output never depends on scheduling. Per-point failures land in the
// row's error field and the sweep continues.
SweepResult run_sweep(const Scenario& s, const RunOptions& opt);

// --- golden table -------------------------------------------------------------

struct GoldenEntry {
    std::string name;
    double expected = 0;
    double rel_tol = 0;  // pass iff |actual - expected| <= rel_tol * |expected|
    std::string origin;  // "literature" (quoted number) or "computed" (frozen oracle)
    std::string note;
};

struct GoldenComparison {
    GoldenEntry entry;
    double actual = 0;
    double ratio = 0;  // actual / expected (0 when expected == 0)
    bool found = false;
    bool pass = false;
};

std::vector<GoldenEntry> load_golden_table(const std::string& path);

// $MTK_GOLDEN_DIR when set, else the compiled-in default directory.
std::string golden_dir();

// Every golden quantity recomputed from the library with the given physical
// parameters and the named cavity defaults.
std::map<std::string, double> golden_actuals(const MTParameters& p);

struct ReportResult {
    std::vector<GoldenComparison> comparisons;
    bool all_pass = true;
};

ReportResult run_report(const MTParameters& p, const std::string& golden_path);

// --- manifests ------------------------------------------------------------------

struct RunManifest {
    std::string version;
    std::string kind;
    std::string digest;
    std::string started_utc;   // ISO 8601; only here, never in CSV bodies
    std::string finished_utc;
    std::vector<std::string> outputs;
    std::vector<GoldenComparison> golden;  // filled by `report`, empty otherwise
};

nlohmann::json manifest_json(const RunManifest& m);
void write_manifest(const RunManifest& m, const std::string& path);
std::string utc_timestamp();

} // namespace mtk
