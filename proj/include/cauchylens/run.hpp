#pragma once

#include <string>
#include <vector>

#include "cauchylens/config.hpp"
#include "cauchylens/solver.hpp"

namespace cauchylens {

// ---------------------------------------------------------------------------
// One full pipeline run: geometry -> data -> basis -> coefficients ->
// verdict -> (maybe) reconstruction, plus the artifact files.  Deliberately
// deterministic: no randomness anywhere, so identical configs produce
// bit-identical reports except for the wall-clock block.
// ---------------------------------------------------------------------------

struct StageTimings {
  double geometry_ms = 0.0;
  double data_ms = 0.0;
  double basis_ms = 0.0;
  double coefficients_ms = 0.0;
  double reconstruction_ms = 0.0;
  double total_ms = 0.0;
};

struct RunReport {
  ScenarioConfig config;  // resolved: manufactured cases fill in their domain
  std::string case_notes;
  bool classical = false;       // harmonic front-end path
  int solvable_truth = -1;      // manufactured cases: 1/0; -1 = unknown

  int gamma_nodes = 0;  // actual rule sizes
  int area_nodes = 0;

  CoefficientSeries series;
  SolvabilityReport solvability;
  int suggested_terms = 0;

  bool reconstructed = false;
  bool nonconvergent = false;   // reconstruction forced past NOT_SOLVABLE
  std::vector<cplx> grid;
  std::vector<cplx> u;          // classical runs store the harmonic value in re
  bool has_reference = false;
  std::vector<cplx> reference;
  double sup_error = 0.0;
  double rms_error = 0.0;
  double loop_residual = -1.0;  // classical runs only (<0: not applicable)

  StageTimings timings;
};

// Computes the run; throws on invalid input, never writes files.
RunReport run_scenario(const ScenarioConfig& config);

// Renders report.json's content (config echo, resolutions, solvability with
// thresholds and rule, error norms, artifact list, tool version).  Timings
// live under the single top-level key "timings" so determinism checks can
// drop exactly that subtree; with_timings=false omits it.
std::string report_json(const RunReport& report,
                        const std::vector<std::string>& artifacts,
                        bool with_timings = true);

// Writes report.json, coefficients.csv, field.csv (reconstructed runs only),
// and plot.gp (when configured) into config.output_dir; returns the paths.
// A failed write removes every file this call created before rethrowing.
std::vector<std::string> write_artifacts(const RunReport& report);

// check subcommand's core: data sanity plus the compatibility statement for
// the scalar interface problem (vacuous at this degree).  Returns the lines
// to print.
std::vector<std::string> check_scenario(const ScenarioConfig& config);

// Writes the quadrature node layout (nodes.csv for the interface rule,
// area_nodes.csv for the source rule) into the directory, so externally
// produced data CSVs can follow the node order the solver expects.
std::vector<std::string> write_node_layout(const ScenarioConfig& config,
                                           const std::string& directory);

extern const char* const kToolName;
extern const char* const kToolVersion;

}  // namespace cauchylens
