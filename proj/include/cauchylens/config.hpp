#pragma once

#include <string>

#include "cauchylens/common.hpp"
#include "cauchylens/geometry.hpp"
#include "cauchylens/solver.hpp"

namespace cauchylens {

// ---------------------------------------------------------------------------
// Scenario description for one pipeline run.  The JSON schema mirrors this
// struct block for block; every key is documented in the README, and unknown
// keys are hard errors -- an ill-posed problem punishes silently ignored
// configuration, so none is ignored.
// ---------------------------------------------------------------------------
struct ScenarioConfig {
  // domain block
  DomainOptions domain;
  bool domain_overridden = false;  // true when the config carried a domain
                                   // block; manufactured cases otherwise run
                                   // on their canonical domain

  // data block: at most one source (manufactured case, boundary/source CSVs,
  // or classical CSV for the harmonic front-end); all empty means zero data.
  std::string case_name;
  std::string u0_csv;        // rows "s,re,im" at the interface rule's nodes
  std::string f_csv;         // rows "x,y,re,im" at the area rule's nodes
  std::string classical_csv; // rows "s,u,dudn" at the interface rule's nodes
  double anchor_s = 0.5;     // interface parameter carrying the constant
  double anchor_value = 0.0; // used only with classical_csv (manufactured
                             // classical cases compute it exactly)
  int stencil_width = 7;     // tangential differentiation window

  // basis block
  std::string basis_kind = "analytic";  // analytic | numeric
  int basis_n_max = 40;
  int degree_cutoff = 0;  // numeric construction size; 0 means n_max

  // solver block
  int n_terms = 30;
  SolvabilityPolicy policy;
  int grid_resolution = 20;
  double grid_margin = 0.1;
  bool force_reconstruct = false;
  int gamma_nodes = 512;
  int area_resolution = 32;
  int coeff_boundary_nodes = 0;  // 0 = refine automatically with depth

  // output block
  std::string output_dir = "out";
  bool emit_plots = false;
};

// Parses and validates the JSON text; throws ConfigError on malformed JSON,
// unknown keys, type mismatches, or out-of-range values.
ScenarioConfig parse_config_text(const std::string& json_text);

// Reads the file and parses it; ConfigError when the file cannot be read.
ScenarioConfig load_config(const std::string& path);

// Canonical serialized form: every field, fixed key order, suitable both as
// the report's config echo and as input that reproduces the run.
std::string config_echo_json(const ScenarioConfig& config);

}  // namespace cauchylens
