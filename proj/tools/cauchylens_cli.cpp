// Command-line front end: solve | check | basis | demo.
// Exit codes: 0 success, 2 configuration error, 3 data error, 4 numerical
// failure.  The pipeline draws no random numbers; --seed-free documents that
// assertion in the output.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cauchylens/config.hpp"
#include "cauchylens/oracle.hpp"
#include "cauchylens/run.hpp"

namespace cl = cauchylens;

namespace {

struct CliOptions {
  std::string config_path;
  std::string output_dir;
  bool force_reconstruct = false;
  bool seed_free = false;
  // demo
  std::string demo_case;
  bool demo_list = false;
  int demo_terms = 0;
};

cl::ScenarioConfig load_with_overrides(const CliOptions& opt) {
  cl::ScenarioConfig cfg = cl::load_config(opt.config_path);
  if (!opt.output_dir.empty()) cfg.output_dir = opt.output_dir;
  if (opt.force_reconstruct) cfg.force_reconstruct = true;
  return cfg;
}

void print_summary(const cl::RunReport& rep,
                   const std::vector<std::string>& artifacts, bool seed_free) {
  const cl::SolvabilityReport& sv = rep.solvability;
  std::printf("verdict: %s\n", cl::to_string(sv.verdict).c_str());
  std::printf("  rule: %s\n", sv.rule.c_str());
  std::printf("  rho_hat = %.6g, tail increment = %.6g, growth = %.6g "
              "(N = %d, window (%d, %d])\n",
              sv.rho_hat, sv.tail_increment, sv.growth, sv.terms, sv.window_lo,
              sv.terms);
  std::printf("suggested truncation: N = %d (suggestion only)\n",
              rep.suggested_terms);
  if (rep.reconstructed) {
    std::printf("reconstruction: %zu grid points%s\n", rep.grid.size(),
                rep.nonconvergent ? " (forced; diagnostic only)" : "");
    if (rep.has_reference) {
      std::printf("  sup error = %.6g, rms error = %.6g\n", rep.sup_error,
                  rep.rms_error);
    }
    if (rep.loop_residual >= 0.0) {
      std::printf("  gradient loop residual = %.6g\n", rep.loop_residual);
    }
  } else {
    std::printf("reconstruction: skipped (verdict NOT_SOLVABLE; pass "
                "--force-reconstruct for diagnostic output)\n");
  }
  if (seed_free) {
    std::printf("seed-free: confirmed; the pipeline draws no random numbers\n");
  }
  std::printf("artifacts:\n");
  for (const std::string& path : artifacts) std::printf("  %s\n", path.c_str());
}

int run_solve(const CliOptions& opt) {
  const cl::ScenarioConfig cfg = load_with_overrides(opt);
  const cl::RunReport rep = cl::run_scenario(cfg);
  const std::vector<std::string> artifacts = cl::write_artifacts(rep);
  print_summary(rep, artifacts, opt.seed_free);
  return 0;
}

int run_check(const CliOptions& opt) {
  const cl::ScenarioConfig cfg = load_with_overrides(opt);
  for (const std::string& line : cl::check_scenario(cfg)) {
    std::printf("%s\n", line.c_str());
  }
  if (!opt.output_dir.empty()) {
    for (const std::string& path : cl::write_node_layout(cfg, opt.output_dir)) {
      std::printf("wrote %s\n", path.c_str());
    }
  }
  return 0;
}

int run_basis(const CliOptions& opt) {
  cl::ScenarioConfig cfg = load_with_overrides(opt);
  // Resolve a manufactured case's canonical domain the way solve does.
  if (!cfg.case_name.empty() && !cfg.domain_overridden) {
    cfg.domain = cl::manufactured_case(cfg.case_name).domain;
  }
  const cl::DomainSpec spec = cl::make_domain(cfg.domain);

  cl::BasisView view;
  if (cfg.basis_kind == "numeric") {
    const int size = cfg.degree_cutoff > 0 ? cfg.degree_cutoff : cfg.basis_n_max;
    view = cl::basis_view(
        cl::build_numeric_basis(spec.omega_radius, spec.test_ball_radius, size));
  } else {
    view = cl::basis_view(cl::make_analytic_basis(
        spec.omega_radius, spec.test_ball_radius, cfg.basis_n_max));
  }

  std::string text = "nu,lambda,lead_coeff\n";
  char line[120];
  for (int nu = 1; nu <= view.size; ++nu) {
    const double lead = std::abs(view.poly[nu - 1].back());
    std::snprintf(line, sizeof line, "%d,%.17g,%.17g\n", nu, view.lambda(nu),
                  lead);
    text += line;
  }

  namespace fs = std::filesystem;
  const fs::path dir = cfg.output_dir;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw cl::ConfigError("cannot create output directory \"" + dir.string() +
                          "\": " + ec.message());
  }
  const fs::path path = dir / "basis.csv";
  {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw cl::ConfigError("cannot write \"" + path.string() + "\"");
    out << text;
  }
  std::printf("basis: %s, %d components, radii R = %.6g / r = %.6g\n",
              view.kind.c_str(), view.size, view.omega_radius,
              view.test_radius);
  std::printf("wrote %s\n", path.string().c_str());
  return 0;
}

// Demo depth per case: deep enough for a confident verdict at double
// precision, shallow where the data are polynomial anyway.
int demo_default_terms(const std::string& name) {
  if (name.rfind("POLY2", 0) == 0) return 16;
  if (name.rfind("ZBAR_RHS", 0) == 0) return 20;
  if (name.rfind("ANTIHOLO", 0) == 0) return 60;
  if (name.rfind("HARMONIC_CUBIC", 0) == 0) return 30;
  return 40;  // the pole families
}

int run_demo(const CliOptions& opt) {
  if (opt.demo_list) {
    for (const std::string& name : cl::manufactured_catalog()) {
      // Parametrised entries are listed as templates, e.g. POLE_OUTSIDE(a);
      // instantiate with the default parameter to describe them.
      std::string concrete = name;
      const std::size_t paren = concrete.find("(a)");
      if (paren != std::string::npos) concrete.erase(paren);
      const cl::ManufacturedCase mc = cl::manufactured_case(concrete);
      std::printf("%-18s %s%s\n", name.c_str(),
                  mc.solvable ? "solvable" : "not solvable",
                  mc.classical ? ", classical (harmonic front end)" : "");
    }
    return 0;
  }
  if (opt.demo_case.empty()) {
    throw cl::ConfigError("demo needs a case name (or --list); see demo --help");
  }
  cl::ScenarioConfig cfg;
  cfg.case_name = opt.demo_case;
  cfg.n_terms = opt.demo_terms > 0 ? opt.demo_terms
                                   : demo_default_terms(opt.demo_case);
  cfg.basis_n_max = std::max(cfg.n_terms, cfg.basis_n_max);
  if (!opt.output_dir.empty()) cfg.output_dir = opt.output_dir;
  cfg.force_reconstruct = opt.force_reconstruct;

  const cl::RunReport rep = cl::run_scenario(cfg);
  const std::vector<std::string> artifacts = cl::write_artifacts(rep);
  std::printf("case: %s\n", opt.demo_case.c_str());
  if (!rep.case_notes.empty()) std::printf("  %s\n", rep.case_notes.c_str());
  print_summary(rep, artifacts, opt.seed_free);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solver for the ill-posed interface problem of the plane "
               "d-bar operator: potentials, doubly orthogonal expansion, "
               "solvability verdict, and regularized reconstruction"};
  app.require_subcommand(1);
  CliOptions opt;

  CLI::App* solve = app.add_subcommand(
      "solve", "Run the full pipeline for a JSON scenario and write artifacts");
  solve->add_option("-c,--config", opt.config_path, "Scenario JSON path")
      ->required();
  solve->add_option("-o,--output", opt.output_dir,
                    "Override the configured output directory");
  solve->add_flag("--force-reconstruct", opt.force_reconstruct,
                  "Reconstruct even after a NOT_SOLVABLE verdict (diagnostic)");
  solve->add_flag("--seed-free", opt.seed_free,
                  "Assert the run uses no randomness (always true; recorded "
                  "in the output)");

  CLI::App* check = app.add_subcommand(
      "check", "Validate a scenario's data and state the compatibility "
               "condition (vacuous for the scalar plane problem)");
  check->add_option("-c,--config", opt.config_path, "Scenario JSON path")
      ->required();
  check->add_option("-o,--output", opt.output_dir,
                    "Also write the quadrature node layout (nodes.csv, "
                    "area_nodes.csv) for preparing external data CSVs");

  CLI::App* basis = app.add_subcommand(
      "basis", "Write the doubly orthogonal basis table (nu, lambda, leading "
               "coefficient) for a scenario's domain");
  basis->add_option("-c,--config", opt.config_path, "Scenario JSON path")
      ->required();
  basis->add_option("-o,--output", opt.output_dir,
                    "Override the configured output directory");

  CLI::App* demo = app.add_subcommand(
      "demo", "Run a manufactured reference case end to end");
  demo->add_option("case", opt.demo_case,
                   "Case name, e.g. POLE_OUTSIDE(2); see --list");
  demo->add_flag("--list", opt.demo_list, "List the manufactured cases");
  demo->add_option("-o,--output", opt.output_dir,
                   "Output directory (default: out)");
  demo->add_option("-n,--n-terms", opt.demo_terms,
                   "Expansion depth (default: per-case)");
  demo->add_flag("--force-reconstruct", opt.force_reconstruct,
                 "Reconstruct even after a NOT_SOLVABLE verdict (diagnostic)");
  demo->add_flag("--seed-free", opt.seed_free,
                 "Assert the run uses no randomness (always true; recorded in "
                 "the output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // bad usage is a configuration error
  }

  try {
    if (app.got_subcommand(solve)) return run_solve(opt);
    if (app.got_subcommand(check)) return run_check(opt);
    if (app.got_subcommand(basis)) return run_basis(opt);
    if (app.got_subcommand(demo)) return run_demo(opt);
    return 2;
  } catch (const cl::ConfigError& e) {
    std::cerr << "error [config]: " << e.what() << "\n";
    return 2;
  } catch (const cl::DataError& e) {
    std::cerr << "error [data]: " << e.what() << "\n";
    return 3;
  } catch (const cl::NumericalError& e) {
    std::cerr << "error [numerical]: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error [internal]: " << e.what() << "\n";
    return 4;
  }
}
