#include "cauchylens/run.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>

#include "cauchylens/laplace.hpp"
#include "cauchylens/oracle.hpp"
#include "json.hpp"

namespace cauchylens {

const char* const kToolName = "cauchylens";
const char* const kToolVersion = "1.0.0";

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using clock_type = std::chrono::steady_clock;

double elapsed_ms(clock_type::time_point since) {
  return std::chrono::duration<double, std::milli>(clock_type::now() - since).count();
}

// Numeric CSV reader.  Blank lines and '#' comments are skipped; a first line
// whose first field is not a number is treated as a header.
std::vector<std::vector<double>> read_numeric_csv(const std::string& path,
                                                  std::size_t columns) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("referenced file \"" + path + "\" cannot be read");
  std::vector<std::vector<double>> rows;
  std::string line;
  bool first_content = true;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    std::vector<double> row;
    std::stringstream fields(line);
    std::string field;
    bool numeric = true;
    while (std::getline(fields, field, ',')) {
      const char* begin = field.c_str();
      char* end = nullptr;
      double v = std::strtod(begin, &end);
      while (end && *end != '\0' && (*end == ' ' || *end == '\t' || *end == '\r')) ++end;
      if (end == begin || (end && *end != '\0')) {
        numeric = false;
        break;
      }
      row.push_back(v);
    }
    if (!numeric) {
      if (first_content) {  // header line
        first_content = false;
        continue;
      }
      throw DataError("file \"" + path + "\" line " + std::to_string(lineno) +
                      ": non-numeric field");
    }
    first_content = false;
    if (row.size() != columns) {
      throw DataError("file \"" + path + "\" line " + std::to_string(lineno) +
                      ": expected " + std::to_string(columns) + " columns, got " +
                      std::to_string(row.size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw DataError("file \"" + path + "\" holds no data rows");
  return rows;
}

struct Assembly {
  ScenarioConfig cfg;  // resolved (manufactured domain filled in)
  bool has_case = false;
  ManufacturedCase mc;
  bool classical = false;
  DomainSpec spec;
  cplx anchor{0.0, 0.0};
  double anchor_value = 0.0;
  std::unique_ptr<CauchyProblem> problem;
  double geometry_ms = 0.0;
  double data_ms = 0.0;
};

Assembly assemble(const ScenarioConfig& input) {
  Assembly a;
  a.cfg = input;
  a.has_case = !input.case_name.empty();
  if (a.has_case) {
    a.mc = manufactured_case(input.case_name);
    if (!input.domain_overridden) a.cfg.domain = a.mc.domain;
    a.classical = a.mc.classical;
  }
  a.classical = a.classical || !input.classical_csv.empty();

  auto t0 = clock_type::now();
  a.spec = make_domain(a.cfg.domain);
  a.geometry_ms = elapsed_ms(t0);

  t0 = clock_type::now();
  CauchyData data;
  if (a.classical) {
    // Harmonic front-end: classical pair (u, du/dn) on the interface becomes
    // the trace of g = u_x - i u_y.  The rule built here matches the
    // problem's own (same deterministic constructor arguments).
    const BoundaryRule rule =
        boundary_rule(a.spec, BoundaryPart::GAMMA, a.cfg.gamma_nodes);
    ClassicalCauchyData classical;
    const std::size_t n = rule.nodes.size();
    classical.u.resize(n);
    classical.dudn.resize(n);
    a.anchor = a.spec.gamma_point(a.cfg.anchor_s).z;
    if (a.has_case) {
      for (std::size_t i = 0; i < n; ++i) {
        const cplx z = rule.nodes[i].z;
        classical.u[i] = a.mc.harmonic(z);
        const cplx grad = a.mc.harmonic_gradient(z);
        const cplx nrm = rule.nodes[i].normal;
        classical.dudn[i] = grad.real() * nrm.real() + grad.imag() * nrm.imag();
      }
      a.anchor_value = a.mc.harmonic(a.anchor);
    } else {
      const auto rows = read_numeric_csv(a.cfg.classical_csv, 3);
      if (rows.size() != n) {
        throw QuadratureMismatch(
            "classical_csv has " + std::to_string(rows.size()) +
            " rows but the interface rule has " + std::to_string(n) +
            " nodes; sample the data at the rule's nodes");
      }
      for (std::size_t i = 0; i < n; ++i) {
        classical.u[i] = rows[i][1];
        classical.dudn[i] = rows[i][2];
      }
      a.anchor_value = a.cfg.anchor_value;
    }
    classical.anchor = a.anchor;
    classical.anchor_value = a.anchor_value;
    data = to_holomorphic(rule, classical, a.cfg.stencil_width);
  } else if (a.has_case) {
    data.u0_exact = a.mc.trace;
    data.f_exact = a.mc.source;
    data.u0_extended = a.mc.trace_extended;
  } else {
    if (!a.cfg.u0_csv.empty()) {
      for (const auto& row : read_numeric_csv(a.cfg.u0_csv, 3)) {
        data.u0.emplace_back(row[1], row[2]);
      }
    }
    if (!a.cfg.f_csv.empty()) {
      for (const auto& row : read_numeric_csv(a.cfg.f_csv, 4)) {
        data.f.emplace_back(row[2], row[3]);
      }
    }
  }

  CauchyProblem::Options opt;
  opt.gamma_nodes = a.cfg.gamma_nodes;
  opt.area_resolution = a.cfg.area_resolution;
  opt.coeff_boundary_nodes = a.cfg.coeff_boundary_nodes;
  a.problem = std::make_unique<CauchyProblem>(a.spec, std::move(data), opt);
  a.data_ms = elapsed_ms(t0);
  return a;
}

BasisView make_basis(const ScenarioConfig& cfg, const DomainSpec& spec) {
  if (cfg.basis_kind == "numeric") {
    const int size = cfg.degree_cutoff > 0 ? cfg.degree_cutoff : cfg.basis_n_max;
    return basis_view(build_numeric_basis(spec.omega_radius, spec.test_ball_radius, size));
  }
  return basis_view(
      make_analytic_basis(spec.omega_radius, spec.test_ball_radius, cfg.basis_n_max));
}

json double_or_null(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

}  // namespace

RunReport run_scenario(const ScenarioConfig& config) {
  const auto t_total = clock_type::now();
  Assembly a = assemble(config);

  RunReport rep;
  rep.config = a.cfg;
  rep.classical = a.classical;
  if (a.has_case) {
    rep.case_notes = a.mc.notes;
    rep.solvable_truth = a.mc.solvable ? 1 : 0;
  }
  rep.timings.geometry_ms = a.geometry_ms;
  rep.timings.data_ms = a.data_ms;
  rep.gamma_nodes = static_cast<int>(a.problem->gamma_rule().nodes.size());
  rep.area_nodes =
      a.problem->area() ? static_cast<int>(a.problem->area()->nodes.size()) : 0;

  auto t0 = clock_type::now();
  const BasisView basis = make_basis(a.cfg, a.spec);
  rep.timings.basis_ms = elapsed_ms(t0);

  t0 = clock_type::now();
  rep.series = a.problem->coefficients(basis, a.cfg.n_terms);
  rep.solvability = solvability_indicator(rep.series, a.cfg.policy);
  const double energy =
      rep.series.partial_sums.empty() ? 0.0 : rep.series.partial_sums.back();
  // Truncation suggestion balancing the fitted decay against the (R/r)^N
  // noise amplification of the expansion; 1e-14 models double-rounded data.
  rep.suggested_terms = suggest_truncation(
      rep.solvability, std::sqrt(std::max(energy, 0.0)), 1e-14,
      a.spec.omega_radius / a.spec.test_ball_radius, a.cfg.n_terms);
  rep.timings.coefficients_ms = elapsed_ms(t0);

  t0 = clock_type::now();
  const bool blocked = rep.solvability.verdict == Verdict::NOT_SOLVABLE;
  if (!blocked || a.cfg.force_reconstruct) {
    rep.grid = interior_grid(a.spec, a.cfg.grid_resolution, a.cfg.grid_margin);
    rep.nonconvergent = blocked;
    if (a.classical) {
      const CauchyProblem& prob = *a.problem;
      const CoefficientSeries& series = rep.series;
      const ScalarField g = [&prob, &series](cplx z) {
        return prob.potential().value(z) - extend(series, z);
      };
      RealField reference;
      if (a.has_case && a.mc.harmonic) reference = a.mc.harmonic;
      const HarmonicReconstruction rec = from_holomorphic(
          a.spec, g, a.anchor, a.anchor_value, rep.grid, reference);
      rep.u.reserve(rec.u.size());
      for (double v : rec.u) rep.u.emplace_back(v, 0.0);
      rep.has_reference = rec.has_reference;
      if (rec.has_reference) {
        rep.reference.reserve(rec.reference.size());
        for (double v : rec.reference) rep.reference.emplace_back(v, 0.0);
      }
      rep.sup_error = rec.sup_error;
      rep.rms_error = rec.rms_error;
      rep.loop_residual = rec.loop_residual;
    } else {
      ScalarField reference;
      if (a.has_case && a.mc.solution) reference = a.mc.solution;
      Reconstruction rec = reconstruct_series(a.problem->potential(), rep.series,
                                              a.cfg.n_terms, rep.grid, reference);
      rep.u = std::move(rec.u);
      rep.has_reference = rec.has_reference;
      rep.reference = std::move(rec.reference);
      rep.sup_error = rec.sup_error;
      rep.rms_error = rec.rms_error;
    }
    rep.reconstructed = true;
  }
  rep.timings.reconstruction_ms = elapsed_ms(t0);
  rep.timings.total_ms = elapsed_ms(t_total);
  return rep;
}

std::string report_json(const RunReport& rep,
                        const std::vector<std::string>& artifacts,
                        bool with_timings) {
  json root;
  root["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
  root["config"] = json::parse(config_echo_json(rep.config));
  if (!rep.config.case_name.empty()) {
    root["case"] = {
        {"name", rep.config.case_name},
        {"classical", rep.classical},
        {"solvable_truth",
         rep.solvable_truth < 0 ? json(nullptr) : json(rep.solvable_truth == 1)},
        {"notes", rep.case_notes},
    };
  }
  root["resolutions"] = {
      {"gamma_nodes", rep.gamma_nodes},
      {"area_nodes", rep.area_nodes},
      {"grid_points", rep.grid.size()},
  };
  const SolvabilityReport& sv = rep.solvability;
  root["solvability"] = {
      {"verdict", to_string(sv.verdict)},
      {"rho_hat", double_or_null(sv.rho_hat)},
      {"tail_increment", double_or_null(sv.tail_increment)},
      {"growth", double_or_null(sv.growth)},
      {"terms", sv.terms},
      {"window_lo", sv.window_lo},
      {"rule", sv.rule},
      {"thresholds",
       {{"min_terms", sv.policy.min_terms},
        {"rho_max", sv.policy.rho_max},
        {"eps_tail", sv.policy.eps_tail},
        {"margin", sv.policy.margin},
        {"growth_factor", sv.policy.growth_factor},
        {"stagnation", sv.policy.stagnation}}},
  };
  root["suggested_terms"] = rep.suggested_terms;
  json rec = {
      {"performed", rep.reconstructed},
      {"nonconvergent", rep.nonconvergent},
      {"grid_points", rep.grid.size()},
  };
  if (rep.reconstructed && rep.has_reference) {
    rec["sup_error"] = double_or_null(rep.sup_error);
    rec["rms_error"] = double_or_null(rep.rms_error);
  } else {
    rec["sup_error"] = nullptr;
    rec["rms_error"] = nullptr;
  }
  rec["loop_residual"] =
      rep.loop_residual >= 0.0 ? double_or_null(rep.loop_residual) : json(nullptr);
  root["reconstruction"] = std::move(rec);
  root["artifacts"] = artifacts;
  if (with_timings) {
    root["timings"] = {
        {"geometry_ms", rep.timings.geometry_ms},
        {"data_ms", rep.timings.data_ms},
        {"basis_ms", rep.timings.basis_ms},
        {"coefficients_ms", rep.timings.coefficients_ms},
        {"reconstruction_ms", rep.timings.reconstruction_ms},
        {"total_ms", rep.timings.total_ms},
    };
  }
  return root.dump(2) + "\n";
}

namespace {

void write_text_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write \"" + path.string() + "\"");
  out << text;
  out.flush();
  if (!out.good()) throw ConfigError("write to \"" + path.string() + "\" failed");
}

std::string render_coefficients_csv(const RunReport& rep) {
  std::string text = "nu,re_c,im_c,s_n\n";
  char line[160];
  for (std::size_t i = 0; i < rep.series.c.size(); ++i) {
    std::snprintf(line, sizeof line, "%zu,%.17g,%.17g,%.17g\n", i + 1,
                  rep.series.c[i].real(), rep.series.c[i].imag(),
                  rep.series.partial_sums[i]);
    text += line;
  }
  return text;
}

std::string render_field_csv(const RunReport& rep) {
  std::string text;
  if (rep.nonconvergent) {
    text += "# forced reconstruction after a NOT_SOLVABLE verdict; "
            "values are diagnostic only\n";
  }
  text += rep.has_reference ? "x,y,re_u,im_u,re_u_exact,abs_err\n"
                            : "x,y,re_u,im_u\n";
  char line[240];
  for (std::size_t i = 0; i < rep.grid.size(); ++i) {
    if (rep.has_reference) {
      std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                    rep.grid[i].real(), rep.grid[i].imag(), rep.u[i].real(),
                    rep.u[i].imag(), rep.reference[i].real(),
                    std::abs(rep.u[i] - rep.reference[i]));
    } else {
      std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g\n",
                    rep.grid[i].real(), rep.grid[i].imag(), rep.u[i].real(),
                    rep.u[i].imag());
    }
    text += line;
  }
  return text;
}

std::string render_plot_script(const RunReport& rep) {
  std::string text =
      "# gnuplot script rendering the run's artifacts\n"
      "set datafile separator \",\"\n"
      "set terminal pngcairo size 900,600\n"
      "set output \"coefficient_decay.png\"\n"
      "set logscale y\n"
      "set xlabel \"nu\"\n"
      "set ylabel \"|c_nu|\"\n"
      "plot \"coefficients.csv\" skip 1 using 1:(sqrt($2**2 + $3**2)) \\\n"
      "     with linespoints pt 7 title \"coefficient magnitude\"\n";
  if (rep.reconstructed) {
    text +=
        "set output \"field.png\"\n"
        "unset logscale\n"
        "set xlabel \"x\"\n"
        "set ylabel \"y\"\n"
        "set size ratio -1\n"
        "plot \"field.csv\" skip 1 using 1:2:3 with points pt 5 ps 1.2 \\\n"
        "     palette title \"Re u\"\n";
  }
  return text;
}

}  // namespace

std::vector<std::string> write_artifacts(const RunReport& rep) {
  const fs::path dir = rep.config.output_dir;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw ConfigError("cannot create output directory \"" + dir.string() +
                      "\": " + ec.message());
  }

  std::vector<std::string> names = {"report.json", "coefficients.csv"};
  if (rep.reconstructed) names.push_back("field.csv");
  if (rep.config.emit_plots) names.push_back("plot.gp");

  std::vector<fs::path> written;
  auto emit = [&](const std::string& name, const std::string& text) {
    const fs::path path = dir / name;
    write_text_file(path, text);
    written.push_back(path);
  };
  try {
    emit("report.json", report_json(rep, names, true));
    emit("coefficients.csv", render_coefficients_csv(rep));
    if (rep.reconstructed) emit("field.csv", render_field_csv(rep));
    if (rep.config.emit_plots) emit("plot.gp", render_plot_script(rep));
  } catch (...) {
    for (const fs::path& p : written) fs::remove(p, ec);
    throw;
  }

  std::vector<std::string> paths;
  for (const std::string& name : names) paths.push_back((dir / name).string());
  return paths;
}

std::vector<std::string> check_scenario(const ScenarioConfig& config) {
  Assembly a = assemble(config);
  std::vector<std::string> lines;
  char buf[200];

  const char* kind = "chord";
  if (a.cfg.domain.gamma.kind == GammaKind::CircularArc) kind = "circular arc";
  if (a.cfg.domain.gamma.kind == GammaKind::SampledArc) kind = "sampled arc";
  std::snprintf(buf, sizeof buf,
                "domain: %s interface, %d boundary nodes, %d area nodes", kind,
                static_cast<int>(a.problem->gamma_rule().nodes.size()),
                a.problem->area()
                    ? static_cast<int>(a.problem->area()->nodes.size())
                    : 0);
  lines.push_back(buf);

  double u0_sup = 0.0;
  for (const cplx& v : a.problem->potential().boundary_density()) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw DataError("boundary data holds a non-finite value");
    }
    u0_sup = std::max(u0_sup, std::abs(v));
  }
  std::snprintf(buf, sizeof buf, "boundary data: sup |u0| = %.6g", u0_sup);
  lines.push_back(buf);
  if (const AreaPotential* src = a.problem->source_potential()) {
    double f_sup = 0.0;
    for (const cplx& v : src->density()) {
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        throw DataError("source data holds a non-finite value");
      }
      f_sup = std::max(f_sup, std::abs(v));
    }
    std::snprintf(buf, sizeof buf, "source data: sup |f| = %.6g", f_sup);
    lines.push_back(buf);
  } else {
    lines.push_back("source data: f = 0");
  }

  const CompatibilityCheck compat =
      check_compatibility(ComplexInstance::DBAR_PLANE, {}, {}, {});
  lines.push_back("compatibility: vacuous (E2=0)");
  lines.push_back("  " + compat.note);
  return lines;
}

std::vector<std::string> write_node_layout(const ScenarioConfig& config,
                                           const std::string& directory) {
  ScenarioConfig cfg = config;
  if (!cfg.case_name.empty() && !cfg.domain_overridden) {
    cfg.domain = manufactured_case(cfg.case_name).domain;
  }
  const DomainSpec spec = make_domain(cfg.domain);
  const fs::path dir = directory;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw ConfigError("cannot create output directory \"" + dir.string() +
                      "\": " + ec.message());
  }

  char line[200];
  std::string text = "index,x,y,nx,ny,w\n";
  const BoundaryRule rule =
      boundary_rule(spec, BoundaryPart::GAMMA, cfg.gamma_nodes);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const BoundaryNode& node = rule.nodes[i];
    std::snprintf(line, sizeof line, "%zu,%.17g,%.17g,%.17g,%.17g,%.17g\n", i,
                  node.z.real(), node.z.imag(), node.normal.real(),
                  node.normal.imag(), node.w);
    text += line;
  }
  const fs::path boundary_path = dir / "nodes.csv";
  write_text_file(boundary_path, text);

  text = "index,x,y,w\n";
  const AreaRule area = area_rule(spec, cfg.area_resolution);
  for (std::size_t i = 0; i < area.nodes.size(); ++i) {
    std::snprintf(line, sizeof line, "%zu,%.17g,%.17g,%.17g\n", i,
                  area.nodes[i].z.real(), area.nodes[i].z.imag(),
                  area.nodes[i].w);
    text += line;
  }
  const fs::path area_path = dir / "area_nodes.csv";
  write_text_file(area_path, text);
  return {boundary_path.string(), area_path.string()};
}

}  // namespace cauchylens
