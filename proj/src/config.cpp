#include "cauchylens/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "json.hpp"

namespace cauchylens {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& message) { throw ConfigError(message); }

// Rejects any key the schema does not document.  Silent acceptance of a
// misspelled threshold would quietly change what a verdict means.
void check_keys(const json& block, const std::string& name,
                const std::set<std::string>& allowed) {
  for (const auto& item : block.items()) {
    if (!allowed.count(item.key())) {
      fail("unknown key \"" + item.key() + "\" in block \"" + name + "\"");
    }
  }
}

const json* get_block(const json& root, const char* name) {
  if (!root.contains(name)) return nullptr;
  const json& block = root.at(name);
  if (!block.is_object()) fail(std::string("block \"") + name + "\" must be an object");
  return &block;
}

double get_double(const json& block, const char* key, double fallback) {
  if (!block.contains(key)) return fallback;
  const json& v = block.at(key);
  if (!v.is_number()) fail(std::string("key \"") + key + "\" must be a number");
  return v.get<double>();
}

int get_int(const json& block, const char* key, int fallback) {
  if (!block.contains(key)) return fallback;
  const json& v = block.at(key);
  if (!v.is_number_integer()) fail(std::string("key \"") + key + "\" must be an integer");
  return v.get<int>();
}

bool get_bool(const json& block, const char* key, bool fallback) {
  if (!block.contains(key)) return fallback;
  const json& v = block.at(key);
  if (!v.is_boolean()) fail(std::string("key \"") + key + "\" must be a boolean");
  return v.get<bool>();
}

std::string get_string(const json& block, const char* key, const std::string& fallback) {
  if (!block.contains(key)) return fallback;
  const json& v = block.at(key);
  if (!v.is_string()) fail(std::string("key \"") + key + "\" must be a string");
  return v.get<std::string>();
}

cplx get_point(const json& v, const char* key) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    fail(std::string("key \"") + key + "\" must be an array [x, y]");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

GammaDescriptor parse_gamma(const json& g) {
  if (!g.is_object()) fail("key \"gamma\" must be an object");
  const std::string kind = get_string(g, "kind", "chord");
  if (kind == "chord") {
    check_keys(g, "domain.gamma", {"kind", "offset"});
    if (!g.contains("offset")) fail("gamma kind \"chord\" needs key \"offset\"");
    return GammaDescriptor::chord(get_double(g, "offset", 0.0));
  }
  if (kind == "circular_arc") {
    check_keys(g, "domain.gamma", {"kind", "center", "radius"});
    if (!g.contains("center") || !g.contains("radius")) {
      fail("gamma kind \"circular_arc\" needs keys \"center\" and \"radius\"");
    }
    const double radius = get_double(g, "radius", 0.0);
    if (radius <= 0.0) fail("gamma radius must be positive");
    return GammaDescriptor::circular_arc(get_point(g.at("center"), "center"), radius);
  }
  if (kind == "sampled_arc") {
    check_keys(g, "domain.gamma", {"kind", "points"});
    if (!g.contains("points") || !g.at("points").is_array()) {
      fail("gamma kind \"sampled_arc\" needs an array key \"points\"");
    }
    std::vector<cplx> pts;
    for (const json& p : g.at("points")) pts.push_back(get_point(p, "points"));
    if (pts.size() < 4) fail("sampled_arc needs at least 4 points");
    return GammaDescriptor::sampled_arc(std::move(pts));
  }
  fail("gamma kind must be chord | circular_arc | sampled_arc, got \"" + kind + "\"");
}

void parse_domain(const json& block, ScenarioConfig& cfg) {
  check_keys(block, "domain",
             {"omega_radius", "gamma", "side", "test_ball_radius"});
  cfg.domain.omega_radius = get_double(block, "omega_radius", 1.0);
  if (!(cfg.domain.omega_radius > 0.0)) fail("omega_radius must be positive");
  if (block.contains("gamma")) cfg.domain.gamma = parse_gamma(block.at("gamma"));
  const std::string side = get_string(block, "side", "positive");
  if (side == "positive") {
    cfg.domain.side = Side::Positive;
  } else if (side == "negative") {
    cfg.domain.side = Side::Negative;
  } else {
    fail("side must be \"positive\" or \"negative\", got \"" + side + "\"");
  }
  cfg.domain.test_ball_radius = get_double(block, "test_ball_radius", -1.0);
  if (cfg.domain.test_ball_radius == 0.0 ||
      cfg.domain.test_ball_radius >= cfg.domain.omega_radius) {
    fail("test_ball_radius must lie strictly between 0 and omega_radius "
         "(or be negative to pick the default)");
  }
  cfg.domain_overridden = true;
}

void parse_data(const json& block, ScenarioConfig& cfg) {
  check_keys(block, "data",
             {"case", "u0_csv", "f_csv", "classical_csv", "anchor_s",
              "anchor_value", "stencil_width"});
  cfg.case_name = get_string(block, "case", "");
  cfg.u0_csv = get_string(block, "u0_csv", "");
  cfg.f_csv = get_string(block, "f_csv", "");
  cfg.classical_csv = get_string(block, "classical_csv", "");
  cfg.anchor_s = get_double(block, "anchor_s", 0.5);
  cfg.anchor_value = get_double(block, "anchor_value", 0.0);
  cfg.stencil_width = get_int(block, "stencil_width", 7);

  const bool has_case = !cfg.case_name.empty();
  const bool has_csv = !cfg.u0_csv.empty() || !cfg.f_csv.empty();
  const bool has_classical = !cfg.classical_csv.empty();
  if (has_case + has_csv + has_classical > 1) {
    fail("data block must name at most one source: a manufactured case, "
         "u0_csv/f_csv, or classical_csv");
  }
  if (!(cfg.anchor_s >= 0.0 && cfg.anchor_s <= 1.0)) {
    fail("anchor_s must lie in [0, 1]");
  }
  if (cfg.stencil_width < 3) fail("stencil_width must be at least 3");
}

void parse_basis(const json& block, ScenarioConfig& cfg) {
  check_keys(block, "basis", {"kind", "n_max", "degree_cutoff"});
  cfg.basis_kind = get_string(block, "kind", "analytic");
  if (cfg.basis_kind != "analytic" && cfg.basis_kind != "numeric") {
    fail("basis kind must be \"analytic\" or \"numeric\", got \"" +
         cfg.basis_kind + "\"");
  }
  cfg.basis_n_max = get_int(block, "n_max", 40);
  if (cfg.basis_n_max < 1) fail("basis n_max must be at least 1");
  cfg.degree_cutoff = get_int(block, "degree_cutoff", 0);
  if (cfg.degree_cutoff < 0) fail("degree_cutoff must be nonnegative");
  if (cfg.degree_cutoff > 0 && cfg.degree_cutoff < cfg.basis_n_max) {
    fail("degree_cutoff must be at least n_max when set");
  }
}

void parse_thresholds(const json& block, SolvabilityPolicy& policy) {
  check_keys(block, "solver.thresholds",
             {"min_terms", "rho_max", "eps_tail", "margin", "growth_factor",
              "stagnation"});
  policy.min_terms = get_int(block, "min_terms", policy.min_terms);
  policy.rho_max = get_double(block, "rho_max", policy.rho_max);
  policy.eps_tail = get_double(block, "eps_tail", policy.eps_tail);
  policy.margin = get_double(block, "margin", policy.margin);
  policy.growth_factor = get_double(block, "growth_factor", policy.growth_factor);
  policy.stagnation = get_double(block, "stagnation", policy.stagnation);
  if (policy.min_terms < 2) fail("thresholds.min_terms must be at least 2");
  if (!(policy.rho_max > 0.0 && policy.rho_max < 1.0 + policy.margin)) {
    fail("thresholds.rho_max must lie in (0, 1 + margin)");
  }
  if (!(policy.eps_tail > 0.0)) fail("thresholds.eps_tail must be positive");
  if (!(policy.margin > 0.0)) fail("thresholds.margin must be positive");
  if (!(policy.growth_factor > 1.0)) {
    fail("thresholds.growth_factor must exceed 1");
  }
  if (!(policy.stagnation > 0.0)) fail("thresholds.stagnation must be positive");
}

void parse_solver(const json& block, ScenarioConfig& cfg) {
  check_keys(block, "solver",
             {"n_terms", "thresholds", "grid_resolution", "grid_margin",
              "force_reconstruct", "gamma_nodes", "area_resolution",
              "coeff_boundary_nodes"});
  cfg.n_terms = get_int(block, "n_terms", 30);
  if (cfg.n_terms < 1) fail("n_terms must be at least 1");
  if (block.contains("thresholds")) {
    const json& th = block.at("thresholds");
    if (!th.is_object()) fail("key \"thresholds\" must be an object");
    parse_thresholds(th, cfg.policy);
  }
  cfg.grid_resolution = get_int(block, "grid_resolution", 20);
  if (cfg.grid_resolution < 2) fail("grid_resolution must be at least 2");
  cfg.grid_margin = get_double(block, "grid_margin", 0.1);
  if (!(cfg.grid_margin > 0.0)) fail("grid_margin must be positive");
  cfg.force_reconstruct = get_bool(block, "force_reconstruct", false);
  cfg.gamma_nodes = get_int(block, "gamma_nodes", 512);
  if (cfg.gamma_nodes < 16) fail("gamma_nodes must be at least 16");
  cfg.area_resolution = get_int(block, "area_resolution", 32);
  if (cfg.area_resolution < 2) fail("area_resolution must be at least 2");
  cfg.coeff_boundary_nodes = get_int(block, "coeff_boundary_nodes", 0);
  if (cfg.coeff_boundary_nodes < 0) {
    fail("coeff_boundary_nodes must be nonnegative (0 = automatic)");
  }
}

void parse_output(const json& block, ScenarioConfig& cfg) {
  check_keys(block, "output", {"directory", "emit_plots"});
  cfg.output_dir = get_string(block, "directory", "out");
  if (cfg.output_dir.empty()) fail("output directory must not be empty");
  cfg.emit_plots = get_bool(block, "emit_plots", false);
}

}  // namespace

ScenarioConfig parse_config_text(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail(std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_object()) fail("top level must be a JSON object");
  check_keys(root, "top level", {"domain", "data", "basis", "solver", "output"});

  ScenarioConfig cfg;
  if (const json* b = get_block(root, "domain")) parse_domain(*b, cfg);
  if (const json* b = get_block(root, "data")) parse_data(*b, cfg);
  if (const json* b = get_block(root, "basis")) parse_basis(*b, cfg);
  if (const json* b = get_block(root, "solver")) parse_solver(*b, cfg);
  if (const json* b = get_block(root, "output")) parse_output(*b, cfg);

  if (cfg.n_terms > cfg.basis_n_max) {
    fail("n_terms exceeds basis n_max; raise basis.n_max");
  }
  if (cfg.n_terms < cfg.policy.min_terms) {
    fail("n_terms is below thresholds.min_terms; the verdict needs that many "
         "coefficients");
  }
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot read config file \"" + path + "\"");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

std::string config_echo_json(const ScenarioConfig& cfg) {
  json gamma;
  switch (cfg.domain.gamma.kind) {
    case GammaKind::Chord:
      gamma = {{"kind", "chord"}, {"offset", cfg.domain.gamma.chord_offset}};
      break;
    case GammaKind::CircularArc:
      gamma = {{"kind", "circular_arc"},
               {"center", {cfg.domain.gamma.arc_center.real(),
                           cfg.domain.gamma.arc_center.imag()}},
               {"radius", cfg.domain.gamma.arc_radius}};
      break;
    case GammaKind::SampledArc: {
      json pts = json::array();
      for (const cplx& p : cfg.domain.gamma.samples) {
        pts.push_back({p.real(), p.imag()});
      }
      gamma = {{"kind", "sampled_arc"}, {"points", std::move(pts)}};
      break;
    }
  }

  json root;
  root["domain"] = {
      {"omega_radius", cfg.domain.omega_radius},
      {"gamma", std::move(gamma)},
      {"side", cfg.domain.side == Side::Positive ? "positive" : "negative"},
      {"test_ball_radius", cfg.domain.test_ball_radius},
  };
  root["data"] = {
      {"case", cfg.case_name},       {"u0_csv", cfg.u0_csv},
      {"f_csv", cfg.f_csv},          {"classical_csv", cfg.classical_csv},
      {"anchor_s", cfg.anchor_s},    {"anchor_value", cfg.anchor_value},
      {"stencil_width", cfg.stencil_width},
  };
  root["basis"] = {
      {"kind", cfg.basis_kind},
      {"n_max", cfg.basis_n_max},
      {"degree_cutoff", cfg.degree_cutoff},
  };
  root["solver"] = {
      {"n_terms", cfg.n_terms},
      {"thresholds",
       {{"min_terms", cfg.policy.min_terms},
        {"rho_max", cfg.policy.rho_max},
        {"eps_tail", cfg.policy.eps_tail},
        {"margin", cfg.policy.margin},
        {"growth_factor", cfg.policy.growth_factor},
        {"stagnation", cfg.policy.stagnation}}},
      {"grid_resolution", cfg.grid_resolution},
      {"grid_margin", cfg.grid_margin},
      {"force_reconstruct", cfg.force_reconstruct},
      {"gamma_nodes", cfg.gamma_nodes},
      {"area_resolution", cfg.area_resolution},
      {"coeff_boundary_nodes", cfg.coeff_boundary_nodes},
  };
  root["output"] = {
      {"directory", cfg.output_dir},
      {"emit_plots", cfg.emit_plots},
  };
  return root.dump(2);
}

}  // namespace cauchylens
