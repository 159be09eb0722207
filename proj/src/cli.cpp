#include "conevortex/cli.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <numbers>

#include "conevortex/asympt.hpp"
#include "conevortex/geometry.hpp"
#include "conevortex/io.hpp"
#include "conevortex/kernels.hpp"
#include "conevortex/specfun.hpp"

namespace conevortex::cli {

using nlohmann::json;

namespace {

const std::vector<std::string> kSweepParameters = {"kr_c", "eta", "flux_ratio", "k", "kappa", "winding"};

bool contains(const std::vector<std::string>& list, const std::string& s) {
  return std::find(list.begin(), list.end(), s) != list.end();
}

std::string type_name(const json& v) {
  if (v.is_number_integer()) return "integer";
  if (v.is_number()) return "number";
  return v.type_name();
}

bool same_type(const json& want, const json& got) {
  if (want.is_number_integer()) return got.is_number_integer();
  if (want.is_number()) return got.is_number();
  return want.type() == got.type();
}

void check_against(const json& user, const json& schema, const std::string& path) {
  if (schema.is_object()) {
    if (!user.is_object()) throw ConfigError(path, "expected object, got " + type_name(user));
    for (const auto& [key, value] : user.items()) {
      const std::string sub = path.empty() ? key : path + "." + key;
      if (!schema.contains(key)) throw ConfigError(sub, "unknown key");
      check_against(value, schema.at(key), sub);
    }
    return;
  }
  if (schema.is_array()) {
    if (!user.is_array()) throw ConfigError(path, "expected array of numbers, got " + type_name(user));
    for (std::size_t i = 0; i < user.size(); ++i) {
      if (!user[i].is_number()) {
        throw ConfigError(path + "[" + std::to_string(i) + "]", "expected number, got " + type_name(user[i]));
      }
    }
    return;
  }
  if (!same_type(schema, user)) {
    throw ConfigError(path, "expected " + type_name(schema) + ", got " + type_name(user));
  }
}

void apply_override(json& doc, const json& schema, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) throw ConfigError("", "override must look like key=value: " + assignment);
  const std::string key = assignment.substr(0, eq);
  const std::string raw = assignment.substr(eq + 1);
  json value = json::parse(raw, nullptr, false);
  if (value.is_discarded()) value = raw;

  json patch = value;
  const json* node = &schema;
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto dot = key.find('.', start);
    parts.push_back(key.substr(start, dot - start));
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  std::string path;
  for (const auto& p : parts) {
    path = path.empty() ? p : path + "." + p;
    if (!node->is_object() || !node->contains(p)) throw ConfigError(path, "unknown key");
    node = &node->at(p);
  }
  for (auto it = parts.rbegin(); it != parts.rend(); ++it) patch = json{{*it, patch}};
  check_against(patch, schema, "");
  doc.merge_patch(patch);
}

template <class Fn>
void module_check(const std::string& section, Fn&& fn) {
  try {
    fn();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(section, e.what());
  }
}

scattering::Spin parse_spin(const std::string& s) {
  if (s == "0") return scattering::Spin::Zero;
  if (s == "+1/2" || s == "1/2") return scattering::Spin::PlusHalf;
  if (s == "-1/2") return scattering::Spin::MinusHalf;
  throw ConfigError("scatter.spin", "expected one of \"0\", \"+1/2\", \"-1/2\", got \"" + s + "\"");
}

scattering::Component parse_component(const std::string& s) {
  if (s == "total") return scattering::Component::Total;
  if (s == "zero-thickness") return scattering::Component::ZeroThickness;
  if (s == "core") return scattering::Component::Core;
  throw ConfigError("component", "expected one of total, zero-thickness, core, got \"" + s + "\"");
}

std::vector<double> numbers(const json& arr) { return arr.get<std::vector<double>>(); }

RunConfig build(const json& doc) {
  RunConfig c;
  c.document = doc;
  c.command = doc.at("command").get<std::string>();
  if (!contains(kCommands, c.command)) throw ConfigError("command", "unknown command \"" + c.command + "\"");

  const json& s = doc.at("scatter");
  c.scatter.eta = s.at("eta").get<double>();
  c.scatter.flux_ratio = s.at("flux_ratio").get<double>();
  c.scatter.spin = parse_spin(s.at("spin").get<std::string>());
  c.scatter.k = s.at("k").get<double>();
  c.scatter.r_c = s.at("r_c").get<double>();
  c.scatter.xi_c = s.at("xi_c").get<double>();
  c.scatter.truncation.tail_tol = s.at("tail_tol").get<double>();
  c.scatter.truncation.n_cap = s.at("n_cap").get<long>();

  const json& v = doc.at("vortex");
  c.vortex.m_H = v.at("m_H").get<double>();
  c.vortex.m_A = v.at("m_A").get<double>();
  c.vortex.sigma = v.at("sigma").get<double>();
  c.vortex.winding = v.at("winding").get<int>();
  c.vortex.e_H = c.vortex.sigma > 0.0 ? c.vortex.m_A / c.vortex.sigma : 0.0;
  c.newton_G = v.at("G").get<double>();
  c.vortex_grid.r_max = v.at("r_max").get<double>();
  c.vortex_grid.intervals = v.at("intervals").get<int>();
  c.solver.tol = v.at("tol").get<double>();
  c.solver.max_iterations = v.at("max_iterations").get<int>();
  c.solver.kappa_step = v.at("kappa_step").get<double>();

  const json& g = doc.at("grid");
  c.phi.points = g.at("phi_points").get<int>();
  c.phi.min = g.at("phi_min").get<double>();
  c.phi.max = g.at("phi_max").get<double>();
  if (c.phi.points < 1) throw ConfigError("grid.phi_points", "must be at least 1");
  if (!(c.phi.max >= c.phi.min)) throw ConfigError("grid.phi_max", "must not be below grid.phi_min");

  c.regime = doc.at("regime").get<std::string>();
  if (!contains({"auto", "long", "exact", "short", "semifluxon"}, c.regime)) {
    throw ConfigError("regime", "expected one of auto, long, exact, short, semifluxon, got \"" + c.regime + "\"");
  }
  c.component = parse_component(doc.at("component").get<std::string>());

  const json& cl = doc.at("classical");
  c.classical.impact_parameters = numbers(cl.at("impact_parameters"));
  c.classical.extent = cl.at("extent").get<double>();
  c.classical.samples = cl.at("samples").get<int>();

  c.nu = numbers(doc.at("specfun").at("nu"));
  c.x = numbers(doc.at("specfun").at("x"));

  const json& sw = doc.at("sweep");
  c.sweep_parameter = sw.at("parameter").get<std::string>();
  c.sweep_values = numbers(sw.at("values"));

  if (c.command == "amplitude" || c.command == "cross-section") {
    module_check("scatter", [&] { c.scatter.validate(); });
  } else if (c.command == "classical") {
    module_check("scatter", [&] {
      geometry::ConeGeometry{c.scatter.eta}.validate();
      if (c.classical.impact_parameters.empty()) throw DomainError("impact_parameters must not be empty");
      for (double b : c.classical.impact_parameters) {
        if (b == 0.0 || !std::isfinite(b)) throw DomainError("impact parameters must be finite and nonzero");
      }
      if (!(c.classical.extent > 0.0)) throw DomainError("extent must be positive");
      if (c.classical.samples < 3) throw DomainError("samples must be at least 3");
    });
  } else if (c.command == "profile" || c.command == "observables") {
    module_check("vortex", [&] {
      c.vortex.validate();
      if (!(c.newton_G >= 0.0)) throw DomainError("G must be non-negative");
    });
  } else if (c.command == "specfun-eval") {
    module_check("specfun", [&] {
      if (c.nu.empty() || c.x.empty()) throw DomainError("nu and x lists must not be empty");
      for (double nu : c.nu) {
        if (!(nu >= 0.0 && nu <= specfun::kMaxOrder)) throw DomainError("order must lie in [0, 5000]");
      }
      for (double x : c.x) {
        if (!(x > 0.0 && x <= specfun::kMaxArgument)) throw DomainError("argument must lie in (0, 5000]");
      }
    });
  } else if (c.command == "sweep") {
    const std::string sub = sw.at("command").get<std::string>();
    if (sub == "sweep" || !contains(kCommands, sub)) {
      throw ConfigError("sweep.command", "expected a non-sweep command, got \"" + sub + "\"");
    }
    if (!contains(kSweepParameters, c.sweep_parameter)) {
      throw ConfigError("sweep.parameter", "expected one of kr_c, eta, flux_ratio, k, kappa, winding");
    }
    if (c.sweep_values.empty()) throw ConfigError("sweep.values", "must not be empty");
    for (std::size_t i = 0; i < c.sweep_values.size(); ++i) {
      json d = doc;
      d["command"] = sub;
      const double val = c.sweep_values[i];
      if (c.sweep_parameter == "kr_c") {
        d["scatter"]["r_c"] = val / d["scatter"]["k"].get<double>();
      } else if (c.sweep_parameter == "kappa") {
        d["vortex"]["m_H"] = val * d["vortex"]["m_A"].get<double>();
      } else if (c.sweep_parameter == "winding") {
        if (val != std::round(val)) throw ConfigError("sweep.values", "winding values must be integers");
        d["vortex"]["winding"] = static_cast<int>(val);
      } else {
        d["scatter"][c.sweep_parameter] = val;
      }
      try {
        c.sub_runs.push_back(build(d));
      } catch (const ConfigError& e) {
        throw ConfigError("sweep.values[" + std::to_string(i) + "]", e.what());
      }
    }
  }
  return c;
}

json header_for(const RunConfig& c) {
  return json{{"version", io::kVersion}, {"command", c.command}, {"config", c.document}};
}

json modes_json(const scattering::ModeSum& m, const scattering::ScatterConfig& s) {
  if (m.coeff.empty()) return nullptr;
  return json{{"m_lo", m.m_lo},
              {"m_hi", m.m_hi()},
              {"terms", m.coeff.size()},
              {"max_term", m.max_term},
              {"first_neglected", m.first_neglected},
              {"tail_tol", s.truncation.tail_tol}};
}

using Files = std::vector<std::filesystem::path>;

void run_profile(const RunConfig& c, const std::filesystem::path& out, Files& files, bool with_profile) {
  const auto prof = vortex::solve_profiles(c.vortex, c.vortex_grid, c.solver);
  const auto obs = vortex::observables(c.vortex, prof, c.newton_G);
  json summary = header_for(c);
  summary["observables"] = {{"mu", obs.mu},
                            {"mu_error", obs.mu_error},
                            {"flux", obs.flux},
                            {"r_H", obs.r_H},
                            {"r_A", obs.r_A},
                            {"r_c", obs.r_c},
                            {"eta", obs.eta},
                            {"I_H", obs.I_H},
                            {"I_A", obs.I_A},
                            {"kappa", c.vortex.kappa()},
                            {"e_H", c.vortex.e_H},
                            {"residual_norm", prof.residual_norm},
                            {"continuation_steps", prof.continuation_steps}};
  const auto path = out / "observables.json";
  io::write_atomic(path, io::json_text(summary));
  files.push_back(path);
  if (!with_profile) return;

  const auto b3 = vortex::field_strength(c.vortex, prof);
  const auto t00 = vortex::stress_energy_profile(c.vortex, prof);
  io::CsvWriter csv(header_for(c), {"r", "tau_H", "tau_A", "B3", "T00"});
  for (std::size_t j = 0; j < prof.grid.size(); ++j) {
    csv.cell(prof.grid[j]).cell(prof.tau_H[j]).cell(prof.tau_A[j]).cell(b3[j]).cell(t00[j]);
    csv.end_row();
  }
  const auto cpath = out / "profile.csv";
  io::write_atomic(cpath, csv.text());
  files.push_back(cpath);
}

void run_classical(const RunConfig& c, const std::filesystem::path& out, Files& files) {
  const geometry::ConeGeometry geom{c.scatter.eta};
  const auto counts = geometry::mode_count_table(geom);
  const auto lines = geometry::trajectories(geom, c.classical.impact_parameters, c.classical.extent,
                                            c.classical.samples);
  io::CsvWriter csv(header_for(c), {"trajectory_id", "x1", "x2"});
  json deflections = json::array();
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (const auto& p : lines[i]) {
      csv.cell(static_cast<long>(i)).cell(p.x1).cell(p.x2);
      csv.end_row();
    }
    deflections.push_back({{"trajectory_id", i},
                           {"impact_parameter", c.classical.impact_parameters[i]},
                           {"measured_deflection", geometry::measured_deflection(lines[i])}});
  }
  const auto cpath = out / "trajectories.csv";
  io::write_atomic(cpath, csv.text());
  files.push_back(cpath);

  json report = header_for(c);
  report["region"] = {{"kind", geometry::to_string(counts.region.kind)},
                      {"omega", counts.region.omega},
                      {"n_l_inside", counts.inside},
                      {"n_l_outside", counts.outside}};
  report["trajectories"] = deflections;
  const auto jpath = out / "region.json";
  io::write_atomic(jpath, io::json_text(report));
  files.push_back(jpath);
}

void run_amplitude(const RunConfig& c, const std::filesystem::path& out, Files& files) {
  const auto amp = scattering::amplitude_on_grid(c.scatter, c.phi.values(), c.component);
  json header = header_for(c);
  header["regime"] = amp.regime;
  header["component"] = scattering::to_string(c.component);
  header["truncation"] = modes_json(amp.modes, c.scatter);
  io::CsvWriter csv(header, {"phi", "re_f", "im_f", "dsigma", "reason"});
  for (std::size_t j = 0; j < amp.phi.size(); ++j) {
    csv.cell(amp.phi[j]).cell(amp.values[j].real()).cell(amp.values[j].imag()).cell(amp.dsigma[j]).cell(amp.reason[j]);
    csv.end_row();
  }
  const auto path = out / "amplitude.csv";
  io::write_atomic(path, csv.text());
  files.push_back(path);
}

void run_cross_section(const RunConfig& c, const std::filesystem::path& out, Files& files) {
  const auto grid = c.phi.values();
  const std::size_t n = grid.size();
  std::vector<double> ds(n);
  std::vector<std::string> formula(n), reason(n);
  std::string regime = c.regime;
  if (regime == "auto") regime = c.scatter.r_c > 0.0 ? "exact" : "long";
  json header = header_for(c);
  if (regime == "long") {
    const auto cs = scattering::dsigma_long(c.scatter, grid);
    ds = cs.dsigma;
    reason = cs.reason;
    std::fill(formula.begin(), formula.end(), "long-wavelength");
  } else if (regime == "exact") {
    const auto amp = scattering::amplitude_on_grid(c.scatter, grid, scattering::Component::Total);
    ds = amp.dsigma;
    reason = amp.reason;
    std::fill(formula.begin(), formula.end(), "partial-wave");
    header["truncation"] = modes_json(amp.modes, c.scatter);
    if (c.scatter.r_c > 0.0) header["sigma_core"] = scattering::sigma_tot_core_parseval(c.scatter);
  } else if (regime == "short") {
    const auto sw = asympt::dsigma_short(c.scatter, grid);
    ds = sw.dsigma;
    formula = sw.formula;
    reason = sw.reason;
    header["sigma_tot_short"] = asympt::sigma_tot_short(c.scatter);
  } else {
    for (std::size_t j = 0; j < n; ++j) {
      formula[j] = "semifluxon";
      try {
        ds[j] = scattering::dsigma_semifluxon(c.scatter, grid[j]);
      } catch (const PoleSignal&) {
        ds[j] = std::nan("");
        reason[j] = "pole";
      }
    }
  }
  header["regime"] = regime;
  io::CsvWriter csv(header, {"phi", "dsigma", "valid", "formula", "reason"});
  for (std::size_t j = 0; j < n; ++j) {
    const bool valid = reason[j].empty();
    csv.cell(grid[j]).cell(ds[j]).cell(static_cast<long>(valid)).cell(valid ? formula[j] : std::string()).cell(reason[j]);
    csv.end_row();
  }
  const auto path = out / "cross_section.csv";
  io::write_atomic(path, csv.text());
  files.push_back(path);
}

void run_specfun(const RunConfig& c, const std::filesystem::path& out, Files& files) {
  io::CsvWriter csv(header_for(c), {"nu", "x", "J", "dJ", "Y", "dY", "re_jh", "im_jh", "log_abs_jh"});
  for (double nu : c.nu) {
    for (double x : c.x) {
      const auto jy = specfun::bessel_jy(nu, x);
      const auto r = specfun::jh_ratio(jy);
      csv.cell(nu).cell(x).cell(jy.j.unscaled_value()).cell(jy.j.unscaled_derivative());
      csv.cell(jy.y.unscaled_value()).cell(jy.y.unscaled_derivative());
      csv.cell(r.real()).cell(r.imag()).cell(specfun::log_abs_jh_ratio(jy));
      csv.end_row();
    }
  }
  const auto path = out / "specfun.csv";
  io::write_atomic(path, csv.text());
  files.push_back(path);
}

json error_json(const std::exception_ptr& ep, int& code) {
  try {
    std::rethrow_exception(ep);
  } catch (const ConfigError& e) {
    code = exit_code(e.kind());
    return {{"error", to_string(e.kind())}, {"message", e.what()}, {"key_path", e.key_path()}};
  } catch (const ConvergenceError& e) {
    code = exit_code(e.kind());
    return {{"error", to_string(e.kind())}, {"message", e.what()}, {"history", e.history()}};
  } catch (const PoleSignal& e) {
    code = exit_code(e.kind());
    return {{"error", to_string(e.kind())}, {"message", e.what()}, {"direction", e.direction()}};
  } catch (const ResonanceError& e) {
    code = exit_code(e.kind());
    return {{"error", to_string(e.kind())}, {"message", e.what()}, {"mode", e.mode()}};
  } catch (const Error& e) {
    code = exit_code(e.kind());
    return {{"error", to_string(e.kind())}, {"message", e.what()}};
  } catch (const std::exception& e) {
    code = 1;
    return {{"error", "internal"}, {"message", e.what()}};
  }
}

ExecResult run_single(const RunConfig& c, const std::filesystem::path& out) {
  ExecResult r;
  try {
    if (c.command == "profile") {
      run_profile(c, out, r.files, true);
    } else if (c.command == "observables") {
      run_profile(c, out, r.files, false);
    } else if (c.command == "classical") {
      run_classical(c, out, r.files);
    } else if (c.command == "amplitude") {
      run_amplitude(c, out, r.files);
    } else if (c.command == "cross-section") {
      run_cross_section(c, out, r.files);
    } else if (c.command == "specfun-eval") {
      run_specfun(c, out, r.files);
    }
  } catch (...) {
    r.error = error_json(std::current_exception(), r.exit_code);
    r.error["exit_code"] = r.exit_code;
  }
  return r;
}

std::string run_name(std::size_t i) {
  std::string digits = std::to_string(i);
  while (digits.size() < 3) digits = "0" + digits;
  return "run_" + digits;
}

}  // namespace

std::vector<double> PhiGrid::values() const {
  std::vector<double> out(points);
  if (points == 1) {
    out[0] = min;
    return out;
  }
  for (int j = 0; j < points; ++j) {
    out[j] = (j == points - 1) ? max : min + (max - min) * j / (points - 1);
  }
  return out;
}

json default_document() {
  return json{{"command", "cross-section"},
              {"scatter",
               {{"eta", 0.25},
                {"flux_ratio", 0.5},
                {"spin", "0"},
                {"k", 1.0},
                {"r_c", 0.0},
                {"xi_c", 0.0},
                {"tail_tol", 1e-12},
                {"n_cap", 0}}},
              {"vortex",
               {{"m_H", 2.0},
                {"m_A", 1.0},
                {"sigma", 1.0},
                {"winding", 1},
                {"G", 0.0},
                {"r_max", 0.0},
                {"intervals", 4000},
                {"tol", 1e-9},
                {"max_iterations", 100},
                {"kappa_step", 1.25}}},
              {"grid", {{"phi_points", 721}, {"phi_min", 0.0}, {"phi_max", 2.0 * std::numbers::pi}}},
              {"regime", "auto"},
              {"component", "total"},
              {"classical",
               {{"impact_parameters", {-3.0, -2.5, -2.0, -1.5, -1.0, -0.5, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0}},
                {"extent", 10.0},
                {"samples", 801}}},
              {"sweep", {{"parameter", "kr_c"}, {"values", json::array()}, {"command", "cross-section"}}},
              {"specfun", {{"nu", {0.5, 1.0, 2.5, 10.0}}, {"x", {0.1, 1.0, 10.0, 100.0}}}}};
}

RunConfig parse_config(const std::string& text, const std::vector<std::string>& overrides) {
  const json schema = default_document();
  json user;
  try {
    user = json::parse(text.empty() ? std::string("{}") : text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("malformed JSON: ") + e.what());
  }
  check_against(user, schema, "");
  json doc = schema;
  doc.merge_patch(user);
  for (const auto& o : overrides) apply_override(doc, schema, o);
  return build(doc);
}

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Config:
    case ErrorKind::Domain:
      return 2;
    case ErrorKind::Range:
    case ErrorKind::NonConvergence:
    case ErrorKind::Divergence:
    case ErrorKind::Resonance:
      return 3;
    case ErrorKind::Degenerate:
    case ErrorKind::Pole:
      return 4;
  }
  return 1;
}

ExecResult execute(const RunConfig& config, const std::filesystem::path& out_dir) {
  if (config.command != "sweep") return run_single(config, out_dir);

  const std::size_t n = config.sub_runs.size();
  std::vector<ExecResult> results(n);
  std::vector<std::string> names(n);
  for (std::size_t i = 0; i < n; ++i) names[i] = run_name(i);
#pragma omp parallel for schedule(dynamic, 1) num_threads(kernels::workers())
  for (std::size_t i = 0; i < n; ++i) {
    results[i] = run_single(config.sub_runs[i], out_dir / names[i]);
  }

  ExecResult out;
  json index = header_for(config);
  json runs = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    json entry{{"run", names[i]},
               {"parameter", config.sweep_parameter},
               {"value", config.sweep_values[i]},
               {"exit_code", results[i].exit_code}};
    json files = json::array();
    for (const auto& f : results[i].files) files.push_back(f.lexically_relative(out_dir).generic_string());
    entry["files"] = files;
    if (!results[i].error.is_null()) entry["error"] = results[i].error;
    runs.push_back(entry);
    out.files.insert(out.files.end(), results[i].files.begin(), results[i].files.end());
    if (out.exit_code == 0 && results[i].exit_code != 0) {
      out.exit_code = results[i].exit_code;
      out.error = results[i].error;
    }
  }
  index["runs"] = runs;
  const auto path = out_dir / "sweep.json";
  io::write_atomic(path, io::json_text(index));
  out.files.push_back(path);
  return out;
}

}  // namespace conevortex::cli
