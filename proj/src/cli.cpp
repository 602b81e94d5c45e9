#include "pdm/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "pdm/catalog.hpp"
#include "pdm/errors.hpp"
#include "pdm/numeric_verify.hpp"
#include "pdm/wavefunctions.hpp"

namespace pdm::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    throw UsageError("invalid number for " + what + ": '" + text + "'");
  }
  if (used != t.size()) throw UsageError("invalid number for " + what + ": '" + text + "'");
  return v;
}

int parse_int(const std::string& text, const std::string& what) {
  const double v = parse_double(text, what);
  if (v != std::floor(v) || std::abs(v) > 1e9) throw UsageError(what + " must be an integer");
  return static_cast<int>(v);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

// Code points, for column alignment of UTF-8 text.
std::size_t display_width(const std::string& s) {
  return static_cast<std::size_t>(
      std::count_if(s.begin(), s.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }));
}

nlohmann::ordered_json to_json(const Cell& c) {
  return std::visit(
      [](const auto& v) -> nlohmann::ordered_json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return nullptr;
        } else if constexpr (std::is_same_v<T, double>) {
          if (!std::isfinite(v)) return format_number(v);
          return std::stod(format_number(v));
        } else {
          return v;
        }
      },
      c);
}

std::string interval_text(const Interval& d) {
  return std::string(d.lo_closed ? "[" : "(") + format_number(d.lo) + ", " + format_number(d.hi) +
         (d.hi_closed ? "]" : ")");
}

Cell count_cell(const BoundStateCount& c) {
  if (c.is_infinite()) return std::string("inf");
  return static_cast<long long>(c.value);
}

void add_parameter_meta(Table& t, const PotentialModel& m, const ParamMap& p) {
  t.meta.emplace_back("model", m.id);
  for (const auto& [name, value] : p) t.meta.emplace_back(name, value);
  for (const NamedValue& d : m.derived(p)) t.meta.emplace_back(d.name, d.value);
}

const PotentialModel& require_model(const RunConfig& cfg) {
  if (cfg.model.empty()) throw UsageError("--model is required");
  return find_model(cfg.model);
}

// list

Table cmd_list() {
  Table t;
  t.columns = {"id", "active", "title", "domain", "parameters", "windows", "count_rule", "exclusion"};
  for (const ModelDescriptor& d : list_models()) {
    std::vector<Cell> row{d.id, d.active};
    if (d.model) {
      const PotentialModel& m = *d.model;
      std::string params, windows;
      for (const ParameterSpec& s : m.parameters)
        params += (params.empty() ? "" : " ") + s.name + "=" + format_number(s.default_value);
      for (const Constraint& c : m.constraints) windows += (windows.empty() ? "" : "; ") + c.window;
      row.insert(row.end(), {m.title, interval_text(m.domain), params, windows, m.count_rule_kind});
    } else {
      row.insert(row.end(), 5, std::monostate{});
    }
    row.push_back(d.reason ? Cell(to_string(*d.reason)) : Cell(std::monostate{}));
    t.rows.push_back(std::move(row));
  }
  return t;
}

// spectrum

Table cmd_spectrum(const RunConfig& cfg) {
  const PotentialModel& m = require_model(cfg);
  const ParamMap p = resolve_parameters(m, cfg.params);
  Table t;
  add_parameter_meta(t, m, p);
  t.columns = {"n", "E"};
  const BoundStateCount count = bound_state_count(m, p);
  if (cfg.n) {
    t.rows.push_back({static_cast<long long>(*cfg.n), spectrum(m, p, *cfg.n)});
  } else {
    const SpectrumResult r = spectrum_table(m, p, cfg.levels);
    for (std::size_t i = 0; i < r.energies.size(); ++i)
      t.rows.push_back({static_cast<long long>(i), r.energies[i]});
  }
  t.footer.emplace_back("count", count_cell(count));
  return t;
}

// wavefunction

Table cmd_wavefunction(const RunConfig& cfg) {
  const PotentialModel& m = require_model(cfg);
  const ParamMap p = resolve_parameters(m, cfg.params);
  const int n = cfg.n.value_or(0);
  if (n < 0) throw UsageError("--n must be nonnegative");
  const int samples = cfg.grid.value_or(2001);
  if (samples < 2) throw UsageError("--grid must be at least 2 for wavefunction sampling");
  const SIParameterTrack track = model_track(m, p, n + 2);
  const WavefunctionBundle b = assemble_psi(track, n, {}, samples);
  const AmbiguityParams amb{cfg.xi, cfg.zeta};

  Table t;
  add_parameter_meta(t, m, p);
  t.meta.emplace_back("xi", cfg.xi);
  t.meta.emplace_back("zeta", cfg.zeta);
  t.columns = {"x", "psi", "v_tilde"};
  for (const auto& [x, psi] : b.samples) t.rows.push_back({x, psi, v_tilde(m, p, amb, x)});
  t.footer.emplace_back("n", static_cast<long long>(n));
  t.footer.emplace_back("energy", formal_spectrum(m, p, n));
  t.footer.emplace_back("admitted", bound_state_count(m, p).admits(n));
  t.footer.emplace_back("norm", b.norm);
  t.footer.emplace_back("l2_ok", b.l2_ok);
  t.footer.emplace_back("hermiticity_ok", b.hermiticity_ok);
  t.footer.emplace_back("boundary_lo", b.boundary_values.lo);
  t.footer.emplace_back("boundary_hi", b.boundary_values.hi);
  t.footer.emplace_back("node_count", static_cast<long long>(b.node_count));
  if (b.truncation_radius) t.footer.emplace_back("truncation_radius", *b.truncation_radius);
  return t;
}

// verify

Table cmd_verify(const RunConfig& cfg, bool& passed) {
  const PotentialModel& m = require_model(cfg);
  const ParamMap p = resolve_parameters(m, cfg.params);
  VerifyOptions opt;
  opt.grid = cfg.grid.value_or(4096);
  opt.tol = cfg.tol;
  if (opt.grid < 64) throw UsageError("--grid must be at least 64");

  SpectrumResult analytic = spectrum_table(m, p, cfg.levels);
  if (cfg.corrupt_spectrum)
    for (double& e : analytic.energies) e = e * (1.0 + 1e-3) + 1e-3;
  const MappedProblem prob = mapped_problem(m, p);
  const int k = std::max<int>(1, static_cast<int>(analytic.energies.size()));
  const NumericSpectrum ns = numeric_spectrum(prob, k, opt);
  const ComparisonReport r = compare_spectra(analytic, ns, opt.tol);

  Table t;
  add_parameter_meta(t, m, p);
  t.meta.emplace_back("grid", static_cast<long long>(opt.grid));
  t.meta.emplace_back("tol", opt.tol);
  t.meta.emplace_back("u_lo", ns.window.lo);
  t.meta.emplace_back("u_hi", ns.window.hi);
  t.meta.emplace_back("truncation", ns.window.truncation);
  t.columns = {"n", "analytic", "numeric", "rel_error", "ok"};
  for (std::size_t i = 0; i < r.analytic.size(); ++i) {
    const bool have = i < r.numeric.size();
    t.rows.push_back({static_cast<long long>(i), r.analytic[i],
                      have ? Cell(r.numeric[i]) : Cell(std::monostate{}),
                      have ? Cell(r.rel_error[i]) : Cell(std::monostate{}),
                      have && r.rel_error[i] <= opt.tol});
  }
  t.footer.emplace_back("max_rel_error", r.max_rel_error);
  t.footer.emplace_back("count", count_cell(analytic.count));
  t.footer.emplace_back("numeric_count", r.numeric_count ? Cell(static_cast<long long>(*r.numeric_count))
                                                         : Cell(std::monostate{}));
  t.footer.emplace_back("count_ok", r.count_ok);
  t.footer.emplace_back("pass", r.pass);
  passed = r.pass;
  return t;
}

// sweep

struct SweepPoint {
  BoundStateCount count;
  std::vector<double> energies;
};

Table cmd_sweep(const RunConfig& cfg) {
  const PotentialModel& m = require_model(cfg);
  if (!cfg.sweep) throw UsageError("sweep requires --sweep name=values");
  const SweepSpec& sw = cfg.sweep.value();
  const bool known = std::any_of(m.parameters.begin(), m.parameters.end(),
                                 [&](const ParameterSpec& s) { return s.name == sw.name; });
  if (!known) throw UnknownParameterError("model " + m.id + " has no parameter '" + sw.name + "'");

  std::vector<ParamMap> points;
  for (double v : sw.values) {
    ParamMap given = cfg.params;
    given[sw.name] = v;
    points.push_back(resolve_parameters(m, given));
  }
  std::vector<std::future<SweepPoint>> jobs;
  for (const ParamMap& p : points) {
    jobs.push_back(std::async(std::launch::async, [&m, p, levels = cfg.levels] {
      const SpectrumResult r = spectrum_table(m, p, levels);
      return SweepPoint{r.count, r.energies};
    }));
  }

  Table t;
  t.meta.emplace_back("model", m.id);
  for (const auto& [name, value] : points.front())
    if (name != sw.name) t.meta.emplace_back(name, value);
  t.meta.emplace_back("swept", sw.name);
  t.columns = {sw.name, "count"};
  for (int i = 0; i < cfg.levels; ++i) t.columns.push_back("E" + std::to_string(i));
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    const SweepPoint sp = jobs[j].get();
    std::vector<Cell> row{sw.values[j], count_cell(sp.count)};
    for (int i = 0; i < cfg.levels; ++i) {
      const std::size_t ui = static_cast<std::size_t>(i);
      row.push_back(ui < sp.energies.size() ? Cell(sp.energies[ui]) : Cell(std::monostate{}));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

// config file: key = value lines, '#' comments

struct ConfigEntry {
  std::string key;
  std::string value;
};

std::vector<ConfigEntry> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  std::vector<ConfigEntry> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError(path + ":" + std::to_string(lineno) + ": expected key=value");
    out.push_back({trim(line.substr(0, eq)), trim(line.substr(eq + 1))});
  }
  return out;
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

std::string format_cell(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return {};
        } else if constexpr (std::is_same_v<T, double>) {
          return format_number(v);
        } else if constexpr (std::is_same_v<T, long long>) {
          return std::to_string(v);
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else {
          return v;
        }
      },
      c);
}

void write_table(const Table& t, Format f, std::ostream& os) {
  switch (f) {
    case Format::csv: {
      for (const auto& [k, v] : t.meta) os << "# " << k << "=" << format_cell(v) << "\n";
      for (std::size_t i = 0; i < t.columns.size(); ++i)
        os << (i ? "," : "") << csv_escape(t.columns[i]);
      os << "\n";
      for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_escape(format_cell(row[i]));
        os << "\n";
      }
      for (const auto& [k, v] : t.footer) os << "# " << k << "=" << format_cell(v) << "\n";
      break;
    }
    case Format::json: {
      nlohmann::ordered_json root;
      root["meta"] = nlohmann::ordered_json::object();
      for (const auto& [k, v] : t.meta) root["meta"][k] = to_json(v);
      for (const auto& [k, v] : t.footer) root["meta"][k] = to_json(v);
      root["rows"] = nlohmann::ordered_json::array();
      for (const auto& row : t.rows) {
        nlohmann::ordered_json r = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size() && i < t.columns.size(); ++i) r[t.columns[i]] = to_json(row[i]);
        root["rows"].push_back(std::move(r));
      }
      os << root.dump(2) << "\n";
      break;
    }
    case Format::plain: {
      for (const auto& [k, v] : t.meta) os << k << ": " << format_cell(v) << "\n";
      if (!t.meta.empty()) os << "\n";
      std::vector<std::size_t> width(t.columns.size());
      for (std::size_t i = 0; i < t.columns.size(); ++i) width[i] = display_width(t.columns[i]);
      std::vector<std::vector<std::string>> text;
      for (const auto& row : t.rows) {
        std::vector<std::string> r;
        for (std::size_t i = 0; i < row.size() && i < width.size(); ++i) {
          r.push_back(format_cell(row[i]));
          width[i] = std::max(width[i], display_width(r.back()));
        }
        text.push_back(std::move(r));
      }
      auto emit = [&](const std::vector<std::string>& r) {
        std::string line;
        for (std::size_t i = 0; i < r.size(); ++i) {
          if (i) line += "  ";
          line += r[i] + std::string(width[i] - display_width(r[i]), ' ');
        }
        os << trim(line) << "\n";
      };
      emit(t.columns);
      for (const auto& r : text) emit(r);
      if (!t.footer.empty()) os << "\n";
      for (const auto& [k, v] : t.footer) os << k << ": " << format_cell(v) << "\n";
      break;
    }
  }
}

std::pair<std::string, double> parse_assignment(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) throw UsageError("expected name=value, got '" + text + "'");
  const std::string name = trim(text.substr(0, eq));
  return {name, parse_double(text.substr(eq + 1), name)};
}

SweepSpec parse_sweep(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0)
    throw UsageError("expected --sweep name=v1,v2,... or name=lo:hi:steps");
  SweepSpec s;
  s.name = trim(text.substr(0, eq));
  const std::string rest = text.substr(eq + 1);
  if (rest.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(rest);
    for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
    if (parts.size() != 3) throw UsageError("range sweep must be lo:hi:steps");
    const double lo = parse_double(parts[0], s.name);
    const double hi = parse_double(parts[1], s.name);
    const int steps = parse_int(parts[2], "steps");
    if (steps < 1) throw UsageError("steps must be at least 1");
    for (int i = 0; i < steps; ++i)
      s.values.push_back(steps == 1 ? lo : lo + (hi - lo) * i / (steps - 1));
  } else {
    std::stringstream ss(rest);
    for (std::string part; std::getline(ss, part, ',');) s.values.push_back(parse_double(part, s.name));
  }
  if (s.values.empty()) throw UsageError("empty sweep");
  return s;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Shape-invariant position-dependent-mass spectra, wavefunctions and checks", "pdm"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string model;
  std::vector<std::string> param_flags;
  double xi = 0.0, zeta = 0.0, tol = 1e-6;
  int n = 0, levels = 5, grid = 0;
  std::string format = "csv", out_path, config_path, sweep_text;
  bool corrupt = false;

  app.add_option("--model", model, "Model id (see `pdm list`)");
  app.add_option("--param", param_flags, "Parameter assignment name=value (repeatable)");
  app.add_option("--xi", xi, "Ordering parameter xi");
  app.add_option("--zeta", zeta, "Ordering parameter zeta");
  app.add_option("--n", n, "Level index");
  app.add_option("--levels", levels, "Number of levels")->check(CLI::PositiveNumber);
  app.add_option("--grid", grid, "Grid size (verify) or sample count (wavefunction)");
  app.add_option("--tol", tol, "Relative tolerance for verify")->check(CLI::PositiveNumber);
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json", "plain"}));
  app.add_option("--out", out_path, "Write output to this file");
  app.add_option("--config", config_path, "key=value config file; flags win");
  app.add_option("--sweep", sweep_text, "Swept parameter: name=v1,v2,... or name=lo:hi:steps");
  app.add_flag("--corrupt-spectrum", corrupt, "Perturb analytic energies (negative control)")->group("");

  app.add_subcommand("list", "List catalog models");
  app.add_subcommand("spectrum", "Analytic spectrum and bound-state count");
  app.add_subcommand("wavefunction", "Sampled wavefunction with physicality verdicts");
  app.add_subcommand("verify", "Compare analytic and numerical spectra");
  app.add_subcommand("sweep", "Bound-state count and energies along a parameter sweep");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return usage;
  }

  RunConfig cfg;
  cfg.command = app.get_subcommands().front()->get_name();
  try {
    auto given = [&](const char* flag) { return app.get_option(flag)->count() > 0; };
    std::map<std::string, double> config_params;
    if (!config_path.empty()) {
      for (const ConfigEntry& e : read_config(config_path)) {
        if (e.key == "model") {
          if (!given("--model")) model = e.value;
        } else if (e.key == "xi") {
          if (!given("--xi")) xi = parse_double(e.value, "xi");
        } else if (e.key == "zeta") {
          if (!given("--zeta")) zeta = parse_double(e.value, "zeta");
        } else if (e.key == "n") {
          if (!given("--n")) cfg.n = n = parse_int(e.value, "n");
        } else if (e.key == "levels") {
          if (!given("--levels")) levels = parse_int(e.value, "levels");
        } else if (e.key == "grid") {
          if (!given("--grid")) cfg.grid = grid = parse_int(e.value, "grid");
        } else if (e.key == "tol") {
          if (!given("--tol")) tol = parse_double(e.value, "tol");
        } else if (e.key == "format") {
          if (!given("--format")) format = e.value;
        } else if (e.key == "out") {
          if (!given("--out")) out_path = e.value;
        } else if (e.key == "sweep") {
          if (!given("--sweep")) sweep_text = e.value;
        } else if (e.key == "param") {
          config_params.insert(parse_assignment(e.value));
        } else if (e.key.rfind("param.", 0) == 0) {
          config_params[e.key.substr(6)] = parse_double(e.value, e.key);
        } else {
          throw UsageError("unknown config key '" + e.key + "'");
        }
      }
    }
    if (format != "csv" && format != "json" && format != "plain")
      throw UsageError("unknown format '" + format + "'");
    if (levels < 1) throw UsageError("--levels must be positive");
    if (!(tol > 0.0)) throw UsageError("--tol must be positive");
    cfg.model = model;
    cfg.params = config_params;
    for (const std::string& a : param_flags) {
      const auto [name, value] = parse_assignment(a);
      cfg.params[name] = value;
    }
    cfg.xi = xi;
    cfg.zeta = zeta;
    if (given("--n")) cfg.n = n;
    if (given("--grid")) cfg.grid = grid;
    cfg.levels = levels;
    cfg.tol = tol;
    cfg.format = format == "json" ? Format::json : format == "plain" ? Format::plain : Format::csv;
    cfg.out = out_path;
    if (!sweep_text.empty()) cfg.sweep = parse_sweep(sweep_text);
    cfg.corrupt_spectrum = corrupt;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return usage;
  }

  int code = ok;
  Table table;
  try {
    if (cfg.command == "list") {
      table = cmd_list();
    } else if (cfg.command == "spectrum") {
      table = cmd_spectrum(cfg);
    } else if (cfg.command == "wavefunction") {
      table = cmd_wavefunction(cfg);
    } else if (cfg.command == "verify") {
      bool passed = false;
      table = cmd_verify(cfg, passed);
      if (!passed) code = verification;
    } else {
      table = cmd_sweep(cfg);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return usage;
  } catch (const UnknownModelError& e) {
    err << "error: " << e.what() << "\n";
    return usage;
  } catch (const UnknownParameterError& e) {
    err << "error: " << e.what() << "\n";
    return usage;
  } catch (const ConstraintError& e) {
    err << "error: " << e.what() << "\n";
    return constraint;
  } catch (const NoSuchLevelError& e) {
    err << "error: " << e.what() << "\n";
    return constraint;
  } catch (const PositivityError& e) {
    err << "error: " << e.what() << "\n";
    return constraint;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return constraint;
  } catch (const VerificationUnsupportedError& e) {
    err << "error: verification unsupported: " << e.what() << "\n";
    return verification;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return internal;
  }

  if (cfg.out.empty()) {
    write_table(table, cfg.format, out);
  } else {
    std::ofstream file(cfg.out, std::ios::binary);
    if (!file) {
      err << "error: cannot write '" << cfg.out << "'\n";
      return internal;
    }
    write_table(table, cfg.format, file);
  }
  if (code == verification) err << "verification failed\n";
  return code;
}

}  // namespace pdm::cli
