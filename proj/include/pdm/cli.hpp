#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace pdm::cli {

enum ExitCode : int { ok = 0, usage = 2, constraint = 3, verification = 4, internal = 1 };

enum class Format { csv, json, plain };

struct SweepSpec {
  std::string name;
  std::vector<double> values;
};

struct RunConfig {
  std::string command;
  std::string model;
  std::map<std::string, double> params;
  double xi = 0.0;
  double zeta = 0.0;
  std::optional<int> n;
  int levels = 5;
  std::optional<int> grid;
  double tol = 1e-6;
  Format format = Format::csv;
  std::string out;
  std::optional<SweepSpec> sweep;
  bool corrupt_spectrum = false;
};

/// Empty cells render as "" in CSV and null in JSON.
using Cell = std::variant<std::monostate, double, long long, bool, std::string>;

struct Table {
  std::vector<std::pair<std::string, Cell>> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::pair<std::string, Cell>> footer;
};

/// 15 significant digits, lowercase exponent, "inf"/"-inf"/"nan".
std::string format_number(double v);
std::string format_cell(const Cell& c);

void write_table(const Table& t, Format f, std::ostream& os);

/// "name=v1,v2,..." or "name=lo:hi:steps" (steps >= 1 points, inclusive).
SweepSpec parse_sweep(const std::string& text);
/// "name=value".
std::pair<std::string, double> parse_assignment(const std::string& text);

/// Full command line, argv[0] excluded. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pdm::cli
