#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace qherm {

inline constexpr const char* kVersion = "0.1.0";

struct ReportRow {
  std::string name;
  nlohmann::json value;
  bool pass = true;
  std::optional<double> tol;  // absent for informational rows
  std::string code;           // error code for rows raised by a core error
  std::string message;
};

/// One sample of a plot-ready series (trace value or coefficient function).
struct SeriesPoint {
  double coord = 0.0;
  std::string series;
  double value = 0.0;
};

struct Report {
  std::string scenario;
  std::string digest;
  std::string version = kVersion;
  std::vector<ReportRow> rows;
  std::string coord_name = "x";
  std::vector<SeriesPoint> series;

  bool all_pass() const;
  const ReportRow* find(const std::string& name) const;
};

/// Deterministic JSON: fixed key order, doubles as %.17g.
std::string to_json(const Report& report);

/// Series as "coord,series,value" lines when present, else the rows.
std::string to_csv(const Report& report);

/// Renders any JSON value with doubles as %.17g.
std::string render_json(const nlohmann::json& value);

/// FNV-1a 64-bit, lowercase hex.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace qherm
