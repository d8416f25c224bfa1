#include "qherm/report.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>

namespace qherm {
namespace {

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void render(const nlohmann::json& v, std::string& out) {
  using T = nlohmann::json::value_t;
  switch (v.type()) {
    case T::number_float:
      out += format_double(v.get<double>());
      return;
    case T::array: {
      out += '[';
      bool first = true;
      for (const auto& e : v) {
        if (!first) out += ',';
        first = false;
        render(e, out);
      }
      out += ']';
      return;
    }
    case T::object: {
      out += '{';
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += nlohmann::json(it.key()).dump();
        out += ':';
        render(it.value(), out);
      }
      out += '}';
      return;
    }
    default:
      out += v.dump();
      return;
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

bool Report::all_pass() const {
  for (const auto& r : rows) {
    if (!r.pass) return false;
  }
  return true;
}

const ReportRow* Report::find(const std::string& name) const {
  for (const auto& r : rows) {
    if (r.name == name) return &r;
  }
  return nullptr;
}

std::string render_json(const nlohmann::json& value) {
  std::string out;
  render(value, out);
  return out;
}

std::string to_json(const Report& report) {
  std::string out = "{\"scenario\":";
  out += nlohmann::json(report.scenario).dump();
  out += ",\"digest\":";
  out += nlohmann::json(report.digest).dump();
  out += ",\"version\":";
  out += nlohmann::json(report.version).dump();
  out += ",\"rows\":[";
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const ReportRow& r = report.rows[i];
    if (i) out += ',';
    out += "\n  {\"name\":";
    out += nlohmann::json(r.name).dump();
    out += ",\"value\":";
    render(r.value, out);
    out += ",\"pass\":";
    out += r.pass ? "true" : "false";
    out += ",\"tol\":";
    out += r.tol ? format_double(*r.tol) : "null";
    if (!r.code.empty()) {
      out += ",\"code\":";
      out += nlohmann::json(r.code).dump();
    }
    if (!r.message.empty()) {
      out += ",\"message\":";
      out += nlohmann::json(r.message).dump();
    }
    out += '}';
  }
  out += report.rows.empty() ? "]}\n" : "\n]}\n";
  return out;
}

std::string to_csv(const Report& report) {
  std::string out;
  if (!report.series.empty()) {
    out = report.coord_name + ",series,value\n";
    for (const auto& p : report.series) {
      out += format_double(p.coord) + "," + csv_field(p.series) + "," +
             format_double(p.value) + "\n";
    }
    return out;
  }
  out = "name,value,pass,tol\n";
  for (const auto& r : report.rows) {
    out += csv_field(r.name) + "," + csv_field(render_json(r.value)) + "," +
           (r.pass ? "true" : "false") + "," +
           (r.tol ? format_double(*r.tol) : "") + "\n";
  }
  return out;
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace qherm
