#include "qherm/model.hpp"

#include <fstream>
#include <sstream>

#include "qherm/errors.hpp"
#include "qherm/operators.hpp"

namespace qherm {
namespace {

using nlohmann::json;

[[noreturn]] void schema(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::SchemaError, path + ": " + what);
}

const json& member(const json& obj, const char* key, const std::string& path) {
  if (!obj.contains(key)) schema(path + "/" + key, "missing");
  return obj.at(key);
}

double number_at(const json& j, const std::string& path) {
  if (!j.is_number()) schema(path, "expected a number");
  return j.get<double>();
}

int integer_at(const json& j, const std::string& path) {
  if (!j.is_number_integer()) schema(path, "expected an integer");
  return j.get<int>();
}

Complex complex_at(const json& j, const std::string& path) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) schema(path, "expected [re, im]");
  return {number_at(j[0], path + "/0"), number_at(j[1], path + "/1")};
}

StateVector vector_at(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) schema(path, "expected a nonempty array");
  StateVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) =
        complex_at(j[i], path + "/" + std::to_string(i));
  }
  return v;
}

FunctionSpec function_at(const json& j, const std::string& path) {
  if (j.is_number()) {
    std::ostringstream text;
    text.precision(17);
    text << j.get<double>();
    return {text.str(), Expression::parse(text.str())};
  }
  if (!j.is_string() || j.get<std::string>().empty()) {
    schema(path, "expected an expression string");
  }
  const auto text = j.get<std::string>();
  return {text, Expression::parse(text)};
}

std::optional<FunctionSpec> optional_function(const json& obj, const char* key,
                                              const std::string& path) {
  if (!obj.contains(key)) return std::nullopt;
  return function_at(obj.at(key), path + "/" + key);
}

Grid grid_at(const json& j, const std::string& path) {
  if (!j.is_object()) schema(path, "expected an object");
  const double l = number_at(member(j, "L", path), path + "/L");
  const int n = integer_at(member(j, "N", path), path + "/N");
  try {
    return make_grid(l, n);
  } catch (const Error& e) {
    schema(path, e.what());
  }
}

RealSamples tagged(const FunctionSpec& f, const Grid& g, Parity parity,
                   const std::string& what, bool symmetrize,
                   std::vector<std::string>* warnings) {
  RealSamples v = f.expr.sample(g.x);
  const double defect = parity_defect(v, parity);
  const char* label = parity == Parity::Even ? "even" : "odd";
  if (defect > 1e-10) {
    if (!symmetrize) {
      throw Error(ErrorCode::ParityViolation,
                  what + " is tagged " + label +
                      " but has relative asymmetry " + std::to_string(defect),
                  defect);
    }
    if (warnings) {
      warnings->push_back(what + " projected onto its " + label +
                          " part (relative asymmetry " +
                          std::to_string(defect) + ")");
    }
  }
  return project_parity(v, parity);
}

Operator lattice_hamiltonian(const json& doc) {
  const int sites = integer_at(member(doc, "sites", ""), "/sites");
  if (sites < 1) schema("/sites", "must be >= 1");
  const double hop =
      doc.contains("hopping") ? number_at(doc["hopping"], "/hopping") : 1.0;
  Operator h = Operator::Zero(sites, sites);
  for (int j = 0; j + 1 < sites; ++j) {
    h(j, j + 1) = hop;
    h(j + 1, j) = hop;
  }
  if (doc.contains("onsite")) {
    const StateVector onsite = vector_at(doc["onsite"], "/onsite");
    if (onsite.size() != sites) schema("/onsite", "length must equal sites");
    h.diagonal() += onsite;
  }
  if (doc.contains("gamma")) {
    const double gamma = number_at(doc["gamma"], "/gamma");
    h(0, 0) += Complex(0.0, gamma);
    h(sites - 1, sites - 1) += Complex(0.0, -gamma);
  }
  return h;
}

}  // namespace

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::Matrix: return "matrix";
    case ModelKind::Lattice: return "lattice";
    case ModelKind::Schroedinger: return "schroedinger";
    case ModelKind::Family: return "family";
  }
  return "?";
}

Operator matrix_from_json(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) schema(path, "expected a nonempty matrix");
  const auto n = static_cast<Eigen::Index>(j.size());
  Operator m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const std::string row_path = path + "/" + std::to_string(r);
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
      schema(row_path, "expected a row of length " + std::to_string(n));
    }
    for (Eigen::Index c = 0; c < n; ++c) {
      m(r, c) = complex_at(row[static_cast<std::size_t>(c)],
                           row_path + "/" + std::to_string(c));
    }
  }
  if (!m.allFinite()) schema(path, "non-finite entries");
  return m;
}

json matrix_to_json(const Operator& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      row.push_back({m(r, c).real(), m(r, c).imag()});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

FamilySamples sample_family(const ModelSpec& spec, const Grid& grid,
                            std::vector<std::string>* warnings) {
  if (!spec.family) {
    throw Error(ErrorCode::SchemaError, "model is not of kind 'family'");
  }
  const FamilyFunctions& f = *spec.family;
  const bool sym = spec.symmetrize;
  FamilySamples out{grid, {}, {}, f.l.has_value(), f.sigma_pot.has_value()};
  out.ansatz = make_ansatz(
      grid, tagged(f.sigma, grid, Parity::Even, "sigma", sym, warnings),
      tagged(f.alpha, grid, Parity::Odd, "alpha", sym, warnings), f.omega);
  PotentialSplit derived = required_split(out.ansatz, grid);
  auto pick = [&](const std::optional<FunctionSpec>& fs, RealSamples fallback,
                  Parity parity, const char* what) {
    return fs ? tagged(*fs, grid, parity, what, sym, warnings)
              : std::move(fallback);
  };
  out.split = make_split(
      grid, pick(f.s, std::move(derived.s), Parity::Even, "S"),
      pick(f.l, std::move(derived.l), Parity::Odd, "L_comp"),
      pick(f.sigma_pot, std::move(derived.sigma), Parity::Even, "Sigma"),
      pick(f.lambda, std::move(derived.lambda), Parity::Odd, "Lambda"));
  return out;
}

ModelSpec parse_model(const json& doc, bool symmetrize) {
  if (!doc.is_object()) schema("", "model must be a JSON object");
  ModelSpec spec;
  spec.document = doc;
  const json& kind = member(doc, "kind", "");
  if (!kind.is_string()) schema("/kind", "expected a string");
  const auto k = kind.get<std::string>();
  if (k == "matrix") {
    spec.kind = ModelKind::Matrix;
  } else if (k == "lattice") {
    spec.kind = ModelKind::Lattice;
  } else if (k == "schroedinger") {
    spec.kind = ModelKind::Schroedinger;
  } else if (k == "family") {
    spec.kind = ModelKind::Family;
  } else {
    schema("/kind", "unknown kind '" + k + "'");
  }
  spec.name = doc.contains("name") && doc["name"].is_string()
                  ? doc["name"].get<std::string>()
                  : std::string(to_string(spec.kind));
  spec.symmetrize = symmetrize;
  if (doc.contains("symmetrize")) {
    if (!doc["symmetrize"].is_boolean()) {
      schema("/symmetrize", "expected a boolean");
    }
    spec.symmetrize = spec.symmetrize || doc["symmetrize"].get<bool>();
  }

  switch (spec.kind) {
    case ModelKind::Matrix:
      spec.hamiltonian = matrix_from_json(member(doc, "data", ""), "/data");
      break;
    case ModelKind::Lattice:
      spec.hamiltonian = lattice_hamiltonian(doc);
      break;
    case ModelKind::Schroedinger: {
      spec.grid = grid_at(member(doc, "grid", ""), "/grid");
      spec.v_real = function_at(member(doc, "V_real", ""), "/V_real");
      spec.v_imag = doc.contains("V_imag")
                        ? function_at(doc["V_imag"], "/V_imag")
                        : function_at(json(0.0), "/V_imag");
      ComplexSamples v(spec.grid->points);
      v.real() = spec.v_real->expr.sample(spec.grid->x);
      v.imag() = spec.v_imag->expr.sample(spec.grid->x);
      spec.hamiltonian = discretize_hamiltonian(*spec.grid, v);
      break;
    }
    case ModelKind::Family: {
      spec.grid = grid_at(member(doc, "grid", ""), "/grid");
      FamilyFunctions f{.sigma = function_at(member(doc, "sigma", ""), "/sigma"),
                        .alpha = function_at(member(doc, "alpha", ""), "/alpha"),
                        .s = {}, .l = {}, .sigma_pot = {}, .lambda = {}};
      if (doc.contains("omega")) f.omega = number_at(doc["omega"], "/omega");
      if (doc.contains("branch")) {
        f.branch = integer_at(doc["branch"], "/branch");
        if (f.branch != 1 && f.branch != -1) schema("/branch", "must be +1 or -1");
      }
      f.s = optional_function(doc, "S", "");
      f.l = optional_function(doc, "L_comp", "");
      f.sigma_pot = optional_function(doc, "Sigma", "");
      f.lambda = optional_function(doc, "Lambda", "");
      spec.family = std::move(f);
      const FamilySamples fs =
          sample_family(spec, *spec.grid, &spec.warnings);
      spec.hamiltonian =
          discretize_hamiltonian(*spec.grid, fs.split.potential());
      break;
    }
  }

  if (doc.contains("pseudometric")) {
    spec.pseudometric = matrix_from_json(doc["pseudometric"], "/pseudometric");
    if (spec.pseudometric->rows() != spec.hamiltonian.rows()) {
      schema("/pseudometric", "dimension differs from the Hamiltonian");
    }
  }
  if (doc.contains("charge")) {
    spec.charge = matrix_from_json(doc["charge"], "/charge");
    if (spec.charge->rows() != spec.hamiltonian.rows()) {
      schema("/charge", "dimension differs from the Hamiltonian");
    }
  }
  if (doc.contains("weights")) {
    const json& w = doc["weights"];
    if (!w.is_array()) schema("/weights", "expected an array");
    for (std::size_t i = 0; i < w.size(); ++i) {
      spec.weights.push_back(number_at(w[i], "/weights/" + std::to_string(i)));
    }
    if (static_cast<Eigen::Index>(spec.weights.size()) !=
        spec.hamiltonian.rows()) {
      schema("/weights", "length differs from the Hamiltonian dimension");
    }
  }
  if (doc.contains("psi0")) {
    spec.psi0 = vector_at(doc["psi0"], "/psi0");
    if (spec.psi0->size() != spec.hamiltonian.rows()) {
      schema("/psi0", "length differs from the Hamiltonian dimension");
    }
  }
  return spec;
}

ModelSpec parse_model_text(std::string_view text, bool symmetrize) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::SchemaError,
                std::string("malformed document: ") + e.what(),
                static_cast<double>(e.byte));
  }
  return parse_model(doc, symmetrize);
}

ModelSpec load_model(const std::string& path, bool symmetrize) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::SchemaError, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  ModelSpec spec = parse_model_text(buf.str(), symmetrize);
  if (!spec.document.contains("name")) {
    const auto slash = path.find_last_of('/');
    std::string stem = path.substr(slash == std::string::npos ? 0 : slash + 1);
    const auto dot = stem.find_last_of('.');
    if (dot != std::string::npos) stem.resize(dot);
    spec.name = stem;
  }
  return spec;
}

}  // namespace qherm
