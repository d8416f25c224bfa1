#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "qherm/expression.hpp"
#include "qherm/family.hpp"
#include "qherm/types.hpp"

namespace qherm {

enum class ModelKind { Matrix, Lattice, Schroedinger, Family };

std::string_view to_string(ModelKind kind);

struct FunctionSpec {
  std::string text;
  Expression expr;
};

/// Expressions of the differential family; re-sampled per grid.
struct FamilyFunctions {
  FunctionSpec sigma;
  FunctionSpec alpha;
  double omega = 0.0;
  int branch = 1;
  // Optional explicit potential components; absent ones are derived.
  std::optional<FunctionSpec> s;
  std::optional<FunctionSpec> l;
  std::optional<FunctionSpec> sigma_pot;
  std::optional<FunctionSpec> lambda;
};

/// Validated model document.
struct ModelSpec {
  ModelKind kind = ModelKind::Matrix;
  std::string name;
  nlohmann::json document;  // as parsed; dump() is canonical (sorted keys)

  Operator hamiltonian;
  std::optional<Operator> pseudometric;
  std::optional<Operator> charge;
  std::vector<double> weights;
  std::optional<StateVector> psi0;

  // schroedinger and family kinds
  std::optional<Grid> grid;
  std::optional<FunctionSpec> v_real;
  std::optional<FunctionSpec> v_imag;
  std::optional<FamilyFunctions> family;
  bool symmetrize = false;

  std::vector<std::string> warnings;
};

/// Sampled family objects on a given grid.
struct FamilySamples {
  Grid grid;
  ChargeAnsatz ansatz;
  PotentialSplit split;
  bool explicit_l = false;
  bool explicit_sigma = false;
};

/// Parses and validates a model document. Throws SchemaError naming the
/// offending JSON pointer, ParseError/EvalError from expressions, and
/// ParityViolation for tagged functions with relative asymmetry above
/// 1e-10 (projected with a warning instead when `symmetrize` is set in the
/// document or passed here).
ModelSpec parse_model(const nlohmann::json& document, bool symmetrize = false);
ModelSpec parse_model_text(std::string_view text, bool symmetrize = false);
ModelSpec load_model(const std::string& path, bool symmetrize = false);

/// Samples the family expressions on `grid`. Absent L and Sigma default to
/// the forced values -sigma' and -alpha'; absent S and Lambda come from the
/// forward map.
FamilySamples sample_family(const ModelSpec& spec, const Grid& grid,
                            std::vector<std::string>* warnings = nullptr);

/// Complex [re, im] matrix encoding, row-major.
Operator matrix_from_json(const nlohmann::json& j, const std::string& path);
nlohmann::json matrix_to_json(const Operator& m);

}  // namespace qherm
