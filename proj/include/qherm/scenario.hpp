#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "qherm/model.hpp"
#include "qherm/report.hpp"

namespace qherm {

enum class Task {
  Spectrum,
  Metric,
  Factorize,
  Table,
  Evolve,
  FamilyForward,
  FamilyInverse,
  FamilyCheck,
  Full,
};

std::string_view to_string(Task task);
std::optional<Task> task_from_string(std::string_view name);

struct ScenarioOptions {
  double tol = 1e-10;
  // evolve
  double t_max = 20.0;
  int steps = 200;  // number of time samples, endpoints included
  std::optional<int> psi0_index;
  std::optional<StateVector> psi0;
  // family check
  int refine = 2;
};

/// Runs one task on a validated model. Core errors become failed rows with
/// the error code attached; SchemaError is raised when the task does not
/// apply to the model kind.
Report run_scenario(const ModelSpec& spec, Task task,
                    const ScenarioOptions& options = {});

/// 0 when every row passes, 1 otherwise.
int exit_code(const Report& report);

}  // namespace qherm
