#pragma once

#include <string>
#include <utility>
#include <vector>

#include "nclp/serialization.hpp"

namespace nclp {

/// Result of one experiment run. Numeric cells are preformatted to 17
/// significant digits so the payload is byte-reproducible given the config.
struct Report {
  std::string experiment;
  json config_echo;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::pair<std::string, bool>> assertions;
  double wall_ms = 0.0;

  bool passed() const;
};

/// Dispatches a named experiment. Known names: norms, centralizer-constants,
/// nontriviality, duality, inequality-grid, kosaki, change-of-state,
/// derivative-bound, lift-consistency. The seed field is mandatory.
/// Throws std::invalid_argument on config errors.
Report run_experiment(const json& config);

std::string emit_csv(const Report& r);
/// include_wall_time = false yields the deterministic payload.
std::string emit_json(const Report& r, bool include_wall_time = true);

}  // namespace nclp
