#pragma once

#include <string>
#include <vector>

#include "torsionlab/config.hpp"

namespace torsionlab {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

// The twelve acceptance criteria. `only` filters by substring of the name
// (empty = run everything).
std::vector<CriterionResult> run_acceptance_criteria(const RunConfig& config,
                                                     const std::string& only = "");

}  // namespace torsionlab
