#pragma once

// The verification driver behind `xihom verify`. The catalog suite runs the
// eight acceptance properties at desk scale in exact arithmetic; the
// per-instance suite runs the subset that makes sense for one instance file.

#include "xihom/cohomology.hpp"
#include "xihom/instance.hpp"

namespace xihom {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

std::vector<CriterionResult> run_catalog_acceptance(int window = 12);
std::vector<CriterionResult> run_instance_verify(const InstanceData& inst,
                                                 int window = 12);

}  // namespace xihom
