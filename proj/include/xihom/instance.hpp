#pragma once

// Instance files: one JSON document carrying the prime, the quiver
// presentation, named modules as explicit matrices, and the proper class.
// Keys are fixed; unknown keys are rejected. Matrices are arrays of rows of
// integers, reduced mod p at load. Relation paths list arrow names in
// application order (first arrow applied first).

#include <string>
#include <vector>

#include "json.hpp"
#include "xihom/proper_class.hpp"

namespace xihom {

struct InstanceData {
  AlgebraPtr algebra;
  std::vector<std::string> module_names;  // sorted
  std::map<std::string, ModulePtr> modules;
  ProperClassSpec proper_class;
  std::vector<std::string> relative_names;

  const ModulePtr& module(const std::string& name) const {
    auto it = modules.find(name);
    check(it != modules.end(), "unknown module: " + name);
    return it->second;
  }
};

InstanceData load_instance(const nlohmann::json& j);
InstanceData load_instance_file(const std::string& path);
nlohmann::json save_instance(const InstanceData& inst);

// "all" or "relative:Name1,Name2" resolved against the instance modules
ProperClassSpec parse_class_spec(const InstanceData& inst,
                                 const std::string& text,
                                 std::vector<std::string>* names = nullptr);

// The five bundled algebras with their named modules, built in memory:
// dual-numbers, f3x3, a2, a3, f2x4.
std::vector<std::pair<std::string, InstanceData>> catalog_instances();

}  // namespace xihom
