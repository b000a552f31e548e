#pragma once

#include "xihom/instance.hpp"

namespace xihom::testing {

inline const InstanceData& instance(const std::string& id) {
  static auto catalog = catalog_instances();
  for (const auto& [name, inst] : catalog)
    if (name == id) return inst;
  throw std::runtime_error("no catalog instance " + id);
}

// local algebra, not part of the catalog: k[x,y]/(x,y)^2, the classical
// example with no nontrivial totally reflexive modules
inline AlgebraPtr two_loops_radical_square() {
  QuiverPresentation q;
  q.p = 2;
  q.vertices = 1;
  q.arrows = {Arrow{0, 0, "x"}, Arrow{0, 0, "y"}};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      RelationTerm t;
      t.coeff = 1;
      t.arrows = {a, b};
      q.relations.push_back({t});
    }
  q.nilpotency_bound = 2;
  return enumerate_basis(q);
}

}  // namespace xihom::testing
