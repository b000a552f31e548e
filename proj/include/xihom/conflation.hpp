#pragma once

// Conflations of the exact structure on mod A: short exact sequences
// A >--> B -->> C with exactness checked in exact arithmetic. Extension
// classes are represented by conflations and compared by Baer equivalence
// (an isomorphism of the middle fixing both ends); the extension group is
// never materialized.

#include "xihom/module.hpp"

namespace xihom {

struct Conflation {
  ModuleMap inflation;  // A -> B, injective
  ModuleMap deflation;  // B -> C, surjective, image(inflation) = kernel

  const ModulePtr& sub() const { return inflation.source; }
  const ModulePtr& middle() const { return inflation.target; }
  const ModulePtr& quotient() const { return deflation.target; }

  static Conflation make(ModuleMap inflation, ModuleMap deflation);
};

// extension element of E(C, A) presented by a representative
struct ExtElement {
  Conflation rep;
  const ModulePtr& over() const { return rep.quotient(); }
  const ModulePtr& under() const { return rep.sub(); }
};

bool baer_equivalent(const Conflation& c1, const Conflation& c2);

// A >--> A + C -->> C with the canonical maps
Conflation split_conflation(const ModulePtr& a, const ModulePtr& c);
// complete an injection to a conflation via its cokernel
Conflation conflation_from_injection(const ModuleMap& f);
// complete a surjection to a conflation via its kernel
Conflation conflation_from_surjection(const ModuleMap& f);

Conflation direct_sum_conflation(const Conflation& c1, const Conflation& c2);

// true iff the inflation admits a retraction (equivalently the extension
// class is zero)
bool is_split(const Conflation& c);

// base change: the conflation A >--> B x_C C' -->> C' whose class is g^* [c]
Conflation pullback_conflation(const Conflation& c, const ModuleMap& g);
// cobase change: the conflation A' >--> A' +_A B -->> C with class f_* [c]
Conflation pushout_conflation(const Conflation& c, const ModuleMap& f);

// Absorb a map alpha : B -> D into a direct sum: from A >--> B -->> C build
//   A >--[-alpha x; x]--> D + B --[[1, alpha], [0, y]]--> D + C.
// The class is the base-change of [c] along the projection D + C -> C.
Conflation summand_absorption_conflation(const Conflation& c,
                                         const ModuleMap& alpha);

}  // namespace xihom
