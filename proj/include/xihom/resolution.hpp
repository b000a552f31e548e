#pragma once

// Relative projective resolutions as towers of conflations
//   K_{i+1} >--g_i--> P_i --f_i-->> K_i,   K_0 = M,
// with the differential d_i = g_{i-1} f_i. Covers are the canonical ones
// from the proper class, so syzygies are reproducible bit for bit and
// projective-dimension detection is exact. Resolutions are memoized per
// (class, module) since complete cohomology re-reads long towers.
//
// The injective side is built by vector-space duality: coresolve M by
// dualizing a projective resolution of D(M) over the opposite algebra (full
// class), or by iterated relative envelopes on self-injective algebras.

#include "xihom/proper_class.hpp"

namespace xihom {

struct XiResolution {
  ProperClassSpec xi;
  ModulePtr base;
  std::vector<Conflation> steps;

  int length() const { return int(steps.size()) - 1; }
  const ModulePtr& term(int i) const { return steps[i].middle(); }
  // K_i for 0 <= i <= length() + 1
  const ModulePtr& syzygy(int i) const {
    return i == 0 ? base : steps[i - 1].inflation.source;
  }
  // d_i : P_i -> P_{i-1} for i >= 1
  ModuleMap differential(int i) const {
    return compose(steps[i - 1].inflation, steps[i].deflation);
  }
};

using ResolutionPtr = std::shared_ptr<const XiResolution>;

ResolutionPtr build_resolution(const ProperClassSpec& xi, const ModulePtr& m,
                               int length);

struct PdVerdict {
  bool finite = false;
  int value = 0;  // meaningful when finite
  bool operator==(const PdVerdict& o) const {
    return finite == o.finite && (!finite || value == o.value);
  }
};
// smallest n <= window with K_n relative-projective, else ExceedsWindow
PdVerdict xi_pd(const ProperClassSpec& xi, const ModulePtr& m, int window);

struct ChainMap {
  ResolutionPtr source;
  ResolutionPtr target;
  std::vector<ModuleMap> components;  // degree 0 .. min length
};

// Degreewise lift of mu through the towers; commuting squares are verified.
// A nonzero perturb_seed adds a deterministic element of the solution
// kernel at every degree, giving an independent second lift.
ChainMap lift_morphism(const ModuleMap& mu, const ResolutionPtr& rm,
                       const ResolutionPtr& rn, uint64_t perturb_seed = 0);

// s with phi - psi = d s + s d on every degree where all maps exist
// (0 .. min(source length, target length) - 1), found by one simultaneous
// solve; absent exactly when that system is inconsistent.
std::optional<std::vector<ModuleMap>> homotopy_between(const ChainMap& phi,
                                                       const ChainMap& psi);

struct Coresolution {
  ProperClassSpec xi;
  ModulePtr base;
  std::vector<Conflation> steps;  // steps[j] : C_j >--> I_j -->> C_{j+1}

  int length() const { return int(steps.size()) - 1; }
  const ModulePtr& term(int j) const { return steps[j].middle(); }
  const ModulePtr& cosyzygy_at(int j) const {
    return j == 0 ? base : steps[j - 1].deflation.target;
  }
  // d_j : I_j -> I_{j+1}
  ModuleMap differential(int j) const {
    return compose(steps[j + 1].inflation, steps[j].deflation);
  }
};

// Supported for the full class on any algebra (duality route) and for
// relative classes on self-injective algebras (validated envelope route);
// throws UnsupportedError otherwise, naming the reason.
Coresolution build_coresolution(const ProperClassSpec& xi, const ModulePtr& m,
                                int length);

// k-th cokernel along the injective coresolution; self-injective only
ModulePtr cosyzygy(const ModulePtr& m, int k);

// injective envelope m >--> E(m), minimal, via duality
ModuleMap injective_envelope(const ModulePtr& m);

}  // namespace xihom
