#pragma once

// Relative cohomology and complete cohomology.
//
// xi_ext^d(M, N) is the cohomology of Hom(P, N) for the canonical resolution
// P of M. The two-resolution route computes the same groups from the total
// Hom complex between resolutions of M and N; sign convention throughout:
//   d(phi) = dphi - (-1)^{|phi|} phi d.
//
// Complete cohomology is evaluated through a split complete resolution
//   S --mu--> P --pi--> M,
// built by splicing P with a validated doubly infinite tower through a
// relative-Gorenstein syzygy K_n:
//   S_i = P_i            (i >= n)
//   S_{n-1} = P_{n-1} + Q_{n-1}
//   S_i = P_i + P_{i+1} + Q_i  (i < n-1)
// with mu_i = id, [1, nu], [1, d^P, nu] respectively and solved sections
// eta_i. The builder validates, in exact arithmetic: every window conflation
// is exact and in the class, Hom(-, P(xi))-exactness against a generating
// set of relative projectives, mu eta = id at every index, and mu invertible
// from iso_from on. Two independent oracles cross-check the evaluation:
// stable Hom of (co)syzygies on self-injective algebras, and a stabilized
// syzygy-shift colimit.

#include "xihom/resolution.hpp"

namespace xihom {

struct CohomologyGroup {
  int dimension = 0;
  std::optional<std::vector<ModuleMap>> cocycle_basis;
};

CohomologyGroup xi_ext(const ProperClassSpec& xi, const ModulePtr& m,
                       const ModulePtr& n, int deg, bool want_cocycles = false);

// total Hom complex between two resolutions, degrees >= 1
CohomologyGroup xi_ext_two_resolutions(const ProperClassSpec& xi,
                                       const ModulePtr& m, const ModulePtr& n,
                                       int deg);

// cohomology of Hom(m, I) for an injective coresolution of n; throws
// UnsupportedError where the coresolution is refused
CohomologyGroup xi_ext_injective_side(const ProperClassSpec& xi,
                                      const ModulePtr& m, const ModulePtr& n,
                                      int deg);

enum class GpRegime { CertifiedSelfInjective, CertifiedFinitePd, WindowVerified };
const char* regime_name(GpRegime r);

struct GpVerdict {
  bool member = false;
  GpRegime regime = GpRegime::WindowVerified;
  std::string note;
};

// membership in the relative Gorenstein projectives class
GpVerdict gprojective_test(const ProperClassSpec& xi, const ModulePtr& m,
                           int window);

struct GpdVerdict {
  PdVerdict value;
  GpRegime regime = GpRegime::WindowVerified;
};
GpdVerdict gpd(const ProperClassSpec& xi, const ModulePtr& m, int window);

struct ExtensionRule {
  enum class Kind { ZeroTail, Periodic, Truncated };
  Kind kind = Kind::Truncated;
  int period = 0;  // for Periodic
};

struct CompleteResolution {
  ProperClassSpec xi;
  ModulePtr base;
  int window = 0;
  int lo = 0, hi = 0;  // stored index range
  std::vector<ModulePtr> terms;     // T_lo .. T_hi
  std::vector<Conflation> tower;    // index i: K_{i+1} >--> T_i -->> K_i
  ResolutionPtr resolution;
  std::vector<ModuleMap> nu;        // T_i -> P_i (P_i = 0 below zero)
  std::vector<ModuleMap> sections;  // eta_i : P_i -> T_i, nu eta = id
  int iso_from = 0;
  GpRegime regime = GpRegime::WindowVerified;
  ExtensionRule extension;

  const ModulePtr& term(int i) const { return terms[size_t(i - lo)]; }
  const Conflation& step(int i) const { return tower[size_t(i - lo)]; }
  const ModuleMap& nu_at(int i) const { return nu[size_t(i - lo)]; }
  const ModuleMap& section_at(int i) const { return sections[size_t(i - lo)]; }
  // syzygy K_i of the tower, lo <= i <= hi + 1
  const ModulePtr& syzygy(int i) const {
    return i == hi + 1 ? step(hi).inflation.source : step(i).deflation.target;
  }
  // d_i : T_i -> T_{i-1}, lo < i <= hi
  ModuleMap diff(int i) const {
    return compose(step(i - 1).inflation, step(i).deflation);
  }
};

using CompleteResolutionPtr = std::shared_ptr<const CompleteResolution>;

// memoized; throws NoGpWithinWindow when no syzygy within the window passes
// the membership test
CompleteResolutionPtr build_complete_resolution(const ProperClassSpec& xi,
                                                const ModulePtr& m, int window);

struct CompleteResolutionCheck {
  bool conflations_valid = false;   // exactness and class membership
  bool hom_exact = false;           // Hom(-, generators)-exactness
  bool chain_map = false;           // mu commutes with differentials
  bool sections_ok = false;         // mu_i eta_i = id at every index
  bool iso_tail = false;            // mu_i invertible for i >= iso_from
  bool terms_projective = false;
  std::string detail;
  bool pass() const {
    return conflations_valid && hom_exact && chain_map && sections_ok &&
           iso_tail && terms_projective;
  }
};
CompleteResolutionCheck validate_complete_resolution(const CompleteResolution& cr);

struct CompleteExtResult {
  CohomologyGroup group;
  GpRegime regime = GpRegime::WindowVerified;
};
CompleteExtResult complete_ext(const ProperClassSpec& xi, const ModulePtr& m,
                               const ModulePtr& n, int deg, int window);

// stable Hom of the |deg|-fold (co)syzygy; self-injective algebras with the
// full class only
CohomologyGroup complete_ext_stable_oracle(const ModulePtr& m,
                                           const ModulePtr& n, int deg);

// Stabilized colimit approximation of complete cohomology: the terms
// xi_ext^{deg+k}(m, syzygy^k n) with the connecting maps of the syzygy
// conflations of n; reports the common value once `stability` consecutive
// connecting maps are isomorphisms.
struct ColimitResult {
  bool stabilized = false;
  int dimension = 0;
  int stabilized_at = 0;
  std::vector<int> dims;  // per k starting at first_k
  int first_k = 0;
};
ColimitResult complete_ext_colimit_oracle(const ProperClassSpec& xi,
                                          const ModulePtr& m,
                                          const ModulePtr& n, int deg,
                                          int window, int stability);

struct VanishingReport {
  PdVerdict pd;
  GpdVerdict gpd_verdict;
  int complete_ext0_dim = 0;
  int range = 6;
  std::vector<int> complete_ext_dims;  // degrees -range..range
  bool vanishing_iff_finite_pd = false;
  bool gpd_equals_pd_iff_vanishing = false;
};
VanishingReport vanishing_report(const ProperClassSpec& xi, const ModulePtr& m,
                                 int window);

}  // namespace xihom
