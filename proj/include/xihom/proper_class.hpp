#pragma once

// Configurable proper classes of conflations. Two shapes are supported: the
// class of all conflations, and the relative class of Hom(X,-)-exact
// conflations for a finite list of modules X. The regular module is always
// available for covers, so both shapes have enough relative projectives:
// the canonical cover of m is the minimal projective cover for the full
// class, and P(m) + sum_X X^{dim Hom(X,m)} with the evaluation deflation for
// a relative class.

#include <functional>
#include <map>
#include <optional>
#include <string>

#include "xihom/conflation.hpp"

namespace xihom {

struct ProperClassSpec {
  enum class Kind { All, Relative };
  Kind kind = Kind::All;
  std::vector<ModulePtr> relatives;  // nonempty for Relative
  uint64_t fingerprint = 0;

  static ProperClassSpec all();
  static ProperClassSpec relative(std::vector<ModulePtr> mods);
  bool is_all() const { return kind == Kind::All; }
  std::string describe() const;
};

bool contains(const ProperClassSpec& xi, const Conflation& c);

// finite generating set of the relative projectives: the indecomposable
// projectives, plus the relative list
std::vector<ModulePtr> generator_modules(const ProperClassSpec& xi,
                                         const AlgebraPtr& alg);

// canonical cover conflation K >--> Q -->> m with Q relative-projective
Conflation xi_cover(const ProperClassSpec& xi, const ModulePtr& m);

// decided by splitting the canonical cover; sound and complete because that
// cover is weakly initial among relative deflations onto m
bool xi_projective(const ProperClassSpec& xi, const ModulePtr& m);

struct AuditViolation {
  std::string axiom;
  std::string detail;
};

struct AuditReport {
  int trials = 0;
  uint64_t seed = 0;
  std::map<std::string, int> checks_run;
  std::vector<AuditViolation> violations;
  bool pass() const { return violations.empty(); }
};

// Randomized executable audit of the proper-class axioms: split conflations
// belong, closure under finite coproducts, base change, cobase change, and
// saturation via the shared-quotient pullback diagram. Failures are report
// entries carrying the offending conflations, not faults.
AuditReport audit_axioms(const ProperClassSpec& xi,
                         const std::vector<ModulePtr>& pool, int trials,
                         uint64_t seed);

// Same suite against an arbitrary membership predicate; used to exercise the
// audit on classes that are not proper (test fixtures).
struct AuditHooks {
  std::function<bool(const Conflation&)> member;
  // canonical member-producing cover, when the class has one
  std::function<std::optional<Conflation>(const ModulePtr&)> cover;
};
AuditReport audit_axioms_with(const AuditHooks& hooks,
                              const std::vector<ModulePtr>& pool, int trials,
                              uint64_t seed);

std::string describe_conflation(const Conflation& c);

}  // namespace xihom
