#include "xihom/verify.hpp"

#include <sstream>

namespace xihom {

namespace {

constexpr uint64_t kAuditSeed = 20240814;
constexpr int kAuditTrials = 200;
constexpr int kHomotopyTrials = 100;

std::vector<ModulePtr> audit_pool(const InstanceData& inst) {
  std::vector<ModulePtr> pool{zero_module(inst.algebra)};
  for (const auto& name : inst.module_names)
    pool.push_back(inst.modules.at(name));
  return pool;
}

struct Tally {
  bool ok = true;
  std::ostringstream detail;
  void fail(const std::string& msg) {
    ok = false;
    if (detail.tellp() < 600) detail << msg << "; ";
  }
};

CriterionResult criterion_audits(
    const std::vector<std::pair<std::string, InstanceData>>& catalog) {
  Tally t;
  for (const auto& [id, inst] : catalog) {
    if (id != "dual-numbers" && id != "f3x3") continue;
    auto pool = audit_pool(inst);
    for (int variant = 0; variant < 2; ++variant) {
      ProperClassSpec xi =
          variant == 0 ? ProperClassSpec::all()
                       : ProperClassSpec::relative({inst.module("k")});
      AuditReport rep = audit_axioms(xi, pool, kAuditTrials, kAuditSeed);
      if (!rep.pass())
        t.fail(id + "/" + xi.describe() + ": " +
               std::to_string(rep.violations.size()) + " violations, first: " +
               rep.violations[0].detail);
    }
  }
  // adversarial fixture: split conflations whose sub is zero
  {
    const InstanceData& inst = catalog[0].second;
    AuditHooks hooks;
    hooks.member = [](const Conflation& c) {
      return c.sub()->dim == 0 && is_split(c);
    };
    hooks.cover = nullptr;
    AuditReport rep =
        audit_axioms_with(hooks, audit_pool(inst), kAuditTrials, kAuditSeed);
    if (rep.pass()) t.fail("adversarial fixture produced no violation");
    bool coproduct_seen = false;
    for (const auto& v : rep.violations)
      if (v.axiom == "coproduct") coproduct_seen = true;
    if (!coproduct_seen)
      t.fail("adversarial fixture missed the coproduct violation");
  }
  return CriterionResult{1, "proper-class axiom audit", t.ok, t.detail.str()};
}

CriterionResult criterion_two_routes(
    const std::vector<std::pair<std::string, InstanceData>>& catalog) {
  Tally t;
  for (const auto& [id, inst] : catalog) {
    ProperClassSpec xi = ProperClassSpec::all();
    for (const auto& mn : inst.module_names)
      for (const auto& nn : inst.module_names)
        for (int d = 1; d <= 6; ++d) {
          int a = xi_ext(xi, inst.module(mn), inst.module(nn), d).dimension;
          int b = xi_ext_two_resolutions(xi, inst.module(mn), inst.module(nn), d)
                      .dimension;
          if (a != b)
            t.fail(id + " ext^" + std::to_string(d) + "(" + mn + "," + nn +
                   "): " + std::to_string(a) + " vs " + std::to_string(b));
        }
  }
  return CriterionResult{2, "two-resolution route agreement", t.ok,
                         t.detail.str()};
}

CriterionResult criterion_injective_route(
    const std::vector<std::pair<std::string, InstanceData>>& catalog) {
  Tally t;
  for (const auto& [id, inst] : catalog) {
    ProperClassSpec xi = ProperClassSpec::all();
    for (const auto& mn : inst.module_names)
      for (const auto& nn : inst.module_names)
        for (int d = 0; d <= 6; ++d) {
          int a = xi_ext(xi, inst.module(mn), inst.module(nn), d).dimension;
          int b =
              xi_ext_injective_side(xi, inst.module(mn), inst.module(nn), d)
                  .dimension;
          if (a != b)
            t.fail(id + " deg " + std::to_string(d) + " (" + mn + "," + nn +
                   "): projective " + std::to_string(a) + " vs injective " +
                   std::to_string(b));
        }
  }
  return CriterionResult{3, "projective/injective route agreement", t.ok,
                         t.detail.str()};
}

CriterionResult criterion_pd_detection(
    const std::vector<std::pair<std::string, InstanceData>>& catalog,
    int window) {
  Tally t;
  for (const auto& [id, inst] : catalog) {
    ProperClassSpec xi = ProperClassSpec::all();
    for (const auto& mn : inst.module_names) {
      const ModulePtr& m = inst.module(mn);
      PdVerdict pd = xi_pd(xi, m, window);
      if (pd.finite) {
        for (const auto& nn : inst.module_names)
          if (xi_ext(xi, m, inst.module(nn), pd.value + 1).dimension != 0)
            t.fail(id + "/" + mn + ": ext^(pd+1) nonzero against " + nn);
        if (pd.value >= 1) {
          bool witness = false;
          for (const auto& nn : inst.module_names)
            if (xi_ext(xi, m, inst.module(nn), pd.value).dimension != 0)
              witness = true;
          if (!witness)
            t.fail(id + "/" + mn + ": ext^pd vanished for every module");
        }
      } else {
        bool witness = false;
        for (const auto& nn : inst.module_names)
          if (xi_ext(xi, m, inst.module(nn), window + 1).dimension != 0)
            witness = true;
        if (!witness)
          t.fail(id + "/" + mn +
                 ": pd exceeded the window but ext^(W+1) vanished everywhere");
      }
      int ext0 = complete_ext(xi, m, m, 0, window).group.dimension;
      if (pd.finite != (ext0 == 0))
        t.fail(id + "/" + mn + ": finite pd is " +
               (pd.finite ? "true" : "false") + " but complete ext0 dim " +
               std::to_string(ext0));
    }
    if (id == "dual-numbers") {
      PdVerdict pd = xi_pd(xi, inst.module("k"), window);
      int ext0 =
          complete_ext(xi, inst.module("k"), inst.module("k"), 0, window)
              .group.dimension;
      if (pd.finite || ext0 != 1)
        t.fail("dual-numbers k expected (ExceedsWindow, dim 1), got (" +
               std::string(pd.finite ? "finite" : "exceeds") + ", " +
               std::to_string(ext0) + ")");
    }
    if (id == "a2" || id == "a3") {
      for (const auto& mn : inst.module_names) {
        if (!xi_pd(xi, inst.module(mn), window).finite)
          t.fail(id + "/" + mn + ": expected finite pd");
        for (const auto& nn : inst.module_names)
          for (int d = -6; d <= 6; ++d) {
            int v = complete_ext(xi, inst.module(mn), inst.module(nn), d,
                                 window)
                        .group.dimension;
            if (v != 0)
              t.fail(id + "/" + mn + "," + nn + " deg " + std::to_string(d) +
                     ": complete ext dim " + std::to_string(v));
          }
      }
    }
  }
  return CriterionResult{4, "pd detection and vanishing biconditionals", t.ok,
                         t.detail.str()};
}

CriterionResult criterion_complete_resolutions(
    const std::vector<std::pair<std::string, InstanceData>>& catalog,
    int window) {
  Tally t;
  for (const auto& [id, inst] : catalog) {
    ProperClassSpec xi = ProperClassSpec::all();
    for (const auto& mn : inst.module_names) {
      try {
        CompleteResolutionPtr cr =
            build_complete_resolution(xi, inst.module(mn), window);
        CompleteResolutionCheck chk = validate_complete_resolution(*cr);
        if (!chk.pass()) t.fail(id + "/" + mn + ": " + chk.detail);
      } catch (const std::exception& e) {
        t.fail(id + "/" + mn + ": " + e.what());
      }
    }
  }
  return CriterionResult{5, "split complete resolution construction", t.ok,
                         t.detail.str()};
}

CriterionResult criterion_oracles(
    const std::vector<std::pair<std::string, InstanceData>>& catalog,
    int window) {
  Tally t;
  for (const auto& [id, inst] : catalog) {
    if (id != "dual-numbers" && id != "f3x3") continue;
    ProperClassSpec xi = ProperClassSpec::all();
    const ModulePtr& k = inst.module("k");
    for (int d = -6; d <= 6; ++d) {
      int main_route = complete_ext(xi, k, k, d, window).group.dimension;
      int stable = complete_ext_stable_oracle(k, k, d).dimension;
      if (main_route != 1 || stable != 1)
        t.fail(id + " deg " + std::to_string(d) + ": expected 1/1, got " +
               std::to_string(main_route) + "/" + std::to_string(stable));
      ColimitResult col =
          complete_ext_colimit_oracle(xi, k, k, d, window, 4);
      if (col.stabilized && col.dimension != main_route)
        t.fail(id + " deg " + std::to_string(d) + ": colimit stabilized at " +
               std::to_string(col.dimension) + " vs " +
               std::to_string(main_route));
    }
  }
  return CriterionResult{6, "complete cohomology oracle cross-check", t.ok,
                         t.detail.str()};
}

CriterionResult criterion_gpd_verdicts(
    const std::vector<std::pair<std::string, InstanceData>>& catalog,
    int window) {
  Tally t;
  for (const auto& [id, inst] : catalog) {
    ProperClassSpec xi = ProperClassSpec::all();
    if (id == "dual-numbers") {
      const ModulePtr& k = inst.module("k");
      GpdVerdict g = gpd(xi, k, window);
      PdVerdict pd = xi_pd(xi, k, window);
      VanishingReport vr = vanishing_report(xi, k, window);
      if (!(g.value.finite && g.value.value == 0))
        t.fail("dual-numbers k: expected Gpd 0");
      if (pd.finite) t.fail("dual-numbers k: expected pd beyond the window");
      if (vr.complete_ext0_dim == 0)
        t.fail("dual-numbers k: expected nonvanishing complete cohomology");
      if (!vr.vanishing_iff_finite_pd || !vr.gpd_equals_pd_iff_vanishing)
        t.fail("dual-numbers k: verdict matrix inconsistent");
    }
    if (id == "a2") {
      const ModulePtr& s1 = inst.module("S1");
      GpdVerdict g = gpd(xi, s1, window);
      PdVerdict pd = xi_pd(xi, s1, window);
      VanishingReport vr = vanishing_report(xi, s1, window);
      if (!(g.value.finite && g.value.value == 1 && pd.finite &&
            pd.value == 1))
        t.fail("a2 S1: expected Gpd = pd = 1");
      bool all_zero = true;
      for (int v : vr.complete_ext_dims)
        if (v != 0) all_zero = false;
      if (!all_zero) t.fail("a2 S1: expected vanishing complete cohomology");
      if (!vr.vanishing_iff_finite_pd || !vr.gpd_equals_pd_iff_vanishing)
        t.fail("a2 S1: verdict matrix inconsistent");
    }
  }
  return CriterionResult{7, "Gorenstein vs projective dimension verdicts",
                         t.ok, t.detail.str()};
}

CriterionResult criterion_homotopy_uniqueness(
    const std::vector<std::pair<std::string, InstanceData>>& catalog) {
  Tally t;
  int failures = 0;
  for (int trial = 0; trial < kHomotopyTrials; ++trial) {
    Rng rng = trial_rng(kAuditSeed, 1000 + trial);
    const auto& inst = catalog[trial % catalog.size()].second;
    ProperClassSpec xi = ProperClassSpec::all();
    const auto& names = inst.module_names;
    const ModulePtr& m = inst.modules.at(names[rng.below(names.size())]);
    const ModulePtr& n = inst.modules.at(names[rng.below(names.size())]);
    auto hb = hom_basis(m, n);
    ModuleMap mu = zero_map(m, n);
    for (const auto& h : hb) {
      uint32_t c = uint32_t(rng.below(m->p()));
      if (c) mu = add_maps(mu, ModuleMap{m, n, scalar_mul(c, h.matrix)});
    }
    ResolutionPtr rm = build_resolution(xi, m, 6);
    ResolutionPtr rn = build_resolution(xi, n, 6);
    ChainMap l1 = lift_morphism(mu, rm, rn);
    ChainMap l2 = lift_morphism(mu, rm, rn, rng.next() | 1);
    auto h = homotopy_between(l1, l2);
    if (!h) {
      ++failures;
      t.fail("trial " + std::to_string(trial) + " on " +
             catalog[trial % catalog.size()].first);
    }
  }
  if (failures > 0)
    t.fail(std::to_string(failures) + " of " +
           std::to_string(kHomotopyTrials) + " trials failed");
  return CriterionResult{8, "comparison lifts homotopic", t.ok,
                         t.detail.str()};
}

}  // namespace

std::vector<CriterionResult> run_catalog_acceptance(int window) {
  auto catalog = catalog_instances();
  std::vector<CriterionResult> out;
  out.push_back(criterion_audits(catalog));
  out.push_back(criterion_two_routes(catalog));
  out.push_back(criterion_injective_route(catalog));
  out.push_back(criterion_pd_detection(catalog, window));
  out.push_back(criterion_complete_resolutions(catalog, window));
  out.push_back(criterion_oracles(catalog, window));
  out.push_back(criterion_gpd_verdicts(catalog, window));
  out.push_back(criterion_homotopy_uniqueness(catalog));
  return out;
}

std::vector<CriterionResult> run_instance_verify(const InstanceData& inst,
                                                 int window) {
  std::vector<CriterionResult> out;
  const ProperClassSpec& xi = inst.proper_class;
  {
    Tally t;
    AuditReport rep = audit_axioms(xi, audit_pool(inst), 100, kAuditSeed);
    if (!rep.pass())
      t.fail(std::to_string(rep.violations.size()) + " violations, first: " +
             rep.violations[0].detail);
    out.push_back(CriterionResult{1, "proper-class axiom audit", t.ok,
                                  t.detail.str()});
  }
  {
    Tally t;
    for (const auto& mn : inst.module_names)
      for (const auto& nn : inst.module_names)
        for (int d = 1; d <= 4; ++d) {
          int a = xi_ext(xi, inst.module(mn), inst.module(nn), d).dimension;
          int b = xi_ext_two_resolutions(xi, inst.module(mn), inst.module(nn),
                                         d)
                      .dimension;
          if (a != b)
            t.fail("ext^" + std::to_string(d) + "(" + mn + "," + nn + ")");
        }
    out.push_back(CriterionResult{2, "two-resolution route agreement", t.ok,
                                  t.detail.str()});
  }
  {
    Tally t;
    bool supported = true;
    for (const auto& mn : inst.module_names) {
      for (const auto& nn : inst.module_names)
        for (int d = 0; d <= 4 && supported; ++d) {
          try {
            int b = xi_ext_injective_side(xi, inst.module(mn),
                                          inst.module(nn), d)
                        .dimension;
            int a = xi_ext(xi, inst.module(mn), inst.module(nn), d).dimension;
            if (a != b)
              t.fail("deg " + std::to_string(d) + " (" + mn + "," + nn + ")");
          } catch (const UnsupportedError&) {
            supported = false;
          }
        }
      if (!supported) break;
    }
    out.push_back(CriterionResult{
        3, supported ? "projective/injective route agreement"
                     : "projective/injective route agreement (unsupported "
                       "here, skipped)",
        t.ok, t.detail.str()});
  }
  {
    Tally t;
    for (const auto& mn : inst.module_names) {
      const ModulePtr& m = inst.module(mn);
      PdVerdict pd = xi_pd(xi, m, window);
      GpdVerdict g = gpd(xi, m, window);
      if (!g.value.finite) continue;  // verdict, not a failure
      try {
        CompleteResolutionPtr cr = build_complete_resolution(xi, m, window);
        CompleteResolutionCheck chk = validate_complete_resolution(*cr);
        if (!chk.pass()) t.fail(mn + ": " + chk.detail);
        int ext0 = complete_ext(xi, m, m, 0, window).group.dimension;
        if (pd.finite != (ext0 == 0)) t.fail(mn + ": vanishing mismatch");
      } catch (const std::exception& e) {
        t.fail(mn + ": " + std::string(e.what()));
      }
    }
    out.push_back(CriterionResult{4, "complete resolutions and vanishing",
                                  t.ok, t.detail.str()});
  }
  {
    Tally t;
    int failures = 0;
    for (int trial = 0; trial < 25; ++trial) {
      Rng rng = trial_rng(kAuditSeed, 5000 + trial);
      const auto& names = inst.module_names;
      const ModulePtr& m = inst.modules.at(names[rng.below(names.size())]);
      const ModulePtr& n = inst.modules.at(names[rng.below(names.size())]);
      ModuleMap mu = zero_map(m, n);
      for (const auto& h : hom_basis(m, n)) {
        uint32_t c = uint32_t(rng.below(m->p()));
        if (c) mu = add_maps(mu, ModuleMap{m, n, scalar_mul(c, h.matrix)});
      }
      ResolutionPtr rm = build_resolution(xi, m, 5);
      ResolutionPtr rn = build_resolution(xi, n, 5);
      ChainMap l1 = lift_morphism(mu, rm, rn);
      ChainMap l2 = lift_morphism(mu, rm, rn, rng.next() | 1);
      if (!homotopy_between(l1, l2)) ++failures;
    }
    if (failures) t.fail(std::to_string(failures) + " homotopy trials failed");
    out.push_back(
        CriterionResult{5, "comparison lifts homotopic", t.ok, t.detail.str()});
  }
  return out;
}

}  // namespace xihom
