#include "doctest.h"
#include "helpers.hpp"
#include "xihom/cohomology.hpp"

using namespace xihom;
using xihom::testing::instance;

TEST_CASE("relative ext in degree zero is Hom") {
  const auto& inst = instance("a3");
  ProperClassSpec all = ProperClassSpec::all();
  for (const auto& mn : inst.module_names)
    for (const auto& nn : inst.module_names)
      CHECK(xi_ext(all, inst.module(mn), inst.module(nn), 0).dimension ==
            hom_dim(inst.module(mn), inst.module(nn)));
}

TEST_CASE("ext vanishes in positive degrees out of projectives") {
  const auto& inst = instance("f2x4");
  ProperClassSpec all = ProperClassSpec::all();
  for (int d = 1; d <= 4; ++d) {
    CHECK(xi_ext(all, inst.module("A"), inst.module("k"), d).dimension == 0);
    CHECK(xi_ext_two_resolutions(all, inst.module("A"), inst.module("k"), d)
              .dimension == 0);
  }
}

TEST_CASE("hand-computed ext dimensions") {
  ProperClassSpec all = ProperClassSpec::all();
  const auto& a2 = instance("a2");
  CHECK(xi_ext(all, a2.module("S1"), a2.module("S2"), 1).dimension == 1);
  CHECK(xi_ext_two_resolutions(all, a2.module("S1"), a2.module("S2"), 1)
            .dimension == 1);
  CHECK(xi_ext_injective_side(all, a2.module("S1"), a2.module("S2"), 1)
            .dimension == 1);

  const auto& dual = instance("dual-numbers");
  for (int d = 0; d <= 6; ++d) {
    CHECK(xi_ext(all, dual.module("k"), dual.module("k"), d).dimension == 1);
    if (d >= 1)
      CHECK(xi_ext_two_resolutions(all, dual.module("k"), dual.module("k"), d)
                .dimension == 1);
    CHECK(xi_ext_injective_side(all, dual.module("k"), dual.module("k"), d)
              .dimension == 1);
  }
}

TEST_CASE("cocycle representatives are genuine cocycles") {
  const auto& inst = instance("f3x3");
  ProperClassSpec all = ProperClassSpec::all();
  CohomologyGroup g =
      xi_ext(all, inst.module("k"), inst.module("V2"), 2, true);
  REQUIRE(g.cocycle_basis.has_value());
  ResolutionPtr r = build_resolution(all, inst.module("k"), 3);
  for (const auto& z : *g.cocycle_basis)
    CHECK(mul(z.matrix, r->differential(3).matrix).is_zero());
}

TEST_CASE("injective-side ext out of an injective target vanishes") {
  const auto& inst = instance("a2");
  ProperClassSpec all = ProperClassSpec::all();
  // S2 is projective and injective dimension 0 would mean vanishing beyond 0
  for (int d = 1; d <= 3; ++d)
    CHECK(xi_ext_injective_side(all, inst.module("S1"), inst.module("A"),
                                d).dimension ==
          xi_ext(all, inst.module("S1"), inst.module("A"), d).dimension);
}

TEST_CASE("Gorenstein membership verdicts by regime") {
  ProperClassSpec all = ProperClassSpec::all();
  const auto& dual = instance("dual-numbers");
  GpVerdict v = gprojective_test(all, dual.module("k"), 8);
  CHECK(v.member);
  CHECK(v.regime == GpRegime::CertifiedSelfInjective);

  const auto& a2 = instance("a2");
  GpVerdict s1 = gprojective_test(all, a2.module("S1"), 8);
  CHECK(!s1.member);
  CHECK(s1.regime == GpRegime::CertifiedFinitePd);
  GpVerdict p1 = gprojective_test(all, a2.module("P1"), 8);
  CHECK(p1.member);

  // relative class on a self-injective algebra: window-verified membership
  const auto& f3 = instance("f3x3");
  ProperClassSpec rel = ProperClassSpec::relative({f3.module("k")});
  GpVerdict v2 = gprojective_test(rel, f3.module("V2"), 6);
  CHECK(v2.member);
  CHECK(v2.regime == GpRegime::WindowVerified);
}

TEST_CASE("no nontrivial membership over k[x,y]/(x,y)^2") {
  AlgebraPtr alg = xihom::testing::two_loops_radical_square();
  ModulePtr k = simple_module(alg, 0);
  ProperClassSpec all = ProperClassSpec::all();
  CHECK(!is_self_injective(alg));
  PdVerdict pd = xi_pd(all, k, 6);
  CHECK(!pd.finite);
  GpVerdict v = gprojective_test(all, k, 4);
  CHECK(!v.member);
  GpdVerdict g = gpd(all, k, 3);
  CHECK(!g.value.finite);
  CHECK_THROWS_AS(build_complete_resolution(all, k, 3), NoGpWithinWindow);
}

TEST_CASE("Gorenstein dimension verdicts") {
  ProperClassSpec all = ProperClassSpec::all();
  const auto& dual = instance("dual-numbers");
  GpdVerdict g = gpd(all, dual.module("k"), 12);
  CHECK(g.value == PdVerdict{true, 0});
  CHECK(g.regime == GpRegime::CertifiedSelfInjective);

  const auto& a2 = instance("a2");
  GpdVerdict s1 = gpd(all, a2.module("S1"), 12);
  CHECK(s1.value == PdVerdict{true, 1});
  CHECK(s1.regime == GpRegime::CertifiedFinitePd);
  CHECK(gpd(all, a2.module("A"), 12).value == PdVerdict{true, 0});
}

TEST_CASE("complete resolutions over the dual numbers are two-periodic") {
  const auto& dual = instance("dual-numbers");
  ProperClassSpec all = ProperClassSpec::all();
  CompleteResolutionPtr cr = build_complete_resolution(all, dual.module("k"), 6);
  CHECK(cr->iso_from == 0);
  for (int i = cr->lo + 1; i <= cr->hi; ++i) {
    CHECK(cr->term(i)->dim == 2);
    CHECK(rank(cr->diff(i).matrix) == 1);
  }
  CHECK(cr->extension.kind == ExtensionRule::Kind::Periodic);
  CompleteResolutionCheck chk = validate_complete_resolution(*cr);
  CHECK(chk.pass());
}

TEST_CASE("complete cohomology values and oracles") {
  ProperClassSpec all = ProperClassSpec::all();
  for (const char* id : {"dual-numbers", "f3x3"}) {
    const auto& inst = instance(id);
    const ModulePtr& k = inst.module("k");
    for (int d = -4; d <= 4; ++d) {
      CompleteExtResult r = complete_ext(all, k, k, d, 6);
      CHECK(r.group.dimension == 1);
      CHECK(complete_ext_stable_oracle(k, k, d).dimension == 1);
    }
    ColimitResult col = complete_ext_colimit_oracle(all, k, k, 0, 10, 4);
    CHECK(col.stabilized);
    CHECK(col.dimension == 1);
  }
  // finite projective dimension forces vanishing everywhere
  const auto& a2 = instance("a2");
  for (int d = -4; d <= 4; ++d)
    CHECK(complete_ext(all, a2.module("S1"), a2.module("S2"), d, 6)
              .group.dimension == 0);
  CHECK(complete_ext_stable_oracle(instance("f2x4").module("A"),
                                   instance("f2x4").module("k"), 2)
            .dimension == 0);
}

TEST_CASE("colimit oracle stabilizes to zero for finite pd") {
  ProperClassSpec all = ProperClassSpec::all();
  const auto& a2 = instance("a2");
  ColimitResult col = complete_ext_colimit_oracle(all, a2.module("S1"),
                                                  a2.module("S2"), 0, 10, 4);
  CHECK(col.stabilized);
  CHECK(col.dimension == 0);
}

TEST_CASE("vanishing reports assemble the verdict matrix") {
  ProperClassSpec all = ProperClassSpec::all();
  const auto& dual = instance("dual-numbers");
  VanishingReport vr = vanishing_report(all, dual.module("k"), 8);
  CHECK(!vr.pd.finite);
  CHECK(vr.gpd_verdict.value == PdVerdict{true, 0});
  CHECK(vr.complete_ext0_dim == 1);
  CHECK(vr.vanishing_iff_finite_pd);
  CHECK(vr.gpd_equals_pd_iff_vanishing);

  const auto& a2 = instance("a2");
  VanishingReport vs = vanishing_report(all, a2.module("S1"), 8);
  CHECK(vs.pd == PdVerdict{true, 1});
  CHECK(vs.gpd_verdict.value == PdVerdict{true, 1});
  CHECK(vs.complete_ext0_dim == 0);
  CHECK(vs.vanishing_iff_finite_pd);
  CHECK(vs.gpd_equals_pd_iff_vanishing);
}

TEST_CASE("relative complete resolutions validate on the window") {
  const auto& f3 = instance("f3x3");
  ProperClassSpec rel = ProperClassSpec::relative({f3.module("k")});
  CompleteResolutionPtr cr =
      build_complete_resolution(rel, f3.module("V2"), 4);
  CompleteResolutionCheck chk = validate_complete_resolution(*cr);
  CHECK(chk.pass());
  CHECK(cr->regime == GpRegime::WindowVerified);
}
