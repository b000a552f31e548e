#include "doctest.h"
#include "helpers.hpp"

using namespace xihom;
using xihom::testing::instance;

namespace {

// the nonsplit extension k >--> A -->> k over the dual numbers
Conflation socle_extension(const InstanceData& inst) {
  const ModulePtr& k = inst.module("k");
  ModuleMap top = projective_cover(k);
  return conflation_from_surjection(top);
}

}  // namespace

TEST_CASE("split conflations split; the socle extension does not") {
  const auto& inst = instance("dual-numbers");
  const ModulePtr& k = inst.module("k");
  const ModulePtr& A = inst.module("A");
  CHECK(is_split(split_conflation(k, A)));
  Conflation c = socle_extension(inst);
  CHECK(c.middle()->dim == 2);
  CHECK(!is_split(c));
}

TEST_CASE("a conflation onto a projective splits") {
  const auto& inst = instance("a2");
  Conflation c = conflation_from_surjection(projective_cover(inst.module("A")));
  CHECK(is_split(c));
}

TEST_CASE("pullbacks: identity, zero, functoriality") {
  const auto& inst = instance("dual-numbers");
  Conflation c = socle_extension(inst);
  const ModulePtr& k = inst.module("k");

  Conflation same = pullback_conflation(c, identity_map(k));
  CHECK(baer_equivalent(same, c));
  Conflation zero = pullback_conflation(c, zero_map(k, k));
  CHECK(is_split(zero));

  // (g g')^* = g'^* g^* as extension classes, sampled over endomorphisms
  Rng rng(7);
  for (const auto& id : {"dual-numbers", "f3x3", "f2x4"}) {
    const auto& in2 = instance(id);
    Conflation e = socle_extension(in2);
    const ModulePtr& q = e.quotient();
    auto endos = hom_basis(q, q);
    for (int trial = 0; trial < 6; ++trial) {
      ModuleMap g = zero_map(q, q), gp = zero_map(q, q);
      for (const auto& h : endos) {
        g = add_maps(g, ModuleMap{q, q,
                                  scalar_mul(uint32_t(rng.below(q->p())), h.matrix)});
        gp = add_maps(gp, ModuleMap{q, q,
                                    scalar_mul(uint32_t(rng.below(q->p())), h.matrix)});
      }
      Conflation lhs = pullback_conflation(pullback_conflation(e, g), gp);
      Conflation rhs = pullback_conflation(e, compose(g, gp));
      CHECK(baer_equivalent(lhs, rhs));
    }
  }
}

TEST_CASE("pushouts: identity and zero") {
  const auto& inst = instance("dual-numbers");
  Conflation c = socle_extension(inst);
  const ModulePtr& k = inst.module("k");
  CHECK(baer_equivalent(pushout_conflation(c, identity_map(k)), c));
  CHECK(is_split(pushout_conflation(c, zero_map(k, k))));
}

TEST_CASE("baer equivalence is an equivalence relation on samples") {
  const auto& inst = instance("f3x3");
  Conflation c = socle_extension(inst);
  CHECK(baer_equivalent(c, c));
  Conflation c2 = pullback_conflation(c, identity_map(c.quotient()));
  CHECK(baer_equivalent(c, c2));
  CHECK(baer_equivalent(c2, c));
  Conflation c3 = pushout_conflation(c2, identity_map(c2.sub()));
  CHECK(baer_equivalent(c2, c3));
  CHECK(baer_equivalent(c, c3));
  // distinct classes stay distinct
  Conflation sp = split_conflation(c.sub(), c.quotient());
  CHECK(!baer_equivalent(c, sp));
}

TEST_CASE("absorption with a zero map is the plain direct sum") {
  const auto& inst = instance("dual-numbers");
  Conflation c = socle_extension(inst);
  const ModulePtr& d = inst.module("A");
  Conflation absorbed = summand_absorption_conflation(c, zero_map(c.middle(), d));
  DirectSum db = direct_sum({d, c.middle()});
  DirectSum dc = direct_sum({d, c.quotient()});
  Matrix infl = vstack({Matrix(d->dim, c.sub()->dim, 2), c.inflation.matrix});
  CHECK(absorbed.inflation.matrix == infl);
  CHECK(absorbed.middle()->fingerprint == db.total->fingerprint);
  CHECK(absorbed.quotient()->fingerprint == dc.total->fingerprint);
}

TEST_CASE("absorption conflations keep the base-changed class") {
  const auto& inst = instance("f2x4");
  Conflation c = socle_extension(inst);
  // alpha an arbitrary endomorphism of the middle
  auto endos = hom_basis(c.middle(), c.middle());
  REQUIRE(!endos.empty());
  Conflation absorbed = summand_absorption_conflation(c, endos[0]);
  // its pullback along the inclusion of the original quotient summand is c
  const ModulePtr& d = endos[0].target;
  DirectSum dc = direct_sum({d, c.quotient()});
  Conflation back = pullback_conflation(absorbed, dc.inclusions[1]);
  CHECK(baer_equivalent(back, c));
}
