#include "doctest.h"
#include "helpers.hpp"

using namespace xihom;

namespace {

QuiverPresentation loop_with_power(uint32_t p, int power, int bound) {
  QuiverPresentation q;
  q.p = p;
  q.vertices = 1;
  q.arrows = {Arrow{0, 0, "x"}};
  RelationTerm t;
  t.coeff = 1;
  t.arrows.assign(size_t(power), 0);
  q.relations = {{t}};
  q.nilpotency_bound = bound;
  return q;
}

}  // namespace

TEST_CASE("dual numbers have basis e, x") {
  AlgebraPtr a = xihom::testing::instance("dual-numbers").algebra;
  REQUIRE(a->dim() == 2);
  CHECK(a->path_name(0) == "e0");
  CHECK(a->path_name(1) == "x");
  CHECK(a->structure_const(1, 1, 0) == 0);  // x * x = 0
  CHECK(a->structure_const(1, 1, 1) == 0);
}

TEST_CASE("A_2 path algebra has dimension 3") {
  AlgebraPtr a = xihom::testing::instance("a2").algebra;
  CHECK(a->dim() == 3);
  CHECK(a->projective_basis(0).size() == 2);
  CHECK(a->projective_basis(1).size() == 1);
}

TEST_CASE("F_3[x]/(x^3) has dimension 3") {
  AlgebraPtr a = xihom::testing::instance("f3x3").algebra;
  CHECK(a->dim() == 3);
  CHECK(a->p() == 3);
}

TEST_CASE("opposite algebra") {
  AlgebraPtr dual = xihom::testing::instance("dual-numbers").algebra;
  CHECK(opposite(dual)->fingerprint == dual->fingerprint);  // commutative

  AlgebraPtr a2 = xihom::testing::instance("a2").algebra;
  AlgebraPtr op = opposite(a2);
  CHECK(op->fingerprint != a2->fingerprint);
  CHECK(op->presentation.arrows[0].src == 1);
  CHECK(op->presentation.arrows[0].tgt == 0);
  CHECK(op->dim() == a2->dim());
  CHECK(opposite(op)->fingerprint == a2->fingerprint);
}

TEST_CASE("non-admissible and inconsistent presentations are rejected") {
  QuiverPresentation bad = loop_with_power(2, 1, 2);  // length-1 relation
  CHECK_THROWS_AS(enumerate_basis(bad), ValidationError);

  // A_3 quiver with no relations claims nilpotency 2; the length-2 path
  // survives, so the bound is wrong
  QuiverPresentation q;
  q.p = 2;
  q.vertices = 3;
  q.arrows = {Arrow{0, 1, "a"}, Arrow{1, 2, "b"}};
  q.nilpotency_bound = 2;
  try {
    enumerate_basis(q);
    FAIL("expected a nilpotency rejection");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("not nilpotent") != std::string::npos);
  }

  // mixed path lengths within one relation
  QuiverPresentation mixed = loop_with_power(2, 2, 4);
  RelationTerm cubic;
  cubic.coeff = 1;
  cubic.arrows = {0, 0, 0};
  mixed.relations[0].push_back(cubic);
  try {
    enumerate_basis(mixed);
    FAIL("expected an inhomogeneity rejection");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("inhomogeneous") != std::string::npos);
  }
}

TEST_CASE("higher truncations enumerate correctly") {
  AlgebraPtr x4 = xihom::testing::instance("f2x4").algebra;
  CHECK(x4->dim() == 4);
  AlgebraPtr a3 = xihom::testing::instance("a3").algebra;
  CHECK(a3->dim() == 6);  // e0, e1, e2, a0, a1, a0*a1
}
