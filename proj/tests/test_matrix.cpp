#include "doctest.h"
#include "xihom/matrix.hpp"

using namespace xihom;

TEST_CASE("rref handles the empty matrix") {
  Matrix m(0, 0, 2);
  RrefResult r = rref(m);
  CHECK(r.reduced.rows == 0);
  CHECK(r.pivot_cols.empty());
}

TEST_CASE("rref of the identity is itself") {
  Matrix m = Matrix::identity(3, 2);
  RrefResult r = rref(m);
  CHECK(r.reduced == m);
  CHECK(r.pivot_cols == std::vector<int>{0, 1, 2});
  CHECK(r.transform.is_identity());
}

TEST_CASE("rref of the all-ones 2x2 over F_2") {
  Matrix m = Matrix::from_rows({{1, 1}, {1, 1}}, 2);
  RrefResult r = rref(m);
  CHECK(r.reduced == Matrix::from_rows({{1, 1}, {0, 0}}, 2));
  CHECK(r.pivot_cols == std::vector<int>{0});
  CHECK(mul(r.transform, m) == r.reduced);
}

TEST_CASE("kernel bases") {
  CHECK(kernel_basis(Matrix::identity(4, 5)).cols == 0);
  Matrix z(2, 3, 3);
  Matrix k = kernel_basis(z);
  CHECK(k.cols == 3);
  CHECK(rank(k) == 3);
  Matrix row = Matrix::from_rows({{1, 1}}, 2);
  Matrix kr = kernel_basis(row);
  CHECK(kr == Matrix::from_rows({{1}, {1}}, 2));
}

TEST_CASE("solve under the free-variables-to-zero convention") {
  Matrix id = Matrix::identity(3, 5);
  Matrix b = Matrix::from_rows({{1}, {4}, {2}}, 5);
  CHECK(*solve(id, b) == b);
  Matrix a = Matrix::from_rows({{1, 1}}, 2);
  Matrix rhs = Matrix::from_rows({{1}}, 2);
  CHECK(*solve(a, rhs) == Matrix::from_rows({{1}, {0}}, 2));
  Matrix zero(1, 1, 2);
  CHECK(!solve(zero, rhs).has_value());
}

TEST_CASE("randomized exactness of rref, kernel and solve") {
  for (uint32_t p : {2u, 3u, 5u}) {
    Rng rng(42 + p);
    for (int trial = 0; trial < 60; ++trial) {
      int rows = 1 + int(rng.below(12));
      int cols = 1 + int(rng.below(12));
      Matrix m(rows, cols, p);
      for (auto& v : m.a) v = uint32_t(rng.below(p));
      RrefResult r = rref(m);
      CHECK(mul(r.transform, m) == r.reduced);
      CHECK(inverse(r.transform).has_value());
      Matrix k = kernel_basis(m);
      CHECK(mul(m, k).is_zero());
      CHECK(int(r.pivot_cols.size()) + k.cols == cols);

      Matrix b(rows, 1, p);
      for (auto& v : b.a) v = uint32_t(rng.below(p));
      auto x = solve(m, b);
      if (x) {
        CHECK(mul(m, *x) == b);
      } else {
        CHECK(rank(hstack({m, b})) > rank(m));
      }
    }
  }
}
