#pragma once

// Exact dense linear algebra over the prime field F_p. Everything downstream
// (Hom spaces, kernels, cohomology dimensions) reduces to the three
// operations rref / kernel_basis / solve, so these are kept deterministic:
// pivoting always picks the first nonzero entry left to right, and solve
// sets free variables to zero.

#include <cstdint>
#include <optional>
#include <vector>

#include "xihom/common.hpp"

namespace xihom {

bool is_prime(uint32_t p);
uint32_t fp_inv(uint32_t a, uint32_t p);

// Scalar of F_p; the modulus travels with the value.
struct Fp {
  uint32_t value = 0;
  uint32_t p = 2;

  Fp() = default;
  Fp(uint32_t v, uint32_t prime) : value(v % prime), p(prime) {}

  Fp operator+(Fp o) const { return Fp(value + o.value, same(o)); }
  Fp operator-(Fp o) const { return Fp(value + p - o.value, same(o)); }
  Fp operator*(Fp o) const {
    return Fp(uint32_t((uint64_t(value) * o.value) % p), same(o));
  }
  Fp inv() const { return Fp(fp_inv(value, p), p); }
  bool operator==(const Fp& o) const { return value == o.value && p == o.p; }

 private:
  uint32_t same(Fp o) const {
    if (p != o.p) throw ValidationError("mixed moduli in Fp arithmetic");
    return p;
  }
};

struct Matrix {
  int rows = 0;
  int cols = 0;
  uint32_t p = 2;
  std::vector<uint32_t> a;  // row-major, values in [0, p)

  Matrix() = default;
  Matrix(int r, int c, uint32_t prime)
      : rows(r), cols(c), p(prime), a(size_t(r) * size_t(c), 0u) {}

  static Matrix identity(int n, uint32_t p);
  static Matrix from_rows(const std::vector<std::vector<long long>>& rows,
                          uint32_t p);

  uint32_t& at(int r, int c) { return a[size_t(r) * cols + c]; }
  uint32_t at(int r, int c) const { return a[size_t(r) * cols + c]; }
  Fp entry(int r, int c) const { return Fp(at(r, c), p); }

  bool is_zero() const;
  bool is_identity() const;
  bool operator==(const Matrix& o) const {
    return rows == o.rows && cols == o.cols && p == o.p && a == o.a;
  }

  Matrix transpose() const;
  // flatten to a single column, row-major
  Matrix vec() const;
};

Matrix add(const Matrix& x, const Matrix& y);
Matrix sub(const Matrix& x, const Matrix& y);
Matrix neg(const Matrix& x);
Matrix scalar_mul(uint32_t c, const Matrix& x);
Matrix mul(const Matrix& x, const Matrix& y);
Matrix hstack(const std::vector<Matrix>& parts);
Matrix vstack(const std::vector<Matrix>& parts);
// assemble from a grid of blocks; blocks[i][j] gives block row i, column j
Matrix block_matrix(const std::vector<std::vector<Matrix>>& blocks);
Matrix submatrix(const Matrix& m, int r0, int c0, int nr, int nc);

struct RrefResult {
  Matrix reduced;
  std::vector<int> pivot_cols;
  Matrix transform;  // invertible, transform * input = reduced
};

RrefResult rref(const Matrix& m);
int rank(const Matrix& m);

// Columns form a basis of the null space {x : m x = 0}, ordered by the free
// column they normalize.
Matrix kernel_basis(const Matrix& m);

// Any x with a x = b, free variables set to zero; nullopt when inconsistent.
// b may have several columns (one solve per column).
std::optional<Matrix> solve(const Matrix& a, const Matrix& b);

std::optional<Matrix> inverse(const Matrix& m);

void hash_matrix(Fnv64& f, const Matrix& m);

}  // namespace xihom
