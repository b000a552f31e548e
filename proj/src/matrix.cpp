#include "xihom/matrix.hpp"

namespace xihom {

bool is_prime(uint32_t p) {
  if (p < 2) return false;
  for (uint32_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

uint32_t fp_inv(uint32_t a, uint32_t p) {
  a %= p;
  if (a == 0) throw ValidationError("division by zero in F_p");
  // extended Euclid on (a, p)
  int64_t t = 0, new_t = 1, r = p, new_r = a;
  while (new_r != 0) {
    int64_t q = r / new_r;
    int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (t < 0) t += p;
  return uint32_t(t);
}

Matrix Matrix::identity(int n, uint32_t p) {
  Matrix m(n, n, p);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<long long>>& rows,
                         uint32_t p) {
  int r = int(rows.size());
  int c = r == 0 ? 0 : int(rows[0].size());
  Matrix m(r, c, p);
  for (int i = 0; i < r; ++i) {
    check(int(rows[i].size()) == c, "ragged matrix rows");
    for (int j = 0; j < c; ++j) {
      long long v = rows[i][j] % (long long)p;
      if (v < 0) v += p;
      m.at(i, j) = uint32_t(v);
    }
  }
  return m;
}

bool Matrix::is_zero() const {
  for (uint32_t v : a)
    if (v != 0) return false;
  return true;
}

bool Matrix::is_identity() const {
  if (rows != cols) return false;
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      if (at(i, j) != (i == j ? 1u : 0u)) return false;
  return true;
}

Matrix Matrix::transpose() const {
  Matrix t(cols, rows, p);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
  return t;
}

Matrix Matrix::vec() const {
  Matrix v(rows * cols, 1, p);
  for (size_t i = 0; i < a.size(); ++i) v.a[i] = a[i];
  return v;
}

static void same_shape(const Matrix& x, const Matrix& y) {
  if (x.rows != y.rows || x.cols != y.cols || x.p != y.p)
    throw ValidationError("matrix shape or modulus mismatch");
}

Matrix add(const Matrix& x, const Matrix& y) {
  same_shape(x, y);
  Matrix r = x;
  for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = (r.a[i] + y.a[i]) % x.p;
  return r;
}

Matrix sub(const Matrix& x, const Matrix& y) {
  same_shape(x, y);
  Matrix r = x;
  for (size_t i = 0; i < r.a.size(); ++i)
    r.a[i] = (r.a[i] + x.p - y.a[i]) % x.p;
  return r;
}

Matrix neg(const Matrix& x) {
  Matrix r = x;
  for (auto& v : r.a) v = (x.p - v) % x.p;
  return r;
}

Matrix scalar_mul(uint32_t c, const Matrix& x) {
  Matrix r = x;
  c %= x.p;
  for (auto& v : r.a) v = uint32_t((uint64_t(v) * c) % x.p);
  return r;
}

Matrix mul(const Matrix& x, const Matrix& y) {
  if (x.cols != y.rows || x.p != y.p)
    throw ValidationError("matrix product shape or modulus mismatch");
  Matrix r(x.rows, y.cols, x.p);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      uint64_t v = x.at(i, k);
      if (v == 0) continue;
      for (int j = 0; j < y.cols; ++j)
        r.at(i, j) = uint32_t((r.at(i, j) + v * y.at(k, j)) % x.p);
    }
  return r;
}

Matrix hstack(const std::vector<Matrix>& parts) {
  check(!parts.empty(), "hstack of nothing");
  int rows = parts[0].rows;
  uint32_t p = parts[0].p;
  int cols = 0;
  for (const auto& m : parts) {
    check(m.rows == rows && m.p == p, "hstack shape mismatch");
    cols += m.cols;
  }
  Matrix r(rows, cols, p);
  int off = 0;
  for (const auto& m : parts) {
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < m.cols; ++j) r.at(i, off + j) = m.at(i, j);
    off += m.cols;
  }
  return r;
}

Matrix vstack(const std::vector<Matrix>& parts) {
  check(!parts.empty(), "vstack of nothing");
  int cols = parts[0].cols;
  uint32_t p = parts[0].p;
  int rows = 0;
  for (const auto& m : parts) {
    check(m.cols == cols && m.p == p, "vstack shape mismatch");
    rows += m.rows;
  }
  Matrix r(rows, cols, p);
  int off = 0;
  for (const auto& m : parts) {
    for (int i = 0; i < m.rows; ++i)
      for (int j = 0; j < cols; ++j) r.at(off + i, j) = m.at(i, j);
    off += m.rows;
  }
  return r;
}

Matrix block_matrix(const std::vector<std::vector<Matrix>>& blocks) {
  std::vector<Matrix> rows;
  rows.reserve(blocks.size());
  for (const auto& br : blocks) rows.push_back(hstack(br));
  return vstack(rows);
}

Matrix submatrix(const Matrix& m, int r0, int c0, int nr, int nc) {
  Matrix r(nr, nc, m.p);
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nc; ++j) r.at(i, j) = m.at(r0 + i, c0 + j);
  return r;
}

RrefResult rref(const Matrix& m) {
  RrefResult res;
  res.reduced = m;
  res.transform = Matrix::identity(m.rows, m.p);
  Matrix& red = res.reduced;
  Matrix& tr = res.transform;
  const uint32_t p = m.p;
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int piv = -1;
    for (int i = r; i < m.rows; ++i)
      if (red.at(i, c) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r) {
      for (int j = 0; j < m.cols; ++j) std::swap(red.at(piv, j), red.at(r, j));
      for (int j = 0; j < m.rows; ++j) std::swap(tr.at(piv, j), tr.at(r, j));
    }
    uint32_t inv = fp_inv(red.at(r, c), p);
    for (int j = 0; j < m.cols; ++j)
      red.at(r, j) = uint32_t((uint64_t(red.at(r, j)) * inv) % p);
    for (int j = 0; j < m.rows; ++j)
      tr.at(r, j) = uint32_t((uint64_t(tr.at(r, j)) * inv) % p);
    for (int i = 0; i < m.rows; ++i) {
      if (i == r || red.at(i, c) == 0) continue;
      uint64_t f = red.at(i, c);
      for (int j = 0; j < m.cols; ++j)
        red.at(i, j) =
            uint32_t((red.at(i, j) + (p - 1) * f % p * red.at(r, j)) % p);
      for (int j = 0; j < m.rows; ++j)
        tr.at(i, j) =
            uint32_t((tr.at(i, j) + (p - 1) * f % p * tr.at(r, j)) % p);
    }
    res.pivot_cols.push_back(c);
    ++r;
  }
  return res;
}

int rank(const Matrix& m) { return int(rref(m).pivot_cols.size()); }

Matrix kernel_basis(const Matrix& m) {
  RrefResult r = rref(m);
  std::vector<bool> is_pivot(m.cols, false);
  for (int c : r.pivot_cols) is_pivot[c] = true;
  std::vector<int> free_cols;
  for (int c = 0; c < m.cols; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  Matrix k(m.cols, int(free_cols.size()), m.p);
  for (size_t t = 0; t < free_cols.size(); ++t) {
    int fc = free_cols[t];
    k.at(fc, int(t)) = 1;
    for (size_t i = 0; i < r.pivot_cols.size(); ++i) {
      uint32_t v = r.reduced.at(int(i), fc);
      if (v != 0) k.at(r.pivot_cols[i], int(t)) = m.p - v;
    }
  }
  return k;
}

std::optional<Matrix> solve(const Matrix& a, const Matrix& b) {
  if (a.rows != b.rows || a.p != b.p)
    throw ValidationError("solve: row count or modulus mismatch");
  RrefResult r = rref(a);
  Matrix tb = mul(r.transform, b);
  int rk = int(r.pivot_cols.size());
  for (int i = rk; i < a.rows; ++i)
    for (int j = 0; j < b.cols; ++j)
      if (tb.at(i, j) != 0) return std::nullopt;
  Matrix x(a.cols, b.cols, a.p);
  for (int i = 0; i < rk; ++i)
    for (int j = 0; j < b.cols; ++j) x.at(r.pivot_cols[i], j) = tb.at(i, j);
  return x;
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows != m.cols) return std::nullopt;
  RrefResult r = rref(m);
  if (int(r.pivot_cols.size()) != m.rows) return std::nullopt;
  return r.transform;
}

void hash_matrix(Fnv64& f, const Matrix& m) {
  f.add(uint64_t(m.rows));
  f.add(uint64_t(m.cols));
  f.add(m.p);
  for (uint32_t v : m.a) f.add(v);
}

}  // namespace xihom
