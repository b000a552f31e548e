#include "xihom/quiver.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <unordered_map>

namespace xihom {

namespace {

constexpr size_t kPathCap = 200000;

struct PathKey {
  std::vector<int> arrows;
  int vertex;  // source vertex for trivial paths, -1 otherwise
  bool operator==(const PathKey& o) const {
    return arrows == o.arrows && vertex == o.vertex;
  }
};

struct PathKeyHash {
  size_t operator()(const PathKey& k) const {
    Fnv64 f;
    f.add(uint64_t(int64_t(k.vertex)));
    for (int a : k.arrows) f.add(uint64_t(a));
    return size_t(f.h);
  }
};

PathKey key_of(const Path& p) {
  if (p.arrows.empty()) return PathKey{{}, p.src};
  return PathKey{p.arrows, -1};
}

uint64_t content_fingerprint(const AlgebraBasis& a) {
  Fnv64 f;
  f.add(a.presentation.p);
  f.add(uint64_t(a.presentation.vertices));
  for (const auto& ar : a.presentation.arrows) {
    f.add(uint64_t(ar.src));
    f.add(uint64_t(ar.tgt));
    f.add_bytes(ar.name.data(), ar.name.size());
  }
  for (const auto& bp : a.basis_paths) {
    f.add(uint64_t(bp.src));
    f.add(uint64_t(bp.tgt));
    for (int x : bp.arrows) f.add(uint64_t(x));
  }
  for (uint32_t v : a.mult_table) f.add(v);
  return f.h;
}

void validate_presentation(const QuiverPresentation& q) {
  check(is_prime(q.p) && q.p >= 2 && q.p <= 65536,
        "modulus must be a prime in [2, 2^16]");
  check(q.vertices >= 1, "quiver needs at least one vertex");
  check(q.nilpotency_bound >= 1, "nilpotency bound must be >= 1");
  for (const auto& a : q.arrows) {
    check(a.src >= 0 && a.src < q.vertices && a.tgt >= 0 && a.tgt < q.vertices,
          "arrow endpoint out of range");
    check(!a.name.empty(), "arrow needs a name");
  }
  for (size_t i = 0; i < q.arrows.size(); ++i)
    for (size_t j = i + 1; j < q.arrows.size(); ++j)
      check(q.arrows[i].name != q.arrows[j].name,
            "duplicate arrow name: " + q.arrows[i].name);
  for (const auto& rel : q.relations) {
    check(!rel.empty(), "empty relation");
    int src = -1, tgt = -1;
    size_t len0 = rel[0].arrows.size();
    for (const auto& term : rel) {
      check(term.arrows.size() >= 2,
            "non-admissible relation: term of path length < 2");
      check(term.arrows.size() == len0,
            "inhomogeneous relation rejected: terms of unequal path length");
      int s = -1, t = -1;
      for (size_t k = 0; k < term.arrows.size(); ++k) {
        int ai = term.arrows[k];
        check(ai >= 0 && ai < int(q.arrows.size()),
              "relation arrow index out of range");
        if (k == 0)
          s = q.arrows[ai].src;
        else
          check(q.arrows[ai].src == t, "relation term is not a path");
        t = q.arrows[ai].tgt;
      }
      if (src < 0) {
        src = s;
        tgt = t;
      } else {
        check(s == src && t == tgt, "relation terms are not parallel paths");
      }
    }
  }
}

}  // namespace

std::vector<int> AlgebraBasis::projective_basis(int v) const {
  std::vector<int> out;
  for (int i = 0; i < dim(); ++i)
    if (basis_paths[i].src == v) out.push_back(i);
  return out;
}

std::string AlgebraBasis::path_name(int i) const {
  const Path& p = basis_paths[i];
  if (p.arrows.empty()) return "e" + std::to_string(p.src);
  std::string s;
  for (size_t k = 0; k < p.arrows.size(); ++k) {
    if (k) s += "*";
    s += presentation.arrows[p.arrows[k]].name;
  }
  return s;
}

AlgebraPtr enumerate_basis(const QuiverPresentation& q) {
  validate_presentation(q);
  const uint32_t p = q.p;
  const int N = q.nilpotency_bound;

  // all paths of length <= N, generated by extending at the target
  std::vector<Path> paths;
  std::unordered_map<PathKey, int, PathKeyHash> index;
  for (int v = 0; v < q.vertices; ++v) {
    paths.push_back(Path{v, v, {}});
    index[key_of(paths.back())] = int(paths.size()) - 1;
  }
  size_t level_begin = 0, level_end = paths.size();
  for (int len = 1; len <= N; ++len) {
    for (size_t i = level_begin; i < level_end; ++i) {
      Path base = paths[i];
      for (int ai = 0; ai < int(q.arrows.size()); ++ai) {
        if (q.arrows[ai].src != base.tgt) continue;
        Path ext = base;
        ext.arrows.push_back(ai);
        ext.tgt = q.arrows[ai].tgt;
        check(paths.size() < kPathCap, "path explosion: raise relations or lower N");
        index[key_of(ext)] = int(paths.size());
        paths.push_back(std::move(ext));
      }
    }
    level_begin = level_end;
    level_end = paths.size();
  }

  // coordinates ordered longest-first so pivots land on long paths and the
  // quotient basis keeps the short ones
  std::vector<int> coord_of_path(paths.size());
  {
    std::vector<int> order(paths.size());
    for (size_t i = 0; i < paths.size(); ++i) order[i] = int(i);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
      return paths[x].length() > paths[y].length();
    });
    for (size_t c = 0; c < order.size(); ++c) coord_of_path[order[c]] = int(c);
  }
  const int dimV = int(paths.size());

  // spanning set of the ideal inside degrees <= N: u * r * v over all
  // composable path pairs within the length budget
  std::vector<std::vector<uint32_t>> gens;
  for (const auto& rel : q.relations) {
    const int rel_len = int(rel[0].arrows.size());
    const int rel_src = q.arrows[rel[0].arrows.front()].src;
    const int rel_tgt = q.arrows[rel[0].arrows.back()].tgt;
    for (const Path& v : paths) {
      if (v.tgt != rel_src) continue;
      for (const Path& u : paths) {
        if (u.src != rel_tgt) continue;
        if (v.length() + rel_len + u.length() > N) continue;
        std::vector<uint32_t> vec(dimV, 0);
        for (const auto& term : rel) {
          Path prod = v;
          prod.arrows.insert(prod.arrows.end(), term.arrows.begin(),
                             term.arrows.end());
          prod.arrows.insert(prod.arrows.end(), u.arrows.begin(),
                             u.arrows.end());
          prod.tgt = u.tgt;
          auto it = index.find(key_of(prod));
          check(it != index.end(), "internal: product path not enumerated");
          int c = coord_of_path[it->second];
          vec[c] = (vec[c] + term.coeff) % p;
        }
        gens.push_back(std::move(vec));
      }
    }
  }

  Matrix gen_mat(int(gens.size()), dimV, p);
  for (size_t i = 0; i < gens.size(); ++i)
    for (int j = 0; j < dimV; ++j) gen_mat.at(int(i), j) = gens[i][j];
  RrefResult ideal = rref(gen_mat);
  std::vector<bool> is_pivot(dimV, false);
  for (int c : ideal.pivot_cols) is_pivot[c] = true;

  // consistency: every path of length N must be a pivot, i.e. lie in the
  // ideal; otherwise the claimed bound is wrong
  for (size_t i = 0; i < paths.size(); ++i) {
    if (paths[i].length() != N) continue;
    if (!is_pivot[coord_of_path[i]]) {
      std::string nm;
      for (size_t k = 0; k < paths[i].arrows.size(); ++k) {
        if (k) nm += "*";
        nm += q.arrows[paths[i].arrows[k]].name;
      }
      throw ValidationError(
          "ideal not nilpotent within bound " + std::to_string(N) +
          ": path " + nm + " does not lie in the relation ideal");
    }
  }

  auto alg = std::make_shared<AlgebraBasis>();
  alg->presentation = q;
  std::vector<int> basis_path_ids;
  for (size_t i = 0; i < paths.size(); ++i)
    if (!is_pivot[coord_of_path[i]]) basis_path_ids.push_back(int(i));
  std::stable_sort(basis_path_ids.begin(), basis_path_ids.end(),
                   [&](int x, int y) {
                     return paths[x].length() < paths[y].length();
                   });
  for (int id : basis_path_ids) alg->basis_paths.push_back(paths[id]);
  const int dim = alg->dim();
  for (int v = 0; v < q.vertices; ++v) {
    check(alg->basis_paths[v].arrows.empty() && alg->basis_paths[v].src == v,
          "internal: trivial path missing from basis");
    alg->vertex_idempotents.push_back(v);
  }

  // reduce a coordinate vector modulo the row-reduced ideal, then read off
  // the basis coordinates
  std::vector<int> basis_of_coord(dimV, -1);
  for (int b = 0; b < dim; ++b)
    basis_of_coord[coord_of_path[basis_path_ids[b]]] = b;
  auto reduce_to_basis = [&](std::vector<uint32_t> vec) {
    for (size_t r = 0; r < ideal.pivot_cols.size(); ++r) {
      int pc = ideal.pivot_cols[r];
      uint32_t f = vec[pc];
      if (f == 0) continue;
      for (int j = 0; j < dimV; ++j)
        vec[j] =
            uint32_t((vec[j] + uint64_t(p - 1) * f % p * ideal.reduced.at(int(r), j)) % p);
    }
    std::vector<uint32_t> out(dim, 0);
    for (int j = 0; j < dimV; ++j)
      if (vec[j] != 0) {
        check(basis_of_coord[j] >= 0, "internal: reduction left a pivot coord");
        out[basis_of_coord[j]] = vec[j];
      }
    return out;
  };

  alg->mult_table.assign(size_t(dim) * dim * dim, 0);
  for (int a = 0; a < dim; ++a) {
    for (int b = 0; b < dim; ++b) {
      const Path& pa = alg->basis_paths[a];
      const Path& pb = alg->basis_paths[b];
      if (pb.tgt != pa.src) continue;  // product a*b applies b first
      // length > N lands in the ideal: every length-N path was just verified
      // to lie in it, and longer paths factor through one
      if (pa.length() + pb.length() > N) continue;
      Path prod;
      prod.src = pb.src;
      prod.tgt = pa.tgt;
      prod.arrows = pb.arrows;
      prod.arrows.insert(prod.arrows.end(), pa.arrows.begin(), pa.arrows.end());
      auto it = index.find(key_of(prod));
      check(it != index.end(), "internal: product path missing");
      std::vector<uint32_t> vec(dimV, 0);
      vec[coord_of_path[it->second]] = 1;
      auto coords = reduce_to_basis(std::move(vec));
      for (int c = 0; c < dim; ++c)
        alg->mult_table[(size_t(a) * dim + b) * dim + c] = coords[c];
    }
  }

  // unit and associativity on the whole basis
  auto prod_coords = [&](int a, int b) {
    std::vector<uint32_t> v(dim);
    for (int c = 0; c < dim; ++c) v[c] = alg->structure_const(a, b, c);
    return v;
  };
  for (int b = 0; b < dim; ++b) {
    const Path& pb = alg->basis_paths[b];
    for (int v = 0; v < q.vertices; ++v) {
      auto eb = prod_coords(v, b);   // e_v * b
      auto be = prod_coords(b, v);   // b * e_v
      for (int c = 0; c < dim; ++c) {
        uint32_t want_eb = (pb.tgt == v && c == b) ? 1u : 0u;
        uint32_t want_be = (pb.src == v && c == b) ? 1u : 0u;
        check(eb[c] == want_eb && be[c] == want_be,
              "unit check failed during basis enumeration");
      }
    }
  }
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b)
      for (int c = 0; c < dim; ++c) {
        // (a*b)*c vs a*(b*c)
        std::vector<uint32_t> left(dim, 0), right(dim, 0);
        for (int m = 0; m < dim; ++m) {
          uint32_t ab = alg->structure_const(a, b, m);
          if (ab)
            for (int r = 0; r < dim; ++r)
              left[r] = uint32_t(
                  (left[r] + uint64_t(ab) * alg->structure_const(m, c, r)) % p);
          uint32_t bc = alg->structure_const(b, c, m);
          if (bc)
            for (int r = 0; r < dim; ++r)
              right[r] = uint32_t(
                  (right[r] + uint64_t(bc) * alg->structure_const(a, m, r)) % p);
        }
        check(left == right, "associativity check failed");
      }

  alg->fingerprint = content_fingerprint(*alg);
  return alg;
}

namespace {
std::mutex g_opposite_mutex;
std::map<uint64_t, std::weak_ptr<const AlgebraBasis>> g_opposite_cache;
}  // namespace

AlgebraPtr opposite(const AlgebraPtr& a) {
  {
    std::lock_guard<std::mutex> lock(g_opposite_mutex);
    auto it = g_opposite_cache.find(a->fingerprint);
    if (it != g_opposite_cache.end())
      if (auto sp = it->second.lock()) return sp;
  }
  auto op = std::make_shared<AlgebraBasis>();
  op->presentation = a->presentation;
  op->presentation.arrows.clear();
  for (const auto& ar : a->presentation.arrows)
    op->presentation.arrows.push_back(Arrow{ar.tgt, ar.src, ar.name});
  op->presentation.relations.clear();
  for (const auto& rel : a->presentation.relations) {
    std::vector<RelationTerm> r;
    for (const auto& term : rel) {
      RelationTerm t = term;
      std::reverse(t.arrows.begin(), t.arrows.end());
      r.push_back(std::move(t));
    }
    op->presentation.relations.push_back(std::move(r));
  }
  for (const auto& bp : a->basis_paths) {
    Path q{bp.tgt, bp.src, bp.arrows};
    std::reverse(q.arrows.begin(), q.arrows.end());
    op->basis_paths.push_back(std::move(q));
  }
  op->vertex_idempotents = a->vertex_idempotents;
  const int dim = a->dim();
  op->mult_table.assign(a->mult_table.size(), 0);
  for (int x = 0; x < dim; ++x)
    for (int y = 0; y < dim; ++y)
      for (int c = 0; c < dim; ++c)
        op->mult_table[(size_t(x) * dim + y) * dim + c] =
            a->structure_const(y, x, c);
  op->fingerprint = content_fingerprint(*op);
  {
    std::lock_guard<std::mutex> lock(g_opposite_mutex);
    g_opposite_cache[a->fingerprint] = op;
    g_opposite_cache[op->fingerprint] = a;
  }
  return op;
}

}  // namespace xihom
