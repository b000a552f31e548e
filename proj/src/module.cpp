#include "xihom/module.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace xihom {

namespace {

Matrix path_action(const Module& m, const std::vector<int>& arrows) {
  Matrix r = Matrix::identity(m.dim, m.p());
  for (int a : arrows) r = mul(m.arrow_action[a], r);
  return r;
}

int arrow_basis_index(const AlgebraBasis& alg, int arrow) {
  for (int i = 0; i < alg.dim(); ++i) {
    const Path& bp = alg.basis_paths[i];
    if (bp.arrows.size() == 1 && bp.arrows[0] == arrow) return i;
  }
  throw InternalError("arrow missing from basis (non-admissible presentation)");
}

// columns of m that are independent, as a basis matrix of the column space
Matrix column_space_basis(const Matrix& m) {
  RrefResult r = rref(m);
  Matrix b(m.rows, int(r.pivot_cols.size()), m.p);
  for (size_t t = 0; t < r.pivot_cols.size(); ++t)
    for (int i = 0; i < m.rows; ++i) b.at(i, int(t)) = m.at(i, r.pivot_cols[t]);
  return b;
}

}  // namespace

ModulePtr Module::make(AlgebraPtr alg, int dim, std::vector<Matrix> actions,
                       std::vector<Matrix> blocks) {
  check(dim >= 0, "negative module dimension");
  check(int(actions.size()) == alg->num_arrows(), "one action per arrow required");
  check(int(blocks.size()) == alg->vertices(), "one block per vertex required");
  auto mod = std::make_shared<Module>();
  mod->alg = alg;
  mod->dim = dim;
  mod->arrow_action = std::move(actions);
  mod->vertex_block = std::move(blocks);
  const uint32_t p = alg->p();
  for (const Matrix& a : mod->arrow_action)
    check(a.rows == dim && a.cols == dim && a.p == p, "action shape mismatch");
  for (const Matrix& e : mod->vertex_block)
    check(e.rows == dim && e.cols == dim && e.p == p, "block shape mismatch");

  Matrix sum(dim, dim, p);
  for (const Matrix& e : mod->vertex_block) sum = add(sum, e);
  check(sum.is_identity(), "vertex blocks do not sum to the identity");
  for (int v = 0; v < alg->vertices(); ++v)
    for (int w = 0; w < alg->vertices(); ++w) {
      Matrix prod = mul(mod->vertex_block[v], mod->vertex_block[w]);
      if (v == w)
        check(prod == mod->vertex_block[v], "vertex block not idempotent");
      else
        check(prod.is_zero(), "vertex blocks not orthogonal");
    }
  for (int a = 0; a < alg->num_arrows(); ++a) {
    const Arrow& ar = alg->presentation.arrows[a];
    Matrix conj = mul(mod->vertex_block[ar.tgt],
                      mul(mod->arrow_action[a], mod->vertex_block[ar.src]));
    check(conj == mod->arrow_action[a],
          "arrow action does not respect vertex blocks: " + ar.name);
  }
  for (const auto& rel : alg->presentation.relations) {
    Matrix acc(dim, dim, p);
    for (const auto& term : rel)
      acc = add(acc, scalar_mul(term.coeff, path_action(*mod, term.arrows)));
    check(acc.is_zero(), "module action violates a relation");
  }

  Fnv64 f;
  f.add(alg->fingerprint);
  f.add(uint64_t(dim));
  for (const Matrix& a : mod->arrow_action) hash_matrix(f, a);
  for (const Matrix& e : mod->vertex_block) hash_matrix(f, e);
  mod->fingerprint = f.h;
  return mod;
}

ModuleMap ModuleMap::make(ModulePtr src, ModulePtr tgt, Matrix m) {
  check(src->alg->fingerprint == tgt->alg->fingerprint,
        "module map across different algebras");
  check(m.rows == tgt->dim && m.cols == src->dim && m.p == src->p(),
        "module map matrix shape mismatch");
  for (int a = 0; a < src->alg->num_arrows(); ++a)
    check(mul(m, src->arrow_action[a]) == mul(tgt->arrow_action[a], m),
          "map does not intertwine arrow " +
              src->alg->presentation.arrows[a].name);
  for (int v = 0; v < src->alg->vertices(); ++v)
    check(mul(m, src->vertex_block[v]) == mul(tgt->vertex_block[v], m),
          "map does not respect vertex blocks");
  return ModuleMap{std::move(src), std::move(tgt), std::move(m)};
}

ModuleMap compose(const ModuleMap& g, const ModuleMap& f) {
  check(f.target->same_content(*g.source), "composition endpoint mismatch");
  return ModuleMap{f.source, g.target, mul(g.matrix, f.matrix)};
}

ModuleMap identity_map(const ModulePtr& m) {
  return ModuleMap{m, m, Matrix::identity(m->dim, m->p())};
}

ModuleMap zero_map(const ModulePtr& src, const ModulePtr& tgt) {
  return ModuleMap{src, tgt, Matrix(tgt->dim, src->dim, src->p())};
}

ModuleMap add_maps(const ModuleMap& f, const ModuleMap& g) {
  return ModuleMap{f.source, f.target, add(f.matrix, g.matrix)};
}

ModuleMap sub_maps(const ModuleMap& f, const ModuleMap& g) {
  return ModuleMap{f.source, f.target, sub(f.matrix, g.matrix)};
}

ModulePtr zero_module(const AlgebraPtr& alg) {
  std::vector<Matrix> actions(alg->num_arrows(), Matrix(0, 0, alg->p()));
  std::vector<Matrix> blocks(alg->vertices(), Matrix(0, 0, alg->p()));
  return Module::make(alg, 0, std::move(actions), std::move(blocks));
}

ModulePtr simple_module(const AlgebraPtr& alg, int vertex) {
  check(vertex >= 0 && vertex < alg->vertices(), "vertex out of range");
  std::vector<Matrix> actions(alg->num_arrows(), Matrix(1, 1, alg->p()));
  std::vector<Matrix> blocks(alg->vertices(), Matrix(1, 1, alg->p()));
  blocks[vertex].at(0, 0) = 1;
  return Module::make(alg, 1, std::move(actions), std::move(blocks));
}

namespace {

ModulePtr module_on_basis_paths(const AlgebraPtr& alg,
                                const std::vector<int>& basis_ids) {
  const int d = int(basis_ids.size());
  const uint32_t p = alg->p();
  std::vector<int> local(alg->dim(), -1);
  for (int i = 0; i < d; ++i) local[basis_ids[i]] = i;
  std::vector<Matrix> actions;
  for (int a = 0; a < alg->num_arrows(); ++a) {
    int ab = arrow_basis_index(*alg, a);
    Matrix m(d, d, p);
    for (int j = 0; j < d; ++j)
      for (int c = 0; c < alg->dim(); ++c) {
        uint32_t v = alg->structure_const(ab, basis_ids[j], c);
        if (v == 0) continue;
        check(local[c] >= 0, "left ideal not closed under the action");
        m.at(local[c], j) = v;
      }
    actions.push_back(std::move(m));
  }
  std::vector<Matrix> blocks(alg->vertices(), Matrix(d, d, p));
  for (int j = 0; j < d; ++j)
    blocks[alg->basis_paths[basis_ids[j]].tgt].at(j, j) = 1;
  return Module::make(alg, d, std::move(actions), std::move(blocks));
}

}  // namespace

ModulePtr projective_module(const AlgebraPtr& alg, int vertex) {
  check(vertex >= 0 && vertex < alg->vertices(), "vertex out of range");
  return module_on_basis_paths(alg, alg->projective_basis(vertex));
}

ModulePtr regular_module(const AlgebraPtr& alg) {
  std::vector<int> all(alg->dim());
  for (int i = 0; i < alg->dim(); ++i) all[i] = i;
  return module_on_basis_paths(alg, all);
}

DirectSum direct_sum(const std::vector<ModulePtr>& parts) {
  check(!parts.empty(), "direct sum of nothing");
  const AlgebraPtr alg = parts[0]->alg;
  const uint32_t p = alg->p();
  int total = 0;
  for (const auto& m : parts) {
    check(m->alg->fingerprint == alg->fingerprint, "direct sum across algebras");
    total += m->dim;
  }
  std::vector<Matrix> actions(alg->num_arrows(), Matrix(total, total, p));
  std::vector<Matrix> blocks(alg->vertices(), Matrix(total, total, p));
  int off = 0;
  for (const auto& m : parts) {
    for (int a = 0; a < alg->num_arrows(); ++a)
      for (int i = 0; i < m->dim; ++i)
        for (int j = 0; j < m->dim; ++j)
          actions[a].at(off + i, off + j) = m->arrow_action[a].at(i, j);
    for (int v = 0; v < alg->vertices(); ++v)
      for (int i = 0; i < m->dim; ++i)
        for (int j = 0; j < m->dim; ++j)
          blocks[v].at(off + i, off + j) = m->vertex_block[v].at(i, j);
    off += m->dim;
  }
  DirectSum ds;
  ds.total = Module::make(alg, total, std::move(actions), std::move(blocks));
  off = 0;
  for (const auto& m : parts) {
    Matrix inc(total, m->dim, p), prj(m->dim, total, p);
    for (int i = 0; i < m->dim; ++i) {
      inc.at(off + i, i) = 1;
      prj.at(i, off + i) = 1;
    }
    ds.inclusions.push_back(ModuleMap{m, ds.total, std::move(inc)});
    ds.projections.push_back(ModuleMap{ds.total, m, std::move(prj)});
    off += m->dim;
  }
  return ds;
}

Matrix basis_element_action(const Module& m, int basis_index) {
  const Path& bp = m.alg->basis_paths[basis_index];
  if (bp.arrows.empty()) return m.vertex_block[bp.src];
  return path_action(m, bp.arrows);
}

Matrix radical_subspace(const Module& m) {
  if (m.alg->num_arrows() == 0 || m.dim == 0)
    return Matrix(m.dim, 0, m.p());
  std::vector<Matrix> imgs;
  for (const Matrix& a : m.arrow_action) imgs.push_back(a);
  return column_space_basis(hstack(imgs));
}

std::vector<ModuleMap> hom_basis(const ModulePtr& mp, const ModulePtr& np) {
  const Module& m = *mp;
  const Module& n = *np;
  check(m.alg->fingerprint == n.alg->fingerprint, "hom across algebras");
  const uint32_t p = m.p();
  const int nm = n.dim * m.dim;
  if (nm == 0) return {};
  // unknown X (n.dim x m.dim) flattened row-major; constraints
  // X*A - B*X = 0 per arrow and per vertex block
  std::vector<std::pair<const Matrix*, const Matrix*>> pairs;
  for (int a = 0; a < m.alg->num_arrows(); ++a)
    pairs.push_back({&m.arrow_action[a], &n.arrow_action[a]});
  for (int v = 0; v < m.alg->vertices(); ++v)
    pairs.push_back({&m.vertex_block[v], &n.vertex_block[v]});
  Matrix sys(int(pairs.size()) * nm, nm, p);
  int row = 0;
  for (auto [A, B] : pairs) {
    for (int i = 0; i < n.dim; ++i)
      for (int j = 0; j < m.dim; ++j) {
        for (int k = 0; k < m.dim; ++k) {
          uint32_t c = A->at(k, j);
          if (c) {
            int idx = i * m.dim + k;
            sys.at(row, idx) = (sys.at(row, idx) + c) % p;
          }
        }
        for (int k = 0; k < n.dim; ++k) {
          uint32_t c = B->at(i, k);
          if (c) {
            int idx = k * m.dim + j;
            sys.at(row, idx) = (sys.at(row, idx) + p - c % p) % p;
          }
        }
        ++row;
      }
  }
  Matrix K = kernel_basis(sys);
  std::vector<ModuleMap> out;
  for (int t = 0; t < K.cols; ++t) {
    Matrix X(n.dim, m.dim, p);
    for (int i = 0; i < n.dim; ++i)
      for (int j = 0; j < m.dim; ++j) X.at(i, j) = K.at(i * m.dim + j, t);
    out.push_back(ModuleMap{mp, np, std::move(X)});
  }
  return out;
}

int hom_dim(const ModulePtr& m, const ModulePtr& n) {
  if (m->dim == 0 || n->dim == 0) return 0;
  return int(hom_basis(m, n).size());
}

namespace {

// columns: flattened condition images of the hom basis; rows: stacked rhs
struct HomSystem {
  std::vector<ModuleMap> basis;
  Matrix sys;  // (sum of rhs sizes) x basis size
  Matrix rhs;  // column
};

HomSystem hom_system(const ModulePtr& src, const ModulePtr& tgt,
                     const std::vector<HomCondition>& conds) {
  HomSystem h;
  h.basis = hom_basis(src, tgt);
  const uint32_t p = src->p();
  std::vector<Matrix> sys_rows, rhs_rows;
  for (const auto& c : conds) {
    int pr = c.post ? c.post->rows : tgt->dim;
    int pc = c.pre ? c.pre->cols : src->dim;
    check(c.rhs.rows == pr && c.rhs.cols == pc, "hom condition rhs shape");
    Matrix block(pr * pc, int(h.basis.size()), p);
    for (size_t t = 0; t < h.basis.size(); ++t) {
      Matrix img = h.basis[t].matrix;
      if (c.pre) img = mul(img, *c.pre);
      if (c.post) img = mul(*c.post, img);
      for (int i = 0; i < pr; ++i)
        for (int j = 0; j < pc; ++j)
          block.at(i * pc + j, int(t)) = img.at(i, j);
    }
    sys_rows.push_back(std::move(block));
    rhs_rows.push_back(c.rhs.vec());
  }
  h.sys = vstack(sys_rows);
  h.rhs = vstack(rhs_rows);
  return h;
}

}  // namespace

std::optional<ModuleMap> solve_hom(const ModulePtr& src, const ModulePtr& tgt,
                                   const std::vector<HomCondition>& conds) {
  HomSystem h = hom_system(src, tgt, conds);
  auto lambda = solve(h.sys, h.rhs);
  if (!lambda) return std::nullopt;
  Matrix X(tgt->dim, src->dim, src->p());
  for (size_t t = 0; t < h.basis.size(); ++t)
    X = add(X, scalar_mul(lambda->at(int(t), 0), h.basis[t].matrix));
  return ModuleMap{src, tgt, std::move(X)};
}

std::vector<ModuleMap> solve_hom_kernel(const ModulePtr& src,
                                        const ModulePtr& tgt,
                                        const std::vector<HomCondition>& conds) {
  HomSystem h = hom_system(src, tgt, conds);
  Matrix K = kernel_basis(h.sys);
  std::vector<ModuleMap> out;
  for (int c = 0; c < K.cols; ++c) {
    Matrix X(tgt->dim, src->dim, src->p());
    for (size_t t = 0; t < h.basis.size(); ++t)
      X = add(X, scalar_mul(K.at(int(t), c), h.basis[t].matrix));
    out.push_back(ModuleMap{src, tgt, std::move(X)});
  }
  return out;
}

SubquotientMap kernel(const ModuleMap& f) {
  const ModulePtr& src = f.source;
  Matrix B = kernel_basis(f.matrix);  // src.dim x k
  const int k = B.cols;
  std::vector<Matrix> actions, blocks;
  for (const Matrix& a : src->arrow_action) {
    auto X = solve(B, mul(a, B));
    if (!X) throw InternalError("kernel not action-stable");
    actions.push_back(std::move(*X));
  }
  for (const Matrix& e : src->vertex_block) {
    auto X = solve(B, mul(e, B));
    if (!X) throw InternalError("kernel not block-stable");
    blocks.push_back(std::move(*X));
  }
  ModulePtr K = Module::make(src->alg, k, std::move(actions), std::move(blocks));
  return SubquotientMap{K, ModuleMap::make(K, src, B)};
}

SubquotientMap cokernel(const ModuleMap& f) {
  const ModulePtr& tgt = f.target;
  const uint32_t p = tgt->p();
  RrefResult r = rref(f.matrix.transpose());
  const int rk = int(r.pivot_cols.size());
  std::vector<bool> is_pivot(tgt->dim, false);
  for (int c : r.pivot_cols) is_pivot[c] = true;
  std::vector<int> rest;
  for (int c = 0; c < tgt->dim; ++c)
    if (!is_pivot[c]) rest.push_back(c);
  const int q = int(rest.size());
  // projection: reduce modulo the image, keep the non-pivot coordinates
  Matrix proj(q, tgt->dim, p);
  for (int j = 0; j < tgt->dim; ++j) {
    std::vector<uint32_t> v(tgt->dim, 0);
    v[j] = 1;
    for (int i = 0; i < rk; ++i) {
      uint32_t coef = v[r.pivot_cols[i]];
      if (coef == 0) continue;
      for (int c = 0; c < tgt->dim; ++c)
        v[c] = uint32_t((v[c] + uint64_t(p - 1) * coef % p *
                                    r.reduced.at(i, c)) %
                        p);
    }
    for (int t = 0; t < q; ++t) proj.at(t, j) = v[rest[t]];
  }
  Matrix sect(tgt->dim, q, p);
  for (int t = 0; t < q; ++t) sect.at(rest[t], t) = 1;
  std::vector<Matrix> actions, blocks;
  for (const Matrix& a : tgt->arrow_action)
    actions.push_back(mul(proj, mul(a, sect)));
  for (const Matrix& e : tgt->vertex_block)
    blocks.push_back(mul(proj, mul(e, sect)));
  ModulePtr Q = Module::make(tgt->alg, q, std::move(actions), std::move(blocks));
  return SubquotientMap{Q, ModuleMap::make(tgt, Q, proj)};
}

ModulePtr dual_module(const ModulePtr& m) {
  AlgebraPtr op = opposite(m->alg);
  std::vector<Matrix> actions, blocks;
  for (const Matrix& a : m->arrow_action) actions.push_back(a.transpose());
  for (const Matrix& e : m->vertex_block) blocks.push_back(e.transpose());
  return Module::make(op, m->dim, std::move(actions), std::move(blocks));
}

ModuleMap dual_map(const ModuleMap& f) {
  return ModuleMap::make(dual_module(f.target), dual_module(f.source),
                         f.matrix.transpose());
}

bool is_isomorphic(const ModulePtr& mp, const ModulePtr& np) {
  const Module& m = *mp;
  const Module& n = *np;
  if (m.dim != n.dim) return false;
  if (m.dim == 0) return true;
  auto basis = hom_basis(mp, np);
  if (basis.empty()) return false;
  const uint32_t p = m.p();
  const size_t h = basis.size();
  // exact search when the coefficient space is small, which covers every
  // module this engine meets at desk scale
  double space = 1;
  for (size_t i = 0; i < h; ++i) space *= double(p);
  if (space <= 65536.0) {
    std::vector<uint32_t> coef(h, 0);
    while (true) {
      size_t i = 0;
      while (i < h && coef[i] == p - 1) coef[i++] = 0;
      if (i == h) break;
      ++coef[i];
      Matrix X(m.dim, m.dim, p);
      for (size_t t = 0; t < h; ++t)
        if (coef[t]) X = add(X, scalar_mul(coef[t], basis[t].matrix));
      if (rank(X) == m.dim) return true;
    }
    return false;
  }
  Rng rng(m.fingerprint ^ n.fingerprint);
  for (int trial = 0; trial < 512; ++trial) {
    Matrix X(m.dim, m.dim, p);
    for (size_t t = 0; t < h; ++t)
      X = add(X, scalar_mul(uint32_t(rng.below(p)), basis[t].matrix));
    if (rank(X) == m.dim) return true;
  }
  return false;  // inconclusive search treated as non-isomorphic
}

TopData top_of(const Module& m) {
  TopData td;
  td.multiplicity.assign(m.alg->vertices(), 0);
  Matrix rad = radical_subspace(m);
  Matrix cur = rad;
  int cur_rank = rank(cur);
  for (int v = 0; v < m.alg->vertices(); ++v) {
    Matrix ev = column_space_basis(m.vertex_block[v]);
    std::vector<Matrix> gens;
    for (int c = 0; c < ev.cols; ++c) {
      Matrix col = submatrix(ev, 0, c, m.dim, 1);
      Matrix ext = cur.cols == 0 ? col : hstack({cur, col});
      int rext = rank(ext);
      if (rext > cur_rank) {
        gens.push_back(col);
        cur = ext;
        cur_rank = rext;
      }
    }
    td.multiplicity[v] = int(gens.size());
    td.generators.push_back(gens.empty() ? Matrix(m.dim, 0, m.p())
                                         : hstack(gens));
  }
  return td;
}

bool is_projective(const Module& m) {
  if (m.dim == 0) return true;
  TopData td = top_of(m);
  int cover_dim = 0;
  for (int v = 0; v < m.alg->vertices(); ++v)
    cover_dim +=
        td.multiplicity[v] * int(m.alg->projective_basis(v).size());
  return cover_dim == m.dim;  // minimal cover is an isomorphism
}

bool is_injective_module(const ModulePtr& m) {
  return is_projective(*dual_module(m));
}

ModuleMap projective_cover(const ModulePtr& m) {
  TopData td = top_of(*m);
  std::vector<ModulePtr> parts;
  std::vector<Matrix> columns;
  for (int v = 0; v < m->alg->vertices(); ++v) {
    if (td.multiplicity[v] == 0) continue;
    ModulePtr pv = projective_module(m->alg, v);
    auto pv_basis = m->alg->projective_basis(v);
    for (int t = 0; t < td.multiplicity[v]; ++t) {
      parts.push_back(pv);
      Matrix gen = submatrix(td.generators[v], 0, t, m->dim, 1);
      // A e_v -> m, path b |-> action(b) * gen
      std::vector<Matrix> cols;
      for (int b : pv_basis)
        cols.push_back(mul(basis_element_action(*m, b), gen));
      columns.push_back(hstack(cols));
    }
  }
  if (parts.empty()) {
    ModulePtr z = zero_module(m->alg);
    return ModuleMap::make(z, m, Matrix(m->dim, 0, m->p()));
  }
  DirectSum ds = direct_sum(parts);
  ModuleMap cover = ModuleMap::make(ds.total, m, hstack(columns));
  if (!cover.is_surjective())
    throw InternalError("projective cover failed to be surjective");
  return cover;
}

namespace {
std::mutex g_selfinj_mutex;
std::map<uint64_t, bool> g_selfinj_cache;
}  // namespace

bool is_self_injective(const AlgebraPtr& alg) {
  std::lock_guard<std::mutex> lock(g_selfinj_mutex);
  auto it = g_selfinj_cache.find(alg->fingerprint);
  if (it != g_selfinj_cache.end()) return it->second;
  bool v = is_injective_module(regular_module(alg));
  g_selfinj_cache[alg->fingerprint] = v;
  return v;
}

void hash_module(Fnv64& f, const Module& m) {
  f.add(m.fingerprint);
}

}  // namespace xihom
