#pragma once

// Finite-dimensional left modules over a presented algebra, given as a total
// space with one matrix per arrow and idempotent projections per vertex.
// Maps are intertwiners; every constructor validates its output exactly.
//
// Conventions: matrices act on column vectors; for a path written in
// application order [a1, a2] the action is action(a2) * action(a1).

#include <memory>
#include <optional>
#include <vector>

#include "xihom/quiver.hpp"

namespace xihom {

struct Module;
using ModulePtr = std::shared_ptr<const Module>;

struct Module {
  AlgebraPtr alg;
  int dim = 0;
  std::vector<Matrix> arrow_action;  // one per arrow, dim x dim
  std::vector<Matrix> vertex_block;  // one per vertex, idempotent, sum = id
  uint64_t fingerprint = 0;

  uint32_t p() const { return alg->p(); }

  // validated construction; throws ValidationError on any broken invariant
  static ModulePtr make(AlgebraPtr alg, int dim, std::vector<Matrix> actions,
                        std::vector<Matrix> blocks);

  bool same_content(const Module& o) const {
    return fingerprint == o.fingerprint && dim == o.dim &&
           alg->fingerprint == o.alg->fingerprint;
  }
};

struct ModuleMap {
  ModulePtr source;
  ModulePtr target;
  Matrix matrix;  // target.dim x source.dim

  static ModuleMap make(ModulePtr src, ModulePtr tgt, Matrix m);
  bool is_injective() const { return rank(matrix) == source->dim; }
  bool is_surjective() const { return rank(matrix) == target->dim; }
  bool is_zero() const { return matrix.is_zero(); }
  bool is_isomorphism() const {
    return source->dim == target->dim && rank(matrix) == source->dim;
  }
};

ModuleMap compose(const ModuleMap& g, const ModuleMap& f);  // g after f
ModuleMap identity_map(const ModulePtr& m);
ModuleMap zero_map(const ModulePtr& src, const ModulePtr& tgt);
ModuleMap add_maps(const ModuleMap& f, const ModuleMap& g);
ModuleMap sub_maps(const ModuleMap& f, const ModuleMap& g);

ModulePtr zero_module(const AlgebraPtr& alg);
ModulePtr simple_module(const AlgebraPtr& alg, int vertex);
// the indecomposable projective A e_v on its path basis
ModulePtr projective_module(const AlgebraPtr& alg, int vertex);
ModulePtr regular_module(const AlgebraPtr& alg);

struct DirectSum {
  ModulePtr total;
  std::vector<ModuleMap> inclusions;
  std::vector<ModuleMap> projections;
};
DirectSum direct_sum(const std::vector<ModulePtr>& parts);

// action of the basis element with the given index (a path or idempotent)
Matrix basis_element_action(const Module& m, int basis_index);
// span of the images of all arrow actions, as a dim x r matrix of columns
Matrix radical_subspace(const Module& m);

// Basis of Hom_A(m, n) in a deterministic order (row reduction of the
// intertwining system, unknowns flattened row-major).
std::vector<ModuleMap> hom_basis(const ModulePtr& m, const ModulePtr& n);
int hom_dim(const ModulePtr& m, const ModulePtr& n);

// Solve for f in Hom_A(src, tgt) subject to conditions post * f * pre = rhs.
struct HomCondition {
  std::optional<Matrix> post;  // absent means identity
  std::optional<Matrix> pre;
  Matrix rhs;
};
std::optional<ModuleMap> solve_hom(const ModulePtr& src, const ModulePtr& tgt,
                                   const std::vector<HomCondition>& conds);
// all solutions of the homogeneous version, as maps
std::vector<ModuleMap> solve_hom_kernel(const ModulePtr& src,
                                        const ModulePtr& tgt,
                                        const std::vector<HomCondition>& conds);

struct SubquotientMap {
  ModulePtr module;
  ModuleMap map;  // inclusion for kernels, projection for cokernels
};
SubquotientMap kernel(const ModuleMap& f);
SubquotientMap cokernel(const ModuleMap& f);

// k-linear dual as a module over the opposite algebra; involutive on the
// nose in this representation (actions are transposed back).
ModulePtr dual_module(const ModulePtr& m);
ModuleMap dual_map(const ModuleMap& f);

bool is_isomorphic(const ModulePtr& m, const ModulePtr& n);

// multiplicities of the simple S_v in m / rad m, together with lifted
// generators (columns spanning a complement of rad m inside e_v m)
struct TopData {
  std::vector<int> multiplicity;        // per vertex
  std::vector<Matrix> generators;       // per vertex, dim x multiplicity
};
TopData top_of(const Module& m);

bool is_projective(const Module& m);
bool is_injective_module(const ModulePtr& m);
bool is_self_injective(const AlgebraPtr& alg);

// minimal projective cover, surjective with P / rad P isomorphic to m / rad m
ModuleMap projective_cover(const ModulePtr& m);

void hash_module(Fnv64& f, const Module& m);

}  // namespace xihom
