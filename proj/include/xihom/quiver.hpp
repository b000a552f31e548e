#pragma once

// Finite-dimensional algebras presented by a quiver with admissible
// relations. The basis is enumerated degree by degree below the nilpotency
// bound N by row reduction of the relation ideal's homogeneous spanning set;
// paths of length N are required to land in the ideal, which certifies that
// the quotient is finite dimensional with radical equal to the arrow ideal.

#include <memory>
#include <string>
#include <vector>

#include "xihom/matrix.hpp"

namespace xihom {

struct Arrow {
  int src = 0;
  int tgt = 0;
  std::string name;
};

// One term of a relation: coeff * path, the path given by arrow indices in
// application order (first arrow applied first).
struct RelationTerm {
  uint32_t coeff = 1;
  std::vector<int> arrows;
};

struct QuiverPresentation {
  uint32_t p = 2;
  int vertices = 1;
  std::vector<Arrow> arrows;
  std::vector<std::vector<RelationTerm>> relations;
  int nilpotency_bound = 1;
};

// A path of the quiver; trivial paths have an empty arrow list.
struct Path {
  int src = 0;
  int tgt = 0;
  std::vector<int> arrows;  // application order
  int length() const { return int(arrows.size()); }
};

struct AlgebraBasis {
  QuiverPresentation presentation;
  std::vector<Path> basis_paths;        // e_0..e_{V-1} first, then by length
  std::vector<int> vertex_idempotents;  // basis index of e_v (equals v)
  // structure constants: basis[a] * basis[b] = sum_c table[(a*dim+b)*dim+c] c
  // where the product means "apply b first, then a"
  std::vector<uint32_t> mult_table;
  uint64_t fingerprint = 0;

  int dim() const { return int(basis_paths.size()); }
  uint32_t p() const { return presentation.p; }
  int vertices() const { return presentation.vertices; }
  int num_arrows() const { return int(presentation.arrows.size()); }

  uint32_t structure_const(int a, int b, int c) const {
    return mult_table[(size_t(a) * dim() + b) * dim() + c];
  }
  // indices of basis paths starting at vertex v; the basis of the
  // indecomposable projective A e_v
  std::vector<int> projective_basis(int v) const;
  std::string path_name(int basis_index) const;

  bool operator==(const AlgebraBasis& o) const {
    return fingerprint == o.fingerprint;
  }
};

using AlgebraPtr = std::shared_ptr<const AlgebraBasis>;

// Enumerate the basis and multiplication table; rejects non-admissible or
// inconsistent presentations. Relations must be homogeneous in path length
// (all catalog presentations are monomial); inhomogeneous relations would
// make the degree-by-degree reduction unsound and are rejected.
AlgebraPtr enumerate_basis(const QuiverPresentation& q);

// Same basis set with reversed paths and transposed structure constants.
// Involutive: opposite(opposite(a)) compares equal to a.
AlgebraPtr opposite(const AlgebraPtr& a);

}  // namespace xihom
