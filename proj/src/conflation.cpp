#include "xihom/conflation.hpp"

namespace xihom {

Conflation Conflation::make(ModuleMap inflation, ModuleMap deflation) {
  check(inflation.target->same_content(*deflation.source),
        "conflation legs do not share a middle");
  check(inflation.is_injective(), "inflation is not injective");
  check(deflation.is_surjective(), "deflation is not surjective");
  check(mul(deflation.matrix, inflation.matrix).is_zero(),
        "deflation . inflation nonzero");
  check(rank(inflation.matrix) + rank(deflation.matrix) ==
            inflation.target->dim,
        "image of inflation is not the kernel of deflation");
  return Conflation{std::move(inflation), std::move(deflation)};
}

bool baer_equivalent(const Conflation& c1, const Conflation& c2) {
  if (!c1.sub()->same_content(*c2.sub()) ||
      !c1.quotient()->same_content(*c2.quotient()))
    return false;
  // any middle map commuting with both legs is an isomorphism (five lemma),
  // so equivalence is plain solvability
  std::vector<HomCondition> conds;
  conds.push_back({std::nullopt, c1.inflation.matrix, c2.inflation.matrix});
  conds.push_back({c2.deflation.matrix, std::nullopt, c1.deflation.matrix});
  return solve_hom(c1.middle(), c2.middle(), conds).has_value();
}

Conflation split_conflation(const ModulePtr& a, const ModulePtr& c) {
  DirectSum ds = direct_sum({a, c});
  return Conflation::make(ds.inclusions[0], ds.projections[1]);
}

Conflation conflation_from_injection(const ModuleMap& f) {
  check(f.is_injective(), "not an injection");
  SubquotientMap q = cokernel(f);
  return Conflation::make(f, q.map);
}

Conflation conflation_from_surjection(const ModuleMap& f) {
  check(f.is_surjective(), "not a surjection");
  SubquotientMap k = kernel(f);
  return Conflation::make(k.map, f);
}

Conflation direct_sum_conflation(const Conflation& c1, const Conflation& c2) {
  DirectSum sub = direct_sum({c1.sub(), c2.sub()});
  DirectSum mid = direct_sum({c1.middle(), c2.middle()});
  DirectSum quo = direct_sum({c1.quotient(), c2.quotient()});
  Matrix infl = block_matrix(
      {{c1.inflation.matrix, Matrix(c1.middle()->dim, c2.sub()->dim, c1.inflation.matrix.p)},
       {Matrix(c2.middle()->dim, c1.sub()->dim, c1.inflation.matrix.p), c2.inflation.matrix}});
  Matrix defl = block_matrix(
      {{c1.deflation.matrix, Matrix(c1.quotient()->dim, c2.middle()->dim, c1.deflation.matrix.p)},
       {Matrix(c2.quotient()->dim, c1.middle()->dim, c1.deflation.matrix.p), c2.deflation.matrix}});
  return Conflation::make(ModuleMap::make(sub.total, mid.total, infl),
                          ModuleMap::make(mid.total, quo.total, defl));
}

bool is_split(const Conflation& c) {
  if (c.sub()->dim == 0) return true;
  std::vector<HomCondition> conds;
  conds.push_back({std::nullopt, c.inflation.matrix,
                   Matrix::identity(c.sub()->dim, c.sub()->p())});
  return solve_hom(c.middle(), c.sub(), conds).has_value();
}

Conflation pullback_conflation(const Conflation& c, const ModuleMap& g) {
  check(g.target->same_content(*c.quotient()),
        "pullback map must land in the quotient");
  const ModulePtr& b = c.middle();
  const ModulePtr& cp = g.source;
  DirectSum bc = direct_sum({b, cp});
  // B x_C C' = kernel of (y, -g) : B + C' -> C
  Matrix span = hstack({c.deflation.matrix, neg(g.matrix)});
  ModuleMap total_to_c{bc.total, c.quotient(), span};
  SubquotientMap pb = kernel(total_to_c);
  ModuleMap to_cp = compose(bc.projections[1], pb.map);
  // A -> PB lifting (x, 0)
  Matrix want = vstack({c.inflation.matrix,
                        Matrix(cp->dim, c.sub()->dim, g.matrix.p)});
  auto lift = solve(pb.map.matrix, want);
  if (!lift) throw InternalError("pullback inflation failed to lift");
  ModuleMap infl = ModuleMap::make(c.sub(), pb.module, *lift);
  return Conflation::make(infl, to_cp);
}

Conflation pushout_conflation(const Conflation& c, const ModuleMap& f) {
  check(f.source->same_content(*c.sub()),
        "pushout map must start at the sub");
  const ModulePtr& ap = f.target;
  const ModulePtr& b = c.middle();
  DirectSum ab = direct_sum({ap, b});
  // A' +_A B = cokernel of (f, -x) : A -> A' + B
  Matrix graph = vstack({f.matrix, neg(c.inflation.matrix)});
  ModuleMap a_to_total{c.sub(), ab.total, graph};
  SubquotientMap po = cokernel(a_to_total);
  ModuleMap infl = compose(po.map, ab.inclusions[0]);
  // deflation induced by (0, y)
  Matrix zero_y = hstack({Matrix(c.quotient()->dim, ap->dim, f.matrix.p),
                          c.deflation.matrix});
  auto defl = solve_hom(po.module, c.quotient(),
                        {{std::nullopt, po.map.matrix, zero_y}});
  if (!defl) throw InternalError("pushout deflation failed to factor");
  return Conflation::make(infl, *defl);
}

Conflation summand_absorption_conflation(const Conflation& c,
                                         const ModuleMap& alpha) {
  check(alpha.source->same_content(*c.middle()),
        "absorption map must start at the middle");
  const ModulePtr& d = alpha.target;
  const uint32_t p = alpha.matrix.p;
  DirectSum db = direct_sum({d, c.middle()});
  DirectSum dc = direct_sum({d, c.quotient()});
  Matrix infl = vstack({neg(mul(alpha.matrix, c.inflation.matrix)),
                        c.inflation.matrix});
  Matrix defl = block_matrix(
      {{Matrix::identity(d->dim, p), alpha.matrix},
       {Matrix(c.quotient()->dim, d->dim, p), c.deflation.matrix}});
  return Conflation::make(ModuleMap::make(c.sub(), db.total, infl),
                          ModuleMap::make(db.total, dc.total, defl));
}

}  // namespace xihom
