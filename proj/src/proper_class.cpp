#include "xihom/proper_class.hpp"

#include <sstream>

#include "xihom/parallel.hpp"

namespace xihom {

ProperClassSpec ProperClassSpec::all() {
  ProperClassSpec s;
  s.kind = Kind::All;
  Fnv64 f;
  f.add(0xa11ull);
  s.fingerprint = f.h;
  return s;
}

ProperClassSpec ProperClassSpec::relative(std::vector<ModulePtr> mods) {
  check(!mods.empty(), "relative class needs a nonempty module list");
  for (const auto& m : mods)
    check(m->alg->fingerprint == mods[0]->alg->fingerprint,
          "relative class modules over different algebras");
  ProperClassSpec s;
  s.kind = Kind::Relative;
  s.relatives = std::move(mods);
  Fnv64 f;
  f.add(0x3e1ull);
  for (const auto& m : s.relatives) hash_module(f, *m);
  s.fingerprint = f.h;
  return s;
}

std::string ProperClassSpec::describe() const {
  if (is_all()) return "all";
  std::string s = "relative(";
  for (size_t i = 0; i < relatives.size(); ++i) {
    if (i) s += ",";
    s += "dim" + std::to_string(relatives[i]->dim);
  }
  return s + ")";
}

bool contains(const ProperClassSpec& xi, const Conflation& c) {
  if (xi.is_all()) return true;  // exactness is enforced by the type
  for (const auto& x : xi.relatives) {
    // Hom(X, B) -> Hom(X, C) must be surjective
    int target_dim = hom_dim(x, c.quotient());
    if (target_dim == 0) continue;
    auto hb = hom_basis(x, c.middle());
    std::vector<Matrix> cols;
    cols.reserve(hb.size());
    for (const auto& h : hb)
      cols.push_back(mul(c.deflation.matrix, h.matrix).vec());
    int r = cols.empty() ? 0 : rank(hstack(cols));
    if (r < target_dim) return false;
  }
  return true;
}

std::vector<ModulePtr> generator_modules(const ProperClassSpec& xi,
                                         const AlgebraPtr& alg) {
  std::vector<ModulePtr> gens;
  for (int v = 0; v < alg->vertices(); ++v)
    gens.push_back(projective_module(alg, v));
  if (!xi.is_all())
    for (const auto& x : xi.relatives) gens.push_back(x);
  return gens;
}

Conflation xi_cover(const ProperClassSpec& xi, const ModulePtr& m) {
  ModuleMap cover = projective_cover(m);
  if (xi.is_all()) return conflation_from_surjection(cover);
  // P(m) + sum_X X^{dim Hom(X, m)} with the evaluation deflation
  std::vector<ModulePtr> parts{cover.source};
  std::vector<Matrix> legs{cover.matrix};
  for (const auto& x : xi.relatives) {
    for (const auto& phi : hom_basis(x, m)) {
      parts.push_back(x);
      legs.push_back(phi.matrix);
    }
  }
  DirectSum ds = direct_sum(parts);
  ModuleMap defl = ModuleMap::make(ds.total, m, hstack(legs));
  Conflation c = conflation_from_surjection(defl);
  if (!contains(xi, c))
    throw InternalError("relative cover escaped its own class");
  return c;
}

bool xi_projective(const ProperClassSpec& xi, const ModulePtr& m) {
  if (m->dim == 0) return true;
  Conflation c = xi_cover(xi, m);
  std::vector<HomCondition> conds;
  conds.push_back({c.deflation.matrix, std::nullopt,
                   Matrix::identity(m->dim, m->p())});
  return solve_hom(m, c.middle(), conds).has_value();
}

std::string describe_conflation(const Conflation& c) {
  std::ostringstream os;
  auto mat = [&](const Matrix& m) {
    os << "[";
    for (int i = 0; i < m.rows; ++i) {
      if (i) os << ";";
      for (int j = 0; j < m.cols; ++j) {
        if (j) os << ",";
        os << m.at(i, j);
      }
    }
    os << "]";
  };
  os << "conflation dims " << c.sub()->dim << ">->" << c.middle()->dim
     << "->>" << c.quotient()->dim << " inflation=";
  mat(c.inflation.matrix);
  os << " deflation=";
  mat(c.deflation.matrix);
  return os.str();
}

namespace {

ModuleMap random_hom(Rng& rng, const ModulePtr& a, const ModulePtr& b) {
  auto basis = hom_basis(a, b);
  ModuleMap f = zero_map(a, b);
  const uint32_t p = a->p();
  for (const auto& h : basis)
    f = add_maps(f, ModuleMap{a, b, scalar_mul(uint32_t(rng.below(p)), h.matrix)});
  return f;
}

struct TrialResult {
  std::map<std::string, int> checks;
  std::vector<AuditViolation> violations;
};

// pullback square of two deflations onto the same quotient; returns the
// mixed row A1 >--> B1 x_C B2 -->> B2
Conflation mixed_row(const Conflation& c1, const Conflation& c2) {
  DirectSum bb = direct_sum({c1.middle(), c2.middle()});
  Matrix span = hstack({c1.deflation.matrix, neg(c2.deflation.matrix)});
  ModuleMap to_c{bb.total, c1.quotient(), span};
  SubquotientMap m = kernel(to_c);
  ModuleMap e1 = compose(bb.projections[1], m.map);
  Matrix want = vstack({c1.inflation.matrix,
                        Matrix(c2.middle()->dim, c1.sub()->dim,
                               c1.inflation.matrix.p)});
  auto lift = solve(m.map.matrix, want);
  if (!lift) throw InternalError("pullback square lift failed");
  return Conflation::make(ModuleMap::make(c1.sub(), m.module, *lift), e1);
}

TrialResult run_trial(const AuditHooks& hooks,
                      const std::vector<ModulePtr>& pool, uint64_t seed,
                      uint64_t t) {
  TrialResult res;
  Rng rng = trial_rng(seed, t);
  auto pick = [&]() { return pool[rng.below(pool.size())]; };
  auto note = [&](const std::string& axiom, const Conflation& c,
                  const std::string& extra) {
    res.violations.push_back(
        AuditViolation{axiom, extra + " " + describe_conflation(c)});
  };

  // (i) split conflations belong
  ModulePtr a = pick(), c = pick();
  Conflation sp = split_conflation(a, c);
  ++res.checks["delta0"];
  if (!hooks.member(sp)) note("delta0", sp, "split conflation not a member;");

  // member pool for the closure checks; split conflations are members by
  // axiom, so they participate even when the class under audit drops them
  std::vector<Conflation> entitled{sp};
  std::vector<Conflation> members;
  if (hooks.member(sp)) members.push_back(sp);
  if (hooks.cover) {
    for (int i = 0; i < 2; ++i) {
      auto cov = hooks.cover(pick());
      if (cov) {
        entitled.push_back(*cov);
        if (hooks.member(*cov)) members.push_back(*cov);
      }
    }
  }
  Conflation sp2 = split_conflation(pick(), pick());
  entitled.push_back(sp2);
  if (hooks.member(sp2)) members.push_back(sp2);

  // (i) closure under finite coproducts
  {
    const Conflation& x = entitled[rng.below(entitled.size())];
    const Conflation& y = entitled[rng.below(entitled.size())];
    bool x_ok = hooks.member(x) || x.sub()->dim == 0 || is_split(x);
    bool y_ok = hooks.member(y) || y.sub()->dim == 0 || is_split(y);
    // inputs that are members, or split hence members by axiom
    if (x_ok && y_ok) {
      Conflation s = direct_sum_conflation(x, y);
      ++res.checks["coproduct"];
      if (!hooks.member(s))
        note("coproduct", s, "coproduct of members not a member;");
    }
  }

  if (!members.empty()) {
    // (ii) base change
    {
      const Conflation& e = members[rng.below(members.size())];
      ModulePtr cp = pick();
      ModuleMap g = random_hom(rng, cp, e.quotient());
      Conflation pb = pullback_conflation(e, g);
      ++res.checks["base_change"];
      if (!hooks.member(pb))
        note("base_change", pb, "pullback of a member left the class;");
    }
    // (iii) cobase change
    {
      const Conflation& e = members[rng.below(members.size())];
      ModulePtr ap = pick();
      ModuleMap f = random_hom(rng, e.sub(), ap);
      Conflation po = pushout_conflation(e, f);
      ++res.checks["cobase_change"];
      if (!hooks.member(po))
        note("cobase_change", po, "pushout of a member left the class;");
    }
    // (iv) saturation: delta2 and the mixed row in the class force the
    // bottom row in
    {
      ModulePtr quot = pick();
      std::vector<Conflation> onto;
      if (hooks.cover) {
        auto cov = hooks.cover(quot);
        if (cov) onto.push_back(*cov);
      }
      onto.push_back(split_conflation(pick(), quot));
      const Conflation& delta1 = onto[rng.below(onto.size())];
      std::optional<Conflation> delta2;
      for (const auto& cand : onto)
        if (hooks.member(cand)) {
          delta2 = cand;
          break;
        }
      if (delta2) {
        Conflation row = mixed_row(delta1, *delta2);
        ++res.checks["saturation"];
        if (hooks.member(*delta2) && hooks.member(row) &&
            !hooks.member(delta1))
          note("saturation", delta1,
               "second column and first row in the class, bottom row not;");
      }
    }
  }
  return res;
}

}  // namespace

AuditReport audit_axioms_with(const AuditHooks& hooks,
                              const std::vector<ModulePtr>& pool, int trials,
                              uint64_t seed) {
  check(trials >= 1, "audit needs at least one trial");
  check(!pool.empty(), "audit needs a module pool");
  AuditReport rep;
  rep.trials = trials;
  rep.seed = seed;
  std::vector<TrialResult> results(static_cast<size_t>(trials));
  parallel_for(size_t(trials), [&](size_t t) {
    results[t] = run_trial(hooks, pool, seed, t);
  });
  for (const auto& r : results) {
    for (const auto& [k, v] : r.checks) rep.checks_run[k] += v;
    for (const auto& v : r.violations) rep.violations.push_back(v);
  }
  return rep;
}

AuditReport audit_axioms(const ProperClassSpec& xi,
                         const std::vector<ModulePtr>& pool, int trials,
                         uint64_t seed) {
  AuditHooks hooks;
  hooks.member = [&xi](const Conflation& c) { return contains(xi, c); };
  hooks.cover = [&xi](const ModulePtr& m) -> std::optional<Conflation> {
    return xi_cover(xi, m);
  };
  return audit_axioms_with(hooks, pool, trials, seed);
}

}  // namespace xihom
