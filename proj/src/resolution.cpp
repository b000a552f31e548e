#include "xihom/resolution.hpp"

#include <map>
#include <mutex>

namespace xihom {

namespace {

std::mutex g_res_mutex;
std::map<std::pair<uint64_t, uint64_t>, ResolutionPtr> g_res_cache;

std::pair<uint64_t, uint64_t> res_key(const ProperClassSpec& xi,
                                      const ModulePtr& m) {
  return {xi.fingerprint, m->fingerprint};
}

}  // namespace

ResolutionPtr build_resolution(const ProperClassSpec& xi, const ModulePtr& m,
                               int length) {
  check(length >= 0, "resolution length must be nonnegative");
  auto key = res_key(xi, m);
  {
    std::lock_guard<std::mutex> lock(g_res_mutex);
    auto it = g_res_cache.find(key);
    if (it != g_res_cache.end() && it->second->length() >= length)
      return it->second;
  }
  // extend the cached prefix if there is one; covers are deterministic, so
  // the prefix is identical either way
  std::vector<Conflation> steps;
  {
    std::lock_guard<std::mutex> lock(g_res_mutex);
    auto it = g_res_cache.find(key);
    if (it != g_res_cache.end()) steps = it->second->steps;
  }
  ModulePtr current = steps.empty()
                          ? m
                          : steps.back().inflation.source;
  while (int(steps.size()) < length + 1) {
    Conflation c = xi_cover(xi, current);
    current = c.inflation.source;
    steps.push_back(std::move(c));
  }
  auto res = std::make_shared<XiResolution>();
  res->xi = xi;
  res->base = m;
  res->steps = std::move(steps);
  {
    std::lock_guard<std::mutex> lock(g_res_mutex);
    auto it = g_res_cache.find(key);
    if (it == g_res_cache.end() || it->second->length() < res->length())
      g_res_cache[key] = res;
    return g_res_cache[key]->length() >= length ? g_res_cache[key] : res;
  }
}

PdVerdict xi_pd(const ProperClassSpec& xi, const ModulePtr& m, int window) {
  check(window >= 0, "window must be nonnegative");
  ResolutionPtr res = build_resolution(xi, m, window);
  for (int n = 0; n <= window; ++n)
    if (xi_projective(xi, res->syzygy(n))) return PdVerdict{true, n};
  return PdVerdict{false, 0};
}

ChainMap lift_morphism(const ModuleMap& mu, const ResolutionPtr& rm,
                       const ResolutionPtr& rn, uint64_t perturb_seed) {
  check(mu.source->same_content(*rm->base) &&
            mu.target->same_content(*rn->base),
        "lift endpoints do not match the resolutions");
  check(rm->xi.fingerprint == rn->xi.fingerprint,
        "resolutions over different proper classes");
  const int L = std::min(rm->length(), rn->length());
  Rng rng(perturb_seed);
  ChainMap cm;
  cm.source = rm;
  cm.target = rn;
  ModuleMap omega = mu;  // K^M_i -> K^N_i
  for (int i = 0; i <= L; ++i) {
    const Conflation& sm = rm->steps[i];
    const Conflation& sn = rn->steps[i];
    // f^N_i . phi_i = omega_i . f^M_i, solvable by relative projectivity
    Matrix rhs = mul(omega.matrix, sm.deflation.matrix);
    auto phi = solve_hom(sm.middle(), sn.middle(),
                         {{sn.deflation.matrix, std::nullopt, rhs}});
    if (!phi) throw InternalError("comparison lift failed; class is broken");
    if (perturb_seed != 0) {
      auto null_dirs = solve_hom_kernel(
          sm.middle(), sn.middle(),
          {{sn.deflation.matrix, std::nullopt,
            Matrix(sn.quotient()->dim, sm.middle()->dim, rhs.p)}});
      for (const auto& h : null_dirs) {
        uint32_t coef = uint32_t(rng.below(mu.matrix.p));
        if (coef) *phi = add_maps(*phi, ModuleMap{phi->source, phi->target,
                                                  scalar_mul(coef, h.matrix)});
      }
    }
    // restrict to the syzygies: omega_{i+1} = g^N_i^{-1} . phi_i . g^M_i
    Matrix through = mul(phi->matrix, sm.inflation.matrix);
    auto next = solve(sn.inflation.matrix, through);
    if (!next) throw InternalError("lift does not preserve syzygies");
    omega = ModuleMap::make(sm.inflation.source, sn.inflation.source,
                            std::move(*next));
    cm.components.push_back(std::move(*phi));
  }
  // commuting squares, exact
  for (int i = 1; i <= L; ++i) {
    Matrix lhs = mul(rn->differential(i).matrix, cm.components[i].matrix);
    Matrix rhs = mul(cm.components[i - 1].matrix, rm->differential(i).matrix);
    if (!(lhs == rhs)) throw InternalError("lifted squares do not commute");
  }
  return cm;
}

std::optional<std::vector<ModuleMap>> homotopy_between(const ChainMap& phi,
                                                       const ChainMap& psi) {
  check(phi.source->base->same_content(*psi.source->base) &&
            phi.target->base->same_content(*psi.target->base),
        "homotopy between chain maps with different endpoints");
  const ResolutionPtr& rm = phi.source;
  const ResolutionPtr& rn = phi.target;
  const int overlap = int(std::min(phi.components.size(), psi.components.size())) - 1;
  const int cmax = std::min({overlap, rm->length(), rn->length() - 1});
  if (cmax < 0) return std::vector<ModuleMap>{};
  const uint32_t p = rm->base->p();

  // unknowns: s_i in Hom(P^M_i, P^N_{i+1}) for i = 0..cmax
  std::vector<std::vector<ModuleMap>> bases(cmax + 1);
  std::vector<int> offset(cmax + 2, 0);
  for (int i = 0; i <= cmax; ++i) {
    bases[i] = hom_basis(rm->term(i), rn->term(i + 1));
    offset[i + 1] = offset[i] + int(bases[i].size());
  }
  const int unknowns = offset[cmax + 1];

  // equations per degree i = 0..cmax: d^N_{i+1} s_i + s_{i-1} d^M_i = delta_i
  std::vector<int> eq_offset(cmax + 2, 0);
  for (int i = 0; i <= cmax; ++i)
    eq_offset[i + 1] =
        eq_offset[i] + rn->term(i)->dim * rm->term(i)->dim;
  Matrix sys(eq_offset[cmax + 1], unknowns, p);
  Matrix rhs(eq_offset[cmax + 1], 1, p);
  auto put = [&](int eq_deg, const Matrix& contrib, int col) {
    // contrib: map P^M_i -> P^N_i for degree eq_deg, flattened row-major
    int base_row = eq_offset[eq_deg];
    for (int r = 0; r < contrib.rows; ++r)
      for (int c = 0; c < contrib.cols; ++c) {
        int row = base_row + r * contrib.cols + c;
        sys.at(row, col) = (sys.at(row, col) + contrib.at(r, c)) % p;
      }
  };
  for (int i = 0; i <= cmax; ++i) {
    const Matrix dN = rn->differential(i + 1).matrix;
    for (size_t t = 0; t < bases[i].size(); ++t)
      put(i, mul(dN, bases[i][t].matrix), offset[i] + int(t));
    if (i + 1 <= cmax) {
      const Matrix dM = rm->differential(i + 1).matrix;
      for (size_t t = 0; t < bases[i].size(); ++t)
        put(i + 1, mul(bases[i][t].matrix, dM), offset[i] + int(t));
    }
    Matrix delta =
        sub(phi.components[i].matrix, psi.components[i].matrix).vec();
    for (int r = 0; r < delta.rows; ++r)
      rhs.at(eq_offset[i] + r, 0) = delta.at(r, 0);
  }
  auto lambda = solve(sys, rhs);
  if (!lambda) return std::nullopt;
  std::vector<ModuleMap> s;
  for (int i = 0; i <= cmax; ++i) {
    Matrix X(rn->term(i + 1)->dim, rm->term(i)->dim, p);
    for (size_t t = 0; t < bases[i].size(); ++t) {
      uint32_t c = lambda->at(offset[i] + int(t), 0);
      if (c) X = add(X, scalar_mul(c, bases[i][t].matrix));
    }
    s.push_back(ModuleMap{rm->term(i), rn->term(i + 1), std::move(X)});
  }
  return s;
}

ModuleMap injective_envelope(const ModulePtr& m) {
  ModuleMap cover = projective_cover(dual_module(m));
  ModuleMap env = dual_map(cover);
  if (!env.source->same_content(*m))
    throw InternalError("double dual failed to return the original module");
  return ModuleMap::make(m, env.target, env.matrix);
}

Coresolution build_coresolution(const ProperClassSpec& xi, const ModulePtr& m,
                                int length) {
  check(length >= 0, "coresolution length must be nonnegative");
  Coresolution cores;
  cores.xi = xi;
  cores.base = m;
  if (xi.is_all()) {
    // dualize a projective resolution of D(m) over the opposite algebra
    ResolutionPtr dual_res = build_resolution(ProperClassSpec::all(),
                                              dual_module(m), length);
    for (int j = 0; j <= length; ++j) {
      const Conflation& st = dual_res->steps[j];
      ModuleMap infl = dual_map(st.deflation);
      ModuleMap defl = dual_map(st.inflation);
      cores.steps.push_back(Conflation::make(std::move(infl), std::move(defl)));
    }
    if (!cores.steps[0].inflation.source->same_content(*m))
      throw InternalError("coresolution base mismatch after dualizing");
    return cores;
  }
  if (!is_self_injective(m->alg))
    throw UnsupportedError(
        "injective coresolutions for a relative class are only supported on "
        "self-injective algebras; this algebra is not self-injective");
  // relative envelope: I(C) + sum_X X^{dim Hom(C, X)} with the coevaluation
  // inflation; each conflation is checked to stay in the class
  ModulePtr current = m;
  for (int j = 0; j <= length; ++j) {
    ModuleMap env = injective_envelope(current);
    std::vector<ModulePtr> parts{env.target};
    std::vector<Matrix> legs{env.matrix};
    for (const auto& x : xi.relatives)
      for (const auto& phi : hom_basis(current, x)) {
        parts.push_back(x);
        legs.push_back(phi.matrix);
      }
    DirectSum ds = direct_sum(parts);
    ModuleMap infl = ModuleMap::make(current, ds.total, vstack(legs));
    Conflation c = conflation_from_injection(infl);
    if (!contains(xi, c))
      throw UnsupportedError(
          "relative envelope conflation left the class; injective "
          "coresolution not available for this instance");
    current = c.quotient();
    cores.steps.push_back(std::move(c));
  }
  return cores;
}

ModulePtr cosyzygy(const ModulePtr& m, int k) {
  check(k >= 0, "cosyzygy index must be nonnegative");
  if (!is_self_injective(m->alg))
    throw UnsupportedError(
        "cosyzygies need injectives to be projectives; algebra is not "
        "self-injective");
  if (k == 0) return m;
  Coresolution c = build_coresolution(ProperClassSpec::all(), m, k - 1);
  return c.cosyzygy_at(k);
}

}  // namespace xihom
