#include "xihom/instance.hpp"

#include <fstream>

namespace xihom {

namespace {

using nlohmann::json;

void expect_keys(const json& j, const std::vector<std::string>& keys,
                 const std::string& where) {
  check(j.is_object(), where + " must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const auto& k : keys)
      if (it.key() == k) known = true;
    check(known, "unknown key \"" + it.key() + "\" in " + where);
  }
  for (const auto& k : keys)
    check(j.contains(k), "missing key \"" + k + "\" in " + where);
}

Matrix parse_matrix(const json& j, int rows, int cols, uint32_t p,
                    const std::string& where) {
  check(j.is_array(), where + " must be an array of rows");
  check(int(j.size()) == rows, where + " has wrong row count");
  Matrix m(rows, cols, p);
  for (int i = 0; i < rows; ++i) {
    const json& row = j[size_t(i)];
    check(row.is_array() && int(row.size()) == cols,
          where + " row " + std::to_string(i) + " has wrong length");
    for (int c = 0; c < cols; ++c) {
      check(row[size_t(c)].is_number_integer(),
            where + " entries must be integers");
      long long v = row[size_t(c)].get<long long>();
      v %= (long long)p;
      if (v < 0) v += p;
      m.at(i, c) = uint32_t(v);
    }
  }
  return m;
}

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows; ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols; ++j) row.push_back(m.at(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

InstanceData load_instance(const json& j) {
  expect_keys(j, {"p", "quiver", "modules", "proper_class"}, "instance");
  QuiverPresentation q;
  check(j["p"].is_number_integer(), "p must be an integer");
  long long p = j["p"].get<long long>();
  check(p >= 2 && p <= 65536 && is_prime(uint32_t(p)),
        "p must be a prime in [2, 2^16]");
  q.p = uint32_t(p);

  const json& jq = j["quiver"];
  expect_keys(jq, {"vertices", "arrows", "relations", "nilpotency_bound"},
              "quiver");
  q.vertices = jq["vertices"].get<int>();
  q.nilpotency_bound = jq["nilpotency_bound"].get<int>();
  std::map<std::string, int> arrow_index;
  check(jq["arrows"].is_array(), "quiver.arrows must be an array");
  for (const auto& ja : jq["arrows"]) {
    expect_keys(ja, {"src", "tgt", "name"}, "arrow");
    Arrow a{ja["src"].get<int>(), ja["tgt"].get<int>(),
            ja["name"].get<std::string>()};
    check(!arrow_index.count(a.name), "duplicate arrow name " + a.name);
    arrow_index[a.name] = int(q.arrows.size());
    q.arrows.push_back(std::move(a));
  }
  check(jq["relations"].is_array(), "quiver.relations must be an array");
  for (const auto& jr : jq["relations"]) {
    check(jr.is_array() && !jr.empty(), "each relation is a nonempty array");
    std::vector<RelationTerm> rel;
    for (const auto& jt : jr) {
      expect_keys(jt, {"coeff", "path"}, "relation term");
      RelationTerm t;
      long long c = jt["coeff"].get<long long>();
      c %= (long long)q.p;
      if (c < 0) c += q.p;
      t.coeff = uint32_t(c);
      check(jt["path"].is_array(), "relation path must be an array");
      for (const auto& jn : jt["path"]) {
        std::string nm = jn.get<std::string>();
        check(arrow_index.count(nm), "relation uses unknown arrow " + nm);
        t.arrows.push_back(arrow_index[nm]);
      }
      rel.push_back(std::move(t));
    }
    q.relations.push_back(std::move(rel));
  }

  InstanceData inst;
  inst.algebra = enumerate_basis(q);

  const json& jm = j["modules"];
  check(jm.is_object(), "modules must be an object");
  for (auto it = jm.begin(); it != jm.end(); ++it) {
    const std::string& name = it.key();
    const json& body = it.value();
    expect_keys(body, {"dim", "action", "vertex_blocks"}, "module " + name);
    int dim = body["dim"].get<int>();
    std::vector<Matrix> actions;
    const json& ja = body["action"];
    check(ja.is_object(), "module action must be an object");
    for (auto ai = ja.begin(); ai != ja.end(); ++ai)
      check(arrow_index.count(ai.key()),
            "module " + name + " action names unknown arrow " + ai.key());
    for (const auto& a : q.arrows) {
      check(ja.contains(a.name),
            "module " + name + " missing action for arrow " + a.name);
      actions.push_back(parse_matrix(ja[a.name], dim, dim, q.p,
                                     "module " + name + " action " + a.name));
    }
    std::vector<Matrix> blocks;
    const json& jb = body["vertex_blocks"];
    check(jb.is_object(), "vertex_blocks must be an object");
    for (auto bi = jb.begin(); bi != jb.end(); ++bi) {
      int v = std::stoi(bi.key());
      check(v >= 0 && v < q.vertices, "vertex_blocks key out of range");
    }
    for (int v = 0; v < q.vertices; ++v) {
      std::string key = std::to_string(v);
      check(jb.contains(key),
            "module " + name + " missing vertex block " + key);
      blocks.push_back(parse_matrix(jb[key], dim, dim, q.p,
                                    "module " + name + " block " + key));
    }
    inst.modules[name] =
        Module::make(inst.algebra, dim, std::move(actions), std::move(blocks));
    inst.module_names.push_back(name);
  }
  std::sort(inst.module_names.begin(), inst.module_names.end());

  const json& jc = j["proper_class"];
  if (jc.is_string()) {
    check(jc.get<std::string>() == "all",
          "proper_class must be \"all\" or {\"relative\": [...]}");
    inst.proper_class = ProperClassSpec::all();
  } else {
    expect_keys(jc, {"relative"}, "proper_class");
    std::vector<ModulePtr> mods;
    for (const auto& jn : jc["relative"]) {
      std::string nm = jn.get<std::string>();
      inst.relative_names.push_back(nm);
      mods.push_back(inst.module(nm));
    }
    inst.proper_class = ProperClassSpec::relative(std::move(mods));
  }
  return inst;
}

InstanceData load_instance_file(const std::string& path) {
  std::ifstream in(path);
  check(in.good(), "cannot open instance file: " + path);
  json j = json::parse(in);  // parse errors carry byte locations
  return load_instance(j);
}

json save_instance(const InstanceData& inst) {
  const QuiverPresentation& q = inst.algebra->presentation;
  json j;
  j["p"] = q.p;
  json jq;
  jq["vertices"] = q.vertices;
  json arrows = json::array();
  for (const auto& a : q.arrows)
    arrows.push_back({{"src", a.src}, {"tgt", a.tgt}, {"name", a.name}});
  jq["arrows"] = std::move(arrows);
  json rels = json::array();
  for (const auto& rel : q.relations) {
    json jr = json::array();
    for (const auto& t : rel) {
      json names = json::array();
      for (int a : t.arrows) names.push_back(q.arrows[a].name);
      jr.push_back({{"coeff", t.coeff}, {"path", std::move(names)}});
    }
    rels.push_back(std::move(jr));
  }
  jq["relations"] = std::move(rels);
  jq["nilpotency_bound"] = q.nilpotency_bound;
  j["quiver"] = std::move(jq);
  json jm;
  for (const auto& name : inst.module_names) {
    const ModulePtr& m = inst.modules.at(name);
    json body;
    body["dim"] = m->dim;
    json ja;
    for (int a = 0; a < inst.algebra->num_arrows(); ++a)
      ja[q.arrows[a].name] = matrix_json(m->arrow_action[a]);
    body["action"] = std::move(ja);
    json jb;
    for (int v = 0; v < q.vertices; ++v)
      jb[std::to_string(v)] = matrix_json(m->vertex_block[v]);
    body["vertex_blocks"] = std::move(jb);
    jm[name] = std::move(body);
  }
  j["modules"] = std::move(jm);
  if (inst.proper_class.is_all())
    j["proper_class"] = "all";
  else
    j["proper_class"] = {{"relative", inst.relative_names}};
  return j;
}

ProperClassSpec parse_class_spec(const InstanceData& inst,
                                 const std::string& text,
                                 std::vector<std::string>* names) {
  if (text == "all") return ProperClassSpec::all();
  const std::string prefix = "relative:";
  check(text.rfind(prefix, 0) == 0,
        "class must be \"all\" or \"relative:Name1,Name2\"");
  std::vector<ModulePtr> mods;
  std::string rest = text.substr(prefix.size());
  size_t pos = 0;
  while (pos <= rest.size()) {
    size_t comma = rest.find(',', pos);
    std::string nm = rest.substr(pos, comma == std::string::npos
                                          ? std::string::npos
                                          : comma - pos);
    check(!nm.empty(), "empty module name in class spec");
    mods.push_back(inst.module(nm));
    if (names) names->push_back(nm);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return ProperClassSpec::relative(std::move(mods));
}

namespace {

// k[x]/(x^n) truncated to dimension d: the shift module on 1, x, .., x^{d-1}
ModulePtr shift_module(const AlgebraPtr& alg, int d) {
  const uint32_t p = alg->p();
  Matrix x(d, d, p);
  for (int i = 0; i + 1 < d; ++i) x.at(i + 1, i) = 1;
  return Module::make(alg, d, {x}, {Matrix::identity(d, p)});
}

QuiverPresentation one_loop(uint32_t p, int power) {
  QuiverPresentation q;
  q.p = p;
  q.vertices = 1;
  q.arrows = {Arrow{0, 0, "x"}};
  RelationTerm t;
  t.coeff = 1;
  t.arrows.assign(size_t(power), 0);
  q.relations = {{t}};
  q.nilpotency_bound = power;
  return q;
}

QuiverPresentation line_quiver(uint32_t p, int vertices) {
  QuiverPresentation q;
  q.p = p;
  q.vertices = vertices;
  for (int v = 0; v + 1 < vertices; ++v)
    q.arrows.push_back(Arrow{v, v + 1, "a" + std::to_string(v)});
  q.nilpotency_bound = vertices;
  return q;
}

}  // namespace

std::vector<std::pair<std::string, InstanceData>> catalog_instances() {
  std::vector<std::pair<std::string, InstanceData>> out;

  {  // F_2[x]/(x^2)
    InstanceData inst;
    inst.algebra = enumerate_basis(one_loop(2, 2));
    inst.modules["k"] = simple_module(inst.algebra, 0);
    inst.modules["A"] = regular_module(inst.algebra);
    inst.module_names = {"A", "k"};
    inst.proper_class = ProperClassSpec::all();
    out.emplace_back("dual-numbers", std::move(inst));
  }
  {  // F_3[x]/(x^3)
    InstanceData inst;
    inst.algebra = enumerate_basis(one_loop(3, 3));
    inst.modules["k"] = simple_module(inst.algebra, 0);
    inst.modules["V2"] = shift_module(inst.algebra, 2);
    inst.modules["A"] = regular_module(inst.algebra);
    inst.module_names = {"A", "V2", "k"};
    inst.proper_class = ProperClassSpec::all();
    out.emplace_back("f3x3", std::move(inst));
  }
  {  // path algebra of 0 -> 1 over F_2
    InstanceData inst;
    inst.algebra = enumerate_basis(line_quiver(2, 2));
    inst.modules["S1"] = simple_module(inst.algebra, 0);
    inst.modules["S2"] = simple_module(inst.algebra, 1);
    inst.modules["P1"] = projective_module(inst.algebra, 0);
    inst.modules["A"] = regular_module(inst.algebra);
    inst.module_names = {"A", "P1", "S1", "S2"};
    inst.proper_class = ProperClassSpec::all();
    out.emplace_back("a2", std::move(inst));
  }
  {  // path algebra of 0 -> 1 -> 2 over F_2
    InstanceData inst;
    inst.algebra = enumerate_basis(line_quiver(2, 3));
    inst.modules["S1"] = simple_module(inst.algebra, 0);
    inst.modules["S2"] = simple_module(inst.algebra, 1);
    inst.modules["S3"] = simple_module(inst.algebra, 2);
    inst.modules["P1"] = projective_module(inst.algebra, 0);
    inst.modules["P2"] = projective_module(inst.algebra, 1);
    inst.modules["A"] = regular_module(inst.algebra);
    inst.module_names = {"A", "P1", "P2", "S1", "S2", "S3"};
    inst.proper_class = ProperClassSpec::all();
    out.emplace_back("a3", std::move(inst));
  }
  {  // F_2[x]/(x^4)
    InstanceData inst;
    inst.algebra = enumerate_basis(one_loop(2, 4));
    inst.modules["k"] = simple_module(inst.algebra, 0);
    inst.modules["V2"] = shift_module(inst.algebra, 2);
    inst.modules["V3"] = shift_module(inst.algebra, 3);
    inst.modules["A"] = regular_module(inst.algebra);
    inst.module_names = {"A", "V2", "V3", "k"};
    inst.proper_class = ProperClassSpec::all();
    out.emplace_back("f2x4", std::move(inst));
  }
  return out;
}

}  // namespace xihom
