#include "doctest.h"
#include "helpers.hpp"

using namespace xihom;
using xihom::testing::instance;

TEST_CASE("instances round-trip through JSON") {
  for (const auto& [id, inst] : catalog_instances()) {
    nlohmann::json j = save_instance(inst);
    InstanceData back = load_instance(j);
    CHECK(back.algebra->fingerprint == inst.algebra->fingerprint);
    CHECK(back.module_names == inst.module_names);
    for (const auto& name : inst.module_names)
      CHECK(back.module(name)->fingerprint ==
            inst.module(name)->fingerprint);
    CHECK(back.proper_class.fingerprint == inst.proper_class.fingerprint);
    // serialization is canonical: a second round trip is byte-identical
    CHECK(save_instance(back).dump(2) == j.dump(2));
  }
}

TEST_CASE("unknown keys and malformed data are rejected") {
  nlohmann::json j = save_instance(instance("dual-numbers"));
  j["extra"] = 1;
  CHECK_THROWS_AS(load_instance(j), ValidationError);
  j.erase("extra");
  j["quiver"]["color"] = "blue";
  CHECK_THROWS_AS(load_instance(j), ValidationError);
  j["quiver"].erase("color");
  j["p"] = 6;
  CHECK_THROWS_AS(load_instance(j), ValidationError);
  j["p"] = 2;
  j["modules"]["k"]["action"]["x"] = {{1, 0}};  // wrong shape
  CHECK_THROWS_AS(load_instance(j), ValidationError);
}

TEST_CASE("module data violating the relations is rejected") {
  nlohmann::json j = save_instance(instance("dual-numbers"));
  // x acting as the identity breaks x^2 = 0
  j["modules"]["k"]["action"]["x"] = {{1}};
  CHECK_THROWS_AS(load_instance(j), ValidationError);
}

TEST_CASE("class spec parsing") {
  const auto& inst = instance("f3x3");
  CHECK(parse_class_spec(inst, "all").is_all());
  ProperClassSpec rel = parse_class_spec(inst, "relative:k,V2");
  CHECK(rel.kind == ProperClassSpec::Kind::Relative);
  CHECK(rel.relatives.size() == 2);
  CHECK_THROWS_AS(parse_class_spec(inst, "relative:nope"), ValidationError);
  CHECK_THROWS_AS(parse_class_spec(inst, "everything"), ValidationError);
}

TEST_CASE("relative proper classes load from instance files") {
  nlohmann::json j = save_instance(instance("dual-numbers"));
  j["proper_class"] = {{"relative", {"k"}}};
  InstanceData inst = load_instance(j);
  CHECK(inst.proper_class.kind == ProperClassSpec::Kind::Relative);
  CHECK(inst.relative_names == std::vector<std::string>{"k"});
  nlohmann::json back = save_instance(inst);
  CHECK(back["proper_class"]["relative"] == nlohmann::json::array({"k"}));
}
