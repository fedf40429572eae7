#include "support.hpp"

#include "cusheaf/error.hpp"
#include "cusheaf/io.hpp"

#include <doctest.h>

using namespace cusheaf;
using namespace cusheaf::testing;
using cusheaf::io::json;

namespace {

std::string pointer_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.witness();
  }
  return "(no error)";
}

}  // namespace

TEST_CASE("element documents round trip") {
  io::Reader r;
  std::mt19937_64 rng(0x5eed);
  for (auto F : {ModelField::trivial(unit_interval()), drop_field(triangle(), {1, 2})}) {
    for (int i = 0; i < 40; ++i) {
      FieldElement s = random_field_element(F, 8, 4, rng);
      CHECK(field_equal(r.element(F, io::to_json(s)), s));
    }
  }
  auto X = unit_interval();
  auto F = ModelField::trivial(X);
  FieldElement s = FieldElement::lift(F, bump(X, 0, q(0), q(1)));
  FieldElement p = field_restrict(s, cellset_from(X, {{0, q(1, 4), q(1, 2)}}, {}, true));
  CHECK(field_equal(r.element(F, io::to_json(p)), p));
}

TEST_CASE("space and field documents") {
  io::Reader r;
  json space = json::parse(R"({"vertices":["a","b"],"edges":[{"id":"e","from":"a","to":"b","length":"1"}]})");
  auto X = r.space(space);
  CHECK(X->edge_count() == 1);
  CHECK(X->same_shape(*io::Reader().space(io::to_json(*X))));
  json field = {{"space", space}, {"exceptional", {{{"edge", "e"}, {"pos", "1/3"}, {"arity", 2}, {"weights", {1, 1}}}}}};
  auto F = r.field(field);
  CHECK(F->exceptional().size() == 1);
  CHECK(r.field(json("trivial"))->is_trivial());

  json bad = field;
  bad["exceptional"][0]["pos"] = "1/0";
  CHECK(pointer_of([&] { r.field(bad); }) == "/exceptional/0/pos");
  bad = field;
  bad["exceptional"][0]["arity"] = 3;
  CHECK(pointer_of([&] { r.field(bad); }) == "/exceptional/0/arity");
  bad = field;
  bad["space"]["edges"][0].erase("length");
  CHECK(pointer_of([&] { r.field(bad); }) == "/space/edges/0");
}

TEST_CASE("element and section schema errors") {
  io::Reader r;
  auto F = r.field(json("drop"));
  json el = json::parse(R"({"pieces":[{"edge":"e","from":"0","to":"1","value":2}],
                            "exceptional":[{"edge":"e","pos":"1/3","tuple":[1,1]}]})");
  CHECK(r.element(F, el).fiber(Site::on_edge(0, q(1, 3))) == Tuple{1, 1});
  json bad = el;
  bad["pieces"][0]["value"] = -1;
  CHECK(pointer_of([&] { r.element(F, bad); }) == "/pieces/0/value");
  bad = el;
  bad["exceptional"][0]["tuple"] = {1};
  CHECK(pointer_of([&] { r.element(F, bad); }) == "/exceptional/0/tuple");
  bad = el;
  bad["exceptional"][0]["pos"] = "1/2";
  CHECK(pointer_of([&] { r.element(F, bad); }) == "/exceptional/0");

  json sec = json::parse(R"({"cover":[{"intervals":[{"edge":"e","from":"0","to":"3/5"}],"vertices":["v0"]},
                                     {"intervals":[{"edge":"e","from":"2/5","to":"1"}],"vertices":["v1"]}],
                            "values":{"0":{"pieces":[{"edge":"e","from":"0","to":"1","value":1}]},
                                      "1":{"pieces":[{"edge":"e","from":"0","to":"1","value":1}]},
                                      "0,1":{"pieces":[{"edge":"e","from":"0","to":"1","value":2}]}}})");
  auto T = r.field(json("trivial"));
  PCSection p = r.section(T, sec);
  CHECK(pcs_eval(p).at(Site::on_edge(0, q(1, 2))) == Tuple{2});
  json bad_sec = sec;
  bad_sec["values"]["0,1"]["pieces"][0]["value"] = 0;
  try {
    r.section(T, bad_sec);
    FAIL("expected a compatibility error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Compatibility);
  }
  bad_sec = sec;
  bad_sec["values"].erase("1");
  CHECK(pointer_of([&] { r.section(T, bad_sec); }) == "/values");
}
