#include "support.hpp"

#include "cusheaf/models.hpp"

#include <doctest.h>

#include <iostream>

using namespace cusheaf;
using namespace cusheaf::testing;

namespace {

template <class M>
void expect_all_laws(const M& model, unsigned bound, unsigned den) {
  auto report = axioms_suite(model, bound, den);
  INFO(report.render());
  CHECK(report.all_pass());
  for (const auto& law : report.laws) CHECK_MESSAGE(law.checked > 0, law.law);
}

}  // namespace

TEST_CASE("extended naturals") {
  CHECK(extnat_add(2, 3) == ExtNat(5));
  CHECK(extnat_add(7, kInf) == kInf);
  CHECK(extnat_add(0, kInf) == kInf);
  auto c = extnat_compare(2, 5);
  CHECK((c.leq && c.waybelow));
  c = extnat_compare(kInf, kInf);
  CHECK((c.leq && !c.waybelow));
  c = extnat_compare(5, 2);
  CHECK((!c.leq && !c.waybelow));
  expect_all_laws(ExtNatModel(), 4, 1);
  expect_all_laws(ProductModel(2), 3, 1);
}

TEST_CASE("admissible tuples") {
  ExceptionalPoint e{0, q(1, 3), {1, 1}};
  auto t = admissible_tuples(e, 2, 3);
  CHECK(t == std::vector<Tuple>{{0, 0}, {2, 0}, {1, 1}, {0, 2}});
  auto inf = admissible_tuples(e, kInf, 1);
  CHECK(inf.size() == 5);
}

TEST_CASE("lsc step laws on the interval") { expect_all_laws(StepModel::whole(unit_interval()), 3, 8); }
TEST_CASE("lsc step laws on the triangle") { expect_all_laws(StepModel::whole(triangle()), 3, 8); }
TEST_CASE("lsc step laws on the tripod") { expect_all_laws(StepModel::whole(tripod()), 3, 8); }

TEST_CASE("section laws on the drop field") {
  auto X = unit_interval();
  expect_all_laws(FieldModel(drop_field(X), CellSet::whole(Subdivision(X))), 3, 8);
}

TEST_CASE("enumeration overflow") {
  setenv("CU_SECTIONS_MAX_ELEMENTS", "10", 1);
  CHECK_THROWS_AS(stepfn_basis(unit_interval(), 3, 8), Error);
  unsetenv("CU_SECTIONS_MAX_ELEMENTS");
}
