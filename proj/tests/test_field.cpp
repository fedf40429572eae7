#include "support.hpp"

#include "cusheaf/error.hpp"

#include <doctest.h>

using namespace cusheaf;
using namespace cusheaf::testing;

namespace {

bool field_oracle(const FieldElement& f, const FieldElement& g) {
  unsigned K = field_shrink_depth(f, g);
  for (unsigned k = 1; k <= K; ++k)
    if (field_leq(f, field_shrink(g, k))) return true;
  return false;
}

}  // namespace

TEST_CASE("field construction") {
  CHECK(ModelField::trivial(unit_interval())->is_trivial());
  auto F = drop_field(unit_interval());
  CHECK(F->exceptional().size() == 1);
  auto T = triangle();
  std::vector<ExceptionalPoint> mids;
  for (std::size_t e = 0; e < 3; ++e) mids.push_back({e, q(1, 2), {1, 2}});
  CHECK(ModelField::make(T, mids)->exceptional().size() == 3);
  CHECK_THROWS_AS(ModelField::make(unit_interval(), {{0, q(1, 3), {1, 0}}}), Error);
  CHECK_THROWS_AS(ModelField::make(unit_interval(), {{0, q(1, 3), {1, 1}}, {0, q(1, 3), {1, 2}}}), Error);
  CHECK_THROWS_AS(ModelField::make(unit_interval(), {{0, q(0), {1, 1}}}), Error);
}

TEST_CASE("fusion constraint") {
  auto X = unit_interval();
  auto F = drop_field(X);
  auto two = StepFn::constant(X, 2);
  FieldElement ok(F, two, {{0, {1, 1}}});
  CHECK(*ok.base().at(Site::on_edge(0, q(1, 3))) == ExtNat(2));
  CHECK(ok.fiber(Site::on_edge(0, q(1, 3))) == Tuple{1, 1});
  CHECK(ok.fiber(Site::on_edge(0, q(1, 2))) == Tuple{2});
  try {
    FieldElement bad(F, two, {{0, {2, 1}}});
    FAIL("fusion violation accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotLsc);
    CHECK(e.witness() == "e:1/3");
  }
  // A drop at the exceptional point is allowed: (0,1) under a base value 2.
  FieldElement drop(F, two, {{0, {0, 1}}});
  CHECK(*drop.base().at(Site::on_edge(0, q(1, 3))) == ExtNat(1));
}

TEST_CASE("compact elements of the drop field") {
  auto X = unit_interval();
  auto F = drop_field(X);
  FieldElement c(F, StepFn::constant(X, 2), {{0, {1, 1}}});
  CHECK(field_waybelow(c, c));
  FieldElement d(F, StepFn::constant(X, 2), {{0, {0, 1}}});
  CHECK_FALSE(field_waybelow(d, d));
  CHECK(field_waybelow(d, c));
  CHECK(field_oracle(d, c));
  CHECK_FALSE(field_oracle(d, d));
}

TEST_CASE("field shrink chain is rapid and agrees with the closure criterion") {
  std::mt19937_64 rng(11);
  for (auto weights : {std::vector<std::uint64_t>{1, 1}, std::vector<std::uint64_t>{1, 2}}) {
    auto F = drop_field(unit_interval(), weights);
    int positives = 0;
    for (int trial = 0; trial < 150; ++trial) {
      auto g = random_field_element(F, 6, 3, rng);
      auto f = random_field_element(F, 6, 3, rng, trial % 2 == 0);
      for (unsigned k = 1; k < 6; ++k) {
        auto s = field_shrink(g, k), t = field_shrink(g, k + 1);
        CHECK(field_leq(s, g));
        CHECK(field_waybelow(s, t));
      }
      // Shrink outputs are natural candidates for positive pairs.
      auto fs = trial % 3 == 0 ? field_shrink(g, 1 + static_cast<unsigned>(rng() % 5)) : f;
      bool crit = field_waybelow(fs, g);
      CHECK(crit == field_oracle(fs, g));
      positives += crit;
    }
    CHECK(positives > 20);
  }
}

TEST_CASE("step function criterion agrees with the shrink oracle on random pairs") {
  std::mt19937_64 rng(5);
  for (auto X : {unit_interval(), triangle(), tripod()}) {
    for (int trial = 0; trial < 150; ++trial) {
      auto g = random_stepfn(X, 4, 3, rng);
      auto f = trial % 2 ? random_stepfn(X, 4, 3, rng, false) : shrink(g, 1 + static_cast<unsigned>(rng() % 6));
      unsigned K = shrink_depth(f, g);
      bool oracle = false;
      for (unsigned k = 1; k <= K && !oracle; ++k) oracle = stepfn_leq(f, shrink(g, k));
      CHECK(stepfn_waybelow(f, g) == oracle);
    }
  }
}
