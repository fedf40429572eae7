#include "support.hpp"

#include "cusheaf/action.hpp"
#include "cusheaf/error.hpp"
#include "cusheaf/models.hpp"

#include <doctest.h>

using namespace cusheaf;
using namespace cusheaf::testing;

namespace {

CellSet open_iv(const ComplexPtr& X, std::size_t e, Q a, Q b) { return cellset_from(X, {{e, a, b}}, {}, false); }

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::InvalidInput;
}

}  // namespace

TEST_CASE("act examples") {
  auto X = unit_interval();
  auto F = ModelField::trivial(X);
  std::mt19937_64 rng(0x5eed);
  FieldElement s = random_field_element(F, 6, 3, rng);
  CHECK(field_equal(act(StepFn::constant(X, 1), s), s));

  FieldElement two = FieldElement::constant(F, 2);
  FieldElement got = act(bump(X, 0, q(0), q(1)), two);
  CHECK(field_equal(got, FieldElement::lift(F, bump(X, 0, q(0), q(1), 2))));

  FieldElement b = FieldElement::lift(F, bump(X, 0, q(1, 4), q(1, 2), 2));
  CHECK(field_equal(act(StepFn::constant(X, kInf), b), FieldElement::lift(F, bump(X, 0, q(1, 4), q(1, 2), kInf))));

  auto D = drop_field(X, {1, 2});
  FieldElement t(D, StepFn::constant(X, 5), {{0, {1, 2}}});
  FieldElement t3 = act(StepFn::constant(X, 3), t);
  CHECK(t3.fiber(Site::on_edge(0, q(1, 3))) == Tuple{3, 6});
  CHECK(section_equal(act(StepFn::constant(X, 3), induced_section(t)), induced_section(t3)));

  CHECK_THROWS_AS(act(StepFn::constant(triangle(), 1), s), Error);
}

TEST_CASE("indicator_decompose examples") {
  auto X = unit_interval();
  auto whole = CellSet::whole(Subdivision(X));
  auto c2 = indicator_decompose(StepFn::constant(X, 2));
  REQUIRE(c2.sets.size() == 2);
  CHECK(c2.sets[0].same_as(whole));
  CHECK(c2.sets[1].same_as(whole));
  CHECK_FALSE(c2.infinite_tail);

  StepFn f = stepfn_add(bump(X, 0, q(0), q(1, 2)), bump(X, 0, q(1, 4), q(3, 4), 2));
  auto d = indicator_decompose(f);
  REQUIRE(d.sets.size() == 3);
  CHECK(d.sets[0].same_as(open_iv(X, 0, q(0), q(3, 4))));
  CHECK(d.sets[1].same_as(open_iv(X, 0, q(1, 4), q(3, 4))));
  CHECK(d.sets[2].same_as(open_iv(X, 0, q(1, 4), q(1, 2))));

  CHECK(indicator_decompose(StepFn::constant(X, 0)).sets.empty());

  auto t = indicator_decompose(stepfn_add(StepFn::constant(X, 1), bump(X, 0, q(1, 4), q(1, 2), kInf)));
  CHECK(t.infinite_tail);
  REQUIRE(t.sets.size() == 2);
  CHECK(t.sets[1].same_as(open_iv(X, 0, q(1, 4), q(1, 2))));
}

TEST_CASE("compacts") {
  CHECK(compacts(ExtNatModel(), 3).size() == 4);
  for (auto X : {unit_interval(), triangle(), tripod()}) {
    auto c = compacts(StepModel::whole(X), 5, 4);
    CHECK(c.size() == 6);
    for (const auto& f : c) CHECK(f.data().values().size() == 1);
  }
  auto X = unit_interval();
  auto D = drop_field(X);
  auto c = compacts(FieldModel(D, CellSet::whole(Subdivision(X))), 3, 4);
  CHECK(!c.empty());
  for (const auto& x : c) {
    REQUIRE(x.base().data().values().size() <= 2);
    ExtNat n = *x.base().at(Site::vertex(0));
    CHECK(fuse(D->exceptional()[0], x.tuples().at(0)) == n);
    CHECK(*x.base().at(Site::vertex(1)) == n);
  }
}

TEST_CASE("v_reconstruct and action preservation") {
  auto X = unit_interval();
  auto whole = CellSet::whole(Subdivision(X));
  std::vector<CellSet> opens = {open_iv(X, 0, q(0), q(1, 2)), open_iv(X, 0, q(1, 4), q(3, 4)),
                                open_iv(X, 0, q(1, 8), q(1, 3)), CellSet::whole(Subdivision(X))};

  SUBCASE("identity on the trivial field") {
    auto F = ModelField::trivial(X);
    IsoCandidate id{F, F, {}, false, {}};
    for (const auto& c : compacts(FieldModel(F, whole), 3)) id.pairs.emplace_back(c, c);
    IsoCandidate full = v_reconstruct(F, F, id);
    CHECK(full.extended);
    auto basis = field_basis(F, whole, 2, 4);
    for (const auto& s : basis) CHECK(field_equal(full.apply(s), s));
    auto rep = preserves_action_check(full, basis, opens);
    CHECK_MESSAGE(rep.ok, rep.witness);
    CHECK(rep.checked == basis.size() * opens.size());
  }

  SUBCASE("coordinate swap on the drop field") {
    auto F = drop_field(X);
    IsoCandidate swap = coordinate_swap(F, F, 3);
    IsoCandidate full = v_reconstruct(F, F, swap);
    REQUIRE(full.fiber_maps.size() == 1);
    CHECK(full.fiber_maps.at(0).second == std::vector<std::size_t>{1, 0});
    FieldElement t(F, StepFn::constant(X, 3), {{0, {1, 2}}});
    CHECK(full.apply(t).fiber(Site::on_edge(0, q(1, 3))) == Tuple{2, 1});
    // Round trip: restricted to compacts the extension is the input.
    for (const auto& [x, y] : swap.pairs) CHECK(field_equal(full.apply(x), y));
    auto basis = field_basis(F, whole, 2, 4);
    auto rep = preserves_action_check(full, basis, opens);
    CHECK_MESSAGE(rep.ok, rep.witness);
    CHECK(rep.checked > 0);
  }

  SUBCASE("swap is not fusion-compatible with unequal weights") {
    auto F = drop_field(X, {1, 2});
    IsoCandidate id{F, F, {}, false, {}};
    for (const auto& c : compacts(FieldModel(F, whole), 3)) id.pairs.emplace_back(c, c);
    CHECK(v_reconstruct(F, F, id).fiber_maps.at(0).second == std::vector<std::size_t>{0, 1});
    CHECK_THROWS(coordinate_swap(F, F, 3));
  }

  SUBCASE("mismatched exceptional locations") {
    auto FA = drop_field(X);
    auto FB = ModelField::make(X, {{0, q(2, 3), {1, 1}}});
    IsoCandidate v{FA, FB, {}, false, {}};
    auto cb = compacts(FieldModel(FB, whole), 2);
    for (const auto& c : compacts(FieldModel(FA, whole), 2))
      for (const auto& d : cb)
        if (stepfn_equal(c.base(), d.base())) {
          v.pairs.emplace_back(c, d);
          break;
        }
    try {
      v_reconstruct(FA, FB, v);
      FAIL("expected NotCompatible");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NotCompatible);
      CHECK(e.witness() == "e:1/3");
    }
  }

  SUBCASE("generators that do not determine the fiber map") {
    auto F = drop_field(X);
    IsoCandidate v{F, F, {}, false, {}};
    FieldElement c(F, StepFn::constant(X, 2), {{0, {1, 1}}});
    v.pairs.emplace_back(c, c);
    CHECK(kind_of([&] { v_reconstruct(F, F, v); }) == ErrorKind::NotDense);
  }
}

TEST_CASE("rotation of a circle does not preserve the action") {
  auto C = circle(4);
  auto F = ModelField::trivial(C);
  auto whole = CellSet::whole(Subdivision(C));
  auto gens = field_basis(F, whole, 1, 2);
  IsoCandidate rot = rotation_iso(F, 1, gens);
  std::vector<CellSet> opens = {open_iv(C, 0, q(0), q(1, 4)), open_iv(C, 1, q(1, 8), q(1, 4))};
  auto rep = preserves_action_check(rot, gens, opens);
  CHECK_FALSE(rep.ok);
  CHECK_FALSE(rep.witness.empty());
  IsoCandidate id = rotation_iso(F, 4, gens);
  auto same = preserves_action_check(id, gens, opens);
  CHECK(same.ok);
  CHECK_THROWS(rotation_iso(ModelField::trivial(unit_interval()), 1, {}));
}

TEST_CASE("bimorphism laws") {
  LawOptions opt;
  opt.triple_samples = 600;
  opt.chain_samples = 300;
  for (auto F : {ModelField::trivial(unit_interval()), drop_field(unit_interval()), drop_field(triangle(), {1, 2})}) {
    auto rep = bimorphism_suite(F, 2, 4, opt);
    CHECK_MESSAGE(rep.all_pass(), rep.render());
  }
}
