#include "support.hpp"

#include "cusheaf/error.hpp"

#include <doctest.h>

using namespace cusheaf;
using namespace cusheaf::testing;

namespace {

/// Brute-force closed-ball minimum on the unit interval.
ExtNat interval_ball_min(const StepFn& f, const Q& x, const Q& r) {
  Q lo = std::max(Q(0), x - r), hi = std::min(Q(1), x + r);
  std::vector<std::pair<std::size_t, Q>> extra{{0, lo}, {0, hi}};
  Subdivision sub = f.sub().with_cuts(extra);
  ExtNat best = kInf;
  for (const auto& s : probe_sites(sub)) {
    Q t = s.is_vertex ? (s.index == 0 ? Q(0) : Q(1)) : s.t;
    if (t >= lo && t <= hi) best = min(best, *f.at(s));
  }
  return best;
}

bool shrink_oracle(const StepFn& f, const StepFn& g) {
  unsigned K = shrink_depth(f, g);
  for (unsigned k = 1; k <= K; ++k)
    if (stepfn_leq(f, shrink(g, k))) return true;
  return false;
}

}  // namespace

TEST_CASE("interval indicator is valid") {
  auto X = unit_interval();
  auto f = stepfn_make(X, {{0, q(0), q(1), ExtNat(1)}}, {{Site::vertex(0), 0}, {Site::vertex(1), 0}});
  CHECK(*f.at(Site::vertex(0)) == ExtNat(0));
  CHECK(*f.at(Site::on_edge(0, q(1, 2))) == ExtNat(1));
  CHECK(stepfn_equal(f, bump(X, 0, q(0), q(1))));
}

TEST_CASE("point spike is rejected with witness, floored on request") {
  auto X = unit_interval();
  std::vector<Piece> pieces{{0, q(0), q(1), ExtNat(0)}};
  std::vector<PointValue> pts{{Site::on_edge(0, q(1, 2)), ExtNat(1)}};
  try {
    stepfn_make(X, pieces, pts);
    FAIL("spike accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotLsc);
    CHECK(e.witness() == "e:1/2");
  }
  auto f = stepfn_make(X, pieces, pts, LscMode::Floor);
  CHECK(stepfn_equal(f, StepFn::constant(X, 0)));
}

TEST_CASE("uncovered segment is a cover gap") {
  auto X = unit_interval();
  CHECK_THROWS_AS(stepfn_make(X, {{0, q(0), q(1, 2), ExtNat(1)}}, {}), Error);
  try {
    stepfn_make(X, {{0, q(0), q(1, 2), ExtNat(1)}}, {});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CoverGap);
  }
}

TEST_CASE("addition matches pointwise sums") {
  auto X = unit_interval();
  auto a = bump(X, 0, q(0), q(1));
  CHECK(stepfn_equal(stepfn_add(a, a), bump(X, 0, q(0), q(1), 2)));
  auto f = bump(X, 0, q(0), q(1, 2)), g = bump(X, 0, q(1, 4), q(1));
  auto h = stepfn_add(f, g);
  for (const auto& s : probe_sites(h.sub().join(f.sub()).join(g.sub())))
    CHECK(*h.at(s) == *f.at(s) + *g.at(s));
  CHECK(*h.at(Site::on_edge(0, q(1, 3))) == ExtNat(2));
  CHECK(*h.at(Site::on_edge(0, q(1, 4))) == ExtNat(1));
  CHECK(*h.at(Site::on_edge(0, q(1, 2))) == ExtNat(1));
  CHECK(stepfn_equal(stepfn_add(f, StepFn::constant(X, 0)), f));
}

TEST_CASE("pointwise order") {
  auto X = unit_interval();
  auto one = StepFn::constant(X, 1);
  CHECK(stepfn_leq(bump(X, 0, q(0), q(1)), one));
  CHECK_FALSE(stepfn_leq(one, bump(X, 0, q(0), q(1))));
  CHECK(stepfn_leq(bump(X, 0, q(1, 4), q(3, 4)), bump(X, 0, q(0), q(1), 2)));
}

TEST_CASE("compact containment agrees with the shrink chain") {
  auto X = unit_interval();
  auto inner = bump(X, 0, q(1, 4), q(3, 4)), full = bump(X, 0, q(0), q(1));
  CHECK(stepfn_waybelow(inner, full));
  CHECK(shrink_oracle(inner, full));
  CHECK_FALSE(stepfn_waybelow(full, full));
  CHECK_FALSE(shrink_oracle(full, full));
  auto two = StepFn::constant(X, 2);
  CHECK(stepfn_waybelow(two, two));
  CHECK(shrink_oracle(two, two));
  CHECK(stepfn_waybelow(StepFn::constant(X, 0), full));
  auto inf = StepFn::constant(X, kInf);
  CHECK_FALSE(stepfn_waybelow(inf, inf));
  CHECK_FALSE(shrink_oracle(inf, inf));
}

TEST_CASE("shrink uses closed balls") {
  auto X = unit_interval();
  auto f = bump(X, 0, q(0), q(1));
  auto s4 = shrink(f, 4);
  // The closed quarter-ball at 1/4 reaches the endpoint 0, so 1/4 keeps value 0.
  CHECK(stepfn_equal(s4, bump(X, 0, q(1, 4), q(3, 4))));
  for (unsigned k = 1; k < 9; ++k) {
    CHECK(stepfn_leq(shrink(f, k), shrink(f, k + 1)));
    CHECK(stepfn_waybelow(shrink(f, k), shrink(f, k + 1)));
    CHECK(stepfn_equal(shrink(StepFn::constant(X, 3), k), StepFn::constant(X, 3)));
    CHECK(stepfn_equal(shrink(StepFn::constant(X, 0), k), StepFn::constant(X, 0)));
  }
}

TEST_CASE("ball minimum agrees with brute force on the interval") {
  auto X = unit_interval();
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<Piece> pieces;
    std::vector<PointValue> pts;
    std::int64_t den = 8, at = 0;
    while (at < den) {
      std::int64_t len = 1 + static_cast<std::int64_t>(rng() % 3);
      if (at + len > den) len = den - at;
      ExtNat v = (rng() % 6 == 0) ? kInf : ExtNat(rng() % 4);
      pieces.push_back({0, q(at, den), q(at + len, den), v});
      at += len;
    }
    auto f = stepfn_make(X, pieces, pts);
    std::int64_t k = 2 + static_cast<std::int64_t>(rng() % 6);
    auto m = ball_min(f, q(1, k));
    for (const auto& s : probe_sites(m.sub().join(f.sub()))) {
      Q t = s.is_vertex ? (s.index == 0 ? Q(0) : Q(1)) : s.t;
      CHECK(*m.at(s) == interval_ball_min(f, t, q(1, k)));
    }
  }
}

TEST_CASE("restriction") {
  auto X = unit_interval();
  Subdivision sub = Subdivision(X).with_cuts({{0, q(1, 4)}, {0, q(3, 4)}});
  CellSet patch = CellSet(sub, false);
  patch.in.segs[sub.segment(0, 1)] = true;
  patch.in.points[sub.cut_point(0, 0)] = true;
  patch.in.points[sub.cut_point(0, 1)] = true;
  auto r = restrict(bump(X, 0, q(0), q(1)), patch);
  CHECK(stepfn_equal(r, StepFn::constant_on(patch, 1)));
  auto f = bump(X, 0, q(1, 3), q(1, 2), 2);
  CHECK(stepfn_equal(restrict(f, CellSet::whole(Subdivision(X))), f));
  auto inf = restrict(StepFn::constant(X, kInf), patch);
  CHECK(stepfn_equal(inf, StepFn::constant_on(patch, kInf)));
}
