#ifndef CUSHEAF_TESTS_SUPPORT_HPP
#define CUSHEAF_TESTS_SUPPORT_HPP

#include "cusheaf/field.hpp"
#include "cusheaf/stepfn.hpp"

#include <random>
#include <vector>

namespace cusheaf::testing {

inline Q q(std::int64_t n, std::int64_t d = 1) { return Q(n, d); }

/// v on the open interval (a,b) of edge e, 0 elsewhere.
inline StepFn bump(const ComplexPtr& X, std::size_t e, Q a, Q b, ExtNat v = ExtNat(1)) {
  std::vector<Piece> pieces{{e, a, b, v}};
  for (std::size_t i = 0; i < X->edge_count(); ++i) {
    Q L = X->edge(i).length;
    if (i != e) {
      pieces.push_back({i, Q(0), L, ExtNat(0)});
      continue;
    }
    if (a > Q(0)) pieces.push_back({i, Q(0), a, ExtNat(0)});
    if (b < L) pieces.push_back({i, b, L, ExtNat(0)});
  }
  // Endpoints of the bump are pinned to 0 so the support is exactly (a,b).
  return stepfn_make(X, pieces, {{make_site(*X, e, a), ExtNat(0)}, {make_site(*X, e, b), ExtNat(0)}});
}

/// Every point of a subdivision plus every segment midpoint.
inline std::vector<Site> probe_sites(const Subdivision& sub) {
  std::vector<Site> out;
  for (std::size_t p = 0; p < sub.point_count(); ++p) out.push_back(sub.point_site(p));
  for (std::size_t s = 0; s < sub.segment_count(); ++s) out.push_back(sub.segment_midpoint(s));
  return out;
}

inline ExtNat random_value(std::mt19937_64& rng, std::uint64_t max_value, bool allow_inf) {
  if (allow_inf && rng() % 7 == 0) return kInf;
  return ExtNat(rng() % (max_value + 1));
}

/// Random lsc step function with breakpoints on the grid (1/den)·L per edge.
inline StepFn random_stepfn(const ComplexPtr& X, std::int64_t den, std::uint64_t max_value, std::mt19937_64& rng,
                            bool allow_inf = true) {
  std::vector<Piece> pieces;
  for (std::size_t e = 0; e < X->edge_count(); ++e) {
    Q L = X->edge(e).length;
    std::int64_t at = 0;
    while (at < den) {
      std::int64_t len = 1 + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(den));
      len = std::min(len, den - at);
      pieces.push_back({e, L * Q(at, den), L * Q(at + len, den), random_value(rng, max_value, allow_inf)});
      at += len;
    }
  }
  StepFn top = stepfn_make(X, pieces, {});
  // Lower some point values below the directional minimum.
  CellFunction d = top.data();
  for (auto& v : d.v.points)
    if (v && rng() % 3 == 0) v = v->is_inf() ? ExtNat(rng() % (max_value + 1)) : ExtNat(rng() % (v->value() + 1));
  return StepFn(d);
}

/// Random field element: random base, then random tuples lowered until they fit.
inline FieldElement random_field_element(const FieldPtr& F, std::int64_t den, std::uint64_t max_value,
                                         std::mt19937_64& rng, bool allow_inf = true) {
  StepFn base = random_stepfn(F->complex_ptr(), den, max_value, rng, allow_inf);
  std::map<std::size_t, Tuple> tuples;
  for (std::size_t i = 0; i < F->exceptional().size(); ++i) {
    const auto& e = F->exceptional()[i];
    ExtNat limit = *base.limit_min(e.site());
    Tuple a(e.arity());
    for (auto& x : a) x = random_value(rng, max_value, allow_inf);
    while (!(fuse(e, a) <= limit)) {
      std::size_t j = rng() % a.size();
      if (a[j].is_inf()) a[j] = ExtNat(max_value);
      else if (a[j].value() > 0) a[j] = ExtNat(a[j].value() - 1);
    }
    tuples[i] = a;
  }
  return FieldElement(F, base, std::move(tuples));
}

inline FieldPtr drop_field(const ComplexPtr& X, std::vector<std::uint64_t> weights = {1, 1}) {
  return ModelField::make(X, {{0, X->edge(0).length * Q(1, 3), std::move(weights)}});
}

}  // namespace cusheaf::testing

#endif
