#include "cusheaf/action.hpp"

#include "cusheaf/error.hpp"
#include "cusheaf/models.hpp"

#include <algorithm>
#include <numeric>

namespace cusheaf {

namespace {

Tuple scale(ExtNat n, const Tuple& t) {
  Tuple out(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) out[i] = n * t[i];
  return out;
}

}  // namespace

FieldElement act(const StepFn& f, const FieldElement& s) {
  if (&f.complex() != &s.base().complex() && !f.complex().same_shape(s.base().complex()))
    throw Error(ErrorKind::ComplexMismatch, "acting function lives on a different complex");
  const CellSet dom = s.domain();
  if (!dom.subset_of(f.domain())) throw Error(ErrorKind::DomainMismatch, "acting function is not defined on the section");
  const StepFn fr = dom.same_as(f.domain()) ? f : restrict(f, dom);
  StepFn base = stepfn_product(fr, s.base());
  std::map<std::size_t, Tuple> tuples;
  const auto& ex = s.field()->exceptional();
  for (const auto& [i, t] : s.tuples()) tuples[i] = scale(*fr.at(ex[i].site()), t);
  return FieldElement(s.field(), base, std::move(tuples));
}

Section act(const StepFn& f, const Section& s) {
  Subdivision j = s.sub().join(f.sub());
  Section r = s.refined(j);
  auto v = r.values();
  auto apply = [&](std::optional<Tuple>& t, const Site& site, const std::string& where) {
    if (!t) return;
    auto n = f.at(site);
    if (!n) throw Error(ErrorKind::DomainMismatch, "acting function is not defined on the section", where);
    t = scale(*n, *t);
  };
  for (std::size_t p = 0; p < j.point_count(); ++p) apply(v.points[p], j.point_site(p), j.describe_point(p));
  for (std::size_t q = 0; q < j.segment_count(); ++q) apply(v.segs[q], j.segment_midpoint(q), j.describe_segment(q));
  return Section(s.field(), j, std::move(v));
}

IndicatorDecomposition indicator_decompose(const StepFn& f) {
  IndicatorDecomposition out;
  const std::uint64_t M = f.data().max_finite().value_or(ExtNat(0)).value();
  for (std::uint64_t i = 0; i < M; ++i) out.sets.push_back(f.superlevel(ExtNat(i + 1)));
  if (f.data().has_inf()) {
    out.sets.push_back(f.superlevel(ExtNat(M + 1)));
    out.infinite_tail = true;
  }
  // Reassemble pointwise.
  const auto& sub = f.sub();
  auto check = [&](const Site& s, const std::optional<ExtNat>& v, const std::string& where) {
    if (!v) return;
    ExtNat sum(0);
    for (std::size_t i = 0; i < out.sets.size(); ++i)
      if (out.sets[i].contains(s)) sum = (out.infinite_tail && i + 1 == out.sets.size()) ? kInf : sum + ExtNat(1);
    if (sum != *v) throw Error(ErrorKind::InvalidInput, "indicator sum does not reproduce f", where);
  };
  for (std::size_t p = 0; p < sub.point_count(); ++p)
    check(sub.point_site(p), f.data().v.points[p], sub.describe_point(p));
  for (std::size_t q = 0; q < sub.segment_count(); ++q)
    check(sub.segment_midpoint(q), f.data().v.segs[q], sub.describe_segment(q));
  return out;
}

bool IsoCandidate::defined_on(const FieldElement& s) const {
  if (extended) return true;
  for (const auto& [x, y] : pairs)
    if (field_equal(x, s)) return true;
  return false;
}

FieldElement IsoCandidate::apply(const FieldElement& s) const {
  if (!extended) {
    for (const auto& [x, y] : pairs)
      if (field_equal(x, s)) return y;
    throw Error(ErrorKind::InvalidInput, "element is not a generator of the candidate", s.describe());
  }
  std::map<std::size_t, Tuple> tuples;
  for (const auto& [i, a] : s.tuples()) {
    const auto& [j, perm] = fiber_maps.at(i);
    Tuple b(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) b[k] = a[perm[k]];
    tuples[j] = std::move(b);
  }
  return FieldElement(target, s.base(), std::move(tuples));
}

IsoCandidate v_reconstruct(const FieldPtr& FA, const FieldPtr& FB, const IsoCandidate& v_iso) {
  const auto& X = FA->complex();
  if (!X.same_shape(FB->complex())) throw Error(ErrorKind::NotCompatible, "fields live over different complexes");
  const auto& exA = FA->exceptional();
  const auto& exB = FB->exceptional();
  auto mismatch = [&](const ExceptionalPoint& e, std::size_t other_arity) {
    std::string where = describe(X, e.site());
    return Error(ErrorKind::NotCompatible,
                 "stalks differ at " + where + ": N̄^" + std::to_string(e.arity()) + " vs N̄^" +
                     std::to_string(other_arity) + ", so restrictions to neighbourhoods of " + where + " cannot match",
                 where);
  };
  IsoCandidate out = v_iso;
  out.source = FA;
  out.target = FB;
  for (std::size_t i = 0; i < exA.size(); ++i) {
    auto j = FB->exceptional_at(exA[i].site());
    if (!j) throw mismatch(exA[i], 1);
    if (exB[*j].arity() != exA[i].arity()) throw mismatch(exA[i], exB[*j].arity());
  }
  for (const auto& e : exB)
    if (!FA->exceptional_at(e.site())) throw mismatch(e, 1);

  for (const auto& [x, y] : v_iso.pairs) {
    if (!field_waybelow(x, x) || !field_waybelow(y, y))
      throw Error(ErrorKind::NotCompatible, "generator is not compact", x.describe());
    // Generic fibers are N̄, whose only additive automorphism is the identity.
    if (!stepfn_equal(x.base(), y.base()))
      throw Error(ErrorKind::NotCompatible, "generator changes generic fiber values", x.describe() + " -> " + y.describe());
  }

  for (std::size_t i = 0; i < exA.size(); ++i) {
    const std::size_t j = *FB->exceptional_at(exA[i].site());
    const std::size_t k = exA[i].arity();
    std::vector<std::vector<std::size_t>> consistent;
    std::vector<std::size_t> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      bool ok = true;
      for (std::size_t c = 0; c < k && ok; ++c) ok = exB[j].weights[c] == exA[i].weights[perm[c]];
      for (const auto& [x, y] : v_iso.pairs) {
        if (!ok) break;
        auto a = x.tuples().find(i);
        auto b = y.tuples().find(j);
        if (a == x.tuples().end() || b == y.tuples().end()) continue;
        for (std::size_t c = 0; c < k && ok; ++c) ok = b->second[c] == a->second[perm[c]];
      }
      if (ok) consistent.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    const std::string where = describe(X, exA[i].site());
    if (consistent.empty())
      throw Error(ErrorKind::NotCompatible, "no fiber automorphism at " + where + " matches the generators", where);
    if (consistent.size() > 1)
      throw Error(ErrorKind::NotDense, "generators do not determine the fiber map at " + where, where);
    out.fiber_maps[i] = {j, consistent.front()};
  }
  out.extended = true;
  for (const auto& [x, y] : v_iso.pairs)
    if (!field_equal(out.apply(x), y))
      throw Error(ErrorKind::NotCompatible, "extension does not restrict to the given generator", x.describe());
  return out;
}

ActionReport preserves_action_check(const IsoCandidate& iso, const std::vector<FieldElement>& samples,
                                    const std::vector<CellSet>& opens) {
  ActionReport rep;
  for (const auto& U : opens) {
    const StepFn one_u = StepFn::indicator(U);
    for (const auto& a : samples) {
      if (!iso.defined_on(a)) {
        ++rep.skipped;
        continue;
      }
      FieldElement ua = act(one_u, a);
      if (!iso.defined_on(ua)) {
        ++rep.skipped;
        continue;
      }
      ++rep.checked;
      if (!field_equal(iso.apply(ua), act(one_u, iso.apply(a))) && rep.ok) {
        rep.ok = false;
        rep.witness = "U=" + U.describe() + " a=" + a.describe();
      }
    }
  }
  return rep;
}

namespace {

StepFn rotate(const StepFn& f, std::size_t steps) {
  const auto& sub = f.sub();
  const std::size_t n = sub.complex().edge_count();
  std::vector<std::vector<Q>> cuts(n);
  for (std::size_t e = 0; e < n; ++e) cuts[(e + steps) % n] = sub.cuts(e);
  Subdivision out(sub.complex_ptr(), cuts);
  auto source = [&](const Site& s) {
    return s.is_vertex ? Site::vertex((s.index + n - steps % n) % n) : Site::on_edge((s.index + n - steps % n) % n, s.t);
  };
  CellFunction d(out, std::nullopt);
  for (std::size_t p = 0; p < out.point_count(); ++p) d.v.points[p] = f.at(source(out.point_site(p)));
  for (std::size_t s = 0; s < out.segment_count(); ++s) d.v.segs[s] = f.at(source(out.segment_midpoint(s)));
  return StepFn(std::move(d));
}

}  // namespace

IsoCandidate rotation_iso(const FieldPtr& F, std::size_t steps, const std::vector<FieldElement>& generators) {
  const auto& X = F->complex();
  const std::size_t n = X.edge_count();
  if (!F->is_trivial() || n == 0 || X.vertex_count() != n)
    throw Error(ErrorKind::InvalidInput, "rotation needs the trivial field over a circle");
  for (std::size_t e = 0; e < n; ++e)
    if (X.edge(e).from != e || X.edge(e).to != (e + 1) % n || X.edge(e).length != X.edge(0).length)
      throw Error(ErrorKind::InvalidInput, "complex is not a regular circle");
  IsoCandidate iso{F, F, {}, false, {}};
  for (const auto& g : generators) iso.pairs.emplace_back(g, FieldElement::lift(F, rotate(g.base(), steps)));
  return iso;
}

IsoCandidate coordinate_swap(const FieldPtr& FA, const FieldPtr& FB, unsigned bound) {
  IsoCandidate iso{FA, FB, {}, false, {}};
  FieldModel model(FA, CellSet::whole(Subdivision(FA->complex_ptr())));
  for (const auto& x : compacts(model, bound)) {
    std::map<std::size_t, Tuple> tuples;
    for (const auto& [i, a] : x.tuples()) {
      auto j = FB->exceptional_at(FA->exceptional()[i].site());
      if (!j) throw Error(ErrorKind::NotCompatible, "no exceptional point at the same site in the target",
                          describe(FA->complex(), FA->exceptional()[i].site()));
      Tuple b = a;
      if (b.size() >= 2) std::swap(b[0], b[1]);
      tuples[*j] = std::move(b);
    }
    iso.pairs.emplace_back(x, FieldElement(FB, x.base(), std::move(tuples)));
  }
  return iso;
}

namespace {

std::uint64_t weight_bound(const ModelField& F) {
  std::uint64_t S = 1;
  for (const auto& e : F.exceptional()) S = std::max<std::uint64_t>(S, std::accumulate(e.weights.begin(), e.weights.end(), std::uint64_t{0}));
  return S;
}

}  // namespace

LawReport bimorphism_suite(const FieldPtr& F, unsigned bound, unsigned den, const LawOptions& opt) {
  const auto& X = F->complex_ptr();
  auto fs = stepfn_basis(X, bound, den);
  auto ss = field_basis(F, CellSet::whole(Subdivision(X)), bound, den);
  check_enumeration_size(fs.size() * ss.size());
  LawReport rep;
  rep.model = "act on " + std::to_string(fs.size()) + " functions x " + std::to_string(ss.size()) + " sections";
  rep.basis_size = fs.size() * ss.size();
  rep.working_size = rep.basis_size;
  std::mt19937_64 rng(opt.seed);
  auto pick_f = [&]() -> const StepFn& { return fs[rng() % fs.size()]; };
  auto pick_s = [&]() -> const FieldElement& { return ss[rng() % ss.size()]; };
  auto show = [](const StepFn& f, const FieldElement& s) { return "f=" + f.describe() + " s=" + s.describe(); };

  detail::LawLog mono_f("act monotone in f"), mono_s("act monotone in s");
  detail::LawLog add_f("act additive in f"), add_s("act additive in s"), joint("f'<<f, s'<<s => act(f',s') << act(f,s)");
  for (std::size_t t = 0; t < opt.triple_samples; ++t) {
    const StepFn& f = pick_f();
    const StepFn& g = pick_f();
    const FieldElement& s = pick_s();
    const FieldElement& r = pick_s();
    if (stepfn_leq(f, g)) {
      mono_f.tick();
      if (!field_leq(act(f, s), act(g, s))) mono_f.fail([&] { return show(f, s) + " g=" + g.describe(); });
    }
    if (field_leq(s, r)) {
      mono_s.tick();
      if (!field_leq(act(f, s), act(f, r))) mono_s.fail([&] { return show(f, s) + " r=" + r.describe(); });
    }
    add_f.tick();
    if (!field_equal(act(stepfn_add(f, g), s), field_add(act(f, s), act(g, s))))
      add_f.fail([&] { return show(f, s) + " g=" + g.describe(); });
    add_s.tick();
    if (!field_equal(act(f, field_add(s, r)), field_add(act(f, s), act(f, r))))
      add_s.fail([&] { return show(f, s) + " r=" + r.describe(); });
    // Joint clause on basis pairs and on shrink pairs.
    const unsigned k1 = 1 + static_cast<unsigned>(rng() % 6), k2 = 1 + static_cast<unsigned>(rng() % 6);
    std::vector<std::pair<StepFn, FieldElement>> below = {{shrink(f, k1), field_shrink(s, k2)}};
    if (stepfn_waybelow(g, f) && field_waybelow(r, s)) below.emplace_back(g, r);
    for (const auto& [fp, sp] : below) {
      joint.tick();
      if (!field_waybelow(act(fp, sp), act(f, s)))
        joint.fail([&] { return show(f, s) + " f'=" + fp.describe() + " s'=" + sp.describe(); });
    }
  }

  detail::LawLog sup_f("act sup-continuous in f"), sup_s("act sup-continuous in s"), ind("act(f,s) = sum act(1_Ui,s)");
  const std::uint64_t S = weight_bound(*F);
  for (std::size_t t = 0; t < opt.chain_samples; ++t) {
    const StepFn& f = pick_f();
    const FieldElement& s = pick_s();
    const Section target = induced_section(act(f, s));
    const std::uint64_t M =
        std::max(f.data().max_finite().value_or(ExtNat(0)).value(), s.max_finite().value_or(ExtNat(0)).value());
    Subdivision sub = target.sub().join(f.sub()).join(s.base().sub()).with_cuts(F->exceptional_cuts());
    const unsigned K = static_cast<unsigned>(std::max<std::uint64_t>(chain_depth(sub, ExtNat(M)), S * M + 1));
    const unsigned K2 = K + static_cast<unsigned>(S);
    sup_f.tick();
    Section cf = chain_sup({induced_section(act(shrink(f, K), s)), induced_section(act(shrink(f, K2), s))}, sub);
    if (!section_equal(cf, target)) sup_f.fail([&] { return show(f, s); });
    sup_s.tick();
    Section cs =
        chain_sup({induced_section(act(f, field_shrink(s, K))), induced_section(act(f, field_shrink(s, K2)))}, sub);
    if (!section_equal(cs, target)) sup_s.fail([&] { return show(f, s); });
    if (f.bounded()) {
      ind.tick();
      FieldElement sum = act(StepFn::constant(X, 0), s);
      for (const auto& U : indicator_decompose(f).sets) sum = field_add(sum, act(StepFn::indicator(U), s));
      if (!field_equal(sum, act(f, s))) ind.fail([&] { return show(f, s); });
    }
  }
  for (auto* log : {&mono_f, &mono_s, &add_f, &add_s, &joint, &sup_f, &sup_s, &ind}) rep.laws.push_back(log->done());
  return rep;
}

}  // namespace cusheaf
