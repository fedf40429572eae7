#include "cusheaf/sections.hpp"

#include "cusheaf/error.hpp"
#include "cusheaf/models.hpp"

#include <algorithm>
#include <sstream>

namespace cusheaf {

namespace {

bool same_field(const FieldPtr& a, const FieldPtr& b) { return a == b || a->same_as(*b); }

void require_same_field(const FieldPtr& a, const FieldPtr& b) {
  if (!same_field(a, b)) throw Error(ErrorKind::ComplexMismatch, "sections belong to different fields");
}

std::string site_name(const Subdivision& sub, CellRef c) {
  return c.is_point ? sub.describe_point(c.index) : sub.describe_segment(c.index);
}

Subdivision with_exceptional(const FieldPtr& F, const Subdivision& sub) {
  return sub.with_cuts(F->exceptional_cuts());
}

std::size_t arity_at(const ModelField& F, const Site& s) {
  if (auto i = F.exceptional_at(s)) return F.exceptional()[*i].arity();
  return 1;
}

/// Value of a tuple seen as an element of N̄ through the fusion map.
ExtNat fused_value(const ModelField& F, const Site& s, const Tuple& t) {
  if (auto i = F.exceptional_at(s)) return fuse(F.exceptional()[*i], t);
  return t.at(0);
}

std::pair<Section, Section> align_sections(const Section& f, const Section& g) {
  require_same_field(f.field(), g.field());
  Subdivision j = f.sub().join(g.sub());
  return {f.refined(j), g.refined(j)};
}

void require_same_domain(const Section& f, const Section& g) {
  for (std::size_t p = 0; p < f.sub().point_count(); ++p)
    if (f.values().points[p].has_value() != g.values().points[p].has_value())
      throw Error(ErrorKind::DomainMismatch, "sections have different domains", f.sub().describe_point(p));
  for (std::size_t s = 0; s < f.sub().segment_count(); ++s)
    if (f.values().segs[s].has_value() != g.values().segs[s].has_value())
      throw Error(ErrorKind::DomainMismatch, "sections have different domains", f.sub().describe_segment(s));
}

}  // namespace

Section::Section(FieldPtr field, Subdivision sub, CellMap<std::optional<Tuple>> values)
    : field_(std::move(field)), sub_(std::move(sub)), v_(std::move(values)) {
  if (v_.points.size() != sub_.point_count() || v_.segs.size() != sub_.segment_count())
    throw Error(ErrorKind::InvalidInput, "section values do not match the subdivision");
  for (const auto& e : field_->exceptional()) {
    CellRef c = sub_.locate(e.site());
    if (!c.is_point && v_.segs[c.index])
      throw Error(ErrorKind::InvalidInput, "exceptional point is not a cut of the section",
                  cusheaf::describe(field_->complex(), e.site()));
  }
  for (std::size_t p = 0; p < sub_.point_count(); ++p)
    if (v_.points[p] && v_.points[p]->size() != arity_at(*field_, sub_.point_site(p)))
      throw Error(ErrorKind::InvalidInput, "tuple arity does not match the fiber", sub_.describe_point(p));
  for (std::size_t s = 0; s < sub_.segment_count(); ++s)
    if (v_.segs[s] && v_.segs[s]->size() != 1)
      throw Error(ErrorKind::InvalidInput, "ordinary fibers take single values", sub_.describe_segment(s));
}

CellSet Section::domain() const {
  CellMap<bool> m(sub_, false);
  for (std::size_t p = 0; p < sub_.point_count(); ++p) m.points[p] = v_.points[p].has_value();
  for (std::size_t s = 0; s < sub_.segment_count(); ++s) m.segs[s] = v_.segs[s].has_value();
  return CellSet(sub_, std::move(m));
}

Section Section::refined(const Subdivision& fine) const {
  return Section(field_, fine, transfer(sub_, v_, fine));
}

std::string Section::describe() const {
  std::ostringstream os;
  bool first = true;
  auto emit = [&](const std::string& where, const Tuple& t) {
    if (!first) os << ' ';
    first = false;
    os << where << '=' << (t.size() == 1 ? t[0].str() : tuple_str(t));
  };
  for (std::size_t s = 0; s < sub_.segment_count(); ++s)
    if (v_.segs[s]) emit(sub_.describe_segment(s), *v_.segs[s]);
  for (std::size_t p = 0; p < sub_.point_count(); ++p) {
    if (!v_.points[p]) continue;
    // Points matching a neighbouring segment are omitted.
    bool notable = v_.points[p]->size() != 1;
    bool attached = false;
    for (auto s : sub_.point_segments(p)) {
      if (!v_.segs[s]) continue;
      attached = true;
      if (*v_.segs[s] != *v_.points[p]) notable = true;
    }
    notable = notable || !attached;
    if (notable) emit("@" + sub_.describe_point(p), *v_.points[p]);
  }
  return first ? std::string("(empty)") : os.str();
}

Section induced_section(const FieldElement& s) {
  const auto& F = s.field();
  Subdivision sub = with_exceptional(F, s.base().sub());
  CellMap<std::optional<Tuple>> v(sub, std::nullopt);
  for (std::size_t p = 0; p < sub.point_count(); ++p)
    if (s.base().at(sub.point_site(p))) v.points[p] = s.fiber(sub.point_site(p));
  for (std::size_t q = 0; q < sub.segment_count(); ++q)
    if (auto x = s.base().at(sub.segment_midpoint(q))) v.segs[q] = Tuple{*x};
  return Section(F, std::move(sub), std::move(v));
}

ContinuityReport section_is_continuous(const Section& f) {
  const auto& sub = f.sub();
  const auto& F = *f.field();
  for (std::size_t p = 0; p < sub.point_count(); ++p) {
    const auto& t = f.values().points[p];
    if (!t) continue;
    ExtNat v = fused_value(F, sub.point_site(p), *t);
    for (auto s : sub.point_segments(p)) {
      const auto& w = f.values().segs[s];
      if (w && !(v <= (*w)[0]))
        return {false, sub.describe_point(p) + " value " + v.str() + " exceeds " + sub.describe_segment(s) + " value " +
                           (*w)[0].str()};
    }
  }
  return {};
}

FieldElement section_to_field(const Section& f) {
  auto rep = section_is_continuous(f);
  if (!rep.continuous) throw Error(ErrorKind::NotLsc, "section is not continuous: " + rep.witness, rep.witness);
  const auto& sub = f.sub();
  const auto& F = *f.field();
  CellFunction base(sub, std::nullopt);
  for (std::size_t p = 0; p < sub.point_count(); ++p)
    if (const auto& t = f.values().points[p]) base.v.points[p] = fused_value(F, sub.point_site(p), *t);
  for (std::size_t s = 0; s < sub.segment_count(); ++s)
    if (const auto& t = f.values().segs[s]) base.v.segs[s] = (*t)[0];
  std::map<std::size_t, Tuple> tuples;
  const auto& ex = F.exceptional();
  for (std::size_t i = 0; i < ex.size(); ++i)
    if (auto t = f.at(ex[i].site())) tuples[i] = *t;
  std::vector<Site> keep;
  for (const auto& e : ex) keep.push_back(e.site());
  base.normalize(keep);
  return FieldElement(f.field(), StepFn(std::move(base)), std::move(tuples));
}

Section section_restrict(const Section& f, const CellSet& patch) {
  Subdivision j = f.sub().join(patch.sub);
  Section r = f.refined(j);
  CellSet P = patch.refined(j);
  auto v = r.values();
  for (std::size_t p = 0; p < j.point_count(); ++p)
    if (!P.in.points[p]) v.points[p].reset();
  for (std::size_t s = 0; s < j.segment_count(); ++s)
    if (!P.in.segs[s]) v.segs[s].reset();
  return Section(f.field(), j, std::move(v));
}

bool section_leq(const Section& f, const Section& g) {
  auto [a, b] = align_sections(f, g);
  require_same_domain(a, b);
  for (std::size_t p = 0; p < a.sub().point_count(); ++p)
    if (a.values().points[p] && !tuple_leq(*a.values().points[p], *b.values().points[p])) return false;
  for (std::size_t s = 0; s < a.sub().segment_count(); ++s)
    if (a.values().segs[s] && !tuple_leq(*a.values().segs[s], *b.values().segs[s])) return false;
  return true;
}

bool section_equal(const Section& f, const Section& g) { return section_leq(f, g) && section_leq(g, f); }

Section section_add(const Section& f, const Section& g) {
  auto [a, b] = align_sections(f, g);
  require_same_domain(a, b);
  auto v = a.values();
  for (std::size_t p = 0; p < a.sub().point_count(); ++p)
    if (v.points[p]) v.points[p] = tuple_add(*v.points[p], *b.values().points[p]);
  for (std::size_t s = 0; s < a.sub().segment_count(); ++s)
    if (v.segs[s]) v.segs[s] = tuple_add(*v.segs[s], *b.values().segs[s]);
  return Section(a.field(), a.sub(), std::move(v));
}

Section section_shrink(const Section& f, unsigned k) {
  return induced_section(field_shrink(section_to_field(f), k));
}

bool section_waybelow(const Section& f, const Section& g) {
  FieldElement a = section_to_field(f);
  FieldElement b = section_to_field(g);
  // Shrinks increase with k, so the last index decides.
  return section_leq(f, induced_section(field_shrink(b, field_shrink_depth(a, b))));
}

Section patch_with(const Section& g, const CellSet& V, const Section& f) {
  require_same_field(g.field(), f.field());
  if (!V.is_closed()) throw Error(ErrorKind::Precondition, "patch must be closed");
  Subdivision j = g.sub().join(f.sub()).join(V.sub);
  Section G = g.refined(j);
  Section Fv = f.refined(j);
  CellSet W = V.refined(j);
  auto v = G.values();
  auto take = [&](bool in, const std::optional<Tuple>& gv, const std::optional<Tuple>& fv, std::optional<Tuple>& out,
                  const std::string& where) {
    if (!in) return;
    if (!gv) throw Error(ErrorKind::Precondition, "patch leaves the domain of g", where);
    if (!fv) throw Error(ErrorKind::Precondition, "f is not defined on the patch", where);
    if (!tuple_waybelow(*fv, *gv)) throw Error(ErrorKind::Precondition, "f is not way below g on the patch", where);
    out = fv;
  };
  for (std::size_t p = 0; p < j.point_count(); ++p)
    take(W.in.points[p], G.values().points[p], Fv.values().points[p], v.points[p], j.describe_point(p));
  for (std::size_t s = 0; s < j.segment_count(); ++s)
    take(W.in.segs[s], G.values().segs[s], Fv.values().segs[s], v.segs[s], j.describe_segment(s));
  return Section(g.field(), j, std::move(v));
}

namespace {

using PairKey = std::pair<std::size_t, std::size_t>;

Subdivision pcs_subdivision(const PCSection& p) {
  Subdivision sub = with_exceptional(p.field, Subdivision(p.field->complex_ptr()));
  for (const auto& U : p.cover) sub = sub.join(U.sub);
  for (const auto& s : p.singles) sub = sub.join(s.base().sub());
  for (const auto& [k, s] : p.pairs) sub = sub.join(s.base().sub());
  return sub;
}

Site cell_site(const Subdivision& sub, CellRef c) {
  return c.is_point ? sub.point_site(c.index) : sub.segment_midpoint(c.index);
}

template <class Fn>
void for_each_cell(const Subdivision& sub, Fn&& fn) {
  for (std::size_t p = 0; p < sub.point_count(); ++p) fn(CellRef{true, p});
  for (std::size_t s = 0; s < sub.segment_count(); ++s) fn(CellRef{false, s});
}

Tuple fiber_or_throw(const FieldElement& h, const Site& s, const std::string& role) {
  try {
    return h.fiber(s);
  } catch (const Error&) {
    throw Error(ErrorKind::InvalidInput, role + " is not defined on all of X", describe(h.field()->complex(), s));
  }
}

}  // namespace

PCSection pcs_make(FieldPtr field, std::vector<CellSet> cover, std::vector<FieldElement> singles,
                   std::map<std::pair<std::size_t, std::size_t>, FieldElement> pairs) {
  if (cover.size() != singles.size())
    throw Error(ErrorKind::InvalidInput, "one element per cover set is required");
  for (std::size_t i = 0; i < cover.size(); ++i)
    if (!cover[i].is_open()) throw Error(ErrorKind::InvalidInput, "cover set " + std::to_string(i) + " is not open");
  for (const auto& s : singles) require_same_field(field, s.field());
  for (const auto& [k, s] : pairs) require_same_field(field, s.field());

  PCSection out{std::move(field), std::move(cover), std::move(singles), {}};
  const std::size_t n = out.cover.size();
  for (auto& [k, s] : pairs) {
    PairKey key{std::min(k.first, k.second), std::max(k.first, k.second)};
    if (key.first == key.second || key.second >= n)
      throw Error(ErrorKind::InvalidInput, "pair index out of range");
    if ((out.cover[key.first] & out.cover[key.second]).is_empty())
      throw Error(ErrorKind::InvalidInput,
                  "pair element given for disjoint sets " + std::to_string(key.first) + "," + std::to_string(key.second));
    out.pairs.emplace(key, std::move(s));
  }

  const Subdivision sub = pcs_subdivision(out);
  std::vector<CellSet> U, C;
  for (const auto& c : out.cover) {
    U.push_back(c.refined(sub));
    C.push_back(c.closure().refined(sub));
  }
  for_each_cell(sub, [&](CellRef c) {
    std::size_t m = 0, mc = 0;
    for (std::size_t i = 0; i < n; ++i) {
      m += U[i].in.at(c) ? 1 : 0;
      mc += C[i].in.at(c) ? 1 : 0;
    }
    if (m == 0) throw Error(ErrorKind::CoverGap, "cover misses a point", site_name(sub, c));
    if (m > 2 || mc > 2)
      throw Error(ErrorKind::Multiplicity, std::string("cover ") + (m > 2 ? "sets" : "closures") + " overlap more than twice",
                  site_name(sub, c));
  });

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      CellSet I = U[i] & U[j];
      if (I.is_empty()) continue;
      auto it = out.pairs.find({i, j});
      if (it == out.pairs.end())
        throw Error(ErrorKind::InvalidInput,
                    "missing pair element for " + std::to_string(i) + "," + std::to_string(j));
      CellSet rim = I.closure() & I.complement();
      for (std::size_t side : {i, j}) {
        CellSet B = (rim & U[side]).closure().refined(sub);
        for_each_cell(sub, [&](CellRef c) {
          if (!B.in.at(c)) return;
          Site s = cell_site(sub, c);
          Tuple a = fiber_or_throw(out.singles[side], s, "s_" + std::to_string(side));
          Tuple b = fiber_or_throw(it->second, s, "s_" + std::to_string(i) + "," + std::to_string(j));
          if (!tuple_leq(a, b))
            throw Error(ErrorKind::Compatibility,
                        "s_" + std::to_string(side) + " exceeds the pair element at the boundary of U_" +
                            std::to_string(i) + " ∩ U_" + std::to_string(j),
                        site_name(sub, c));
        });
      }
    }

  auto rep = section_is_continuous(pcs_eval(out));
  if (!rep.continuous) throw Error(ErrorKind::Compatibility, "evaluated section is not continuous", rep.witness);
  return out;
}

Section pcs_eval(const PCSection& p) {
  const Subdivision sub = pcs_subdivision(p);
  std::vector<CellSet> U;
  for (const auto& c : p.cover) U.push_back(c.refined(sub));
  CellMap<std::optional<Tuple>> v(sub, std::nullopt);
  for_each_cell(sub, [&](CellRef c) {
    std::vector<std::size_t> hit;
    for (std::size_t i = 0; i < U.size(); ++i)
      if (U[i].in.at(c)) hit.push_back(i);
    Site s = cell_site(sub, c);
    if (hit.size() == 1) {
      v.at(c) = fiber_or_throw(p.singles[hit[0]], s, "s_" + std::to_string(hit[0]));
    } else if (hit.size() == 2) {
      auto it = p.pairs.find({hit[0], hit[1]});
      if (it == p.pairs.end()) throw Error(ErrorKind::InvalidInput, "missing pair element", site_name(sub, c));
      v.at(c) = fiber_or_throw(it->second, s, "pair element");
    } else {
      throw Error(hit.empty() ? ErrorKind::CoverGap : ErrorKind::Multiplicity, "cover is not a PCS cover",
                  site_name(sub, c));
    }
  });
  return Section(p.field, sub, std::move(v));
}

namespace {

/// h on the open set O, zero elsewhere.
FieldElement field_mask(const FieldElement& h, const CellSet& O) {
  StepFn base = stepfn_product(h.base(), StepFn::indicator(O));
  std::map<std::size_t, Tuple> tuples;
  const auto& ex = h.field()->exceptional();
  for (const auto& [i, t] : h.tuples())
    tuples[i] = O.contains(ex[i].site()) ? t : Tuple(t.size(), ExtNat(0));
  return FieldElement(h.field(), base, std::move(tuples));
}

/// Open star of a point reaching the fraction `reach` into each incident segment.
CellSet open_star(const Subdivision& sub, std::size_t p, const Q& reach) {
  std::vector<Interval> ivs;
  for (auto s : sub.point_segments(p)) {
    auto [a, b] = sub.segment_ends(s);
    const Q len = sub.segment_length(s) * reach;
    const std::size_t e = sub.segment_edge(s);
    if (a == p) ivs.push_back({e, sub.segment_start(s), sub.segment_start(s) + len});
    if (b == p) ivs.push_back({e, sub.segment_end(s) - len, sub.segment_end(s)});
  }
  return cellset_from(sub.complex_ptr(), ivs, {sub.point_site(p)}, false);
}

}  // namespace

PCSection pcs_from_element(const FieldElement& h) {
  if (!h.domain().same_as(CellSet::whole(h.base().sub())))
    throw Error(ErrorKind::InvalidInput, "element must be defined on all of X");
  const auto& F = h.field();
  Subdivision sub = with_exceptional(F, h.base().sub());
  std::vector<std::pair<std::size_t, Q>> mids;
  for (std::size_t s = 0; s < sub.segment_count(); ++s)
    if (sub.segment_ends(s).first == sub.segment_ends(s).second)
      mids.emplace_back(sub.segment_edge(s), (sub.segment_start(s) + sub.segment_end(s)) / Q(2));
  sub = sub.with_cuts(mids);

  std::vector<CellSet> cover, outer;
  std::vector<FieldElement> singles;
  for (std::size_t p = 0; p < sub.point_count(); ++p) {
    cover.push_back(open_star(sub, p, Q(2, 3)));
    outer.push_back(open_star(sub, p, Q(3, 4)));
    singles.push_back(field_mask(h, outer.back()));
  }
  std::map<PairKey, FieldElement> pairs;
  for (std::size_t s = 0; s < sub.segment_count(); ++s) {
    auto [a, b] = sub.segment_ends(s);
    PairKey key{std::min(a, b), std::max(a, b)};
    if (!pairs.count(key)) pairs.emplace(key, field_mask(h, outer[a] | outer[b]));
  }
  return pcs_make(F, std::move(cover), std::move(singles), std::move(pairs));
}

namespace {

std::uint64_t max_weight_sum(const ModelField& F) {
  std::uint64_t S = 1;
  for (const auto& e : F.exceptional()) {
    std::uint64_t t = 0;
    for (auto w : e.weights) t += w;
    S = std::max(S, t);
  }
  return S;
}

}  // namespace

GammaElement decompose(const Section& f, std::size_t depth) {
  if (depth < 2) throw Error(ErrorKind::InvalidInput, "decomposition depth must be at least 2");
  FieldElement h = section_to_field(f);
  const auto& F = *f.field();
  const std::uint64_t M = h.max_finite().value_or(ExtNat(0)).value();
  const std::uint64_t S = max_weight_sum(F);
  // Past K0 every finite value is reproduced and every infinite one keeps growing.
  const std::uint64_t K0 = std::max<std::uint64_t>(
      chain_depth(with_exceptional(f.field(), f.sub().join(h.base().sub())), ExtNat(M)), S * M + 1);
  GammaElement out;
  out.sup = f;
  for (std::size_t j = 0; j < depth; ++j)
    out.chain.push_back(pcs_from_element(field_shrink(h, static_cast<unsigned>(K0 + j * S))));
  return out;
}

Section chain_sup(const std::vector<Section>& chain, const Subdivision& target) {
  if (chain.empty()) throw Error(ErrorKind::InvalidInput, "empty chain");
  const FieldPtr& F = chain.front().field();
  Subdivision sub = with_exceptional(F, target);
  const Section& last = chain.back();
  const Section& prev = chain.size() > 1 ? chain[chain.size() - 2] : last;
  CellMap<std::optional<Tuple>> v(sub, std::nullopt);
  for_each_cell(sub, [&](CellRef c) {
    Site s = cell_site(sub, c);
    auto a = prev.at(s);
    auto b = last.at(s);
    if (!a || !b) return;
    Tuple t = *b;
    for (std::size_t i = 0; i < t.size(); ++i)
      if ((*a)[i] != (*b)[i]) t[i] = kInf;
    v.at(c) = std::move(t);
  });
  return Section(F, std::move(sub), std::move(v));
}

FieldElement realize(const Section& f, const PCSection& g) {
  Section G = pcs_eval(g);
  if (!section_waybelow(f, G)) throw Error(ErrorKind::Precondition, "section is not way below the PCS evaluation");
  FieldElement h = section_to_field(G);
  if (!section_leq(f, induced_section(h))) throw Error(ErrorKind::Precondition, "realization does not dominate f");
  return h;
}

PCSection directed_join(const PCSection& h1, const PCSection& h2, const Section& f) {
  Section e1 = pcs_eval(h1);
  Section e2 = pcs_eval(h2);
  FieldElement F = section_to_field(f);
  const unsigned K = std::max(field_shrink_depth(section_to_field(e1), F), field_shrink_depth(section_to_field(e2), F));
  for (unsigned k = 1; k <= K; ++k) {
    Section sk = induced_section(field_shrink(F, k));
    if (!section_leq(e1, sk) || !section_leq(e2, sk)) continue;
    PCSection g = pcs_from_element(field_shrink(F, k + 1));
    Section eg = pcs_eval(g);
    if (!section_waybelow(e1, eg) || !section_waybelow(e2, eg) || !section_waybelow(eg, f))
      throw Error(ErrorKind::Precondition, "interpolant check failed at shrink index " + std::to_string(k + 1));
    return g;
  }
  throw Error(ErrorKind::Precondition, "inputs are not both way below f");
}

CellSet extend_nbhd(const FieldElement& s, const FieldElement& s_prime, const CellSet& V, const Section& f) {
  if (!field_waybelow(s_prime, s)) throw Error(ErrorKind::Precondition, "s' is not way below s");
  if (!section_leq(section_restrict(induced_section(s), V), section_restrict(f, V)))
    throw Error(ErrorKind::Precondition, "s exceeds f on V");
  const CellSet whole = CellSet::whole(f.sub());
  const DistanceField dist(whole, V.closure());
  const Q gap = f.sub().join(s.base().sub()).join(s_prime.base().sub()).join(V.sub).finest_gap();
  for (Q eps(1, 2); eps >= gap / Q(4); eps /= Q(2)) {
    CellSet W = dist.near(eps);
    if (field_waybelow(field_restrict(s_prime, W), section_to_field(section_restrict(f, W)))) return W;
  }
  throw Error(ErrorKind::NoEnlargement, "no neighbourhood of V down to radius " + to_string(gap / Q(4)));
}

FieldElement AlphaIso::inverse(const Section& f) const {
  GammaElement g = decompose(f, depth);
  std::vector<Section> approx;
  Section prev = induced_section(FieldElement::constant(f.field(), ExtNat(0)));
  for (const auto& p : g.chain) {
    prev = induced_section(realize(prev, p));
    approx.push_back(prev);
  }
  return section_to_field(chain_sup(approx, f.sub()));
}

std::vector<Section> gamma_basis(const FieldPtr& F, unsigned bound, unsigned den) {
  std::vector<Section> out;
  const Subdivision base(F->complex_ptr());
  for (const auto& h : field_basis(F, CellSet::whole(base), bound, den)) out.push_back(induced_section(h));

  // Two-set PCS sections on the first edge: U1 = X \ [c,d], U2 = (a,b).
  const auto& X = F->complex_ptr();
  const Q L = X->edge(0).length;
  const Q step = L / Q(static_cast<std::int64_t>(den));
  const std::vector<ExtNat> levels = {ExtNat(0), ExtNat(1), ExtNat(2), kInf};
  for (unsigned a = 0; a + 3 <= den; a += 2)
    for (unsigned b = a + 3; b <= den; b += 3) {
      const Q qa = step * Q(a), qb = step * Q(b);
      const Q qc = qa + step, qd = qb - step;
      CellSet U1 = cellset_from(X, {{0, qc, qd}}, {}, true).complement();
      CellSet U2 = cellset_from(X, {{0, qa, qb}}, {}, false);
      for (auto n1 : levels)
        for (auto n2 : levels)
          for (auto n12 : levels) {
            if (!(n1 <= n12) || !(n2 <= n12) || (n12.is_finite() && n12.value() > bound)) continue;
            if (n1 == n12 && n2 == n12) continue;
            try {
              PCSection p = pcs_make(F, {U1, U2}, {FieldElement::constant(F, n1), FieldElement::constant(F, n2)},
                                     {{{0, 1}, FieldElement::constant(F, n12)}});
              out.push_back(pcs_eval(p));
            } catch (const Error&) {
              // Exceptional points can make a configuration discontinuous.
            }
          }
    }
  return out;
}

}  // namespace cusheaf
