#include "cusheaf/stepfn.hpp"

#include "cusheaf/error.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace cusheaf {

CellSet CellFunction::domain() const {
  CellMap<bool> m(sub, false);
  for (std::size_t p = 0; p < sub.point_count(); ++p) m.points[p] = v.points[p].has_value();
  for (std::size_t s = 0; s < sub.segment_count(); ++s) m.segs[s] = v.segs[s].has_value();
  return CellSet(sub, std::move(m));
}

std::optional<std::size_t> CellFunction::lsc_violation() const {
  for (std::size_t p = 0; p < sub.point_count(); ++p) {
    if (!v.points[p]) continue;
    for (auto s : sub.point_segments(p))
      if (v.segs[s] && *v.points[p] > *v.segs[s]) return p;
  }
  return std::nullopt;
}

void CellFunction::floor_to_lsc() {
  for (std::size_t p = 0; p < sub.point_count(); ++p) {
    if (!v.points[p]) continue;
    for (auto s : sub.point_segments(p))
      if (v.segs[s]) v.points[p] = min(*v.points[p], *v.segs[s]);
  }
}

void CellFunction::normalize(const std::vector<Site>& keep) {
  std::vector<std::vector<Q>> cuts(sub.complex().edge_count());
  bool dropped = false;
  for (std::size_t e = 0; e < cuts.size(); ++e) {
    const auto& c = sub.cuts(e);
    for (std::size_t j = 0; j < c.size(); ++j) {
      auto p = sub.cut_point(e, j);
      auto left = sub.segment(e, j), right = sub.segment(e, j + 1);
      bool same = v.segs[left] == v.segs[right] && v.points[p] == v.segs[left];
      bool pinned = std::find(keep.begin(), keep.end(), Site::on_edge(e, c[j])) != keep.end();
      if (same && !pinned) {
        dropped = true;
      } else {
        cuts[e].push_back(c[j]);
      }
    }
  }
  if (!dropped) return;
  Subdivision coarse(sub.complex_ptr(), std::move(cuts));
  v = transfer(sub, v, coarse);
  sub = std::move(coarse);
}

std::vector<ExtNat> CellFunction::values() const {
  std::set<ExtNat> vals;
  for (const auto& x : v.points)
    if (x) vals.insert(*x);
  for (const auto& x : v.segs)
    if (x) vals.insert(*x);
  return {vals.begin(), vals.end()};
}

std::optional<ExtNat> CellFunction::max_finite() const {
  std::optional<ExtNat> best;
  for (const auto& x : values())
    if (x.is_finite()) best = x;
  return best;
}

bool CellFunction::has_inf() const {
  auto vals = values();
  return !vals.empty() && vals.back().is_inf();
}

std::pair<CellFunction, CellFunction> align(const CellFunction& f, const CellFunction& g, bool same_domain) {
  if (f.sub.complex_ptr() != g.sub.complex_ptr() && !f.sub.complex().same_shape(g.sub.complex()))
    throw Error(ErrorKind::ComplexMismatch, "functions live on different complexes");
  Subdivision fine = f.sub.join(g.sub);
  CellFunction a = f.sub.same_cuts(fine) ? f : f.refined(fine);
  CellFunction b = g.sub.same_cuts(fine) ? g : g.refined(fine);
  if (same_domain) {
    for (std::size_t p = 0; p < fine.point_count(); ++p)
      if (a.v.points[p].has_value() != b.v.points[p].has_value())
        throw Error(ErrorKind::DomainMismatch, "functions have different domains", fine.describe_point(p));
    for (std::size_t s = 0; s < fine.segment_count(); ++s)
      if (a.v.segs[s].has_value() != b.v.segs[s].has_value())
        throw Error(ErrorKind::DomainMismatch, "functions have different domains", fine.describe_segment(s));
  }
  return {std::move(a), std::move(b)};
}

StepFn::StepFn(CellFunction data, LscMode mode) : data_(std::move(data)) {
  if (!data_.domain().is_closed()) throw Error(ErrorKind::InvalidPatch, "domain of a step function must be closed");
  if (mode == LscMode::Floor) data_.floor_to_lsc();
  if (auto p = data_.lsc_violation())
    throw Error(ErrorKind::NotLsc, "value at " + data_.sub.describe_point(*p) + " exceeds a directional limit",
                data_.sub.describe_point(*p));
  data_.normalize();
}

StepFn StepFn::constant(const ComplexPtr& X, ExtNat c) { return StepFn(CellFunction(Subdivision(X), c)); }

StepFn StepFn::constant_on(const CellSet& domain, ExtNat c) {
  CellFunction f(domain.sub, std::nullopt);
  for (std::size_t p = 0; p < domain.sub.point_count(); ++p)
    if (domain.in.points[p]) f.v.points[p] = c;
  for (std::size_t s = 0; s < domain.sub.segment_count(); ++s)
    if (domain.in.segs[s]) f.v.segs[s] = c;
  return StepFn(std::move(f));
}

StepFn StepFn::indicator(const CellSet& open_set, ExtNat c) {
  if (!open_set.is_open()) throw Error(ErrorKind::InvalidInput, "indicator of a non-open set is not lsc");
  CellFunction f(open_set.sub, ExtNat(0));
  for (std::size_t p = 0; p < open_set.sub.point_count(); ++p)
    if (open_set.in.points[p]) f.v.points[p] = c;
  for (std::size_t s = 0; s < open_set.sub.segment_count(); ++s)
    if (open_set.in.segs[s]) f.v.segs[s] = c;
  return StepFn(std::move(f));
}

std::optional<ExtNat> StepFn::limit_min(const Site& s) const {
  auto c = data_.sub.locate(s);
  if (!c.is_point) return data_.v.segs[c.index];
  std::optional<ExtNat> best;
  for (auto seg : data_.sub.point_segments(c.index))
    if (auto x = data_.v.segs[seg]) best = best ? min(*best, *x) : *x;
  return best;
}

CellSet StepFn::superlevel(ExtNat n) const {
  CellMap<bool> m(data_.sub, false);
  for (std::size_t p = 0; p < data_.sub.point_count(); ++p)
    m.points[p] = data_.v.points[p] && *data_.v.points[p] >= n;
  for (std::size_t s = 0; s < data_.sub.segment_count(); ++s)
    m.segs[s] = data_.v.segs[s] && *data_.v.segs[s] >= n;
  return CellSet(data_.sub, std::move(m));
}

std::string StepFn::describe() const {
  std::ostringstream os;
  const auto& sub = data_.sub;
  bool first = true;
  for (std::size_t s = 0; s < sub.segment_count(); ++s) {
    if (!data_.v.segs[s]) continue;
    os << (std::exchange(first, false) ? "" : " ") << sub.describe_segment(s) << "=" << *data_.v.segs[s];
  }
  for (std::size_t p = 0; p < sub.point_count(); ++p) {
    if (!data_.v.points[p]) continue;
    // Only report points whose value differs from an adjacent segment.
    bool notable = true;
    for (auto s : sub.point_segments(p))
      if (data_.v.segs[s] && *data_.v.segs[s] == *data_.v.points[p]) notable = false;
    for (auto s : sub.point_segments(p))
      if (data_.v.segs[s] && *data_.v.segs[s] != *data_.v.points[p]) notable = true;
    if (notable) os << " @" << sub.describe_point(p) << "=" << *data_.v.points[p];
  }
  return os.str();
}

StepFn stepfn_make(const ComplexPtr& X, const std::vector<Piece>& pieces, const std::vector<PointValue>& points,
                   LscMode mode) {
  std::vector<std::pair<std::size_t, Q>> cuts;
  for (const auto& pc : pieces) {
    if (pc.edge >= X->edge_count()) throw Error(ErrorKind::InvalidInput, "piece on unknown edge");
    if (!(pc.from < pc.to) || pc.from < Q(0) || pc.to > X->edge(pc.edge).length)
      throw Error(ErrorKind::InvalidInput, "piece (" + to_string(pc.from) + "," + to_string(pc.to) +
                                               ") is not a subinterval of edge " + X->edge(pc.edge).id);
    cuts.emplace_back(pc.edge, pc.from);
    cuts.emplace_back(pc.edge, pc.to);
  }
  for (const auto& pv : points)
    if (!pv.site.is_vertex) cuts.emplace_back(pv.site.index, pv.site.t);
  Subdivision sub = Subdivision(X).with_cuts(cuts);

  CellFunction f(sub, std::nullopt);
  auto covering = [&](const Site& site) {
    std::optional<ExtNat> val;
    if (site.is_vertex) return val;
    for (const auto& pc : pieces) {
      if (pc.edge != site.index || !(pc.from < site.t && site.t < pc.to)) continue;
      if (val && *val != pc.value)
        throw Error(ErrorKind::InvalidInput, "overlapping pieces disagree at " + describe(*X, site),
                    describe(*X, site));
      val = pc.value;
    }
    return val;
  };
  for (std::size_t s = 0; s < sub.segment_count(); ++s) {
    auto val = covering(sub.segment_midpoint(s));
    if (!val)
      throw Error(ErrorKind::CoverGap, "no piece covers " + sub.describe_segment(s), sub.describe_segment(s));
    f.v.segs[s] = val;
  }
  for (const auto& pv : points) {
    auto p = sub.point_at(pv.site);
    if (f.v.points[*p] && *f.v.points[*p] != pv.value)
      throw Error(ErrorKind::InvalidInput, "conflicting point values at " + describe(*X, pv.site));
    f.v.points[*p] = pv.value;
  }
  // Unlisted points take the interior piece value, or the largest lsc-compatible value.
  for (std::size_t p = 0; p < sub.point_count(); ++p) {
    if (f.v.points[p]) continue;
    if (auto val = covering(sub.point_site(p))) {
      f.v.points[p] = val;
      continue;
    }
    std::optional<ExtNat> lo;
    for (auto s : sub.point_segments(p)) lo = lo ? min(*lo, *f.v.segs[s]) : *f.v.segs[s];
    f.v.points[p] = lo ? *lo : ExtNat(0);
  }
  return StepFn(std::move(f), mode);
}

namespace {

template <class Op>
CellFunction pointwise(const CellFunction& f, const CellFunction& g, Op op) {
  auto [a, b] = align(f, g);
  for (std::size_t p = 0; p < a.sub.point_count(); ++p)
    if (a.v.points[p]) a.v.points[p] = op(*a.v.points[p], *b.v.points[p]);
  for (std::size_t s = 0; s < a.sub.segment_count(); ++s)
    if (a.v.segs[s]) a.v.segs[s] = op(*a.v.segs[s], *b.v.segs[s]);
  return a;
}

template <class Pred>
bool all_cells(const CellFunction& f, const CellFunction& g, Pred pred) {
  auto [a, b] = align(f, g);
  for (std::size_t p = 0; p < a.sub.point_count(); ++p)
    if (a.v.points[p] && !pred(*a.v.points[p], *b.v.points[p])) return false;
  for (std::size_t s = 0; s < a.sub.segment_count(); ++s)
    if (a.v.segs[s] && !pred(*a.v.segs[s], *b.v.segs[s])) return false;
  return true;
}

}  // namespace

StepFn stepfn_add(const StepFn& f, const StepFn& g) {
  return StepFn(pointwise(f.data(), g.data(), [](ExtNat x, ExtNat y) { return x + y; }));
}

StepFn stepfn_product(const StepFn& f, const StepFn& g) {
  return StepFn(pointwise(f.data(), g.data(), [](ExtNat x, ExtNat y) { return x * y; }));
}

bool stepfn_leq(const StepFn& f, const StepFn& g) {
  return all_cells(f.data(), g.data(), [](ExtNat x, ExtNat y) { return x <= y; });
}

bool stepfn_equal(const StepFn& f, const StepFn& g) {
  return all_cells(f.data(), g.data(), [](ExtNat x, ExtNat y) { return x == y; });
}

std::optional<std::string> stepfn_waybelow_witness(const StepFn& f, const StepFn& g) {
  auto [a, b] = align(f.data(), g.data());
  if (a.has_inf()) return std::string("f takes the value inf, which is never compactly contained");
  const auto& sub = a.sub;
  for (const auto& n : a.values()) {
    if (n == ExtNat(0)) continue;
    CellMap<bool> level(sub, false);
    for (std::size_t p = 0; p < sub.point_count(); ++p) level.points[p] = a.v.points[p] && *a.v.points[p] >= n;
    for (std::size_t s = 0; s < sub.segment_count(); ++s) level.segs[s] = a.v.segs[s] && *a.v.segs[s] >= n;
    CellSet closed = CellSet(sub, level).closure();
    for (std::size_t p = 0; p < sub.point_count(); ++p)
      if (closed.in.points[p] && !(*b.v.points[p] >= n))
        return "closure({f≥" + n.str() + "}) ⊄ {g≥" + n.str() + "} at " + sub.describe_point(p);
    for (std::size_t s = 0; s < sub.segment_count(); ++s)
      if (closed.in.segs[s] && !(*b.v.segs[s] >= n))
        return "closure({f≥" + n.str() + "}) ⊄ {g≥" + n.str() + "} on " + sub.describe_segment(s);
  }
  return std::nullopt;
}

bool stepfn_waybelow(const StepFn& f, const StepFn& g) { return !stepfn_waybelow_witness(f, g); }

StepFn restrict(const StepFn& f, const CellSet& patch) {
  if (!patch.is_closed() || !patch.has_segment())
    throw Error(ErrorKind::InvalidPatch, "patch must be closed with nonempty interior");
  if (!patch.subset_of(f.domain())) throw Error(ErrorKind::InvalidPatch, "patch is not inside the domain");
  Subdivision fine = f.sub().join(patch.sub);
  CellFunction out = f.data().refined(fine);
  auto mask = transfer(patch.sub, patch.in, fine);
  for (std::size_t p = 0; p < fine.point_count(); ++p)
    if (!mask.points[p]) out.v.points[p] = std::nullopt;
  for (std::size_t s = 0; s < fine.segment_count(); ++s)
    if (!mask.segs[s]) out.v.segs[s] = std::nullopt;
  return StepFn(std::move(out));
}

StepFn ball_min(const StepFn& f, const Q& r) {
  const auto vals = f.data().values();
  const CellSet dom = f.domain();
  if (vals.size() <= 1) return f;
  std::vector<CellSet> far;
  Subdivision fine = f.sub();
  for (std::size_t i = 1; i < vals.size(); ++i) {
    CellSet below = dom & f.superlevel(vals[i]).complement();
    far.push_back(DistanceField(dom, below).far(r));
    fine = fine.join(far.back().sub);
  }
  CellFunction out = f.data().refined(fine);
  std::vector<CellMap<bool>> masks;
  for (const auto& s : far) masks.push_back(transfer(s.sub, s.in, fine));
  auto eval = [&](CellRef c) -> ExtNat {
    ExtNat best = vals[0];
    for (std::size_t i = 0; i < masks.size(); ++i)
      if (masks[i].at(c)) best = vals[i + 1];
    return best;
  };
  for (std::size_t p = 0; p < fine.point_count(); ++p)
    if (out.v.points[p]) out.v.points[p] = eval({true, p});
  for (std::size_t s = 0; s < fine.segment_count(); ++s)
    if (out.v.segs[s]) out.v.segs[s] = eval({false, s});
  return StepFn(std::move(out));
}

StepFn shrink(const StepFn& f, unsigned k) {
  if (k == 0) throw Error(ErrorKind::InvalidInput, "shrink index must be positive");
  StepFn m = ball_min(f, Q(1, k));
  ExtNat cap = max(ExtNat(k), f.data().max_finite().value_or(ExtNat(0)));
  CellFunction out = m.data();
  for (auto& x : out.v.points)
    if (x) x = min(*x, cap);
  for (auto& x : out.v.segs)
    if (x) x = min(*x, cap);
  return StepFn(std::move(out));
}

unsigned chain_depth(const Subdivision& sub, ExtNat top) {
  Q inv = Q(2) / sub.finest_gap();
  auto k = static_cast<unsigned>((inv.numerator() + inv.denominator() - 1) / inv.denominator()) + 1;
  return std::max<unsigned>(k, static_cast<unsigned>(top.value()) + 1);
}

unsigned shrink_depth(const StepFn& f, const StepFn& g) {
  return chain_depth(f.sub().join(g.sub()), f.data().max_finite().value_or(ExtNat(0)));
}

}  // namespace cusheaf
