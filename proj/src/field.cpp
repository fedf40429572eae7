#include "cusheaf/field.hpp"

#include "cusheaf/error.hpp"

#include <algorithm>
#include <sstream>

namespace cusheaf {

ExtNat fuse(const ExceptionalPoint& e, const Tuple& a) {
  ExtNat s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += ExtNat(e.weights[i]) * a[i];
  return s;
}

FieldPtr ModelField::make(ComplexPtr X, std::vector<ExceptionalPoint> exceptional) {
  for (std::size_t i = 0; i < exceptional.size(); ++i) {
    const auto& e = exceptional[i];
    if (e.edge >= X->edge_count()) throw Error(ErrorKind::InvalidInput, "exceptional point on unknown edge");
    if (!(e.pos > Q(0) && e.pos < X->edge(e.edge).length))
      throw Error(ErrorKind::InvalidInput, "exceptional point must lie strictly inside an edge",
                  describe(*X, make_site(*X, e.edge, std::clamp(e.pos, Q(0), X->edge(e.edge).length))));
    if (e.arity() < 2) throw Error(ErrorKind::InvalidInput, "exceptional fiber arity must be at least 2");
    for (auto w : e.weights)
      if (w == 0) throw Error(ErrorKind::InvalidInput, "fusion weights must be positive", describe(*X, e.site()));
    for (std::size_t j = 0; j < i; ++j)
      if (exceptional[j].site() == e.site())
        throw Error(ErrorKind::InvalidInput, "coincident exceptional points", describe(*X, e.site()));
  }
  auto f = std::make_shared<ModelField>();
  f->X_ = std::move(X);
  f->ex_ = std::move(exceptional);
  return f;
}

FieldPtr ModelField::trivial(ComplexPtr X) { return make(std::move(X), {}); }

std::optional<std::size_t> ModelField::exceptional_at(const Site& s) const {
  for (std::size_t i = 0; i < ex_.size(); ++i)
    if (ex_[i].site() == s) return i;
  return std::nullopt;
}

std::vector<std::pair<std::size_t, Q>> ModelField::exceptional_cuts() const {
  std::vector<std::pair<std::size_t, Q>> out;
  for (const auto& e : ex_) out.emplace_back(e.edge, e.pos);
  return out;
}

bool ModelField::same_as(const ModelField& other) const {
  if (ex_.size() != other.ex_.size()) return false;
  if (X_ != other.X_ && !X_->same_shape(*other.X_)) return false;
  for (std::size_t i = 0; i < ex_.size(); ++i)
    if (!(ex_[i].site() == other.ex_[i].site()) || ex_[i].weights != other.ex_[i].weights) return false;
  return true;
}

namespace {

void require_same_field(const FieldElement& a, const FieldElement& b) {
  if (a.field() != b.field() && !a.field()->same_as(*b.field()))
    throw Error(ErrorKind::ComplexMismatch, "elements belong to different fields");
}

/// Replace the base value at each listed exceptional point.
StepFn with_point_values(const StepFn& base, const std::vector<std::pair<Site, ExtNat>>& values) {
  if (values.empty()) return base;
  std::vector<std::pair<std::size_t, Q>> cuts;
  for (const auto& [s, v] : values) cuts.emplace_back(s.index, s.t);
  CellFunction d = base.data().refined(base.sub().with_cuts(cuts));
  for (const auto& [s, v] : values) d.v.points[*d.sub.point_at(s)] = v;
  return StepFn(std::move(d));
}

}  // namespace

FieldElement::FieldElement(FieldPtr field, const StepFn& base, std::map<std::size_t, Tuple> tuples)
    : field_(std::move(field)), tuples_(std::move(tuples)) {
  if (&base.complex() != field_->complex_ptr().get() && !base.complex().same_shape(field_->complex()))
    throw Error(ErrorKind::ComplexMismatch, "base function lives on a different complex");
  const auto& ex = field_->exceptional();
  std::vector<std::pair<Site, ExtNat>> fused;
  for (std::size_t i = 0; i < ex.size(); ++i) {
    bool inside = base.at(ex[i].site()).has_value();
    auto it = tuples_.find(i);
    if (!inside) {
      if (it != tuples_.end())
        throw Error(ErrorKind::InvalidInput, "tuple given at an exceptional point outside the domain",
                    cusheaf::describe(field_->complex(), ex[i].site()));
      continue;
    }
    if (it == tuples_.end())
      throw Error(ErrorKind::InvalidInput, "missing tuple at exceptional point",
                  cusheaf::describe(field_->complex(), ex[i].site()));
    if (it->second.size() != ex[i].arity())
      throw Error(ErrorKind::InvalidInput, "tuple arity does not match the fiber",
                  cusheaf::describe(field_->complex(), ex[i].site()));
    fused.emplace_back(ex[i].site(), fuse(ex[i], it->second));
  }
  try {
    base_ = with_point_values(base, fused);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotLsc) throw;
    throw Error(ErrorKind::NotLsc, "fused tuple exceeds a directional limit at " + e.witness(), e.witness());
  }
}

FieldElement FieldElement::lift(FieldPtr field, const StepFn& f) {
  std::map<std::size_t, Tuple> tuples;
  const auto& ex = field->exceptional();
  for (std::size_t i = 0; i < ex.size(); ++i)
    if (f.at(ex[i].site())) tuples[i] = Tuple(ex[i].arity(), ExtNat(0));
  return FieldElement(std::move(field), f, std::move(tuples));
}

FieldElement FieldElement::constant(FieldPtr field, ExtNat c) {
  StepFn base = StepFn::constant(field->complex_ptr(), c);
  std::map<std::size_t, Tuple> tuples;
  const auto& ex = field->exceptional();
  for (std::size_t i = 0; i < ex.size(); ++i) {
    std::uint64_t total = 0;
    for (auto w : ex[i].weights) total += w;
    tuples[i] = Tuple(ex[i].arity(), c.is_inf() ? kInf : ExtNat(c.value() / total));
  }
  return FieldElement(std::move(field), base, std::move(tuples));
}

Tuple FieldElement::fiber(const Site& s) const {
  if (auto i = field_->exceptional_at(s)) {
    auto it = tuples_.find(*i);
    if (it == tuples_.end()) throw Error(ErrorKind::InvalidInput, "site outside the domain");
    return it->second;
  }
  auto v = base_.at(s);
  if (!v) throw Error(ErrorKind::InvalidInput, "site outside the domain");
  return {*v};
}

bool FieldElement::bounded() const {
  if (!base_.bounded()) return false;
  for (const auto& [i, a] : tuples_)
    for (const auto& x : a)
      if (x.is_inf()) return false;
  return true;
}

std::optional<ExtNat> FieldElement::max_finite() const {
  auto m = base_.data().max_finite();
  for (const auto& [i, a] : tuples_)
    for (const auto& x : a)
      if (x.is_finite()) m = m ? max(*m, x) : x;
  return m;
}

std::string FieldElement::describe() const {
  std::ostringstream os;
  os << base_.describe();
  for (const auto& [i, a] : tuples_) os << " @" << cusheaf::describe(field_->complex(), field_->exceptional()[i].site())
                                        << "=" << tuple_str(a);
  return os.str();
}

FieldElement field_add(const FieldElement& a, const FieldElement& b) {
  require_same_field(a, b);
  auto tuples = a.tuples();
  for (auto& [i, t] : tuples) t = tuple_add(t, b.tuples().at(i));
  return FieldElement(a.field(), stepfn_add(a.base(), b.base()), std::move(tuples));
}

bool field_leq(const FieldElement& a, const FieldElement& b) {
  require_same_field(a, b);
  if (!stepfn_leq(a.base(), b.base())) return false;
  for (const auto& [i, t] : a.tuples())
    if (!tuple_leq(t, b.tuples().at(i))) return false;
  return true;
}

bool field_equal(const FieldElement& a, const FieldElement& b) {
  require_same_field(a, b);
  return stepfn_equal(a.base(), b.base()) && a.tuples() == b.tuples();
}

std::optional<std::string> field_waybelow_witness(const FieldElement& a, const FieldElement& b) {
  require_same_field(a, b);
  if (auto w = stepfn_waybelow_witness(a.base(), b.base())) return w;
  for (const auto& [i, t] : a.tuples())
    if (!tuple_waybelow(t, b.tuples().at(i)))
      return "fiber " + tuple_str(t) + " not way-below " + tuple_str(b.tuples().at(i)) + " at " +
             describe(a.field()->complex(), a.field()->exceptional()[i].site());
  return std::nullopt;
}

bool field_waybelow(const FieldElement& a, const FieldElement& b) { return !field_waybelow_witness(a, b); }

FieldElement field_restrict(const FieldElement& a, const CellSet& patch) {
  StepFn base = restrict(a.base(), patch);
  std::map<std::size_t, Tuple> tuples;
  for (const auto& [i, t] : a.tuples())
    if (base.at(a.field()->exceptional()[i].site())) tuples[i] = t;
  return FieldElement(a.field(), base, std::move(tuples));
}

FieldElement field_shrink(const FieldElement& a, unsigned k) {
  if (k == 0) throw Error(ErrorKind::InvalidInput, "shrink index must be positive");
  const auto& ex = a.field()->exceptional();
  const Q r(1, static_cast<std::int64_t>(k));
  const ExtNat cap = max(ExtNat(k), a.max_finite().value_or(ExtNat(0)));

  CellFunction d = ball_min(a.base(), r).data();
  for (auto& x : d.v.points)
    if (x) x = min(*x, cap);
  for (auto& x : d.v.segs)
    if (x) x = min(*x, cap);
  StepFn capped(d);

  std::map<std::size_t, Tuple> tuples;
  std::vector<std::pair<std::size_t, ExtNat>> collars;
  for (const auto& [i, t] : a.tuples()) {
    const auto& e = ex[i];
    ExtNat limit = *capped.limit_min(e.site());
    Tuple best(t.size(), ExtNat(0));
    for (std::uint64_t level = cap.value();; --level) {
      Tuple trial(t.size());
      for (std::size_t j = 0; j < t.size(); ++j) trial[j] = min(min(t[j], cap), ExtNat(level));
      if (fuse(e, trial) <= limit) {
        best = trial;
        break;
      }
      if (level == 0) break;
    }
    collars.emplace_back(i, fuse(e, best));
    tuples[i] = std::move(best);
  }

  // Lower the base to the fused value on the closed 1/k-ball around each point.
  const CellSet dom = capped.domain();
  CellFunction out = capped.data();
  for (const auto& [i, v] : collars) {
    Subdivision marked = out.sub.with_cuts({{ex[i].edge, ex[i].pos}});
    CellSet target = CellSet::empty(marked);
    target.in.points[*marked.point_at(ex[i].site())] = true;
    CellSet ball = DistanceField(dom.refined(marked), target).near(r);
    Subdivision fine = out.sub.join(ball.sub);
    out = out.refined(fine);
    auto mask = transfer(ball.sub, ball.in, fine);
    for (std::size_t p = 0; p < fine.point_count(); ++p)
      if (mask.points[p] && out.v.points[p]) out.v.points[p] = min(*out.v.points[p], v);
    for (std::size_t s = 0; s < fine.segment_count(); ++s)
      if (mask.segs[s] && out.v.segs[s]) out.v.segs[s] = min(*out.v.segs[s], v);
  }
  return FieldElement(a.field(), StepFn(std::move(out)), std::move(tuples));
}

unsigned field_shrink_depth(const FieldElement& a, const FieldElement& b) {
  Subdivision sub = a.base().sub().join(b.base().sub()).with_cuts(a.field()->exceptional_cuts());
  return chain_depth(sub, a.max_finite().value_or(ExtNat(0)));
}

}  // namespace cusheaf
