#include "cusheaf/models.hpp"

#include <set>

namespace cusheaf {

namespace {

std::vector<ExtNat> nonzero_values(unsigned bound) {
  std::vector<ExtNat> out;
  for (unsigned v = 1; v <= bound; ++v) out.emplace_back(v);
  out.push_back(kInf);
  return out;
}

class Dedup {
 public:
  template <class T>
  void add(std::vector<T>& out, T x) {
    if (seen_.insert(x.describe()).second) out.push_back(std::move(x));
  }

 private:
  std::set<std::string> seen_;
};

}  // namespace

std::vector<StepFn> stepfn_basis(const ComplexPtr& X, unsigned bound, unsigned den) {
  if (den == 0) den = 1;
  std::vector<StepFn> out;
  Dedup dd;
  const Subdivision plain(X);
  for (unsigned c = 0; c <= bound; ++c) dd.add(out, StepFn::constant(X, c));
  dd.add(out, StepFn::constant(X, kInf));
  const auto values = nonzero_values(bound);
  const std::int64_t n = den;

  for (std::size_t e = 0; e < X->edge_count(); ++e) {
    Q L = X->edge(e).length;
    for (std::int64_t i = 0; i < n; ++i)
      for (std::int64_t j = i + 1; j <= n; ++j) {
        CellSet open = cellset_from(X, {{e, L * Q(i, n), L * Q(j, n)}}, {}, false);
        for (auto v : values) dd.add(out, StepFn::indicator(open, v));
      }
  }
  for (std::size_t v = 0; v < X->vertex_count(); ++v) {
    if (X->incident(v).empty()) continue;
    for (std::int64_t j = 1; j <= 2 && j < n; ++j) {
      std::vector<Interval> arms;
      for (const auto& end : X->incident(v)) {
        Q L = X->edge(end.edge).length;
        Q r = L * Q(j, n);
        arms.push_back(end.at_start ? Interval{end.edge, Q(0), r} : Interval{end.edge, L - r, L});
      }
      CellSet star = cellset_from(X, arms, {Site::vertex(v)}, false);
      for (auto val : values) dd.add(out, StepFn::indicator(star, val));
    }
  }
  std::vector<Site> grid;
  for (std::size_t v = 0; v < X->vertex_count(); ++v) grid.push_back(Site::vertex(v));
  for (std::size_t e = 0; e < X->edge_count(); ++e)
    for (std::int64_t i = 1; i < n; ++i) grid.push_back(Site::on_edge(e, X->edge(e).length * Q(i, n)));
  for (const auto& p : grid) {
    CellSet hole = cellset_from(X, {}, {p}, false).complement();
    for (auto val : values) dd.add(out, StepFn::indicator(hole, val));
  }
  const std::int64_t coarse = std::max<std::int64_t>(1, n / 2);
  std::vector<StepFn> bumps;
  for (std::size_t e = 0; e < X->edge_count(); ++e) {
    Q L = X->edge(e).length;
    for (std::int64_t i = 0; i < coarse; ++i)
      for (std::int64_t j = i + 1; j <= coarse; ++j)
        bumps.push_back(StepFn::indicator(cellset_from(X, {{e, L * Q(i, coarse), L * Q(j, coarse)}}, {}, false)));
  }
  for (std::size_t a = 0; a < bumps.size(); ++a)
    for (std::size_t b = a + 1; b < bumps.size(); ++b) dd.add(out, stepfn_add(bumps[a], bumps[b]));
  check_enumeration_size(out.size());
  return out;
}

std::vector<StepFn> stepfn_basis(const CellSet& patch, unsigned bound, unsigned den) {
  auto full = stepfn_basis(patch.sub.complex_ptr(), bound, den);
  if (patch.same_as(CellSet::whole(patch.sub))) return full;
  std::vector<StepFn> out;
  Dedup dd;
  for (const auto& f : full) dd.add(out, restrict(f, patch));
  return out;
}

std::vector<Tuple> admissible_tuples(const ExceptionalPoint& e, ExtNat limit, unsigned bound) {
  const std::size_t k = e.arity();
  std::vector<Tuple> out{Tuple(k, ExtNat(0))};
  std::vector<Tuple> fit;
  Tuple a(k, ExtNat(0));
  // Odometer over {0..bound}^k.
  while (true) {
    if (fuse(e, a) <= limit) fit.push_back(a);
    std::size_t i = 0;
    while (i < k && a[i].value() == bound) a[i++] = ExtNat(0);
    if (i == k) break;
    a[i] = ExtNat(a[i].value() + 1);
  }
  for (const auto& t : fit) {
    bool maximal = true;
    for (std::size_t i = 0; i < k && maximal; ++i) {
      if (t[i].value() == bound) continue;
      Tuple up = t;
      up[i] = ExtNat(t[i].value() + 1);
      if (fuse(e, up) <= limit) maximal = false;
    }
    if (maximal && t != out.front()) out.push_back(t);
  }
  if (limit.is_inf()) {
    out.push_back(Tuple(k, kInf));
    for (std::size_t i = 0; i < k; ++i) {
      Tuple u(k, ExtNat(0));
      u[i] = kInf;
      out.push_back(u);
    }
  }
  return out;
}

std::vector<FieldElement> field_basis(const FieldPtr& F, const CellSet& patch, unsigned bound, unsigned den) {
  std::vector<FieldElement> out;
  Dedup dd;
  const auto& ex = F->exceptional();
  for (const auto& base : stepfn_basis(patch, bound, den)) {
    std::vector<std::pair<std::size_t, std::vector<Tuple>>> options;
    std::size_t combos = 1;
    for (std::size_t i = 0; i < ex.size(); ++i) {
      if (!base.at(ex[i].site())) continue;
      options.emplace_back(i, admissible_tuples(ex[i], *base.limit_min(ex[i].site()), bound));
      combos = std::max(combos, options.back().second.size());
    }
    // Diagonal combinations keep the basis linear in the number of points.
    for (std::size_t j = 0; j < combos; ++j) {
      std::map<std::size_t, Tuple> tuples;
      for (const auto& [i, opts] : options) tuples[i] = opts[std::min(j, opts.size() - 1)];
      dd.add(out, FieldElement(F, base, std::move(tuples)));
    }
    check_enumeration_size(out.size());
  }
  return out;
}

std::vector<ExtNat> ExtNatModel::basis(unsigned bound, unsigned) const {
  std::vector<ExtNat> out;
  for (unsigned v = 0; v <= bound; ++v) out.emplace_back(v);
  out.push_back(kInf);
  return out;
}

std::vector<Tuple> ProductModel::basis(unsigned bound, unsigned) const {
  std::vector<ExtNat> vals = ExtNatModel().basis(bound, 0);
  std::vector<Tuple> out{Tuple()};
  for (std::size_t i = 0; i < k_; ++i) {
    std::vector<Tuple> next;
    for (const auto& t : out)
      for (auto v : vals) {
        Tuple u = t;
        u.push_back(v);
        next.push_back(std::move(u));
      }
    out = std::move(next);
    check_enumeration_size(out.size());
  }
  return out;
}

Tuple ProductModel::shrink(const Tuple& a, unsigned k) const {
  Tuple out = a;
  for (auto& x : out) x = ExtNatModel().shrink(x, k);
  return out;
}

unsigned ProductModel::chain_bound(const Tuple& c, const Tuple& x) const {
  unsigned k = 1;
  for (std::size_t i = 0; i < c.size(); ++i) k = std::max(k, ExtNatModel().chain_bound(c[i], x[i]));
  return k;
}

StepModel::StepModel(CellSet patch, std::string label) : patch_(std::move(patch)), label_(std::move(label)) {
  if (!patch_.is_closed() || !patch_.has_segment())
    throw Error(ErrorKind::InvalidPatch, "patch must be closed with nonempty interior");
}

StepModel StepModel::whole(const ComplexPtr& X, std::string label) {
  return StepModel(CellSet::whole(Subdivision(X)), std::move(label));
}

FieldModel::FieldModel(FieldPtr field, CellSet patch, std::string label)
    : field_(std::move(field)), patch_(std::move(patch)), label_(std::move(label)) {
  if (!patch_.is_closed() || !patch_.has_segment())
    throw Error(ErrorKind::InvalidPatch, "patch must be closed with nonempty interior");
}

unsigned StepModel::sum_chain_bound(const StepFn& c, const StepFn& x, const StepFn& y) const {
  return chain_depth(c.sub().join(x.sub()).join(y.sub()), c.data().max_finite().value_or(ExtNat(0)));
}

unsigned FieldModel::sum_chain_bound(const FieldElement& c, const FieldElement& x, const FieldElement& y) const {
  Subdivision sub = c.base().sub().join(x.base().sub()).join(y.base().sub()).with_cuts(field_->exceptional_cuts());
  return chain_depth(sub, c.max_finite().value_or(ExtNat(0)));
}

FieldElement FieldModel::zero() const {
  return FieldElement::lift(field_, StepFn::constant_on(patch_, ExtNat(0)));
}

}  // namespace cusheaf
