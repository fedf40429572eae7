#include "cusheaf/cells.hpp"

#include "cusheaf/error.hpp"

#include <algorithm>
#include <sstream>

namespace cusheaf {

Subdivision::Subdivision(ComplexPtr X) : X_(std::move(X)) {
  cuts_.resize(X_->edge_count());
  index();
}

Subdivision::Subdivision(ComplexPtr X, std::vector<std::vector<Q>> cuts) : X_(std::move(X)), cuts_(std::move(cuts)) {
  if (cuts_.size() != X_->edge_count()) throw Error(ErrorKind::InvalidInput, "cut table size mismatch");
  for (std::size_t e = 0; e < cuts_.size(); ++e) {
    auto& c = cuts_[e];
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    const Q L = X_->edge(e).length;
    c.erase(std::remove_if(c.begin(), c.end(), [&](const Q& t) { return t <= Q(0) || t >= L; }), c.end());
  }
  index();
}

void Subdivision::index() {
  const auto& X = *X_;
  cut_offset_.assign(X.edge_count(), 0);
  seg_offset_.assign(X.edge_count(), 0);
  point_site_.clear();
  seg_edge_.clear();
  seg_local_.clear();
  for (std::size_t v = 0; v < X.vertex_count(); ++v) point_site_.push_back(Site::vertex(v));
  for (std::size_t e = 0; e < X.edge_count(); ++e) {
    cut_offset_[e] = point_site_.size();
    for (const auto& t : cuts_[e]) point_site_.push_back(Site::on_edge(e, t));
    seg_offset_[e] = seg_edge_.size();
    for (std::size_t j = 0; j <= cuts_[e].size(); ++j) {
      seg_edge_.push_back(e);
      seg_local_.push_back(j);
    }
  }
  point_segs_.assign(point_site_.size(), {});
  for (std::size_t s = 0; s < seg_edge_.size(); ++s) {
    auto [a, b] = segment_ends(s);
    point_segs_[a].push_back(s);
    point_segs_[b].push_back(s);
  }
}

Q Subdivision::segment_start(std::size_t s) const {
  std::size_t e = seg_edge_[s], j = seg_local_[s];
  return j == 0 ? Q(0) : cuts_[e][j - 1];
}

Q Subdivision::segment_end(std::size_t s) const {
  std::size_t e = seg_edge_[s], j = seg_local_[s];
  return j == cuts_[e].size() ? X_->edge(e).length : cuts_[e][j];
}

Site Subdivision::segment_midpoint(std::size_t s) const {
  return Site::on_edge(seg_edge_[s], midpoint(segment_start(s), segment_end(s)));
}

std::pair<std::size_t, std::size_t> Subdivision::segment_ends(std::size_t s) const {
  std::size_t e = seg_edge_[s], j = seg_local_[s];
  const auto& edge = X_->edge(e);
  std::size_t a = j == 0 ? vertex_point(edge.from) : cut_point(e, j - 1);
  std::size_t b = j == cuts_[e].size() ? vertex_point(edge.to) : cut_point(e, j);
  return {a, b};
}

CellRef Subdivision::locate(const Site& s) const {
  if (s.is_vertex) return {true, s.index};
  const auto& c = cuts_.at(s.index);
  auto it = std::lower_bound(c.begin(), c.end(), s.t);
  auto j = static_cast<std::size_t>(it - c.begin());
  if (it != c.end() && *it == s.t) return {true, cut_point(s.index, j)};
  return {false, segment(s.index, j)};
}

std::optional<std::size_t> Subdivision::point_at(const Site& s) const {
  auto c = locate(s);
  if (c.is_point) return c.index;
  return std::nullopt;
}

bool Subdivision::refines(const Subdivision& coarse) const {
  for (std::size_t e = 0; e < cuts_.size(); ++e)
    if (!std::includes(cuts_[e].begin(), cuts_[e].end(), coarse.cuts_[e].begin(), coarse.cuts_[e].end()))
      return false;
  return true;
}

Subdivision Subdivision::with_cuts(const std::vector<std::pair<std::size_t, Q>>& extra) const {
  if (extra.empty()) return *this;
  auto cuts = cuts_;
  for (const auto& [e, t] : extra) cuts.at(e).push_back(t);
  return Subdivision(X_, std::move(cuts));
}

Subdivision Subdivision::join(const Subdivision& other) const {
  if (X_ != other.X_ && !X_->same_shape(*other.X_))
    throw Error(ErrorKind::ComplexMismatch, "subdivisions live on different complexes");
  auto cuts = cuts_;
  bool changed = false;
  for (std::size_t e = 0; e < cuts.size(); ++e) {
    if (other.cuts_[e].empty()) continue;
    changed = true;
    cuts[e].insert(cuts[e].end(), other.cuts_[e].begin(), other.cuts_[e].end());
  }
  if (!changed) return *this;
  return Subdivision(X_, std::move(cuts));
}

Q Subdivision::finest_gap() const {
  if (seg_edge_.empty()) return Q(1);
  Q best = segment_length(0);
  for (std::size_t s = 1; s < seg_edge_.size(); ++s) best = std::min(best, segment_length(s));
  return best;
}

std::string Subdivision::describe_point(std::size_t p) const { return describe(*X_, point_site_[p]); }

std::string Subdivision::describe_segment(std::size_t s) const {
  return X_->edge(seg_edge_[s]).id + ":(" + to_string(segment_start(s)) + "," + to_string(segment_end(s)) + ")";
}

bool CellSet::has_segment() const {
  return std::any_of(in.segs.begin(), in.segs.end(), [](bool b) { return b; });
}

bool CellSet::is_empty() const {
  return !has_segment() && std::none_of(in.points.begin(), in.points.end(), [](bool b) { return b; });
}

bool CellSet::is_open() const {
  for (std::size_t p = 0; p < sub.point_count(); ++p) {
    if (!in.points[p]) continue;
    for (auto s : sub.point_segments(p))
      if (!in.segs[s]) return false;
  }
  return true;
}

bool CellSet::is_closed() const {
  for (std::size_t s = 0; s < sub.segment_count(); ++s) {
    if (!in.segs[s]) continue;
    auto [a, b] = sub.segment_ends(s);
    if (!in.points[a] || !in.points[b]) return false;
  }
  return true;
}

CellSet CellSet::closure() const {
  CellSet out = *this;
  for (std::size_t s = 0; s < sub.segment_count(); ++s) {
    if (!in.segs[s]) continue;
    auto [a, b] = sub.segment_ends(s);
    out.in.points[a] = out.in.points[b] = true;
  }
  return out;
}

CellSet CellSet::interior() const {
  CellSet out = *this;
  for (std::size_t p = 0; p < sub.point_count(); ++p) {
    if (!in.points[p]) continue;
    for (auto s : sub.point_segments(p))
      if (!in.segs[s]) out.in.points[p] = false;
  }
  return out;
}

CellSet CellSet::complement() const {
  CellSet out = *this;
  for (auto&& b : out.in.points) b = !b;
  for (auto&& b : out.in.segs) b = !b;
  return out;
}

namespace {

template <class Op>
CellSet combine(const CellSet& a, const CellSet& b, Op op) {
  Subdivision fine = a.sub.join(b.sub);
  auto ma = transfer(a.sub, a.in, fine);
  auto mb = transfer(b.sub, b.in, fine);
  CellMap<bool> out(fine, false);
  for (std::size_t p = 0; p < fine.point_count(); ++p) out.points[p] = op(ma.points[p], mb.points[p]);
  for (std::size_t s = 0; s < fine.segment_count(); ++s) out.segs[s] = op(ma.segs[s], mb.segs[s]);
  return CellSet(std::move(fine), std::move(out));
}

}  // namespace

CellSet operator&(const CellSet& a, const CellSet& b) {
  return combine(a, b, [](bool x, bool y) { return x && y; });
}

CellSet operator|(const CellSet& a, const CellSet& b) {
  return combine(a, b, [](bool x, bool y) { return x || y; });
}

bool CellSet::subset_of(const CellSet& other) const {
  auto both = combine(*this, other, [](bool x, bool y) { return !x || y; });
  return std::all_of(both.in.points.begin(), both.in.points.end(), [](bool b) { return b; }) &&
         std::all_of(both.in.segs.begin(), both.in.segs.end(), [](bool b) { return b; });
}

bool CellSet::same_as(const CellSet& other) const { return subset_of(other) && other.subset_of(*this); }

std::string CellSet::describe() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (std::size_t p = 0; p < sub.point_count(); ++p)
    if (in.points[p]) os << (std::exchange(first, false) ? "" : ", ") << sub.describe_point(p);
  for (std::size_t s = 0; s < sub.segment_count(); ++s)
    if (in.segs[s]) os << (std::exchange(first, false) ? "" : ", ") << sub.describe_segment(s);
  os << '}';
  return os.str();
}

DistanceField::DistanceField(const CellSet& domain, const CellSet& target) {
  sub_ = domain.sub.join(target.sub);
  domain_ = transfer(domain.sub, domain.in, sub_);
  target_ = transfer(target.sub, target.in, sub_);
  for (std::size_t s = 0; s < sub_.segment_count(); ++s)
    if (target_.segs[s]) {
      auto [a, b] = sub_.segment_ends(s);
      target_.points[a] = target_.points[b] = true;
    }

  const std::size_t n = sub_.point_count();
  point_dist_.assign(n, std::nullopt);
  std::vector<bool> done(n, false);
  for (std::size_t p = 0; p < n; ++p)
    if (target_.points[p] && domain_.points[p]) point_dist_[p] = Q(0);
  // Dense Dijkstra; subdivisions stay small.
  for (;;) {
    std::optional<std::size_t> best;
    for (std::size_t p = 0; p < n; ++p)
      if (!done[p] && point_dist_[p] && (!best || *point_dist_[p] < *point_dist_[*best])) best = p;
    if (!best) break;
    done[*best] = true;
    for (auto s : sub_.point_segments(*best)) {
      if (!domain_.segs[s]) continue;
      auto [a, b] = sub_.segment_ends(s);
      std::size_t other = a == *best ? b : a;
      Q cand = *point_dist_[*best] + sub_.segment_length(s);
      if (!point_dist_[other] || cand < *point_dist_[other]) point_dist_[other] = cand;
    }
  }
}

std::optional<Q> DistanceField::at(const Site& site) const {
  auto c = sub_.locate(site);
  if (!domain_.at(c)) return std::nullopt;
  if (c.is_point) return point_dist_[c.index];
  if (target_.segs[c.index]) return Q(0);
  auto [a, b] = sub_.segment_ends(c.index);
  Q s = site.t - sub_.segment_start(c.index);
  Q L = sub_.segment_length(c.index);
  std::optional<Q> d;
  if (point_dist_[a]) d = *point_dist_[a] + s;
  if (point_dist_[b]) {
    Q via_b = *point_dist_[b] + (L - s);
    if (!d || via_b < *d) d = via_b;
  }
  return d;
}

std::vector<std::pair<std::size_t, Q>> DistanceField::level_cuts(const Q& r) const {
  std::vector<std::pair<std::size_t, Q>> out;
  for (std::size_t s = 0; s < sub_.segment_count(); ++s) {
    if (!domain_.segs[s] || target_.segs[s]) continue;
    auto [a, b] = sub_.segment_ends(s);
    Q start = sub_.segment_start(s);
    Q L = sub_.segment_length(s);
    auto add = [&](const Q& off) {
      if (off > Q(0) && off < L) out.emplace_back(sub_.segment_edge(s), start + off);
    };
    if (point_dist_[a]) add(r - *point_dist_[a]);
    if (point_dist_[b]) add(L - r + *point_dist_[b]);
  }
  return out;
}

CellSet DistanceField::far(const Q& r) const {
  Subdivision fine = sub_.with_cuts(level_cuts(r));
  CellMap<bool> m(fine, false);
  for (std::size_t p = 0; p < fine.point_count(); ++p) {
    const auto& site = fine.point_site(p);
    if (!domain_.at(sub_.locate(site))) continue;
    auto d = at(site);
    m.points[p] = !d || *d > r;
  }
  for (std::size_t s = 0; s < fine.segment_count(); ++s) {
    auto site = fine.segment_midpoint(s);
    if (!domain_.at(sub_.locate(site))) continue;
    auto d = at(site);
    m.segs[s] = !d || *d > r;
  }
  return CellSet(std::move(fine), std::move(m));
}

CellSet DistanceField::near(const Q& r) const {
  CellSet f = far(r);
  CellSet dom(f.sub, transfer(sub_, domain_, f.sub));
  for (std::size_t p = 0; p < f.sub.point_count(); ++p) f.in.points[p] = dom.in.points[p] && !f.in.points[p];
  for (std::size_t s = 0; s < f.sub.segment_count(); ++s) f.in.segs[s] = dom.in.segs[s] && !f.in.segs[s];
  return f;
}

}  // namespace cusheaf

namespace cusheaf {

CellSet cellset_from(const ComplexPtr& X, const std::vector<Interval>& intervals, const std::vector<Site>& sites,
                     bool closed) {
  std::vector<std::pair<std::size_t, Q>> cuts;
  for (const auto& iv : intervals) {
    if (iv.edge >= X->edge_count()) throw Error(ErrorKind::InvalidInput, "interval on unknown edge");
    if (!(iv.from < iv.to) || iv.from < Q(0) || iv.to > X->edge(iv.edge).length)
      throw Error(ErrorKind::InvalidInput, "interval (" + to_string(iv.from) + "," + to_string(iv.to) +
                                               ") is not inside edge " + X->edge(iv.edge).id);
    cuts.emplace_back(iv.edge, iv.from);
    cuts.emplace_back(iv.edge, iv.to);
  }
  for (const auto& s : sites)
    if (!s.is_vertex) cuts.emplace_back(s.index, s.t);
  Subdivision sub = Subdivision(X).with_cuts(cuts);
  CellSet out = CellSet::empty(sub);
  for (const auto& iv : intervals) {
    for (std::size_t s = 0; s < sub.segment_count(); ++s) {
      if (sub.segment_edge(s) != iv.edge) continue;
      if (sub.segment_start(s) >= iv.from && sub.segment_end(s) <= iv.to) {
        out.in.segs[s] = true;
        if (closed) {
          auto [a, b] = sub.segment_ends(s);
          out.in.points[a] = out.in.points[b] = true;
        }
      }
    }
    // Interior cuts of an open interval belong to it.
    for (std::size_t j = 0; j < sub.cuts(iv.edge).size(); ++j) {
      Q t = sub.cuts(iv.edge)[j];
      if (t > iv.from && t < iv.to) out.in.points[sub.cut_point(iv.edge, j)] = true;
    }
  }
  for (const auto& s : sites) {
    auto p = sub.point_at(s);
    if (!p) throw Error(ErrorKind::InvalidInput, "site is not a point of the subdivision");
    out.in.points[*p] = true;
  }
  return out;
}

}  // namespace cusheaf
