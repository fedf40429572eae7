#ifndef CUSHEAF_CELLS_HPP
#define CUSHEAF_CELLS_HPP

#include "cusheaf/complex.hpp"

#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace cusheaf {

/// Cell of a subdivision: a point (vertex or interior cut) or an open segment.
struct CellRef {
  bool is_point;
  std::size_t index;
  friend bool operator==(const CellRef&, const CellRef&) = default;
};

/// A finite rational subdivision of a OneComplex: each edge carries a sorted
/// list of interior cut offsets. Points are indexed vertices first, then the
/// cuts edge by edge; segments are indexed edge by edge.
class Subdivision {
 public:
  Subdivision() = default;
  explicit Subdivision(ComplexPtr X);
  Subdivision(ComplexPtr X, std::vector<std::vector<Q>> cuts);

  const ComplexPtr& complex_ptr() const { return X_; }
  const OneComplex& complex() const { return *X_; }
  const std::vector<Q>& cuts(std::size_t edge) const { return cuts_.at(edge); }
  const std::vector<std::vector<Q>>& all_cuts() const { return cuts_; }

  std::size_t point_count() const { return point_site_.size(); }
  std::size_t segment_count() const { return seg_edge_.size(); }

  std::size_t vertex_point(std::size_t v) const { return v; }
  std::size_t cut_point(std::size_t edge, std::size_t j) const { return cut_offset_[edge] + j; }
  std::size_t segment(std::size_t edge, std::size_t j) const { return seg_offset_[edge] + j; }

  const Site& point_site(std::size_t p) const { return point_site_[p]; }
  std::size_t segment_edge(std::size_t s) const { return seg_edge_[s]; }
  Q segment_start(std::size_t s) const;
  Q segment_end(std::size_t s) const;
  Q segment_length(std::size_t s) const { return segment_end(s) - segment_start(s); }
  Site segment_midpoint(std::size_t s) const;
  /// Endpoint points of a segment (start, end).
  std::pair<std::size_t, std::size_t> segment_ends(std::size_t s) const;
  /// Segments incident to a point, with multiplicity for loops.
  const std::vector<std::size_t>& point_segments(std::size_t p) const { return point_segs_[p]; }

  /// Cell containing the site.
  CellRef locate(const Site& s) const;
  /// Point index of a site that is a vertex or a cut; nullopt otherwise.
  std::optional<std::size_t> point_at(const Site& s) const;

  bool refines(const Subdivision& coarse) const;
  Subdivision with_cuts(const std::vector<std::pair<std::size_t, Q>>& extra) const;
  Subdivision join(const Subdivision& other) const;
  bool same_cuts(const Subdivision& other) const { return cuts_ == other.cuts_; }

  /// Smallest segment length.
  Q finest_gap() const;

  std::string describe_point(std::size_t p) const;
  std::string describe_segment(std::size_t s) const;

 private:
  void index();

  ComplexPtr X_;
  std::vector<std::vector<Q>> cuts_;
  std::vector<std::size_t> cut_offset_;
  std::vector<std::size_t> seg_offset_;
  std::vector<Site> point_site_;
  std::vector<std::size_t> seg_edge_;
  std::vector<std::size_t> seg_local_;
  std::vector<std::vector<std::size_t>> point_segs_;
};

/// Per-cell data over a subdivision.
template <class T>
struct CellMap {
  std::vector<T> points;
  std::vector<T> segs;

  CellMap() = default;
  CellMap(const Subdivision& sub, const T& init)
      : points(sub.point_count(), init), segs(sub.segment_count(), init) {}

  decltype(auto) at(CellRef c) const { return c.is_point ? points[c.index] : segs[c.index]; }
  decltype(auto) at(CellRef c) { return c.is_point ? points[c.index] : segs[c.index]; }

  friend bool operator==(const CellMap&, const CellMap&) = default;
};

/// Pull cell data from `coarse` onto a refinement `fine`.
template <class T>
CellMap<T> transfer(const Subdivision& coarse, const CellMap<T>& data, const Subdivision& fine) {
  CellMap<T> out;
  out.points.reserve(fine.point_count());
  out.segs.reserve(fine.segment_count());
  for (std::size_t p = 0; p < fine.point_count(); ++p)
    out.points.push_back(data.at(coarse.locate(fine.point_site(p))));
  for (std::size_t s = 0; s < fine.segment_count(); ++s)
    out.segs.push_back(data.at(coarse.locate(fine.segment_midpoint(s))));
  return out;
}

/// A union of cells of a subdivision.
struct CellSet {
  Subdivision sub;
  CellMap<bool> in;

  CellSet() = default;
  CellSet(Subdivision s, bool init) : sub(std::move(s)), in(sub, init) {}
  CellSet(Subdivision s, CellMap<bool> m) : sub(std::move(s)), in(std::move(m)) {}

  static CellSet whole(const Subdivision& sub) { return CellSet(sub, true); }
  static CellSet empty(const Subdivision& sub) { return CellSet(sub, false); }

  bool contains(const Site& s) const { return in.at(sub.locate(s)); }
  bool has_segment() const;
  bool is_empty() const;

  bool is_open() const;
  bool is_closed() const;
  CellSet closure() const;
  CellSet interior() const;
  CellSet complement() const;
  CellSet refined(const Subdivision& fine) const { return CellSet(fine, transfer(sub, in, fine)); }

  friend CellSet operator&(const CellSet& a, const CellSet& b);
  friend CellSet operator|(const CellSet& a, const CellSet& b);
  /// Set inclusion, compared on the common refinement.
  bool subset_of(const CellSet& other) const;
  bool same_as(const CellSet& other) const;
  std::string describe() const;
};

struct Interval {
  std::size_t edge;
  Q from;
  Q to;
};

/// Union of intervals on edges plus extra sites. With `closed` the interval
/// endpoints are included, otherwise only the open intervals are.
CellSet cellset_from(const ComplexPtr& X, const std::vector<Interval>& intervals, const std::vector<Site>& sites,
                     bool closed);

/// Path-metric distance to a closed set C measured inside a closed domain.
class DistanceField {
 public:
  DistanceField(const CellSet& domain, const CellSet& target);

  /// Distance at a site of the domain; nullopt when the target is unreachable.
  std::optional<Q> at(const Site& s) const;
  /// Offsets where {d = r} meets the interior of a domain segment.
  std::vector<std::pair<std::size_t, Q>> level_cuts(const Q& r) const;
  /// {y in domain : d(y) > r}, on the subdivision refined by level_cuts(r).
  CellSet far(const Q& r) const;
  /// {y in domain : d(y) <= r}.
  CellSet near(const Q& r) const;

  const Subdivision& subdivision() const { return sub_; }

 private:
  Subdivision sub_;
  CellMap<bool> domain_;
  CellMap<bool> target_;
  std::vector<std::optional<Q>> point_dist_;
};

}  // namespace cusheaf

#endif
