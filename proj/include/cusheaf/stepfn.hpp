#ifndef CUSHEAF_STEPFN_HPP
#define CUSHEAF_STEPFN_HPP

#include "cusheaf/cells.hpp"
#include "cusheaf/extnat.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cusheaf {

/// N̄-valued data per cell; nullopt marks cells outside the domain.
struct CellFunction {
  Subdivision sub;
  CellMap<std::optional<ExtNat>> v;

  CellFunction() = default;
  CellFunction(Subdivision s, std::optional<ExtNat> init) : sub(std::move(s)), v(sub, init) {}
  CellFunction(Subdivision s, CellMap<std::optional<ExtNat>> m) : sub(std::move(s)), v(std::move(m)) {}

  CellSet domain() const;
  std::optional<ExtNat> at(const Site& s) const { return v.at(sub.locate(s)); }
  CellFunction refined(const Subdivision& fine) const { return {fine, transfer(sub, v, fine)}; }

  /// First domain point whose value exceeds an adjacent in-domain segment value.
  std::optional<std::size_t> lsc_violation() const;
  /// Lower each point value to the minimum of its in-domain directional limits.
  void floor_to_lsc();
  /// Drop cuts that separate identical data, except at the `keep` sites.
  void normalize(const std::vector<Site>& keep = {});
  /// Distinct values taken on the domain, ascending.
  std::vector<ExtNat> values() const;
  std::optional<ExtNat> max_finite() const;
  bool has_inf() const;
};

struct Piece {
  std::size_t edge;
  Q from;
  Q to;
  ExtNat value;
};

struct PointValue {
  Site site;
  ExtNat value;
};

enum class LscMode { Reject, Floor };

/// A lower semicontinuous N̄-valued step function on a closed domain of a
/// OneComplex: constant on the open segments of a finite rational subdivision.
class StepFn {
 public:
  StepFn() = default;
  /// Validates lsc on the domain; throws Error(NotLsc) with the witness point.
  explicit StepFn(CellFunction data, LscMode mode = LscMode::Reject);

  static StepFn constant(const ComplexPtr& X, ExtNat c);
  static StepFn constant_on(const CellSet& domain, ExtNat c);
  /// c on the open set U, 0 elsewhere on the domain of U's complex.
  static StepFn indicator(const CellSet& open_set, ExtNat c = ExtNat(1));

  const CellFunction& data() const { return data_; }
  const Subdivision& sub() const { return data_.sub; }
  const OneComplex& complex() const { return data_.sub.complex(); }
  CellSet domain() const { return data_.domain(); }
  std::optional<ExtNat> at(const Site& s) const { return data_.at(s); }
  /// Minimum of the in-domain directional limits at a site.
  std::optional<ExtNat> limit_min(const Site& s) const;
  bool bounded() const { return !data_.has_inf(); }

  /// {f >= n} as a cell set (relatively open in the domain for n >= 1).
  CellSet superlevel(ExtNat n) const;

  std::string describe() const;

 private:
  CellFunction data_;
};

StepFn stepfn_make(const ComplexPtr& X, const std::vector<Piece>& pieces, const std::vector<PointValue>& points,
                   LscMode mode = LscMode::Reject);

StepFn stepfn_add(const StepFn& f, const StepFn& g);
bool stepfn_leq(const StepFn& f, const StepFn& g);
bool stepfn_equal(const StepFn& f, const StepFn& g);
/// Compact containment: f bounded and closure{f >= n} ⊆ {g >= n} for every n >= 1.
bool stepfn_waybelow(const StepFn& f, const StepFn& g);
/// Human-readable reason why f ≪ g fails; nullopt when it holds.
std::optional<std::string> stepfn_waybelow_witness(const StepFn& f, const StepFn& g);
/// Pointwise product, 0·∞ = 0.
StepFn stepfn_product(const StepFn& f, const StepFn& g);
StepFn restrict(const StepFn& f, const CellSet& patch);

/// min of f over the closed path-metric ball of radius r, pointwise.
StepFn ball_min(const StepFn& f, const Q& r);
/// Canonical rapid approximant: min(ball_min(f, 1/k), max(k, largest finite value)).
StepFn shrink(const StepFn& f, unsigned k);
/// Depth at which the shrink chain oracle is conclusive for functions that are
/// cellular on `sub` with finite values up to `top`.
unsigned chain_depth(const Subdivision& sub, ExtNat top);
/// Smallest k for which the shrink oracle is conclusive for the pair (f, g).
unsigned shrink_depth(const StepFn& f, const StepFn& g);

/// Common-refinement view of two functions; throws on complex or domain mismatch.
std::pair<CellFunction, CellFunction> align(const CellFunction& f, const CellFunction& g, bool same_domain = true);

}  // namespace cusheaf

#endif
