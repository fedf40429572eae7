#ifndef CUSHEAF_FIELD_HPP
#define CUSHEAF_FIELD_HPP

#include "cusheaf/stepfn.hpp"

#include <map>
#include <memory>

namespace cusheaf {

/// A point with fiber N̄^k. Its base value is the weighted sum Σ w_i a_i.
struct ExceptionalPoint {
  std::size_t edge;
  Q pos;
  std::vector<std::uint64_t> weights;

  std::size_t arity() const { return weights.size(); }
  Site site() const { return Site::on_edge(edge, pos); }
};

ExtNat fuse(const ExceptionalPoint& e, const Tuple& a);

/// A model continuous field over a one-complex: fiber N̄ everywhere except at
/// finitely many exceptional points.
class ModelField {
 public:
  /// Validates positions (strictly inside an edge), distinctness, arity >= 2, weights >= 1.
  static std::shared_ptr<const ModelField> make(ComplexPtr X, std::vector<ExceptionalPoint> exceptional);
  static std::shared_ptr<const ModelField> trivial(ComplexPtr X);

  const ComplexPtr& complex_ptr() const { return X_; }
  const OneComplex& complex() const { return *X_; }
  const std::vector<ExceptionalPoint>& exceptional() const { return ex_; }
  bool is_trivial() const { return ex_.empty(); }
  std::optional<std::size_t> exceptional_at(const Site& s) const;
  /// Cuts at every exceptional point.
  std::vector<std::pair<std::size_t, Q>> exceptional_cuts() const;
  /// Same base and the same exceptional data.
  bool same_as(const ModelField& other) const;

 private:
  ComplexPtr X_;
  std::vector<ExceptionalPoint> ex_;
};

using FieldPtr = std::shared_ptr<const ModelField>;

/// A section of the model field over a closed patch: a base step function plus a
/// tuple at each exceptional point of the domain. The base value at an
/// exceptional point is the fused tuple, so fusion-lsc is base lsc there.
class FieldElement {
 public:
  FieldElement() = default;
  /// Overwrites the base value at each exceptional point with the fused tuple.
  /// Throws NotLsc when the fused value exceeds a directional limit.
  FieldElement(FieldPtr field, const StepFn& base, std::map<std::size_t, Tuple> tuples);

  static FieldElement lift(FieldPtr field, const StepFn& f);
  /// c on the base and the diagonal tuple floor(c / Σw) at exceptional points.
  static FieldElement constant(FieldPtr field, ExtNat c);

  const FieldPtr& field() const { return field_; }
  const StepFn& base() const { return base_; }
  const std::map<std::size_t, Tuple>& tuples() const { return tuples_; }
  CellSet domain() const { return base_.domain(); }
  /// Fiber value at a site in the domain: a 1-tuple away from exceptional points.
  Tuple fiber(const Site& s) const;
  bool bounded() const;
  std::optional<ExtNat> max_finite() const;
  std::string describe() const;

 private:
  FieldPtr field_;
  StepFn base_;
  std::map<std::size_t, Tuple> tuples_;
};

FieldElement field_add(const FieldElement& a, const FieldElement& b);
bool field_leq(const FieldElement& a, const FieldElement& b);
bool field_equal(const FieldElement& a, const FieldElement& b);
bool field_waybelow(const FieldElement& a, const FieldElement& b);
std::optional<std::string> field_waybelow_witness(const FieldElement& a, const FieldElement& b);
FieldElement field_restrict(const FieldElement& a, const CellSet& patch);
/// Rapid approximant: base shrink, tuples water-filled under the new base
/// limits, and the base lowered to the fused tuple on the closed 1/k-ball.
FieldElement field_shrink(const FieldElement& a, unsigned k);
unsigned field_shrink_depth(const FieldElement& a, const FieldElement& b);

}  // namespace cusheaf

#endif
