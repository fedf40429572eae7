#ifndef CUSHEAF_MODELS_HPP
#define CUSHEAF_MODELS_HPP

#include "cusheaf/field.hpp"
#include "cusheaf/laws.hpp"

namespace cusheaf {

/// Dense basis of Lsc(X, N̄) at value bound `bound` and grid 1/den (edge-relative):
/// constants, interval bumps, vertex stars, point complements, sums of two coarse bumps.
std::vector<StepFn> stepfn_basis(const ComplexPtr& X, unsigned bound, unsigned den);
/// Restrictions of the complex basis to a patch, deduplicated.
std::vector<StepFn> stepfn_basis(const CellSet& patch, unsigned bound, unsigned den);
/// Sections of a field over a patch: basis base functions times admissible tuples.
std::vector<FieldElement> field_basis(const FieldPtr& F, const CellSet& patch, unsigned bound, unsigned den);
/// Tuples with entries <= bound that fit under `limit`: zero, the maximal ones,
/// and for an infinite limit the all-infinite and unit-infinite tuples.
std::vector<Tuple> admissible_tuples(const ExceptionalPoint& e, ExtNat limit, unsigned bound);

class ExtNatModel {
 public:
  using Element = ExtNat;
  std::string name() const { return "extnat"; }
  std::vector<ExtNat> basis(unsigned bound, unsigned den) const;
  bool leq(ExtNat a, ExtNat b) const { return a <= b; }
  bool waybelow(ExtNat a, ExtNat b) const { return extnat_compare(a, b).waybelow; }
  bool equal(ExtNat a, ExtNat b) const { return a == b; }
  ExtNat add(ExtNat a, ExtNat b) const { return a + b; }
  ExtNat zero() const { return ExtNat(0); }
  ExtNat shrink(ExtNat a, unsigned k) const { return a.is_inf() ? ExtNat(k) : a; }
  unsigned chain_bound(ExtNat c, ExtNat) const { return c.is_inf() ? 1 : static_cast<unsigned>(c.value()) + 1; }
  unsigned sum_chain_bound(ExtNat c, ExtNat x, ExtNat) const { return chain_bound(c, x); }
  std::string show(ExtNat a) const { return a.str(); }
};

/// N̄^k with coordinatewise structure.
class ProductModel {
 public:
  using Element = Tuple;
  explicit ProductModel(std::size_t arity) : k_(arity) {}
  std::string name() const { return "product^" + std::to_string(k_); }
  std::vector<Tuple> basis(unsigned bound, unsigned den) const;
  bool leq(const Tuple& a, const Tuple& b) const { return tuple_leq(a, b); }
  bool waybelow(const Tuple& a, const Tuple& b) const { return tuple_waybelow(a, b); }
  bool equal(const Tuple& a, const Tuple& b) const { return a == b; }
  Tuple add(const Tuple& a, const Tuple& b) const { return tuple_add(a, b); }
  Tuple zero() const { return Tuple(k_, ExtNat(0)); }
  Tuple shrink(const Tuple& a, unsigned k) const;
  unsigned chain_bound(const Tuple& c, const Tuple& x) const;
  unsigned sum_chain_bound(const Tuple& c, const Tuple& x, const Tuple&) const { return chain_bound(c, x); }
  std::string show(const Tuple& a) const { return tuple_str(a); }

 private:
  std::size_t k_;
};

/// Lsc step functions over a closed patch of a complex.
class StepModel {
 public:
  using Element = StepFn;
  explicit StepModel(CellSet patch, std::string label = "lsc-step");
  static StepModel whole(const ComplexPtr& X, std::string label = "lsc-step");
  std::string name() const { return label_; }
  const CellSet& patch() const { return patch_; }
  std::vector<StepFn> basis(unsigned bound, unsigned den) const { return stepfn_basis(patch_, bound, den); }
  bool leq(const StepFn& a, const StepFn& b) const { return stepfn_leq(a, b); }
  bool waybelow(const StepFn& a, const StepFn& b) const { return stepfn_waybelow(a, b); }
  bool equal(const StepFn& a, const StepFn& b) const { return stepfn_equal(a, b); }
  StepFn add(const StepFn& a, const StepFn& b) const { return stepfn_add(a, b); }
  StepFn zero() const { return StepFn::constant_on(patch_, ExtNat(0)); }
  StepFn shrink(const StepFn& a, unsigned k) const { return cusheaf::shrink(a, k); }
  unsigned chain_bound(const StepFn& c, const StepFn& x) const { return shrink_depth(c, x); }
  unsigned sum_chain_bound(const StepFn& c, const StepFn& x, const StepFn& y) const;
  std::string show(const StepFn& a) const { return a.describe(); }

 private:
  CellSet patch_;
  std::string label_;
};

/// Sections S(V) of a model field over a closed patch V.
class FieldModel {
 public:
  using Element = FieldElement;
  FieldModel(FieldPtr field, CellSet patch, std::string label = "sections");
  std::string name() const { return label_; }
  const FieldPtr& field() const { return field_; }
  const CellSet& patch() const { return patch_; }
  std::vector<FieldElement> basis(unsigned bound, unsigned den) const { return field_basis(field_, patch_, bound, den); }
  bool leq(const FieldElement& a, const FieldElement& b) const { return field_leq(a, b); }
  bool waybelow(const FieldElement& a, const FieldElement& b) const { return field_waybelow(a, b); }
  bool equal(const FieldElement& a, const FieldElement& b) const { return field_equal(a, b); }
  FieldElement add(const FieldElement& a, const FieldElement& b) const { return field_add(a, b); }
  FieldElement zero() const;
  FieldElement shrink(const FieldElement& a, unsigned k) const { return field_shrink(a, k); }
  unsigned chain_bound(const FieldElement& c, const FieldElement& x) const { return field_shrink_depth(c, x); }
  unsigned sum_chain_bound(const FieldElement& c, const FieldElement& x, const FieldElement& y) const;
  std::string show(const FieldElement& a) const { return a.describe(); }

 private:
  FieldPtr field_;
  CellSet patch_;
  std::string label_;
};

}  // namespace cusheaf

#endif
