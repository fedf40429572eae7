#ifndef CUSHEAF_LIMITS_HPP
#define CUSHEAF_LIMITS_HPP

#include "cusheaf/models.hpp"

namespace cusheaf {

// ---- quotients by the ideal {f : {f >= 1} ⊆ W} -------------------------

/// Ideal of Lsc(X, N̄) of functions supported in the open set W.
struct QuotientContext {
  ComplexPtr X;
  CellSet W;

  static QuotientContext make(const ComplexPtr& X, CellSet W);
  /// X \ W, a closed set (possibly with isolated points).
  CellSet complement() const { return W.complement(); }
};

/// [s] <= [t]: s <= t + z for some z in the ideal, i.e. s <= t off W.
bool quotient_leq(const QuotientContext& ctx, const StepFn& s, const StepFn& t);
/// The largest element of the ideal, inf on W and 0 elsewhere.
StepFn quotient_absorber(const QuotientContext& ctx);
/// Compact containment of the classes: the closure criterion read on X \ W.
bool quotient_waybelow(const QuotientContext& ctx, const StepFn& s, const StepFn& t);

class QuotientModel {
 public:
  using Element = StepFn;
  explicit QuotientModel(QuotientContext ctx) : ctx_(std::move(ctx)) {}
  std::string name() const { return "quotient"; }
  const QuotientContext& context() const { return ctx_; }
  std::vector<StepFn> basis(unsigned bound, unsigned den) const { return stepfn_basis(ctx_.X, bound, den); }
  bool leq(const StepFn& a, const StepFn& b) const { return quotient_leq(ctx_, a, b); }
  bool waybelow(const StepFn& a, const StepFn& b) const { return quotient_waybelow(ctx_, a, b); }
  bool equal(const StepFn& a, const StepFn& b) const { return leq(a, b) && leq(b, a); }
  StepFn add(const StepFn& a, const StepFn& b) const { return stepfn_add(a, b); }
  StepFn zero() const { return StepFn::constant(ctx_.X, ExtNat(0)); }
  StepFn shrink(const StepFn& a, unsigned k) const { return cusheaf::shrink(a, k); }
  unsigned chain_bound(const StepFn& c, const StepFn& x) const;
  unsigned sum_chain_bound(const StepFn& c, const StepFn& x, const StepFn& y) const;
  std::string show(const StepFn& a) const { return a.describe(); }

 private:
  QuotientContext ctx_;
};

// ---- pullbacks S(U) ⊕_{S(U∩V)} S(V) ---------------------------------------

/// Glue along the overlap; throws MismatchOnOverlap with the first disagreeing point.
StepFn stepfn_glue(const StepFn& a, const StepFn& b);
FieldElement pullback_glue(const FieldElement& a, const FieldElement& b);

struct PullbackElement {
  FieldElement left;
  FieldElement right;
};

class PullbackModel {
 public:
  using Element = PullbackElement;
  PullbackModel(FieldPtr field, CellSet U, CellSet V);
  std::string name() const { return "pullback"; }
  PullbackElement split(const FieldElement& f) const;
  FieldElement glue(const PullbackElement& p) const { return pullback_glue(p.left, p.right); }
  std::vector<PullbackElement> basis(unsigned bound, unsigned den) const;
  bool leq(const PullbackElement& a, const PullbackElement& b) const;
  /// Coordinatewise compact containment.
  bool waybelow(const PullbackElement& a, const PullbackElement& b) const;
  bool equal(const PullbackElement& a, const PullbackElement& b) const;
  PullbackElement add(const PullbackElement& a, const PullbackElement& b) const;
  PullbackElement zero() const;
  PullbackElement shrink(const PullbackElement& a, unsigned k) const;
  unsigned chain_bound(const PullbackElement& c, const PullbackElement& x) const;
  unsigned sum_chain_bound(const PullbackElement& c, const PullbackElement& x, const PullbackElement& y) const;
  std::string show(const PullbackElement& a) const;

 private:
  FieldPtr field_;
  CellSet U_, V_, union_;
};

// ---- germs at a point --------------------------------------------------------

/// Step data at a point: the fiber value (a tuple of arity 1 at ordinary
/// points) and the directional limits, one per in-domain incident direction.
struct Germ {
  Site at;
  Tuple fiber;
  std::vector<ExtNat> limits;

  friend bool operator==(const Germ&, const Germ&) = default;
  std::string str() const;
};

Germ germ_of(const FieldElement& f, const Site& x);
Germ germ_of(const StepFn& f, const Site& x);
/// Order in the Cu-colimit: fibers compare coordinatewise. Throws
/// DifferentBasePoint for germs at different sites.
bool germ_leq(const Germ& a, const Germ& b);
/// Equality in the algebraic colimit: identical signatures.
bool germ_sg_equal(const Germ& a, const Germ& b);

/// Germ semigroup at a point of a field (the Cu-colimit of S(V) over
/// neighbourhoods V of x).
class GermModel {
 public:
  using Element = Germ;
  GermModel(FieldPtr field, Site x);
  std::string name() const { return "germ"; }
  const Site& point() const { return x_; }
  std::size_t directions() const { return dirs_; }
  std::size_t arity() const { return weights_.empty() ? 1 : weights_.size(); }
  /// All valid signatures with entries in {0..bound, inf}.
  std::vector<Germ> basis(unsigned bound, unsigned den) const;
  /// Valid signatures with finite entries up to bound.
  std::vector<Germ> finite_signatures(unsigned bound) const;
  bool valid(const Germ& g) const;
  bool leq(const Germ& a, const Germ& b) const { return germ_leq(a, b); }
  bool waybelow(const Germ& a, const Germ& b) const;
  bool equal(const Germ& a, const Germ& b) const { return a.fiber == b.fiber; }
  Germ add(const Germ& a, const Germ& b) const;
  Germ zero() const;
  Germ shrink(const Germ& a, unsigned k) const;
  unsigned chain_bound(const Germ& c, const Germ& x) const;
  unsigned sum_chain_bound(const Germ& c, const Germ& x, const Germ&) const { return chain_bound(c, x); }
  std::string show(const Germ& a) const { return a.str(); }
  /// A representative section on the closed ball of radius r around x.
  FieldElement representative(const Germ& g, const Q& r) const;

 private:
  FieldPtr field_;
  Site x_;
  std::size_t dirs_ = 0;
  std::vector<std::uint64_t> weights_;
};

/// Finite presentation of the algebraic colimit of S(V_m) at depth d, with
/// V_m the closed 1/m-balls around x for m = d..d+1.
struct SgPresentation {
  Site x;
  std::size_t depth = 0;
  std::vector<Germ> classes;
  bool stabilized = false;
};

SgPresentation colimit_sg(const FieldPtr& F, const Site& x, unsigned bound, std::size_t depth = 0);

/// Cu-colimit handle plus the point-evaluation isomorphism onto the fiber semigroup.
struct CuColimit {
  GermModel model;
  std::size_t arity;
  /// Evaluation germ -> fiber is order-preserving, order-reflecting, additive and onto
  /// {0..bound, inf}^arity on the enumerated germs.
  bool iso_verified = false;
  std::string witness;
};

CuColimit colimit_cu(const FieldPtr& F, const Site& x, unsigned bound);

/// The worked example at x = 1/2 in [0,1] with the trivial field.
struct WorkedExample {
  SgPresentation sg;
  CuColimit cu;
  /// Sg classes equal the triples (a,b,c) with b <= min(a,c), entries <= bound.
  bool sg_matches_triples = false;
  std::size_t expected_triples = 0;
  /// The canonical surjection identifies exactly the pairs with equal point value.
  bool kernel_is_point_evaluation = false;
  std::string render() const;
};

WorkedExample worked_example(unsigned bound = 4);

}  // namespace cusheaf

#endif
