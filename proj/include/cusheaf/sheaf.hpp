#ifndef CUSHEAF_SHEAF_HPP
#define CUSHEAF_SHEAF_HPP

#include "cusheaf/limits.hpp"
#include "cusheaf/models.hpp"

namespace cusheaf {

/// Sections of F over a closed patch with nonempty interior.
FieldModel sections_semigroup(const FieldPtr& F, const CellSet& P);

struct SheafReport {
  bool ok = true;
  /// Basis elements of S(U ∪ V) plus compatible pairs of S(U) x S(V) examined.
  std::size_t checked = 0;
  std::string witness;
};

/// Bijectivity of S(U ∪ V) → S(U) ⊕_{S(U∩V)} S(V) on enumerated bases: every
/// element is the gluing of its restrictions, and every compatible pair glues to
/// an element restricting back to it. Throws Precondition unless U, V and U ∩ V
/// are closed patches with nonempty interior.
SheafReport check_sheaf(const FieldPtr& F, const CellSet& U, const CellSet& V, unsigned bound = 3,
                        unsigned den = 6);

/// The germ semigroup at x with its evaluation isomorphism onto N̄^k.
CuColimit stalk(const FieldPtr& F, const Site& x, unsigned bound = 3);

}  // namespace cusheaf

#endif
