#ifndef CUSHEAF_ACTION_HPP
#define CUSHEAF_ACTION_HPP

#include "cusheaf/laws.hpp"
#include "cusheaf/sections.hpp"

namespace cusheaf {

/// Pointwise product f·s: base values and tuples are scaled by f, with 0·∞ = 0.
/// f must be defined wherever s is.
FieldElement act(const StepFn& f, const FieldElement& s);
Section act(const StepFn& f, const Section& s);

/// f = Σ_i 1_{U_i} with U_i = {f > i}. When f takes the value inf, `sets` stops at
/// {f = inf}, which repeats forever (`infinite_tail`).
struct IndicatorDecomposition {
  std::vector<CellSet> sets;
  bool infinite_tail = false;
};
IndicatorDecomposition indicator_decompose(const StepFn& f);

/// Basis elements x with x << x.
template <CuModel M>
std::vector<typename M::Element> compacts(const M& model, unsigned bound, unsigned den = 4) {
  auto basis = model.basis(bound, den);
  check_enumeration_size(basis.size());
  std::vector<typename M::Element> out;
  for (const auto& x : basis)
    if (model.waybelow(x, x)) out.push_back(x);
  return out;
}

/// Map between section semigroups of two fields over the same complex, given on
/// generators. After v_reconstruct it also carries the fiber maps that extend it
/// to all sections: tuples at an exceptional point are permuted, generic fibers
/// are fixed.
struct IsoCandidate {
  FieldPtr source;
  FieldPtr target;
  std::vector<std::pair<FieldElement, FieldElement>> pairs;
  bool extended = false;
  /// Source exceptional index -> (target exceptional index, permutation p) with
  /// image tuple b[j] = a[p[j]].
  std::map<std::size_t, std::pair<std::size_t, std::vector<std::size_t>>> fiber_maps;

  /// Image of s; without fiber maps s must be one of the generators.
  FieldElement apply(const FieldElement& s) const;
  bool defined_on(const FieldElement& s) const;
};

/// Extends an isomorphism of compact elements to the full section semigroups.
/// Throws NotCompatible (with a witness) when exceptional data do not match, the
/// generators disagree with a fiberwise map, or a permutation breaks the fusion
/// weights; NotDense when the generators do not determine the fiber maps.
IsoCandidate v_reconstruct(const FieldPtr& FA, const FieldPtr& FB, const IsoCandidate& v_iso);

struct ActionReport {
  bool ok = true;
  std::size_t checked = 0;
  std::size_t skipped = 0;
  std::string witness;
};

/// φ(1_U·a) = 1_U·φ(a) for every sampled open U and element a. Pairs outside the
/// domain of a generator-only candidate are skipped.
ActionReport preserves_action_check(const IsoCandidate& iso, const std::vector<FieldElement>& samples,
                                    const std::vector<CellSet>& opens);

/// Rotation of circle(n) by `steps` edges, as a generator-indexed candidate on the
/// given elements of the trivial field.
IsoCandidate rotation_iso(const FieldPtr& F, std::size_t steps, const std::vector<FieldElement>& generators);

/// The compact-level candidate swapping two coordinates at every exceptional point.
IsoCandidate coordinate_swap(const FieldPtr& FA, const FieldPtr& FB, unsigned bound);

/// ≪-bimorphism laws of act over Lsc-step x sections of F on enumerated bases:
/// monotone, additive and sup-continuous in each slot, the joint ≪ clause, and
/// act(f,s) = Σ act(1_{U_i}, s) for bounded f.
LawReport bimorphism_suite(const FieldPtr& F, unsigned bound, unsigned den, const LawOptions& opt = {});

}  // namespace cusheaf

#endif
