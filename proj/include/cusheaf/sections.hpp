#ifndef CUSHEAF_SECTIONS_HPP
#define CUSHEAF_SECTIONS_HPP

#include "cusheaf/field.hpp"

namespace cusheaf {

/// A cellwise assignment of stalk values: a 1-tuple on ordinary cells and a
/// k-tuple at each exceptional point. Not necessarily continuous.
class Section {
 public:
  Section() = default;
  /// Exceptional points in the domain must be points of `sub`.
  Section(FieldPtr field, Subdivision sub, CellMap<std::optional<Tuple>> values);

  const FieldPtr& field() const { return field_; }
  const Subdivision& sub() const { return sub_; }
  const CellMap<std::optional<Tuple>>& values() const { return v_; }
  std::optional<Tuple> at(const Site& s) const { return v_.at(sub_.locate(s)); }
  CellSet domain() const;
  Section refined(const Subdivision& fine) const;
  std::string describe() const;

 private:
  FieldPtr field_;
  Subdivision sub_;
  CellMap<std::optional<Tuple>> v_;
};

struct ContinuityReport {
  bool continuous = true;
  std::string witness;
};

/// x ↦ germ of s at x.
Section induced_section(const FieldElement& s);
/// Continuity criterion: for each point x and a << f(x) a local section s with
/// ŝ(x) >> a and ŝ << f nearby exists. On these fibers this is the comparison of
/// the (fused) point value with the adjacent cell values.
ContinuityReport section_is_continuous(const Section& f);
/// The field element inducing a continuous section; throws NotLsc otherwise.
FieldElement section_to_field(const Section& f);
Section section_restrict(const Section& f, const CellSet& patch);

bool section_leq(const Section& f, const Section& g);
bool section_equal(const Section& f, const Section& g);
Section section_add(const Section& f, const Section& g);
Section section_shrink(const Section& f, unsigned k);
/// Compact containment by the shrink strategy: f <= shrink_k(g) for some k.
bool section_waybelow(const Section& f, const Section& g);

/// g_{V,f}: f on V and g off V. Requires f(y) << g(y) on V.
Section patch_with(const Section& g, const CellSet& V, const Section& f);

/// Piecewise characteristic section: an open cover of multiplicity <= 2 (for
/// the sets and for their closures) with elements s_i and s_{i,j}.
struct PCSection {
  FieldPtr field;
  std::vector<CellSet> cover;
  std::vector<FieldElement> singles;
  std::map<std::pair<std::size_t, std::size_t>, FieldElement> pairs;
};

/// Validates the cover (Multiplicity, CoverGap) and the boundary compatibility
/// ŝ_i <= ŝ_{i,j} on closure(∂(U_i ∩ U_j) ∩ U_i) (Compatibility, with witness).
PCSection pcs_make(FieldPtr field, std::vector<CellSet> cover, std::vector<FieldElement> singles,
                   std::map<std::pair<std::size_t, std::size_t>, FieldElement> pairs);
/// ŝ_i on U_i minus the other sets, ŝ_{i,j} on U_i ∩ U_j.
Section pcs_eval(const PCSection& p);
/// PCS over the open star cover of h's subdivision representing ĥ.
PCSection pcs_from_element(const FieldElement& h);

/// Finite rapidly increasing PCS chain together with the section it converges to.
struct GammaElement {
  std::vector<PCSection> chain;
  Section sup;
};

/// Rapidly increasing chain of shrink approximants of f.
GammaElement decompose(const Section& f, std::size_t depth);
/// Pointwise supremum of sections at the resolution of `target`: coordinates
/// that are still increasing over the last two entries become inf.
Section chain_sup(const std::vector<Section>& chain, const Subdivision& target);
/// Interpolant g with h1, h2 << g << f. Throws Precondition unless h1, h2 << f.
PCSection directed_join(const PCSection& h1, const PCSection& h2, const Section& f);
/// Closed ε-neighbourhood W of V (ε = 1/2, 1/4, ...) with s'|W << f|W.
CellSet extend_nbhd(const FieldElement& s, const FieldElement& s_prime, const CellSet& V, const Section& f);
/// A field element h with f <= ĥ <= ĝ pointwise. Requires f << ĝ.
FieldElement realize(const Section& f, const PCSection& g);

/// Forward map s ↦ ŝ and the inverse decompose → realize → supremum.
struct AlphaIso {
  FieldPtr field;
  std::size_t depth = 4;

  Section forward(const FieldElement& s) const { return induced_section(s); }
  FieldElement inverse(const Section& f) const;
};

/// Enumerated sections: induced sections of the field basis plus two-set PCS
/// sections (value n1 off (a,b), n2 on [c,d], n12 in between).
std::vector<Section> gamma_basis(const FieldPtr& F, unsigned bound, unsigned den);

}  // namespace cusheaf

#endif
