#include "cusheaf/sheaf.hpp"

#include "cusheaf/error.hpp"
#include "cusheaf/laws.hpp"

#include <map>

namespace cusheaf {

FieldModel sections_semigroup(const FieldPtr& F, const CellSet& P) { return FieldModel(F, P); }

namespace {

void require_patch(const CellSet& P, const std::string& name) {
  if (!P.is_closed() || !P.has_segment())
    throw Error(ErrorKind::Precondition, name + " is not a closed patch with nonempty interior", P.describe());
}

}  // namespace

SheafReport check_sheaf(const FieldPtr& F, const CellSet& U, const CellSet& V, unsigned bound, unsigned den) {
  require_patch(U, "U");
  require_patch(V, "V");
  const CellSet I = U & V;
  require_patch(I, "U ∩ V");
  const CellSet W = U | V;

  SheafReport rep;
  auto fail = [&](std::string w) {
    if (rep.ok) rep.witness = std::move(w);
    rep.ok = false;
  };

  const auto whole = field_basis(F, W, bound, den);
  check_enumeration_size(whole.size());
  for (const auto& w : whole) {
    ++rep.checked;
    FieldElement glued = pullback_glue(field_restrict(w, U), field_restrict(w, V));
    if (!field_equal(glued, w)) fail("glue∘restrict differs on " + w.describe());
  }

  // Group restrictions to U ∩ V so that only compatible pairs are glued.
  std::map<std::string, std::vector<FieldElement>> left;
  for (const auto& u : field_basis(F, U, bound, den)) left[field_restrict(u, I).describe()].push_back(u);
  for (const auto& v : field_basis(F, V, bound, den)) {
    auto it = left.find(field_restrict(v, I).describe());
    if (it == left.end()) continue;
    for (const auto& u : it->second) {
      if (!field_equal(field_restrict(u, I), field_restrict(v, I))) continue;
      ++rep.checked;
      try {
        FieldElement g = pullback_glue(u, v);
        if (!field_equal(field_restrict(g, U), u) || !field_equal(field_restrict(g, V), v))
          fail("restrict∘glue differs on (" + u.describe() + ", " + v.describe() + ")");
      } catch (const Error& e) {
        fail("compatible pair does not glue (" + u.describe() + ", " + v.describe() + "): " + e.what());
      }
    }
  }
  return rep;
}

CuColimit stalk(const FieldPtr& F, const Site& x, unsigned bound) { return colimit_cu(F, x, bound); }

}  // namespace cusheaf
