#ifndef CUSHEAF_IO_HPP
#define CUSHEAF_IO_HPP

#include "cusheaf/action.hpp"
#include "cusheaf/sections.hpp"

#include <json.hpp>

#include <filesystem>

namespace cusheaf::io {

using json = nlohmann::json;

/// Schema violations throw Error(InvalidInput) with the JSON pointer of the
/// offending value as witness. References to other documents are either inline
/// objects or file paths resolved against `base`.
struct Reader {
  std::filesystem::path base = ".";

  json load(const std::string& path) const;

  /// {vertices:[name], edges:[{id, from, to, length:"p/q"}]}
  ComplexPtr space(const json& j, const std::string& ptr = "") const;
  /// {space, exceptional:[{edge, pos:"p/q", arity, weights:[int]}]}
  FieldPtr field(const json& j, const std::string& ptr = "") const;
  /// {pieces:[{edge, from, to, value}], points:[{edge, pos, value}],
  ///  exceptional:[{edge, pos, tuple}], patch?}
  FieldElement element(const FieldPtr& F, const json& j, const std::string& ptr = "") const;
  StepFn function(const ComplexPtr& X, const json& j, const std::string& ptr = "") const;
  /// Closed patch {intervals:[{edge, from, to}], points:[{edge, pos} | {vertex}]}.
  CellSet patch(const ComplexPtr& X, const json& j, const std::string& ptr = "") const;
  /// Open set {intervals, vertices:[name], points:[{edge, pos}]}.
  CellSet open_set(const ComplexPtr& X, const json& j, const std::string& ptr = "") const;
  /// {field?, cover:[open set], values:{"i": element, "i,j": element}}
  PCSection section(const FieldPtr& F, const json& j, const std::string& ptr = "") const;
  /// {pairs:[[element, element]]}
  IsoCandidate iso(const FieldPtr& FA, const FieldPtr& FB, const json& j, const std::string& ptr = "") const;

  /// Resolves a string as a file path relative to `base`; objects pass through.
  json resolve(const json& j, const std::string& ptr) const;
};

Q parse_rational(const json& j, const std::string& ptr);
ExtNat parse_value(const json& j, const std::string& ptr);
/// "edge:p/q" or a vertex name.
Site parse_site(const OneComplex& X, const std::string& text);

json to_json(const OneComplex& X);
json to_json(const FieldElement& s);

}  // namespace cusheaf::io

#endif
