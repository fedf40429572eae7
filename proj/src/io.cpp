#include "cusheaf/io.hpp"

#include "cusheaf/error.hpp"

#include <fstream>
#include <functional>

namespace cusheaf::io {

namespace {

bool is_natural(const json& j) { return j.is_number_unsigned() || (j.is_number_integer() && j.get<std::int64_t>() >= 0); }

[[noreturn]] void fail(const std::string& ptr, const std::string& msg) {
  const std::string where = ptr.empty() ? "/" : ptr;
  throw Error(ErrorKind::InvalidInput, msg + " at " + where, where);
}

std::string child(const std::string& ptr, const std::string& key) {
  std::string k;
  for (char c : key) k += c == '~' ? "~0" : c == '/' ? "~1" : std::string(1, c);
  return ptr + "/" + k;
}
std::string child(const std::string& ptr, std::size_t i) { return ptr + "/" + std::to_string(i); }

const json& need(const json& j, const std::string& key, const std::string& ptr) {
  if (!j.is_object()) fail(ptr, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(ptr, "missing key \"" + key + "\"");
  return *it;
}

const json& array_at(const json& j, const std::string& key, const std::string& ptr) {
  static const json empty = json::array();
  if (!j.is_object()) fail(ptr, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) return empty;
  if (!it->is_array()) fail(child(ptr, key), "expected an array");
  return *it;
}

std::size_t edge_index(const OneComplex& X, const json& j, const std::string& ptr) {
  if (is_natural(j)) {
    auto e = j.get<std::size_t>();
    if (e >= X.edge_count()) fail(ptr, "edge index out of range");
    return e;
  }
  if (j.is_string()) {
    if (auto e = X.find_edge(j.get<std::string>())) return *e;
    fail(ptr, "unknown edge \"" + j.get<std::string>() + "\"");
  }
  fail(ptr, "expected an edge id");
}

Site site_of(const OneComplex& X, const json& j, const std::string& ptr) {
  if (j.contains("vertex")) {
    const auto& v = j["vertex"];
    if (!v.is_string()) fail(child(ptr, "vertex"), "expected a vertex name");
    auto idx = X.find_vertex(v.get<std::string>());
    if (!idx) fail(child(ptr, "vertex"), "unknown vertex \"" + v.get<std::string>() + "\"");
    return Site::vertex(*idx);
  }
  const std::size_t e = edge_index(X, need(j, "edge", ptr), child(ptr, "edge"));
  const Q t = parse_rational(need(j, "pos", ptr), child(ptr, "pos"));
  if (t < Q(0) || t > X.edge(e).length) fail(child(ptr, "pos"), "position outside the edge");
  return make_site(X, e, t);
}

std::vector<Interval> intervals_of(const OneComplex& X, const json& j, const std::string& ptr) {
  std::vector<Interval> out;
  const auto& arr = array_at(j, "intervals", ptr);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string p = child(child(ptr, "intervals"), i);
    const std::size_t e = edge_index(X, need(arr[i], "edge", p), child(p, "edge"));
    Q a = parse_rational(need(arr[i], "from", p), child(p, "from"));
    Q b = parse_rational(need(arr[i], "to", p), child(p, "to"));
    if (!(a < b) || a < Q(0) || b > X.edge(e).length) fail(p, "interval is not a subinterval of its edge");
    out.push_back({e, a, b});
  }
  return out;
}

template <class Fn>
auto with_context(const std::string& ptr, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::InvalidInput && e.witness().rfind('/', 0) == 0) throw;
    throw Error(e.kind(), std::string(e.what()) + " (in " + (ptr.empty() ? "/" : ptr) + ")", e.witness());
  }
}

}  // namespace

Q parse_rational(const json& j, const std::string& ptr) {
  if (j.is_number_integer()) return Q(j.get<std::int64_t>());
  if (!j.is_string()) fail(ptr, "expected a rational \"p/q\"");
  const std::string s = j.get<std::string>();
  try {
    std::size_t used = 0;
    auto slash = s.find('/');
    std::int64_t num = std::stoll(s.substr(0, slash), &used);
    if (used != (slash == std::string::npos ? s.size() : slash)) throw std::invalid_argument(s);
    std::int64_t den = 1;
    if (slash != std::string::npos) {
      den = std::stoll(s.substr(slash + 1), &used);
      if (used != s.size() - slash - 1) throw std::invalid_argument(s);
    }
    if (den == 0) fail(ptr, "zero denominator");
    return Q(num, den);
  } catch (const std::logic_error&) {
    fail(ptr, "malformed rational \"" + s + "\"");
  }
}

ExtNat parse_value(const json& j, const std::string& ptr) {
  if (j.is_string() && (j.get<std::string>() == "inf" || j.get<std::string>() == "INF")) return kInf;
  if (is_natural(j)) return ExtNat(j.get<std::uint64_t>());
  fail(ptr, "expected a natural number or \"inf\"");
}

Site parse_site(const OneComplex& X, const std::string& text) {
  if (auto v = X.find_vertex(text)) return Site::vertex(*v);
  auto colon = text.rfind(':');
  if (colon == std::string::npos) throw Error(ErrorKind::InvalidInput, "unknown point \"" + text + "\"", text);
  auto idx = X.find_edge(text.substr(0, colon));
  if (!idx) {
    try {
      idx = std::stoul(text.substr(0, colon));
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::InvalidInput, "unknown edge in \"" + text + "\"", text);
    }
    if (*idx >= X.edge_count()) throw Error(ErrorKind::InvalidInput, "edge index out of range", text);
  }
  Q t = parse_rational(json(text.substr(colon + 1)), "");
  if (t < Q(0) || t > X.edge(*idx).length) throw Error(ErrorKind::InvalidInput, "position outside the edge", text);
  return make_site(X, *idx, t);
}

json Reader::load(const std::string& path) const {
  std::filesystem::path p = path;
  if (p.is_relative()) p = base / p;
  std::ifstream in(p);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot open " + p.string(), p.string());
  try {
    json doc = json::parse(in);
    // Nested references are relative to the referring document.
    const auto dir = p.parent_path();
    std::function<void(json&)> rebase = [&](json& j) {
      if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s.size() > 5 && s.compare(s.size() - 5, 5, ".json") == 0 && std::filesystem::path(s).is_relative())
          j = (dir / s).string();
      } else if (j.is_structured()) {
        for (auto& child : j) rebase(child);
      }
    };
    rebase(doc);
    return doc;
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::InvalidInput, p.string() + ": " + e.what(), p.string());
  }
}

json Reader::resolve(const json& j, const std::string& ptr) const {
  if (j.is_string()) {
    try {
      return load(j.get<std::string>());
    } catch (const Error& e) {
      fail(ptr, e.what());
    }
  }
  if (!j.is_object()) fail(ptr, "expected an object or a file path");
  return j;
}

ComplexPtr Reader::space(const json& jin, const std::string& ptr) const {
  if (jin.is_string()) {
    const std::string name = jin.get<std::string>();
    if (name == "interval") return unit_interval();
    if (name == "triangle") return triangle();
    if (name == "tripod") return tripod();
    if (name.rfind("circle", 0) == 0 && name.size() > 6) {
      try {
        return circle(std::stoul(name.substr(6)));
      } catch (const std::logic_error&) {
        fail(ptr, "malformed circle size");
      }
    }
  }
  const json j = resolve(jin, ptr);
  std::vector<std::string> vs;
  const auto& va = need(j, "vertices", ptr);
  if (!va.is_array()) fail(child(ptr, "vertices"), "expected an array");
  for (std::size_t i = 0; i < va.size(); ++i) {
    if (!va[i].is_string()) fail(child(child(ptr, "vertices"), i), "expected a vertex name");
    vs.push_back(va[i].get<std::string>());
  }
  std::vector<EdgeSpec> es;
  const auto& ea = need(j, "edges", ptr);
  if (!ea.is_array()) fail(child(ptr, "edges"), "expected an array");
  for (std::size_t i = 0; i < ea.size(); ++i) {
    const std::string p = child(child(ptr, "edges"), i);
    auto str = [&](const char* key) {
      const auto& v = need(ea[i], key, p);
      if (!v.is_string()) fail(child(p, key), "expected a string");
      return v.get<std::string>();
    };
    es.push_back({str("id"), str("from"), str("to"), parse_rational(need(ea[i], "length", p), child(p, "length"))});
  }
  return with_context(ptr, [&] { return std::make_shared<const OneComplex>(OneComplex::build(vs, es)); });
}

FieldPtr Reader::field(const json& jin, const std::string& ptr) const {
  if (jin.is_string() && (jin == "trivial" || jin == "drop")) {
    auto X = unit_interval();
    return jin == "trivial" ? ModelField::trivial(X) : ModelField::make(X, {{0, Q(1, 3), {1, 1}}});
  }
  const json j = resolve(jin, ptr);
  ComplexPtr X = space(need(j, "space", ptr), child(ptr, "space"));
  std::vector<ExceptionalPoint> ex;
  const auto& arr = array_at(j, "exceptional", ptr);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string p = child(child(ptr, "exceptional"), i);
    const std::size_t e = edge_index(*X, need(arr[i], "edge", p), child(p, "edge"));
    ExceptionalPoint pt{e, parse_rational(need(arr[i], "pos", p), child(p, "pos")), {}};
    if (arr[i].contains("weights")) {
      const auto& w = arr[i]["weights"];
      if (!w.is_array()) fail(child(p, "weights"), "expected an array");
      for (std::size_t k = 0; k < w.size(); ++k) {
        if (!is_natural(w[k])) fail(child(child(p, "weights"), k), "expected a positive integer");
        pt.weights.push_back(w[k].get<std::uint64_t>());
      }
    }
    if (arr[i].contains("arity")) {
      if (!is_natural(arr[i]["arity"])) fail(child(p, "arity"), "expected a positive integer");
      auto k = arr[i]["arity"].get<std::size_t>();
      if (pt.weights.empty()) pt.weights.assign(k, 1);
      if (pt.weights.size() != k) fail(child(p, "arity"), "arity does not match the number of weights");
    }
    if (pt.weights.empty()) fail(p, "missing arity or weights");
    ex.push_back(std::move(pt));
  }
  return with_context(ptr, [&] { return ModelField::make(X, std::move(ex)); });
}

StepFn Reader::function(const ComplexPtr& X, const json& jin, const std::string& ptr) const {
  const json j = resolve(jin, ptr);
  std::vector<Piece> pieces;
  const auto& pa = array_at(j, "pieces", ptr);
  for (std::size_t i = 0; i < pa.size(); ++i) {
    const std::string p = child(child(ptr, "pieces"), i);
    pieces.push_back({edge_index(*X, need(pa[i], "edge", p), child(p, "edge")),
                      parse_rational(need(pa[i], "from", p), child(p, "from")),
                      parse_rational(need(pa[i], "to", p), child(p, "to")),
                      parse_value(need(pa[i], "value", p), child(p, "value"))});
  }
  std::vector<PointValue> points;
  const auto& qa = array_at(j, "points", ptr);
  for (std::size_t i = 0; i < qa.size(); ++i) {
    const std::string p = child(child(ptr, "points"), i);
    points.push_back({site_of(*X, qa[i], p), parse_value(need(qa[i], "value", p), child(p, "value"))});
  }
  return with_context(ptr, [&] { return stepfn_make(X, pieces, points); });
}

FieldElement Reader::element(const FieldPtr& F, const json& jin, const std::string& ptr) const {
  const json j = resolve(jin, ptr);
  const auto& X = F->complex_ptr();
  StepFn base = function(X, j, ptr);
  std::map<std::size_t, Tuple> tuples;
  for (std::size_t i = 0; i < F->exceptional().size(); ++i)
    tuples[i] = Tuple(F->exceptional()[i].arity(), ExtNat(0));
  const auto& ea = array_at(j, "exceptional", ptr);
  for (std::size_t i = 0; i < ea.size(); ++i) {
    const std::string p = child(child(ptr, "exceptional"), i);
    Site s = site_of(*X, ea[i], p);
    auto idx = F->exceptional_at(s);
    if (!idx) fail(p, "no exceptional point of the field here");
    const auto& ta = need(ea[i], "tuple", p);
    if (!ta.is_array() || ta.size() != F->exceptional()[*idx].arity())
      fail(child(p, "tuple"), "expected a tuple of arity " + std::to_string(F->exceptional()[*idx].arity()));
    Tuple t;
    for (std::size_t k = 0; k < ta.size(); ++k) t.push_back(parse_value(ta[k], child(child(p, "tuple"), k)));
    tuples[*idx] = std::move(t);
  }
  FieldElement out = with_context(ptr, [&] { return FieldElement(F, base, std::move(tuples)); });
  if (j.contains("patch")) {
    CellSet P = patch(X, j["patch"], child(ptr, "patch"));
    out = with_context(child(ptr, "patch"), [&] { return field_restrict(out, P); });
  }
  return out;
}

CellSet Reader::patch(const ComplexPtr& X, const json& jin, const std::string& ptr) const {
  if (jin.is_string() && jin == "whole") return CellSet::whole(Subdivision(X));
  const json j = resolve(jin, ptr);
  std::vector<Site> sites;
  const auto& qa = array_at(j, "points", ptr);
  for (std::size_t i = 0; i < qa.size(); ++i) sites.push_back(site_of(*X, qa[i], child(child(ptr, "points"), i)));
  CellSet out = cellset_from(X, intervals_of(*X, j, ptr), sites, true);
  if (!out.is_closed()) fail(ptr, "patch is not closed");
  return out;
}

CellSet Reader::open_set(const ComplexPtr& X, const json& jin, const std::string& ptr) const {
  if (jin.is_string() && jin == "whole") return CellSet::whole(Subdivision(X));
  const json j = resolve(jin, ptr);
  std::vector<Site> sites;
  const auto& va = array_at(j, "vertices", ptr);
  for (std::size_t i = 0; i < va.size(); ++i) {
    const std::string p = child(child(ptr, "vertices"), i);
    if (!va[i].is_string()) fail(p, "expected a vertex name");
    auto v = X->find_vertex(va[i].get<std::string>());
    if (!v) fail(p, "unknown vertex");
    sites.push_back(Site::vertex(*v));
  }
  const auto& qa = array_at(j, "points", ptr);
  for (std::size_t i = 0; i < qa.size(); ++i) sites.push_back(site_of(*X, qa[i], child(child(ptr, "points"), i)));
  CellSet out = cellset_from(X, intervals_of(*X, j, ptr), sites, false);
  if (!out.is_open()) fail(ptr, "set is not open");
  return out;
}

PCSection Reader::section(const FieldPtr& F, const json& jin, const std::string& ptr) const {
  const json j = resolve(jin, ptr);
  const auto& ca = need(j, "cover", ptr);
  if (!ca.is_array()) fail(child(ptr, "cover"), "expected an array");
  std::vector<CellSet> cover;
  for (std::size_t i = 0; i < ca.size(); ++i)
    cover.push_back(open_set(F->complex_ptr(), ca[i], child(child(ptr, "cover"), i)));
  const auto& vals = need(j, "values", ptr);
  if (!vals.is_object()) fail(child(ptr, "values"), "expected an object");
  std::vector<std::optional<FieldElement>> singles(cover.size());
  std::map<std::pair<std::size_t, std::size_t>, FieldElement> pairs;
  for (const auto& [key, v] : vals.items()) {
    const std::string p = child(child(ptr, "values"), key);
    auto index = [&](const std::string& s) {
      try {
        std::size_t used = 0;
        auto i = std::stoul(s, &used);
        if (used == s.size() && i < cover.size()) return static_cast<std::size_t>(i);
      } catch (const std::logic_error&) {
      }
      fail(p, "key must name cover indices \"i\" or \"i,j\"");
    };
    auto comma = key.find(',');
    if (comma == std::string::npos) {
      singles[index(key)] = element(F, v, p);
    } else {
      pairs.emplace(std::pair{index(key.substr(0, comma)), index(key.substr(comma + 1))}, element(F, v, p));
    }
  }
  std::vector<FieldElement> s;
  for (std::size_t i = 0; i < singles.size(); ++i) {
    if (!singles[i]) fail(child(ptr, "values"), "missing value for cover set " + std::to_string(i));
    s.push_back(*singles[i]);
  }
  return with_context(ptr, [&] { return pcs_make(F, std::move(cover), std::move(s), std::move(pairs)); });
}

IsoCandidate Reader::iso(const FieldPtr& FA, const FieldPtr& FB, const json& jin, const std::string& ptr) const {
  const json j = resolve(jin, ptr);
  const auto& pa = need(j, "pairs", ptr);
  if (!pa.is_array()) fail(child(ptr, "pairs"), "expected an array");
  IsoCandidate out{FA, FB, {}, false, {}};
  for (std::size_t i = 0; i < pa.size(); ++i) {
    const std::string p = child(child(ptr, "pairs"), i);
    if (!pa[i].is_array() || pa[i].size() != 2) fail(p, "expected a pair [element, element]");
    out.pairs.emplace_back(element(FA, pa[i][0], child(p, 0)), element(FB, pa[i][1], child(p, 1)));
  }
  return out;
}

namespace {

json value_json(ExtNat v) { return v.is_inf() ? json("inf") : json(v.value()); }

}  // namespace

json to_json(const OneComplex& X) {
  json j;
  j["vertices"] = json::array();
  for (std::size_t v = 0; v < X.vertex_count(); ++v) j["vertices"].push_back(X.vertex_name(v));
  j["edges"] = json::array();
  for (std::size_t e = 0; e < X.edge_count(); ++e) {
    const auto& E = X.edge(e);
    j["edges"].push_back(
        {{"id", E.id}, {"from", X.vertex_name(E.from)}, {"to", X.vertex_name(E.to)}, {"length", to_string(E.length)}});
  }
  return j;
}

json to_json(const FieldElement& s) {
  const auto& X = s.field()->complex();
  const auto& d = s.base().data();
  const auto& sub = d.sub;
  json j;
  j["pieces"] = json::array();
  j["points"] = json::array();
  bool partial = false;
  for (std::size_t q = 0; q < sub.segment_count(); ++q) {
    partial = partial || !d.v.segs[q];
    j["pieces"].push_back({{"edge", X.edge(sub.segment_edge(q)).id},
                           {"from", to_string(sub.segment_start(q))},
                           {"to", to_string(sub.segment_end(q))},
                           {"value", value_json(d.v.segs[q].value_or(kInf))}});
  }
  for (std::size_t p = 0; p < sub.point_count(); ++p) {
    const Site& site = sub.point_site(p);
    if (!d.v.points[p]) {
      partial = true;
      continue;
    }
    if (s.field()->exceptional_at(site)) continue;
    json pt = site.is_vertex ? json{{"vertex", X.vertex_name(site.index)}}
                             : json{{"edge", X.edge(site.index).id}, {"pos", to_string(site.t)}};
    pt["value"] = value_json(*d.v.points[p]);
    j["points"].push_back(pt);
  }
  j["exceptional"] = json::array();
  for (const auto& [i, t] : s.tuples()) {
    const auto& e = s.field()->exceptional()[i];
    json tj = json::array();
    for (const auto& x : t) tj.push_back(value_json(x));
    j["exceptional"].push_back({{"edge", X.edge(e.edge).id}, {"pos", to_string(e.pos)}, {"tuple", tj}});
  }
  if (partial) {
    json patch{{"intervals", json::array()}, {"points", json::array()}};
    for (std::size_t q = 0; q < sub.segment_count(); ++q)
      if (d.v.segs[q])
        patch["intervals"].push_back({{"edge", X.edge(sub.segment_edge(q)).id},
                                      {"from", to_string(sub.segment_start(q))},
                                      {"to", to_string(sub.segment_end(q))}});
    j["patch"] = patch;
  }
  return j;
}

}  // namespace cusheaf::io
