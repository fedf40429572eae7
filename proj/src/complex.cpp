#include "cusheaf/complex.hpp"

#include "cusheaf/error.hpp"

#include <numeric>

namespace cusheaf {

OneComplex OneComplex::build(std::vector<std::string> vertices, const std::vector<EdgeSpec>& edges) {
  OneComplex X;
  X.vertices_ = std::move(vertices);
  if (X.vertices_.empty()) throw Error(ErrorKind::InvalidInput, "complex has no vertices");
  for (std::size_t i = 0; i < X.vertices_.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (X.vertices_[i] == X.vertices_[j])
        throw Error(ErrorKind::InvalidInput, "duplicate vertex '" + X.vertices_[i] + "'", X.vertices_[i]);
  X.incident_.resize(X.vertices_.size());
  for (const auto& spec : edges) {
    auto from = X.find_vertex(spec.from);
    auto to = X.find_vertex(spec.to);
    if (!from || !to)
      throw Error(ErrorKind::InvalidInput, "edge '" + spec.id + "' has a dangling endpoint", spec.id);
    if (spec.length <= Q(0))
      throw Error(ErrorKind::InvalidInput, "edge '" + spec.id + "' has nonpositive length", spec.id);
    if (X.find_edge(spec.id))
      throw Error(ErrorKind::InvalidInput, "duplicate edge '" + spec.id + "'", spec.id);
    std::size_t e = X.edges_.size();
    X.edges_.push_back(Edge{spec.id, *from, *to, spec.length});
    X.incident_[*from].push_back(EdgeEnd{e, true});
    X.incident_[*to].push_back(EdgeEnd{e, false});
  }
  return X;
}

std::optional<std::size_t> OneComplex::find_vertex(const std::string& name) const {
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    if (vertices_[i] == name) return i;
  return std::nullopt;
}

std::optional<std::size_t> OneComplex::find_edge(const std::string& id) const {
  for (std::size_t i = 0; i < edges_.size(); ++i)
    if (edges_[i].id == id) return i;
  return std::nullopt;
}

std::size_t OneComplex::component_count() const {
  std::vector<std::size_t> parent(vertices_.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : edges_) parent[find(e.from)] = find(e.to);
  std::size_t n = 0;
  for (std::size_t i = 0; i < parent.size(); ++i) n += find(i) == i;
  return n;
}

std::size_t OneComplex::cycle_rank() const {
  return edges_.size() + component_count() - vertices_.size();
}

bool OneComplex::same_shape(const OneComplex& other) const {
  if (vertices_ != other.vertices_ || edges_.size() != other.edges_.size()) return false;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const auto& a = edges_[i];
    const auto& b = other.edges_[i];
    if (a.id != b.id || a.from != b.from || a.to != b.to || a.length != b.length) return false;
  }
  return true;
}

Site make_site(const OneComplex& X, std::size_t edge, const Q& t) {
  const auto& e = X.edge(edge);
  if (t < Q(0) || t > e.length)
    throw Error(ErrorKind::InvalidInput, "offset " + to_string(t) + " outside edge '" + e.id + "'");
  if (t == Q(0)) return Site::vertex(e.from);
  if (t == e.length) return Site::vertex(e.to);
  return Site::on_edge(edge, t);
}

std::string describe(const OneComplex& X, const Site& s) {
  if (s.is_vertex) return X.vertex_name(s.index);
  return X.edge(s.index).id + ":" + to_string(s.t);
}

ComplexPtr unit_interval() {
  return std::make_shared<const OneComplex>(OneComplex::build({"v0", "v1"}, {{"e", "v0", "v1", Q(1)}}));
}

ComplexPtr triangle() {
  return std::make_shared<const OneComplex>(OneComplex::build(
      {"a", "b", "c"}, {{"ab", "a", "b", Q(1)}, {"bc", "b", "c", Q(1)}, {"ca", "c", "a", Q(1)}}));
}

ComplexPtr circle(std::size_t n) {
  std::vector<std::string> vs;
  std::vector<EdgeSpec> es;
  for (std::size_t i = 0; i < n; ++i) vs.push_back("p" + std::to_string(i));
  for (std::size_t i = 0; i < n; ++i)
    es.push_back({"s" + std::to_string(i), vs[i], vs[(i + 1) % n], Q(1, static_cast<std::int64_t>(n))});
  return std::make_shared<const OneComplex>(OneComplex::build(vs, es));
}

ComplexPtr single_point() {
  return std::make_shared<const OneComplex>(OneComplex::build({"pt"}, {}));
}

ComplexPtr tripod() {
  return std::make_shared<const OneComplex>(OneComplex::build(
      {"o", "x", "y", "z"}, {{"ox", "o", "x", Q(1)}, {"oy", "o", "y", Q(1)}, {"oz", "o", "z", Q(1)}}));
}

}  // namespace cusheaf
