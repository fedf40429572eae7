#ifndef CUSHEAF_COMPLEX_HPP
#define CUSHEAF_COMPLEX_HPP

#include "cusheaf/rational.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace cusheaf {

struct EdgeSpec {
  std::string id;
  std::string from;
  std::string to;
  Q length;
};

struct Edge {
  std::string id;
  std::size_t from;
  std::size_t to;
  Q length;
};

/// One end of an edge incident to a vertex. `at_start` means the edge
/// leaves the vertex at offset 0.
struct EdgeEnd {
  std::size_t edge;
  bool at_start;
};

/// A finite metric graph: vertices plus edges with positive rational lengths.
/// Loops and multi-edges are allowed.
class OneComplex {
 public:
  static OneComplex build(std::vector<std::string> vertices, const std::vector<EdgeSpec>& edges);

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::string& vertex_name(std::size_t v) const { return vertices_.at(v); }
  const Edge& edge(std::size_t e) const { return edges_.at(e); }
  const std::vector<EdgeEnd>& incident(std::size_t v) const { return incident_.at(v); }

  std::optional<std::size_t> find_vertex(const std::string& name) const;
  std::optional<std::size_t> find_edge(const std::string& id) const;

  std::size_t component_count() const;
  bool connected() const { return component_count() == 1; }
  /// Rank of H_1: E - V + components. Zero exactly for forests.
  std::size_t cycle_rank() const;

  bool same_shape(const OneComplex& other) const;

 private:
  std::vector<std::string> vertices_;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeEnd>> incident_;
};

using ComplexPtr = std::shared_ptr<const OneComplex>;

/// A point of the complex, either a vertex or an offset strictly inside an edge.
struct Site {
  bool is_vertex = false;
  std::size_t index = 0;  // vertex index or edge index
  Q t{0};                 // offset along the edge (unused for vertices)

  static Site vertex(std::size_t v) { return Site{true, v, Q(0)}; }
  static Site on_edge(std::size_t e, Q t) { return Site{false, e, t}; }

  friend bool operator==(const Site& a, const Site& b) {
    return a.is_vertex == b.is_vertex && a.index == b.index && (a.is_vertex || a.t == b.t);
  }
};

/// Canonical site for (edge, offset): offsets 0 and L collapse to vertices.
Site make_site(const OneComplex& X, std::size_t edge, const Q& t);
std::string describe(const OneComplex& X, const Site& s);

/// Standard complexes used throughout the tests and the CLI.
ComplexPtr unit_interval();
ComplexPtr triangle();
/// A cycle made of `n` edges of length 1/n.
ComplexPtr circle(std::size_t n);
ComplexPtr single_point();
/// Three unit edges meeting at a central vertex.
ComplexPtr tripod();

}  // namespace cusheaf

#endif
