#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace treemult {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

/// Finite simple tree on vertices 0..n-1, n >= 1, stored as sorted
/// adjacency lists. Immutable after construction.
class Tree {
 public:
  /// Throws Error(NotATree) if the edges do not form a tree on n vertices.
  Tree(std::size_t n, std::span<const Edge> edges);
  Tree(std::size_t n, std::initializer_list<Edge> edges) : Tree(n, std::span<const Edge>(edges.begin(), edges.size())) {}

  static Tree single_vertex() { return Tree(1, std::span<const Edge>{}); }
  static Tree path(std::size_t n);
  /// K_{1,leaves}; center is vertex 0.
  static Tree star(std::size_t leaves);
  /// One center (vertex 0) with a pendant path of each given length.
  static Tree spider(std::span<const std::size_t> legs);
  static Tree spider(std::initializer_list<std::size_t> legs) {
    return spider(std::span<const std::size_t>(legs.begin(), legs.size()));
  }

  std::size_t size() const noexcept { return adjacency_.size(); }
  std::size_t degree(Vertex v) const { return adjacency_.at(v).size(); }
  std::span<const Vertex> neighbors(Vertex v) const { return adjacency_.at(v); }
  bool adjacent(Vertex u, Vertex v) const;

  /// Edges (u, v) with u < v in lexicographic order.
  std::vector<Edge> edges() const;

  /// True for the single vertex and for every path.
  bool is_path() const noexcept;

  friend bool operator==(const Tree&, const Tree&) = default;

 private:
  std::vector<std::vector<Vertex>> adjacency_;
};

/// Degree-1 vertex, or the sole vertex of a single-vertex tree.
bool is_pendant(const Tree& t, Vertex v);

/// Number of pendant vertices; 2 for the single-vertex tree by convention.
std::size_t pendant_count(const Tree& t);

/// Number of vertices of degree >= 3.
std::size_t major_count(const Tree& t);

std::vector<Vertex> pendant_vertices(const Tree& t);
std::vector<Vertex> major_vertices(const Tree& t);

/// One connected component of T - v.
struct Component {
  Tree tree;
  /// Vertex of this component (in its own labeling) adjacent to the removed vertex.
  Vertex attach = 0;
  /// to_parent[c] is the parent-tree id of component vertex c.
  std::vector<Vertex> to_parent;
};

struct ForestDecomposition {
  Vertex removed_vertex = 0;
  /// One component per neighbor of removed_vertex, in neighbor order.
  std::vector<Component> components;
};

ForestDecomposition delete_vertex(const Tree& t, Vertex v);

/// Tree with vertex old relabeled as order-index: the vertex order[k] of t
/// becomes vertex k. order must be a permutation of 0..n-1.
Tree relabel(const Tree& t, std::span<const Vertex> order);

}  // namespace treemult
