#include "treemult/tree.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "treemult/error.hpp"

namespace treemult {

Tree::Tree(std::size_t n, std::span<const Edge> edges) {
  if (n == 0) throw Error(ErrorCode::NotATree, "empty vertex set");
  if (edges.size() != n - 1) {
    throw Error(ErrorCode::NotATree,
                std::to_string(edges.size()) + " edges on " + std::to_string(n) + " vertices");
  }
  adjacency_.resize(n);
  // Union-find rejects cycles; with n-1 edges and no cycle the graph is connected.
  std::vector<Vertex> parent(n);
  std::iota(parent.begin(), parent.end(), Vertex{0});
  auto find = [&](Vertex v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (auto [u, v] : edges) {
    if (u >= n || v >= n) throw Error(ErrorCode::NotATree, "vertex id out of range");
    if (u == v) throw Error(ErrorCode::NotATree, "self-loop at " + std::to_string(u));
    const Vertex ru = find(u);
    const Vertex rv = find(v);
    if (ru == rv) throw Error(ErrorCode::NotATree, "cycle through edge " + std::to_string(u) + "-" + std::to_string(v));
    parent[ru] = rv;
    adjacency_[u].push_back(v);
    adjacency_[v].push_back(u);
  }
  for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
}

Tree Tree::path(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex v = 1; v < n; ++v) edges.emplace_back(v - 1, v);
  return Tree(n, edges);
}

Tree Tree::star(std::size_t leaves) {
  std::vector<Edge> edges;
  for (Vertex v = 1; v <= leaves; ++v) edges.emplace_back(0, v);
  return Tree(leaves + 1, edges);
}

Tree Tree::spider(std::span<const std::size_t> legs) {
  std::vector<Edge> edges;
  Vertex next = 1;
  for (std::size_t len : legs) {
    Vertex prev = 0;
    for (std::size_t k = 0; k < len; ++k) {
      edges.emplace_back(prev, next);
      prev = next++;
    }
  }
  return Tree(next, edges);
}

bool Tree::adjacent(Vertex u, Vertex v) const {
  const auto& nbrs = adjacency_.at(u);
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

std::vector<Edge> Tree::edges() const {
  std::vector<Edge> out;
  out.reserve(size() - 1);
  for (Vertex u = 0; u < size(); ++u) {
    for (Vertex v : adjacency_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

bool Tree::is_path() const noexcept {
  return std::all_of(adjacency_.begin(), adjacency_.end(), [](const auto& nbrs) { return nbrs.size() <= 2; });
}

bool is_pendant(const Tree& t, Vertex v) { return t.size() == 1 || t.degree(v) == 1; }

std::size_t pendant_count(const Tree& t) {
  if (t.size() == 1) return 2;
  std::size_t count = 0;
  for (Vertex v = 0; v < t.size(); ++v) count += t.degree(v) == 1;
  return count;
}

std::size_t major_count(const Tree& t) {
  std::size_t count = 0;
  for (Vertex v = 0; v < t.size(); ++v) count += t.degree(v) >= 3;
  return count;
}

std::vector<Vertex> pendant_vertices(const Tree& t) {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < t.size(); ++v) {
    if (is_pendant(t, v)) out.push_back(v);
  }
  return out;
}

std::vector<Vertex> major_vertices(const Tree& t) {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < t.size(); ++v) {
    if (t.degree(v) >= 3) out.push_back(v);
  }
  return out;
}

ForestDecomposition delete_vertex(const Tree& t, Vertex v) {
  if (v >= t.size()) throw std::out_of_range("delete_vertex: vertex " + std::to_string(v));
  constexpr Vertex kUnset = ~Vertex{0};
  ForestDecomposition out;
  out.removed_vertex = v;

  std::vector<Vertex> local(t.size(), kUnset);
  std::vector<Vertex> stack;
  for (Vertex root : t.neighbors(v)) {
    // Vertices are numbered in DFS discovery order starting from the attach vertex.
    std::vector<Vertex> to_parent{root};
    std::vector<Edge> edges;
    local[root] = 0;
    stack.assign(1, root);
    while (!stack.empty()) {
      const Vertex u = stack.back();
      stack.pop_back();
      for (Vertex w : t.neighbors(u)) {
        if (w == v) continue;
        if (local[w] == kUnset) {
          local[w] = static_cast<Vertex>(to_parent.size());
          to_parent.push_back(w);
          stack.push_back(w);
        }
        if (local[u] < local[w]) edges.emplace_back(local[u], local[w]);
      }
    }
    Tree tree(to_parent.size(), edges);
    out.components.push_back(Component{std::move(tree), 0, std::move(to_parent)});
  }
  return out;
}

Tree relabel(const Tree& t, std::span<const Vertex> order) {
  if (order.size() != t.size()) throw std::invalid_argument("relabel: order size mismatch");
  std::vector<Vertex> position(t.size());
  for (Vertex k = 0; k < order.size(); ++k) position.at(order[k]) = k;
  std::vector<Edge> edges;
  edges.reserve(t.size() - 1);
  for (auto [u, v] : t.edges()) edges.emplace_back(position[u], position[v]);
  return Tree(t.size(), edges);
}

}  // namespace treemult
