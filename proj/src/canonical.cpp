#include "treemult/canonical.hpp"

#include <algorithm>

namespace treemult {

namespace {

struct Rooted {
  std::string code;
  std::vector<Vertex> order;
};

Rooted encode(const Tree& t, Vertex v, Vertex parent, char depth) {
  std::vector<Rooted> children;
  for (Vertex c : t.neighbors(v)) {
    if (c != parent) children.push_back(encode(t, c, v, static_cast<char>(depth + 1)));
  }
  std::sort(children.begin(), children.end(), [](const Rooted& a, const Rooted& b) { return a.code < b.code; });
  Rooted out;
  out.code.push_back(depth);
  out.order.push_back(v);
  for (auto& child : children) {
    out.code += child.code;
    out.order.insert(out.order.end(), child.order.begin(), child.order.end());
  }
  return out;
}

}  // namespace

std::vector<Vertex> centroids(const Tree& t) {
  const std::size_t n = t.size();
  // Iterative DFS from vertex 0 for subtree sizes.
  std::vector<Vertex> parent(n, 0);
  std::vector<Vertex> order;
  order.reserve(n);
  std::vector<Vertex> stack{0};
  std::vector<bool> seen(n, false);
  seen[0] = true;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    order.push_back(v);
    for (Vertex w : t.neighbors(v)) {
      if (!seen[w]) {
        seen[w] = true;
        parent[w] = v;
        stack.push_back(w);
      }
    }
  }
  std::vector<std::size_t> size(n, 1);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (*it != 0) size[parent[*it]] += size[*it];
  }

  std::vector<Vertex> out;
  for (Vertex v = 0; v < n; ++v) {
    std::size_t heaviest = n - size[v];
    for (Vertex w : t.neighbors(v)) {
      if (w != 0 && parent[w] == v) heaviest = std::max(heaviest, size[w]);
    }
    if (2 * heaviest <= n) out.push_back(v);
  }
  return out;
}

CanonicalForm canonical_form(const Tree& t) {
  constexpr Vertex kNoParent = ~Vertex{0};
  const auto roots = centroids(t);
  Rooted best = encode(t, roots.front(), kNoParent, 0);
  if (roots.size() == 2) {
    Rooted other = encode(t, roots.back(), kNoParent, 0);
    if (other.code < best.code) best = std::move(other);
  }
  return {std::move(best.code), std::move(best.order)};
}

Tree canonical_tree(const Tree& t) { return relabel(t, canonical_form(t).order); }

}  // namespace treemult
