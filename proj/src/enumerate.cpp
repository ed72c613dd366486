#include "treemult/enumerate.hpp"

#include <algorithm>
#include <string>

#include "treemult/error.hpp"

namespace treemult {

namespace {

using Layout = std::vector<int>;

// Next rooted level sequence in reverse lexicographic order, regenerating the
// suffix from position p. Empty result means the sequence was the last one.
Layout next_rooted(const Layout& prev, std::size_t p) {
  if (p == 0) return {};
  std::size_t q = p - 1;
  while (prev[q] != prev[p] - 1) --q;
  Layout out = prev;
  for (std::size_t k = p; k < out.size(); ++k) out[k] = out[k - p + q];
  return out;
}

Layout next_rooted(const Layout& prev) {
  std::size_t p = prev.size() - 1;
  while (p > 0 && prev[p] == 1) --p;
  return next_rooted(prev, p);
}

// Splits at the second depth-1 vertex: left is the first subtree of the root
// (depths shifted by one), rest is the root with the remaining subtrees.
std::pair<Layout, Layout> split(const Layout& layout) {
  std::size_t m = layout.size();
  bool one_found = false;
  for (std::size_t k = 0; k < layout.size(); ++k) {
    if (layout[k] != 1) continue;
    if (one_found) {
      m = k;
      break;
    }
    one_found = true;
  }
  Layout left;
  for (std::size_t k = 1; k < m; ++k) left.push_back(layout[k] - 1);
  Layout rest{0};
  rest.insert(rest.end(), layout.begin() + static_cast<std::ptrdiff_t>(m), layout.end());
  return {std::move(left), std::move(rest)};
}

// Advances candidate to the next level sequence that is the canonical
// (centrally rooted) form of a free tree.
Layout next_free(Layout candidate) {
  while (!candidate.empty()) {
    auto [left, rest] = split(candidate);
    const int left_height = *std::max_element(left.begin(), left.end());
    const int rest_height = *std::max_element(rest.begin(), rest.end());
    bool valid = rest_height >= left_height;
    if (valid && rest_height == left_height) {
      if (left.size() > rest.size()) {
        valid = false;
      } else if (left.size() == rest.size() && left > rest) {
        valid = false;
      }
    }
    if (valid) return candidate;

    const std::size_t p = left.size();
    Layout next = next_rooted(candidate, p);
    if (!next.empty() && candidate[p] > 2) {
      auto [new_left, new_rest] = split(next);
      const int new_left_height = *std::max_element(new_left.begin(), new_left.end());
      const std::size_t suffix = static_cast<std::size_t>(new_left_height) + 1;
      for (std::size_t k = 0; k < suffix; ++k) next[next.size() - suffix + k] = static_cast<int>(k) + 1;
    }
    candidate = std::move(next);
  }
  return candidate;
}

}  // namespace

Tree tree_from_level_sequence(const std::vector<int>& layout) {
  std::vector<Edge> edges;
  std::vector<Vertex> stack;
  for (Vertex v = 0; v < layout.size(); ++v) {
    while (!stack.empty() && layout[stack.back()] >= layout[v]) stack.pop_back();
    if (!stack.empty()) edges.emplace_back(stack.back(), v);
    stack.push_back(v);
  }
  return Tree(layout.size(), edges);
}

FreeTreeEnumerator::FreeTreeEnumerator(std::size_t n, std::size_t cap) : n_(n) {
  if (n == 0) throw std::invalid_argument("enumerate_trees: n must be positive");
  if (n > cap) {
    throw Error(ErrorCode::LimitExceeded, "n = " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
  }
  if (n >= 2) {
    // Start from the path rooted at its center.
    for (std::size_t k = 0; k <= n / 2; ++k) layout_.push_back(static_cast<int>(k));
    for (std::size_t k = 1; k < (n + 1) / 2; ++k) layout_.push_back(static_cast<int>(k));
  }
}

std::optional<Tree> FreeTreeEnumerator::next() {
  if (done_) return std::nullopt;
  if (n_ == 1) {
    done_ = true;
    return Tree::single_vertex();
  }
  if (started_) layout_ = next_rooted(layout_);
  started_ = true;
  if (!layout_.empty()) layout_ = next_free(std::move(layout_));
  if (layout_.empty()) {
    done_ = true;
    return std::nullopt;
  }
  return tree_from_level_sequence(layout_);
}

void for_each_tree(std::size_t n, const std::function<bool(const Tree&)>& visit, std::size_t cap) {
  FreeTreeEnumerator gen(n, cap);
  while (auto t = gen.next()) {
    if (!visit(*t)) return;
  }
}

std::vector<Tree> enumerate_trees(std::size_t n, std::size_t cap) {
  std::vector<Tree> out;
  for_each_tree(n, [&](const Tree& t) {
    out.push_back(t);
    return true;
  }, cap);
  return out;
}

}  // namespace treemult
