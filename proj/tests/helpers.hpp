#pragma once

#include <random>

#include "oracles.hpp"
#include "treemult/tree.hpp"

namespace testing_support {

inline oracle::EdgeList edges_of(const treemult::Tree& t) {
  oracle::EdgeList out;
  for (auto [u, v] : t.edges()) out.emplace_back(static_cast<int>(u), static_cast<int>(v));
  return out;
}

inline treemult::Tree tree_of(int n, const oracle::EdgeList& edges) {
  std::vector<treemult::Edge> e;
  for (auto [u, v] : edges) e.emplace_back(static_cast<treemult::Vertex>(u), static_cast<treemult::Vertex>(v));
  return treemult::Tree(static_cast<std::size_t>(n), e);
}

/// Uniform labeled tree via a random Pruefer sequence.
inline treemult::Tree random_tree(int n, std::mt19937_64& rng) {
  if (n == 1) return treemult::Tree::single_vertex();
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::vector<int> seq(std::max(0, n - 2));
  for (auto& s : seq) s = pick(rng);
  return tree_of(n, n == 2 ? oracle::EdgeList{{0, 1}} : oracle::prufer_decode(seq, n));
}

}  // namespace testing_support
