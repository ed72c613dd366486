#pragma once

#include <string>
#include <vector>

#include "treemult/tree.hpp"

namespace treemult {

/// Canonical level sequence of a free tree plus the vertex order realizing it.
///
/// The tree is rooted at its centroid; children are ordered by ascending
/// rooted code and the code is the preorder sequence of depths. A
/// bicentroidal tree is encoded from both centroids and the lexicographically
/// smaller sequence is kept. Two trees are isomorphic iff their codes match.
struct CanonicalForm {
  /// code[k] is the depth of the k-th vertex in canonical preorder.
  std::string code;
  /// order[k] is the original id of the k-th vertex in canonical preorder.
  std::vector<Vertex> order;
};

/// One or two centroid vertices, ascending.
std::vector<Vertex> centroids(const Tree& t);

CanonicalForm canonical_form(const Tree& t);

inline std::string canonical_code(const Tree& t) { return canonical_form(t).code; }

/// The tree relabeled into canonical preorder; isomorphic inputs give equal outputs.
Tree canonical_tree(const Tree& t);

}  // namespace treemult
