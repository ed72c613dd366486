#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "treemult/tree.hpp"

namespace treemult {

/// Raw graph6 encoding of an arbitrary simple graph (no relabeling).
std::string encode_graph6(std::size_t n, const std::vector<Edge>& edges);

/// Decodes any graph6 string; throws Error(MalformedGraph6).
std::pair<std::size_t, std::vector<Edge>> decode_graph6(std::string_view text);

/// graph6 of the canonical labeling: equal strings iff isomorphic trees.
std::string emit_graph6(const Tree& t);

/// Throws Error(MalformedGraph6) or Error(NotATree).
Tree parse_graph6(std::string_view text);

/// Inline edge list "0-1,1-2,..." with 0-based ids; n is one more than the
/// largest id.
Tree parse_edge_list(std::string_view text);

/// {"n": int, "edges": [[u, v], ...]}
Tree tree_from_json(std::string_view json_text);
std::string tree_to_json(const Tree& t);

}  // namespace treemult
