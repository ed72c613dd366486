#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "treemult/tree.hpp"

namespace treemult {

inline constexpr std::size_t kDefaultEnumerationCap = 20;

/// Streams one representative of every isomorphism class of free trees on n
/// vertices (Wright-Richmond-Odlyzko-McKay level-sequence generation).
///
/// The order is deterministic. Each tree is labeled in the preorder of its
/// level sequence, so vertex 0 is the root of that sequence.
class FreeTreeEnumerator {
 public:
  /// Throws Error(LimitExceeded) when n > cap, std::invalid_argument when n == 0.
  explicit FreeTreeEnumerator(std::size_t n, std::size_t cap = kDefaultEnumerationCap);

  std::optional<Tree> next();

 private:
  std::size_t n_;
  bool done_ = false;
  bool started_ = false;
  std::vector<int> layout_;
};

/// Calls visit on every free tree of order n; stops early if visit returns false.
void for_each_tree(std::size_t n, const std::function<bool(const Tree&)>& visit,
                   std::size_t cap = kDefaultEnumerationCap);

std::vector<Tree> enumerate_trees(std::size_t n, std::size_t cap = kDefaultEnumerationCap);

/// Tree whose preorder depth sequence is layout (layout[0] == 0).
Tree tree_from_level_sequence(const std::vector<int>& layout);

}  // namespace treemult
