#pragma once

// Brute-force reference computations used only by the tests. None of these
// call into the library; they take plain edge lists.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

using EdgeList = std::vector<std::pair<int, int>>;

/// Labeled tree on n >= 2 vertices from its Pruefer sequence (length n - 2).
inline EdgeList prufer_decode(const std::vector<int>& seq, int n) {
  std::vector<int> degree(n, 1);
  for (int v : seq) ++degree[v];
  EdgeList edges;
  for (int v : seq) {
    int leaf = 0;
    while (degree[leaf] != 1) ++leaf;
    edges.emplace_back(leaf, v);
    --degree[leaf];
    --degree[v];
  }
  int u = -1;
  for (int w = 0; w < n; ++w) {
    if (degree[w] != 1) continue;
    if (u < 0) {
      u = w;
    } else {
      edges.emplace_back(u, w);
    }
  }
  return edges;
}

/// Every labeled tree on n vertices (n^(n-2) of them).
inline std::vector<EdgeList> labeled_trees(int n) {
  if (n == 1) return {EdgeList{}};
  if (n == 2) return {EdgeList{{0, 1}}};
  std::vector<EdgeList> out;
  std::vector<int> seq(n - 2, 0);
  while (true) {
    out.push_back(prufer_decode(seq, n));
    int k = n - 3;
    while (k >= 0 && seq[k] == n - 1) seq[k--] = 0;
    if (k < 0) break;
    ++seq[k];
  }
  return out;
}

inline std::vector<std::vector<int>> adjacency(int n, const EdgeList& edges) {
  std::vector<std::vector<int>> adj(n);
  for (auto [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  return adj;
}

/// AHU parenthesis string of the tree rooted at root.
inline std::string ahu(const std::vector<std::vector<int>>& adj, int root, int parent) {
  std::vector<std::string> kids;
  for (int c : adj[root]) {
    if (c != parent) kids.push_back(ahu(adj, c, root));
  }
  std::sort(kids.begin(), kids.end());
  std::string s = "(";
  for (const auto& k : kids) s += k;
  return s + ")";
}

/// Isomorphism invariant: minimum AHU string over every choice of root.
inline std::string naive_canonical(int n, const EdgeList& edges) {
  const auto adj = adjacency(n, edges);
  std::string best;
  for (int r = 0; r < n; ++r) {
    std::string s = ahu(adj, r, -1);
    if (r == 0 || s < best) best = s;
  }
  return best;
}

/// Number of isomorphism classes among labeled trees on n vertices.
inline std::size_t free_tree_classes(int n) {
  std::set<std::string> seen;
  for (const auto& t : labeled_trees(n)) seen.insert(naive_canonical(n, t));
  return seen.size();
}

/// Free-tree counts t(1..n_max) from Otter's formula over rooted-tree counts.
inline std::vector<std::uint64_t> otter_counts(int n_max) {
  std::vector<std::uint64_t> a(n_max + 1, 0);  // rooted trees
  a[1] = 1;
  for (int n = 1; n < n_max; ++n) {
    std::uint64_t sum = 0;
    for (int k = 1; k <= n; ++k) {
      std::uint64_t s = 0;
      for (int d = 1; d <= k; ++d) {
        if (k % d == 0) s += static_cast<std::uint64_t>(d) * a[d];
      }
      sum += s * a[n - k + 1];
    }
    a[n + 1] = sum / n;
  }
  std::vector<std::uint64_t> t(n_max + 1, 0);
  for (int n = 1; n <= n_max; ++n) {
    std::uint64_t pairs = 0;
    for (int k = 1; k < n; ++k) pairs += a[k] * a[n - k];
    if (n % 2 == 0) pairs -= a[n / 2];
    t[n] = a[n] - pairs / 2;
  }
  return t;
}

/// Integer polynomial, ascending coefficients.
using IPoly = std::vector<std::int64_t>;

inline IPoly trim(IPoly p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

inline IPoly add(const IPoly& a, const IPoly& b) {
  IPoly out(std::max(a.size(), b.size()), 0);
  for (std::size_t k = 0; k < a.size(); ++k) out[k] += a[k];
  for (std::size_t k = 0; k < b.size(); ++k) out[k] += b[k];
  return trim(out);
}

inline IPoly scale(const IPoly& a, std::int64_t c) {
  IPoly out = a;
  for (auto& x : out) x *= c;
  return trim(out);
}

inline IPoly mul(const IPoly& a, const IPoly& b) {
  if (a.empty() || b.empty()) return {};
  IPoly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return trim(out);
}

/// det(xI - A) by Laplace expansion along rows, memoized on the set of
/// columns still available. Practical up to n ~ 16.
inline IPoly cofactor_charpoly(int n, const EdgeList& edges) {
  std::vector<std::vector<IPoly>> m(n, std::vector<IPoly>(n));
  for (int i = 0; i < n; ++i) m[i][i] = {0, 1};
  for (auto [u, v] : edges) {
    m[u][v] = {-1};
    m[v][u] = {-1};
  }
  std::map<std::uint32_t, IPoly> memo;
  std::function<IPoly(int, std::uint32_t)> det = [&](int row, std::uint32_t cols) -> IPoly {
    if (row == n) return {1};
    if (auto it = memo.find(cols); it != memo.end()) return it->second;
    IPoly total;
    int sign = 1;
    for (int c = 0; c < n; ++c) {
      if (!(cols & (1u << c))) continue;
      if (!m[row][c].empty()) {
        total = add(total, scale(mul(m[row][c], det(row + 1, cols & ~(1u << c))), sign));
      }
      sign = -sign;
    }
    memo[cols] = total;
    return total;
  };
  return det(0, (n == 32 ? 0u : (1u << n)) - 1u);
}

/// Maximum matching size by exhaustive search over edge subsets.
inline int matching_number(int n, const EdgeList& edges) {
  int best = 0;
  const std::size_t e = edges.size();
  for (std::uint32_t mask = 0; mask < (1u << e); ++mask) {
    std::vector<bool> used(n, false);
    int size = 0;
    bool ok = true;
    for (std::size_t k = 0; k < e && ok; ++k) {
      if (!(mask & (1u << k))) continue;
      auto [u, v] = edges[k];
      if (used[u] || used[v]) ok = false;
      used[u] = used[v] = true;
      ++size;
    }
    if (ok) best = std::max(best, size);
  }
  return best;
}

/// Floating-point eigenvalue count near lambda (symmetric eigensolver).
inline int numeric_multiplicity(int n, const EdgeList& edges, double lambda, double tol = 1e-6) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (auto [u, v] : edges) a(u, v) = a(v, u) = 1.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
  int count = 0;
  for (int k = 0; k < n; ++k) {
    if (std::abs(solver.eigenvalues()(k) - lambda) < tol) ++count;
  }
  return count;
}

inline double chebyshev(int i, int m) { return 2.0 * std::cos(M_PI * i / m); }

}  // namespace oracle
