#include "treemult/spectrum.hpp"

#include <algorithm>
#include <stdexcept>

namespace treemult {

namespace {

// Vertices in postorder (children before parents) from root, with parents.
std::pair<std::vector<Vertex>, std::vector<Vertex>> postorder(const Tree& t, Vertex root) {
  const std::size_t n = t.size();
  std::vector<Vertex> parent(n, root);
  std::vector<Vertex> pre;
  pre.reserve(n);
  std::vector<Vertex> stack{root};
  std::vector<bool> seen(n, false);
  seen[root] = true;
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    pre.push_back(v);
    for (Vertex w : t.neighbors(v)) {
      if (!seen[w]) {
        seen[w] = true;
        parent[w] = v;
        stack.push_back(w);
      }
    }
  }
  std::reverse(pre.begin(), pre.end());
  return {std::move(pre), std::move(parent)};
}

}  // namespace

CharPolyPair rooted_char_polys(const Tree& t, Vertex root) {
  if (root >= t.size()) throw std::out_of_range("rooted_char_polys: bad root");
  const auto [order, parent] = postorder(t, root);
  const Polynomial x = Polynomial::x();
  // Running product of children's p and running sum of q_i * prod_{j != i} p_j.
  std::vector<Polynomial> prod(t.size(), Polynomial{1});
  std::vector<Polynomial> mixed(t.size());
  CharPolyPair result;
  for (Vertex v : order) {
    Polynomial q = std::move(prod[v]);
    Polynomial p = x * q - mixed[v];
    if (v == root) {
      result = {std::move(p), std::move(q)};
      break;
    }
    const Vertex up = parent[v];
    mixed[up] = mixed[up] * p + prod[up] * q;
    prod[up] *= p;
  }
  return result;
}

Polynomial char_poly(const Tree& t, Vertex root) { return rooted_char_polys(t, root).p; }

unsigned multiplicity(const Polynomial& charpoly, const Polynomial& minpoly) {
  unsigned k = 0;
  Polynomial rest = charpoly;
  while (auto q = try_exact_div(rest, minpoly)) {
    rest = *std::move(q);
    ++k;
  }
  return k;
}

unsigned multiplicity(const Tree& t, const LambdaSpec& lambda) {
  return multiplicity(char_poly(t), lambda.minimal_poly());
}

unsigned multiplicity(const ForestDecomposition& forest, const LambdaSpec& lambda) {
  unsigned total = 0;
  for (const auto& comp : forest.components) total += multiplicity(comp.tree, lambda);
  return total;
}

std::size_t rank_over_number_field(std::vector<std::vector<Polynomial>> rows, const Polynomial& modulus) {
  if (!modulus.is_monic() || modulus.degree() < 1) {
    throw std::invalid_argument("rank_over_number_field: modulus must be monic and nonconstant");
  }
  const std::size_t nrows = rows.size();
  const std::size_t ncols = nrows == 0 ? 0 : rows.front().size();
  for (auto& row : rows) {
    if (row.size() != ncols) throw std::invalid_argument("rank_over_number_field: ragged matrix");
    for (auto& entry : row) entry = remainder_monic(entry, modulus);
  }

  std::size_t rank = 0;
  for (std::size_t col = 0; col < ncols && rank < nrows; ++col) {
    std::size_t pivot_row = rank;
    while (pivot_row < nrows && rows[pivot_row][col].is_zero()) ++pivot_row;
    if (pivot_row == nrows) continue;
    std::swap(rows[pivot_row], rows[rank]);
    const auto& pivot = rows[rank];
    for (std::size_t r = rank + 1; r < nrows; ++r) {
      if (rows[r][col].is_zero()) continue;
      const Polynomial factor = rows[r][col];
      // row_r <- pivot * row_r - factor * row_pivot, kept reduced and primitive.
      Integer row_content = 0;
      for (std::size_t c = col; c < ncols; ++c) {
        auto& entry = rows[r][c];
        if (entry.is_zero() && pivot[c].is_zero()) continue;
        entry = remainder_monic(pivot[col] * entry - factor * pivot[c], modulus);
        const Integer g = content(entry);
        mpz_gcd(row_content.get_mpz_t(), row_content.get_mpz_t(), g.get_mpz_t());
      }
      if (row_content > 1) {
        for (std::size_t c = col; c < ncols; ++c) {
          auto& entry = rows[r][c];
          if (entry.is_zero()) continue;
          std::vector<Integer> coeffs = entry.coeffs();
          for (auto& k : coeffs) mpz_divexact(k.get_mpz_t(), k.get_mpz_t(), row_content.get_mpz_t());
          entry = Polynomial(std::move(coeffs));
        }
      }
    }
    ++rank;
  }
  return rank;
}

unsigned multiplicity_via_rank(const Tree& t, const LambdaSpec& lambda) {
  const std::size_t n = t.size();
  // Leaves-first ordering keeps elimination on a tree nearly fill-free.
  const auto order = postorder(t, 0).first;
  std::vector<Vertex> position(n);
  for (std::size_t k = 0; k < n; ++k) position[order[k]] = static_cast<Vertex>(k);

  const Polynomial minus_lambda = -Polynomial::x();
  const Polynomial one{1};
  std::vector<std::vector<Polynomial>> matrix(n, std::vector<Polynomial>(n));
  for (Vertex v = 0; v < n; ++v) {
    matrix[position[v]][position[v]] = minus_lambda;
    for (Vertex w : t.neighbors(v)) matrix[position[v]][position[w]] = one;
  }
  return static_cast<unsigned>(n - rank_over_number_field(std::move(matrix), lambda.minimal_poly()));
}

const SupportLevel* EigenSupportProfile::level(unsigned multiplicity) const {
  for (const auto& lvl : levels) {
    if (lvl.multiplicity == multiplicity) return &lvl;
  }
  return nullptr;
}

EigenSupportProfile eigen_support_audit(const Tree& t, unsigned max_denominator) {
  const unsigned floor = static_cast<unsigned>(t.size()) + 1;
  if (max_denominator == 0) max_denominator = floor;
  if (max_denominator < floor) {
    throw std::invalid_argument("eigen_support_audit: max_denominator must be at least n + 1");
  }

  // Conjugate lambdas share a minimal polynomial; group them.
  struct Group {
    const Polynomial* minpoly;
    std::vector<LambdaSpec> members;
  };
  const auto& lambdas = chebyshev_lambdas(max_denominator);
  std::vector<Group> groups;
  for (const auto& lambda : lambdas) {
    auto it = std::find_if(groups.begin(), groups.end(),
                           [&](const Group& g) { return *g.minpoly == lambda.minimal_poly(); });
    if (it == groups.end()) {
      groups.push_back({&lambda.minimal_poly(), {lambda}});
    } else {
      it->members.push_back(lambda);
    }
  }

  EigenSupportProfile profile;
  profile.max_denominator = max_denominator;
  const auto decomposition = squarefree_decompose(char_poly(t));
  for (const auto& [part, k] : decomposition.factors) {
    SupportLevel level;
    level.multiplicity = k;
    level.part = part;
    level.residue = part;
    for (const auto& group : groups) {
      if (group.minpoly->degree() > level.residue.degree()) continue;
      if (auto q = try_exact_div(level.residue, *group.minpoly)) {
        level.residue = *std::move(q);
        level.chebyshev.insert(level.chebyshev.end(), group.members.begin(), group.members.end());
      }
    }
    std::sort(level.chebyshev.begin(), level.chebyshev.end());
    profile.levels.push_back(std::move(level));
  }
  return profile;
}

}  // namespace treemult
