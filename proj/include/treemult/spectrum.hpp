#pragma once

#include <cstddef>
#include <vector>

#include "treemult/lambda.hpp"
#include "treemult/polynomial.hpp"
#include "treemult/tree.hpp"

namespace treemult {

/// Characteristic polynomials of a rooted subtree (p) and of that subtree
/// with its root removed (q).
struct CharPolyPair {
  Polynomial p;
  Polynomial q;
};

/// Rooted two-term recurrence: for v with children c_1..c_k,
///   q_v = prod p_{c_i},   p_v = x q_v - sum_i q_{c_i} prod_{j != i} p_{c_j}.
CharPolyPair rooted_char_polys(const Tree& t, Vertex root);

/// det(xI - A(T)); independent of the root.
Polynomial char_poly(const Tree& t, Vertex root = 0);

/// Largest k with minpoly^k dividing charpoly.
unsigned multiplicity(const Polynomial& charpoly, const Polynomial& minpoly);

/// m(T, lambda) via repeated exact division of the characteristic polynomial.
unsigned multiplicity(const Tree& t, const LambdaSpec& lambda);

/// m of a forest: the sum over its components.
unsigned multiplicity(const ForestDecomposition& forest, const LambdaSpec& lambda);

/// Rank of a matrix over Q[x]/(modulus), modulus monic and irreducible.
/// Entries are integer polynomials taken modulo the modulus. Fraction-free
/// elimination; the pivot in each column is the first row with a nonzero
/// entry.
std::size_t rank_over_number_field(std::vector<std::vector<Polynomial>> matrix, const Polynomial& modulus);

/// m(T, lambda) = n - rank(A - lambda I) computed in Q(lambda).
unsigned multiplicity_via_rank(const Tree& t, const LambdaSpec& lambda);

/// Squarefree part of the characteristic polynomial at one multiplicity level.
struct SupportLevel {
  unsigned multiplicity = 0;
  Polynomial part;
  /// Every Chebyshev lambda (M <= max_denominator) whose minimal polynomial divides part.
  std::vector<LambdaSpec> chebyshev;
  /// part with all those minimal polynomials divided out.
  Polynomial residue;

  bool has_uncovered_roots() const { return residue.degree() >= 1; }
};

struct EigenSupportProfile {
  unsigned max_denominator = 0;
  /// Ascending multiplicity.
  std::vector<SupportLevel> levels;

  /// Level with the given multiplicity, or nullptr.
  const SupportLevel* level(unsigned multiplicity) const;
};

/// Decomposes char_poly(t) by multiplicity and attributes each level's roots
/// to Chebyshev eigenvalues 2cos(i*pi/M), M <= max_denominator. A nonconstant
/// residue at level k means an eigenvalue of multiplicity exactly k that is
/// not of that form (for the given bound). max_denominator = 0 means n + 1;
/// any other value below n + 1 throws std::invalid_argument.
EigenSupportProfile eigen_support_audit(const Tree& t, unsigned max_denominator = 0);

}  // namespace treemult
