#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace treemult {

using Integer = mpz_class;

/// Dense univariate polynomial with arbitrary-precision integer coefficients.
///
/// Coefficients are stored in ascending degree order and kept normalized:
/// the leading stored coefficient is never zero, and the zero polynomial is
/// the empty sequence.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Integer> coeffs);
  Polynomial(std::initializer_list<long> coeffs);

  static Polynomial constant(const Integer& c);
  static Polynomial monomial(const Integer& c, std::size_t degree);
  static Polynomial x() { return monomial(1, 1); }

  bool is_zero() const noexcept { return coeffs_.empty(); }
  bool is_constant() const noexcept { return coeffs_.size() <= 1; }
  bool is_monic() const { return !is_zero() && coeffs_.back() == 1; }

  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }

  const std::vector<Integer>& coeffs() const noexcept { return coeffs_; }
  const Integer& leading() const;

  /// Coefficient of x^k; zero beyond the degree.
  Integer coeff(std::size_t k) const;

  Integer evaluate(const Integer& at) const;
  double evaluate(double at) const;

  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);
  Polynomial& operator*=(const Polynomial& rhs);
  Polynomial& operator*=(const Integer& rhs);

  friend Polynomial operator+(Polynomial lhs, const Polynomial& rhs) { return lhs += rhs; }
  friend Polynomial operator-(Polynomial lhs, const Polynomial& rhs) { return lhs -= rhs; }
  friend Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs);
  friend Polynomial operator*(Polynomial lhs, const Integer& rhs) { return lhs *= rhs; }
  friend Polynomial operator-(Polynomial p);

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

  /// Human-readable form, highest degree first, e.g. "x^3 - 2x".
  std::string to_string(char var = 'x') const;

 private:
  void normalize();

  std::vector<Integer> coeffs_;
};

/// Quotient of a by b over the integers, or nullopt when b does not divide a
/// with integral quotient. Throws ZeroPolynomial when b is zero.
std::optional<Polynomial> try_exact_div(const Polynomial& a, const Polynomial& b);

/// As try_exact_div, but throws Error(NonDivisible) on a nonzero remainder.
Polynomial exact_div(const Polynomial& a, const Polynomial& b);

/// Remainder of a modulo a monic b.
Polynomial remainder_monic(const Polynomial& a, const Polynomial& b);

/// lc(b)^(deg a - deg b + 1) * a mod b, computed without fractions.
Polynomial pseudo_remainder(const Polynomial& a, const Polynomial& b);

Polynomial derivative(const Polynomial& p);

/// Non-negative gcd of the coefficients; zero for the zero polynomial.
Integer content(const Polynomial& p);

/// p / content(p), sign chosen so the leading coefficient is positive.
Polynomial primitive_part(const Polynomial& p);

/// Greatest common divisor, primitive with positive leading coefficient
/// (scaled by the gcd of the contents).
Polynomial gcd(const Polynomial& a, const Polynomial& b);

/// Characteristic polynomial of the path on n vertices (n >= 0).
Polynomial path_charpoly(std::size_t n);

/// n-th cyclotomic polynomial (n >= 1).
Polynomial cyclotomic(std::size_t n);

/// For palindromic P of even degree 2d, the Q of degree d with
/// P(z) = z^d Q(z + 1/z).
Polynomial palindromic_descend(const Polynomial& p);

struct SquarefreeFactor {
  Polynomial factor;
  unsigned multiplicity = 0;

  friend bool operator==(const SquarefreeFactor&, const SquarefreeFactor&) = default;
};

struct SquarefreeDecomposition {
  /// Signed content; p = content * prod factor^multiplicity.
  Integer content;
  /// Ascending multiplicity, nonconstant factors only.
  std::vector<SquarefreeFactor> factors;
};

/// Yun decomposition into pairwise-coprime squarefree primitive factors.
SquarefreeDecomposition squarefree_decompose(const Polynomial& p);

}  // namespace treemult
