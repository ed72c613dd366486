#pragma once

#include <compare>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "treemult/polynomial.hpp"

namespace treemult {

/// The algebraic number 2cos(i*pi/M) with 1 <= i <= M-1 and gcd(i, M) = 1.
///
/// This is exactly the set of eigenvalues of paths: P_{M-1} has 2cos(i*pi/M)
/// for every i in 1..M-1. The minimal polynomial is computed once at
/// construction and shared between copies.
class LambdaSpec {
 public:
  /// Throws Error(InvalidSpec) unless 1 <= i <= M-1 and gcd(i, M) = 1.
  LambdaSpec(unsigned i, unsigned denominator);

  /// Parses "i/M".
  static LambdaSpec parse(std::string_view text);

  unsigned numerator() const noexcept { return i_; }
  unsigned denominator() const noexcept { return m_; }
  const Polynomial& minimal_poly() const noexcept { return *minimal_; }

  /// Floating-point value for display; never used to decide anything.
  double approx() const noexcept { return approx_; }

  std::string to_string() const;

  friend bool operator==(const LambdaSpec& a, const LambdaSpec& b) noexcept {
    return a.i_ == b.i_ && a.m_ == b.m_;
  }
  /// Ordered by (M, i).
  friend std::strong_ordering operator<=>(const LambdaSpec& a, const LambdaSpec& b) noexcept {
    if (auto c = a.m_ <=> b.m_; c != 0) return c;
    return a.i_ <=> b.i_;
  }

 private:
  unsigned i_;
  unsigned m_;
  std::shared_ptr<const Polynomial> minimal_;
  double approx_;
};

/// Minimal polynomial over the rationals of 2cos(i*pi/M).
Polynomial minimal_poly(unsigned i, unsigned denominator);
inline const Polynomial& minimal_poly(const LambdaSpec& lambda) { return lambda.minimal_poly(); }

/// Degree of the minimal polynomial predicted by Euler's totient.
unsigned minimal_poly_degree(unsigned i, unsigned denominator);

unsigned euler_phi(unsigned n);

/// Every valid LambdaSpec with 2 <= M <= max_denominator, ordered by (M, i).
/// Cached per bound; safe to call concurrently.
const std::vector<LambdaSpec>& chebyshev_lambdas(unsigned max_denominator);

}  // namespace treemult
