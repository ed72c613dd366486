#include "treemult/lambda.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>

#include "treemult/error.hpp"

namespace treemult {

namespace {

void check_spec(unsigned i, unsigned m) {
  if (m < 2 || i < 1 || i >= m || std::gcd(i, m) != 1) {
    throw Error(ErrorCode::InvalidSpec, std::to_string(i) + "/" + std::to_string(m));
  }
}

// Pre-image of 2cos(2*pi*k/n) for the degree <= 2 cyclotomic cases, where the
// palindromic descent does not apply.
Polynomial small_cyclotomic_preimage(std::size_t n) {
  return n == 1 ? Polynomial{-2, 1} : Polynomial{2, 1};
}

Polynomial descend_cyclotomic(std::size_t n) {
  if (n <= 2) return small_cyclotomic_preimage(n);
  return palindromic_descend(cyclotomic(n));
}

}  // namespace

unsigned euler_phi(unsigned n) {
  unsigned result = n;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

Polynomial minimal_poly(unsigned i, unsigned m) {
  check_spec(i, m);
  // i odd: e^{i pi/M} is a primitive 2M-th root of unity.
  // i even: M is odd and e^{i pi/M} = e^{2 pi (i/2)/M} is a primitive M-th root.
  return descend_cyclotomic(i % 2 == 1 ? 2 * std::size_t{m} : std::size_t{m});
}

unsigned minimal_poly_degree(unsigned i, unsigned m) {
  check_spec(i, m);
  const unsigned deg = i % 2 == 1 ? euler_phi(2 * m) / 2 : euler_phi(m) / 2;
  return deg < 1 ? 1 : deg;
}

LambdaSpec::LambdaSpec(unsigned i, unsigned denominator)
    : i_(i),
      m_(denominator),
      minimal_(std::make_shared<const Polynomial>(treemult::minimal_poly(i, denominator))),
      approx_(2.0 * std::cos(std::numbers::pi * i / denominator)) {}

LambdaSpec LambdaSpec::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) throw Error(ErrorCode::InvalidSpec, "expected i/M, got '" + std::string(text) + "'");
  auto parse_part = [&](std::string_view part) {
    unsigned value = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
    if (ec != std::errc{} || ptr != part.data() + part.size() || part.empty()) {
      throw Error(ErrorCode::InvalidSpec, "expected i/M, got '" + std::string(text) + "'");
    }
    return value;
  };
  return LambdaSpec(parse_part(text.substr(0, slash)), parse_part(text.substr(slash + 1)));
}

std::string LambdaSpec::to_string() const { return std::to_string(i_) + "/" + std::to_string(m_); }

const std::vector<LambdaSpec>& chebyshev_lambdas(unsigned max_denominator) {
  static std::mutex mutex;
  static std::map<unsigned, std::vector<LambdaSpec>> cache;
  std::lock_guard lock(mutex);
  if (auto it = cache.find(max_denominator); it != cache.end()) return it->second;
  auto& out = cache[max_denominator];
  for (unsigned m = 2; m <= max_denominator; ++m) {
    for (unsigned i = 1; i < m; ++i) {
      if (std::gcd(i, m) == 1) out.emplace_back(i, m);
    }
  }
  return out;
}

}  // namespace treemult
