#include "treemult/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "treemult/error.hpp"

namespace treemult {

Polynomial::Polynomial(std::vector<Integer> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

Polynomial::Polynomial(std::initializer_list<long> coeffs) {
  coeffs_.reserve(coeffs.size());
  for (long c : coeffs) coeffs_.emplace_back(c);
  normalize();
}

Polynomial Polynomial::constant(const Integer& c) { return Polynomial(std::vector<Integer>{c}); }

Polynomial Polynomial::monomial(const Integer& c, std::size_t degree) {
  std::vector<Integer> coeffs(degree + 1);
  coeffs[degree] = c;
  return Polynomial(std::move(coeffs));
}

void Polynomial::normalize() {
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

const Integer& Polynomial::leading() const {
  if (is_zero()) throw Error(ErrorCode::ZeroPolynomial, "leading coefficient of zero polynomial");
  return coeffs_.back();
}

Integer Polynomial::coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Integer(0); }

Integer Polynomial::evaluate(const Integer& at) const {
  Integer acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * at + *it;
  return acc;
}

double Polynomial::evaluate(double at) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * at + it->get_d();
  return acc;
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
  if (coeffs_.size() < rhs.coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] += rhs.coeffs_[k];
  normalize();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
  if (coeffs_.size() < rhs.coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] -= rhs.coeffs_[k];
  normalize();
  return *this;
}

Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs) {
  if (lhs.is_zero() || rhs.is_zero()) return {};
  std::vector<Integer> out(lhs.coeffs_.size() + rhs.coeffs_.size() - 1);
  for (std::size_t a = 0; a < lhs.coeffs_.size(); ++a) {
    if (sgn(lhs.coeffs_[a]) == 0) continue;
    for (std::size_t b = 0; b < rhs.coeffs_.size(); ++b) {
      mpz_addmul(out[a + b].get_mpz_t(), lhs.coeffs_[a].get_mpz_t(), rhs.coeffs_[b].get_mpz_t());
    }
  }
  return Polynomial(std::move(out));
}

Polynomial& Polynomial::operator*=(const Polynomial& rhs) { return *this = *this * rhs; }

Polynomial& Polynomial::operator*=(const Integer& rhs) {
  for (auto& c : coeffs_) c *= rhs;
  normalize();
  return *this;
}

Polynomial operator-(Polynomial p) {
  for (auto& c : p.coeffs_) c = -c;
  return p;
}

std::string Polynomial::to_string(char var) const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    const Integer& c = coeffs_[static_cast<std::size_t>(k)];
    if (sgn(c) == 0) continue;
    Integer mag = abs(c);
    if (first) {
      if (sgn(c) < 0) out << '-';
    } else {
      out << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    if (k == 0 || mag != 1) out << mag.get_str();
    if (k >= 1) out << var;
    if (k >= 2) out << '^' << k;
  }
  return out.str();
}

std::optional<Polynomial> try_exact_div(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "division by zero polynomial");
  if (a.is_zero()) return Polynomial{};
  if (a.degree() < b.degree()) return std::nullopt;

  std::vector<Integer> rem = a.coeffs();
  const auto& divisor = b.coeffs();
  const std::size_t db = divisor.size() - 1;
  const Integer& lead = divisor.back();
  const bool monic = lead == 1;
  std::vector<Integer> quot(rem.size() - db);
  Integer q;

  for (std::size_t k = rem.size(); k-- > db;) {
    if (sgn(rem[k]) == 0) continue;
    if (monic) {
      q = rem[k];
    } else {
      if (!mpz_divisible_p(rem[k].get_mpz_t(), lead.get_mpz_t())) return std::nullopt;
      mpz_divexact(q.get_mpz_t(), rem[k].get_mpz_t(), lead.get_mpz_t());
    }
    const std::size_t shift = k - db;
    for (std::size_t j = 0; j <= db; ++j) {
      mpz_submul(rem[shift + j].get_mpz_t(), q.get_mpz_t(), divisor[j].get_mpz_t());
    }
    quot[shift] = q;
  }
  for (std::size_t k = 0; k < db; ++k) {
    if (sgn(rem[k]) != 0) return std::nullopt;
  }
  return Polynomial(std::move(quot));
}

Polynomial exact_div(const Polynomial& a, const Polynomial& b) {
  auto q = try_exact_div(a, b);
  if (!q) throw Error(ErrorCode::NonDivisible, "(" + a.to_string() + ") / (" + b.to_string() + ")");
  return *std::move(q);
}

Polynomial remainder_monic(const Polynomial& a, const Polynomial& b) {
  if (!b.is_monic()) throw std::invalid_argument("remainder_monic: divisor must be monic");
  if (a.degree() < b.degree()) return a;
  std::vector<Integer> rem = a.coeffs();
  const auto& divisor = b.coeffs();
  const std::size_t db = divisor.size() - 1;
  for (std::size_t k = rem.size(); k-- > db;) {
    if (sgn(rem[k]) == 0) continue;
    const Integer q = rem[k];
    const std::size_t shift = k - db;
    for (std::size_t j = 0; j <= db; ++j) {
      mpz_submul(rem[shift + j].get_mpz_t(), q.get_mpz_t(), divisor[j].get_mpz_t());
    }
  }
  rem.resize(db);
  return Polynomial(std::move(rem));
}

Polynomial pseudo_remainder(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "pseudo-remainder by zero polynomial");
  if (a.degree() < b.degree()) return a;
  std::vector<Integer> rem = a.coeffs();
  const auto& divisor = b.coeffs();
  const std::size_t db = divisor.size() - 1;
  const Integer& lead = divisor.back();
  // Each step scales the running remainder by lc(b) before cancelling the top term.
  for (std::size_t k = rem.size(); k-- > db;) {
    const Integer top = rem[k];
    for (auto& c : rem) c *= lead;
    const std::size_t shift = k - db;
    for (std::size_t j = 0; j <= db; ++j) {
      mpz_submul(rem[shift + j].get_mpz_t(), top.get_mpz_t(), divisor[j].get_mpz_t());
    }
    rem.pop_back();
  }
  return Polynomial(std::move(rem));
}

Polynomial derivative(const Polynomial& p) {
  if (p.degree() < 1) return {};
  std::vector<Integer> out(p.coeffs().size() - 1);
  for (std::size_t k = 1; k < p.coeffs().size(); ++k) out[k - 1] = p.coeffs()[k] * static_cast<unsigned long>(k);
  return Polynomial(std::move(out));
}

Integer content(const Polynomial& p) {
  Integer g = 0;
  for (const auto& c : p.coeffs()) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

Polynomial primitive_part(const Polynomial& p) {
  if (p.is_zero()) return {};
  Integer g = content(p);
  if (sgn(p.leading()) < 0) g = -g;
  std::vector<Integer> out(p.coeffs().size());
  for (std::size_t k = 0; k < out.size(); ++k) mpz_divexact(out[k].get_mpz_t(), p.coeffs()[k].get_mpz_t(), g.get_mpz_t());
  return Polynomial(std::move(out));
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return primitive_part(b) * content(b);
  if (b.is_zero()) return primitive_part(a) * content(a);
  Integer scale;
  mpz_gcd(scale.get_mpz_t(), content(a).get_mpz_t(), content(b).get_mpz_t());

  Polynomial u = primitive_part(a);
  Polynomial v = primitive_part(b);
  if (u.degree() < v.degree()) std::swap(u, v);
  while (!v.is_zero()) {
    Polynomial r = pseudo_remainder(u, v);
    u = std::move(v);
    v = primitive_part(r);
  }
  return primitive_part(u) * scale;
}

Polynomial path_charpoly(std::size_t n) {
  // phi(P_k) = x phi(P_{k-1}) - phi(P_{k-2}), phi(P_0) = 1, phi(P_1) = x.
  Polynomial prev{1};
  if (n == 0) return prev;
  Polynomial cur = Polynomial::x();
  const Polynomial x = Polynomial::x();
  for (std::size_t k = 2; k <= n; ++k) {
    Polynomial next = x * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

Polynomial cyclotomic(std::size_t n) {
  if (n == 0) throw std::invalid_argument("cyclotomic: n must be positive");
  Polynomial result = Polynomial::monomial(1, n) - Polynomial{1};
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d == 0) result = exact_div(result, cyclotomic(d));
  }
  return result;
}

Polynomial palindromic_descend(const Polynomial& p) {
  const auto& a = p.coeffs();
  if (!std::equal(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(a.size() / 2), a.rbegin())) {
    throw Error(ErrorCode::NotPalindromic, p.to_string());
  }
  if (p.degree() < 0 || p.degree() % 2 != 0) throw Error(ErrorCode::OddDegree, p.to_string());
  const std::size_t d = static_cast<std::size_t>(p.degree()) / 2;

  // z^k + z^-k = B_k(z + 1/z) with B_0 = 2, B_1 = y, B_k = y B_{k-1} - B_{k-2}.
  const Polynomial y = Polynomial::x();
  Polynomial result = Polynomial::constant(a[d]);
  Polynomial before{2};
  Polynomial current = y;
  for (std::size_t k = 1; k <= d; ++k) {
    result += current * a[d + k];
    Polynomial next = y * current - before;
    before = std::move(current);
    current = std::move(next);
  }
  return result;
}

SquarefreeDecomposition squarefree_decompose(const Polynomial& p) {
  if (p.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "squarefree decomposition of zero");
  SquarefreeDecomposition out;
  out.content = content(p);
  if (sgn(p.leading()) < 0) out.content = -out.content;
  const Polynomial f = primitive_part(p);
  if (f.degree() < 1) return out;

  // Yun: b_1 = f / gcd(f, f'), d_1 = f'/gcd - b_1'; a_k = gcd(b_k, d_k) is the
  // multiplicity-k part.
  const Polynomial df = derivative(f);
  const Polynomial g = gcd(f, df);
  Polynomial b = exact_div(f, g);
  Polynomial c = exact_div(df, g);
  Polynomial d = c - derivative(b);
  for (unsigned k = 1; b.degree() >= 1; ++k) {
    Polynomial a = gcd(b, d);
    if (a.degree() >= 1) out.factors.push_back({a, k});
    b = exact_div(b, a);
    c = exact_div(d, a);
    d = c - derivative(b);
  }
  return out;
}

}  // namespace treemult
