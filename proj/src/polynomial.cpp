#include "tilecoh/polynomial.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

namespace tilecoh {

Poly::Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly::Poly(const Rational& constant) {
  if (constant != 0) c_.push_back(constant);
}

Poly Poly::monomial(const Rational& c, int degree) {
  if (c == 0) return {};
  std::vector<Rational> v(static_cast<size_t>(degree) + 1);
  v.back() = c;
  return Poly(std::move(v));
}

Poly Poly::from_ints(const std::vector<long>& coeffs) {
  std::vector<Rational> v;
  v.reserve(coeffs.size());
  for (long c : coeffs) v.emplace_back(c);
  return Poly(std::move(v));
}

Rational Poly::coeff(int i) const {
  if (i < 0 || i > degree()) return 0;
  return c_[static_cast<size_t>(i)];
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

Poly& Poly::operator*=(const Poly& o) {
  if (is_zero() || o.is_zero()) {
    c_.clear();
    return *this;
  }
  std::vector<Rational> r(c_.size() + o.c_.size() - 1);
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  }
  c_ = std::move(r);
  trim();
  return *this;
}

Poly Poly::scaled(const Rational& s) const {
  if (s == 0) return {};
  Poly r = *this;
  for (auto& c : r.c_) c *= s;
  return r;
}

Poly Poly::derivative() const {
  if (degree() < 1) return {};
  std::vector<Rational> v(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * static_cast<long>(i);
  return Poly(std::move(v));
}

Poly Poly::monic() const {
  if (is_zero()) return {};
  return scaled(1 / lc());
}

Rational Poly::eval(const Rational& at) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * at + *it;
  return acc;
}

Poly Poly::compose(const Poly& q) const {
  Poly acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * q + Poly(*it);
  return acc;
}

Poly Poly::reflected() const {
  Poly r = *this;
  for (size_t i = 1; i < r.c_.size(); i += 2) r.c_[i] = -r.c_[i];
  return r;
}

bool Poly::is_integral() const {
  for (const auto& c : c_)
    if (c.get_den() != 1) return false;
  return true;
}

Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Rational Poly::content() const {
  if (is_zero()) return 0;
  Integer num = 0, den = 1;
  for (const auto& c : c_) {
    num = gcd(num, c.get_num());
    Integer l;
    mpz_lcm(l.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
    den = l;
  }
  Rational r(num, den);
  r.canonicalize();
  if (lc() < 0) r = -r;
  return r;
}

Poly Poly::primitive_part() const {
  if (is_zero()) return {};
  return scaled(1 / content());
}

std::string Poly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    Rational c = c_[static_cast<size_t>(i)];
    if (c == 0) continue;
    bool neg = c < 0;
    Rational a = neg ? Rational(-c) : c;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? "-" : "+");
    }
    first = false;
    if (i == 0 || a != 1) os << a.get_str();
    if (i > 0) {
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Rational> rem = a.coeffs();
  int db = b.degree();
  int da = a.degree();
  if (da < db) return {Poly(), a};
  std::vector<Rational> q(static_cast<size_t>(da - db) + 1);
  Rational inv = 1 / b.lc();
  for (int i = da; i >= db; --i) {
    Rational f = rem[static_cast<size_t>(i)] * inv;
    q[static_cast<size_t>(i - db)] = f;
    if (f == 0) continue;
    for (int j = 0; j <= db; ++j) rem[static_cast<size_t>(i - db + j)] -= f * b.coeffs()[static_cast<size_t>(j)];
  }
  rem.resize(static_cast<size_t>(db));
  return {Poly(std::move(q)), Poly(std::move(rem))};
}

Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

Poly gcd(const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = x % y;
    // keep sizes in check
    x = std::move(y);
    y = r.is_zero() ? r : r.primitive_part();
  }
  return x.monic();
}

ExtendedGcd extended_gcd(const Poly& a, const Poly& b) {
  Poly r0 = a, r1 = b, s0 = Poly(1), s1, t0, t1 = Poly(1);
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Poly s2 = s0 - q * s1;
    Poly t2 = t0 - q * t1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {Poly(), Poly(), Poly()};
  Rational inv = 1 / r0.lc();
  return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

Poly squarefree_part(const Poly& p) {
  if (p.degree() < 1) return p.is_zero() ? p : Poly(1);
  return (p / gcd(p, p.derivative())).monic();
}

int euler_phi(int n) {
  int result = n;
  for (int q = 2; q * q <= n; ++q) {
    if (n % q == 0) {
      while (n % q == 0) n /= q;
      result -= result / q;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

Poly cyclotomic(int n) {
  if (n < 1) throw std::invalid_argument("cyclotomic: n must be positive");
  Poly p = Poly::monomial(1, n) - Poly(1);
  for (int d = 1; d < n; ++d)
    if (n % d == 0) p = p / cyclotomic(d);
  return p;
}

}  // namespace tilecoh
