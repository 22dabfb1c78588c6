#include "tilecoh/group_ring.hpp"

#include <cctype>
#include <map>
#include <mutex>
#include <stdexcept>

namespace tilecoh {

GroupRingElement GroupRingElement::parse(int n, const std::string& text) {
  GroupRingElement out(n);
  size_t i = 0;
  auto fail = [&](const std::string& what) {
    throw std::invalid_argument("group ring element '" + text + "' column " + std::to_string(i + 1) + ": " + what);
  };
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto digits = [&]() -> std::string {
    size_t b = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    return text.substr(b, i - b);
  };
  skip();
  if (i == text.size()) fail("empty");
  bool first = true;
  while (true) {
    skip();
    if (i == text.size()) break;
    int sgn = 1;
    if (text[i] == '+' || text[i] == '-') {
      if (text[i] == '-') sgn = -1;
      ++i;
      skip();
    } else if (!first) {
      fail("expected + or -");
    }
    first = false;
    Integer coef(1);
    bool have_coef = false;
    std::string d = digits();
    if (!d.empty()) {
      coef = Integer(d);
      have_coef = true;
      skip();
      if (i < text.size() && text[i] == '*') {
        ++i;
        skip();
        if (i == text.size() || text[i] != 't') fail("expected t after *");
      }
    }
    long e = 0;
    if (i < text.size() && text[i] == 't') {
      ++i;
      e = 1;
      skip();
      if (i < text.size() && text[i] == '^') {
        ++i;
        skip();
        std::string ed = digits();
        if (ed.empty()) fail("expected exponent");
        e = std::stol(ed);
      }
    } else if (!have_coef) {
      fail("expected a term");
    }
    out += monomial(n, sgn * coef, static_cast<int>(e % n));
  }
  return out;
}
namespace {

int mod(int a, int n) { return ((a % n) + n) % n; }

}  // namespace

GroupRingElement::GroupRingElement(int n, std::vector<Integer> coeffs) : c_(static_cast<size_t>(n), Integer(0)) {
  for (size_t i = 0; i < coeffs.size(); ++i) c_[i % static_cast<size_t>(n)] += coeffs[i];
}

GroupRingElement GroupRingElement::constant(int n, const Integer& a) { return monomial(n, a, 0); }

GroupRingElement GroupRingElement::monomial(int n, const Integer& a, int k) {
  GroupRingElement e(n);
  e.c_[static_cast<size_t>(mod(k, n))] = a;
  return e;
}

bool GroupRingElement::is_zero() const {
  for (const auto& x : c_)
    if (x != 0) return false;
  return true;
}

GroupRingElement GroupRingElement::operator-() const {
  GroupRingElement r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

GroupRingElement& GroupRingElement::operator+=(const GroupRingElement& o) {
  if (o.c_.size() != c_.size()) throw std::invalid_argument("group ring: order mismatch");
  for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

GroupRingElement& GroupRingElement::operator-=(const GroupRingElement& o) {
  if (o.c_.size() != c_.size()) throw std::invalid_argument("group ring: order mismatch");
  for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b) {
  if (a.c_.size() != b.c_.size()) throw std::invalid_argument("group ring: order mismatch");
  size_t n = a.c_.size();
  GroupRingElement r(static_cast<int>(n));
  for (size_t i = 0; i < n; ++i) {
    if (a.c_[i] == 0) continue;
    for (size_t j = 0; j < n; ++j)
      if (b.c_[j] != 0) r.c_[(i + j) % n] += a.c_[i] * b.c_[j];
  }
  return r;
}

GroupRingElement GroupRingElement::involution() const { return substitute_power(-1); }

GroupRingElement GroupRingElement::substitute_power(int u) const {
  int n = order();
  GroupRingElement r(n);
  for (int i = 0; i < n; ++i) r.c_[static_cast<size_t>(mod(i * u, n))] += c_[static_cast<size_t>(i)];
  return r;
}

GroupRingElement GroupRingElement::shifted(int k) const {
  int n = order();
  GroupRingElement r(n);
  for (int i = 0; i < n; ++i) r.c_[static_cast<size_t>(mod(i + k, n))] = c_[static_cast<size_t>(i)];
  return r;
}

GroupRingElement GroupRingElement::folded(int k) const {
  int n = order();
  if (k <= 0 || n % k != 0) throw std::invalid_argument("group ring: fold order must divide N");
  GroupRingElement r(n);
  for (int i = 0; i < n; ++i) r.c_[static_cast<size_t>(i % k)] += c_[static_cast<size_t>(i)];
  return r;
}

Integer GroupRingElement::at_one() const {
  Integer s = 0;
  for (const auto& x : c_) s += x;
  return s;
}

Poly GroupRingElement::as_poly() const {
  std::vector<Rational> q(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) q[i] = Rational(c_[i]);
  return Poly(q);
}

std::string GroupRingElement::to_string() const { return as_poly().to_string("t"); }

RingMatrix::RingMatrix(int n, std::vector<int> rows, std::vector<int> cols)
    : N(n), m(rows.size(), cols.size(), GroupRingElement(n)), row_orbits(std::move(rows)), col_orbits(std::move(cols)) {
  for (int k : row_orbits)
    if (k <= 0 || n % k) throw std::invalid_argument("RingMatrix: orbit size must divide N");
  for (int k : col_orbits)
    if (k <= 0 || n % k) throw std::invalid_argument("RingMatrix: orbit size must divide N");
}

RingMatrix RingMatrix::normalized() const {
  RingMatrix r = *this;
  for (size_t i = 0; i < rows(); ++i)
    for (size_t j = 0; j < cols(); ++j) r.m(i, j) = m(i, j).folded(row_orbits[i]);
  return r;
}

IntMatrix RingMatrix::expand() const {
  std::vector<size_t> ro(rows() + 1, 0), co(cols() + 1, 0);
  for (size_t i = 0; i < rows(); ++i) ro[i + 1] = ro[i] + static_cast<size_t>(row_orbits[i]);
  for (size_t j = 0; j < cols(); ++j) co[j + 1] = co[j] + static_cast<size_t>(col_orbits[j]);
  IntMatrix z(ro.back(), co.back(), Integer(0));
  for (size_t i = 0; i < rows(); ++i)
    for (size_t j = 0; j < cols(); ++j) {
      const auto& e = m(i, j);
      if (e.is_zero()) continue;
      int ki = row_orbits[i], kj = col_orbits[j];
      for (int s = 0; s < kj; ++s)
        for (int p = 0; p < N; ++p) {
          const Integer& a = e.coeff(p);
          if (a == 0) continue;
          z(ro[i] + static_cast<size_t>((p + s) % ki), co[j] + static_cast<size_t>(s)) += a;
        }
    }
  return z;
}

IntMatrix RingMatrix::at_one() const {
  IntMatrix z(rows(), cols(), Integer(0));
  for (size_t i = 0; i < rows(); ++i)
    for (size_t j = 0; j < cols(); ++j) z(i, j) = m(i, j).at_one();
  return z;
}

RingMatrix RingMatrix::adjoint() const {
  RingMatrix r(N, col_orbits, row_orbits);
  for (size_t i = 0; i < rows(); ++i)
    for (size_t j = 0; j < cols(); ++j) r.m(j, i) = m(i, j).involution();
  return r;
}

RingMatrix operator*(const RingMatrix& a, const RingMatrix& b) {
  if (a.N != b.N || a.cols() != b.rows()) throw std::invalid_argument("RingMatrix *: shape mismatch");
  RingMatrix r(a.N, a.row_orbits, b.col_orbits);
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t k = 0; k < a.cols(); ++k) {
      if (a.m(i, k).is_zero()) continue;
      for (size_t j = 0; j < b.cols(); ++j)
        if (!b.m(k, j).is_zero()) r.m(i, j) += a.m(i, k) * b.m(k, j);
    }
  return r;
}

RingMatrix operator-(const RingMatrix& a, const RingMatrix& b) {
  if (a.N != b.N || a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("RingMatrix -: shape mismatch");
  RingMatrix r = a;
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) r.m(i, j) -= b.m(i, j);
  return r;
}

bool is_zero(const RingMatrix& a) {
  RingMatrix n = a.normalized();
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j)
      if (!n.m(i, j).is_zero()) return false;
  return true;
}

std::vector<int> divisors(int N) {
  std::vector<int> d;
  for (int k = 1; k <= N; ++k)
    if (N % k == 0) d.push_back(k);
  return d;
}

std::vector<Poly> cyclotomic_factors(int N) {
  if (N < 1) throw std::invalid_argument("cyclotomic_factors: N must be positive");
  std::vector<Poly> out;
  for (int d : divisors(N)) out.push_back(cyclotomic(d));
  return out;
}

FieldPtr cyclotomic_field(int d) {
  static std::mutex mu;
  static std::map<int, FieldPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(d);
  if (it != cache.end()) return it->second;
  FieldPtr f;
  if (d <= 2) {
    Poly p = cyclotomic(d);
    Rational root = -p.coeff(0);
    f = std::make_shared<const NumberField>(p, root, root);
  } else {
    f = std::make_shared<const NumberField>(cyclotomic(d));
  }
  cache.emplace(d, f);
  return f;
}

ReducedMatrix reduce_mod_factor(const RingMatrix& a, int d) {
  if (a.N % d != 0) throw std::invalid_argument("reduce_mod_factor: d must divide N");
  FieldPtr K = cyclotomic_field(d);
  ReducedMatrix out;
  out.d = d;
  for (size_t i = 0; i < a.rows(); ++i)
    if (a.row_orbits[i] % d == 0) out.kept_rows.push_back(i);
  for (size_t j = 0; j < a.cols(); ++j)
    if (a.col_orbits[j] % d == 0) out.kept_cols.push_back(j);
  out.m = Matrix<FieldElement>(out.kept_rows.size(), out.kept_cols.size(), FieldElement(K, Rational(0)));
  for (size_t i = 0; i < out.kept_rows.size(); ++i)
    for (size_t j = 0; j < out.kept_cols.size(); ++j) {
      const auto& e = a.m(out.kept_rows[i], out.kept_cols[j]);
      std::vector<Rational> c(e.coeffs().size());
      for (size_t k = 0; k < c.size(); ++k) c[k] = Rational(e.coeffs()[k]);
      out.m(i, j) = FieldElement(K, c);
    }
  out.rank = field_rank(out.m);
  return out;
}

}  // namespace tilecoh
