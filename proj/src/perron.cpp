#include "tilecoh/perron.hpp"

#include <sstream>
#include <stdexcept>

#include "tilecoh/factor.hpp"

namespace tilecoh {
namespace {

// Monic integer polynomial whose roots are lc * (roots of p), p primitive.
Poly monicized(const Poly& p) {
  Poly q = p.primitive_part();
  Rational lc = q.lc();
  int n = q.degree();
  std::vector<Rational> c(static_cast<size_t>(n) + 1);
  Rational pw = 1;
  for (int i = n; i >= 0; --i) {
    c[static_cast<size_t>(i)] = q.coeff(i) * pw;
    pw *= lc;
  }
  // c_i * lc^(n-i) / lc
  for (auto& x : c) x /= lc;
  return Poly(c);
}

Integer lcm_den(const std::vector<Rational>& xs) {
  Integer l = 1;
  for (const auto& x : xs) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  return l;
}

// Rational square matrix scaled to an integer matrix: returns (D, D*m).
std::pair<Integer, IntMatrix> integerized(const std::vector<std::vector<Rational>>& m) {
  std::vector<Rational> all;
  for (const auto& row : m)
    for (const auto& x : row) all.push_back(x);
  Integer D = lcm_den(all);
  IntMatrix z(m.size(), m.size(), Integer(0));
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < m.size(); ++j) {
      Rational v = m[i][j] * D;
      z(i, j) = v.get_num();
    }
  return {D, z};
}

// charpoly of m from charpoly of D*m: P_m(x) = D^{-n} P_{Dm}(D x)
Poly rational_charpoly(const std::vector<std::vector<Rational>>& m) {
  auto [D, z] = integerized(m);
  Poly p = charpoly(z);
  std::vector<Rational> c = p.coeffs();
  Rational pw = 1;
  for (auto& x : c) {
    x *= pw;
    pw *= D;
  }
  return Poly(c).monic();
}

// polynomials over a number field, lowest degree first
using KPoly = std::vector<FieldElement>;

void trim(KPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

KPoly kp_mod(KPoly a, const KPoly& b) {
  trim(a);
  FieldElement inv = b.back().inverse();
  while (a.size() >= b.size()) {
    FieldElement f = a.back() * inv;
    size_t shift = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

KPoly kp_gcd(KPoly a, KPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    KPoly r = kp_mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    FieldElement inv = a.back().inverse();
    for (auto& x : a) x = x * inv;
  }
  return a;
}

KPoly kp_mul(const KPoly& a, const KPoly& b, const FieldPtr& K) {
  if (a.empty() || b.empty()) return {};
  KPoly c(a.size() + b.size() - 1, FieldElement(K, Rational(0)));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

}  // namespace

FieldElement PerronData::lambda_element() const {
  if (field->degree() == 1) return FieldElement(field, lambda.rational_value());
  return FieldElement(field, std::vector<Rational>{0, 1});
}

FieldElement PerronData::pair(const std::vector<Integer>& v) const {
  if (v.size() != r.size()) throw std::invalid_argument("PerronData::pair: arity mismatch");
  FieldElement s(field, Rational(0));
  for (size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) s += r[i] * Rational(v[i]);
  return s;
}

std::string PerronData::describe() const {
  std::ostringstream os;
  os << "lambda = " << lambda.to_string() << ", r = (";
  for (size_t i = 0; i < r.size(); ++i) {
    if (i) os << ", ";
    if (integer_case) {
      os << r[i].rational_part().get_str();
    } else {
      os << "(" << r_numerators[i].to_string("L") << ")/L^" << lambda_power;
    }
  }
  os << ")";
  return os.str();
}

FieldPtr field_of(const AlgebraicNumber& a) {
  if (a.is_rational()) return NumberField::rationals();
  const Poly& p = a.min_poly();
  if (p.lc() != 1) throw std::invalid_argument("field_of: not an algebraic integer");
  Interval iv = a.interval();
  return std::make_shared<const NumberField>(p, iv.lo, iv.hi);
}

bool perron_root_dominates(const IntMatrix& m, const AlgebraicNumber& lambda) {
  Poly cp = charpoly(m);
  auto fs = factor(cp);
  int n = cp.degree();
  for (const auto& f : fs)
    if (f.poly == lambda.min_poly() && f.multiplicity != 1) return false;
  Rational w = 1;
  for (int attempt = 0; attempt < 48; ++attempt, w /= 4) {
    Interval iv = lambda.refine_to(w);
    Rational rho = iv.lo - w;
    if (rho <= 0) continue;
    int total = 0;
    bool ok = true;
    for (const auto& f : fs) {
      auto c = roots_inside_disk(f.poly, rho);
      if (!c) {
        ok = false;
        break;
      }
      total += *c * f.multiplicity;
    }
    if (ok && total == n - 1) return true;
    if (ok && total < n - 1 && iv.width() == 0) return false;
  }
  return false;
}

PerronData perron_data(const IntMatrix& m) {
  if (!is_primitive(m)) throw std::invalid_argument("perron_data: matrix is not primitive");
  size_t n = m.rows();
  auto lam = largest_real_root(charpoly(m));
  if (!lam) throw std::logic_error("perron_data: no real root");
  if (!perron_root_dominates(m, *lam)) throw std::logic_error("perron_data: Perron root does not dominate");
  PerronData out;
  out.lambda = *lam;
  out.field = field_of(*lam);
  out.integer_case = lam->is_integer();
  FieldElement L = out.lambda_element();
  FieldElement zero(out.field, Rational(0)), one(out.field, Rational(1));
  // r (lambda I - M) = 0  <=>  (lambda I - M)^T r^T = 0
  Matrix<FieldElement> a(n, n, zero);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      a(i, j) = FieldElement(out.field, Rational(-m(j, i)));
      if (i == j) a(i, j) += L;
    }
  auto ker = right_kernel(a, zero, one);
  if (ker.size() != 1) throw std::logic_error("perron_data: eigenspace is not one-dimensional");
  std::vector<FieldElement> r = ker[0];
  // clear denominators, then remove the integer content
  std::vector<Rational> all;
  for (const auto& x : r)
    for (const auto& c : x.coeffs()) all.push_back(c);
  Integer D = lcm_den(all);
  Integer g = 0;
  for (const auto& c : all) g = gcd(g, Integer(Rational(c * D).get_num()));
  Rational scale = Rational(D) / Rational(g);
  int sgn = 0;
  for (const auto& x : r)
    if (!x.is_zero()) {
      sgn = x.sign();
      break;
    }
  if (sgn < 0) scale = -scale;
  for (auto& x : r) x *= scale;
  if (out.integer_case) {
    out.r = r;
    for (const auto& x : r) out.r_numerators.push_back(x.as_poly());
  } else {
    int p = 0;
    for (const auto& x : r) {
      out.r_numerators.push_back(x.as_poly());
      p = std::max(p, x.as_poly().degree());
    }
    out.lambda_power = p;
    FieldElement Lp = L.pow(-p);
    for (auto& x : r) x = x * Lp;
    out.r = r;
  }
  for (const auto& x : out.r)
    if (x.sign() < 0) throw std::logic_error("perron_data: eigenvector is not nonnegative");
  return out;
}

Poly rotation_min_poly(const FieldElement& c, const FieldElement& s) {
  const FieldPtr& K = c.field();
  size_t n = static_cast<size_t>(K->degree());
  // basis g^k, g^k i; z (x + y i) = (c x - s y) + (s x + c y) i
  std::vector<std::vector<Rational>> mat(2 * n, std::vector<Rational>(2 * n, Rational(0)));
  for (size_t k = 0; k < n; ++k) {
    std::vector<Rational> e(n, Rational(0));
    e[k] = 1;
    FieldElement gk(K, e);
    FieldElement re = c * gk, im = s * gk;
    for (size_t r = 0; r < n; ++r) {
      mat[r][k] = re.coeffs()[r];
      mat[n + r][k] = im.coeffs()[r];
      mat[r][n + k] = -im.coeffs()[r];
      mat[n + r][n + k] = re.coeffs()[r];
    }
  }
  Poly sq = squarefree_part(rational_charpoly(mat));
  auto fs = factor(sq);
  if (fs.size() != 1) throw std::logic_error("rotation_min_poly: K(i) is not a field");
  return fs[0].poly;
}

std::optional<int> root_of_unity_order(const FieldElement& c, const FieldElement& s) {
  if (!(c * c + s * s == FieldElement(c.field(), Rational(1))))
    throw std::invalid_argument("root_of_unity_order: not a unit rotation");
  Poly mp = rotation_min_poly(c, s);
  if (mp.lc() != 1) return std::nullopt;
  int d = mp.degree();
  for (int m = 1; m <= 4 * d * d + 8; ++m)
    if (euler_phi(m) == d && cyclotomic(m) == mp) return m;
  return std::nullopt;
}

std::vector<FieldElement> roots_in_field(const Poly& g0, const FieldPtr& K) {
  if (g0.degree() < 1) return {};
  Poly sq = squarefree_part(g0).primitive_part();
  Rational lc = sq.lc();
  Poly g = monicized(sq);  // roots are lc * roots of sq
  std::vector<FieldElement> out;
  size_t n = static_cast<size_t>(K->degree()), m = static_cast<size_t>(g.degree());
  if (n == 1) {
    for (const auto& f : factor(g))
      if (f.poly.degree() == 1) out.emplace_back(K, Rational(-f.poly.coeff(0) / f.poly.coeff(1) / lc));
    return out;
  }
  // multiplication by X and Y on Q[X,Y]/(m_K(X), g(Y)), basis X^i Y^j
  auto idx = [m](size_t i, size_t j) { return i * m + j; };
  size_t dim = n * m;
  std::vector<std::vector<Rational>> MX(dim, std::vector<Rational>(dim, Rational(0))), MY = MX;
  const Poly& mk = K->min_poly();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < m; ++j) {
      size_t col = idx(i, j);
      if (i + 1 < n) {
        MX[idx(i + 1, j)][col] = 1;
      } else {
        for (size_t k = 0; k < n; ++k) MX[idx(k, j)][col] = -mk.coeff(static_cast<int>(k));
      }
      if (j + 1 < m) {
        MY[idx(i, j + 1)][col] = 1;
      } else {
        for (size_t k = 0; k < m; ++k) MY[idx(i, k)][col] = -g.coeff(static_cast<int>(k));
      }
    }
  for (int s = 0; s < 64; ++s) {
    std::vector<std::vector<Rational>> th = MY;
    for (size_t a = 0; a < dim; ++a)
      for (size_t b = 0; b < dim; ++b) th[a][b] += s * MX[a][b];
    Poly N = rational_charpoly(th);
    if (gcd(N, N.derivative()).degree() > 0) continue;
    FieldElement alpha(K, std::vector<Rational>{0, 1});
    KPoly gk;
    for (int i = 0; i <= g.degree(); ++i) gk.emplace_back(K, g.coeff(i));
    for (const auto& f : factor(N)) {
      if (f.poly.degree() != static_cast<int>(n)) continue;
      // F(y + s alpha) by Horner
      KPoly shift{alpha * Rational(s), FieldElement(K, Rational(1))};
      KPoly acc;
      for (int i = f.poly.degree(); i >= 0; --i) {
        acc = kp_mul(acc, shift, K);
        if (acc.empty()) acc.emplace_back(K, Rational(0));
        acc[0] += FieldElement(K, f.poly.coeff(i));
      }
      KPoly h = kp_gcd(gk, acc);
      if (h.size() == 2) out.push_back((-h[0]) * Rational(1 / lc));
    }
    return out;
  }
  throw std::logic_error("roots_in_field: no separating shift found");
}

namespace {

bool member(const AlgebraicNumber& b, const AlgebraicNumber& a) {
  // b in Q(a)? a is replaced by an algebraic integer generating the same field
  const Poly& pa = a.min_poly();
  Rational lc = pa.lc();
  Interval ia = a.interval();
  Rational lo = ia.lo * lc, hi = ia.hi * lc;
  if (lo > hi) std::swap(lo, hi);
  auto K = std::make_shared<const NumberField>(monicized(pa), lo, hi);
  Interval ib = b.interval();
  for (const auto& beta : roots_in_field(b.min_poly(), K)) {
    if (ib.lo == ib.hi) {
      if (beta == FieldElement(K, ib.lo)) return true;
      continue;
    }
    if (compare(beta, FieldElement(K, ib.lo)) > 0 && compare(beta, FieldElement(K, ib.hi)) < 0) return true;
  }
  return false;
}

}  // namespace

bool field_equal(const AlgebraicNumber& a, const AlgebraicNumber& b) {
  if (a.is_rational() || b.is_rational()) throw std::invalid_argument("field_equal: rational input");
  if (a.degree() != b.degree()) return false;
  return member(b, a) && member(a, b);
}

}  // namespace tilecoh
