#include "tilecoh/matrix.hpp"

#include <sstream>

namespace tilecoh {

IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) { return multiply(x, y, Integer(0)); }

IntMatrix operator+(const IntMatrix& x, const IntMatrix& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) throw std::invalid_argument("matrix +: shape mismatch");
  IntMatrix z = x;
  for (size_t i = 0; i < x.rows(); ++i)
    for (size_t j = 0; j < x.cols(); ++j) z(i, j) += y(i, j);
  return z;
}

IntMatrix operator-(const IntMatrix& x, const IntMatrix& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) throw std::invalid_argument("matrix -: shape mismatch");
  IntMatrix z = x;
  for (size_t i = 0; i < x.rows(); ++i)
    for (size_t j = 0; j < x.cols(); ++j) z(i, j) -= y(i, j);
  return z;
}

IntMatrix identity_matrix(size_t n) {
  IntMatrix m(n, n, Integer(0));
  for (size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix power(const IntMatrix& m, unsigned e) {
  IntMatrix r = identity_matrix(m.rows()), b = m;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

std::vector<Integer> apply(const IntMatrix& m, const std::vector<Integer>& v) {
  if (v.size() != m.cols()) throw std::invalid_argument("apply: arity mismatch");
  std::vector<Integer> out(m.rows(), Integer(0));
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0 && v[j] != 0) out[i] += m(i, j) * v[j];
  return out;
}

bool is_zero(const IntMatrix& m) {
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0) return false;
  return true;
}

std::string to_string(const IntMatrix& m) {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < m.rows(); ++i) {
    os << (i ? ", [" : "[");
    for (size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m(i, j).get_str();
    os << "]";
  }
  os << "]";
  return os.str();
}

namespace {

struct SnfWork {
  IntMatrix D, U, V;
  bool track;

  void row_axpy(size_t dst, size_t src, const Integer& q) {  // row_dst -= q row_src
    for (size_t j = 0; j < D.cols(); ++j)
      if (D(src, j) != 0) D(dst, j) -= q * D(src, j);
    if (track)
      for (size_t j = 0; j < U.cols(); ++j)
        if (U(src, j) != 0) U(dst, j) -= q * U(src, j);
  }
  void col_axpy(size_t dst, size_t src, const Integer& q) {  // col_dst -= q col_src
    for (size_t i = 0; i < D.rows(); ++i)
      if (D(i, src) != 0) D(i, dst) -= q * D(i, src);
    if (track)
      for (size_t i = 0; i < V.rows(); ++i)
        if (V(i, src) != 0) V(i, dst) -= q * V(i, src);
  }
  void swap_rows(size_t a, size_t b) {
    D.swap_rows(a, b);
    if (track) U.swap_rows(a, b);
  }
  void swap_cols(size_t a, size_t b) {
    D.swap_cols(a, b);
    if (track) V.swap_cols(a, b);
  }

  void run() {
    size_t r = D.rows(), c = D.cols();
    for (size_t t = 0; t < std::min(r, c); ++t) {
      // smallest nonzero entry of the trailing block becomes the pivot
      size_t bi = r, bj = c;
      for (size_t i = t; i < r; ++i)
        for (size_t j = t; j < c; ++j)
          if (D(i, j) != 0 && (bi == r || abs(D(i, j)) < abs(D(bi, bj)))) {
            bi = i;
            bj = j;
          }
      if (bi == r) break;
      swap_rows(t, bi);
      swap_cols(t, bj);
      while (true) {
        bool clean = true;
        for (size_t i = t + 1; i < r; ++i) {
          if (D(i, t) == 0) continue;
          Integer q;
          mpz_fdiv_q(q.get_mpz_t(), D(i, t).get_mpz_t(), D(t, t).get_mpz_t());
          row_axpy(i, t, q);
          if (D(i, t) != 0) clean = false;
        }
        for (size_t j = t + 1; j < c; ++j) {
          if (D(t, j) == 0) continue;
          Integer q;
          mpz_fdiv_q(q.get_mpz_t(), D(t, j).get_mpz_t(), D(t, t).get_mpz_t());
          col_axpy(j, t, q);
          if (D(t, j) != 0) clean = false;
        }
        if (!clean) {
          size_t pi = t, pj = t;
          for (size_t i = t + 1; i < r; ++i)
            if (D(i, t) != 0 && abs(D(i, t)) < abs(D(pi, pj))) {
              pi = i;
              pj = t;
            }
          for (size_t j = t + 1; j < c; ++j)
            if (D(t, j) != 0 && abs(D(t, j)) < abs(D(pi, pj))) {
              pi = t;
              pj = j;
            }
          swap_rows(t, pi);
          swap_cols(t, pj);
          continue;
        }
        // divisibility: fold an offending row into the pivot row and repeat
        size_t bad = r;
        for (size_t i = t + 1; i < r && bad == r; ++i)
          for (size_t j = t + 1; j < c; ++j)
            if (D(i, j) != 0 && !mpz_divisible_p(D(i, j).get_mpz_t(), D(t, t).get_mpz_t())) {
              bad = i;
              break;
            }
        if (bad == r) break;
        row_axpy(t, bad, Integer(-1));
      }
      if (D(t, t) < 0) {
        for (size_t j = 0; j < c; ++j) D(t, j) = -D(t, j);
        if (track)
          for (size_t j = 0; j < U.cols(); ++j) U(t, j) = -U(t, j);
      }
    }
  }
};

}  // namespace

std::vector<Integer> SmithForm::invariant_factors() const {
  std::vector<Integer> out;
  for (size_t i = 0; i < std::min(D.rows(), D.cols()); ++i)
    if (D(i, i) != 0) out.push_back(D(i, i));
  return out;
}

SmithForm smith_normal_form(const IntMatrix& m) {
  SnfWork w{m, identity_matrix(m.rows()), identity_matrix(m.cols()), true};
  w.run();
  return {std::move(w.D), std::move(w.U), std::move(w.V)};
}

std::vector<Integer> smith_invariants(const IntMatrix& m) {
  SnfWork w{m, IntMatrix(), IntMatrix(), false};
  w.run();
  std::vector<Integer> out;
  for (size_t i = 0; i < std::min(m.rows(), m.cols()); ++i)
    if (w.D(i, i) != 0) out.push_back(w.D(i, i));
  return out;
}

namespace {

// Fraction-free (Bareiss) elimination; returns rank and the signed last pivot.
size_t bareiss(IntMatrix a, Integer* det) {
  size_t r = a.rows(), c = a.cols();
  Integer prev = 1;
  int sign = 1;
  size_t row = 0;
  for (size_t col = 0; col < c && row < r; ++col) {
    size_t p = row;
    while (p < r && a(p, col) == 0) ++p;
    if (p == r) continue;
    if (p != row) {
      a.swap_rows(p, row);
      sign = -sign;
    }
    for (size_t i = row + 1; i < r; ++i) {
      for (size_t j = col + 1; j < c; ++j) {
        a(i, j) = a(row, col) * a(i, j) - a(i, col) * a(row, j);
        mpz_divexact(a(i, j).get_mpz_t(), a(i, j).get_mpz_t(), prev.get_mpz_t());
      }
      a(i, col) = 0;
    }
    prev = a(row, col);
    ++row;
  }
  if (det) *det = (row == r && r == c) ? Integer(sign * prev) : Integer(0);
  return row;
}

using u64 = unsigned long long;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }
u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

std::vector<u64> charpoly_mod(const IntMatrix& m, u64 p) {
  size_t n = m.rows();
  std::vector<std::vector<u64>> h(n, std::vector<u64>(n));
  Integer P(std::to_string(p));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      Integer v;
      mpz_fdiv_r(v.get_mpz_t(), m(i, j).get_mpz_t(), P.get_mpz_t());
      h[i][j] = std::stoull(v.get_str());
    }
  auto sub = [p](u64 a, u64 b) { return a >= b ? a - b : a + (p - b); };
  auto add = [p](u64 a, u64 b) { return a >= p - b ? a - (p - b) : a + b; };
  // reduce to upper Hessenberg form by similarity
  for (size_t j = 0; j + 2 < n; ++j) {
    size_t piv = n;
    for (size_t i = j + 1; i < n; ++i)
      if (h[i][j] != 0) {
        piv = i;
        break;
      }
    if (piv == n) continue;
    if (piv != j + 1) {
      std::swap(h[piv], h[j + 1]);
      for (size_t i = 0; i < n; ++i) std::swap(h[i][piv], h[i][j + 1]);
    }
    u64 inv = powmod(h[j + 1][j], p - 2, p);
    for (size_t k = j + 2; k < n; ++k) {
      if (h[k][j] == 0) continue;
      u64 u = mulmod(h[k][j], inv, p);
      for (size_t l = 0; l < n; ++l) h[k][l] = sub(h[k][l], mulmod(u, h[j + 1][l], p));
      for (size_t l = 0; l < n; ++l) h[l][j + 1] = add(h[l][j + 1], mulmod(u, h[l][k], p));
    }
  }
  // p_{m+1} = (x - h_mm) p_m - sum_{i<m} h_im (prod_{k=i+1..m} h_{k,k-1}) p_i
  std::vector<std::vector<u64>> ps(n + 1);
  ps[0] = {1};
  for (size_t mm = 0; mm < n; ++mm) {
    std::vector<u64> next(mm + 2, 0);
    for (size_t d = 0; d < ps[mm].size(); ++d) {
      next[d + 1] = add(next[d + 1], ps[mm][d]);
      next[d] = sub(next[d], mulmod(h[mm][mm], ps[mm][d], p));
    }
    u64 prod = 1;
    for (size_t i = mm; i-- > 0;) {
      prod = mulmod(prod, h[i + 1][i], p);
      if (prod == 0) break;
      u64 f = mulmod(h[i][mm], prod, p);
      if (f == 0) continue;
      for (size_t d = 0; d < ps[i].size(); ++d) next[d] = sub(next[d], mulmod(f, ps[i][d], p));
    }
    ps[mm + 1] = std::move(next);
  }
  return ps[n];
}

}  // namespace

size_t rank(const IntMatrix& m) { return bareiss(m, nullptr); }

Integer determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant: not square");
  if (m.rows() == 0) return 1;
  Integer d;
  bareiss(m, &d);
  return d;
}

Poly charpoly(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("charpoly: not square");
  size_t n = m.rows();
  if (n == 0) return Poly(Rational(1));
  // |coeff| <= prod_i (1 + ||row_i||_2)
  Integer bound = 1;
  for (size_t i = 0; i < n; ++i) {
    Integer s = 0;
    for (size_t j = 0; j < n; ++j) s += m(i, j) * m(i, j);
    Integer root = sqrt(s);
    if (root * root < s) root += 1;
    bound *= root + 1;
  }
  Integer modulus = 1;
  std::vector<Integer> acc(n + 1, Integer(0));
  Integer prime = Integer(1) << 61;
  while (modulus <= 2 * bound) {
    mpz_nextprime(prime.get_mpz_t(), prime.get_mpz_t());
    u64 p = std::stoull(prime.get_str());
    auto cp = charpoly_mod(m, p);
    // CRT: acc mod modulus, cp mod p
    Integer inv;
    Integer mp;
    mpz_fdiv_r(mp.get_mpz_t(), modulus.get_mpz_t(), prime.get_mpz_t());
    mpz_invert(inv.get_mpz_t(), mp.get_mpz_t(), prime.get_mpz_t());
    for (size_t k = 0; k <= n; ++k) {
      Integer a = acc[k], b(std::to_string(cp[k]));
      Integer diff = b - a;
      Integer t = diff * inv;
      mpz_fdiv_r(t.get_mpz_t(), t.get_mpz_t(), prime.get_mpz_t());
      acc[k] = a + modulus * t;
    }
    modulus *= prime;
  }
  std::vector<Rational> coeffs(n + 1);
  Integer half = modulus / 2;
  for (size_t k = 0; k <= n; ++k) {
    Integer v = acc[k];
    if (v > half) v -= modulus;
    coeffs[k] = Rational(v);
  }
  return Poly(coeffs);
}

bool is_primitive(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("is_primitive: not square");
  size_t n = m.rows();
  if (n == 0) return false;
  std::vector<std::vector<char>> b(n, std::vector<char>(n, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      if (m(i, j) < 0) throw std::invalid_argument("is_primitive: negative entry");
      b[i][j] = m(i, j) > 0;
    }
  // Once some power is positive, every later power is (no zero rows or columns),
  // so squaring past the Wielandt bound (n-1)^2 + 1 decides primitivity.
  for (size_t i = 0; i < n; ++i) {
    bool row = false, col = false;
    for (size_t j = 0; j < n; ++j) {
      row = row || b[i][j];
      col = col || b[j][i];
    }
    if (!row || !col) return false;
  }
  size_t target = (n - 1) * (n - 1) + 1, e = 1;
  while (e < target) {
    std::vector<std::vector<char>> s(n, std::vector<char>(n, 0));
    for (size_t i = 0; i < n; ++i)
      for (size_t k = 0; k < n; ++k)
        if (b[i][k])
          for (size_t j = 0; j < n; ++j) s[i][j] |= b[k][j];
    b = std::move(s);
    e *= 2;
  }
  for (const auto& row : b)
    for (char x : row)
      if (!x) return false;
  return true;
}

Matrix<QElem> to_rational(const IntMatrix& m) {
  Matrix<QElem> q(m.rows(), m.cols());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) q(i, j) = QElem(Rational(m(i, j)));
  return q;
}

}  // namespace tilecoh
