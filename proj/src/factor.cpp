#include "tilecoh/factor.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace tilecoh {
namespace {

// ---------------------------------------------------------------------------
// Polynomials over F_p, p < 2^31.

using u64 = std::uint64_t;
using ModPoly = std::vector<u64>;

void trim(ModPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int deg(const ModPoly& a) { return static_cast<int>(a.size()) - 1; }

u64 pow_mod(u64 b, u64 e, u64 p) {
  u64 r = 1;
  b %= p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

u64 inv_mod(u64 a, u64 p) { return pow_mod(a, p - 2, p); }

ModPoly sub(ModPoly a, const ModPoly& b, u64 p) {
  if (b.size() > a.size()) a.resize(b.size(), 0);
  for (size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}

ModPoly mul(const ModPoly& a, const ModPoly& b, u64 p) {
  if (a.empty() || b.empty()) return {};
  ModPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  }
  trim(r);
  return r;
}

void divmod(const ModPoly& a, const ModPoly& b, u64 p, ModPoly* q, ModPoly* r) {
  ModPoly rem = a;
  int db = deg(b);
  int da = deg(a);
  ModPoly quo(da >= db ? static_cast<size_t>(da - db + 1) : 0, 0);
  u64 inv = inv_mod(b.back(), p);
  for (int i = da; i >= db; --i) {
    u64 f = rem[static_cast<size_t>(i)] * inv % p;
    if (!quo.empty()) quo[static_cast<size_t>(i - db)] = f;
    if (!f) continue;
    for (int j = 0; j <= db; ++j) {
      size_t k = static_cast<size_t>(i - db + j);
      rem[k] = (rem[k] + p - f * b[static_cast<size_t>(j)] % p) % p;
    }
  }
  if (db >= 0) rem.resize(std::min(rem.size(), static_cast<size_t>(db)));
  trim(rem);
  trim(quo);
  if (q) *q = std::move(quo);
  if (r) *r = std::move(rem);
}

ModPoly mod(const ModPoly& a, const ModPoly& b, u64 p) {
  ModPoly r;
  divmod(a, b, p, nullptr, &r);
  return r;
}

ModPoly make_monic(ModPoly a, u64 p) {
  if (a.empty()) return a;
  u64 inv = inv_mod(a.back(), p);
  for (auto& c : a) c = c * inv % p;
  return a;
}

ModPoly gcd(ModPoly a, ModPoly b, u64 p) {
  while (!b.empty()) {
    ModPoly r = mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(a, p);
}

ModPoly pow_mod(ModPoly base, const Integer& e, const ModPoly& m, u64 p) {
  ModPoly r{1};
  base = mod(base, m, p);
  size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (size_t i = bits; i-- > 0;) {
    r = mod(mul(r, r, p), m, p);
    if (mpz_tstbit(e.get_mpz_t(), i)) r = mod(mul(r, base, p), m, p);
  }
  return r;
}

ModPoly derivative(const ModPoly& a, u64 p) {
  if (a.size() < 2) return {};
  ModPoly d(a.size() - 1);
  for (size_t i = 1; i < a.size(); ++i) d[i - 1] = a[i] * (i % p) % p;
  trim(d);
  return d;
}

// Distinct-degree then equal-degree (Cantor-Zassenhaus) factorization of a
// monic squarefree polynomial.
std::vector<ModPoly> factor_mod_p(ModPoly f, u64 p, std::mt19937_64& rng) {
  std::vector<std::pair<ModPoly, int>> ddf;
  ModPoly x{0, 1};
  ModPoly h = x;
  for (int i = 1; deg(f) >= 2 * i; ++i) {
    h = pow_mod(h, Integer(static_cast<unsigned long>(p)), f, p);
    ModPoly g = gcd(f, sub(h, x, p), p);
    if (deg(g) > 0) {
      ddf.emplace_back(g, i);
      ModPoly q;
      divmod(f, g, p, &q, nullptr);
      f = q;
      h = mod(h, f, p);
    }
  }
  if (deg(f) > 0) ddf.emplace_back(f, deg(f));

  std::vector<ModPoly> out;
  for (auto& [g, d] : ddf) {
    std::vector<ModPoly> stack{g};
    while (!stack.empty()) {
      ModPoly cur = stack.back();
      stack.pop_back();
      if (deg(cur) == d) {
        out.push_back(make_monic(cur, p));
        continue;
      }
      Integer pd;
      mpz_ui_pow_ui(pd.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(d));
      Integer e = (pd - 1) / 2;
      while (true) {
        ModPoly a(static_cast<size_t>(deg(cur)));
        for (auto& c : a) c = rng() % p;
        trim(a);
        if (deg(a) < 1) continue;
        ModPoly b = sub(pow_mod(a, e, cur, p), ModPoly{1}, p);
        ModPoly g2 = gcd(cur, b, p);
        if (deg(g2) > 0 && deg(g2) < deg(cur)) {
          ModPoly q;
          divmod(cur, g2, p, &q, nullptr);
          stack.push_back(g2);
          stack.push_back(make_monic(q, p));
          break;
        }
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Integer polynomials modulo m (symmetric residues when asked).

using ZPoly = std::vector<Integer>;

void ztrim(ZPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

ZPoly zreduce(ZPoly a, const Integer& m) {
  for (auto& c : a) {
    mpz_mod(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
  }
  ztrim(a);
  return a;
}

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  ztrim(r);
  return r;
}

ZPoly zsub(ZPoly a, const ZPoly& b) {
  if (b.size() > a.size()) a.resize(b.size(), 0);
  for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  ztrim(a);
  return a;
}

ZPoly zadd(ZPoly a, const ZPoly& b) {
  if (b.size() > a.size()) a.resize(b.size(), 0);
  for (size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  ztrim(a);
  return a;
}

ZPoly from_mod(const ModPoly& a) {
  ZPoly r;
  r.reserve(a.size());
  for (u64 c : a) r.emplace_back(static_cast<unsigned long>(c));
  return r;
}

ModPoly to_mod(const ZPoly& a, u64 p) {
  ModPoly r;
  r.reserve(a.size());
  Integer pp(static_cast<unsigned long>(p));
  for (const auto& c : a) {
    Integer t;
    mpz_mod(t.get_mpz_t(), c.get_mpz_t(), pp.get_mpz_t());
    r.push_back(t.get_ui());
  }
  trim(r);
  return r;
}

ZPoly scale(ZPoly a, const Integer& s) {
  for (auto& c : a) c *= s;
  ztrim(a);
  return a;
}

// One linear Hensel lift from f = g*h mod p^j to mod p^(j+1); g monic,
// lc(h) = lc(f) exactly, s*g + t*h = 1 mod p.
void hensel_step(const ZPoly& f, ZPoly& g, ZPoly& h, const ModPoly& s, const ModPoly& t,
                 const Integer& pj, u64 p) {
  ZPoly diff = zsub(f, zmul(g, h));
  for (auto& c : diff) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), pj.get_mpz_t());
  ModPoly e = to_mod(diff, p);
  ModPoly gm = to_mod(g, p), hm = to_mod(h, p);
  // e = (e*s + q*h)*g + b*h with e*t = q*g + b
  ModPoly q, b;
  divmod(mul(t, e, p), gm, p, &q, &b);
  ModPoly a = mul(s, e, p);
  ModPoly qh = mul(q, hm, p);
  if (qh.size() > a.size()) a.resize(qh.size(), 0);
  for (size_t i = 0; i < qh.size(); ++i) a[i] = (a[i] + qh[i]) % p;
  trim(a);
  g = zadd(g, scale(from_mod(b), pj));
  h = zadd(h, scale(from_mod(a), pj));
}


}  // namespace

namespace {

std::vector<Poly> zassenhaus(const Poly& fin) {
  // fin: primitive, squarefree, degree >= 2, positive lc, f(0) != 0
  ZPoly f;
  for (const auto& c : fin.coeffs()) f.push_back(c.get_num());
  int n = static_cast<int>(f.size()) - 1;
  Integer lc = f.back();

  // choose prime
  u64 p = 0;
  static const u64 primes[] = {3,   5,   7,   11,  13,  17,  19,  23,  29,  31,  37,  41,  43,  47,
                               53,  59,  61,  67,  71,  73,  79,  83,  89,  97,  101, 103, 107, 109,
                               113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191,
                               193, 197, 199, 211, 223, 227, 229, 233, 239, 241, 251, 257, 263, 269};
  ModPoly fp;
  for (u64 q : primes) {
    Integer qq(static_cast<unsigned long>(q));
    if (mpz_divisible_p(lc.get_mpz_t(), qq.get_mpz_t())) continue;
    ModPoly cand = to_mod(f, q);
    if (deg(cand) != n) continue;
    if (deg(gcd(cand, derivative(cand, q), q)) != 0) continue;
    p = q;
    fp = cand;
    break;
  }
  if (p == 0) throw std::runtime_error("zassenhaus: no suitable prime");

  std::mt19937_64 rng(0x7113c0ffeeULL);
  std::vector<ModPoly> local = factor_mod_p(make_monic(fp, p), p, rng);
  if (local.size() == 1) return {fin};
  std::sort(local.begin(), local.end());

  // Mignotte-style bound on factor coefficients.
  Integer norm2 = 0;
  for (const auto& c : f) norm2 += c * c;
  Integer norm;
  mpz_sqrt(norm.get_mpz_t(), norm2.get_mpz_t());
  norm += 1;
  Integer bound = norm * abs(lc);
  mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), static_cast<unsigned long>(n + 1));

  Integer pk(static_cast<unsigned long>(p));
  int k = 1;
  while (pk <= bound) {
    pk *= static_cast<unsigned long>(p);
    ++k;
  }

  // Multifactor lift by peeling one monic factor at a time.
  std::vector<ZPoly> lifted;
  ZPoly rest = f;  // target for remaining product (with lc)
  for (size_t i = 0; i + 1 < local.size(); ++i) {
    ModPoly g0 = local[i];
    ModPoly h0{1};
    for (size_t j = i + 1; j < local.size(); ++j) h0 = mul(h0, local[j], p);
    ModPoly lcm = to_mod(ZPoly{rest.back()}, p);
    h0 = mul(h0, lcm, p);
    // s*g0 + t*h0 = 1
    ModPoly r0 = g0, r1 = h0, s0{1}, s1{}, t0{}, t1{1};
    while (!r1.empty()) {
      ModPoly q, r;
      divmod(r0, r1, p, &q, &r);
      r0 = r1;
      r1 = r;
      ModPoly s2 = sub(s0, mul(q, s1, p), p);
      ModPoly t2 = sub(t0, mul(q, t1, p), p);
      s0 = s1;
      s1 = s2;
      t0 = t1;
      t1 = t2;
    }
    u64 inv = inv_mod(r0[0], p);
    for (auto& c : s0) c = c * inv % p;
    for (auto& c : t0) c = c * inv % p;
    trim(s0);
    trim(t0);

    ZPoly g = from_mod(g0), h = from_mod(h0);
    h.back() = rest.back();
    Integer pj(static_cast<unsigned long>(p));
    for (int j = 1; j < k; ++j) {
      hensel_step(rest, g, h, s0, t0, pj, p);
      pj *= static_cast<unsigned long>(p);
      g = zreduce(g, pj);
      h = zreduce(h, pj);
    }
    lifted.push_back(g);
    rest = h;
  }
  // last factor: monic version of rest
  {
    Integer inv;
    Integer l = rest.back();
    mpz_invert(inv.get_mpz_t(), l.get_mpz_t(), pk.get_mpz_t());
    lifted.push_back(zreduce(scale(rest, inv), pk));
  }

  auto symmetric = [&](ZPoly a) {
    Integer half = pk / 2;
    for (auto& c : a) {
      mpz_mod(c.get_mpz_t(), c.get_mpz_t(), pk.get_mpz_t());
      if (c > half) c -= pk;
    }
    ztrim(a);
    return a;
  };

  std::vector<Poly> found;
  std::vector<size_t> remaining(lifted.size());
  for (size_t i = 0; i < remaining.size(); ++i) remaining[i] = i;
  Poly target = fin;
  size_t s = 1;
  while (2 * s <= remaining.size()) {
    bool progress = false;
    std::vector<size_t> pick(s);
    for (size_t i = 0; i < s; ++i) pick[i] = i;
    while (true) {
      Integer tlc = target.lc().get_num();
      ZPoly prod{tlc};
      for (size_t idx : pick) prod = zreduce(zmul(prod, lifted[remaining[idx]]), pk);
      ZPoly cand = symmetric(prod);
      std::vector<Rational> qc;
      for (const auto& c : cand) qc.emplace_back(c);
      Poly cp = Poly(qc);
      if (cp.degree() > 0) {
        cp = cp.primitive_part();
        auto [q, r] = divmod(target, cp);
        if (r.is_zero() && q.is_integral()) {
          found.push_back(cp);
          target = q.primitive_part();
          std::vector<size_t> next;
          for (size_t i = 0; i < remaining.size(); ++i)
            if (std::find(pick.begin(), pick.end(), i) == pick.end()) next.push_back(remaining[i]);
          remaining = next;
          progress = true;
          break;
        }
      }
      // next combination
      int i = static_cast<int>(s) - 1;
      while (i >= 0 && pick[static_cast<size_t>(i)] == remaining.size() - s + static_cast<size_t>(i)) --i;
      if (i < 0) break;
      ++pick[static_cast<size_t>(i)];
      for (size_t j = static_cast<size_t>(i) + 1; j < s; ++j) pick[j] = pick[j - 1] + 1;
    }
    if (!progress) ++s;
  }
  if (target.degree() > 0) found.push_back(target.primitive_part());
  return found;
}

}  // namespace

std::vector<PolyFactor> factor(const Poly& p) {
  if (p.is_zero()) throw std::invalid_argument("factor: zero polynomial");
  std::vector<PolyFactor> out;
  // Yun squarefree decomposition over Q.
  Poly a = p.monic();
  std::vector<std::pair<Poly, int>> sqf;
  {
    Poly b = a.derivative();
    Poly c = gcd(a, b);
    Poly w = a / c;
    int i = 1;
    if (c.degree() == 0) {
      sqf.emplace_back(w, 1);
    } else {
      Poly y = b / c;
      Poly z = y - w.derivative();
      while (w.degree() > 0) {
        Poly g = gcd(w, z);
        if (g.degree() > 0) sqf.emplace_back(g, i);
        w = w / g;
        y = z / g;
        z = y - w.derivative();
        ++i;
      }
    }
  }
  for (auto& [part, mult] : sqf) {
    Poly q = part.primitive_part();
    // pull out powers of x
    int zeros = 0;
    while (q.degree() > 0 && q.coeff(0) == 0) {
      q = q / Poly::x();
      ++zeros;
    }
    if (zeros) out.push_back({Poly::x(), mult * zeros});
    if (q.degree() < 1) continue;
    std::vector<Poly> pieces;
    if (q.degree() == 1) {
      pieces.push_back(q);
    } else {
      pieces = zassenhaus(q);
    }
    for (auto& f : pieces) out.push_back({f.primitive_part(), mult});
  }
  std::sort(out.begin(), out.end(), [](const PolyFactor& x, const PolyFactor& y) {
    if (x.poly.degree() != y.poly.degree()) return x.poly.degree() < y.poly.degree();
    const auto& a = x.poly.coeffs();
    const auto& b = y.poly.coeffs();
    for (size_t i = a.size(); i-- > 0;)
      if (a[i] != b[i]) return a[i] < b[i];
    return x.multiplicity < y.multiplicity;
  });
  return out;
}

bool is_irreducible(const Poly& p) {
  if (p.degree() < 1) return false;
  auto f = factor(p);
  return f.size() == 1 && f[0].multiplicity == 1;
}

}  // namespace tilecoh
