#include "tilecoh/algebraic.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "tilecoh/factor.hpp"

namespace tilecoh {
namespace {

int sgn(const Rational& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }

Interval mul(const Interval& a, const Interval& b) {
  Rational p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

// Sturm sequence of a squarefree polynomial.
std::vector<Poly> sturm_chain(const Poly& p) {
  std::vector<Poly> chain{p, p.derivative()};
  while (!chain.back().is_zero() && chain.back().degree() > 0) {
    Poly r = -(chain[chain.size() - 2] % chain.back());
    if (r.is_zero()) break;
    // positive rescaling keeps sign variations intact
    chain.push_back(r.scaled(1 / abs(r.content())));
  }
  return chain;
}

int variations(const std::vector<Poly>& chain, const Rational& x) {
  int v = 0, last = 0;
  for (const auto& q : chain) {
    int s = sgn(q.eval(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

Rational cauchy_bound(const Poly& p) {
  Rational m = 0;
  for (int i = 0; i < p.degree(); ++i) m = std::max(m, Rational(abs(p.coeff(i) / p.lc())));
  return m + 1;
}

}  // namespace

Interval eval_interval(const Poly& p, const Interval& x) {
  Interval acc{0, 0};
  const auto& c = p.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    acc = mul(acc, x);
    acc.lo += *it;
    acc.hi += *it;
  }
  return acc;
}

AlgebraicNumber::AlgebraicNumber(const Rational& r)
    : poly_(Poly(std::vector<Rational>{-r, 1}).primitive_part()), cache_(std::make_shared<Cache>()) {
  cache_->iv = {r, r};
}

AlgebraicNumber::AlgebraicNumber(Poly poly, Rational lo, Rational hi)
    : poly_(poly.primitive_part()), cache_(std::make_shared<Cache>()) {
  if (poly_.degree() < 1) throw std::invalid_argument("AlgebraicNumber: constant polynomial");
  if (lo > hi) std::swap(lo, hi);
  if (poly_.degree() == 1) {
    Rational r = -poly_.coeff(0) / poly_.coeff(1);
    if (r < lo || r > hi) throw std::invalid_argument("AlgebraicNumber: interval misses root");
    lo = hi = r;
  } else if (lo != hi) {
    int a = sgn(poly_.eval(lo)), b = sgn(poly_.eval(hi));
    if (a == 0 || b == 0 || a == b)
      throw std::invalid_argument("AlgebraicNumber: interval does not isolate a sign change");
    auto chain = sturm_chain(poly_);
    if (variations(chain, lo) - variations(chain, hi) != 1)
      throw std::invalid_argument("AlgebraicNumber: interval contains more than one root");
    cache_->sign_lo = a;
  }
  cache_->iv = {lo, hi};
}

bool AlgebraicNumber::is_integer() const {
  return is_rational() && rational_value().get_den() == 1;
}

Rational AlgebraicNumber::rational_value() const {
  if (!is_rational()) throw std::logic_error("AlgebraicNumber: not rational");
  return -poly_.coeff(0) / poly_.coeff(1);
}

Interval AlgebraicNumber::interval() const {
  std::lock_guard<std::mutex> lock(cache_->mu);
  return cache_->iv;
}

Interval AlgebraicNumber::refine_to(const Rational& width) const {
  std::lock_guard<std::mutex> lock(cache_->mu);
  Interval& iv = cache_->iv;
  while (iv.width() > width) {
    Rational mid = (iv.lo + iv.hi) / 2;
    int s = sgn(poly_.eval(mid));
    if (s == 0) {
      iv = {mid, mid};
      break;
    }
    if (s == cache_->sign_lo) {
      iv.lo = mid;
    } else {
      iv.hi = mid;
    }
  }
  return iv;
}

double AlgebraicNumber::to_double() const {
  Interval iv = refine_to(Rational(1, 1) / Rational(Integer(1) << 60));
  Rational mid = (iv.lo + iv.hi) / 2;
  return mid.get_d();
}

int AlgebraicNumber::sign_of(const Poly& q) const {
  if (q.is_zero()) return 0;
  if (is_rational()) return sgn(q.eval(rational_value()));
  if ((q % poly_).is_zero()) return 0;
  Interval iv = interval();
  Rational width = iv.width();
  while (true) {
    Interval v = eval_interval(q, iv);
    if (v.lo > 0) return 1;
    if (v.hi < 0) return -1;
    width /= 16;
    iv = refine_to(width);
  }
}

std::string AlgebraicNumber::to_string() const {
  std::ostringstream os;
  if (is_rational()) {
    os << rational_value().get_str();
  } else {
    os << "root of " << poly_.to_string() << " near " << to_double();
  }
  return os.str();
}

std::vector<Interval> isolate_real_roots(const Poly& p) {
  if (p.degree() < 1) return {};
  auto chain = sturm_chain(p);
  Rational b = cauchy_bound(p);
  std::vector<Interval> out;
  // stack of (lo, hi] intervals with known root counts
  struct Item {
    Rational lo, hi;
    int count;
  };
  std::vector<Item> stack;
  int total = variations(chain, -b) - variations(chain, b);
  if (total > 0) stack.push_back({-b, b, total});
  while (!stack.empty()) {
    Item it = stack.back();
    stack.pop_back();
    if (it.count == 1) {
      // make endpoints non-roots
      Rational lo = it.lo, hi = it.hi;
      bool point = false;
      while (true) {
        if (p.eval(hi) == 0) {
          point = true;
          break;
        }
        if (p.eval(lo) != 0) break;
        Rational mid = (lo + hi) / 2;
        if (variations(chain, mid) - variations(chain, hi) == 1) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      out.push_back(point ? Interval{hi, hi} : Interval{lo, hi});
      continue;
    }
    Rational mid = (it.lo + it.hi) / 2;
    int left = variations(chain, it.lo) - variations(chain, mid);
    int right = it.count - left;
    if (left > 0) stack.push_back({it.lo, mid, left});
    if (right > 0) stack.push_back({mid, it.hi, right});
  }
  std::sort(out.begin(), out.end(), [](const Interval& a, const Interval& c) { return a.lo < c.lo; });
  return out;
}

std::optional<AlgebraicNumber> largest_real_root(const Poly& p) {
  if (p.is_zero()) throw std::invalid_argument("largest_real_root: zero polynomial");
  std::optional<AlgebraicNumber> best;
  for (const auto& f : factor(p)) {
    auto roots = isolate_real_roots(f.poly);
    if (roots.empty()) continue;
    const Interval& iv = roots.back();
    AlgebraicNumber cand = (iv.lo == iv.hi) ? AlgebraicNumber(iv.lo) : AlgebraicNumber(f.poly, iv.lo, iv.hi);
    if (!best) {
      best = cand;
      continue;
    }
    // compare cand against best by refining both
    Rational w = 1;
    while (true) {
      Interval a = cand.refine_to(w), c = best->refine_to(w);
      if (a.lo > c.hi) {
        best = cand;
        break;
      }
      if (a.hi < c.lo) break;
      w /= 16;
    }
  }
  return best;
}

std::optional<int> roots_inside_disk(const Poly& p, const Rational& radius) {
  // Work with f(z) = p(radius * z) and the unit disk.
  std::vector<Rational> c = p.coeffs();
  Rational pw = 1;
  for (auto& x : c) {
    x *= pw;
    pw *= radius;
  }
  Poly f(c);
  f = f.primitive_part();
  int n = f.degree();
  if (n < 1) return 0;
  // Marden: with T f = f(0) f - a_n f*, delta_k = (T^k f)(0); if all delta_k are
  // nonzero, the number of zeros inside is the number of negative partial
  // products delta_1 ... delta_k.
  // T^k f has formal degree n - k; leading zeros are kept.
  int inside = 0;
  int prod_sign = 1;
  std::vector<Rational> cur = f.coeffs();
  for (int k = 1; k <= n; ++k) {
    size_t d = cur.size() - 1;
    std::vector<Rational> next(d);
    for (size_t i = 0; i < d; ++i) next[i] = cur[0] * cur[i] - cur[d] * cur[d - i];
    Rational delta = next[0];
    if (delta == 0) return std::nullopt;
    prod_sign *= sgn(delta);
    if (prod_sign < 0) ++inside;
    Poly np(next);
    Rational cont = abs(np.content());
    if (cont != 0)
      for (auto& x : next) x /= cont;
    cur = std::move(next);
  }
  return inside;
}

}  // namespace tilecoh
