#include "tilecoh/order_invariant.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "tilecoh/cohomology.hpp"

namespace tilecoh {

namespace {

// Nonzero entries by row, for repeated application of the pullback.
struct Sparse {
  std::vector<std::vector<std::pair<size_t, Integer>>> rows;
  explicit Sparse(const IntMatrix& m) : rows(m.rows()) {
    for (size_t i = 0; i < m.rows(); ++i)
      for (size_t j = 0; j < m.cols(); ++j)
        if (m(i, j) != 0) rows[i].emplace_back(j, m(i, j));
  }
  std::vector<Integer> apply(const std::vector<Integer>& v) const {
    std::vector<Integer> out(rows.size(), Integer(0));
    for (size_t i = 0; i < rows.size(); ++i)
      for (const auto& [j, a] : rows[i]) out[i] += a * v[j];
    return out;
  }
};

void check_arity(const OrderedInvariant& inv, const std::vector<Integer>& v) {
  if (v.size() != inv.arity())
    throw std::invalid_argument("cochain has " + std::to_string(v.size()) + " entries, expected " +
                                std::to_string(inv.arity()));
}

std::vector<Integer> lift(const OrderedInvariant& inv, std::vector<Integer> v, int steps) {
  Sparse m(inv.pullback);
  for (int s = 0; s < steps; ++s) v = m.apply(v);
  return v;
}

std::string prime_set(const std::vector<Integer>& p) {
  std::string s = "{";
  for (size_t i = 0; i < p.size(); ++i) s += (i ? ", " : "") + p[i].get_str();
  return s + "}";
}

std::string field_name(const Poly& min_poly) {
  if (min_poly.degree() == 1) return "Q";
  if (min_poly.degree() == 2) {
    Poly m = min_poly.monic();
    Rational b = m.coeff(1), c = m.coeff(0);
    Rational D = b * b - 4 * c;
    // Q(sqrt(D)) with D reduced to a squarefree integer
    Integer num = D.get_num() * D.get_den();
    int sgn = num < 0 ? -1 : 1;
    if (sgn < 0) num = -num;
    Integer sq = 1;
    for (Integer p = 2; p * p <= num; ++p)
      while (num % (p * p) == 0) {
        num /= p * p;
        sq *= p;
      }
    return "Q(sqrt(" + Integer(sgn * num).get_str() + "))";
  }
  return "Q(lambda), degree " + std::to_string(min_poly.degree());
}

// x with sum r_i x_i = gcd, by successive extended gcds
std::vector<Integer> bezout(const std::vector<Integer>& r) {
  std::vector<Integer> x(r.size(), Integer(0));
  Integer g = 0;
  for (size_t i = 0; i < r.size(); ++i) {
    if (r[i] == 0) continue;
    if (g == 0) {
      g = r[i];
      x[i] = 1;
      continue;
    }
    Integer ng, s, t;
    mpz_gcdext(ng.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), g.get_mpz_t(), r[i].get_mpz_t());
    for (size_t j = 0; j < i; ++j) x[j] *= s;
    x[i] = t;
    g = ng;
  }
  if (g < 0)
    for (auto& a : x) a = -a;
  return x;
}

}  // namespace

std::vector<Integer> prime_factors(Integer n) {
  if (n <= 0) throw std::invalid_argument("prime_factors: positive integer required");
  std::vector<Integer> out;
  for (Integer p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  if (n > 1) out.push_back(n);
  return out;
}

OrderedInvariant ordered_invariant(const std::string& name, const IntMatrix& face_substitution) {
  OrderedInvariant inv;
  inv.system = name;
  inv.pullback = face_substitution.transposed();
  if (!is_primitive(inv.pullback)) throw std::invalid_argument("ordered invariant: face substitution is not primitive");
  inv.perron = perron_data(inv.pullback);
  return inv;
}

OrderedInvariant ordered_invariant(const APComplex& c) { return ordered_invariant(c.system, c.cells.subst2.at_one()); }

FieldElement mu(const OrderedInvariant& inv, const LimitElement& x) {
  check_arity(inv, x.v);
  if (x.k < 0) throw std::invalid_argument("mu: negative level");
  return inv.perron.pair(x.v) * inv.perron.lambda_element().pow(-x.k);
}

std::optional<int> positivity_oracle(const OrderedInvariant& inv, const std::vector<Integer>& v, int m_max) {
  check_arity(inv, v);
  Sparse m(inv.pullback);
  std::vector<Integer> w = v;
  for (int s = 0; s <= m_max; ++s) {
    bool pos = true, nonpos = true;
    for (const auto& a : w) {
      pos = pos && a > 0;
      nonpos = nonpos && a <= 0;
    }
    if (pos) return s;
    // a nonpositive vector stays nonpositive under a nonnegative matrix
    if (nonpos) return std::nullopt;
    w = m.apply(w);
  }
  return std::nullopt;
}

bool is_zero_class(const OrderedInvariant& inv, const LimitElement& x) {
  // mu vanishes on zero classes, and is much cheaper than iterating
  if (!mu(inv, x).is_zero()) return false;
  Sparse m(inv.pullback);
  std::vector<Integer> w = x.v;
  for (size_t s = 0; s <= inv.arity(); ++s) {
    if (std::all_of(w.begin(), w.end(), [](const Integer& a) { return a == 0; })) return true;
    w = m.apply(w);
  }
  return false;
}

bool is_positive(const OrderedInvariant& inv, const LimitElement& x, int m_max) {
  if (is_zero_class(inv, x)) return true;
  int s = mu(inv, x).sign();
  auto o = positivity_oracle(inv, x.v, m_max);
  if (s > 0) {
    if (!o) o = positivity_oracle(inv, x.v, 16 * m_max);
    if (!o) throw std::logic_error("positivity: mu > 0 but no positive iterate found");
    return true;
  }
  if (o) throw std::logic_error("positivity: an iterate is positive but mu <= 0");
  return false;
}

LimitElement add(const OrderedInvariant& inv, const LimitElement& a, const LimitElement& b) {
  check_arity(inv, a.v);
  check_arity(inv, b.v);
  int top = std::max(a.k, b.k);
  auto x = lift(inv, a.v, top - a.k), y = lift(inv, b.v, top - b.k);
  for (size_t i = 0; i < x.size(); ++i) x[i] += y[i];
  return {x, top};
}

LimitElement negate(const LimitElement& a) {
  LimitElement r = a;
  for (auto& x : r.v) x = -x;
  return r;
}

AxiomReport ordered_axioms_check(const OrderedInvariant& inv, const std::vector<LimitElement>& samples) {
  AxiomReport rep;
  rep.samples = samples.size();
  std::vector<bool> pos;
  for (const auto& x : samples) pos.push_back(is_positive(inv, x));
  for (size_t i = 0; i < samples.size(); ++i) {
    if (pos[i] && is_positive(inv, negate(samples[i])) && !is_zero_class(inv, samples[i])) {
      rep.antisymmetric = false;
      rep.failures.push_back("x and -x both positive for sample " + std::to_string(i));
    }
    for (size_t j = i; j < samples.size(); ++j) {
      if (!pos[i] || !pos[j]) continue;
      ++rep.pairs;
      if (!is_positive(inv, add(inv, samples[i], samples[j]))) {
        rep.closed_under_addition = false;
        rep.failures.push_back("sum of samples " + std::to_string(i) + " and " + std::to_string(j) + " not positive");
      }
    }
    // x = (x + p) - p with p = c (1, ..., 1) large enough
    LimitElement p{std::vector<Integer>(inv.arity(), Integer(1)), samples[i].k};
    bool found = false;
    for (int step = 0; step < 256 && !found; ++step) {
      LimitElement xp = add(inv, samples[i], p);
      if (is_positive(inv, xp) && is_positive(inv, p)) {
        LimitElement back = add(inv, xp, negate(p));
        found = is_zero_class(inv, add(inv, back, negate(samples[i])));
      }
      for (auto& a : p.v) a *= 2;
    }
    if (!found) {
      rep.generates = false;
      rep.failures.push_back("no decomposition for sample " + std::to_string(i));
    }
  }
  return rep;
}

MuImage mu_image(const OrderedInvariant& inv) {
  MuImage m;
  const PerronData& pd = inv.perron;
  m.integer_case = pd.integer_case;
  m.min_poly = pd.lambda.min_poly();
  m.field = field_name(m.min_poly);
  m.generators = pd.r;
  if (pd.integer_case) {
    m.lambda_integer = pd.lambda.rational_value().get_num();
    m.primes = prime_factors(m.lambda_integer);
    std::vector<Integer> r;
    for (const auto& x : pd.r) r.push_back(x.rational_part().get_num());
    m.unit_witness = bezout(r);
    if (!(pd.pair(m.unit_witness) == FieldElement(pd.field, Rational(1))))
      throw std::logic_error("mu_image: entries of r are not coprime");
  }
  return m;
}

std::string MuImage::describe() const {
  if (integer_case) return "lambda = " + lambda_integer.get_str() + ", Z[1/lambda] with primes " + prime_set(primes);
  return "lambda root of " + min_poly.to_string("x") + ", field " + field;
}

Verdict compare_systems(const OrderedInvariant& a, const OrderedInvariant& b) {
  Verdict v;
  v.a = mu_image(a);
  v.b = mu_image(b);
  if (v.a.integer_case && v.b.integer_case) {
    if (v.a.primes == v.b.primes) {
      v.outcome = Outcome::not_distinguished;
      v.reason = "prime sets " + prime_set(v.a.primes) + " agree (inconclusive)";
    } else {
      v.outcome = Outcome::distinguished;
      v.reason = "prime sets " + prime_set(v.a.primes) + " ≠ " + prime_set(v.b.primes);
    }
  } else if (v.a.integer_case != v.b.integer_case) {
    v.outcome = Outcome::distinguished;
    v.reason = v.a.integer_case ? "integer lambda vs irrational lambda" : "irrational lambda vs integer lambda";
  } else if (field_equal(a.perron.lambda, b.perron.lambda)) {
    v.outcome = Outcome::not_distinguished;
    v.reason = "fields agree: " + v.a.field + " (inconclusive)";
  } else {
    v.outcome = Outcome::distinguished;
    v.reason = "fields differ: " + v.a.field + " vs " + v.b.field;
  }
  return v;
}

std::string Verdict::to_json() const {
  using nlohmann::json;
  auto image = [](const MuImage& m) {
    json j;
    j["integer_case"] = m.integer_case;
    j["min_poly"] = m.min_poly.to_string("x");
    j["field"] = m.field;
    if (m.integer_case) {
      j["lambda"] = m.lambda_integer.get_str();
      json p = json::array();
      for (const auto& x : m.primes) p.push_back(x.get_str());
      j["primes"] = p;
    }
    return j;
  };
  json j;
  j["outcome"] = outcome == Outcome::distinguished ? "Distinguished" : "NotDistinguished";
  j["reason"] = reason;
  j["a"] = image(a);
  j["b"] = image(b);
  return j.dump(2);
}

bool RatioReport::ok() const {
  return std::all_of(rows.begin(), rows.end(), [](const Row& r) { return r.consistent; });
}

RatioReport ratio_invariance_check(const OrderedInvariant& inv, const LimitElement& x, const LimitElement& y,
                                   const std::vector<Rational>& grid) {
  FieldElement mx = mu(inv, x), my = mu(inv, y);
  if (mx.sign() <= 0 || my.sign() <= 0) throw std::invalid_argument("ratio check: mu(x) and mu(y) must be positive");
  RatioReport rep{mx * my.inverse(), {}};
  const FieldPtr& K = inv.perron.field;
  for (const auto& q : grid) {
    if (q <= 0) throw std::invalid_argument("ratio check: grid values must be positive");
    Integer a = q.get_den(), b = q.get_num();
    LimitElement ax = x, by = y;
    for (auto& e : ax.v) e *= a;
    for (auto& e : by.v) e *= b;
    LimitElement z = add(inv, ax, negate(by));
    RatioReport::Row row;
    row.b_over_a = q;
    row.sign = mu(inv, z).sign();
    row.positive = is_positive(inv, z);
    row.zero_class = is_zero_class(inv, z);
    int c = compare(FieldElement(K, q), rep.ratio);
    if (row.sign > 0)
      row.consistent = row.positive && c < 0;
    else if (row.sign < 0)
      row.consistent = !row.positive && c > 0;
    else
      row.consistent = c == 0 && row.positive == row.zero_class;
    rep.rows.push_back(row);
  }
  return rep;
}

std::vector<FieldElement> mu_of_coboundaries(const OrderedInvariant& inv, const APComplex& c) {
  const auto& faces = c.cells.face_orbits;
  if (faces.size() != inv.arity()) throw std::invalid_argument("mu_of_coboundaries: complex does not match the invariant");
  IntMatrix d = cochain_complex(c).delta1.expand();
  // the functional is constant on each orbit
  std::vector<FieldElement> r;
  for (size_t i = 0; i < faces.size(); ++i)
    for (int k = 0; k < faces[i]; ++k) r.push_back(inv.perron.r[i]);
  std::vector<FieldElement> out;
  for (size_t e = 0; e < d.cols(); ++e) {
    FieldElement s(inv.perron.field, Rational(0));
    for (size_t i = 0; i < d.rows(); ++i)
      if (d(i, e) != 0) s += r[i] * Rational(d(i, e));
    out.push_back(s);
  }
  return out;
}

}  // namespace tilecoh
