// Acceptance run: one PASS/FAIL line per criterion, details indented below it.
// Exit status is the number of failed criteria.
#include <algorithm>
#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "tilecoh/cohomology.hpp"
#include "tilecoh/factor.hpp"
#include "tilecoh/fixtures.hpp"
#include "tilecoh/order_invariant.hpp"

using namespace tilecoh;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// Collects failures for one criterion.
struct Check {
  std::vector<std::string> failures, info;
  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  template <class A, class B>
  void equal(const A& got, const B& want, const std::string& what) {
    if (!(got == want)) {
      std::ostringstream os;
      os << what << ": got " << got << ", want " << want;
      failures.push_back(os.str());
    }
  }
  void note(const std::string& s) { info.push_back(s); }
};

std::ostream& operator<<(std::ostream& os, const std::array<size_t, 3>& a) {
  return os << "(" << a[0] << ", " << a[1] << ", " << a[2] << ")";
}

std::array<size_t, 3> free_ranks(const CohomologyReport& r) { return {r.H[0].free_rank, r.H[1].free_rank, r.H[2].free_rank}; }

std::string set_string(const std::vector<Integer>& v) {
  std::string s = "{";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].get_str();
  return s + "}";
}

// Complexes are expensive for the pinwheel family, so each is built once.
struct Key {
  std::string name;
  Variant variant;
  bool collared;
  bool operator<(const Key& o) const {
    return std::tie(name, variant, collared) < std::tie(o.name, o.variant, o.collared);
  }
};
std::map<Key, APComplex> cache;

const APComplex& complex_of(const std::string& name, Variant v, bool collared) {
  Key k{name, v, collared};
  auto it = cache.find(k);
  if (it != cache.end()) return it->second;
  auto sys = fixture(name);
  APComplex c = sys.is_geometric() ? build_complex(sys, v, collared) : complex_from_spec(sys, v);
  return cache.emplace(k, std::move(c)).first->second;
}

const std::vector<std::string> geometric = {"chair", "penrose_triangles", "pinwheel", "pinwheel_2_3", "square_2x2"};

bool finite_group(const std::string& name) { return name != "pinwheel" && name != "pinwheel_2_3"; }

// The complex whose face substitution carries the order invariant.
const APComplex& invariant_complex(const std::string& name) {
  if (name == "penrose_combinatorial") return complex_of(name, Variant::quotient, false);
  return complex_of(name, Variant::quotient, true);
}

const RepresentationRanks* rep(const CohomologyReport& r, int d) {
  for (const auto& x : r.representations)
    if (x.d == d) return &x;
  return nullptr;
}

void criterion1(Check& ck) {
  auto t0 = Clock::now();
  auto cc = cochain_complex(complex_from_spec(fixture("penrose_combinatorial"), Variant::fixed_orientation));
  auto t1 = representation_ranks(cc, 1), t2 = representation_ranks(cc, 2);
  auto f5 = representation_ranks(cc, 5), f10 = representation_ranks(cc, 10);
  double s = since(t0);
  ck.equal(t1.rank_delta1, 2u, "t=1 rank of d2*");
  ck.equal(t1.rank_delta0, 1u, "t=1 rank of d1*");
  ck.equal(t2.rank_delta1, 2u, "t=-1 rank of d2*");
  ck.equal(t2.rank_delta0, 2u, "t=-1 rank of d1*");
  ck.equal(f5.rank_delta1, 4u, "Phi5 rank of d2*");
  ck.equal(f10.rank_delta1, 3u, "Phi10 rank of d2*");
  for (const auto* r : {&t1, &t2, &f5, &f10}) {
    std::ostringstream os;
    os << r->factor << ": d1* rank " << r->rank_delta0 << ", d2* rank " << r->rank_delta1;
    ck.note(os.str());
  }
  ck.expect(s < 1.0, "runtime " + std::to_string(s) + " s >= 1 s");
}

void criterion2(Check& ck) {
  auto t0 = Clock::now();
  auto c = complex_from_spec(fixture("penrose_combinatorial"), Variant::fixed_orientation);
  auto cx = cohomology_groups(c);
  auto lim = limit_cohomology(c);
  auto q = limit_cohomology(complex_from_spec(fixture("penrose_combinatorial"), Variant::quotient));
  auto top = top_cohomology_all_orientation(q);
  double s = since(t0);
  ck.equal(free_ranks(cx), std::array<size_t, 3>{1, 5, 8}, "free ranks of H*(Sigma_x)");
  for (const auto& h : cx.H) ck.expect(h.torsion.empty(), "torsion in H*(Sigma_x)");
  ck.equal(lim.branch, std::string("invertible"), "limit branch");
  for (const auto& r : lim.representations)
    for (size_t i = 0; i < 3; ++i)
      ck.expect(r.invertible[i].value_or(false), "pullback " + std::to_string(i) + " not invertible at " + r.factor);
  ck.equal(free_ranks(lim), free_ranks(cx), "H*(X_x) vs H*(Sigma_x)");
  ck.equal(q.H[2].describe(), std::string("Z^2"), "H^2(X_0)");
  ck.equal(top.free_rank, 2u, "H^3(X_phi) free rank");
  ck.note("H^3(X_phi) = " + top.describe());
  ck.equal(cx.H[1].module, std::string("Z[t]/(t-1) ⊕ Z[t]/(t^4-t^3+t^2-t+1)"), "H^1 module");
  ck.equal(cx.H[2].module, std::string("(Z[t]/(t-1))^2 ⊕ (Z[t]/(t+1))^2 ⊕ Z[t]/(t^4-t^3+t^2-t+1)"), "H^2 module");
  ck.expect(cx.finite_index_caveat, "finite index caveat not set");
  ck.note("H^1 = " + cx.H[1].module);
  ck.note("H^2 = " + cx.H[2].module);
  ck.expect(s < 5.0, "runtime " + std::to_string(s) + " s >= 5 s");
}

void criterion3(Check& ck) {
  auto t0 = Clock::now();
  auto sys = split_edges(fixture("chair"));
  ck.equal(orientation_group(sys).describe(), std::string("Z4"), "orientation group");
  const auto& c = complex_of("chair", Variant::fixed_orientation, false);
  if (c.cells.subst2.rows() != 1) {
    ck.expect(false, "uncollared chair should have one face orbit");
  } else {
    auto co = c.cells.subst2.at(0, 0).coeffs();
    std::sort(co.begin(), co.end());
    ck.expect(co == std::vector<Integer>{0, 1, 1, 2}, "face substitution coefficient multiset");
    ck.equal(c.cells.subst2.at_one()(0, 0), Integer(4), "face substitution at t=1");
  }
  auto inv = ordered_invariant(invariant_complex("chair"));
  auto m = mu_image(inv);
  ck.expect(m.integer_case && m.lambda_integer == 4, "Perron lambda = 4");
  ck.equal(set_string(m.primes), std::string("{2}"), "mu image primes");
  auto cor = enumerate_coronas(sys);
  ck.equal(cor.up_to_rotation, 14u, "collared coronas up to rotation");
  ck.note("coronas: " + std::to_string(cor.up_to_rotation) + " up to rotation, " +
          std::to_string(cor.per_orientation.value_or(0)) + " per orientation, " + std::to_string(cor.up_to_reflection) +
          " up to rotation and reflection");
  double s = since(t0);
  ck.expect(s < 60.0, "runtime " + std::to_string(s) + " s >= 60 s");
}

void criterion4(Check& ck) {
  auto t0 = Clock::now();
  auto K = std::make_shared<const NumberField>(Poly::from_ints({-5, 0, 1}), Rational(2), Rational(3));
  FieldElement r5(K, std::vector<Rational>{0, 1});
  ck.expect(!root_of_unity_order(r5 * Rational(2, 5), r5 * Rational(1, 5)).has_value(), "(2+i)/sqrt5 taken for a root of unity");
  for (const auto& name : {"pinwheel", "pinwheel_2_3"}) {
    auto g = orientation_group(split_edges(fixture(name)));
    ck.expect(!g.finite, std::string(name) + ": orientation group should be infinite");
    ck.expect(g.witness && !root_of_unity_order(g.witness->c, g.witness->s), std::string(name) + ": witness");
  }
  const auto& pw = invariant_complex("pinwheel");
  const auto& p23 = invariant_complex("pinwheel_2_3");
  ck.expect(pw.cells.face_orbits.size() >= 50, "pinwheel collared faces < 50");
  ck.note("collared quotient faces: pinwheel " + std::to_string(pw.cells.face_orbits.size()) + ", (2,3) " +
          std::to_string(p23.cells.face_orbits.size()));
  auto a = ordered_invariant(pw), b = ordered_invariant(p23);
  auto v = compare_systems(a, b);
  ck.expect(v.a.integer_case && v.a.lambda_integer == 5, "pinwheel lambda = 5");
  ck.expect(v.b.integer_case && v.b.lambda_integer == 13, "(2,3) lambda = 13");
  ck.expect(v.outcome == Outcome::distinguished, "verdict");
  ck.equal(v.reason, std::string("prime sets {5} ≠ {13}"), "witness");
  ck.note("verdict: " + v.reason);
  double s = since(t0);
  ck.expect(s < 600.0, "runtime " + std::to_string(s) + " s >= 600 s");
}

void criterion5(Check& ck) {
  // builds are outside the timed part
  const auto& ch = invariant_complex("chair");
  const auto& pe = invariant_complex("penrose_triangles");
  auto t0 = Clock::now();
  auto ic = ordered_invariant(ch), ip = ordered_invariant(pe);
  auto cc = compare_systems(ic, ic), pc = compare_systems(ip, ic), pp = compare_systems(ip, ip);
  double s = since(t0);
  ck.expect(cc.outcome == Outcome::not_distinguished, "(chair, chair) should be NotDistinguished");
  ck.expect(pc.outcome == Outcome::distinguished, "(penrose, chair) should be Distinguished");
  ck.equal(pc.reason, std::string("irrational lambda vs integer lambda"), "(penrose, chair) reason");
  ck.expect(pp.outcome == Outcome::not_distinguished, "(penrose, penrose) should be NotDistinguished");
  ck.expect(pp.a.field == "Q(sqrt(5))" && pp.b.field == "Q(sqrt(5))", "(penrose, penrose) fields");
  ck.expect(pp.a.min_poly == Poly::from_ints({1, -3, 1}), "penrose lambda is tau^2");
  ck.expect(field_equal(ip.perron.lambda, ip.perron.lambda), "field_equal(tau^2, tau^2)");
  for (const auto* v : {&cc, &pc, &pp})
    ck.note(std::string(v->outcome == Outcome::distinguished ? "Distinguished: " : "NotDistinguished: ") + v->reason);
  ck.expect(s < 5.0, "runtime " + std::to_string(s) + " s >= 5 s");
}

// (e) naive oracle: d1 ... dk = gcd of the k x k minors
std::vector<Integer> determinantal_divisors(const IntMatrix& m) {
  std::vector<Integer> out;
  size_t n = std::min(m.rows(), m.cols());
  for (size_t k = 1; k <= n; ++k) {
    Integer g = 0;
    std::vector<bool> rs(m.rows(), false), cs(m.cols(), false);
    std::fill(rs.begin(), rs.begin() + k, true);
    do {
      std::fill(cs.begin(), cs.end(), false);
      std::fill(cs.begin(), cs.begin() + k, true);
      do {
        IntMatrix sub(k, k);
        size_t a = 0;
        for (size_t i = 0; i < m.rows(); ++i) {
          if (!rs[i]) continue;
          size_t b = 0;
          for (size_t j = 0; j < m.cols(); ++j)
            if (cs[j]) sub(a, b++) = m(i, j);
          ++a;
        }
        g = gcd(g, determinant(sub));
      } while (std::prev_permutation(cs.begin(), cs.end()));
    } while (std::prev_permutation(rs.begin(), rs.end()));
    if (g == 0) break;
    out.push_back(abs(g));
  }
  return out;
}

// (g) the subspace spanned by the other generalized eigenvectors, over Q(lambda)
std::vector<std::vector<FieldElement>> other_eigenspaces(const IntMatrix& M, const PerronData& pd) {
  const FieldPtr& K = pd.field;
  size_t n = M.rows();
  FieldElement zero(K, Rational(0)), one(K, Rational(1)), L = pd.lambda_element();
  Poly f = pd.lambda.min_poly().primitive_part();
  std::vector<std::vector<FieldElement>> out;
  auto lift = [&](const IntMatrix& a) {
    Matrix<FieldElement> b(a.rows(), a.cols(), zero);
    for (size_t i = 0; i < a.rows(); ++i)
      for (size_t j = 0; j < a.cols(); ++j) b(i, j) = FieldElement(K, Rational(a(i, j)));
    return b;
  };
  for (const auto& pf : factor(charpoly(M))) {
    if (pf.poly == f) {
      // q = f / (x - lambda), by synthetic division over K
      auto c = f.monic().coeffs();
      int d = f.degree();
      std::vector<FieldElement> b(d, zero);
      b[d - 1] = FieldElement(K, c[d]);
      for (int i = d - 1; i >= 1; --i) b[i - 1] = FieldElement(K, c[i]) + L * b[i];
      Matrix<FieldElement> Mk = lift(M), Q(n, n, zero);
      for (int i = d - 1; i >= 0; --i) {
        Q = multiply(Q, Mk, zero);
        for (size_t j = 0; j < n; ++j) Q(j, j) += b[i];
      }
      for (auto& w : right_kernel(Q, zero, one)) out.push_back(w);
    } else {
      IntMatrix G(n, n, Integer(0));
      for (int i = pf.poly.degree(); i >= 0; --i) {
        G = G * M;
        for (size_t j = 0; j < n; ++j) G(j, j) += pf.poly.coeff(i).get_num();
      }
      G = power(G, static_cast<unsigned>(pf.multiplicity));
      for (auto& w : right_kernel(to_rational(G), QElem(Rational(0)), QElem(Rational(1)))) {
        std::vector<FieldElement> v;
        for (const auto& x : w) v.emplace_back(K, x.v);
        out.push_back(v);
      }
    }
  }
  return out;
}

std::vector<std::string> invariant_fixtures() {
  auto v = geometric;
  v.push_back("penrose_combinatorial");
  return v;
}

void criterion6(Check& ck) {
  auto t0 = Clock::now();
  std::mt19937_64 rng(20240611);

  // (a) chain complexes and chain maps
  {
    size_t n = 0;
    for (const auto& name : geometric)
      for (bool col : {false, true})
        for (auto v : {Variant::fixed_orientation, Variant::quotient}) {
          if (v == Variant::fixed_orientation && !finite_group(name)) continue;
          const auto& c = complex_of(name, v, col);
          auto err = check_chain_complex(c);
          ck.expect(!err, "(a) " + name + ": " + err.value_or(""));
          try {
            cochain_complex(c);
          } catch (const std::exception& e) {
            ck.expect(false, std::string("(a) cochains of ") + name + ": " + e.what());
          }
          ++n;
        }
    for (auto v : {Variant::fixed_orientation, Variant::quotient}) {
      auto err = check_chain_complex(complex_of("penrose_combinatorial", v, false));
      ck.expect(!err, "(a) penrose_combinatorial: " + err.value_or(""));
      ++n;
    }
    ck.note("(a) " + std::to_string(n) + " complexes checked");
  }

  // (b) coboundaries are in the kernel of mu
  {
    size_t n = 0;
    for (const auto& [k, c] : cache) {
      auto inv = ordered_invariant(c);
      for (const auto& x : mu_of_coboundaries(inv, c)) {
        ck.expect(x.is_zero(), "(b) " + k.name + ": mu(delta f_e) != 0");
        ++n;
      }
    }
    ck.note("(b) " + std::to_string(n) + " edge cochains, all mu(delta f_e) = 0");
  }

  // (c), (d), (f) on random cochains
  for (const auto& name : invariant_fixtures()) {
    auto inv = ordered_invariant(invariant_complex(name));
    std::uniform_int_distribution<int> ent(-9, 9), lev(0, 3), kind(0, 3);
    size_t agree = 0, pos = 0, total = 120;
    std::vector<LimitElement> xs;
    for (size_t s = 0; s < total; ++s) {
      LimitElement x{std::vector<Integer>(inv.arity()), lev(rng)};
      int kd = kind(rng);
      for (auto& a : x.v) a = ent(rng);
      // nearly balanced samples: a sparse vector against a multiple of the ones vector
      if (kd == 0) {
        std::uniform_int_distribution<size_t> at(0, inv.arity() - 1);
        for (auto& a : x.v) a = -1;
        x.v[at(rng)] += static_cast<long>(inv.arity());
      }
      FieldElement m = mu(inv, x);
      auto o = positivity_oracle(inv, x.v, 64);
      auto on = positivity_oracle(inv, negate(x).v, 64);
      bool ok = m.sign() > 0 ? (o.has_value() && !on) : m.sign() < 0 ? (on.has_value() && !o) : (!o && !on);
      agree += ok;
      pos += m.sign() > 0;
      if (!ok) ck.expect(false, "(c) " + name + ": oracle disagrees with mu on sample " + std::to_string(s));
      LimitElement y{tilecoh::apply(inv.pullback, x.v), x.k + 1};
      ck.expect(mu(inv, y) == m, "(d) " + name + ": mu not constant along the limit");
      if (s < 16) xs.push_back(x);
    }
    ck.note("(c, d) " + name + ": " + std::to_string(agree) + "/" + std::to_string(total) + " agree, " +
            std::to_string(pos) + " positive");
    auto ax = ordered_axioms_check(inv, xs);
    for (const auto& f : ax.failures) ck.expect(false, "(f) " + name + ": " + f);
    ck.note("(f) " + name + ": " + std::to_string(ax.samples) + " samples, " + std::to_string(ax.pairs) + " positive pairs");
  }

  // (e) Smith normal form
  {
    std::uniform_int_distribution<int> dim(1, 5), ent(-9, 9), sparse(0, 3);
    for (int s = 0; s < 200; ++s) {
      IntMatrix m(dim(rng), dim(rng));
      for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) m(i, j) = sparse(rng) == 0 ? 0 : ent(rng);
      // make some rank deficient
      if (s % 5 == 0 && m.rows() > 1)
        for (size_t j = 0; j < m.cols(); ++j) m(m.rows() - 1, j) = 2 * m(0, j);
      auto sf = smith_normal_form(m);
      ck.expect(sf.U * m * sf.V == sf.D, "(e) U M V != D");
      ck.expect(abs(determinant(sf.U)) == 1 && abs(determinant(sf.V)) == 1, "(e) U or V not unimodular");
      bool diag = true;
      for (size_t i = 0; i < sf.D.rows(); ++i)
        for (size_t j = 0; j < sf.D.cols(); ++j)
          if (i != j && sf.D(i, j) != 0) diag = false;
      ck.expect(diag, "(e) D not diagonal");
      auto inv = sf.invariant_factors();
      auto dd = determinantal_divisors(m);
      bool match = inv.size() == dd.size();
      Integer prod = 1;
      for (size_t i = 0; match && i < inv.size(); ++i) {
        prod *= inv[i];
        match = prod == dd[i] && (i == 0 || inv[i] % inv[i - 1] == 0);
      }
      if (!match) ck.expect(false, "(e) invariant factors disagree with minors for\n" + to_string(m));
    }
    ck.note("(e) 200 matrices");
  }

  // (g) r is orthogonal to the other generalized eigenvectors
  {
    auto fib = IntMatrix::from_rows({{Integer(1), Integer(1)}, {Integer(1), Integer(0)}});
    auto pen = complex_from_spec(fixture("penrose_combinatorial"), Variant::quotient).cells.subst2.at_one().transposed();
    auto tri = type_count_matrix(fixture("penrose_triangles")).transposed();
    for (const auto& [name, M] : std::vector<std::pair<std::string, IntMatrix>>{{"fibonacci", fib}, {"penrose faces", pen}, {"penrose tiles", tri}}) {
      auto pd = perron_data(M);
      auto ws = other_eigenspaces(M, pd);
      ck.equal(ws.size(), M.rows() - 1, "(g) " + name + ": dimension of the other eigenspaces");
      for (const auto& w : ws) {
        FieldElement s(pd.field, Rational(0));
        for (size_t i = 0; i < w.size(); ++i) s += pd.r[i] * w[i];
        ck.expect(s.is_zero(), "(g) " + name + ": r . w != 0");
      }
      ck.note("(g) " + name + ": " + std::to_string(ws.size()) + " vectors, lambda " + pd.lambda.min_poly().to_string("x"));
    }
  }

  // (h) area(phi T) = lambda area(T), lambda = c^2
  for (const auto& name : geometric) {
    auto sys = fixture(name);
    FieldElement c2 = sys.rule.linear_factor * sys.rule.linear_factor;
    auto area = area_vector(sys);
    for (size_t t = 0; t < sys.tiles.size(); ++t) {
      FieldElement sum(sys.field, Rational(0));
      for (const auto& pt : supertile(sys, static_cast<int>(t), 1)) sum += twice_signed_area(placed_vertices(sys, pt));
      ck.expect(sum == c2 * twice_signed_area(sys.tiles[t].vertices), "(h) " + name + ": area of phi T");
      ck.expect(area[t].sign() > 0, "(h) " + name + ": nonpositive area");
    }
    // a positive left eigenvector of the count matrix: c^2 is its Perron root
    IntMatrix M = type_count_matrix(sys);
    for (size_t j = 0; j < M.cols(); ++j) {
      FieldElement s(sys.field, Rational(0));
      for (size_t i = 0; i < M.rows(); ++i) s += area[i] * Rational(M(i, j));
      ck.expect(s == c2 * area[j], "(h) " + name + ": area vector is not an eigenvector");
    }
    FieldElement chi(sys.field, Rational(0));
    auto co = charpoly(M).coeffs();
    for (size_t i = co.size(); i-- > 0;) chi = chi * c2 + FieldElement(sys.field, co[i]);
    ck.expect(chi.is_zero(), "(h) " + name + ": c^2 is not an eigenvalue");
  }
  ck.note("(h) " + std::to_string(geometric.size()) + " geometric fixtures");

  double s = since(t0);
  ck.note("suite time " + std::to_string(s) + " s");
  ck.expect(s < 900.0, "runtime " + std::to_string(s) + " s >= 900 s");
}

}  // namespace

int main() {
  std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria = {
      {"penrose representation table", criterion1},
      {"penrose cohomology", criterion2},
      {"chair pipeline from geometry", criterion3},
      {"pinwheel family", criterion4},
      {"comparator matrix", criterion5},
      {"property suites", criterion6},
  };
  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Check ck;
    auto t0 = Clock::now();
    try {
      criteria[i].second(ck);
    } catch (const std::exception& e) {
      ck.failures.push_back(std::string("exception: ") + e.what());
    }
    bool pass = ck.failures.empty();
    failed += !pass;
    std::cout << "criterion " << i + 1 << " " << (pass ? "PASS" : "FAIL") << "  " << criteria[i].first << "  ("
              << std::fixed << std::setprecision(2) << since(t0) << " s)\n";
    for (const auto& s : ck.info) std::cout << "    " << s << "\n";
    for (const auto& s : ck.failures) std::cout << "    FAILED: " << s << "\n";
    std::cout.flush();
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed;
}
