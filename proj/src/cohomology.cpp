#include "tilecoh/cohomology.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace tilecoh {

namespace {

// Cochain map of a chain map between orbit summands: its expansion is the
// transpose of the expansion of `a`. With equal orbits this is the involution.
RingMatrix cochain_adjoint(const RingMatrix& a) {
  RingMatrix r(a.N, a.col_orbits, a.row_orbits);
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) {
      const auto& e = a.at(i, j);
      if (e.is_zero()) continue;
      int ki = a.row_orbits[i], kj = a.col_orbits[j];
      // image of the generator of summand i: coefficient of t^s c_j
      std::vector<Integer> b(static_cast<size_t>(a.N), Integer(0));
      for (int s = 0; s < kj; ++s)
        for (int p = 0; p < a.N; ++p)
          if ((p + s) % ki == 0) b[static_cast<size_t>(s)] += e.coeff(p);
      r.at(j, i) = GroupRingElement(a.N, b);
    }
  return r.normalized();
}

std::vector<size_t> kept(const std::vector<int>& orbits, int d) {
  std::vector<size_t> k;
  for (size_t i = 0; i < orbits.size(); ++i)
    if (orbits[i] % d == 0) k.push_back(i);
  return k;
}

// t = +1 or -1 evaluation into Q (the one-dimensional representations)
Matrix<QElem> eval_sign(const RingMatrix& a, int d) {
  auto rows = kept(a.row_orbits, d), cols = kept(a.col_orbits, d);
  Matrix<QElem> m(rows.size(), cols.size(), QElem(Rational(0)));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < cols.size(); ++j) {
      const auto& e = a.at(rows[i], cols[j]);
      Integer s = 0;
      for (int p = 0; p < a.N; ++p) s += (d == 2 && p % 2) ? -e.coeff(p) : e.coeff(p);
      m(i, j) = QElem(Rational(s));
    }
  return m;
}

// Basis (as columns) of the column space.
template <class F>
Matrix<F> column_basis(const Matrix<F>& m, const F& zero) {
  if (m.cols() == 0 || m.rows() == 0) return Matrix<F>(m.rows(), 0, zero);
  Matrix<F> t(m.cols(), m.rows(), zero);
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
  auto red = row_reduce(t);
  Matrix<F> out(m.rows(), red.pivots.size(), zero);
  for (size_t k = 0; k < red.pivots.size(); ++k)
    for (size_t i = 0; i < m.rows(); ++i) out(i, k) = red.rref(k, i);
  return out;
}

template <class F>
size_t rank_of(const Matrix<F>& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  return field_rank(m);
}

// Matrices of one representation over a field F.
template <class F>
struct RepData {
  F zero, one;
  std::array<size_t, 3> dims{};
  Matrix<F> d0, d1;
  std::array<std::optional<Matrix<F>>, 3> pb;

  Matrix<F> identity(size_t n) const {
    Matrix<F> m(n, n, zero);
    for (size_t i = 0; i < n; ++i) m(i, i) = one;
    return m;
  }
  Matrix<F> mul(const Matrix<F>& a, const Matrix<F>& b) const {
    if (a.cols() == 0) return Matrix<F>(a.rows(), b.cols(), zero);
    return multiply(a, b, zero);
  }
  // basis of the eventual image of the pullback on C^i
  Matrix<F> eventual(int i) const {
    Matrix<F> b = identity(dims[static_cast<size_t>(i)]);
    const Matrix<F>& p = *pb[static_cast<size_t>(i)];
    while (true) {
      Matrix<F> next = column_basis(mul(p, b), zero);
      if (next.cols() == b.cols()) return next;
      b = std::move(next);
    }
  }
};

template <class F>
void fill_ranks(const RepData<F>& r, RepresentationRanks& out, std::array<size_t, 3>* limit) {
  out.dims = r.dims;
  out.rank_delta0 = rank_of(r.d0);
  out.rank_delta1 = rank_of(r.d1);
  out.h = {r.dims[0] - out.rank_delta0, r.dims[1] - out.rank_delta1 - out.rank_delta0, r.dims[2] - out.rank_delta1};
  for (size_t i = 0; i < 3; ++i)
    if (r.pb[i]) out.invertible[i] = rank_of(*r.pb[i]) == r.dims[i];
  if (!limit) return;
  std::array<Matrix<F>, 3> e{r.eventual(0), r.eventual(1), r.eventual(2)};
  size_t a0 = rank_of(r.mul(r.d0, e[0])), a1 = rank_of(r.mul(r.d1, e[1]));
  *limit = {e[0].cols() - a0, e[1].cols() - a1 - a0, e[2].cols() - a1};
}

template <class F, class Conv>
RepData<F> rep_data(const CochainComplex& cc, int d, F zero, F one, Conv conv) {
  RepData<F> r{zero, one, {}, conv(cc.delta0, d), conv(cc.delta1, d), {}};
  for (size_t i = 0; i < 3; ++i) r.dims[i] = kept(cc.orbits[i], d).size();
  for (size_t i = 0; i < 3; ++i)
    if (cc.pullback[i]) r.pb[i] = conv(*cc.pullback[i], d);
  return r;
}

RepresentationRanks ranks_for(const CochainComplex& cc, int d, std::array<size_t, 3>* limit) {
  RepresentationRanks out;
  out.d = d;
  auto factors = cyclotomic_factors(cc.N);
  auto divs = divisors(cc.N);
  for (size_t k = 0; k < divs.size(); ++k)
    if (divs[k] == d) {
      out.factor = factors[k].to_string("t");
      out.degree = factors[k].degree();
    }
  if (out.factor.empty()) throw std::invalid_argument("representation: d must divide the group order");
  if (d <= 2) {
    auto r = rep_data<QElem>(cc, d, QElem(Rational(0)), QElem(Rational(1)), eval_sign);
    fill_ranks(r, out, limit);
  } else {
    FieldPtr K = cyclotomic_field(d);
    auto conv = [](const RingMatrix& a, int dd) { return reduce_mod_factor(a, dd).m; };
    auto r = rep_data<FieldElement>(cc, d, FieldElement(K, Rational(0)), FieldElement(K, Rational(1)), conv);
    fill_ranks(r, out, limit);
  }
  return out;
}

std::string factor_module(const std::string& factor, int N) {
  if (N == 1) return "Z";
  return "Z[t]/(" + factor + ")";
}

std::string decomposition(const std::vector<RepresentationRanks>& reps, const std::array<size_t, 3>* limit_per_rep,
                          size_t degree, int N) {
  std::vector<std::pair<std::string, size_t>> parts;
  for (size_t k = 0; k < reps.size(); ++k) {
    size_t r = limit_per_rep ? limit_per_rep[k][degree] : reps[k].h[degree];
    if (r) parts.emplace_back(reps[k].factor, r);
  }
  return module_string(parts, N);
}

// determinant modulo a small prime, by elimination
long det_mod(const IntMatrix& m, long p) {
  size_t n = m.rows();
  std::vector<long> a(n * n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      Integer v = m(i, j) % p;
      long x = v.get_si();
      a[i * n + j] = ((x % p) + p) % p;
    }
  long det = 1;
  auto inv = [p](long x) {
    long r = 1, e = p - 2;
    while (e) {
      if (e & 1) r = r * x % p;
      x = x * x % p;
      e >>= 1;
    }
    return r;
  };
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    while (piv < n && a[piv * n + c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      for (size_t j = 0; j < n; ++j) std::swap(a[piv * n + j], a[c * n + j]);
      det = (p - det) % p;
    }
    det = det * a[c * n + c] % p;
    long iv = inv(a[c * n + c]);
    for (size_t i = c + 1; i < n; ++i) {
      long f = a[i * n + c] * iv % p;
      if (!f) continue;
      for (size_t j = c; j < n; ++j) a[i * n + j] = ((a[i * n + j] - f * a[c * n + j]) % p + p) % p;
    }
  }
  return det;
}

bool unimodular(const IntMatrix& m) {
  if (m.rows() == 0) return true;
  for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L})
    if (det_mod(m, p) == 0) return false;
  Integer d = determinant(m);
  return d == 1 || d == -1;
}

}  // namespace

CochainComplex cochain_complex(const APComplex& c) {
  const CombinatorialSpec& cs = c.cells;
  CochainComplex cc;
  cc.N = cs.N;
  cc.orbits = {cs.vertex_orbits, cs.edge_orbits, cs.face_orbits};
  cc.delta0 = cochain_adjoint(cs.boundary1);
  cc.delta1 = cochain_adjoint(cs.boundary2);
  if (cs.subst0) cc.pullback[0] = cochain_adjoint(*cs.subst0);
  cc.pullback[1] = cochain_adjoint(cs.subst1);
  cc.pullback[2] = cochain_adjoint(cs.subst2);
  if (!is_zero((cc.delta1 * cc.delta0).normalized())) throw std::logic_error("cochain complex: delta1 delta0 != 0");
  if (!is_zero((cc.delta1 * *cc.pullback[1] - *cc.pullback[2] * cc.delta1).normalized()))
    throw std::logic_error("cochain complex: pullback does not commute with delta1");
  if (cc.pullback[0] && !is_zero((cc.delta0 * *cc.pullback[0] - *cc.pullback[1] * cc.delta0).normalized()))
    throw std::logic_error("cochain complex: pullback does not commute with delta0");
  return cc;
}

RepresentationRanks representation_ranks(const CochainComplex& cc, int d) { return ranks_for(cc, d, nullptr); }

std::string module_string(const std::vector<std::pair<std::string, size_t>>& parts, int N) {
  if (parts.empty()) return "0";
  bool trivial_only = parts.size() == 1 && parts[0].first == "t-1";
  std::string out;
  for (const auto& [factor, r] : parts) {
    if (!out.empty()) out += " ⊕ ";
    if (trivial_only || N == 1) {
      out += r == 1 ? "Z" : "Z^" + std::to_string(r);
      continue;
    }
    std::string m = factor_module(factor, N);
    out += r == 1 ? m : "(" + m + ")^" + std::to_string(r);
  }
  return out;
}

std::string DegreeGroup::describe() const {
  std::ostringstream os;
  os << (free_rank == 1 ? "Z" : free_rank == 0 ? "0" : "Z^" + std::to_string(free_rank));
  for (const auto& t : torsion) os << " + Z/" << t.get_str();
  if (!torsion_known) os << " (torsion not determined)";
  return os.str();
}

CohomologyReport cohomology_groups(const APComplex& c) {
  CochainComplex cc = cochain_complex(c);
  CohomologyReport rep;
  rep.system = c.system;
  rep.complex = c.variant == Variant::quotient ? "quotient" : "fixed_orientation";
  rep.N = cc.N;
  rep.finite_index_caveat = cc.N > 1;
  IntMatrix d0 = cc.delta0.expand(), d1 = cc.delta1.expand();
  auto inv0 = smith_invariants(d0), inv1 = smith_invariants(d1);
  std::array<size_t, 3> dim{d0.cols(), d1.cols(), d1.rows()};
  size_t r0 = inv0.size(), r1 = inv1.size();
  rep.H[0].free_rank = dim[0] - r0;
  rep.H[1].free_rank = dim[1] - r1 - r0;
  rep.H[2].free_rank = dim[2] - r1;
  for (const auto& x : inv0)
    if (x != 1) rep.H[1].torsion.push_back(x);
  for (const auto& x : inv1)
    if (x != 1) rep.H[2].torsion.push_back(x);
  for (int d : divisors(cc.N)) rep.representations.push_back(ranks_for(cc, d, nullptr));
  for (size_t i = 0; i < 3; ++i) {
    size_t total = 0;
    for (const auto& r : rep.representations) total += static_cast<size_t>(r.degree) * r.h[i];
    if (total != rep.H[i].free_rank) throw std::logic_error("cohomology: representation ranks disagree with the integer run");
    rep.H[i].module = decomposition(rep.representations, nullptr, i, cc.N);
  }
  return rep;
}

LimitGroup direct_limit(const IntMatrix& M) {
  if (M.rows() != M.cols()) throw std::invalid_argument("direct_limit: square matrix required");
  LimitGroup g;
  g.M = M;
  g.n = M.rows();
  g.stable_rank = g.n ? rank(power(M, static_cast<unsigned>(g.n))) : 0;
  return g;
}

std::pair<std::vector<Integer>, int> LimitGroup::add(const std::vector<Integer>& v, int k, const std::vector<Integer>& w,
                                                    int l) const {
  int top = std::max(k, l);
  auto a = tilecoh::apply(power(M, static_cast<unsigned>(top - k)), v);
  auto b = tilecoh::apply(power(M, static_cast<unsigned>(top - l)), w);
  for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return {a, top};
}

bool LimitGroup::equal(const std::vector<Integer>& v, int k, const std::vector<Integer>& w, int l) const {
  std::vector<Integer> neg(w.size());
  for (size_t i = 0; i < w.size(); ++i) neg[i] = -w[i];
  auto [diff, level] = add(v, k, neg, l);
  // killed by some power of M iff killed by M^n
  auto x = tilecoh::apply(power(M, static_cast<unsigned>(n)), diff);
  return std::all_of(x.begin(), x.end(), [](const Integer& a) { return a == 0; });
}

CohomologyReport limit_cohomology(const APComplex& c) {
  CohomologyReport base = cohomology_groups(c);
  CochainComplex cc = cochain_complex(c);
  if (!cc.pullback[0]) throw std::invalid_argument("limit cohomology: the complex has no vertex substitution");
  std::vector<std::array<size_t, 3>> limit(base.representations.size());
  std::vector<RepresentationRanks> reps;
  bool rational_iso = true;
  for (size_t k = 0; k < base.representations.size(); ++k) {
    reps.push_back(ranks_for(cc, base.representations[k].d, &limit[k]));
    reps.back().h_limit = limit[k];
    for (const auto& inv : reps.back().invertible) rational_iso = rational_iso && inv.value_or(true);
  }
  CohomologyReport rep = base;
  rep.representations = reps;
  bool integral_iso = rational_iso;
  for (size_t i = 0; i < 3 && integral_iso; ++i) integral_iso = unimodular(cc.pullback[i]->expand());
  if (integral_iso) {
    rep.branch = "invertible";
    rep.notes.push_back("pullbacks are invertible over Z in every degree: the space has the cohomology of the complex");
    return rep;
  }
  rep.branch = "eventual-image";
  for (size_t i = 0; i < 3; ++i) {
    size_t total = 0;
    for (size_t k = 0; k < reps.size(); ++k) total += static_cast<size_t>(reps[k].degree) * limit[k][i];
    rep.H[i].free_rank = total;
    rep.H[i].torsion.clear();
    rep.H[i].torsion_known = false;
    rep.H[i].module = decomposition(reps, limit.data(), i, cc.N);
  }
  rep.notes.push_back(rational_iso ? "pullbacks are invertible over Q only: ranks of the limit shown, groups are limits"
                                   : "pullbacks are singular: ranks from the eventual image, groups are limits");
  return rep;
}

DegreeGroup top_cohomology_all_orientation(const CohomologyReport& quotient_limit) {
  if (quotient_limit.N != 1) throw std::invalid_argument("top cohomology: expected the quotient complex");
  DegreeGroup g = quotient_limit.H[2];
  g.torsion_known = false;  // only up to finite extensions
  g.torsion.clear();
  return g;
}

std::string CohomologyReport::to_json() const {
  using nlohmann::json;
  json j;
  j["system"] = system;
  j["complex"] = complex;
  j["group_order"] = N;
  if (!branch.empty()) j["branch"] = branch;
  j["finite_index_caveat"] = finite_index_caveat;
  json degrees = json::array();
  for (size_t i = 0; i < 3; ++i) {
    json t = json::array();
    for (const auto& x : H[i].torsion) t.push_back(x.get_str());
    degrees.push_back({{"degree", i},
                       {"free_rank", H[i].free_rank},
                       {"torsion", t},
                       {"torsion_known", H[i].torsion_known},
                       {"module", H[i].module}});
  }
  j["H"] = degrees;
  json reps = json::array();
  for (const auto& r : representations) {
    json inv = json::array();
    for (const auto& x : r.invertible) inv.push_back(x ? json(*x) : json(nullptr));
    reps.push_back({{"factor", r.factor},
                    {"dims", r.dims},
                    {"rank_delta0", r.rank_delta0},
                    {"rank_delta1", r.rank_delta1},
                    {"h", r.h},
                    {"h_limit", r.h_limit ? json(*r.h_limit) : json(nullptr)},
                    {"pullback_invertible", inv}});
  }
  j["representations"] = reps;
  j["notes"] = notes;
  return j.dump(2);
}

}  // namespace tilecoh
