#include "tilecoh/complex.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "json.hpp"
#include "tilecoh/perron.hpp"

namespace tilecoh {

namespace {

void reject_reflections(const TilingSystem& sys) {
  if (!sys.is_geometric()) throw std::invalid_argument("complex builder: system has no geometry");
  for (const auto& list : sys.rule.placements)
    for (const auto& p : list)
      if (p.motion.reflect)
        throw std::invalid_argument("complex builder: reflected placements are not supported; use mirror prototiles");
}

RigidMotion rotation_part(const RigidMotion& g) { return RigidMotion::rotation(g.c, g.s); }

// Vertex lookup over a patch.
struct PatchIndex {
  std::vector<std::vector<Point>> verts;
  std::vector<std::vector<std::string>> keys;
  std::unordered_map<std::string, std::vector<std::pair<size_t, size_t>>> at;

  PatchIndex(const TilingSystem& sys, const Patch& p) {
    verts.reserve(p.size());
    for (size_t i = 0; i < p.size(); ++i) {
      verts.push_back(placed_vertices(sys, p[i]));
      keys.emplace_back();
      for (size_t k = 0; k < verts[i].size(); ++k) {
        keys[i].push_back(verts[i][k].key());
        at[keys[i][k]].push_back({i, k});
      }
    }
  }

  // Every edge at vertex v of tile i is shared by two tiles of the patch.
  bool star_complete(size_t i, size_t k) const {
    std::multiset<std::string> out, in;
    for (const auto& [j, m] : at.at(keys[i][k])) {
      size_t n = keys[j].size();
      out.insert(keys[j][(m + 1) % n]);
      in.insert(keys[j][(m + n - 1) % n]);
    }
    return out == in;
  }

  std::vector<size_t> touching(size_t i) const {
    std::set<size_t> s;
    for (const auto& key : keys[i])
      for (const auto& [j, m] : at.at(key))
        if (j != i) s.insert(j);
    return {s.begin(), s.end()};
  }

  // Pairs (e, f): edge e of tile i coincides (reversed) with edge f of tile j.
  std::vector<std::pair<int, int>> shared_edges(size_t i, size_t j) const {
    std::vector<std::pair<int, int>> out;
    size_t n = keys[i].size(), m = keys[j].size();
    for (size_t e = 0; e < n; ++e)
      for (size_t f = 0; f < m; ++f)
        if (keys[i][e] == keys[j][(f + 1) % m] && keys[i][(e + 1) % n] == keys[j][f])
          out.emplace_back(static_cast<int>(e), static_cast<int>(f));
    return out;
  }
};

std::string corona_key(int center, const std::vector<PlacedTile>& nb) {
  std::vector<std::string> parts;
  parts.reserve(nb.size());
  for (const auto& t : nb) parts.push_back(std::to_string(t.type) + "@" + t.motion.key());
  std::sort(parts.begin(), parts.end());
  std::string k = std::to_string(center) + "{";
  for (const auto& p : parts) k += p + ";";
  return k + "}";
}

Corona make_corona(int center, std::vector<PlacedTile> nb) {
  std::sort(nb.begin(), nb.end(), [](const PlacedTile& a, const PlacedTile& b) {
    if (a.type != b.type) return a.type < b.type;
    return a.motion.key() < b.motion.key();
  });
  Corona c{center, std::move(nb), ""};
  c.key = corona_key(c.center, c.neighbors);
  return c;
}

std::optional<Corona> extract_corona(const PatchIndex& idx, const Patch& p, size_t i) {
  for (size_t k = 0; k < idx.keys[i].size(); ++k)
    if (!idx.star_complete(i, k)) return std::nullopt;
  RigidMotion inv = p[i].motion.inverse();
  std::vector<PlacedTile> nb;
  for (size_t j : idx.touching(i)) nb.push_back({p[j].type, inv.compose(p[j].motion)});
  return make_corona(p[i].type, std::move(nb));
}

Patch corona_patch(const TilingSystem& sys, const Corona& c) {
  Patch p{{c.center, RigidMotion::identity(sys.field)}};
  p.insert(p.end(), c.neighbors.begin(), c.neighbors.end());
  return p;
}

// Offsets of each parent's block of children inside substitute(p).
std::vector<size_t> child_offsets(const TilingSystem& sys, const Patch& p) {
  std::vector<size_t> off{0};
  for (const auto& t : p) off.push_back(off.back() + sys.rule.placements[static_cast<size_t>(t.type)].size());
  return off;
}

// Reflection symmetry of a prototile (as a point set), if any.
std::optional<RigidMotion> reflection_symmetry(const ProtoTile& t) {
  const auto& v = t.vertices;
  size_t n = v.size();
  const FieldPtr& K = v[0].x.field();
  RigidMotion flip = RigidMotion::identity(K);
  flip.reflect = true;
  Point a0 = flip.apply(v[0]), a1 = flip.apply(v[1]);
  FieldElement l = dot(v[1] - v[0], v[1] - v[0]);
  for (size_t i = 0; i < n; ++i) {
    const Point& b0 = v[i];
    const Point& b1 = v[(i + n - 1) % n];
    if (!(dot(b1 - b0, b1 - b0) == l)) continue;
    RigidMotion g = motion_fitting(a0, a1, b0, b1).compose(flip);
    bool ok = true;
    for (size_t k = 0; k < n && ok; ++k) ok = g.apply(v[k]) == v[(i + n - k) % n];
    if (ok) return g;
  }
  return std::nullopt;
}

}  // namespace

// ---------------------------------------------------------------------------
// orientation group

int OrientationGroup::index_of(const RigidMotion& g) const {
  if (!finite) throw std::logic_error("orientation group is infinite");
  for (size_t k = 0; k < elements.size(); ++k)
    if (elements[k].c == g.c && elements[k].s == g.s) return static_cast<int>(k);
  throw std::runtime_error("rotation " + g.rotation_key() + " is not in the orientation group");
}

std::string OrientationGroup::describe() const {
  if (finite) return N == 1 ? "trivial" : "Z" + std::to_string(N);
  return "infinite";
}

OrientationGroup orientation_group(const TilingSystem& sys) {
  reject_reflections(sys);
  OrientationGroup g;
  std::map<std::string, RigidMotion> rots;
  std::set<std::string> seen;
  std::deque<std::pair<int, RigidMotion>> queue;
  RigidMotion id = RigidMotion::identity(sys.field);
  rots.emplace(id.rotation_key(), id);
  for (size_t t = 0; t < sys.tiles.size(); ++t) {
    seen.insert(std::to_string(t) + "#" + id.rotation_key());
    queue.emplace_back(static_cast<int>(t), id);
  }
  const size_t limit = 200000;
  while (!queue.empty()) {
    auto [type, r] = queue.front();
    queue.pop_front();
    for (const auto& pl : sys.rule.placements[static_cast<size_t>(type)]) {
      RigidMotion q = r.compose(rotation_part(pl.motion));
      std::string rk = q.rotation_key();
      if (!rots.count(rk)) {
        rots.emplace(rk, q);
        g.generators.push_back(q);
        if (!root_of_unity_order(q.c, q.s)) {
          g.finite = false;
          g.witness = q;
          g.N = 0;
          return g;
        }
      }
      if (seen.insert(std::to_string(pl.type) + "#" + rk).second) queue.emplace_back(pl.type, q);
      if (seen.size() > limit) throw std::runtime_error("orientation_group: search limit reached");
    }
  }
  // close under products (all elements are roots of unity, so this is finite)
  std::vector<RigidMotion> all;
  for (const auto& [k, r] : rots) all.push_back(r);
  for (bool grew = true; grew;) {
    grew = false;
    size_t n = all.size();
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) {
        RigidMotion q = all[i].compose(all[j]);
        if (rots.emplace(q.rotation_key(), q).second) {
          all.push_back(q);
          grew = true;
        }
      }
  }
  g.N = static_cast<int>(all.size());
  // generator: smallest positive angle
  std::optional<RigidMotion> rho;
  for (const auto& r : all) {
    if (r.s.sign() <= 0) continue;
    if (!rho || compare(r.c, rho->c) > 0) rho = r;
  }
  if (!rho) {
    rho = id;
    for (const auto& r : all)
      if (!(r.c == id.c)) rho = r;
  }
  g.elements.push_back(id);
  for (int k = 1; k < g.N; ++k) g.elements.push_back(g.elements.back().compose(*rho));
  if (!(g.elements.back().compose(*rho).c == id.c) || !(g.elements.back().compose(*rho).s == id.s))
    throw std::logic_error("orientation group is not cyclic");
  return g;
}

// ---------------------------------------------------------------------------
// coronas

int CoronaSet::index_of(const std::string& key) const {
  for (size_t i = 0; i < coronas.size(); ++i)
    if (coronas[i].key == key) return static_cast<int>(i);
  return -1;
}

CoronaSet enumerate_coronas(const TilingSystem& sys, const CoronaOptions& opt) {
  reject_reflections(sys);
  CoronaSet out;
  std::unordered_map<std::string, size_t> known;
  std::vector<Corona> found;
  // seed: first full corona inside a supertile
  std::optional<Corona> seed;
  for (int n = 1; n <= opt.max_seed_level && !seed; ++n) {
    Patch p = supertile(sys, 0, n);
    PatchIndex idx(sys, p);
    for (size_t i = 0; i < p.size() && !seed; ++i) seed = extract_corona(idx, p, i);
  }
  if (!seed) throw std::runtime_error("enumerate_coronas: no interior tile found up to level " +
                                      std::to_string(opt.max_seed_level));
  known.emplace(seed->key, 0);
  found.push_back(*seed);
  size_t done = 0;
  int rounds = 0;
  while (done < found.size()) {
    if (rounds >= opt.max_rounds || found.size() > opt.max_coronas)
      throw std::runtime_error("enumerate_coronas: budget exhausted with " + std::to_string(found.size()) +
                               " coronas after " + std::to_string(rounds) + " rounds");
    size_t end = found.size();
    for (; done < end; ++done) {
      Corona k = found[done];
      Patch p = corona_patch(sys, k);
      Patch q = substitute(sys, p);
      PatchIndex idx(sys, q);
      size_t nc = sys.rule.placements[static_cast<size_t>(k.center)].size();
      for (size_t i = 0; i < nc; ++i) {
        auto c = extract_corona(idx, q, i);
        if (!c) throw std::logic_error("enumerate_coronas: child corona not determined by its parent corona");
        if (known.emplace(c->key, found.size()).second) found.push_back(*c);
      }
    }
    ++rounds;
  }
  out.rounds = rounds;
  out.complete = true;
  // order by center type, then discovery
  std::stable_sort(found.begin(), found.end(), [](const Corona& a, const Corona& b) { return a.center < b.center; });
  out.coronas = std::move(found);
  out.up_to_rotation = out.coronas.size();
  OrientationGroup g = orientation_group(sys);
  if (g.finite) out.per_orientation = out.up_to_rotation * static_cast<size_t>(g.N);

  // classes under prototile reflection symmetries
  std::vector<std::optional<RigidMotion>> sigma;
  for (const auto& t : sys.tiles) sigma.push_back(reflection_symmetry(t));
  std::unordered_map<std::string, size_t> where;
  for (size_t i = 0; i < out.coronas.size(); ++i) where[out.coronas[i].key] = i;
  std::vector<size_t> parent(out.coronas.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (size_t i = 0; i < out.coronas.size(); ++i) {
    const Corona& k = out.coronas[i];
    const auto& sc = sigma[static_cast<size_t>(k.center)];
    if (!sc) continue;
    std::vector<PlacedTile> nb;
    bool ok = true;
    for (const auto& t : k.neighbors) {
      const auto& sy = sigma[static_cast<size_t>(t.type)];
      if (!sy) {
        ok = false;
        break;
      }
      nb.push_back({t.type, sc->compose(t.motion).compose(sy->inverse())});
    }
    if (!ok) continue;
    auto it = where.find(corona_key(k.center, nb));
    if (it != where.end()) parent[find(i)] = find(it->second);
  }
  std::set<size_t> roots;
  for (size_t i = 0; i < out.coronas.size(); ++i) roots.insert(find(i));
  out.up_to_reflection = roots.size();
  return out;
}

std::vector<Adjacency> adjacencies(const TilingSystem& sys, const CoronaSet& coronas) {
  std::vector<Adjacency> out;
  std::set<std::string> seen;
  for (const auto& k : coronas.coronas) {
    Patch p = corona_patch(sys, k);
    PatchIndex idx(sys, p);
    for (size_t j = 1; j < p.size(); ++j) {
      for (auto [ea, eb] : idx.shared_edges(0, j)) {
        std::string key = std::to_string(k.center) + "/" + std::to_string(ea) + "/" + std::to_string(p[j].type) + "/" +
                          std::to_string(eb) + "/" + p[j].motion.key();
        if (seen.insert(key).second) out.push_back({k.center, ea, p[j].type, eb, p[j].motion});
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// collaring

CollaredSystem collar(const TilingSystem& sys, const CoronaOptions& opt) {
  CollaredSystem cs;
  cs.base = sys;
  cs.coronas = enumerate_coronas(sys, opt);
  const auto& cor = cs.coronas.coronas;
  std::unordered_map<std::string, int> index;
  for (size_t i = 0; i < cor.size(); ++i) index[cor[i].key] = static_cast<int>(i);

  TilingSystem& c = cs.collared;
  c.name = sys.name + "+collared";
  c.field = sys.field;
  c.rule.linear_factor = sys.rule.linear_factor;
  std::vector<int> seq(sys.tiles.size(), 0);
  for (const auto& k : cor) {
    const ProtoTile& b = sys.tiles[static_cast<size_t>(k.center)];
    c.tiles.push_back({b.id + "#" + std::to_string(seq[static_cast<size_t>(k.center)]++), b.vertices, b.edge_labels});
    cs.base_type.push_back(k.center);
  }

  // collared type of tile i of patch q (its corona must be full inside q)
  auto type_in = [&](const PatchIndex& idx, const Patch& q, size_t i) {
    auto k = extract_corona(idx, q, i);
    if (!k) {
      std::ostringstream os;
      os << "collar: child corona not determined (tile " << i << " of " << q.size() << ", type " << q[i].type << ")";
      throw std::logic_error(os.str());
    }
    auto it = index.find(k->key);
    if (it == index.end()) throw std::logic_error("collar: child corona missing from the enumeration");
    return it->second;
  };

  c.rule.placements.resize(cor.size());
  struct Pair {
    int a, b;
    RigidMotion rel;
  };
  std::vector<Pair> pairs;
  std::unordered_map<std::string, size_t> pair_index;
  auto add_pair = [&](int a, int b, const RigidMotion& rel) {
    std::string key = std::to_string(a) + "|" + std::to_string(b) + "|" + rel.key();
    if (pair_index.emplace(key, pairs.size()).second) pairs.push_back({a, b, rel});
  };
  auto harvest = [&](const Patch& q, const std::vector<size_t>& members) {
    PatchIndex idx(sys, q);
    std::map<size_t, int> type;
    for (size_t i : members) type[i] = type_in(idx, q, i);
    for (size_t i : members)
      for (size_t j : members)
        if (i < j && !idx.shared_edges(i, j).empty()) add_pair(type[i], type[j], q[i].motion.inverse().compose(q[j].motion));
  };

  for (size_t i = 0; i < cor.size(); ++i) {
    Patch p = corona_patch(sys, cor[i]);
    Patch q = substitute(sys, p);
    PatchIndex idx(sys, q);
    size_t nc = sys.rule.placements[static_cast<size_t>(cor[i].center)].size();
    std::vector<size_t> members;
    for (size_t j = 0; j < nc; ++j) {
      c.rule.placements[i].push_back({type_in(idx, q, j), q[j].motion});
      members.push_back(j);
    }
    harvest(q, members);
  }
  // close the contact set under substitution
  for (size_t n = 0; n < pairs.size(); ++n) {
    if (pairs.size() > 50 * opt.max_coronas) throw std::runtime_error("collar: contact enumeration did not close");
    Pair pr = pairs[n];
    Patch p = corona_patch(sys, cor[static_cast<size_t>(pr.a)]);
    std::set<std::string> have;
    for (const auto& t : p) have.insert(std::to_string(t.type) + "@" + t.motion.key());
    size_t b_at = p.size();
    Patch pb = corona_patch(sys, cor[static_cast<size_t>(pr.b)]);
    for (size_t s = 0; s < pb.size(); ++s) {
      PlacedTile u{pb[s].type, pr.rel.compose(pb[s].motion)};
      std::string key = std::to_string(u.type) + "@" + u.motion.key();
      if (have.insert(key).second) {
        p.push_back(u);
      } else if (s == 0) {
        // B itself is already a neighbor of A
        for (size_t j = 0; j < p.size(); ++j)
          if (p[j].type == u.type && p[j].motion == u.motion) b_at = j;
      }
    }
    if (b_at == p.size()) throw std::logic_error("collar: pair member missing");
    Patch q = substitute(sys, p);
    auto off = child_offsets(sys, p);
    std::vector<size_t> members;
    for (size_t j = off[0]; j < off[1]; ++j) members.push_back(j);
    for (size_t j = off[b_at]; j < off[b_at + 1]; ++j) members.push_back(j);
    harvest(q, members);
  }
  for (const auto& pr : pairs) {
    Patch p{{pr.a, RigidMotion::identity(sys.field)}, {pr.b, pr.rel}};
    PatchIndex idx(c, p);
    for (auto [ea, eb] : idx.shared_edges(0, 1)) cs.contacts.push_back({pr.a, ea, pr.b, eb, pr.rel});
  }
  return cs;
}

// ---------------------------------------------------------------------------
// border forcing

BorderForcing forces_border(const TilingSystem& sys, int n_max, const std::vector<int>& base_type) {
  CoronaSet cs = enumerate_coronas(sys);
  auto project = [&](int t) { return base_type.empty() ? t : base_type[static_cast<size_t>(t)]; };
  for (int n = 1; n <= n_max; ++n) {
    std::map<int, std::string> surround;
    bool forced = true;
    for (const auto& k : cs.coronas) {
      Patch p = corona_patch(sys, k);
      for (int m = 0; m < n; ++m) p = substitute(sys, p);
      // the first block of p is the level-n supertile itself
      size_t size = supertile(sys, k.center, n).size();
      PatchIndex idx(sys, p);
      std::set<size_t> around;
      for (size_t i = 0; i < size; ++i)
        for (size_t j : idx.touching(i))
          if (j >= size) around.insert(j);
      std::vector<PlacedTile> nb;
      for (size_t j : around) nb.push_back({project(p[j].type), p[j].motion});
      std::string key = corona_key(0, nb);
      auto [it, fresh] = surround.emplace(k.center, key);
      if (!fresh && it->second != key) {
        forced = false;
        break;
      }
    }
    if (forced) return {true, n};
  }
  return {false, n_max};
}

// ---------------------------------------------------------------------------
// Anderson-Putnam complex

namespace {

// a = (-1)^parity b within a class; a class is folded when it contains e and -e
struct ParityUnionFind {
  std::vector<size_t> parent;
  std::vector<int> parity;
  std::vector<char> folded;

  explicit ParityUnionFind(size_t n) : parent(n), parity(n, 0), folded(n, 0) { std::iota(parent.begin(), parent.end(), 0); }

  std::pair<size_t, int> find(size_t x) {
    int p = 0;
    size_t r = x;
    while (parent[r] != r) {
      p ^= parity[r];
      r = parent[r];
    }
    // compress
    int q = p;
    while (parent[x] != x) {
      size_t nx = parent[x];
      int px = parity[x];
      parent[x] = r;
      parity[x] = q;
      q ^= px;
      x = nx;
    }
    return {r, p};
  }

  void unite(size_t a, size_t b, int s) {
    auto [ra, pa] = find(a);
    auto [rb, pb] = find(b);
    if (ra == rb) {
      if ((pa ^ pb ^ s) != 0) folded[ra] = 1;
      return;
    }
    parent[ra] = rb;
    parity[ra] = pa ^ s ^ pb;
    folded[rb] = static_cast<char>(folded[rb] | folded[ra]);
  }
};

struct UnionFind {
  std::vector<size_t> parent;
  explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  size_t find(size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(size_t a, size_t b) { parent[find(a)] = find(b); }
};

// class -> (orbit, j, sign) with class = sign * t^j * (orbit representative)
struct OrbitSlot {
  int orbit = -1, shift = 0, sign = 1;
};

class ComplexBuilder {
 public:
  ComplexBuilder(const TilingSystem& sys, bool quotient, const OrientationGroup& g)
      : sys_(sys), N_(quotient ? 1 : g.N), group_(g), quotient_(quotient), c_(sys.rule.linear_factor) {
    for (const auto& t : sys.tiles) {
      base_.push_back(total_);
      total_ += t.vertices.size();
    }
  }

  APComplex build(const std::vector<Adjacency>& contacts);

 private:
  size_t id(int type, int k, size_t i) const { return (base_[static_cast<size_t>(type)] + i) * static_cast<size_t>(N_) + static_cast<size_t>(k); }
  size_t sides(int type) const { return sys_.tiles[static_cast<size_t>(type)].vertices.size(); }
  int rot(const RigidMotion& g) const { return quotient_ ? 0 : group_.index_of(g); }
  int wrap(int k) const { return ((k % N_) + N_) % N_; }
  GroupRingElement mono(int sign, int k) const { return GroupRingElement::monomial(N_, Integer(sign), k); }

  // coefficient of half edge h in terms of its orbit representative
  std::pair<int, GroupRingElement> edge_coef(size_t h) {
    auto [r, p] = edges_->find(h);
    const OrbitSlot& o = edge_slot_.at(r);
    return {o.orbit, mono((p ? -1 : 1) * o.sign, o.shift)};
  }
  std::pair<int, GroupRingElement> vertex_coef(size_t v) {
    const OrbitSlot& o = vertex_slot_.at(verts_->find(v));
    return {o.orbit, mono(1, o.shift)};
  }
  bool is_folded(size_t h) { return edges_->folded[edges_->find(h).first] != 0; }

  using Chain = std::map<int, GroupRingElement>;
  void add(Chain& ch, int cell, const GroupRingElement& e) {
    auto it = ch.find(cell);
    if (it == ch.end())
      ch.emplace(cell, e);
    else
      it->second += e;
  }
  Chain shift(const Chain& ch, int k) const {
    Chain out;
    for (const auto& [cell, e] : ch) out.emplace(cell, e.shifted(k));
    return out;
  }
  bool same(const Chain& a, const Chain& b) const {
    std::set<int> cells;
    for (const auto& [k, e] : a) cells.insert(k);
    for (const auto& [k, e] : b) cells.insert(k);
    for (int k : cells) {
      GroupRingElement x = a.count(k) ? a.at(k) : GroupRingElement(N_);
      GroupRingElement y = b.count(k) ? b.at(k) : GroupRingElement(N_);
      int d = orbit_size_[static_cast<size_t>(k)];
      if (!(x.folded(d) == y.folded(d))) return false;
    }
    return true;
  }

  Chain edge_image(int type, size_t e, bool half);
  Chain vertex_image(int type, size_t v);
  Chain midpoint_image(int type, size_t e);

  const TilingSystem& sys_;
  int N_;
  const OrientationGroup& group_;
  bool quotient_;
  FieldElement c_;
  std::vector<size_t> base_;
  size_t total_ = 0;
  std::optional<ParityUnionFind> edges_;
  std::optional<UnionFind> verts_;
  std::unordered_map<size_t, OrbitSlot> edge_slot_, vertex_slot_;
  std::vector<size_t> edge_rep_;          // per edge orbit: representative half edge
  std::vector<char> edge_folded_;         // per edge orbit
  std::vector<int> midpoint_of_;          // per edge orbit: vertex orbit of the fold point, or -1
  std::vector<int> orbit_size_;           // scratch for `same`
};

// Children edges along c * (edge e of the prototile), in the parent's frame at rotation 0.
ComplexBuilder::Chain ComplexBuilder::edge_image(int type, size_t e, bool half) {
  const auto& pv = sys_.tiles[static_cast<size_t>(type)].vertices;
  size_t n = pv.size();
  Point a = c_ * pv[e], b = c_ * pv[(e + 1) % n];
  Point dir = b - a;
  FieldElement len = dot(dir, dir);
  FieldElement target = half ? len * Rational(1, 2) : len;
  FieldElement covered(sys_.field, Rational(0));
  Chain out;
  for (const auto& pl : sys_.rule.placements[static_cast<size_t>(type)]) {
    auto cv = placed_vertices(sys_, {pl.type, pl.motion});
    int k = wrap(rot(pl.motion));
    size_t m = cv.size();
    for (size_t f = 0; f < m; ++f) {
      Point p = cv[f] - a, q = cv[(f + 1) % m] - a;
      if (!cross(dir, p).is_zero() || !cross(dir, q).is_zero()) continue;
      FieldElement s0 = dot(p, dir), s1 = dot(q, dir);
      if (compare(s0, s1) >= 0 || s0.sign() < 0 || compare(s1, len) > 0) continue;
      size_t h = id(pl.type, k, f);
      if (compare(s1, target) <= 0) {
        covered += s1 - s0;
        if (!is_folded(h)) {
          auto [cell, coef] = edge_coef(h);
          add(out, cell, coef);
        }
      } else if (compare(s0, target) < 0) {
        // straddles the fold point: must itself fold there
        if (!is_folded(h) || !(s0 + s1 == target + target))
          throw std::runtime_error("complex: fold point of an edge maps into the interior of an unfolded edge");
        covered += target - s0;
        auto [cell, coef] = edge_coef(h);
        GroupRingElement unit = mono(1, 0);
        for (int j = 0; j < N_; ++j)
          if (coef.coeff(j) != 0) unit = mono(1, j);
        add(out, cell, unit);
      }
    }
  }
  if (!(covered == target)) throw std::runtime_error("complex: children do not cover a substituted edge");
  return out;
}

ComplexBuilder::Chain ComplexBuilder::vertex_image(int type, size_t v) {
  Point x = c_ * sys_.tiles[static_cast<size_t>(type)].vertices[v];
  for (const auto& pl : sys_.rule.placements[static_cast<size_t>(type)]) {
    auto cv = placed_vertices(sys_, {pl.type, pl.motion});
    for (size_t j = 0; j < cv.size(); ++j)
      if (cv[j] == x) {
        auto [cell, coef] = vertex_coef(id(pl.type, wrap(rot(pl.motion)), j));
        return {{cell, coef}};
      }
  }
  throw std::runtime_error("complex: substituted vertex is not a vertex of a child");
}

ComplexBuilder::Chain ComplexBuilder::midpoint_image(int type, size_t e) {
  const auto& pv = sys_.tiles[static_cast<size_t>(type)].vertices;
  Point x = FieldElement(sys_.field, Rational(1, 2)) * (c_ * (pv[e] + pv[(e + 1) % pv.size()]));
  for (const auto& pl : sys_.rule.placements[static_cast<size_t>(type)]) {
    auto cv = placed_vertices(sys_, {pl.type, pl.motion});
    int k = wrap(rot(pl.motion));
    size_t m = cv.size();
    for (size_t j = 0; j < m; ++j) {
      if (cv[j] == x) {
        auto [cell, coef] = vertex_coef(id(pl.type, k, j));
        return {{cell, coef}};
      }
      Point mid = FieldElement(sys_.field, Rational(1, 2)) * (cv[j] + cv[(j + 1) % m]);
      size_t h = id(pl.type, k, j);
      if (mid == x && is_folded(h)) {
        auto r = edges_->find(h).first;
        const OrbitSlot& o = edge_slot_.at(r);
        return {{midpoint_of_[static_cast<size_t>(o.orbit)], mono(1, o.shift)}};
      }
    }
  }
  throw std::runtime_error("complex: fold point does not map to a fold point or vertex");
}

APComplex ComplexBuilder::build(const std::vector<Adjacency>& contacts) {
  size_t cells = total_ * static_cast<size_t>(N_);
  edges_.emplace(cells);
  verts_.emplace(cells);
  for (const auto& a : contacts) {
    int r = rot(a.rel);
    size_t na = sides(a.a), nb = sides(a.b);
    for (int k = 0; k < N_; ++k) {
      int k2 = wrap(k + r);
      edges_->unite(id(a.a, k, static_cast<size_t>(a.ea)), id(a.b, k2, static_cast<size_t>(a.eb)), 1);
      verts_->unite(id(a.a, k, static_cast<size_t>(a.ea)), id(a.b, k2, (static_cast<size_t>(a.eb) + 1) % nb));
      verts_->unite(id(a.a, k, (static_cast<size_t>(a.ea) + 1) % na), id(a.b, k2, static_cast<size_t>(a.eb)));
    }
  }

  APComplex out;
  out.system = sys_.name;
  out.variant = quotient_ ? Variant::quotient : Variant::fixed_orientation;
  CombinatorialSpec& cs = out.cells;
  cs.N = N_;

  // edge orbits
  for (size_t X = 0; X < sys_.tiles.size(); ++X)
    for (size_t e = 0; e < sides(static_cast<int>(X)); ++e)
      for (int k0 = 0; k0 < N_; ++k0) {
        size_t h0 = id(static_cast<int>(X), k0, e);
        auto [r0, p0] = edges_->find(h0);
        if (edge_slot_.count(r0)) continue;
        int orbit = static_cast<int>(edge_rep_.size());
        bool folded = edges_->folded[r0] != 0;
        int d = 0;
        for (int j = 0;; ++j) {
          size_t hj = id(static_cast<int>(X), wrap(k0 + j), e);
          auto [rj, pj] = edges_->find(hj);
          if (j > 0 && rj == r0) {
            if (!folded && pj != p0)
              throw std::runtime_error("complex: an edge orbit is mapped to its own reverse by a rotation (unsupported)");
            d = j;
            break;
          }
          edge_slot_[rj] = {orbit, j, pj ? -1 : 1};
        }
        edge_rep_.push_back(h0);
        edge_folded_.push_back(folded ? 1 : 0);
        cs.edge_orbits.push_back(d);
        std::string name = sys_.tiles[X].id + ":" + std::to_string(e);
        if (!quotient_ && k0) name += "^" + std::to_string(k0);
        cs.edge_names.push_back(folded ? name + "/2" : name);
        if (folded) ++out.folded_edges;
      }
  // vertex orbits
  std::vector<size_t> vertex_rep;
  for (size_t X = 0; X < sys_.tiles.size(); ++X)
    for (size_t v = 0; v < sides(static_cast<int>(X)); ++v)
      for (int k0 = 0; k0 < N_; ++k0) {
        size_t v0 = id(static_cast<int>(X), k0, v);
        size_t r0 = verts_->find(v0);
        if (vertex_slot_.count(r0)) continue;
        int orbit = static_cast<int>(vertex_rep.size());
        int d = 0;
        for (int j = 0;; ++j) {
          size_t rj = verts_->find(id(static_cast<int>(X), wrap(k0 + j), v));
          if (j > 0 && rj == r0) {
            d = j;
            break;
          }
          vertex_slot_[rj] = {orbit, j, 1};
        }
        vertex_rep.push_back(v0);
        cs.vertex_orbits.push_back(d);
        std::string name = sys_.tiles[X].id + "@" + std::to_string(v);
        if (!quotient_ && k0) name += "^" + std::to_string(k0);
        cs.vertex_names.push_back(name);
      }
  midpoint_of_.assign(edge_rep_.size(), -1);
  for (size_t o = 0; o < edge_rep_.size(); ++o)
    if (edge_folded_[o]) {
      midpoint_of_[o] = static_cast<int>(cs.vertex_orbits.size());
      cs.vertex_orbits.push_back(cs.edge_orbits[o]);
      cs.vertex_names.push_back(cs.edge_names[o].substr(0, cs.edge_names[o].size() - 2) + "*");
    }
  for (const auto& t : sys_.tiles) {
    cs.face_orbits.push_back(N_);
    cs.face_names.push_back(t.id);
  }

  size_t nf = cs.face_orbits.size(), ne = cs.edge_orbits.size(), nv = cs.vertex_orbits.size();
  cs.boundary2 = RingMatrix(N_, cs.edge_orbits, cs.face_orbits);
  cs.boundary1 = RingMatrix(N_, cs.vertex_orbits, cs.edge_orbits);
  cs.subst2 = RingMatrix(N_, cs.face_orbits, cs.face_orbits);
  cs.subst1 = RingMatrix(N_, cs.edge_orbits, cs.edge_orbits);
  RingMatrix phi0(N_, cs.vertex_orbits, cs.vertex_orbits);

  for (size_t X = 0; X < nf; ++X) {
    int type = static_cast<int>(X);
    for (size_t e = 0; e < sides(type); ++e) {
      size_t h = id(type, 0, e);
      if (is_folded(h)) continue;
      auto [cell, coef] = edge_coef(h);
      cs.boundary2.at(static_cast<size_t>(cell), X) += coef;
    }
    for (const auto& pl : sys_.rule.placements[X]) cs.subst2.at(static_cast<size_t>(pl.type), X) += mono(1, rot(pl.motion));
  }

  auto tile_of = [&](size_t h, int& type, int& k, size_t& i) {
    size_t slot = h / static_cast<size_t>(N_);
    k = static_cast<int>(h % static_cast<size_t>(N_));
    type = static_cast<int>(std::upper_bound(base_.begin(), base_.end(), slot) - base_.begin()) - 1;
    i = slot - base_[static_cast<size_t>(type)];
  };

  orbit_size_ = cs.edge_orbits;
  for (size_t o = 0; o < ne; ++o) {
    int type, k0;
    size_t e;
    tile_of(edge_rep_[o], type, k0, e);
    size_t n = sides(type);
    bool folded = edge_folded_[o] != 0;
    auto [tail, tc] = vertex_coef(id(type, k0, e));
    cs.boundary1.at(static_cast<size_t>(tail), o) -= tc;
    if (folded) {
      cs.boundary1.at(static_cast<size_t>(midpoint_of_[o]), o) += mono(1, 0);
    } else {
      auto [head, hc] = vertex_coef(id(type, k0, (e + 1) % n));
      cs.boundary1.at(static_cast<size_t>(head), o) += hc;
    }
    Chain img = shift(edge_image(type, e, folded), k0);
    for (const auto& [cell, coef] : img) cs.subst1.at(static_cast<size_t>(cell), o) += coef;
  }
  // every member of every class must have the same image
  for (size_t X = 0; X < nf; ++X)
    for (size_t e = 0; e < sides(static_cast<int>(X)); ++e) {
      int type = static_cast<int>(X);
      size_t h = id(type, 0, e);
      bool folded = is_folded(h);
      Chain mine = edge_image(type, e, folded);
      auto [cell, coef] = edge_coef(h);
      Chain expect;
      for (size_t row = 0; row < ne; ++row) {
        GroupRingElement acc(N_);
        for (int j = 0; j < N_; ++j) {
          const Integer& cj = coef.coeff(j);
          if (cj == 0) continue;
          GroupRingElement term = cs.subst1.at(row, static_cast<size_t>(cell)).shifted(j);
          if (folded) {
            acc += term;
          } else {
            acc += cj > 0 ? term : -term;
          }
        }
        if (!acc.is_zero()) expect.emplace(static_cast<int>(row), acc);
      }
      if (!same(mine, expect))
        throw std::runtime_error("complex: substitution is not well defined on edge class of " + sys_.tiles[X].id + ":" +
                                 std::to_string(e) + " (border not forced? try the collared complex)");
    }

  orbit_size_ = cs.vertex_orbits;
  for (size_t o = 0; o < vertex_rep.size(); ++o) {
    int type, k0;
    size_t v;
    tile_of(vertex_rep[o], type, k0, v);
    for (const auto& [cell, coef] : shift(vertex_image(type, v), k0)) phi0.at(static_cast<size_t>(cell), o) += coef;
  }
  for (size_t o = 0; o < ne; ++o) {
    if (!edge_folded_[o]) continue;
    int type, k0;
    size_t e;
    tile_of(edge_rep_[o], type, k0, e);
    for (const auto& [cell, coef] : shift(midpoint_image(type, e), k0))
      phi0.at(static_cast<size_t>(cell), static_cast<size_t>(midpoint_of_[o])) += coef;
  }
  for (size_t X = 0; X < nf; ++X)
    for (size_t v = 0; v < sides(static_cast<int>(X)); ++v) {
      int type = static_cast<int>(X);
      auto [cell, coef] = vertex_coef(id(type, 0, v));
      int j = 0;
      while (coef.coeff(j) == 0) ++j;
      Chain expect;
      for (size_t row = 0; row < nv; ++row) {
        GroupRingElement term = phi0.at(row, static_cast<size_t>(cell)).shifted(j);
        if (!term.is_zero()) expect.emplace(static_cast<int>(row), term);
      }
      if (!same(vertex_image(type, v), expect))
        throw std::runtime_error("complex: substitution is not well defined on vertex class of " + sys_.tiles[X].id + "@" +
                                 std::to_string(v));
    }
  cs.subst0 = phi0;

  cs.boundary2 = cs.boundary2.normalized();
  cs.boundary1 = cs.boundary1.normalized();
  cs.subst2 = cs.subst2.normalized();
  cs.subst1 = cs.subst1.normalized();
  cs.subst0 = cs.subst0->normalized();
  if (out.folded_edges)
    out.notes.push_back(std::to_string(out.folded_edges) + " edge orbit(s) fold onto themselves; half cells used");
  return out;
}

}  // namespace

APComplex build_complex(const TilingSystem& sys, Variant variant, const std::vector<Adjacency>& contacts,
                        const OrientationGroup& group) {
  reject_reflections(sys);
  bool quotient = variant == Variant::quotient;
  if (!quotient && !group.finite)
    throw std::invalid_argument("complex: the fixed-orientation complex needs a finite orientation group (it is not compact)");
  ComplexBuilder b(sys, quotient, group);
  return b.build(contacts);
}

APComplex build_complex(const TilingSystem& sys, Variant variant, bool collared, const CoronaOptions& opt) {
  TilingSystem s = split_edges(sys);
  if (collared) {
    CollaredSystem cs = collar(s, opt);
    OrientationGroup g = variant == Variant::quotient ? OrientationGroup{} : orientation_group(cs.collared);
    APComplex c = build_complex(cs.collared, variant, cs.contacts, g);
    c.system = sys.name;
    c.collared = true;
    return c;
  }
  OrientationGroup g = variant == Variant::quotient ? OrientationGroup{} : orientation_group(s);
  CoronaSet cor = enumerate_coronas(s, opt);
  APComplex c = build_complex(s, variant, adjacencies(s, cor), g);
  c.system = sys.name;
  return c;
}

APComplex complex_from_spec(const TilingSystem& sys, Variant variant) {
  if (!sys.combinatorial) throw std::invalid_argument("complex_from_spec: system has no combinatorial block");
  APComplex c;
  c.system = sys.name;
  c.variant = variant;
  if (variant == Variant::fixed_orientation) {
    c.cells = *sys.combinatorial;
    if (c.cells.subst0_derived) c.notes.push_back("vertex substitution solved from the chain-map condition");
    return c;
  }
  const CombinatorialSpec& src = *sys.combinatorial;
  CombinatorialSpec& cs = c.cells;
  cs.N = 1;
  cs.face_orbits.assign(src.face_orbits.size(), 1);
  cs.edge_orbits.assign(src.edge_orbits.size(), 1);
  cs.vertex_orbits.assign(src.vertex_orbits.size(), 1);
  cs.face_names = src.face_names;
  cs.edge_names = src.edge_names;
  cs.vertex_names = src.vertex_names;
  auto at_one = [](const RingMatrix& m) {
    IntMatrix a = m.at_one();
    RingMatrix r(1, std::vector<int>(a.rows(), 1), std::vector<int>(a.cols(), 1));
    for (size_t i = 0; i < a.rows(); ++i)
      for (size_t j = 0; j < a.cols(); ++j) r.at(i, j) = GroupRingElement::constant(1, a(i, j));
    return r;
  };
  cs.boundary1 = at_one(src.boundary1);
  cs.boundary2 = at_one(src.boundary2);
  cs.subst1 = at_one(src.subst1);
  cs.subst2 = at_one(src.subst2);
  if (src.subst0) cs.subst0 = at_one(*src.subst0);
  cs.subst0_derived = src.subst0_derived;
  c.notes.push_back("t replaced by 1");
  return c;
}

OrbitStructure vertex_orbit_structure(const APComplex& c) {
  return {c.cells.face_orbits, c.cells.edge_orbits, c.cells.vertex_orbits};
}

std::optional<std::string> check_chain_complex(const APComplex& c) {
  const CombinatorialSpec& cs = c.cells;
  if (!is_zero((cs.boundary1 * cs.boundary2).normalized())) return "d1 d2 != 0";
  if (!is_zero((cs.boundary2 * cs.subst2 - cs.subst1 * cs.boundary2).normalized())) return "d2 phi2 != phi1 d2";
  if (cs.subst0 && !is_zero((cs.boundary1 * cs.subst1 - *cs.subst0 * cs.boundary1).normalized()))
    return "d1 phi1 != phi0 d1";
  return std::nullopt;
}

std::string complex_json(const APComplex& c) {
  using nlohmann::json;
  const CombinatorialSpec& cs = c.cells;
  auto mat = [](const RingMatrix& m) {
    json rows = json::array();
    for (size_t i = 0; i < m.rows(); ++i) {
      json row = json::array();
      for (size_t j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).to_string());
      rows.push_back(row);
    }
    return rows;
  };
  auto cells = [](const std::vector<std::string>& names, const std::vector<int>& orbits) {
    json a = json::array();
    for (size_t i = 0; i < names.size(); ++i) a.push_back({{"name", names[i]}, {"orbit", orbits[i]}});
    return a;
  };
  json j;
  j["system"] = c.system;
  j["variant"] = c.variant == Variant::quotient ? "quotient" : "fixed_orientation";
  j["collared"] = c.collared;
  j["group_order"] = cs.N;
  j["cells"] = {{"faces", cells(cs.face_names, cs.face_orbits)},
                {"edges", cells(cs.edge_names, cs.edge_orbits)},
                {"vertices", cells(cs.vertex_names, cs.vertex_orbits)}};
  j["boundary"] = {{"d1", mat(cs.boundary1)}, {"d2", mat(cs.boundary2)}};
  j["substitution"] = {{"phi1", mat(cs.subst1)}, {"phi2", mat(cs.subst2)}};
  if (cs.subst0) j["substitution"]["phi0"] = mat(*cs.subst0);
  j["folded_edges"] = c.folded_edges;
  j["notes"] = c.notes;
  return j.dump(2);
}

}  // namespace tilecoh
