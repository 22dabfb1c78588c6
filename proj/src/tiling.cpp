#include "tilecoh/tiling.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace tilecoh {

int TilingSystem::tile_index(const std::string& id) const {
  for (size_t i = 0; i < tiles.size(); ++i)
    if (tiles[i].id == id) return static_cast<int>(i);
  return -1;
}

std::vector<Point> placed_vertices(const TilingSystem& sys, const PlacedTile& t) {
  std::vector<Point> out;
  const auto& proto = sys.tiles.at(static_cast<size_t>(t.type)).vertices;
  out.reserve(proto.size());
  for (const auto& v : proto) out.push_back(t.motion.apply(v));
  if (t.motion.reflect) std::reverse(out.begin(), out.end());
  return out;
}

Patch substitute(const TilingSystem& sys, const Patch& p) {
  Patch out;
  const FieldElement& c = sys.rule.linear_factor;
  for (const auto& tile : p) {
    RigidMotion g = tile.motion.scaled(c);
    for (const auto& pl : sys.rule.placements.at(static_cast<size_t>(tile.type))) out.push_back({pl.type, g.compose(pl.motion)});
  }
  return out;
}

Patch supertile(const TilingSystem& sys, int type, int n) {
  if (n < 0) throw std::invalid_argument("supertile: negative level");
  Patch p{{type, RigidMotion::identity(sys.field)}};
  for (int k = 0; k < n; ++k) p = substitute(sys, p);
  return p;
}

IntMatrix type_count_matrix(const TilingSystem& sys) {
  size_t n = sys.tiles.size();
  IntMatrix m(n, n, Integer(0));
  for (size_t j = 0; j < n; ++j)
    for (const auto& pl : sys.rule.placements.at(j)) m(static_cast<size_t>(pl.type), j) += 1;
  return m;
}

std::vector<FieldElement> area_vector(const TilingSystem& sys) {
  std::vector<FieldElement> out;
  for (const auto& t : sys.tiles) out.push_back(twice_signed_area(t.vertices) * Rational(1, 2));
  return out;
}

bool ValidationReport::ok() const {
  for (const auto& c : conditions)
    if (!c.pass) return false;
  return true;
}

namespace {

struct Junction {
  size_t tile, edge;
  Point at;
  size_t owner, owner_vertex;
};

// Every vertex of the patch lying strictly inside an edge of some tile.
std::vector<Junction> t_junctions(const TilingSystem& sys, const Patch& p, bool first_only) {
  struct V {
    Point pt;
    double x, y;
    size_t owner, idx;
  };
  std::vector<std::vector<Point>> polys;
  polys.reserve(p.size());
  for (const auto& t : p) polys.push_back(placed_vertices(sys, t));
  std::unordered_map<std::string, size_t> seen;
  std::vector<V> verts;
  for (size_t i = 0; i < polys.size(); ++i)
    for (size_t k = 0; k < polys[i].size(); ++k) {
      const Point& q = polys[i][k];
      if (seen.emplace(q.key(), verts.size()).second) verts.push_back({q, q.x.to_double(), q.y.to_double(), i, k});
    }
  std::sort(verts.begin(), verts.end(), [](const V& a, const V& b) { return a.x < b.x; });
  std::vector<double> xs;
  for (const auto& v : verts) xs.push_back(v.x);
  std::vector<Junction> out;
  for (size_t i = 0; i < polys.size(); ++i) {
    const auto& poly = polys[i];
    for (size_t e = 0; e < poly.size(); ++e) {
      const Point& a = poly[e];
      const Point& b = poly[(e + 1) % poly.size()];
      double ax = a.x.to_double(), bx = b.x.to_double(), ay = a.y.to_double(), by = b.y.to_double();
      double lo = std::min(ax, bx) - 1e-9, hi = std::max(ax, bx) + 1e-9;
      double ylo = std::min(ay, by) - 1e-9, yhi = std::max(ay, by) + 1e-9;
      auto it = std::lower_bound(xs.begin(), xs.end(), lo);
      for (size_t k = static_cast<size_t>(it - xs.begin()); k < verts.size() && verts[k].x <= hi; ++k) {
        if (verts[k].y < ylo || verts[k].y > yhi) continue;
        if (strictly_inside_segment(verts[k].pt, a, b)) {
          out.push_back({i, e, verts[k].pt, verts[k].owner, verts[k].idx});
          if (first_only) return out;
        }
      }
    }
  }
  return out;
}

// Drop vertices whose neighbours are collinear with them.
std::vector<Point> corners(const std::vector<Point>& poly) {
  std::vector<Point> out;
  size_t n = poly.size();
  for (size_t i = 0; i < n; ++i)
    if (orientation(poly[(i + n - 1) % n], poly[i], poly[(i + 1) % n]) != 0) out.push_back(poly[i]);
  return out;
}

using Tri = std::array<Point, 3>;

bool point_in_closed_triangle(const Point& p, const Tri& t) {
  return orientation(t[0], t[1], p) >= 0 && orientation(t[1], t[2], p) >= 0 && orientation(t[2], t[0], p) >= 0;
}

// Ear clipping of a simple counterclockwise polygon.
std::vector<Tri> triangulate(const std::vector<Point>& poly0) {
  std::vector<Point> poly = corners(poly0);
  std::vector<Tri> out;
  while (poly.size() > 3) {
    size_t n = poly.size();
    bool clipped = false;
    for (size_t i = 0; i < n && !clipped; ++i) {
      const Point& a = poly[(i + n - 1) % n];
      const Point& b = poly[i];
      const Point& c = poly[(i + 1) % n];
      if (orientation(a, b, c) <= 0) continue;
      Tri t{a, b, c};
      bool empty = true;
      for (size_t k = 0; k < n && empty; ++k) {
        if (k == i || k == (i + 1) % n || k == (i + n - 1) % n) continue;
        if (point_in_closed_triangle(poly[k], t)) empty = false;
      }
      if (!empty) continue;
      out.push_back(t);
      poly.erase(poly.begin() + static_cast<long>(i));
      poly = corners(poly);
      clipped = true;
    }
    if (!clipped) throw std::runtime_error("triangulate: polygon is not simple");
  }
  if (poly.size() == 3) out.push_back({poly[0], poly[1], poly[2]});
  return out;
}

bool separated(const Tri& a, const Tri& b) {
  for (int i = 0; i < 3; ++i) {
    bool all_out = true;
    for (int k = 0; k < 3 && all_out; ++k)
      if (orientation(a[i], a[(i + 1) % 3], b[k]) > 0) all_out = false;
    if (all_out) return true;
  }
  return false;
}

bool interiors_disjoint(const std::vector<Tri>& a, const std::vector<Tri>& b) {
  for (const auto& x : a)
    for (const auto& y : b)
      if (!separated(x, y) && !separated(y, x)) return false;
  return true;
}

bool is_simple_ccw(const std::vector<Point>& poly, std::string* why) {
  size_t n = poly.size();
  if (n < 3) {
    *why = "fewer than three vertices";
    return false;
  }
  if (twice_signed_area(poly).sign() <= 0) {
    *why = "not counterclockwise or zero area";
    return false;
  }
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      if (poly[i] == poly[j]) {
        *why = "repeated vertex";
        return false;
      }
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      const Point &a = poly[i], &b = poly[(i + 1) % n], &c = poly[j], &d = poly[(j + 1) % n];
      if (proper_crossing(a, b, c, d) || on_segment(c, a, b) || on_segment(d, a, b) || on_segment(a, c, d) ||
          on_segment(b, c, d)) {
        *why = "edges " + std::to_string(i) + " and " + std::to_string(j) + " intersect";
        return false;
      }
    }
  return true;
}

// Nontrivial rotation mapping the labelled polygon onto itself, if any. A
// symmetry must carry vertices to vertices and preserve edge labels.
std::optional<RigidMotion> rotational_symmetry(const ProtoTile& t) {
  const auto& poly = t.vertices;
  size_t n = poly.size();
  auto label = [&](size_t k) { return k < t.edge_labels.size() ? t.edge_labels[k] : std::string(); };
  for (size_t i = 1; i < n; ++i) {
    Point v = poly[1] - poly[0], w = poly[(i + 1) % n] - poly[i];
    if (!(dot(v, v) == dot(w, w))) continue;
    RigidMotion g = motion_fitting(poly[0], poly[1], poly[i], poly[(i + 1) % n]);
    bool all = true;
    for (size_t k = 0; k < n && all; ++k)
      if (!(g.apply(poly[k]) == poly[(k + i) % n]) || label(k) != label((k + i) % n)) all = false;
    if (all) return g;
  }
  return std::nullopt;
}

}  // namespace

std::optional<EdgeDefect> find_t_junction(const TilingSystem& sys, const Patch& p) {
  auto js = t_junctions(sys, p, true);
  if (js.empty()) return std::nullopt;
  return EdgeDefect{js[0].tile, js[0].edge, js[0].owner, js[0].owner_vertex};
}

ValidationReport validate_system(const TilingSystem& sys, const ValidationOptions& opt) {
  ValidationReport rep;
  if (!sys.is_geometric()) throw std::invalid_argument("validate_system: combinatorial system has no geometry");
  size_t nt = sys.tiles.size();
  const FieldElement& c = sys.rule.linear_factor;
  // (0) prototile polygons
  {
    ConditionResult r{0, true, "prototiles are simple counterclockwise polygons"};
    for (const auto& t : sys.tiles) {
      std::string why;
      if (!is_simple_ccw(t.vertices, &why)) {
        r.pass = false;
        r.detail = "prototile " + t.id + ": " + why;
        break;
      }
    }
    rep.conditions.push_back(r);
  }
  // (1) equivariance holds by construction; check the motions are rigid
  {
    ConditionResult r{1, true, "substitution stored in prototile frames; all placement motions are rigid"};
    for (size_t j = 0; j < nt && r.pass; ++j)
      for (const auto& pl : sys.rule.placements[j])
        if (!pl.motion.is_unit()) {
          r.pass = false;
          r.detail = "placement in phi(" + sys.tiles[j].id + ") has a non-unit rotation";
          break;
        }
    rep.conditions.push_back(r);
  }
  // (2) phi T congruent to c T, full edge to full edge
  {
    ConditionResult r{2, true, ""};
    if (c.sign() <= 0 || compare(c, FieldElement(sys.field, Rational(1))) <= 0) {
      r.pass = false;
      r.detail = "linear factor must exceed 1";
    }
    FieldElement c2 = c * c;
    for (size_t j = 0; j < nt && r.pass; ++j) {
      const auto& T = sys.tiles[j];
      std::vector<Point> big;
      for (const auto& v : T.vertices) big.push_back(c * v);
      Patch kids = supertile(sys, static_cast<int>(j), 1);
      FieldElement area(sys.field, Rational(0));
      std::vector<std::vector<Tri>> tris;
      for (size_t k = 0; k < kids.size() && r.pass; ++k) {
        auto poly = placed_vertices(sys, kids[k]);
        area += twice_signed_area(poly);
        for (size_t a = 0; a < poly.size() && r.pass; ++a) {
          const Point& p = poly[a];
          const Point& q = poly[(a + 1) % poly.size()];
          Point mid = FieldElement(sys.field, Rational(1, 2)) * (p + q);
          if (point_in_polygon(p, big) < 0 || point_in_polygon(mid, big) < 0) {
            r.pass = false;
            r.detail = "child " + std::to_string(k) + " of " + T.id + " leaves c*T";
          }
          for (size_t b = 0; b < big.size() && r.pass; ++b)
            if (proper_crossing(p, q, big[b], big[(b + 1) % big.size()])) {
              r.pass = false;
              r.detail = "child " + std::to_string(k) + " of " + T.id + " crosses the boundary of c*T";
            }
        }
        tris.push_back(triangulate(poly));
      }
      if (!r.pass) break;
      if (!(area == c2 * twice_signed_area(T.vertices))) {
        r.pass = false;
        r.detail = "children of " + T.id + " do not have total area c^2 * area(T)";
        break;
      }
      for (size_t a = 0; a < tris.size() && r.pass; ++a)
        for (size_t b = a + 1; b < tris.size() && r.pass; ++b)
          if (!interiors_disjoint(tris[a], tris[b])) {
            r.pass = false;
            r.detail = "children " + std::to_string(a) + " and " + std::to_string(b) + " of " + T.id + " overlap";
          }
      for (int lvl = 1; lvl <= opt.contact_level && r.pass; ++lvl) {
        Patch p = supertile(sys, static_cast<int>(j), lvl);
        auto js = t_junctions(sys, p, true);
        if (!js.empty()) {
          const auto& d = js[0];
          r.pass = false;
          std::ostringstream os;
          os << "phi^" << lvl << "(" << T.id << "): vertex " << d.owner_vertex << " of tile " << d.owner << " ("
             << sys.tiles[static_cast<size_t>(p[d.owner].type)].id << ") lies inside edge " << d.edge << " of tile "
             << d.tile << " (" << sys.tiles[static_cast<size_t>(p[d.tile].type)].id << ")";
          r.detail = os.str();
        }
      }
    }
    if (r.pass) r.detail = "children tile c*T exactly and meet full edge to full edge";
    rep.conditions.push_back(r);
  }
  // (3) every type occurs in every phi^k T for some k <= n_max (k = 1 is the
  // literal condition; otherwise phi^k is the substitution that satisfies it)
  {
    ConditionResult r{3, false, ""};
    IntMatrix m = type_count_matrix(sys);
    IntMatrix p = m;
    std::string first_gap;
    for (int k = 1; k <= opt.n_max && !r.pass; ++k) {
      bool full = true;
      for (size_t i = 0; i < nt && full; ++i)
        for (size_t j = 0; j < nt && full; ++j)
          if (p(i, j) == 0) {
            full = false;
            if (k == 1) first_gap = "phi(" + sys.tiles[j].id + ") contains no " + sys.tiles[i].id;
          }
      if (full) {
        r.pass = true;
        r.detail = k == 1 ? "every phi(T) contains every type"
                          : "every phi^" + std::to_string(k) + "(T) contains every type (" + first_gap + ")";
      }
      p = p * m;
    }
    if (!r.pass) r.detail = first_gap + "; no power up to " + std::to_string(opt.n_max) + " contains every type";
    rep.conditions.push_back(r);
  }
  // (4) a parallel same-type tile in phi^n T, n <= n_max
  {
    ConditionResult r{4, true, ""};
    std::ostringstream os;
    for (size_t j = 0; j < nt; ++j) {
      // (type, rotation) pairs reachable at level n
      std::map<std::string, std::pair<int, RigidMotion>> level;
      RigidMotion id = RigidMotion::identity(sys.field);
      level.emplace(std::to_string(j) + "#" + id.rotation_key(), std::make_pair(static_cast<int>(j), id));
      std::optional<int> witness;
      for (int n = 1; n <= opt.n_max && !witness; ++n) {
        std::map<std::string, std::pair<int, RigidMotion>> next;
        for (const auto& [k, v] : level) {
          RigidMotion rot = v.second;
          for (const auto& pl : sys.rule.placements[static_cast<size_t>(v.first)]) {
            RigidMotion g = rot.compose(pl.motion);
            g.t = Point::origin(sys.field);
            next.emplace(std::to_string(pl.type) + "#" + g.rotation_key(), std::make_pair(pl.type, g));
          }
        }
        level = std::move(next);
        if (level.count(std::to_string(j) + "#" + id.rotation_key())) witness = n;
      }
      rep.parallel_witness.push_back(witness);
      os << sys.tiles[j].id << ": ";
      if (witness) {
        os << "n_T = " << *witness << "; ";
      } else {
        os << "unverified at bound " << opt.n_max << "; ";
        r.pass = false;
      }
    }
    r.detail = os.str();
    rep.conditions.push_back(r);
  }
  // (5) no rotational symmetry
  {
    ConditionResult r{5, true, "no prototile has a nontrivial rotational symmetry"};
    for (const auto& t : sys.tiles) {
      auto g = rotational_symmetry(t);
      if (g) {
        r.pass = false;
        r.detail = "prototile " + t.id + " is invariant under the rotation (cos, sin) = (" + g->c.to_string() + ", " +
                   g->s.to_string() + ")";
        break;
      }
    }
    rep.conditions.push_back(r);
  }
  return rep;
}

namespace {

// Insert point q (on edge e) into the vertex list of a prototile, keeping order.
void insert_on_edge(ProtoTile& t, const Point& q) {
  size_t n = t.vertices.size();
  for (size_t e = 0; e < n; ++e) {
    const Point& a = t.vertices[e];
    const Point& b = t.vertices[(e + 1) % n];
    if (strictly_inside_segment(q, a, b)) {
      t.vertices.insert(t.vertices.begin() + static_cast<long>(e + 1), q);
      std::string label = e < t.edge_labels.size() ? t.edge_labels[e] : std::string();
      if (!t.edge_labels.empty()) t.edge_labels.insert(t.edge_labels.begin() + static_cast<long>(e + 1), label);
      return;
    }
  }
}

}  // namespace

TilingSystem split_edges(const TilingSystem& sys0, int vertex_budget, int contact_level) {
  TilingSystem sys = sys0;
  int added = 0;
  const FieldElement& c = sys.rule.linear_factor;
  while (true) {
    // per prototile: points (in its own frame) to insert
    std::vector<std::map<std::string, Point>> todo(sys.tiles.size());
    for (size_t j = 0; j < sys.tiles.size(); ++j) {
      for (int lvl = 1; lvl <= contact_level; ++lvl) {
        Patch p = supertile(sys, static_cast<int>(j), lvl);
        for (const auto& d : t_junctions(sys, p, false)) {
          const PlacedTile& host = p[d.tile];
          Point q = host.motion.inverse().apply(d.at);
          todo[static_cast<size_t>(host.type)].emplace(q.key(), q);
        }
      }
      // c * v must be a child vertex
      Patch kids = supertile(sys, static_cast<int>(j), 1);
      for (const auto& v : sys.tiles[j].vertices) {
        Point cv = c * v;
        for (const auto& kid : kids) {
          auto poly = placed_vertices(sys, kid);
          for (size_t e = 0; e < poly.size(); ++e)
            if (strictly_inside_segment(cv, poly[e], poly[(e + 1) % poly.size()])) {
              Point q = kid.motion.inverse().apply(cv);
              todo[static_cast<size_t>(kid.type)].emplace(q.key(), q);
            }
        }
      }
    }
    size_t count = 0;
    for (const auto& m : todo) count += m.size();
    if (count == 0) break;
    added += static_cast<int>(count);
    if (added > vertex_budget)
      throw std::runtime_error("split_edges: vertex budget exhausted; the rule is not edge to edge");
    for (size_t j = 0; j < sys.tiles.size(); ++j)
      for (const auto& [k, q] : todo[j]) insert_on_edge(sys.tiles[j], q);
  }
  return sys;
}

}  // namespace tilecoh
