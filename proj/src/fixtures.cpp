#include "tilecoh/fixtures.hpp"

#include <array>
#include <stdexcept>

namespace tilecoh {

namespace {

using Tri = std::array<Point, 3>;

Point pt(const FieldPtr& K, const Rational& x, const Rational& y) { return {FieldElement(K, x), FieldElement(K, y)}; }

Point reflect_y(const Point& p) { return {p.x, -p.y}; }

FieldElement fe(const FieldPtr& K, std::vector<Rational> c) { return FieldElement(K, std::move(c)); }

// Right triangles of the pinwheel family. Prototile 0 has the right angle on
// the left of hyp P0 -> P1, prototile 1 is its mirror image. P0 is the end of
// the short leg. The child is identified from its own geometry.
Placement classify_right_triangle(const TilingSystem& sys, const Tri& t) {
  size_t h = 0;
  FieldElement best = dot(t[1] - t[0], t[1] - t[0]);
  for (size_t i = 1; i < 3; ++i) {
    Point d = t[(i + 1) % 3] - t[i];
    FieldElement l = dot(d, d);
    if (compare(l, best) > 0) {
      best = l;
      h = i;
    }
  }
  Point a = t[h], b = t[(h + 1) % 3], r = t[(h + 2) % 3];
  if (compare(dot(r - a, r - a), dot(r - b, r - b)) > 0) std::swap(a, b);
  int type = orientation(a, b, r) > 0 ? 0 : 1;
  const auto& proto = sys.tiles[static_cast<size_t>(type)].vertices;
  Point p0 = proto[0];
  Point p1 = type == 0 ? proto[1] : proto[2];
  return {type, motion_fitting(p0, p1, a, b)};
}

using IntTri = std::array<std::array<long, 2>, 3>;

// sqrt(d) * T has corners (0,0), (d,0), apex; the children are integral.
TilingSystem pinwheel_family(const std::string& name, long d, long ax, long ay, const std::vector<IntTri>& children) {
  TilingSystem sys;
  sys.name = name;
  sys.field = std::make_shared<NumberField>(Poly::from_ints({-d, 0, 1}), Rational(1), Rational(d));
  const FieldPtr& K = sys.field;
  FieldElement r = fe(K, {0, 1});  // sqrt(d)
  FieldElement inv = r.inverse();
  Point p0 = Point::origin(K);
  Point p1 = {r, FieldElement(K, Rational(0))};
  Point p2 = {inv * Rational(ax), inv * Rational(ay)};
  sys.tiles.push_back({"T", {p0, p1, p2}, {}});
  sys.tiles.push_back({"Tm", {p0, reflect_y(p2), p1}, {}});
  sys.rule.linear_factor = r;
  sys.rule.placements.resize(2);
  for (const auto& c : children) {
    Tri t;
    for (size_t i = 0; i < 3; ++i) t[i] = pt(K, c[i][0], c[i][1]);
    sys.rule.placements[0].push_back(classify_right_triangle(sys, t));
    Tri m{reflect_y(t[0]), reflect_y(t[1]), reflect_y(t[2])};
    sys.rule.placements[1].push_back(classify_right_triangle(sys, m));
  }
  return sys;
}

TilingSystem chair() {
  TilingSystem sys;
  sys.name = "chair";
  sys.field = NumberField::rationals();
  const FieldPtr& K = sys.field;
  auto p = [&](long x, long y) { return pt(K, x, y); };
  sys.tiles.push_back({"L", {p(0, 0), p(2, 0), p(2, 1), p(1, 1), p(1, 2), p(0, 2)}, {}});
  sys.rule.linear_factor = FieldElement(K, Rational(2));
  FieldElement one(K, Rational(1)), zero(K, Rational(0));
  RigidMotion id = RigidMotion::identity(K);
  RigidMotion r90 = RigidMotion::rotation(zero, one);
  RigidMotion r270 = RigidMotion::rotation(zero, -one);
  auto at = [&](RigidMotion g, long x, long y) {
    g.t = p(x, y);
    return Placement{0, g};
  };
  sys.rule.placements = {{at(id, 0, 0), at(id, 1, 1), at(r90, 4, 0), at(r270, 0, 4)}};
  return sys;
}

TilingSystem pinwheel() {
  // children of sqrt5 * T = (0,0), (5,0), (1,2); the rectangle (1,0)..(3,1)
  // is cut along (1,0)-(3,1) so both chiralities occur
  return pinwheel_family("pinwheel", 5, 1, 2,
                         {IntTri{{{0, 0}, {1, 0}, {1, 2}}}, IntTri{{{1, 0}, {3, 0}, {3, 1}}},
                          IntTri{{{3, 0}, {5, 0}, {3, 1}}}, IntTri{{{1, 1}, {3, 1}, {1, 2}}},
                          IntTri{{{1, 0}, {3, 1}, {1, 1}}}});
}

TilingSystem pinwheel_2_3() {
  // sqrt13 * T = (0,0), (13,0), (4,6): the altitude foot (4,0) cuts it into a
  // 2x copy and a 3x copy (3x3 grid). In the 2x copy the rectangle
  // (2,0)..(4,3) is cut along (4,0)-(2,3) so both chiralities occur.
  std::vector<IntTri> ch = {IntTri{{{0, 0}, {2, 0}, {2, 3}}}, IntTri{{{2, 0}, {4, 0}, {2, 3}}},
                            IntTri{{{2, 3}, {4, 3}, {4, 6}}}, IntTri{{{4, 0}, {4, 3}, {2, 3}}}};
  auto g = [](long i, long j) { return std::array<long, 2>{4 + 3 * i, 2 * j}; };
  for (long i = 0; i <= 2; ++i)
    for (long j = 0; i + j <= 2; ++j) ch.push_back({g(i, j), g(i + 1, j), g(i, j + 1)});
  for (long i = 0; i <= 1; ++i)
    for (long j = 0; i + j <= 1; ++j) ch.push_back({g(i + 1, j), g(i + 1, j + 1), g(i, j + 1)});
  return pinwheel_family("pinwheel_2_3", 13, 4, 6, ch);
}

// Robinson triangles in Q(u), u = 2 sin 36. Types: 0 thin+, 1 thin-, 2 fat+,
// 3 fat-. Apex A at the origin, B = (1, 0), C at the apex angle; the minus
// triangles are mirror images listed as (A, C, B).
TilingSystem penrose_triangles() {
  TilingSystem sys;
  sys.name = "penrose_triangles";
  sys.field = std::make_shared<NumberField>(Poly::from_ints({5, 0, -5, 0, 1}), Rational(1), Rational(3, 2));
  const FieldPtr& K = sys.field;
  FieldElement u = fe(K, {0, 1});
  FieldElement u2 = u * u;
  FieldElement one(K, Rational(1)), zero(K, Rational(0));
  FieldElement tau = FieldElement(K, Rational(3)) - u2;
  FieldElement itau = FieldElement(K, Rational(2)) - u2;
  std::array<Point, 2> apexC = {Point{(FieldElement(K, Rational(3)) - u2) * Rational(1, 2), u * Rational(1, 2)},
                                Point{(u2 - FieldElement(K, Rational(2))) * Rational(1, 2),
                                      u * (FieldElement(K, Rational(3)) - u2) * Rational(1, 2)}};
  Point A = Point::origin(K), B{one, zero};
  std::array<std::array<Point, 3>, 4> canon;
  for (int color = 0; color < 2; ++color) {
    Point C = apexC[static_cast<size_t>(color)];
    canon[static_cast<size_t>(2 * color)] = {A, B, C};
    canon[static_cast<size_t>(2 * color + 1)] = {A, B, reflect_y(C)};
  }
  const char* ids[4] = {"thin+", "thin-", "fat+", "fat-"};
  for (int k = 0; k < 4; ++k) {
    const auto& c = canon[static_cast<size_t>(k)];
    std::vector<Point> v = k % 2 == 0 ? std::vector<Point>{c[0], c[1], c[2]} : std::vector<Point>{c[0], c[2], c[1]};
    sys.tiles.push_back({ids[k], v, {}});
  }
  sys.rule.linear_factor = tau;
  sys.rule.placements.resize(4);
  struct Child {
    int color;
    Point a, b, c;
  };
  for (int k = 0; k < 4; ++k) {
    const auto& cn = canon[static_cast<size_t>(k)];
    Point a = tau * cn[0], b = tau * cn[1], c = tau * cn[2];
    std::vector<Child> kids;
    if (k < 2) {
      Point p = a + itau * (b - a);
      kids = {{0, c, p, b}, {1, p, c, a}};
    } else {
      Point q = b + itau * (a - b), r = b + itau * (c - b);
      kids = {{1, r, c, a}, {1, q, r, b}, {0, r, q, a}};
    }
    for (const auto& ch : kids) {
      int type = 2 * ch.color + (orientation(ch.a, ch.b, ch.c) > 0 ? 0 : 1);
      const auto& src = canon[static_cast<size_t>(type)];
      sys.rule.placements[static_cast<size_t>(k)].push_back({type, motion_fitting(src[0], src[1], ch.a, ch.b)});
    }
  }
  return sys;
}

RingMatrix ring(int n, const std::vector<int>& rows, const std::vector<int>& cols,
                const std::vector<std::vector<std::string>>& e) {
  RingMatrix m(n, rows, cols);
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < cols.size(); ++j) m.at(i, j) = GroupRingElement::parse(n, e.at(i).at(j));
  return m;
}

// Penrose triangle complex given directly over Z[t]/(t^10 - 1). subst0 was
// solved for: the permutation below is the solution of
// d1 phi1 = phi0 d1 that is induced by a cellular map.
TilingSystem penrose_combinatorial() {
  TilingSystem sys = penrose_triangles();
  sys.name = "penrose_combinatorial";
  CombinatorialSpec cs;
  cs.N = 10;
  cs.face_orbits = {10, 10, 10, 10};
  cs.edge_orbits = {10, 10, 10, 10};
  cs.vertex_orbits = {2, 2};
  cs.face_names = {"f0", "f1", "f2", "f3"};
  cs.edge_names = {"e0", "e1", "e2", "e3"};
  cs.vertex_names = {"v0", "v1"};
  cs.boundary1 = ring(10, cs.vertex_orbits, cs.edge_orbits, {{"1-t", "-1", "-t", "-1"}, {"0", "1", "1", "t"}});
  cs.boundary2 = ring(10, cs.edge_orbits, cs.face_orbits,
                      {{"-1", "t", "t^4", "-t^7"}, {"-1", "t^9", "-t", "t^8"}, {"1", "-t^5", "0", "0"},
                       {"0", "0", "1", "-t^5"}});
  cs.subst2 = ring(10, cs.face_orbits, cs.face_orbits,
                   {{"t^7", "0", "0", "t^4"}, {"0", "t^3", "t^6", "0"}, {"t^3", "0", "t^4", "1"}, {"0", "t^7", "1", "t^6"}});
  cs.subst1 = ring(10, cs.edge_orbits, cs.edge_orbits,
                   {{"0", "0", "0", "t^8"}, {"t^4", "0", "-t^7", "0"}, {"-t^7", "0", "0", "0"}, {"0", "-t^3", "0", "-t^5"}});
  cs.subst0 = ring(10, cs.vertex_orbits, cs.vertex_orbits, {{"0", "t"}, {"1", "0"}});
  cs.subst0_derived = true;
  sys.tiles.clear();
  for (const auto& f : cs.face_names) sys.tiles.push_back({f, {}, {}});
  sys.rule.placements.assign(4, {});
  sys.combinatorial = std::move(cs);
  return sys;
}

TilingSystem square_2x2() {
  TilingSystem sys;
  sys.name = "square_2x2";
  sys.field = NumberField::rationals();
  const FieldPtr& K = sys.field;
  auto p = [&](long x, long y) { return pt(K, x, y); };
  // distinct edge labels break the fourfold symmetry
  sys.tiles.push_back({"S", {p(0, 0), p(1, 0), p(1, 1), p(0, 1)}, {"a", "b", "c", "d"}});
  sys.rule.linear_factor = FieldElement(K, Rational(2));
  sys.rule.placements.resize(1);
  for (long x = 0; x < 2; ++x)
    for (long y = 0; y < 2; ++y) sys.rule.placements[0].push_back({0, RigidMotion::translation(p(x, y))});
  return sys;
}

}  // namespace

std::vector<std::string> fixture_names() {
  return {"chair", "penrose_triangles", "pinwheel", "pinwheel_2_3", "penrose_combinatorial", "square_2x2"};
}

TilingSystem fixture(const std::string& name) {
  if (name == "chair") return chair();
  if (name == "penrose_triangles") return penrose_triangles();
  if (name == "pinwheel") return pinwheel();
  if (name == "pinwheel_2_3") return pinwheel_2_3();
  if (name == "penrose_combinatorial") return penrose_combinatorial();
  if (name == "square_2x2") return square_2x2();
  throw std::invalid_argument("unknown fixture: " + name);
}

}  // namespace tilecoh
