#include "tilecoh/geometry.hpp"

#include <stdexcept>

namespace tilecoh {

FieldElement dot(const Point& a, const Point& b) { return a.x * b.x + a.y * b.y; }
FieldElement cross(const Point& a, const Point& b) { return a.x * b.y - a.y * b.x; }

int orientation(const Point& a, const Point& b, const Point& c) { return cross(b - a, c - a).sign(); }

bool on_segment(const Point& p, const Point& a, const Point& b) {
  if (orientation(a, b, p) != 0) return false;
  return dot(p - a, p - b).sign() <= 0;
}

bool strictly_inside_segment(const Point& p, const Point& a, const Point& b) {
  if (orientation(a, b, p) != 0) return false;
  return dot(p - a, p - b).sign() < 0;
}

bool proper_crossing(const Point& a, const Point& b, const Point& c, const Point& d) {
  int o1 = orientation(a, b, c), o2 = orientation(a, b, d);
  int o3 = orientation(c, d, a), o4 = orientation(c, d, b);
  return o1 * o2 < 0 && o3 * o4 < 0;
}

FieldElement twice_signed_area(const std::vector<Point>& poly) {
  if (poly.empty()) throw std::invalid_argument("twice_signed_area: empty polygon");
  FieldElement s(poly[0].x.field(), Rational(0));
  for (size_t i = 0; i < poly.size(); ++i) s += cross(poly[i], poly[(i + 1) % poly.size()]);
  return s;
}

int point_in_polygon(const Point& p, const std::vector<Point>& poly) {
  size_t n = poly.size();
  for (size_t i = 0; i < n; ++i)
    if (on_segment(p, poly[i], poly[(i + 1) % n])) return 0;
  // winding number with exact half-open crossing rule
  int wn = 0;
  for (size_t i = 0; i < n; ++i) {
    const Point& a = poly[i];
    const Point& b = poly[(i + 1) % n];
    int ay = compare(a.y, p.y), by = compare(b.y, p.y);
    if (ay <= 0) {
      if (by > 0 && orientation(a, b, p) > 0) ++wn;
    } else {
      if (by <= 0 && orientation(a, b, p) < 0) --wn;
    }
  }
  return wn != 0 ? 1 : -1;
}

RigidMotion RigidMotion::identity(const FieldPtr& K) {
  return {FieldElement(K, Rational(1)), FieldElement(K, Rational(0)), Point::origin(K), false};
}

RigidMotion RigidMotion::rotation(const FieldElement& c, const FieldElement& s) {
  return {c, s, Point::origin(c.field()), false};
}

RigidMotion RigidMotion::translation(const Point& t) {
  const FieldPtr& K = t.x.field();
  return {FieldElement(K, Rational(1)), FieldElement(K, Rational(0)), t, false};
}

Point RigidMotion::apply_linear(const Point& p) const {
  FieldElement py = reflect ? -p.y : p.y;
  return {c * p.x - s * py, s * p.x + c * py};
}

Point RigidMotion::apply(const Point& p) const { return apply_linear(p) + t; }

RigidMotion RigidMotion::compose(const RigidMotion& o) const {
  // R_a F_a (R_b F_b p + t_b) + t_a; F R_b = R_b^{-1} F
  FieldElement bc = o.c, bs = reflect ? -o.s : o.s;
  RigidMotion r;
  r.c = c * bc - s * bs;
  r.s = s * bc + c * bs;
  r.reflect = reflect != o.reflect;
  r.t = apply_linear(o.t) + t;
  return r;
}

RigidMotion RigidMotion::inverse() const {
  // p = R F q + t  =>  q = F^{-1} R^{-1} (p - t) = F R^{-1} (p - t)
  RigidMotion r;
  r.reflect = reflect;
  if (!reflect) {
    r.c = c;
    r.s = -s;
  } else {
    // F R^{-1} = R F  (F R^{-1} F = R)
    r.c = c;
    r.s = s;
  }
  Point mt = {-t.x, -t.y};
  r.t = r.apply_linear(mt);
  return r;
}

RigidMotion RigidMotion::scaled(const FieldElement& k) const {
  RigidMotion r = *this;
  r.t = k * t;
  return r;
}

bool RigidMotion::is_unit() const {
  return c * c + s * s == FieldElement(c.field(), Rational(1));
}

std::string RigidMotion::key() const { return rotation_key() + "@" + t.key(); }

RigidMotion rotation_between(const Point& v, const Point& w) {
  FieldElement n = dot(v, v);
  if (n.is_zero()) throw std::invalid_argument("rotation_between: zero vector");
  if (!(dot(w, w) == n)) throw std::invalid_argument("rotation_between: lengths differ");
  FieldElement inv = n.inverse();
  return RigidMotion::rotation(dot(v, w) * inv, cross(v, w) * inv);
}

RigidMotion motion_fitting(const Point& a0, const Point& b0, const Point& a, const Point& b) {
  RigidMotion r = rotation_between(b0 - a0, b - a);
  r.t = a - r.apply_linear(a0);
  return r;
}

}  // namespace tilecoh
