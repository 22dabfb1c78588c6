#pragma once

#include <string>
#include <vector>

#include "tilecoh/number_field.hpp"

namespace tilecoh {

struct Point {
  FieldElement x, y;

  Point() = default;
  Point(FieldElement px, FieldElement py) : x(std::move(px)), y(std::move(py)) {}
  static Point origin(const FieldPtr& K) { return {FieldElement(K, Rational(0)), FieldElement(K, Rational(0))}; }

  friend Point operator+(const Point& a, const Point& b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(const Point& a, const Point& b) { return {a.x - b.x, a.y - b.y}; }
  friend Point operator*(const FieldElement& s, const Point& p) { return {s * p.x, s * p.y}; }
  friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
  std::string key() const { return x.key() + "|" + y.key(); }
  std::string to_string() const { return "(" + x.to_string() + ", " + y.to_string() + ")"; }
};

FieldElement dot(const Point& a, const Point& b);
FieldElement cross(const Point& a, const Point& b);
/// Sign of the turn a -> b -> c (+1 counterclockwise).
int orientation(const Point& a, const Point& b, const Point& c);
/// p lies on the closed segment [a, b].
bool on_segment(const Point& p, const Point& a, const Point& b);
/// p lies strictly between a and b on the segment.
bool strictly_inside_segment(const Point& p, const Point& a, const Point& b);
/// Segments cross at a single point interior to both.
bool proper_crossing(const Point& a, const Point& b, const Point& c, const Point& d);

/// Twice the signed area.
FieldElement twice_signed_area(const std::vector<Point>& poly);
/// +1 inside, 0 on the boundary, -1 outside.
int point_in_polygon(const Point& p, const std::vector<Point>& poly);

/// p -> R F p + t with R = [[c, -s], [s, c]] and F = diag(1, -1) when reflect.
struct RigidMotion {
  FieldElement c, s;
  Point t;
  bool reflect = false;

  static RigidMotion identity(const FieldPtr& K);
  static RigidMotion rotation(const FieldElement& c, const FieldElement& s);
  static RigidMotion translation(const Point& t);

  Point apply(const Point& p) const;
  /// Linear part only.
  Point apply_linear(const Point& p) const;
  /// (*this) o o
  RigidMotion compose(const RigidMotion& o) const;
  RigidMotion inverse() const;
  /// Conjugation by scaling: p -> k * this(p / k), i.e. translation scaled by k.
  RigidMotion scaled(const FieldElement& k) const;
  bool is_unit() const;
  std::string key() const;
  std::string rotation_key() const { return c.key() + "/" + s.key() + (reflect ? "/r" : ""); }
  friend bool operator==(const RigidMotion& a, const RigidMotion& b) {
    return a.c == b.c && a.s == b.s && a.t == b.t && a.reflect == b.reflect;
  }
};

/// The rotation taking direction v to direction w (equal lengths), exactly.
RigidMotion rotation_between(const Point& v, const Point& w);
/// The orientation-preserving motion mapping a0 -> a and b0 -> b (|a0 b0| = |a b|).
RigidMotion motion_fitting(const Point& a0, const Point& b0, const Point& a, const Point& b);

}  // namespace tilecoh
