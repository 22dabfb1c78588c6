#include "tilecoh/rule_format.hpp"

#include <regex>
#include <set>

#include "json.hpp"

namespace tilecoh {

using nlohmann::json;

namespace {

constexpr const char* kFormat = "tilecoh-system/1";

[[noreturn]] void fail(const std::string& kind, const std::string& where, const std::string& what) {
  throw FormatError(kind, where.empty() ? "/" : where, what);
}

const json& member(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) fail("schema", path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail("schema", path, "missing key '" + key + "'");
  return *it;
}

const json& array_at(const json& j, const std::string& path) {
  if (!j.is_array()) fail("schema", path, "expected an array");
  return j;
}

std::string string_at(const json& j, const std::string& path) {
  if (!j.is_string()) fail("schema", path, "expected a string");
  return j.get<std::string>();
}

int int_at(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail("schema", path, "expected an integer");
  return j.get<int>();
}

Rational rational_at(const json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) fail("schema", path, "expected a rational (integer or \"p/q\" string)");
  static const std::regex re(R"(\s*(-?[0-9]+)(\s*/\s*([0-9]+))?\s*)");
  std::smatch m;
  std::string s = j.get<std::string>();
  if (!std::regex_match(s, m, re)) fail("schema", path, "malformed rational '" + s + "'");
  Integer num(m[1].str());
  Integer den(m[3].matched ? m[3].str() : std::string("1"));
  if (den == 0) fail("schema", path, "zero denominator in '" + s + "'");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string rational_text(const Rational& r) { return r.get_str(); }

FieldElement element_at(const json& j, const std::string& path, const FieldPtr& K) {
  array_at(j, path);
  if (static_cast<int>(j.size()) != K->degree())
    fail("arity", path,
         "coefficient vector has length " + std::to_string(j.size()) + ", field degree is " + std::to_string(K->degree()));
  std::vector<Rational> c;
  for (size_t i = 0; i < j.size(); ++i) c.push_back(rational_at(j[i], path + "/" + std::to_string(i)));
  return FieldElement(K, c);
}

Point point_at(const json& j, const std::string& path, const FieldPtr& K) {
  array_at(j, path);
  if (j.size() != 2) fail("arity", path, "a point needs two coordinates");
  return {element_at(j[0], path + "/0", K), element_at(j[1], path + "/1", K)};
}

json element_json(const FieldElement& e) {
  json a = json::array();
  for (const auto& c : e.coeffs()) a.push_back(rational_text(c));
  return a;
}

json point_json(const Point& p) { return json::array({element_json(p.x), element_json(p.y)}); }

FieldPtr field_at(const json& j, const std::string& path) {
  const json& mp = array_at(member(j, "min_poly", path), path + "/min_poly");
  std::vector<Rational> c;
  for (size_t i = 0; i < mp.size(); ++i) {
    if (!mp[i].is_number_integer()) fail("field", path + "/min_poly/" + std::to_string(i), "coefficients must be integers");
    c.emplace_back(mp[i].get<long>());
  }
  Poly m(c);
  if (m.degree() < 1) fail("field", path + "/min_poly", "degree must be positive");
  if (m == Poly::x()) return NumberField::rationals();
  Rational lo = 0, hi = 0;
  if (j.contains("generator_interval")) {
    const json& iv = array_at(j["generator_interval"], path + "/generator_interval");
    if (iv.size() != 2) fail("arity", path + "/generator_interval", "expected [lo, hi]");
    lo = rational_at(iv[0], path + "/generator_interval/0");
    hi = rational_at(iv[1], path + "/generator_interval/1");
  } else if (m.degree() > 1) {
    fail("field", path, "generator_interval is required for fields of degree > 1");
  } else {
    lo = hi = -m.coeff(0);
  }
  try {
    return std::make_shared<const NumberField>(m, lo, hi);
  } catch (const std::exception& e) {
    fail("field", path, e.what());
  }
}

json field_json(const NumberField& K) {
  json f;
  json mp = json::array();
  for (const auto& c : K.min_poly().coeffs()) mp.push_back(c.get_num().get_si());
  f["min_poly"] = mp;
  const Interval& iv = K.declared_interval();
  f["generator_interval"] = json::array({rational_text(iv.lo), rational_text(iv.hi)});
  return f;
}

std::vector<std::pair<std::string, int>> cells_at(const json& j, const std::string& path, int n) {
  std::vector<std::pair<std::string, int>> out;
  array_at(j, path);
  std::set<std::string> seen;
  for (size_t i = 0; i < j.size(); ++i) {
    std::string p = path + "/" + std::to_string(i);
    std::string name = string_at(member(j[i], "name", p), p + "/name");
    int k = int_at(member(j[i], "orbit", p), p + "/orbit");
    if (k <= 0 || n % k != 0) fail("arity", p + "/orbit", "orbit size must divide the group order");
    if (!seen.insert(name).second) fail("reference", p + "/name", "duplicate cell name '" + name + "'");
    out.emplace_back(name, k);
  }
  return out;
}

RingMatrix ring_at(const json& j, const std::string& path, int n, const std::vector<int>& rows,
                   const std::vector<int>& cols) {
  array_at(j, path);
  if (j.size() != rows.size())
    fail("arity", path, "expected " + std::to_string(rows.size()) + " rows, got " + std::to_string(j.size()));
  RingMatrix m(n, rows, cols);
  for (size_t r = 0; r < rows.size(); ++r) {
    std::string rp = path + "/" + std::to_string(r);
    array_at(j[r], rp);
    if (j[r].size() != cols.size())
      fail("arity", rp, "expected " + std::to_string(cols.size()) + " entries, got " + std::to_string(j[r].size()));
    for (size_t c = 0; c < cols.size(); ++c) {
      std::string cp = rp + "/" + std::to_string(c);
      const json& e = j[r][c];
      std::string text = e.is_number_integer() ? std::to_string(e.get<long>()) : string_at(e, cp);
      try {
        m.at(r, c) = GroupRingElement::parse(n, text);
      } catch (const std::invalid_argument& ex) {
        fail("schema", cp, ex.what());
      }
    }
  }
  return m;
}

json ring_json(const RingMatrix& m) {
  json a = json::array();
  for (size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (size_t c = 0; c < m.cols(); ++c) row.push_back(m.at(r, c).to_string());
    a.push_back(row);
  }
  return a;
}

json cells_json(const std::vector<std::string>& names, const std::vector<int>& orbits) {
  json a = json::array();
  for (size_t i = 0; i < names.size(); ++i) a.push_back({{"name", names[i]}, {"orbit", orbits[i]}});
  return a;
}

void parse_combinatorial(const json& j, const std::string& path, TilingSystem& sys) {
  CombinatorialSpec cs;
  cs.N = int_at(member(j, "group_order", path), path + "/group_order");
  if (cs.N <= 0) fail("schema", path + "/group_order", "group order must be positive");
  const json& cells = member(j, "cells", path);
  auto split = [](const std::vector<std::pair<std::string, int>>& v, std::vector<std::string>& names,
                  std::vector<int>& orbits) {
    for (const auto& [n, k] : v) {
      names.push_back(n);
      orbits.push_back(k);
    }
  };
  split(cells_at(member(cells, "faces", path + "/cells"), path + "/cells/faces", cs.N), cs.face_names, cs.face_orbits);
  split(cells_at(member(cells, "edges", path + "/cells"), path + "/cells/edges", cs.N), cs.edge_names, cs.edge_orbits);
  split(cells_at(member(cells, "vertices", path + "/cells"), path + "/cells/vertices", cs.N), cs.vertex_names,
        cs.vertex_orbits);
  std::string bp = path + "/boundary_matrices";
  const json& bm = member(j, "boundary_matrices", path);
  cs.boundary1 = ring_at(member(bm, "d1", bp), bp + "/d1", cs.N, cs.vertex_orbits, cs.edge_orbits);
  cs.boundary2 = ring_at(member(bm, "d2", bp), bp + "/d2", cs.N, cs.edge_orbits, cs.face_orbits);
  std::string sp = path + "/substitution_matrices";
  const json& sm = member(j, "substitution_matrices", path);
  cs.subst2 = ring_at(member(sm, "phi2", sp), sp + "/phi2", cs.N, cs.face_orbits, cs.face_orbits);
  cs.subst1 = ring_at(member(sm, "phi1", sp), sp + "/phi1", cs.N, cs.edge_orbits, cs.edge_orbits);
  if (sm.contains("phi0")) cs.subst0 = ring_at(sm["phi0"], sp + "/phi0", cs.N, cs.vertex_orbits, cs.vertex_orbits);
  if (j.contains("derived")) {
    const json& d = array_at(j["derived"], path + "/derived");
    for (size_t i = 0; i < d.size(); ++i) {
      std::string s = string_at(d[i], path + "/derived/" + std::to_string(i));
      if (s != "phi0" || !cs.subst0) fail("reference", path + "/derived/" + std::to_string(i), "unknown derived matrix '" + s + "'");
      cs.subst0_derived = true;
    }
  }
  sys.rule.linear_factor = j.contains("linear_factor") ? element_at(j["linear_factor"], path + "/linear_factor", sys.field)
                                                       : FieldElement(sys.field, Rational(0));
  for (const auto& f : cs.face_names) sys.tiles.push_back({f, {}, {}});
  sys.rule.placements.assign(cs.face_names.size(), {});
  sys.combinatorial = std::move(cs);
}

void parse_geometric(const json& doc, TilingSystem& sys) {
  const FieldPtr& K = sys.field;
  const json& pts = array_at(member(doc, "prototiles", ""), "/prototiles");
  if (pts.empty()) fail("schema", "/prototiles", "at least one prototile is required");
  for (size_t i = 0; i < pts.size(); ++i) {
    std::string p = "/prototiles/" + std::to_string(i);
    ProtoTile t;
    t.id = string_at(member(pts[i], "id", p), p + "/id");
    if (sys.tile_index(t.id) >= 0) fail("reference", p + "/id", "duplicate prototile id '" + t.id + "'");
    const json& vs = array_at(member(pts[i], "vertices", p), p + "/vertices");
    if (vs.size() < 3) fail("arity", p + "/vertices", "a polygon needs at least three vertices");
    for (size_t k = 0; k < vs.size(); ++k) t.vertices.push_back(point_at(vs[k], p + "/vertices/" + std::to_string(k), K));
    if (pts[i].contains("edge_labels")) {
      const json& ls = array_at(pts[i]["edge_labels"], p + "/edge_labels");
      if (!ls.empty() && ls.size() != vs.size()) fail("arity", p + "/edge_labels", "one label per edge expected");
      for (size_t k = 0; k < ls.size(); ++k) t.edge_labels.push_back(string_at(ls[k], p + "/edge_labels/" + std::to_string(k)));
    }
    sys.tiles.push_back(std::move(t));
  }
  const json& sub = member(doc, "substitution", "");
  sys.rule.linear_factor = element_at(member(sub, "linear_factor", "/substitution"), "/substitution/linear_factor", K);
  const json& pl = member(sub, "placements", "/substitution");
  if (!pl.is_object()) fail("schema", "/substitution/placements", "expected an object keyed by prototile id");
  sys.rule.placements.assign(sys.tiles.size(), {});
  for (auto it = pl.begin(); it != pl.end(); ++it) {
    std::string p = "/substitution/placements/" + it.key();
    int parent = sys.tile_index(it.key());
    if (parent < 0) fail("reference", p, "unknown prototile id '" + it.key() + "'");
    const json& list = array_at(it.value(), p);
    for (size_t k = 0; k < list.size(); ++k) {
      std::string q = p + "/" + std::to_string(k);
      std::string child = string_at(member(list[k], "child", q), q + "/child");
      int type = sys.tile_index(child);
      if (type < 0) fail("reference", q + "/child", "unknown prototile id '" + child + "'");
      const json& rot = array_at(member(list[k], "rotation", q), q + "/rotation");
      if (rot.size() != 2) fail("arity", q + "/rotation", "expected [cos, sin]");
      RigidMotion g;
      g.c = element_at(rot[0], q + "/rotation/0", K);
      g.s = element_at(rot[1], q + "/rotation/1", K);
      g.t = point_at(member(list[k], "translation", q), q + "/translation", K);
      if (list[k].contains("reflect")) {
        if (!list[k]["reflect"].is_boolean()) fail("schema", q + "/reflect", "expected a boolean");
        g.reflect = list[k]["reflect"].get<bool>();
      }
      sys.rule.placements[static_cast<size_t>(parent)].push_back({type, g});
    }
  }
  for (size_t i = 0; i < sys.tiles.size(); ++i)
    if (sys.rule.placements[i].empty())
      fail("reference", "/substitution/placements", "no placements for prototile '" + sys.tiles[i].id + "'");
}

}  // namespace

TilingSystem parse_system(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError("syntax", "byte " + std::to_string(e.byte), e.what());
  }
  if (!doc.is_object()) fail("schema", "", "top level must be an object");
  if (doc.contains("format") && (!doc["format"].is_string() || doc["format"].get<std::string>() != kFormat))
    fail("schema", "/format", std::string("unsupported format, expected ") + kFormat);
  TilingSystem sys;
  sys.name = string_at(member(doc, "name", ""), "/name");
  sys.field = field_at(member(doc, "field", ""), "/field");
  bool comb = doc.contains("combinatorial");
  if (comb && (doc.contains("prototiles") || doc.contains("substitution")))
    fail("schema", "/combinatorial", "combinatorial and geometric blocks are mutually exclusive");
  if (comb)
    parse_combinatorial(doc["combinatorial"], "/combinatorial", sys);
  else
    parse_geometric(doc, sys);
  return sys;
}

std::string serialize_system(const TilingSystem& sys) {
  json doc;
  doc["format"] = kFormat;
  doc["name"] = sys.name;
  doc["field"] = field_json(*sys.field);
  if (sys.combinatorial) {
    const auto& cs = *sys.combinatorial;
    json c;
    c["group_order"] = cs.N;
    c["cells"] = {{"faces", cells_json(cs.face_names, cs.face_orbits)},
                  {"edges", cells_json(cs.edge_names, cs.edge_orbits)},
                  {"vertices", cells_json(cs.vertex_names, cs.vertex_orbits)}};
    c["boundary_matrices"] = {{"d1", ring_json(cs.boundary1)}, {"d2", ring_json(cs.boundary2)}};
    json sm = {{"phi2", ring_json(cs.subst2)}, {"phi1", ring_json(cs.subst1)}};
    if (cs.subst0) sm["phi0"] = ring_json(*cs.subst0);
    c["substitution_matrices"] = sm;
    if (cs.subst0_derived) c["derived"] = json::array({"phi0"});
    if (!sys.rule.linear_factor.is_zero()) c["linear_factor"] = element_json(sys.rule.linear_factor);
    doc["combinatorial"] = c;
  } else {
    json tiles = json::array();
    for (const auto& t : sys.tiles) {
      json v = json::array();
      for (const auto& p : t.vertices) v.push_back(point_json(p));
      json o = {{"id", t.id}, {"vertices", v}};
      if (!t.edge_labels.empty()) o["edge_labels"] = t.edge_labels;
      tiles.push_back(o);
    }
    doc["prototiles"] = tiles;
    json pl = json::object();
    for (size_t i = 0; i < sys.tiles.size(); ++i) {
      json list = json::array();
      for (const auto& p : sys.rule.placements[i])
        list.push_back({{"child", sys.tiles[static_cast<size_t>(p.type)].id},
                        {"rotation", json::array({element_json(p.motion.c), element_json(p.motion.s)})},
                        {"reflect", p.motion.reflect},
                        {"translation", point_json(p.motion.t)}});
      pl[sys.tiles[i].id] = list;
    }
    doc["substitution"] = {{"linear_factor", element_json(sys.rule.linear_factor)}, {"placements", pl}};
  }
  return doc.dump(2) + "\n";
}

bool structurally_equal(const TilingSystem& a, const TilingSystem& b) {
  if (a.name != b.name || !a.field->same_as(*b.field)) return false;
  if (!(a.rule.linear_factor == b.rule.linear_factor)) return false;
  if (a.tiles.size() != b.tiles.size() || a.combinatorial.has_value() != b.combinatorial.has_value()) return false;
  for (size_t i = 0; i < a.tiles.size(); ++i) {
    const auto &s = a.tiles[i], &t = b.tiles[i];
    if (s.id != t.id || !(s.vertices == t.vertices) || s.edge_labels != t.edge_labels) return false;
    const auto &p = a.rule.placements[i], &q = b.rule.placements[i];
    if (p.size() != q.size()) return false;
    for (size_t k = 0; k < p.size(); ++k)
      if (p[k].type != q[k].type || !(p[k].motion == q[k].motion)) return false;
  }
  if (!a.combinatorial) return true;
  const auto &x = *a.combinatorial, &y = *b.combinatorial;
  auto same = [](const RingMatrix& m, const RingMatrix& n) {
    return m.N == n.N && m.row_orbits == n.row_orbits && m.col_orbits == n.col_orbits && m.m == n.m;
  };
  if (x.N != y.N || x.face_orbits != y.face_orbits || x.edge_orbits != y.edge_orbits ||
      x.vertex_orbits != y.vertex_orbits || x.face_names != y.face_names || x.edge_names != y.edge_names ||
      x.vertex_names != y.vertex_names || x.subst0_derived != y.subst0_derived)
    return false;
  if (!same(x.boundary1, y.boundary1) || !same(x.boundary2, y.boundary2) || !same(x.subst1, y.subst1) ||
      !same(x.subst2, y.subst2))
    return false;
  if (x.subst0.has_value() != y.subst0.has_value()) return false;
  return !x.subst0 || same(*x.subst0, *y.subst0);
}

}  // namespace tilecoh
