// tilecoh command line front end. Reports are JSON on stdout, diagnostics on stderr.
#include <openssl/evp.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "tilecoh/cohomology.hpp"
#include "tilecoh/fixtures.hpp"
#include "tilecoh/order_invariant.hpp"
#include "tilecoh/rule_format.hpp"

using namespace tilecoh;
using nlohmann::ordered_json;

namespace {

constexpr const char* kSchema = "tilecoh.report/1";

enum Exit { ok = 0, invalid = 1, distinguished = 10, usage = 64, data = 65, unsupported = 66, internal = 70 };

struct UnsupportedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string sha256(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr);
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return os.str();
}

struct Input {
  std::string path, sha;
  TilingSystem sys;
};

// A path to a .tsys.json file, or the name of a bundled fixture.
Input load(const std::string& path) {
  Input in{path, "", {}};
  std::ifstream f(path, std::ios::binary);
  std::string text;
  if (f) {
    std::ostringstream ss;
    ss << f.rdbuf();
    text = ss.str();
  } else {
    auto names = fixture_names();
    if (std::find(names.begin(), names.end(), path) == names.end())
      throw std::invalid_argument("cannot read " + path);
    text = serialize_system(fixture(path));
  }
  in.sha = sha256(text);
  in.sys = parse_system(text);
  return in;
}

ordered_json input_json(const Input& in) { return {{"path", in.path}, {"sha256", in.sha}, {"system", in.sys.name}}; }

struct Run {
  std::string command;
  std::vector<Input> inputs;
  ordered_json results = ordered_json::object();
  ordered_json caveats = ordered_json::object();
  double seconds = 0;
};

void emit(const Run& r, bool timing) {
  ordered_json j;
  j["schema"] = kSchema;
  j["command"] = r.command;
  j["inputs"] = ordered_json::array();
  for (const auto& in : r.inputs) j["inputs"].push_back(input_json(in));
  j["results"] = r.results;
  j["caveats"] = r.caveats;
  if (timing) j["timing"] = {{"seconds", r.seconds}};
  std::cout << j.dump(2) << "\n";
}

ordered_json parse_ordered(const std::string& s) { return ordered_json::parse(s); }

struct ComplexOptions {
  std::string variant = "auto";
  bool collar = true;
};

APComplex make_complex(const TilingSystem& sys, const ComplexOptions& o, Variant fallback) {
  Variant v = fallback;
  if (o.variant == "fixed") v = Variant::fixed_orientation;
  if (o.variant == "quotient") v = Variant::quotient;
  if (!sys.is_geometric()) return complex_from_spec(sys, v);
  if (o.variant == "auto" && v == Variant::fixed_orientation && !orientation_group(split_edges(sys)).finite) {
    std::cerr << "orientation group is infinite, using the quotient complex\n";
    v = Variant::quotient;
  }
  return build_complex(sys, v, o.collar);
}

ordered_json complex_summary(const APComplex& c) {
  return {{"variant", c.variant == Variant::quotient ? "quotient" : "fixed_orientation"},
          {"collared", c.collared},
          {"N", c.cells.N},
          {"faces", c.cells.face_orbits.size()},
          {"edges", c.cells.edge_orbits.size()},
          {"vertices", c.cells.vertex_orbits.size()}};
}

int cmd_validate(Run& r, int n_max) {
  const TilingSystem& sys = r.inputs[0].sys;
  bool good = true;
  if (sys.is_geometric()) {
    ValidationOptions opt;
    opt.n_max = n_max;
    auto rep = validate_system(sys, opt);
    auto conds = ordered_json::array();
    for (const auto& c : rep.conditions) conds.push_back({{"condition", c.condition}, {"pass", c.pass}, {"detail", c.detail}});
    auto wit = ordered_json::array();
    for (const auto& w : rep.parallel_witness) wit.push_back(w ? ordered_json(*w) : ordered_json(nullptr));
    r.results["kind"] = "geometric";
    r.results["conditions"] = conds;
    r.results["parallel_witness"] = wit;
    // T-junctions are removed by inserting vertices; the pipeline always does this
    auto split = split_edges(sys);
    bool split_ok = rep.ok() || validate_system(split, opt).ok();
    r.results["valid_as_given"] = rep.ok();
    r.results["valid_after_split_edges"] = split_ok;
    good = split_ok;
    r.results["orientation_group"] = orientation_group(split).describe();
  } else {
    auto c = complex_from_spec(sys, Variant::fixed_orientation);
    auto err = check_chain_complex(c);
    r.results["kind"] = "combinatorial";
    r.results["chain_complex"] = err ? *err : "ok";
    good = !err;
    r.caveats["subst0_derived"] = sys.combinatorial->subst0_derived;
  }
  r.results["valid"] = good;
  return good ? ok : invalid;
}

int cmd_complex(Run& r, const ComplexOptions& o) {
  auto c = make_complex(r.inputs[0].sys, o, Variant::fixed_orientation);
  auto err = check_chain_complex(c);
  if (err) throw std::logic_error("chain complex check failed: " + *err);
  r.results["summary"] = complex_summary(c);
  r.results["complex"] = parse_ordered(complex_json(c));
  return ok;
}

int parse_coefficients(const std::string& s) {
  if (s == "Z") return 0;
  std::string d = s;
  if (d.rfind("Phi", 0) == 0) d = d.substr(3);
  if (d.empty() || d.find_first_not_of("0123456789") != std::string::npos)
    throw std::invalid_argument("coefficients must be Z or Phi<d>, got " + s);
  return std::stoi(d);
}

int cmd_cohomology(Run& r, const ComplexOptions& o, const std::string& coeff) {
  int d = parse_coefficients(coeff);
  const TilingSystem& sys = r.inputs[0].sys;
  auto c = make_complex(sys, o, Variant::fixed_orientation);
  r.results["summary"] = complex_summary(c);
  if (d > 0) {
    auto row = representation_ranks(cochain_complex(c), d);
    r.results["representation"] = {{"d", row.d},
                                   {"factor", row.factor},
                                   {"degree", row.degree},
                                   {"dims", row.dims},
                                   {"rank_delta0", row.rank_delta0},
                                   {"rank_delta1", row.rank_delta1},
                                   {"h", row.h}};
    return ok;
  }
  auto cx = cohomology_groups(c);
  auto lim = limit_cohomology(c);
  r.results["complex_cohomology"] = parse_ordered(cx.to_json());
  r.results["space_cohomology"] = parse_ordered(lim.to_json());
  r.caveats["finite_index"] = cx.finite_index_caveat;
  r.caveats["torsion_known"] = lim.H[2].torsion_known && lim.H[1].torsion_known;
  // top cohomology with all orientations comes from the quotient complex
  ComplexOptions qo = o;
  qo.variant = "quotient";
  auto q = c.variant == Variant::quotient ? lim : limit_cohomology(make_complex(sys, qo, Variant::quotient));
  auto top = top_cohomology_all_orientation(q);
  r.results["top_all_orientations"] = {{"group", top.describe()}, {"free_rank", top.free_rank}};
  return ok;
}

OrderedInvariant invariant_of(const TilingSystem& sys, const ComplexOptions& o) {
  ComplexOptions qo = o;
  qo.variant = "quotient";
  return ordered_invariant(make_complex(sys, qo, Variant::quotient));
}

ordered_json image_json(const MuImage& m) {
  ordered_json j;
  j["integer_case"] = m.integer_case;
  j["min_poly"] = m.min_poly.to_string("x");
  j["field"] = m.field;
  if (m.integer_case) {
    j["lambda"] = m.lambda_integer.get_str();
    auto p = ordered_json::array();
    for (const auto& x : m.primes) p.push_back(x.get_str());
    j["primes"] = p;
  }
  j["description"] = m.describe();
  return j;
}

int cmd_invariant(Run& r, const ComplexOptions& o) {
  auto inv = invariant_of(r.inputs[0].sys, o);
  auto m = mu_image(inv);
  r.results["faces"] = inv.arity();
  r.results["perron"] = inv.perron.describe();
  auto rv = ordered_json::array();
  for (const auto& x : inv.perron.r) rv.push_back(x.to_string());
  r.results["r"] = rv;
  r.results["mu_image"] = image_json(m);
  return ok;
}

int cmd_compare(Run& r, const ComplexOptions& o) {
  auto a = invariant_of(r.inputs[0].sys, o);
  auto b = invariant_of(r.inputs[1].sys, o);
  auto v = compare_systems(a, b);
  bool dist = v.outcome == Outcome::distinguished;
  r.results["outcome"] = dist ? "Distinguished" : "NotDistinguished";
  r.results["reason"] = v.reason;
  r.results["a"] = image_json(v.a);
  r.results["b"] = image_json(v.b);
  // agreement of the invariant proves nothing
  r.caveats["inconclusive"] = !dist;
  return dist ? distinguished : ok;
}

int precision_digits(std::optional<int> flag) {
  if (flag) return *flag;
  if (const char* e = std::getenv("TILECOH_PRECISION")) {
    try {
      int p = std::stoi(e);
      if (p >= 0 && p <= 17) return p;
    } catch (const std::exception&) {
    }
    throw std::invalid_argument(std::string("TILECOH_PRECISION must be an integer in [0, 17], got ") + e);
  }
  return 12;
}

std::string fmt(double x, int prec) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(prec) << x;
  std::string s = os.str();
  if (s.find('.') != std::string::npos) {
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  if (s == "-0") s = "0";
  return s;
}

std::string render_svg(const TilingSystem& sys, int type, int level, int prec) {
  auto patch = supertile(sys, type, level);
  std::vector<std::vector<std::pair<double, double>>> polys;
  double x0 = INFINITY, y0 = INFINITY, x1 = -INFINITY, y1 = -INFINITY;
  for (const auto& t : patch) {
    std::vector<std::pair<double, double>> poly;
    for (const auto& p : placed_vertices(sys, t)) {
      // svg y axis points down
      double x = p.x.to_double(), y = -p.y.to_double();
      poly.emplace_back(x, y);
      x0 = std::min(x0, x), x1 = std::max(x1, x);
      y0 = std::min(y0, y), y1 = std::max(y1, y);
    }
    polys.push_back(std::move(poly));
  }
  double pad = 0.02 * std::max(x1 - x0, y1 - y0);
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << fmt(x0 - pad, prec) << " " << fmt(y0 - pad, prec) << " "
     << fmt(x1 - x0 + 2 * pad, prec) << " " << fmt(y1 - y0 + 2 * pad, prec) << "\">\n";
  os << "<!-- " << sys.name << " supertile " << sys.tiles[type].id << " level " << level << ", " << patch.size()
     << " tiles; coordinates rounded to " << prec << " decimal digits -->\n";
  os << "<style>\n  polygon { stroke: #222; stroke-width: " << fmt(0.004 * std::max(x1 - x0, y1 - y0), prec)
     << "; stroke-linejoin: round; }\n";
  for (size_t i = 0; i < sys.tiles.size(); ++i) {
    double hue = std::fmod(37.0 + 360.0 * double(i) * 0.618033988749895, 360.0);
    os << "  .tile-" << i << " { fill: hsl(" << fmt(hue, 1) << ", 55%, 72%); }\n";
  }
  os << "</style>\n";
  for (size_t k = 0; k < patch.size(); ++k) {
    os << "<polygon class=\"tile-" << patch[k].type << "\" data-type=\"" << sys.tiles[patch[k].type].id << "\" points=\"";
    for (size_t i = 0; i < polys[k].size(); ++i)
      os << (i ? " " : "") << fmt(polys[k][i].first, prec) << "," << fmt(polys[k][i].second, prec);
    os << "\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

int cmd_render(Run& r, const std::string& tile, int level, const std::string& out, std::optional<int> prec_flag) {
  const TilingSystem& sys = r.inputs[0].sys;
  if (!sys.is_geometric()) throw UnsupportedError("render: " + sys.name + " is combinatorial, there is no geometry to draw");
  if (level < 0) throw std::invalid_argument("render: level must be nonnegative");
  int type = tile.empty() ? 0 : sys.tile_index(tile);
  int prec = precision_digits(prec_flag);
  std::string svg = render_svg(sys, type, level, prec);
  if (out.empty() || out == "-") {
    std::cout << svg;
    return ok;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot write " + out);
  f << svg;
  r.results["out"] = out;
  r.results["tile"] = sys.tiles[type].id;
  r.results["level"] = level;
  r.results["polygons"] = supertile(sys, type, level).size();
  r.results["sha256"] = sha256(svg);
  r.caveats["rounded_digits"] = prec;
  return ok;
}

void add_complex_flags(CLI::App* c, ComplexOptions& o) {
  c->add_option("--variant", o.variant, "fixed, quotient or auto")->check(CLI::IsMember({"auto", "fixed", "quotient"}));
  c->add_flag("--collar,!--no-collar", o.collar, "collar the tiles first (geometric systems, default on)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tilecoh: cohomology and order invariants of substitution tilings"};
  app.require_subcommand(1);
  bool timing = false;
  app.add_flag("--timing", timing, "add wall clock time to the report");

  std::string path, path_b, coeff = "Z", tile, out;
  int n_max = 6, level = 3;
  std::optional<int> prec;
  ComplexOptions copt;

  auto* v = app.add_subcommand("validate", "check the tiling system conditions");
  v->add_option("path", path, "system file or fixture name")->required();
  v->add_option("--n-max", n_max, "supertile level bound for the parallel tile scan");

  auto* cx = app.add_subcommand("complex", "build the Anderson-Putnam complex");
  cx->add_option("path", path)->required();
  add_complex_flags(cx, copt);

  auto* co = app.add_subcommand("cohomology", "cohomology of the complex and of the tiling space");
  co->add_option("path", path)->required();
  co->add_option("--coefficients", coeff, "Z or Phi<d> for one representation");
  add_complex_flags(co, copt);

  auto* iv = app.add_subcommand("invariant", "Perron data and the image of the order invariant");
  iv->add_option("path", path)->required();
  iv->add_flag("--collar,!--no-collar", copt.collar);

  auto* cm = app.add_subcommand("compare", "try to tell two tiling spaces apart");
  cm->add_option("a", path)->required();
  cm->add_option("b", path_b)->required();
  cm->add_flag("--collar,!--no-collar", copt.collar);

  auto* rd = app.add_subcommand("render", "draw a supertile as svg");
  rd->add_option("path", path)->required();
  rd->add_option("--tile", tile, "prototile id (default: the first)");
  rd->add_option("--level", level, "supertile level");
  rd->add_option("--out", out, "output file, - for stdout");
  rd->add_option("--precision", prec, "decimal digits (overrides TILECOH_PRECISION, default 12)")->check(CLI::Range(0, 17));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : usage;
  }

  auto t0 = std::chrono::steady_clock::now();
  Run r;
  r.command = app.get_subcommands().front()->get_name();
  int rc = ok;
  try {
    r.inputs.push_back(load(path));
    if (!path_b.empty()) r.inputs.push_back(load(path_b));
    if (*v) rc = cmd_validate(r, n_max);
    if (*cx) rc = cmd_complex(r, copt);
    if (*co) rc = cmd_cohomology(r, copt, coeff);
    if (*iv) rc = cmd_invariant(r, copt);
    if (*cm) rc = cmd_compare(r, copt);
    if (*rd) {
      rc = cmd_render(r, tile, level, out, prec);
      if (out.empty() || out == "-") return rc;
    }
  } catch (const FormatError& e) {
    std::cerr << "tilecoh: " << e.what() << "\n";
    return data;
  } catch (const UnsupportedError& e) {
    std::cerr << "tilecoh: " << e.what() << "\n";
    return unsupported;
  } catch (const std::invalid_argument& e) {
    std::cerr << "tilecoh: " << e.what() << "\n";
    return usage;
  } catch (const std::exception& e) {
    std::cerr << "tilecoh: internal error: " << e.what() << "\n";
    return internal;
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  emit(r, timing);
  if (rc == distinguished) std::cerr << r.results["reason"].get<std::string>() << "\n";
  return rc;
}
