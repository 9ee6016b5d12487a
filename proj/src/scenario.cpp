#include "kirchhoff2d/scenario.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include "kirchhoff2d/errors.hpp"
#include "kirchhoff2d/panels.hpp"

namespace kirchhoff2d {

using nlohmann::json;

// ---------------------------------------------------------------- parser

namespace {

struct Parser {
  const std::string& s;
  size_t i = 0;
  int line = 1;
  std::string key;  // current top-level key for diagnostics

  [[noreturn]] void fail(const std::string& msg) const { throw ConfigError(msg, line, key); }

  int peek() const { return i < s.size() ? static_cast<unsigned char>(s[i]) : -1; }
  void advance() {
    if (s[i] == '\n') ++line;
    ++i;
  }

  // skips blanks and comments; newlines only if `newlines`
  void skip(bool newlines) {
    while (i < s.size()) {
      char c = s[i];
      if (c == '#') {
        while (i < s.size() && s[i] != '\n') ++i;
      } else if (c == ' ' || c == '\t' || c == '\r' || (newlines && c == '\n')) {
        advance();
      } else {
        break;
      }
    }
  }

  static bool word_char(int c) { return c >= 0 && (std::isalnum(c) || c == '_' || c == '-' || c == '.' || c == '+'); }

  std::string word() {
    size_t start = i;
    while (word_char(peek())) ++i;
    return s.substr(start, i - start);
  }

  std::string quoted() {
    advance();  // opening quote
    std::string out;
    while (true) {
      if (i >= s.size() || s[i] == '\n') fail("unterminated string");
      char c = s[i];
      if (c == '"') {
        ++i;
        return out;
      }
      if (c == '\\') {
        ++i;
        if (i >= s.size()) fail("unterminated string");
        char e = s[i];
        out += e == 'n' ? '\n' : e == 't' ? '\t' : e;
        ++i;
        continue;
      }
      out += c;
      ++i;
    }
  }

  json scalar(const std::string& w) {
    if (w == "true") return true;
    if (w == "false") return false;
    if (!w.empty() && (std::isdigit(static_cast<unsigned char>(w[0])) || w[0] == '-' || w[0] == '+' || w[0] == '.')) {
      bool integral = w.find_first_of(".eE") == std::string::npos && w != "-" && w != "+";
      if (integral) {
        try {
          size_t used = 0;
          long long v = std::stoll(w, &used);
          if (used == w.size()) return v;
        } catch (const std::exception&) {
        }
      }
      char* end = nullptr;
      double v = std::strtod(w.c_str(), &end);
      if (end && *end == '\0') return v;
      fail("malformed number '" + w + "'");
    }
    return w;
  }

  json value(bool nested) {
    skip(nested);
    int c = peek();
    if (c == '[') {
      advance();
      json arr = json::array();
      while (true) {
        skip(true);
        if (peek() == ']') {
          advance();
          return arr;
        }
        arr.push_back(value(true));
        skip(true);
        if (peek() == ',') {
          advance();
        } else if (peek() != ']') {
          fail("expected ',' or ']'");
        }
      }
    }
    if (c == '{') {
      advance();
      json obj = json::object();
      while (true) {
        skip(true);
        if (peek() == '}') {
          advance();
          return obj;
        }
        std::string k = peek() == '"' ? quoted() : word();
        if (k.empty()) fail("expected a table key");
        skip(true);
        if (peek() != ':' && peek() != '=') fail("expected ':' after table key '" + k + "'");
        advance();
        if (obj.contains(k)) fail("duplicate table key '" + k + "'");
        obj[k] = value(true);
        skip(true);
        if (peek() == ',') {
          advance();
        } else if (peek() != '}') {
          fail("expected ',' or '}'");
        }
      }
    }
    if (c == '"') return quoted();
    std::string w = word();
    if (w.empty()) fail("expected a value");
    return scalar(w);
  }
};

struct ParsedConfig {
  json doc = json::object();
  std::map<std::string, int> lines;
};

ParsedConfig parse_config(const std::string& text) {
  ParsedConfig out;
  Parser p{text, 0, 1, {}};
  while (true) {
    p.skip(true);
    if (p.i >= text.size()) break;
    p.key.clear();
    std::string k = p.word();
    if (k.empty()) p.fail("expected a key");
    p.key = k;
    int at = p.line;
    p.skip(false);
    if (p.peek() != '=') p.fail("expected '='");
    p.advance();
    if (out.doc.contains(k)) p.fail("duplicate key");
    out.doc[k] = p.value(false);
    out.lines[k] = at;
    p.skip(false);
    if (p.i < text.size() && text[p.i] != '\n') p.fail("unexpected trailing text");
  }
  return out;
}

// typed access with diagnostics
struct Reader {
  const ParsedConfig* cfg;

  int line_of(const std::string& field) const {
    if (!cfg) return 0;
    std::string top = field.substr(0, field.find('.'));
    auto it = cfg->lines.find(top);
    return it == cfg->lines.end() ? 0 : it->second;
  }
  [[noreturn]] void fail(const std::string& msg, const std::string& field) const {
    throw ConfigError(msg, line_of(field), field);
  }

  double number(const json& v, const std::string& field) const {
    if (!v.is_number()) fail("expected a number", field);
    return v.get<double>();
  }
  long long integer(const json& v, const std::string& field) const {
    if (v.is_number_integer() || v.is_number_unsigned()) return v.get<long long>();
    if (v.is_number_float()) {
      double d = v.get<double>();
      if (d == std::floor(d) && std::abs(d) < 9e15) return static_cast<long long>(d);
    }
    fail("expected an integer", field);
  }
  std::string string(const json& v, const std::string& field) const {
    if (!v.is_string()) fail("expected a string", field);
    return v.get<std::string>();
  }
  Vec2 vec2(const json& v, const std::string& field) const {
    if (!v.is_array() || v.size() != 2) fail("expected [x, y]", field);
    return Vec2(number(v[0], field), number(v[1], field));
  }
  std::vector<double> numbers(const json& v, const std::string& field) const {
    if (!v.is_array()) fail("expected an array of numbers", field);
    std::vector<double> out;
    for (const auto& e : v) out.push_back(number(e, field));
    return out;
  }
  void known(const json& obj, const std::set<std::string>& keys, const std::string& prefix) const {
    for (auto it = obj.begin(); it != obj.end(); ++it)
      if (!keys.count(it.key())) fail("unknown key", prefix + it.key());
  }
};

ShapeSpec read_shape(const Reader& rd, const json& j) {
  ShapeSpec s;
  if (!j.is_object()) rd.fail("expected a table", "shape");
  rd.known(j, {"kind", "radius", "a", "b", "coeffs", "gevrey_order", "collar", "rotation"}, "shape.");
  if (j.contains("kind")) s.kind = rd.string(j["kind"], "shape.kind");
  if (s.kind != "disc" && s.kind != "ellipse" && s.kind != "fourier")
    rd.fail("kind must be disc, ellipse or fourier", "shape.kind");
  if (j.contains("radius")) s.radius = rd.number(j["radius"], "shape.radius");
  if (j.contains("a")) s.a = rd.number(j["a"], "shape.a");
  if (j.contains("b")) s.b = rd.number(j["b"], "shape.b");
  if (j.contains("gevrey_order")) s.gevrey_order = rd.number(j["gevrey_order"], "shape.gevrey_order");
  if (j.contains("collar")) s.collar = rd.number(j["collar"], "shape.collar");
  if (j.contains("rotation")) s.rotation = rd.number(j["rotation"], "shape.rotation");
  if (j.contains("coeffs")) {
    const json& c = j["coeffs"];
    if (!c.is_array()) rd.fail("expected rows [xc, xs, yc, ys]", "shape.coeffs");
    for (const auto& row : c) {
      auto r = rd.numbers(row, "shape.coeffs");
      if (r.size() != 4) rd.fail("each row is [xc, xs, yc, ys]", "shape.coeffs");
      s.coeffs.xc.push_back(r[0]);
      s.coeffs.xs.push_back(r[1]);
      s.coeffs.yc.push_back(r[2]);
      s.coeffs.ys.push_back(r[3]);
    }
  }
  if (s.kind == "fourier" && s.coeffs.modes() < 2) rd.fail("fourier shape needs coefficient rows", "shape.coeffs");
  return s;
}

VorticitySpec read_vorticity(const Reader& rd, const json& j) {
  VorticitySpec v;
  if (!j.is_object()) rd.fail("expected a table", "vorticity");
  rd.known(j, {"kind", "positions", "strengths", "areas", "centre", "separation", "axis", "strength",
               "radius", "count"},
           "vorticity.");
  if (j.contains("kind")) v.kind = rd.string(j["kind"], "vorticity.kind");
  if (v.kind != "none" && v.kind != "particles" && v.kind != "vortex-pair" && v.kind != "patch")
    rd.fail("kind must be none, particles, vortex-pair or patch", "vorticity.kind");
  if (j.contains("positions")) {
    if (!j["positions"].is_array()) rd.fail("expected a list of [x, y]", "vorticity.positions");
    for (const auto& p : j["positions"]) v.positions.push_back(rd.vec2(p, "vorticity.positions"));
  }
  if (j.contains("strengths")) v.strengths = rd.numbers(j["strengths"], "vorticity.strengths");
  if (j.contains("areas")) v.areas = rd.numbers(j["areas"], "vorticity.areas");
  if (j.contains("centre")) v.centre = rd.vec2(j["centre"], "vorticity.centre");
  if (j.contains("separation")) v.separation = rd.number(j["separation"], "vorticity.separation");
  if (j.contains("axis")) v.axis = rd.number(j["axis"], "vorticity.axis");
  if (j.contains("strength")) v.strength = rd.number(j["strength"], "vorticity.strength");
  if (j.contains("radius")) v.radius = rd.number(j["radius"], "vorticity.radius");
  if (j.contains("count")) v.count = static_cast<int>(rd.integer(j["count"], "vorticity.count"));
  if (v.kind == "particles") {
    if (v.positions.size() != v.strengths.size())
      rd.fail("positions and strengths differ in length", "vorticity.strengths");
    if (!v.areas.empty() && v.areas.size() != v.positions.size())
      rd.fail("areas and positions differ in length", "vorticity.areas");
  }
  if (v.kind == "vortex-pair" && !(v.separation > 0)) rd.fail("separation must be positive", "vorticity.separation");
  if (v.kind == "patch") {
    if (v.count < 1) rd.fail("count must be at least 1", "vorticity.count");
    if (!(v.radius > 0)) rd.fail("radius must be positive", "vorticity.radius");
  }
  return v;
}

Scenario read_scenario(const Reader& rd, const json& j) {
  Scenario s;
  rd.known(j, {"name", "shape", "h0", "ell0", "r0", "theta0", "mass", "inertia", "vorticity", "gamma", "dt",
               "duration", "panels", "epsilon", "output", "seed"},
           "");
  if (j.contains("name")) s.name = rd.string(j["name"], "name");
  if (j.contains("shape")) s.shape = read_shape(rd, j["shape"]);
  if (j.contains("h0")) s.h0 = rd.vec2(j["h0"], "h0");
  if (j.contains("ell0")) s.ell0 = rd.vec2(j["ell0"], "ell0");
  if (j.contains("r0")) s.r0 = rd.number(j["r0"], "r0");
  if (j.contains("theta0") && rd.number(j["theta0"], "theta0") != 0.0)
    rd.fail("the initial angle is 0 by convention; rotate the shape instead", "theta0");
  if (j.contains("mass")) s.mass = rd.number(j["mass"], "mass");
  if (j.contains("inertia")) s.inertia = rd.number(j["inertia"], "inertia");
  if (j.contains("vorticity")) s.vorticity = read_vorticity(rd, j["vorticity"]);
  if (j.contains("gamma")) s.gamma = rd.number(j["gamma"], "gamma");
  if (j.contains("dt")) s.dt = rd.number(j["dt"], "dt");
  if (j.contains("duration")) s.duration = rd.number(j["duration"], "duration");
  if (j.contains("panels")) s.panels = static_cast<int>(rd.integer(j["panels"], "panels"));
  if (j.contains("epsilon")) s.epsilon = rd.number(j["epsilon"], "epsilon");
  if (j.contains("output")) s.output = rd.string(j["output"], "output");
  if (j.contains("seed")) {
    long long seed = rd.integer(j["seed"], "seed");
    if (seed < 0) rd.fail("seed must be non-negative", "seed");
    s.seed = static_cast<std::uint64_t>(seed);
  }
  auto check = [&](bool ok, const char* msg, const char* field) {
    if (!ok) rd.fail(msg, field);
  };
  check(s.dt > 0 && std::isfinite(s.dt), "dt must be positive", "dt");
  check(s.duration >= 0 && std::isfinite(s.duration), "duration must be non-negative", "duration");
  check(s.mass > 0, "mass must be positive", "mass");
  check(s.inertia > 0, "inertia must be positive", "inertia");
  check(s.panels >= 16 && s.panels % 2 == 0, "panels must be an even number >= 16", "panels");
  if (s.shape.kind == "disc") check(s.shape.radius > 0, "radius must be positive", "shape.radius");
  if (s.shape.kind == "ellipse") check(s.shape.a > 0 && s.shape.b > 0, "semi-axes must be positive", "shape.a");
  return s;
}

std::string number_text(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string t = buf;
  // keep floats recognisable as floats
  if (t.find_first_of(".eEn") == std::string::npos) t += ".0";
  return t;
}

void emit(std::ostringstream& os, const json& v) {
  if (v.is_object()) {
    os << '{';
    bool first = true;
    for (auto it = v.begin(); it != v.end(); ++it) {
      if (!first) os << ", ";
      first = false;
      os << it.key() << ": ";
      emit(os, it.value());
    }
    os << '}';
  } else if (v.is_array()) {
    os << '[';
    for (size_t i = 0; i < v.size(); ++i) {
      if (i) os << ", ";
      emit(os, v[i]);
    }
    os << ']';
  } else if (v.is_string()) {
    os << '"';
    for (char c : v.get<std::string>()) {
      if (c == '"' || c == '\\') os << '\\';
      if (c == '\n') {
        os << "\\n";
        continue;
      }
      os << c;
    }
    os << '"';
  } else if (v.is_boolean()) {
    os << (v.get<bool>() ? "true" : "false");
  } else if (v.is_number_float()) {
    os << number_text(v.get<double>());
  } else {
    os << v.dump();
  }
}

json vec_json(const Vec2& v) { return json::array({v.x(), v.y()}); }

}  // namespace

// ---------------------------------------------------------------- specs

BodyShape ShapeSpec::build() const {
  BodyShape out = kind == "disc"      ? BodyShape::disc(radius)
                  : kind == "ellipse" ? BodyShape::ellipse(a, b)
                                      : BodyShape::fourier(coeffs, gevrey_order);
  if (rotation != 0.0) out = out.rotated(rotation);
  if (collar) out.set_collar_width(*collar);
  return out;
}

VortexField VorticitySpec::build(std::uint64_t seed) const {
  VortexField f;
  if (kind == "particles") {
    f.positions = positions;
    f.strengths = strengths;
    f.areas = areas;  // empty: point vortices
  } else if (kind == "vortex-pair") {
    Vec2 d = 0.5 * separation * Vec2(std::cos(axis), std::sin(axis));
    f.positions = {centre - d, centre + d};
    f.strengths = {strength, strength};
  } else if (kind == "patch") {
    // sunflower lattice with a small seeded jitter
    std::mt19937_64 rng(seed);
    auto unit = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5; };
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    const double spacing = radius * std::sqrt(std::numbers::pi / count);
    for (int i = 0; i < count; ++i) {
      double rr = radius * std::sqrt((i + 0.5) / count);
      double a = i * golden;
      Vec2 p = centre + rr * Vec2(std::cos(a), std::sin(a));
      p += 0.1 * spacing * Vec2(unit(), unit());
      f.positions.push_back(p);
      f.strengths.push_back(strength / count);
      f.areas.push_back(std::numbers::pi * radius * radius / count);
    }
  }
  return f;
}

RigidState Scenario::initial_state() const {
  RigidState s;
  s.h = h0;
  s.ell = ell0;
  s.r = r0;
  s.mass = mass;
  s.inertia = inertia;
  return s;
}

VortexField Scenario::initial_field() const {
  VortexField f = vorticity.build(seed);
  f.gamma = gamma;
  if (epsilon >= 0)
    f.core_radius = epsilon;
  else
    f.core_radius = f.size() > 1 ? default_core_radius(f.positions) : 0.0;
  return f;
}

void Scenario::validate() const {
  Reader rd{nullptr};
  read_scenario(rd, scenario_to_json(*this));
}

// ---------------------------------------------------------------- io

json parse_config_text(const std::string& text) { return parse_config(text).doc; }

Scenario scenario_from_json(const json& j) {
  Reader rd{nullptr};
  if (!j.is_object()) throw ConfigError("expected a table of settings", 0, "");
  return read_scenario(rd, j);
}

Scenario parse_scenario_text(const std::string& text) {
  ParsedConfig cfg = parse_config(text);
  Reader rd{&cfg};
  Scenario s = read_scenario(rd, cfg.doc);
  // the shape itself must be valid
  try {
    s.shape.build();
  } catch (const InvalidShape& e) {
    rd.fail(e.what(), "shape");
  }
  return s;
}

Scenario parse_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path, 0, "");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario_text(ss.str());
}

json scenario_to_json(const Scenario& s) {
  json j = json::object();
  j["name"] = s.name;
  json sh = json::object();
  sh["kind"] = s.shape.kind;
  if (s.shape.kind == "disc") sh["radius"] = s.shape.radius;
  if (s.shape.kind == "ellipse") {
    sh["a"] = s.shape.a;
    sh["b"] = s.shape.b;
  }
  if (s.shape.kind == "fourier") {
    json rows = json::array();
    for (int k = 0; k < s.shape.coeffs.modes(); ++k) {
      auto at = [&](const std::vector<double>& v) { return k < static_cast<int>(v.size()) ? v[k] : 0.0; };
      rows.push_back({at(s.shape.coeffs.xc), at(s.shape.coeffs.xs), at(s.shape.coeffs.yc), at(s.shape.coeffs.ys)});
    }
    sh["coeffs"] = rows;
    sh["gevrey_order"] = s.shape.gevrey_order;
  }
  if (s.shape.collar) sh["collar"] = *s.shape.collar;
  if (s.shape.rotation != 0.0) sh["rotation"] = s.shape.rotation;
  j["shape"] = sh;
  j["h0"] = vec_json(s.h0);
  j["ell0"] = vec_json(s.ell0);
  j["r0"] = s.r0;
  j["mass"] = s.mass;
  j["inertia"] = s.inertia;
  json v = json::object();
  const VorticitySpec& vs = s.vorticity;
  v["kind"] = vs.kind;
  if (vs.kind == "particles") {
    json pos = json::array();
    for (const auto& p : vs.positions) pos.push_back(vec_json(p));
    v["positions"] = pos;
    v["strengths"] = vs.strengths;
    if (!vs.areas.empty()) v["areas"] = vs.areas;
  } else if (vs.kind == "vortex-pair") {
    v["centre"] = vec_json(vs.centre);
    v["separation"] = vs.separation;
    v["axis"] = vs.axis;
    v["strength"] = vs.strength;
  } else if (vs.kind == "patch") {
    v["centre"] = vec_json(vs.centre);
    v["radius"] = vs.radius;
    v["count"] = vs.count;
    v["strength"] = vs.strength;
  }
  j["vorticity"] = v;
  j["gamma"] = s.gamma;
  j["dt"] = s.dt;
  j["duration"] = s.duration;
  j["panels"] = s.panels;
  j["epsilon"] = s.epsilon;
  j["output"] = s.output;
  j["seed"] = s.seed;
  return j;
}

std::string serialize_scenario(const Scenario& s) {
  json j = scenario_to_json(s);
  std::ostringstream os;
  for (const char* k : {"name", "shape", "h0", "ell0", "r0", "mass", "inertia", "vorticity", "gamma", "dt",
                        "duration", "panels", "epsilon", "output", "seed"}) {
    os << k << " = ";
    emit(os, j[k]);
    os << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------- presets

std::vector<std::string> preset_names() {
  return {"circulation-orbit", "disc-at-rest", "translating-disc", "vortex-pair-disc", "patch-ellipse"};
}

std::string preset_scenario_text(const std::string& name) {
  if (name == "circulation-orbit")
    return R"(# disc of mass pi with circulation 2 pi: orbit frequency 1, radius 0.5
name = "circulation-orbit"
shape = {kind: "disc", radius: 1.0}
mass = 3.141592653589793
inertia = 1.0
ell0 = [0.5, 0.0]
gamma = 6.283185307179586
vorticity = {kind: "none"}
dt = 0.031415926535897934
duration = 6.283185307179586
panels = 64
output = "out/circulation-orbit"
)";
  if (name == "disc-at-rest")
    return R"(name = "disc-at-rest"
shape = {kind: "disc", radius: 1.0}
dt = 0.01
duration = 1.0
panels = 64
output = "out/disc-at-rest"
)";
  if (name == "translating-disc")
    return R"(# steady translation in potential flow: no force
name = "translating-disc"
shape = {kind: "disc", radius: 1.0}
mass = 3.141592653589793
ell0 = [1.0, 0.5]
dt = 0.01
duration = 1.0
panels = 64
output = "out/translating-disc"
)";
  if (name == "vortex-pair-disc")
    return R"(# two co-rotating point vortices above a free disc with circulation
name = "vortex-pair-disc"
shape = {kind: "disc", radius: 1.0}
mass = 3.141592653589793
inertia = 1.0
gamma = 0.5
vorticity = {kind: "vortex-pair", centre: [0.0, 3.0], separation: 1.0, strength: 1.0}
epsilon = 0.0
dt = 0.02
duration = 2.0
panels = 64
output = "out/vortex-pair-disc"
)";
  if (name == "patch-ellipse")
    return R"(# vortex patch released next to an ellipse
name = "patch-ellipse"
shape = {kind: "ellipse", a: 1.5, b: 1.0}
mass = 2.0
inertia = 1.0
vorticity = {kind: "patch", centre: [0.0, 2.6], radius: 0.4, count: 40, strength: 1.0}
dt = 0.01
duration = 1.0
panels = 128
seed = 7
output = "out/patch-ellipse"
)";
  throw ConfigError("unknown preset '" + name + "'", 0, "name");
}

InitialCheck check_initial_data(const Scenario& s) {
  BodyShape shape = s.shape.build();
  RigidState st = s.initial_state();
  PanelSystem p = build_panels(shape, st, s.panels);
  FlowField flow(p, st, s.initial_field());
  InitialCheck c;
  c.normal_residual = flow.normal_residual();
  c.compatibility = flow.compatibility();
  return c;
}

}  // namespace kirchhoff2d
