#include "toricmmp/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "toricmmp/error.hpp"

namespace toricmmp::io {

namespace {

[[noreturn]] void bad(const std::string& msg) { fail("ParseError", ErrorKind::Input, msg); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

long long integer_from_json(const Json& j) {
  if (j.is_number_integer()) return j.get<long long>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(s, &used);
    } catch (const std::exception&) {
      bad("not an integer: '" + s + "'");
    }
    if (used != s.size()) bad("not an integer: '" + s + "'");
    return v;
  }
  bad("expected an integer, got " + j.dump());
}

std::vector<int> index_list(const Json& j) {
  if (!j.is_array()) bad("expected an array of indices");
  std::vector<int> out;
  for (const auto& x : j) out.push_back(static_cast<int>(integer_from_json(x)));
  return out;
}

IntVec int_list(const Json& j) {
  if (!j.is_array()) bad("expected an array of integers");
  IntVec out;
  for (const auto& x : j) out.push_back(integer_from_json(x));
  return out;
}

Json int_strings(const IntVec& v) {
  Json a = Json::array();
  for (long long x : v) a.push_back(std::to_string(x));
  return a;
}

void check_roots(const std::vector<Scalar>& xs) {
  long root = 0;
  for (const auto& x : xs) {
    if (x.is_rational()) continue;
    if (root != 0 && x.root() != root)
      fail("MixedRoot", ErrorKind::Input,
           "coefficients use sqrt(" + std::to_string(root) + ") and sqrt(" + std::to_string(x.root()) + ")");
    root = x.root();
  }
}

}  // namespace

Json to_json(const Scalar& s) {
  if (s.is_rational()) return s.rational_part().get_str();
  Json o;
  o["a"] = s.rational_part().get_str();
  o["b"] = s.irrational_part().get_str();
  o["root"] = s.root();
  return o;
}

Scalar scalar_from_json(const Json& j) {
  if (j.is_string()) return Scalar::parse(j.get<std::string>());
  if (j.is_number_integer()) return Scalar(j.get<long long>());
  if (j.is_object()) {
    Rational a(0), b(0);
    if (j.contains("a")) a = scalar_from_json(j.at("a")).rational_part();
    if (j.contains("b")) b = scalar_from_json(j.at("b")).rational_part();
    long root = static_cast<long>(integer_from_json(field(j, "root")));
    return Scalar(a, b, root);
  }
  bad("expected a scalar, got " + j.dump());
}

Json to_json(const Fan& f) {
  Json o;
  o["rank"] = f.rank();
  Json rays = Json::array();
  for (const auto& r : f.rays()) rays.push_back(int_strings(r));
  o["rays"] = rays;
  Json cones = Json::array();
  for (const auto& c : f.max_cones()) cones.push_back(c);
  o["max_cones"] = cones;
  return o;
}

Fan fan_from_json(const Json& j) {
  const int rank = static_cast<int>(integer_from_json(field(j, "rank")));
  std::vector<IntVec> rays;
  const Json& rj = field(j, "rays");
  if (!rj.is_array()) bad("'rays' must be an array");
  for (const auto& r : rj) rays.push_back(int_list(r));
  std::vector<Cone> cones;
  const Json& cj = field(j, "max_cones");
  if (!cj.is_array()) bad("'max_cones' must be an array");
  for (const auto& c : cj) cones.push_back(index_list(c));
  return Fan::build(rank, rays, cones);
}

Json to_json(const TDivisor& d) {
  Json coeffs = Json::object();
  for (std::size_t r = 0; r < d.size(); ++r)
    if (!d[r].is_zero()) coeffs[std::to_string(r)] = to_json(d[r]);
  Json o;
  o["coeffs"] = coeffs;
  return o;
}

TDivisor divisor_from_json(const Json& j, int num_rays) {
  TDivisor d(num_rays);
  const Json& c = field(j, "coeffs");
  if (c.is_array()) {
    if (static_cast<int>(c.size()) != num_rays) bad("divisor has the wrong number of coefficients");
    for (int r = 0; r < num_rays; ++r) d[r] = scalar_from_json(c[r]);
  } else if (c.is_object()) {
    for (const auto& [key, value] : c.items()) {
      long long r = integer_from_json(Json(key));
      if (r < 0 || r >= num_rays) bad("ray index " + key + " out of range");
      d[r] = scalar_from_json(value);
    }
  } else {
    bad("'coeffs' must be an object or an array");
  }
  check_roots(d.coeffs);
  return d;
}

Json to_json(const ToricPair& p) {
  Json o;
  o["fan"] = to_json(p.X());
  o["boundary"] = to_json(p.boundary);
  Json ghosts = Json::array();
  for (const auto& g : p.ghosts) {
    Json gj;
    gj["class"] = int_strings(g.cls);
    gj["weight"] = to_json(g.weight);
    Json verts = Json::array();
    for (const auto& v : g.vertices) verts.push_back(int_strings(v));
    gj["vertices"] = verts;
    ghosts.push_back(gj);
  }
  o["ghosts"] = ghosts;
  return o;
}

ToricPair pair_from_json(const Json& j) {
  FanPtr f = make_fan(fan_from_json(field(j, "fan")));
  TDivisor b = j.contains("boundary") ? divisor_from_json(j.at("boundary"), f->num_rays()) : TDivisor(f->num_rays());
  std::vector<Ghost> ghosts;
  std::vector<Scalar> all = b.coeffs;
  if (j.contains("ghosts")) {
    if (!j.at("ghosts").is_array()) bad("'ghosts' must be an array");
    for (const auto& g : j.at("ghosts")) {
      Scalar w = scalar_from_json(field(g, "weight"));
      all.push_back(w);
      check_roots(all);
      IntVec cls = int_list(field(g, "class"));
      if (!g.contains("vertices")) {
        ghosts.push_back(make_ghost(*f, cls, w));
        continue;
      }
      // A ghost carried along a run: its characters are kept as recorded.
      if (static_cast<int>(cls.size()) != f->num_rays()) bad("ghost class has the wrong number of coefficients");
      if (w < Scalar(0) || w > Scalar(1)) fail("InvalidWeight", ErrorKind::Input, "ghost weight outside [0,1]");
      Ghost gh{cls, w, {}};
      for (const auto& v : field(g, "vertices")) {
        IntVec x = int_list(v);
        if (static_cast<int>(x.size()) != f->rank()) bad("ghost vertex has the wrong length");
        gh.vertices.push_back(x);
      }
      if (gh.vertices.empty()) bad("ghost without vertices");
      ghosts.push_back(gh);
    }
  }
  return make_pair(f, b, ghosts);
}

Json to_json(const ContractionResult& c) {
  Json o;
  o["kind"] = to_string(c.kind);
  o["wall"] = c.ray.walls;
  o["j_plus"] = c.j_plus;
  o["j_minus"] = c.j_minus;
  if (c.removed_ray) o["removed_ray"] = *c.removed_ray;
  return o;
}

std::string hash_string(const Fan& f) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(f.canonical_hash()));
  return buf;
}

TraceRecord record(const MMPTrace& t) {
  TraceRecord r{t.initial, t.h, t.t0, {}, to_string(t.outcome), t.reason, t.final_pair()};
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    const MMPStep& s = t.steps[i];
    TraceStep ts;
    ts.step = static_cast<int>(i);
    if (t.h) ts.t = s.t;
    ts.ray = s.ray.walls;
    ts.kind = to_string(s.action.kind);
    ts.j_plus = s.action.j_plus;
    ts.j_minus = s.action.j_minus;
    ts.removed_ray = s.action.removed_ray;
    ts.model_hash = hash_string(s.after.X());
    r.steps.push_back(ts);
  }
  return r;
}

Json to_json(const TraceRecord& r) {
  Json o;
  o["initial"] = to_json(r.initial);
  if (r.h) o["h"] = to_json(*r.h);
  if (r.t0) o["t0"] = to_json(*r.t0);
  Json steps = Json::array();
  for (const auto& s : r.steps) {
    Json sj;
    sj["step"] = s.step;
    if (s.t) sj["t"] = s.t->to_string();
    sj["ray"] = s.ray;
    Json action;
    action["kind"] = s.kind;
    action["wall"] = s.ray;
    action["j_plus"] = s.j_plus;
    action["j_minus"] = s.j_minus;
    if (s.removed_ray) action["removed_ray"] = *s.removed_ray;
    sj["action"] = action;
    sj["model_hash"] = s.model_hash;
    steps.push_back(sj);
  }
  o["steps"] = steps;
  o["outcome"] = r.outcome;
  if (!r.reason.empty()) o["reason"] = r.reason;
  o["final"] = to_json(r.final_pair);
  return o;
}

Json to_json(const MMPTrace& t) { return to_json(record(t)); }

TraceRecord trace_from_json(const Json& j) {
  TraceRecord r;
  r.initial = pair_from_json(field(j, "initial"));
  if (j.contains("h")) r.h = divisor_from_json(j.at("h"), r.initial.X().num_rays());
  if (j.contains("t0")) r.t0 = scalar_from_json(j.at("t0"));
  const Json& steps = field(j, "steps");
  if (!steps.is_array()) bad("'steps' must be an array");
  for (const auto& sj : steps) {
    TraceStep s;
    s.step = static_cast<int>(integer_from_json(field(sj, "step")));
    if (sj.contains("t")) s.t = scalar_from_json(sj.at("t"));
    s.ray = index_list(field(sj, "ray"));
    const Json& a = field(sj, "action");
    s.kind = field(a, "kind").get<std::string>();
    if (s.kind != "fibering" && s.kind != "divisorial" && s.kind != "flipping") bad("unknown action '" + s.kind + "'");
    s.j_plus = index_list(field(a, "j_plus"));
    s.j_minus = index_list(field(a, "j_minus"));
    if (a.contains("removed_ray")) s.removed_ray = static_cast<int>(integer_from_json(a.at("removed_ray")));
    s.model_hash = field(sj, "model_hash").get<std::string>();
    r.steps.push_back(s);
  }
  r.outcome = field(j, "outcome").get<std::string>();
  if (r.outcome != "MinimalModel" && r.outcome != "MoriFiberSpace" && r.outcome != "Aborted")
    bad("unknown outcome '" + r.outcome + "'");
  if (j.contains("reason")) r.reason = j.at("reason").get<std::string>();
  r.final_pair = pair_from_json(field(j, "final"));
  return r;
}

Json to_json(const CurveAlgebraInstance& inst) {
  Json o;
  Json m = Json::array();
  for (const auto& x : inst.m) m.push_back(x.get_str());
  o["m"] = m;
  o["b"] = to_json(inst.b);
  if (inst.d) o["d"] = to_json(*inst.d);
  return o;
}

CurveAlgebraInstance instance_from_json(const Json& j) {
  CurveAlgebraInstance inst;
  const Json& m = field(j, "m");
  if (!m.is_array()) bad("'m' must be an array");
  for (const auto& x : m) inst.m.push_back(Integer(static_cast<long>(integer_from_json(x))));
  inst.b = scalar_from_json(field(j, "b"));
  if (inst.b >= Scalar(1)) bad("b must be below 1");
  if (j.contains("d")) inst.d = scalar_from_json(j.at("d"));
  return inst;
}

GradedSemigroup semigroup_from_json(const Json& j) {
  if (j.contains("numerical")) return numerical_semigroup(int_list(j.at("numerical")));
  if (j.contains("cone")) {
    const Json& c = j.at("cone");
    return cone_semigroup(scalar_from_json(field(c, "alpha")), scalar_from_json(field(c, "beta")));
  }
  bad("algebra file needs 'numerical' or 'cone'");
}

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("ParseError", ErrorKind::Input, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return Json::parse(ss.str());
  } catch (const nlohmann::json::exception& e) {
    fail("ParseError", ErrorKind::Input, path + ": " + e.what());
  }
}

void write_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) fail("ParseError", ErrorKind::Input, "cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

}  // namespace toricmmp::io
