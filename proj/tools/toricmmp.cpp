#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "toricmmp/algebra.hpp"
#include "toricmmp/error.hpp"
#include "toricmmp/io.hpp"
#include "toricmmp/mmp.hpp"
#include "toricmmp/suite.hpp"

using namespace toricmmp;

namespace {

struct Caps {
  int steps = 0;  // 0: the driver default
  int window = 0;
  int degree = 0;
};

struct Config {
  std::uint64_t seed = 0;
  std::string trace;
  std::vector<std::string> caps;
  Caps cap;
};

Caps parse_caps(const std::vector<std::string>& items) {
  Caps c;
  for (const auto& item : items) {
    auto eq = item.find('=');
    if (eq == std::string::npos) fail("InvalidInput", ErrorKind::Input, "caps take key=value, got '" + item + "'");
    const std::string key = item.substr(0, eq);
    int value = 0;
    try {
      value = std::stoi(item.substr(eq + 1));
    } catch (const std::exception&) {
      fail("InvalidInput", ErrorKind::Input, "cap '" + key + "' needs an integer");
    }
    if (value <= 0) fail("InvalidInput", ErrorKind::Input, "cap '" + key + "' must be positive");
    if (key == "steps") c.steps = value;
    else if (key == "window") c.window = value;
    else if (key == "degree") c.degree = value;
    else fail("InvalidInput", ErrorKind::Input, "unknown cap '" + key + "'");
  }
  return c;
}

std::string ints(const std::vector<int>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "]";
}

std::string ints(const IntVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

std::string flags(const Fan& f) {
  std::string s;
  s += f.is_complete() ? "complete" : "incomplete";
  s += f.is_simplicial() ? " simplicial" : " non-simplicial";
  if (f.flags().smooth) s += " smooth";
  return s;
}

void print_fan(const Fan& f, const std::string& label) {
  std::cout << label << ": rank " << f.rank() << ", " << f.num_rays() << " rays, " << f.max_cones().size()
            << " cones, " << flags(f) << "\n";
  std::cout << "  rays:";
  for (const auto& r : f.rays()) std::cout << " " << ints(r);
  std::cout << "\n";
}

ToricPair load_pair(const std::string& path) { return io::pair_from_json(io::read_file(path)); }

void print_trace(const MMPTrace& tr) {
  if (tr.t0) std::cout << "t0 = " << tr.t0->to_string() << "\n";
  for (std::size_t i = 0; i < tr.steps.size(); ++i) {
    const MMPStep& s = tr.steps[i];
    std::cout << "step " << i << ": ";
    if (tr.h) std::cout << "t = " << s.t.to_string() << ", ";
    std::cout << to_string(s.action.kind) << " wall " << ints(s.ray.walls);
    if (s.action.removed_ray) std::cout << ", removes ray " << *s.action.removed_ray;
    if (s.action.fibration) std::cout << ", base rank " << s.action.fibration->base_rank;
    std::cout << "\n";
  }
  std::cout << "outcome: " << to_string(tr.outcome);
  if (!tr.reason.empty()) std::cout << " (" << tr.reason << ")";
  std::cout << "\n";
  print_fan(tr.final_pair().X(), "final model");
}

void write_trace(const Config& cfg, const io::Json& j) {
  if (!cfg.trace.empty()) io::write_file(cfg.trace, j);
}

int interactive_choice(const ToricPair&, const std::vector<ContractionResult>& cands) {
  std::cerr << "negative extremal rays:\n";
  for (std::size_t i = 0; i < cands.size(); ++i)
    std::cerr << "  [" << i << "] " << to_string(cands[i].kind) << " wall " << ints(cands[i].ray.walls) << "\n";
  while (true) {
    std::cerr << "choose a ray index: " << std::flush;
    std::string line;
    if (!std::getline(std::cin, line)) fail("InvalidInput", ErrorKind::Input, "no choice on standard input");
    try {
      int k = std::stoi(line);
      if (k >= 0 && k < static_cast<int>(cands.size())) return k;
    } catch (const std::exception&) {
    }
    std::cerr << "invalid index\n";
  }
}

int cmd_validate(const std::string& path) {
  io::Json j = io::read_file(path);
  if (j.contains("fan")) {
    ToricPair p = io::pair_from_json(j);
    print_fan(p.X(), "fan");
    std::cout << "picard rank: " << p.X().picard_rank() << "\n";
    std::cout << "pair: " << to_string(classify_singularities(p)) << "\n";
    TDivisor l = log_canonical_class(p);
    std::cout << "K+Delta: " << l.to_string() << "\n";
    std::cout << "nef: " << (is_nef(p.X(), l) ? "yes" : "no") << ", big: " << (is_big(p.X(), l) ? "yes" : "no")
              << ", pseudo-effective: " << (is_pseudo_effective(p.X(), l) ? "yes" : "no") << "\n";
    return 0;
  }
  Fan f = io::fan_from_json(j);
  print_fan(f, "fan");
  if (f.is_complete() && f.is_simplicial()) {
    std::cout << "picard rank: " << f.picard_rank() << "\n";
    bool projective = true;
    try {
      ample_class(f);
    } catch (const Error&) {
      projective = false;
    }
    std::cout << "projective: " << (projective ? "yes" : "no") << "\n";
  }
  return 0;
}

int cmd_mori(const Config& cfg, const std::string& path, const std::string& strategy) {
  ToricPair p = load_pair(path);
  Strategy s = Strategy::parse(strategy, cfg.seed);
  if (s.kind == Strategy::Kind::Interactive) s.choose = interactive_choice;
  MMPTrace tr = mori_mmp(p, s, cfg.cap.steps);
  std::cout << "strategy: " << to_string(s.kind) << "\n";
  print_trace(tr);
  write_trace(cfg, io::to_json(tr));
  return tr.outcome == Outcome::Aborted ? exit_code(ErrorKind::Cap) : 0;
}

int cmd_scale(const Config& cfg, const std::string& path, const std::string& h_path, const std::string& t0_text) {
  ToricPair p = load_pair(path);
  TDivisor h = h_path.empty() ? default_ample(p.X()) : io::divisor_from_json(io::read_file(h_path), p.X().num_rays());
  Scalar t0 = t0_text.empty() ? nef_start(p, h) : Scalar::parse(t0_text);
  MMPTrace tr = mmp_with_scaling(p, h, t0, cfg.cap.steps);
  print_trace(tr);
  write_trace(cfg, io::to_json(tr));
  return tr.outcome == Outcome::Aborted ? exit_code(ErrorKind::Cap) : 0;
}

int cmd_bend(const Config& cfg, const std::string& path) {
  ToricPair p = load_pair(path);
  BendingResult r = bending(p, cfg.cap.steps);
  std::cout << "decomposition: " << r.decomposition.r.size() << " mobile parts\n";
  for (std::size_t i = 0; i < r.decomposition.r.size(); ++i)
    std::cout << "  r = " << r.decomposition.r[i].to_string() << ", M = " << ints(r.decomposition.mobile[i]) << "\n";
  std::cout << "  fixed part: " << r.decomposition.fixed.to_string() << "\n";
  std::cout << "useless divisor: " << r.delta_prime.to_string() << "\n";
  for (std::size_t i = 0; i < r.stages.size(); ++i)
    std::cout << "stage " << i << ": " << r.stages[i].steps.size() << " steps, " << to_string(r.stages[i].outcome)
              << "\n";
  std::cout << "flips checked: " << r.flips_checked << "\n";
  std::cout << "K+Delta nef on the final model: " << (r.nef ? "yes" : "no") << "\n";
  print_fan(r.final_pair.X(), "final model");
  if (!cfg.trace.empty()) {
    io::Json j;
    j["stages"] = io::Json::array();
    for (const auto& s : r.stages) j["stages"].push_back(io::to_json(s));
    j["final"] = io::to_json(r.final_pair);
    io::write_file(cfg.trace, j);
  }
  return r.nef ? 0 : exit_code(ErrorKind::Invariant);
}

int cmd_mfs(const Config& cfg, const std::string& path, const std::string& h_path) {
  ToricPair p = load_pair(path);
  TDivisor h = h_path.empty() ? default_ample(p.X()) : io::divisor_from_json(io::read_file(h_path), p.X().num_rays());
  FiberSpace fs = mori_fiber_space(p, h);
  std::cout << "c = " << fs.c.to_string() << "\n";
  print_trace(fs.trace);
  write_trace(cfg, io::to_json(fs.trace));
  return 0;
}

int cmd_explore(const std::string& path, const std::string& eps, const std::vector<std::string>& dirs) {
  ToricPair p = load_pair(path);
  std::vector<TDivisor> ds;
  for (const auto& d : dirs) ds.push_back(io::divisor_from_json(io::read_file(d), p.X().num_rays()));
  Scalar e = Scalar::parse(eps);
  if (!e.is_rational()) fail("InvalidInput", ErrorKind::Input, "eps must be rational");
  ModelSet ms = finiteness_explorer(p, ds, e.rational_part());
  std::cout << "models: " << ms.models.size() << "\n";
  for (std::size_t i = 0; i < ms.models.size(); ++i) {
    print_fan(*ms.models[i].fan, "model " + std::to_string(i));
    std::cout << "  witnesses: " << ms.models[i].witnesses.size() << ", first (";
    const auto& w = ms.models[i].witnesses.front();
    for (std::size_t k = 0; k < w.size(); ++k) std::cout << (k ? ", " : "") << w[k].get_str();
    std::cout << ")\n";
  }
  return 0;
}

int verdict_code(FgVerdict v) { return v == FgVerdict::FG ? 0 : exit_code(ErrorKind::Cap); }

int cmd_saturate(const Config& cfg, const std::string& path) {
  CurveAlgebraInstance inst = io::instance_from_json(io::read_file(path));
  const int window = cfg.cap.window ? cfg.cap.window : inst.horizon();
  SaturationReport rep = saturation_check(inst, window);
  if (!rep.saturated) {
    std::cout << "not saturated: (i, j) = (" << rep.witness->first << ", " << rep.witness->second << ")\n";
    if (inst.d && !inst.d->is_rational()) {
      RationalityCertificate c = rationality_certificate(inst);
      std::cout << "IrrationalWitness j = " << c.j << " (bound " << c.bound.get_str() << ")\n";
    }
    std::cout << "verdict: Unknown\n";
    return verdict_code(FgVerdict::Unknown);
  }
  SaturationVerdict v = fg_from_saturation_semiample(inst, window);
  std::cout << "saturated; d = " << (v.d ? v.d->to_string() : "?") << "; " << to_string(v.verdict) << "\n";
  if (v.preconditions) std::cout << "stabilized at i = " << v.stabilized_at << "\n";
  return verdict_code(v.verdict);
}

int cmd_rationality(const std::string& path) {
  CurveAlgebraInstance inst = io::instance_from_json(io::read_file(path));
  RationalityCertificate c = rationality_certificate(inst);
  if (c.rational) std::cout << "Rational(" << c.d.to_string() << ", j = " << c.j << ")\n";
  else std::cout << "IrrationalWitness(j = " << c.j << ", bound = " << c.bound.get_str() << ")\n";
  return 0;
}

int cmd_truncate(const Config& cfg, const std::string& path, int k) {
  GradedSemigroup s = io::semigroup_from_json(io::read_file(path));
  const int bound = cfg.cap.degree ? cfg.cap.degree : 12;
  TruncationReport rep = truncation_fg(s, k, bound);
  auto degrees = [](const FgCertificate& c) {
    std::vector<int> d;
    for (const auto& g : c.generators) d.push_back(g.first);
    return ints(d);
  };
  std::cout << "R: " << to_string(rep.full.verdict) << ", generator degrees " << degrees(rep.full) << "\n";
  std::cout << "R_(" << k << "): " << to_string(rep.truncated.verdict) << ", generator degrees "
            << degrees(rep.truncated) << "\n";
  std::cout << "module generators over R_(" << k << ") in degrees " << ints(rep.module_generator_degrees) << "\n";
  if (rep.full.verdict == FgVerdict::Unknown) std::cout << "new indecomposables per degree: " << ints(rep.full.new_generators) << "\n";
  std::cout << (rep.agree ? "verdicts agree" : "verdicts differ") << "\n";
  if (!rep.agree) return exit_code(ErrorKind::Invariant);
  return verdict_code(rep.full.verdict);
}

int cmd_restricted(const std::string& path, int s, int m_max) {
  ToricPair p = load_pair(path);
  AdjointAlgebraModel m = restricted_algebra(p, s, m_max);
  std::cout << "k = " << m.k.get_str() << ", c = " << m.c << ", N = " << m.n.to_string() << "\n";
  std::cout << "component sizes:";
  for (long long x : m.component_sizes) std::cout << " " << x;
  std::cout << "\n";
  std::cout << "Theta limit: " << m.theta_limit.to_string() << "\n";
  std::cout << "restricted algebra: " << to_string(m.certificate.verdict) << " (" << m.certificate.generators.size()
            << " generators, bound " << m.certificate.bound << ")\n";
  std::cout << "section ring of N: " << to_string(m.full_certificate.verdict) << " ("
            << m.full_certificate.generators.size() << " generators, bound " << m.full_certificate.bound << ")\n";
  ContractionResult c = contract(p, m.ray);
  ToricPair flipped = flip(p, c);
  std::cout << "Proj fan equals the flip: " << (same_fan(flipped.X(), *m.proj_fan) ? "yes" : "no") << "\n";
  return verdict_code(m.certificate.verdict);
}

int cmd_diophantine(const std::string& path, const std::string& div_path, const std::string& eps) {
  io::Json j = io::read_file(path);
  Fan f = j.contains("fan") ? io::fan_from_json(j.at("fan")) : io::fan_from_json(j);
  TDivisor d = io::divisor_from_json(io::read_file(div_path), f.num_rays());
  DiophantineGap g = diophantine_gap(f, d, Scalar::parse(eps));
  std::cout << "j = " << g.j << ", M = " << ints(g.m) << ", gap = " << g.gap.to_string() << " ~ " << g.gap.to_double()
            << "\n";
  return 0;
}

struct SuiteRow {
  int index;
  std::uint64_t seed;
  int rays;
  std::size_t steps;
  std::string outcome;
  std::string failure;
};

SuiteRow suite_case(int index, std::uint64_t seed, int dim) {
  SuiteRow row{index, seed, 0, 0, "-", ""};
  Rng rng(seed);
  FanPtr f = make_fan(random_fan(rng, dim, dim == 2 ? 8 : 12));
  row.rays = f->num_rays();
  ToricPair p = random_klt_pair(rng, f);
  try {
    TDivisor h = default_ample(*f);
    MMPTrace tr = mmp_with_scaling(p, h, nef_start(p, h));
    row.steps = tr.steps.size();
    row.outcome = to_string(tr.outcome);
    if (tr.outcome == Outcome::Aborted) row.failure = "aborted: " + tr.reason;
    const ToricPair& fin = tr.final_pair();
    if (row.failure.empty() && tr.outcome == Outcome::MinimalModel && !is_nef(fin.X(), log_canonical_class(fin)))
      row.failure = "K+Delta not nef on the minimal model";
    if (row.failure.empty() && tr.outcome == Outcome::MoriFiberSpace &&
        tr.steps.back().action.kind != ContractionKind::Fibering)
      row.failure = "no fibering step recorded";
    if (row.failure.empty())
      if (auto e = verify_scaling_trace(tr)) row.failure = *e;
    for (const auto& s : tr.steps)
      if (row.failure.empty())
        if (auto e = check_discrepancy_monotone(s)) row.failure = *e;
    if (row.failure.empty()) {
      io::Json j = io::to_json(tr);
      if (io::to_json(io::trace_from_json(io::Json::parse(j.dump()))) != j) row.failure = "trace does not round-trip";
    }
    if (row.failure.empty() && dim == 2) {
      MMPTrace mt = mori_mmp(p, Strategy::parse("divisorial-first"));
      if (mt.outcome != tr.outcome) row.failure = "mori and scale disagree on the outcome";
    }
  } catch (const Error& e) {
    row.failure = e.what();
  }
  return row;
}

int cmd_suite(const Config& cfg, int count, int dim) {
  if (dim != 2 && dim != 3) fail("UnsupportedDimension", ErrorKind::Input, "suite dimension must be 2 or 3");
  if (count < 0) fail("InvalidInput", ErrorKind::Input, "count must be nonnegative");
  std::cout << "case  seed  dim  rays  steps  outcome  status\n";
  int failed = 0;
  std::vector<SuiteRow> rows;
  for (int i = 0; i < count; ++i) {
    SuiteRow r = suite_case(i, cfg.seed + static_cast<std::uint64_t>(i), dim);
    std::cout << r.index << "  " << r.seed << "  " << dim << "  " << r.rays << "  " << r.steps << "  " << r.outcome
              << "  " << (r.failure.empty() ? "pass" : "FAIL") << "\n";
    if (!r.failure.empty()) {
      ++failed;
      std::cout << "  " << r.failure << "\n  reproduce: toricmmp suite --seed " << r.seed << " --count 1 --dim " << dim
                << "\n";
    }
  }
  std::cout << "passed " << count - failed << "/" << count << "\n";
  return failed ? exit_code(ErrorKind::Invariant) : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact toric minimal model program"};
  app.require_subcommand(1);
  app.fallthrough();
  Config cfg;
  app.add_option("--seed", cfg.seed, "Seed for randomized strategies and the suite");
  app.add_option("--trace", cfg.trace, "Write a JSON trace or report to this file");
  app.add_option("--caps", cfg.caps, "Caps as key=value: steps, window, degree")->delimiter(',');

  std::string file, h_path, t0, strategy = "first", eps, div_path;
  std::vector<std::string> dirs;
  int k = 2, s_ray = 0, m_max = 4, count = 10, dim = 2;

  auto* validate = app.add_subcommand("validate", "Parse a fan or pair file and report its invariants");
  validate->add_option("file", file)->required();
  auto* mori = app.add_subcommand("mori", "Run the MMP choosing negative extremal rays by a strategy");
  mori->add_option("file", file)->required();
  mori->add_option("--strategy", strategy, "first-critical, divisorial-first, random, interactive");
  auto* scale = app.add_subcommand("scale", "Run the MMP with scaling of H");
  scale->add_option("file", file)->required();
  scale->add_option("--H", h_path, "Divisor file (default: a fixed ample class)");
  scale->add_option("--t0", t0, "Starting value (default: the nef threshold of H)");
  auto* bend = app.add_subcommand("bend", "Run the bending pipeline to a minimal model");
  bend->add_option("file", file)->required();
  auto* mfs = app.add_subcommand("mfs", "Find the Mori fiber space threshold c of H");
  mfs->add_option("file", file)->required();
  mfs->add_option("--H", h_path, "Divisor file (default: a fixed ample class)");
  auto* explore = app.add_subcommand("explore", "Minimal models over a cube of boundaries");
  explore->add_option("file", file)->required();
  explore->add_option("--eps", eps)->required();
  explore->add_option("--dirs", dirs)->required();

  auto* algebra = app.add_subcommand("algebra", "Finite generation toolkit");
  algebra->require_subcommand(1);
  auto* saturate = algebra->add_subcommand("saturate", "Saturation and fg verdict of a curve instance");
  saturate->add_option("file", file)->required();
  auto* rationality = algebra->add_subcommand("rationality", "Rationality certificate of a curve instance");
  rationality->add_option("file", file)->required();
  auto* truncate = algebra->add_subcommand("truncate", "Compare fg of an algebra and its truncation");
  truncate->add_option("file", file)->required();
  truncate->add_option("--k", k);
  auto* restricted = algebra->add_subcommand("restricted", "Restricted algebra of a pl flip");
  restricted->add_option("file", file)->required();
  restricted->add_option("--S", s_ray)->required();
  restricted->add_option("--m-max", m_max);
  auto* dioph = algebra->add_subcommand("diophantine", "Free approximation of an irrational semiample class");
  dioph->add_option("file", file, "Fan or pair file")->required();
  dioph->add_option("--divisor", div_path)->required();
  dioph->add_option("--eps", eps)->required();

  auto* suite = app.add_subcommand("suite", "Randomized regression over generated pairs");
  suite->add_option("--count", count);
  suite->add_option("--dim", dim);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_code(ErrorKind::Input);
  }

  try {
    cfg.cap = parse_caps(cfg.caps);
    if (*validate) return cmd_validate(file);
    if (*mori) return cmd_mori(cfg, file, strategy);
    if (*scale) return cmd_scale(cfg, file, h_path, t0);
    if (*bend) return cmd_bend(cfg, file);
    if (*mfs) return cmd_mfs(cfg, file, h_path);
    if (*explore) return cmd_explore(file, eps, dirs);
    if (*saturate) return cmd_saturate(cfg, file);
    if (*rationality) return cmd_rationality(file);
    if (*truncate) return cmd_truncate(cfg, file, k);
    if (*restricted) return cmd_restricted(file, s_ray, m_max);
    if (*dioph) return cmd_diophantine(file, div_path, eps);
    if (*suite) return cmd_suite(cfg, count, dim);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: ParseError: " << e.what() << "\n";
    return exit_code(ErrorKind::Input);
  }
  return 0;
}
