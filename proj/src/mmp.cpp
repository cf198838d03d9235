#include "toricmmp/mmp.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "toricmmp/error.hpp"
#include "toricmmp/lp.hpp"
#include "toricmmp/suite.hpp"

namespace toricmmp {

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::MinimalModel: return "MinimalModel";
    case Outcome::MoriFiberSpace: return "MoriFiberSpace";
    case Outcome::Aborted: return "Aborted";
  }
  return "?";
}

std::string to_string(Strategy::Kind k) {
  switch (k) {
    case Strategy::Kind::FirstCritical: return "first-critical";
    case Strategy::Kind::DivisorialFirst: return "divisorial-first";
    case Strategy::Kind::Random: return "random";
    case Strategy::Kind::Interactive: return "interactive";
  }
  return "?";
}

Strategy Strategy::parse(const std::string& name, std::uint64_t seed) {
  Strategy s;
  s.seed = seed;
  if (name == "first-critical") s.kind = Kind::FirstCritical;
  else if (name == "divisorial-first") s.kind = Kind::DivisorialFirst;
  else if (name == "random") s.kind = Kind::Random;
  else if (name == "interactive") s.kind = Kind::Interactive;
  else fail("InvalidInput", ErrorKind::Input, "unknown strategy " + name);
  return s;
}

int default_step_cap(const Fan& f) {
  Integer b;
  mpz_bin_uiui(b.get_mpz_t(), f.num_rays(), f.rank());
  b *= 10;
  return b.fits_sint_p() ? static_cast<int>(b.get_si()) : 1 << 30;
}

namespace {

int scaling_order(ContractionKind k) {
  switch (k) {
    case ContractionKind::Fibering: return 0;
    case ContractionKind::Divisorial: return 1;
    case ContractionKind::Flipping: return 2;
  }
  return 3;
}

int divisorial_first_order(ContractionKind k) {
  switch (k) {
    case ContractionKind::Divisorial: return 0;
    case ContractionKind::Flipping: return 1;
    case ContractionKind::Fibering: return 2;
  }
  return 3;
}

ToricPair apply_action(const ToricPair& p, const ContractionResult& c) {
  if (c.kind == ContractionKind::Divisorial) return apply_divisorial(p, c);
  if (c.kind == ContractionKind::Flipping) return flip(p, c);
  return p;
}

TDivisor transport_step(const TDivisor& d, const ContractionResult& c) {
  return c.removed_ray ? drop_ray(d, *c.removed_ray) : d;
}

std::vector<ContractionResult> classify_all(const Fan& f, const std::vector<CurveClass>& rays) {
  std::vector<ContractionResult> out;
  for (const auto& r : rays) out.push_back(classify_ray(f, r));
  return out;
}

int step_cap_or_default(int cap, const Fan& f) { return cap > 0 ? cap : default_step_cap(f); }

}  // namespace

MMPTrace mori_mmp(const ToricPair& p, const Strategy& strategy, int step_cap) {
  step_cap = step_cap_or_default(step_cap, p.X());
  MMPTrace tr;
  tr.initial = p;
  Rng rng(strategy.seed);
  ToricPair cur = p;
  while (true) {
    auto rays = negative_rays(cur);
    if (rays.empty()) {
      tr.outcome = Outcome::MinimalModel;
      return tr;
    }
    if (static_cast<int>(tr.steps.size()) >= step_cap) {
      tr.outcome = Outcome::Aborted;
      tr.reason = "StepCap";
      return tr;
    }
    auto cands = classify_all(cur.X(), rays);
    int pick = 0;
    switch (strategy.kind) {
      case Strategy::Kind::FirstCritical: break;
      case Strategy::Kind::DivisorialFirst:
        for (int i = 1; i < static_cast<int>(cands.size()); ++i)
          if (divisorial_first_order(cands[i].kind) < divisorial_first_order(cands[pick].kind)) pick = i;
        break;
      case Strategy::Kind::Random:
        pick = static_cast<int>(std::uniform_int_distribution<std::size_t>(0, cands.size() - 1)(rng));
        break;
      case Strategy::Kind::Interactive:
        if (!strategy.choose) fail("InvalidInput", ErrorKind::Input, "interactive strategy without a chooser");
        pick = strategy.choose(cur, cands);
        if (pick < 0 || pick >= static_cast<int>(cands.size()))
          fail("InvalidInput", ErrorKind::Input, "ray choice out of range");
        break;
    }
    MMPStep st{cur, std::nullopt, Scalar(0), cands[pick].ray, cands[pick], cur};
    if (cands[pick].kind == ContractionKind::Fibering) {
      tr.steps.push_back(std::move(st));
      tr.outcome = Outcome::MoriFiberSpace;
      return tr;
    }
    st.after = apply_action(cur, cands[pick]);
    cur = st.after;
    tr.steps.push_back(std::move(st));
  }
}

Scalar nef_start(const ToricPair& p, const TDivisor& h) {
  TDivisor l = log_canonical_class(p);
  Scalar t(0);
  for (const auto& c : mori_cone(p.X())) {
    Scalar lc = intersection(l, c), hc = intersection(h, c);
    if (hc.sign() > 0) {
      if (-lc / hc > t) t = -lc / hc;
    } else if (lc.sign() < 0) {
      fail("NotAmple", ErrorKind::Precondition, "no multiple of H makes K+Delta+tH nef");
    }
  }
  return t;
}

MMPTrace mmp_with_scaling(const ToricPair& p, const TDivisor& h, const Scalar& t0, int step_cap) {
  step_cap = step_cap_or_default(step_cap, p.X());
  if (t0.sign() < 0) fail("InvalidInput", ErrorKind::Input, "t0 must be nonnegative");
  MMPTrace tr;
  tr.initial = p;
  tr.h = h;
  tr.t0 = t0;
  ToricPair cur = p;
  TDivisor hc = h;
  Scalar t = t0;
  while (true) {
    Threshold th = nef_threshold(cur, hc, t);
    if (th.t.sign() == 0) {
      tr.outcome = Outcome::MinimalModel;
      return tr;
    }
    if (static_cast<int>(tr.steps.size()) >= step_cap) {
      tr.outcome = Outcome::Aborted;
      tr.reason = "StepCap";
      return tr;
    }
    auto cands = classify_all(cur.X(), th.critical);
    int pick = 0;
    for (int i = 1; i < static_cast<int>(cands.size()); ++i) {
      int a = scaling_order(cands[i].kind), b = scaling_order(cands[pick].kind);
      if (a < b || (a == b && cands[i].ray.wall < cands[pick].ray.wall)) pick = i;
    }
    MMPStep st{cur, hc, th.t, cands[pick].ray, cands[pick], cur};
    if (cands[pick].kind == ContractionKind::Fibering) {
      tr.steps.push_back(std::move(st));
      tr.outcome = Outcome::MoriFiberSpace;
      return tr;
    }
    st.after = apply_action(cur, cands[pick]);
    cur = st.after;
    hc = transport_step(hc, cands[pick]);
    t = th.t;
    tr.steps.push_back(std::move(st));
  }
}

std::optional<std::string> verify_scaling_trace(const MMPTrace& trace) {
  if (!trace.h || !trace.t0) return std::string("not a scaling trace");
  Scalar prev = *trace.t0;
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const MMPStep& s = trace.steps[i];
    const std::string at = "step " + std::to_string(i);
    if (!s.h) return at + ": missing scaling divisor";
    if (s.t > prev) return at + ": t increased";
    prev = s.t;
    TDivisor before = log_canonical_class(s.before) + s.t * *s.h;
    if (!is_nef(s.before.X(), before)) return at + ": K+Delta+tH not nef before the step";
    if (!intersection(before, s.ray).is_zero()) return at + ": the ray is not critical";
    if (s.action.kind == ContractionKind::Fibering) continue;
    TDivisor after = log_canonical_class(s.after) + s.t * transport_step(*s.h, s.action);
    if (!is_nef(s.after.X(), after)) return at + ": K+Delta+tH not nef after the step";
  }
  if (trace.outcome == Outcome::MinimalModel && !is_nef(trace.final_pair().X(), log_canonical_class(trace.final_pair())))
    return std::string("final model: K+Delta not nef");
  return std::nullopt;
}

namespace {

bool centered_in(const Fan& f, const IntVec& v, const std::vector<int>& locus) {
  auto loc = f.locate(v);
  if (!loc) return false;
  const Cone& c = f.max_cones()[loc->cone];
  for (int r : locus) {
    auto it = std::find(c.begin(), c.end(), r);
    if (it == c.end() || loc->coords[it - c.begin()] == 0) return false;
  }
  return true;
}

}  // namespace

std::optional<std::string> check_discrepancy_monotone(const MMPStep& step) {
  if (step.action.kind != ContractionKind::Flipping) return std::nullopt;
  std::set<IntVec> vals;
  for (const auto& v : valuation_test_set(step.before.X())) vals.insert(v);
  for (const auto& v : valuation_test_set(step.after.X())) vals.insert(v);
  for (const auto& v : vals) {
    Scalar a = log_discrepancy(step.before, v), b = log_discrepancy(step.after, v);
    std::string where = "v = (";
    for (std::size_t i = 0; i < v.size(); ++i) where += (i ? "," : "") + std::to_string(v[i]);
    where += ")";
    if (b < a) return "A(v) decreases at " + where + ": " + a.to_string() + " -> " + b.to_string();
    bool exceptional = centered_in(step.before.X(), v, step.action.j_minus) ||
                       centered_in(step.after.X(), v, step.action.j_plus);
    if (exceptional && b == a) return "A(v) does not increase at " + where + " centered in the flipping locus";
  }
  return std::nullopt;
}

std::vector<int> surviving_rays(const MMPTrace& trace) {
  std::vector<int> idx(trace.initial.X().num_rays());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
  for (const auto& s : trace.steps)
    if (s.action.removed_ray) idx.erase(idx.begin() + *s.action.removed_ray);
  return idx;
}

TDivisor transport(const MMPTrace& trace, const TDivisor& d) {
  TDivisor out(0);
  for (int i : surviving_rays(trace)) out.coeffs.push_back(d[i]);
  return out;
}

namespace {

std::set<IntVec> star_rays(const Fan& f, int s) {
  std::set<IntVec> out;
  for (int x = 0; x < f.num_rays(); ++x) {
    if (x == s) continue;
    Cone c{std::min(s, x), std::max(s, x)};
    if (f.has_cone(c)) out.insert(f.ray(x));
  }
  return out;
}

}  // namespace

SpecialTermination special_termination_report(const MMPTrace& trace, int s) {
  const ToricPair& p0 = trace.initial;
  if (s < 0 || s >= p0.X().num_rays()) fail("SNotInModel", ErrorKind::Precondition, "S is not a ray of the model");
  if (p0.boundary[s] != Scalar(1)) fail("SNotInModel", ErrorKind::Precondition, "the coefficient of S is not 1");
  SpecialTermination out;
  int cur = s;
  bool alive = true;
  for (const auto& st : trace.steps) {
    bool incident = false, iso = true;
    if (alive) {
      const Fan& f = st.before.X();
      const auto& jm = st.action.j_minus;
      if (st.action.kind == ContractionKind::Fibering) {
        incident = true;
      } else {
        Cone c = jm;
        if (std::find(c.begin(), c.end(), cur) == c.end()) c.push_back(cur);
        std::sort(c.begin(), c.end());
        incident = f.has_cone(c);
      }
      auto before = star_rays(f, cur);
      if (st.action.removed_ray && *st.action.removed_ray == cur) {
        alive = false;
        iso = false;
      } else if (st.action.kind != ContractionKind::Fibering) {
        if (st.action.removed_ray && *st.action.removed_ray < cur) --cur;
        iso = before == star_rays(st.after.X(), cur);
      }
    }
    out.incident.push_back(incident);
    out.iso_in_codim_one.push_back(iso);
  }
  for (std::size_t i = 0; i < out.incident.size(); ++i)
    if (out.incident[i]) out.n = static_cast<int>(i) + 1;
  return out;
}

Augmented useless_divisor_augment(const ToricPair& p) {
  auto bl = stable_base_locus(p.X(), log_canonical_class(p));
  if (bl.all) fail("AllBaseLocus", ErrorKind::Precondition, "K+Delta has no effective multiple");
  Augmented out{p, TDivisor(p.X().num_rays())};
  for (int r : bl.rays) {
    out.delta_prime[r] = Scalar(1) - p.boundary[r];
    out.pair.boundary[r] = Scalar(1);
  }
  return out;
}

namespace {

struct RationalParts {
  std::optional<IntVec> mobile;  // empty when the mobile part is numerically trivial
  Rational r;
  TDivisor fixed;
  Integer level;
};

bool numerically_trivial(const Fan& f, const IntVec& d) {
  for (const auto& c : mori_cone(f))
    if (!intersection(TDivisor::from_ints(d), c).is_zero()) return false;
  return true;
}

std::optional<RationalParts> decompose_rational(const Fan& f, const TDivisor& l, const std::set<int>& allowed) {
  auto bl = stable_base_locus(f, l);
  if (bl.all) return std::nullopt;
  Integer base = bl.level > 0 ? bl.level : denominator_lcm(l);
  for (int j = 0; j <= 6; ++j) {
    Integer m = base << j;
    IntVec d = (Scalar(m) * l).to_ints();
    MobFix mf;
    try {
      mf = mobile_fixed(f, d);
    } catch (const Error&) {
      continue;
    }
    if (!is_free(f, mf.mob)) continue;
    bool inside = true;
    for (int r = 0; r < f.num_rays(); ++r)
      if (mf.fix[r] != 0 && !allowed.count(r)) inside = false;
    if (!inside) continue;
    RationalParts out;
    out.level = m;
    out.r = Rational(1) / Rational(m);
    out.fixed = Scalar(out.r) * TDivisor::from_ints(mf.fix);
    if (!numerically_trivial(f, mf.mob)) out.mobile = mf.mob;
    return out;
  }
  return std::nullopt;
}

void add_part(Decomposition& d, const Scalar& r, const IntVec& m) {
  for (std::size_t i = 0; i < d.mobile.size(); ++i)
    if (d.mobile[i] == m) {
      d.r[i] += r;
      return;
    }
  d.r.push_back(r);
  d.mobile.push_back(m);
}

void sort_parts(Decomposition& d) {
  std::vector<std::size_t> idx(d.r.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return d.r[a] < d.r[b]; });
  Decomposition s;
  for (auto i : idx) {
    s.r.push_back(d.r[i]);
    s.mobile.push_back(d.mobile[i]);
  }
  d.r = s.r;
  d.mobile = s.mobile;
}

}  // namespace

Decomposition decompose(const ToricPair& p) {
  const Fan& f = p.X();
  TDivisor l = log_canonical_class(p);
  auto bl = stable_base_locus(f, l);
  if (bl.all) fail("NotPseudoEffective", ErrorKind::Precondition, "K+Delta is not pseudo-effective");
  std::set<int> allowed(bl.rays.begin(), bl.rays.end());
  for (int r : round_down_support(p)) allowed.insert(r);
  Decomposition out;
  if (l.is_rational()) {
    auto parts = decompose_rational(f, l, allowed);
    if (!parts) fail("DecompositionFailed", ErrorKind::Cap, "no level m = k*2^j, j <= 6, with a free mobile part");
    out.fixed = parts->fixed;
    out.levels.push_back(parts->level);
    if (parts->mobile) add_part(out, Scalar(parts->r), *parts->mobile);
    return out;
  }
  long root = 0;
  for (const auto& c : l.coeffs)
    if (!c.is_rational()) root = c.root();
  TDivisor a(f.num_rays()), b(f.num_rays());
  for (int r = 0; r < f.num_rays(); ++r) {
    a[r] = Scalar(l[r].rational_part());
    b[r] = Scalar(l[r].irrational_part());
  }
  const Scalar s = Scalar::sqrt_of(root);
  auto cf = continued_fraction(s, 24);
  Integer h0(1), h1(cf[0]), k0(0), k1(1);
  std::vector<Rational> conv{Rational(h1, k1)};
  for (std::size_t i = 1; i < cf.size(); ++i) {
    Integer h2 = cf[i] * h1 + h0, k2 = cf[i] * k1 + k0;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    Rational c(h1, k1);
    c.canonicalize();
    conv.push_back(c);
  }
  for (std::size_t i = 0; i + 1 < conv.size(); ++i) {
    Rational lo = std::min(conv[i], conv[i + 1]), hi = std::max(conv[i], conv[i + 1]);
    if (!(Scalar(lo) < s && s < Scalar(hi))) continue;
    auto lo_parts = decompose_rational(f, a + Scalar(lo) * b, allowed);
    auto hi_parts = decompose_rational(f, a + Scalar(hi) * b, allowed);
    if (!lo_parts || !hi_parts) continue;
    Scalar lambda = (Scalar(hi) - s) / Scalar(hi - lo);
    Scalar mu = Scalar(1) - lambda;
    Decomposition d;
    d.fixed = lambda * lo_parts->fixed + mu * hi_parts->fixed;
    d.levels = {lo_parts->level, hi_parts->level};
    if (lo_parts->mobile) add_part(d, lambda * Scalar(lo_parts->r), *lo_parts->mobile);
    if (hi_parts->mobile) add_part(d, mu * Scalar(hi_parts->r), *hi_parts->mobile);
    sort_parts(d);
    return d;
  }
  fail("DecompositionFailed", ErrorKind::Cap, "no bracketing rational approximations decompose within the bound");
}

TDivisor default_ample(const Fan& f) {
  Rng rng(f.canonical_hash());
  return TDivisor::from_ints(generic_ample(f, rng));
}

namespace {

struct Stage {
  const ToricPair& pair;
  TDivisor h;
  Scalar t0;
  std::vector<Scalar> r;       // per mobile ghost
  std::size_t first_mobile;    // index of the first mobile ghost
  TDivisor fplus;
};

// Runs one scaling sub-run and checks the support condition on every step.
MMPTrace run_stage(const Stage& s, int step_cap, int& flips_checked) {
  MMPTrace tr = mmp_with_scaling(s.pair, s.h, s.t0, step_cap);
  if (tr.outcome == Outcome::Aborted) fail("StepCap", ErrorKind::Cap, "bending sub-run hit the step cap");
  if (tr.outcome == Outcome::MoriFiberSpace)
    fail("UnexpectedFibration", ErrorKind::Invariant, "a bending sub-run ended in a fibration");
  TDivisor fplus = s.fplus;
  for (const auto& st : tr.steps) {
    const ToricPair& q = st.before;
    TDivisor fs = fplus;
    bool ghost_negative = false;
    for (std::size_t i = s.first_mobile; i < q.ghosts.size(); ++i) {
      if (q.ghosts[i].weight != Scalar(1)) continue;
      TDivisor m = TDivisor::from_ints(q.ghosts[i].cls);
      fs += (s.r[i - s.first_mobile] + Scalar(1)) * m;
      if (intersection(m, st.ray).sign() < 0) ghost_negative = true;
    }
    bool meets_floor = ghost_negative;
    for (int j : st.action.j_minus)
      if (q.boundary[j] == Scalar(1)) meets_floor = true;
    if (intersection(fs, st.ray).sign() >= 0 || !meets_floor) {
      if (st.action.kind == ContractionKind::Flipping)
        fail("ScalingToBoundary", ErrorKind::Invariant, "a flipped locus is not inside the support of F");
    }
    if (st.action.kind == ContractionKind::Flipping) ++flips_checked;
    fplus = transport_step(fplus, st.action);
  }
  return tr;
}

}  // namespace

BendingResult bending(const ToricPair& p, int step_cap) {
  const Fan& x = p.X();
  if (!is_klt(classify_singularities(p))) fail("NotKlt", ErrorKind::Precondition, "the pair is not klt");
  if (!is_big(x, boundary_class(p))) fail("NotBig", ErrorKind::Precondition, "the boundary is not big");
  TDivisor l = log_canonical_class(p);
  if (!is_pseudo_effective(x, l)) fail("NotPseudoEffective", ErrorKind::Precondition, "K+Delta is not pseudo-effective");
  BendingResult res;
  res.final_pair = p;
  res.delta_prime = TDivisor(x.num_rays());
  if (is_nef(x, l)) {
    res.nef = true;
    return res;
  }
  res.decomposition = decompose(p);
  const Decomposition& dec = res.decomposition;
  Augmented aug = useless_divisor_augment(p);
  res.delta_prime = aug.delta_prime;
  TDivisor fplus = dec.fixed + aug.delta_prime;
  for (int r = 0; r < x.num_rays(); ++r)
    if (!fplus[r].is_zero() && aug.pair.boundary[r] != Scalar(1))
      fail("SupportCondition", ErrorKind::Invariant, "supp F+ is not inside the round-down of Delta+");

  ToricPair cur = aug.pair;
  const std::size_t first = cur.ghosts.size();
  const std::size_t k = dec.r.size();
  for (const auto& m : dec.mobile) cur.ghosts.push_back(make_ghost(x, m, Scalar(1)));
  std::vector<int> orig(x.num_rays());
  for (int i = 0; i < x.num_rays(); ++i) orig[i] = i;

  auto run = [&](const TDivisor& h, const Scalar& t0) {
    if (t0.sign() == 0) return;
    Stage st{cur, h, t0, dec.r, first, fplus};
    MMPTrace tr = run_stage(st, step_cap, res.flips_checked);
    std::vector<int> keep = surviving_rays(tr);
    std::vector<int> next;
    for (int i : keep) next.push_back(orig[i]);
    orig = next;
    fplus = transport(tr, fplus);
    cur = tr.final_pair();
    res.stages.push_back(std::move(tr));
  };
  auto mobile_sum = [&](std::size_t upto) {
    TDivisor g(cur.X().num_rays());
    for (std::size_t i = 0; i < upto; ++i) g += dec.r[i] * TDivisor::from_ints(cur.ghosts[first + i].cls);
    return g;
  };

  {
    TDivisor h = default_ample(cur.X());
    run(h, nef_start(cur, h));
  }
  for (std::size_t j = 1; j < k; ++j) {
    for (std::size_t i = 0; i < k; ++i) cur.ghosts[first + i].weight = i < j ? dec.r[i] / dec.r[j] : Scalar(1);
    run(mobile_sum(j), Scalar(1) / dec.r[j - 1] - Scalar(1) / dec.r[j]);
  }
  if (k > 0) {
    for (std::size_t i = 0; i < k; ++i) cur.ghosts[first + i].weight = Scalar(0);
    run(mobile_sum(k), Scalar(1) / dec.r[k - 1]);
  }

  ToricPair out = cur;
  out.ghosts.resize(first);
  for (std::size_t r = 0; r < orig.size(); ++r) out.boundary[r] -= res.delta_prime[orig[r]];
  res.final_pair = out;
  res.nef = is_nef(out.X(), log_canonical_class(out));
  if (!res.nef) fail("NotNefAfterStrip", ErrorKind::Invariant, "K+Delta is not nef on the output of bending");
  return res;
}

BendingResult bending_I(const ToricPair& p, int step_cap) {
  if (!log_canonical_class(p).is_rational())
    fail("InvalidInput", ErrorKind::Input, "bending_I needs rational coefficients");
  return bending(p, step_cap);
}

BendingResult bending_II(const ToricPair& p, int step_cap) { return bending(p, step_cap); }

MinimalModel minimal_model(const ToricPair& p) {
  BendingResult r = bending(p);
  return MinimalModel{r.final_pair, r};
}

namespace {

ToricPair pair_at(const ToricPair& p, const std::vector<TDivisor>& dirs, const std::vector<Rational>& w) {
  TDivisor b = p.boundary;
  for (std::size_t i = 0; i < dirs.size(); ++i) b += Scalar(w[i]) * dirs[i];
  return make_pair(p.fan, b, p.ghosts);
}

MMPTrace model_at(const ToricPair& q) {
  TDivisor h = default_ample(q.X());
  MMPTrace tr = mmp_with_scaling(q, h, nef_start(q, h));
  if (tr.outcome != Outcome::MinimalModel)
    fail("NotPseudoEffective", ErrorKind::Precondition, "a perturbed pair has no minimal model");
  return tr;
}

void add_model(ModelSet& set, const ToricPair& q, const std::vector<Rational>& w) {
  for (auto& m : set.models)
    if (isomorphic(*m.fan, q.X())) {
      m.witnesses.push_back(w);
      return;
    }
  set.models.push_back(ModelEntry{q.fan, q, {w}});
}

std::vector<Rational> lerp(const std::vector<Rational>& a, const std::vector<Rational>& b, const Rational& s) {
  std::vector<Rational> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + s * (b[i] - a[i]);
  return out;
}

// Closed interval of s in [0,1] on which the model of the trace stays nef for
// the pair at lerp(a, b, s).
std::pair<Rational, Rational> nef_interval(const MMPTrace& tr, const std::vector<TDivisor>& dirs,
                                           const std::vector<Rational>& a, const std::vector<Rational>& b,
                                           const Rational& s) {
  const ToricPair& q = tr.final_pair();
  TDivisor dir(tr.initial.X().num_rays());
  for (std::size_t i = 0; i < dirs.size(); ++i) dir += Scalar(b[i] - a[i]) * dirs[i];
  TDivisor slope = transport(tr, dir);
  TDivisor base = log_canonical_class(q);
  Rational lo(0), hi(1);
  for (const auto& c : mori_cone(q.X())) {
    // base.C + (s' - s) slope.C >= 0
    Rational bc = intersection(base, c).rational_part(), sc = intersection(slope, c).rational_part();
    if (sgn(sc) > 0) lo = std::max(lo, Rational(s - bc / sc));
    else if (sgn(sc) < 0) hi = std::min(hi, Rational(s - bc / sc));
  }
  return {lo, hi};
}

void sweep(const ToricPair& p, const std::vector<TDivisor>& dirs, const std::vector<Rational>& a,
           const std::vector<Rational>& b, ModelSet& out) {
  Rational s(0);
  while (true) {
    MMPTrace tr = model_at(pair_at(p, dirs, lerp(a, b, s)));
    auto [lo, hi] = nef_interval(tr, dirs, a, b, s);
    add_model(out, tr.final_pair(), lerp(a, b, s));
    if (hi >= 1) return;
    Rational next = (hi + 1) / 2;
    bool found = false;
    for (int depth = 0; depth < 60 && !found; ++depth) {
      MMPTrace nt = model_at(pair_at(p, dirs, lerp(a, b, next)));
      auto iv = nef_interval(nt, dirs, a, b, next);
      if (iv.first <= hi) {
        found = true;
        s = next;
      } else {
        next = (hi + next) / 2;
      }
    }
    if (!found) fail("ExplorerCap", ErrorKind::Cap, "no model found past a chamber wall");
  }
}

// Level 0 checks klt, level 1 bigness, level 2 pseudo-effectivity, so that
// the reported failure does not depend on the order of the points.
void check_cube_point(const ToricPair& p, const std::vector<TDivisor>& dirs, const std::vector<Rational>& w,
                      int level) {
  ToricPair q;
  try {
    q = pair_at(p, dirs, w);
  } catch (const Error&) {
    fail("NotKltInCube", ErrorKind::Precondition, "a perturbed coefficient leaves [0,1]");
  }
  if (level == 0 && !is_klt(classify_singularities(q)))
    fail("NotKltInCube", ErrorKind::Precondition, "a perturbed pair is not klt");
  if (level == 1 && !is_big(q.X(), boundary_class(q)))
    fail("NotBigInCube", ErrorKind::Precondition, "a perturbed boundary is not big");
  if (level == 2 && !is_pseudo_effective(q.X(), log_canonical_class(q)))
    fail("NotPseudoEffective", ErrorKind::Precondition, "a perturbed K+Delta is not pseudo-effective");
}

std::vector<std::vector<Rational>> cube_vertices(std::size_t r, const Rational& eps) {
  std::vector<std::vector<Rational>> out;
  for (std::size_t mask = 0; mask < (std::size_t(1) << r); ++mask) {
    std::vector<Rational> v(r);
    for (std::size_t i = 0; i < r; ++i) v[i] = (mask >> i) & 1 ? eps : Rational(-eps);
    out.push_back(v);
  }
  return out;
}

}  // namespace

ModelSet finiteness_explorer(const ToricPair& p, const std::vector<TDivisor>& directions, const Rational& eps) {
  const std::size_t r = directions.size();
  if (r > 3) fail("InvalidInput", ErrorKind::Input, "at most three directions");
  if (sgn(eps) <= 0) fail("InvalidInput", ErrorKind::Input, "eps must be positive");
  const std::vector<Rational> center(r, Rational(0));
  auto points = cube_vertices(r, eps);
  points.push_back(center);
  for (int level = 0; level < 3; ++level)
    for (const auto& v : points) check_cube_point(p, directions, v, level);
  points.pop_back();
  const auto& verts = points;
  ModelSet out;
  add_model(out, model_at(pair_at(p, directions, center)).final_pair(), center);
  if (r == 1) sweep(p, directions, verts[0], verts[1], out);
  for (std::size_t i = 0; i < verts.size() && r > 1; ++i)
    for (std::size_t bit = 0; bit < r; ++bit) {
      std::size_t j = i | (std::size_t(1) << bit);
      if (j != i) sweep(p, directions, verts[i], verts[j], out);
    }
  return out;
}

ModelSet grid_models(const ToricPair& p, const std::vector<TDivisor>& directions, const Rational& eps) {
  const std::size_t r = directions.size();
  const Rational step = eps / 8;
  ModelSet out;
  std::vector<int> idx(r, -8);
  while (true) {
    std::vector<Rational> w(r);
    for (std::size_t i = 0; i < r; ++i) w[i] = step * idx[i];
    add_model(out, model_at(pair_at(p, directions, w)).final_pair(), w);
    std::size_t i = 0;
    while (i < r && idx[i] == 8) idx[i++] = -8;
    if (i == r) break;
    ++idx[i];
  }
  return out;
}

bool models_subset(const ModelSet& a, const ModelSet& b) {
  for (const auto& m : a.models) {
    bool found = false;
    for (const auto& n : b.models)
      if (isomorphic(*m.fan, *n.fan)) found = true;
    if (!found) return false;
  }
  return true;
}

bool same_models(const ModelSet& a, const ModelSet& b) {
  return a.models.size() == b.models.size() && models_subset(a, b) && models_subset(b, a);
}

FiberSpace mori_fiber_space(const ToricPair& p, const TDivisor& h) {
  const Fan& f = p.X();
  TDivisor l = log_canonical_class(p);
  if (is_pseudo_effective(f, l))
    fail("AlreadyPseudoEffective", ErrorKind::Precondition, "K+Delta is already pseudo-effective");
  if (!is_ample(f, h)) fail("NotAmple", ErrorKind::Precondition, "H is not ample");
  lp::Problem<Scalar> prob;
  const int n = f.rank();
  prob.num_vars = n + 1;
  prob.nonneg.assign(n + 1, false);
  prob.nonneg[n] = true;
  for (int r = 0; r < f.num_rays(); ++r) {
    Vec<Scalar> row = to_field<Scalar>(f.ray(r));
    row.push_back(h[r]);
    prob.add(row, lp::Relation::GreaterEq, -l[r]);
  }
  prob.objective.assign(n + 1, Scalar(0));
  prob.objective[n] = Scalar(-1);
  auto res = lp::solve(prob);
  if (res.status != lp::Status::Optimal) fail("LPFailure", ErrorKind::Invariant, "threshold LP did not solve");
  FiberSpace out;
  out.c = res.x[n];
  out.trace = mmp_with_scaling(p, h, nef_start(p, h));
  if (out.trace.outcome != Outcome::MoriFiberSpace || out.trace.steps.back().t != out.c)
    fail("FiberSpaceMismatch", ErrorKind::Invariant, "the scaling run does not end in a fibration at t = c");
  return out;
}

std::vector<long long> hilbert_function(const Fan& f, const TDivisor& l, int degree) {
  Integer k = denominator_lcm(l);
  TDivisor n = Scalar(k) * l;
  std::vector<long long> out;
  for (int j = 0; j <= degree; ++j) out.push_back(count_lattice_points(section_polytope(f, Scalar(j) * n)));
  return out;
}

CanonicalRing section_ring(const Fan& f, const TDivisor& l) {
  if (!l.is_rational()) fail("InvalidInput", ErrorKind::Input, "section rings need rational classes");
  CanonicalRing out;
  out.k = denominator_lcm(l);
  TDivisor n = Scalar(out.k) * l;
  out.hilbert = hilbert_function(f, l, 20);
  RatVec bounds;
  for (const auto& c : n.coeffs) bounds.push_back(-c.rational_part());
  Integer den(1);
  auto verts = vertices<Rational>(f.rank(), f.rays(), bounds);
  if (verts.empty()) fail("NoSections", ErrorKind::Precondition, "the section polytope is empty");
  for (const auto& v : verts)
    for (const auto& x : v) den = lcm(den, Integer(x.get_den()));
  out.search_bound = static_cast<int>((f.rank() + 1) * den.get_si());
  const int top = 3 * out.search_bound;
  std::vector<std::set<IntVec>> elems(top + 1);
  for (int j = 0; j <= top; ++j) {
    auto pts = lattice_points(section_polytope(f, Scalar(j) * n));
    elems[j].insert(pts.begin(), pts.end());
  }
  std::vector<std::pair<int, IntVec>> gens;
  for (int j = 1; j <= out.search_bound; ++j)
    for (const auto& x : elems[j]) {
      bool decomposable = false;
      for (const auto& [dg, g] : gens) {
        IntVec rest(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) rest[i] = x[i] - g[i];
        if (elems[j - dg].count(rest)) {
          decomposable = true;
          break;
        }
      }
      if (!decomposable) gens.emplace_back(j, x);
    }
  out.num_generators = static_cast<int>(gens.size());
  for (const auto& g : gens) out.max_generator_degree = std::max(out.max_generator_degree, g.first);
  std::vector<std::set<IntVec>> reach(top + 1);
  reach[0].insert(IntVec(f.rank(), 0));
  out.verified = true;
  for (int j = 1; j <= top; ++j) {
    for (const auto& [dg, g] : gens) {
      if (dg > j) continue;
      for (const auto& y : reach[j - dg]) {
        IntVec z(y.size());
        for (std::size_t i = 0; i < y.size(); ++i) z[i] = y[i] + g[i];
        reach[j].insert(z);
      }
    }
    if (reach[j] != elems[j]) out.verified = false;
  }
  return out;
}

CanonicalRing canonical_ring_fg(const ToricPair& p) {
  MinimalModel mm = minimal_model(p);
  return section_ring(mm.pair.X(), log_canonical_class(mm.pair));
}

CoxRing cox_ring(const Fan& f) {
  CoxRing out;
  out.generators = f.num_rays();
  out.grading_rank = f.num_rays() - f.rank();
  RatMat u(f.rank(), RatVec(f.num_rays()));
  for (int r = 0; r < f.num_rays(); ++r)
    for (int i = 0; i < f.rank(); ++i) u[i][r] = Rational(static_cast<long>(f.ray(r)[i]));
  auto rel = nullspace(u, f.num_rays());
  out.degrees.assign(f.num_rays(), IntVec());
  for (const auto& v : rel) {
    IntVec pv = primitive_from_rational(v);
    for (int r = 0; r < f.num_rays(); ++r) out.degrees[r].push_back(pv[r]);
  }
  TDivisor anti(f.num_rays());
  for (auto& c : anti.coeffs) c = Scalar(1);
  out.fano = is_ample(f, anti);
  return out;
}

}  // namespace toricmmp
