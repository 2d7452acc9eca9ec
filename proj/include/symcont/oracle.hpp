#pragma once

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "symcont/piecewise.hpp"
#include "symcont/verdict.hpp"

namespace symcont {

/// Numeric falsifier. Sequences are h = c/n for a catalog of scales c and n
/// in the last decade [budget/10, budget]; membership and branch choice are
/// exact, only function values are floats. A family is a scale together
/// with the branch pair it selects, so congruence-split subsequences are
/// measured separately.
struct ProbeReport {
  Property property = Property::SC;
  FieldElement point;
  bool refuted = false;
  double gap = 0;       // SC: max family gap; WSC: min; WC: worst side
  std::string family;   // family achieving the reported gap
  long samples = 0;     // admissible samples examined
  bool admissible = false;
};

inline constexpr double kOracleThreshold = 1e-6;

namespace oracle_detail {

inline void collect_scales(const StructuredSet& s, std::vector<FieldElement>& out) {
  for (const auto& atom : s.atoms())
    if (const auto* g = std::get_if<GenSet>(&atom)) out.push_back(g->scale.abs());
}

inline void collect_radicand(const ExprPtr& e, int& d) {
  if (!e) return;
  if (e->kind == ExprKind::Const && !e->value.is_rational()) d = e->value.radicand();
  collect_radicand(e->lhs, d);
  collect_radicand(e->rhs, d);
}

inline int radicand_of(const PiecewiseFn& f, const std::vector<FieldElement>& scales) {
  int d = kDefaultRadicand;
  for (const auto& s : scales)
    if (!s.is_rational()) d = s.radicand();
  for (const auto& b : f.branches()) collect_radicand(b.expr, d);
  return d;
}

// Generator scales of f plus generic ones and a few seeded random scales.
inline std::vector<FieldElement> scale_catalog(const PiecewiseFn& f, unsigned long seed) {
  std::vector<FieldElement> scales;
  collect_scales(f.domain(), scales);
  for (const auto& b : f.branches())
    for (const auto& atom : b.region.atoms())
      if (const auto* in = std::get_if<InSet>(&atom)) collect_scales(in->set, scales);
  const int d = radicand_of(f, scales);
  const FieldElement rt = FieldElement::root(d);
  for (const auto& c : {FieldElement(1), rt, FieldElement(Rational(3, 2)), FieldElement(2) * rt})
    scales.push_back(c);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> num(1, 9), den(1, 7);
  for (int i = 0; i < 2; ++i)
    scales.push_back(FieldElement(Rational(num(rng), den(rng))) + FieldElement(Rational(num(rng), den(rng))) * rt);
  std::vector<FieldElement> out;
  for (const auto& s : scales)
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  return out;
}

// Indices in the last decade: three blocks of consecutive indices (every
// residue of a small modulus) plus a geometric spread for extrapolation.
inline std::vector<long> index_window(long budget) {
  const long hi = std::max<long>(budget, 100);
  const long lo = std::max<long>(hi / 10, 1);
  std::vector<long> n;
  for (long start : {hi - 63, (lo + hi) / 2, lo})
    for (long i = 0; i < 64; ++i) n.push_back(start + i);
  for (double x = static_cast<double>(lo); x <= static_cast<double>(hi); x *= 1.02)
    n.push_back(static_cast<long>(x));
  for (long base : {hi, hi / 2, hi / 4})
    for (long i = 0; i < 16; ++i) n.push_back(base - i);
  std::sort(n.begin(), n.end());
  n.erase(std::unique(n.begin(), n.end()), n.end());
  n.erase(std::remove_if(n.begin(), n.end(), [lo, hi](long k) { return k < lo || k > hi; }), n.end());
  return n;
}

struct Sample {
  double t;
  double value;
};

// Quadratic extrapolation to t = 0 from the samples nearest t0, 2t0, 4t0,
// where t0 is the smallest sampled t.
inline double extrapolate(std::vector<Sample> s) {
  if (s.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(s.begin(), s.end(), [](const Sample& x, const Sample& y) { return x.t < y.t; });
  auto nearest = [&s](double t) {
    return *std::min_element(s.begin(), s.end(), [t](const Sample& x, const Sample& y) {
      return std::fabs(x.t - t) < std::fabs(y.t - t);
    });
  };
  const Sample a = s.front();
  const Sample b = nearest(2 * a.t), c = nearest(4 * a.t);
  if (!std::isfinite(a.value)) return a.value;
  if (b.t == a.t) return a.value;
  if (c.t == b.t || c.t == a.t) return a.value - a.t * (b.value - a.value) / (b.t - a.t);
  // Neville's scheme at 0.
  const double p_ab = (a.value * b.t - b.value * a.t) / (b.t - a.t);
  const double p_bc = (b.value * c.t - c.value * b.t) / (c.t - b.t);
  return (p_ab * c.t - p_bc * a.t) / (c.t - a.t);
}

// Distance of the extrapolated limit from `target`, less the truncation
// error estimated by repeating the extrapolation from 2t0, 4t0, 8t0: a
// lower bound on the persistent gap.
inline double persistent_gap(const std::vector<Sample>& s, double target) {
  const double fine = extrapolate(s);
  if (!std::isfinite(fine)) return HUGE_VAL;
  const double t0 = std::min_element(s.begin(), s.end(), [](const Sample& x, const Sample& y) {
                      return x.t < y.t;
                    })->t;
  std::vector<Sample> coarse;
  for (const auto& x : s)
    if (x.t >= 2 * t0 * (1 - 1e-9)) coarse.push_back(x);
  double err = 0;
  if (!coarse.empty()) {
    const double c = extrapolate(coarse);
    err = std::isfinite(c) ? std::fabs(fine - c) : HUGE_VAL;
  }
  return std::max(0.0, std::fabs(fine - target) - err);
}

inline double value_float(const PiecewiseFn& f, const FieldElement& x, std::size_t branch) {
  return static_cast<double>(symcont::evaluate_float(f.branches()[branch].expr, x.to_double()));
}

inline std::string family_name(const FieldElement& c, const std::string& tail) {
  return "h = (" + c.to_string() + ")/n, " + tail;
}

}  // namespace oracle_detail

/// Gaps along every family; SC and WSC measure f(a+h) - f(a-h), WC measures
/// f(a +- h) - f(a) per side.
inline ProbeReport probe(const PiecewiseFn& f, const FieldElement& a, Property property,
                         long budget = 10000, unsigned long seed = 0) {
  using namespace oracle_detail;
  ProbeReport r{property, a, false, property == Property::SC ? 0.0 : HUGE_VAL, "", 0, false};
  const auto scales = scale_catalog(f, seed);
  const auto window = index_window(budget);

  if (property == Property::WC) {
    const auto fa_exact = f.evaluate(a);
    std::optional<double> fa;
    if (fa_exact.ok()) fa = fa_exact.value.to_double();
    else if (fa_exact.status == EvalResult::Status::NotInField) fa = value_float(f, a, fa_exact.branch);
    double worst = 0;
    std::string worst_family;
    bool any = false;
    for (int sign : {-1, 1}) {
      std::map<std::pair<std::size_t, std::size_t>, std::vector<Sample>> groups;
      for (std::size_t ci = 0; ci < scales.size(); ++ci) {
        for (long n : window) {
          const FieldElement x = a + FieldElement(sign) * scales[ci] / FieldElement(n);
          if (!f.domain().contains(x)) continue;
          auto b = f.select(x);
          if (!b) continue;
          ++r.samples;
          groups[{ci, *b}].push_back({1.0 / static_cast<double>(n), value_float(f, x, *b)});
        }
      }
      if (groups.empty()) continue;
      any = true;
      double best = HUGE_VAL;
      std::string best_family;
      for (const auto& [key, samples] : groups) {
        double g = fa ? persistent_gap(samples, *fa) : HUGE_VAL;
        if (std::isnan(g)) g = HUGE_VAL;
        if (g < best || best_family.empty()) {
          best = g;
          best_family = family_name(scales[key.first], std::string(sign > 0 ? "right" : "left") +
                                                           " branch " + std::to_string(key.second));
        }
      }
      if (best >= worst) {
        worst = best;
        worst_family = best_family;
      }
    }
    r.admissible = any;
    r.gap = any ? worst : 0;
    r.family = worst_family;
    r.refuted = any && worst > kOracleThreshold;
    return r;
  }

  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::vector<Sample>> groups;
  for (std::size_t ci = 0; ci < scales.size(); ++ci) {
    for (long n : window) {
      const FieldElement h = scales[ci] / FieldElement(n);
      const FieldElement xp = a + h, xm = a - h;
      if (!f.domain().contains(xp) || !f.domain().contains(xm)) continue;
      auto bp = f.select(xp), bm = f.select(xm);
      if (!bp || !bm) continue;
      ++r.samples;
      groups[{ci, *bp, *bm}].push_back(
          {1.0 / static_cast<double>(n), value_float(f, xp, *bp) - value_float(f, xm, *bm)});
    }
  }
  r.admissible = !groups.empty();
  if (!r.admissible) {
    r.gap = 0;
    return r;
  }
  for (const auto& [key, samples] : groups) {
    double g = persistent_gap(samples, 0.0);
    if (std::isnan(g)) g = HUGE_VAL;
    const bool better = property == Property::SC ? g > r.gap : g < r.gap;
    if (better || r.family.empty()) {
      r.gap = property == Property::SC ? std::max(r.gap, g) : std::min(r.gap, g);
      r.family = family_name(scales[std::get<0>(key)],
                             "branches " + std::to_string(std::get<1>(key)) + "/" +
                                 std::to_string(std::get<2>(key)));
    }
  }
  r.refuted = r.gap > kOracleThreshold;
  return r;
}

inline json probe_to_json(const ProbeReport& r) {
  return json{{"property", to_string(r.property)},
              {"point", r.point.to_string()},
              {"refuted", r.refuted},
              {"gap", std::isfinite(r.gap) ? json(r.gap) : json("inf")},
              {"family", r.family},
              {"samples", r.samples}};
}

struct CrossCheck {
  bool consistent = true;
  ProbeReport probe;
  std::string reason;
};

/// A true verdict must survive the probe; a false verdict must be matched by
/// a numeric gap of at least half its exact gap; vacuous verdicts must see no
/// admissible samples. Unknown verdicts are not checked.
inline CrossCheck cross_validate(const PiecewiseFn& f, const Verdict& v, long budget = 10000,
                                 unsigned long seed = 0) {
  CrossCheck c{true, probe(f, v.point, v.property, budget, seed), ""};
  if (v.is_unknown()) return c;
  if (v.is_vacuous()) {
    if (c.probe.admissible) {
      c.consistent = false;
      c.reason = "vacuous verdict but the probe found admissible samples";
    }
    return c;
  }
  if (v.is_true()) {
    if (c.probe.refuted) {
      c.consistent = false;
      c.reason = "true verdict refuted numerically along " + c.probe.family;
    }
    return c;
  }
  const double exact = exact_gap(v);
  const double need = std::isfinite(exact) ? exact / 2 : 1e3;
  if (!(c.probe.gap >= need)) {
    c.consistent = false;
    c.reason = "false verdict with exact gap " + std::to_string(exact) + " but numeric gap " +
               std::to_string(c.probe.gap);
  }
  return c;
}

/// Attach float evidence to an unknown verdict.
inline void attach_hint(Verdict& v, const PiecewiseFn& f, long budget = 10000, unsigned long seed = 0) {
  if (!v.is_unknown()) return;
  ProbeReport p = probe(f, v.point, v.property, budget, seed);
  v.certificate.hint = OracleHint{p.gap, p.family, p.samples};
}

namespace oracle_detail {

// Sample points of a domain: interval points spread over magnitudes up to
// 1e6 and generated points c/n.
inline std::vector<FieldElement> domain_samples(const StructuredSet& s, int count, std::mt19937_64& rng) {
  std::vector<FieldElement> out;
  std::uniform_int_distribution<long> mant(1, 999999);
  std::uniform_int_distribution<int> expo(-3, 6), coin(0, 1);
  std::uniform_int_distribution<long> idx(1, 1000);
  for (const auto& atom : s.atoms()) {
    for (int i = 0; i < count; ++i) {
      if (const auto* g = std::get_if<GenSet>(&atom)) {
        long n = idx(rng);
        if (!g->has_positive() || (g->has_negative() && coin(rng))) n = -n;
        out.push_back(g->scale / FieldElement(n));
      } else if (const auto* p = std::get_if<PointSet>(&atom)) {
        if (!p->points.empty()) out.push_back(p->points[static_cast<std::size_t>(i) % p->points.size()]);
      } else {
        const int e = expo(rng);
        Rational m(mant(rng), 1000000);
        Rational scale = e >= 0 ? Rational(static_cast<long>(std::pow(10, e))) : Rational(1, static_cast<long>(std::pow(10, -e)));
        FieldElement x(m * scale);
        if (coin(rng)) x = -x;
        if (s.contains(x)) out.push_back(x);
      }
    }
  }
  return out;
}

}  // namespace oracle_detail

/// Dense-sampling check of a uniform continuity certificate for g: the
/// empirical modulus of continuity must shrink with the step. Lipschitz
/// certificates are also spot-checked against their constant.
inline bool validate_uniform_continuity(const PiecewiseFn& g, const UniformContinuityCert& cert,
                                        unsigned long seed = 0) {
  std::mt19937_64 rng(seed);
  int budget = 2000;
  if (const auto* d = std::get_if<UniformContinuityCert::Declared>(&cert.evidence)) budget = d->sampling_budget;
  const auto xs = oracle_detail::domain_samples(g.domain(), std::max(1, budget / 4), rng);
  const std::vector<Rational> steps{Rational(1, 1000), Rational(1, 1000000)};
  std::vector<double> modulus(steps.size(), 0.0);
  for (const auto& x : xs) {
    auto gx = g.evaluate_float(x);
    if (!gx) continue;
    for (std::size_t i = 0; i < steps.size(); ++i) {
      for (int sgn : {-1, 1}) {
        const FieldElement y = x + FieldElement(steps[i]) * FieldElement(sgn);
        auto gy = g.evaluate_float(y);
        if (!gy) continue;
        const double diff = std::fabs(static_cast<double>(*gx - *gy));
        modulus[i] = std::max(modulus[i], diff);
        if (const auto* l = std::get_if<UniformContinuityCert::Lipschitz>(&cert.evidence)) {
          // Inputs are rounded to double before evaluation.
          const double lc = l->constant.to_double();
          const double rounding = 4 * lc * DBL_EPSILON * (std::fabs(x.to_double()) + 1);
          if (l->scope.contains(x) && l->scope.contains(y) &&
              diff > lc * steps[i].to_double() * (1 + 1e-9) + rounding + 1e-12)
            return false;
        }
      }
    }
  }
  // A uniformly continuous map has modulus -> 0; 1e-3 at step 1e-6 is the cutoff.
  return modulus.back() < 1e-3;
}

/// Spot check that f(x) >= 0 at sampled domain points.
inline bool spot_check_nonnegative(const PiecewiseFn& f, int count = 500, unsigned long seed = 0) {
  std::mt19937_64 rng(seed);
  for (const auto& x : oracle_detail::domain_samples(f.domain(), count, rng)) {
    EvalResult r = f.evaluate(x);
    if (r.ok() && r.value.sign() < 0) return false;
  }
  return true;
}

/// Spot check that f(x) != 0 at sampled domain points.
inline bool spot_check_nonvanishing(const PiecewiseFn& f, int count = 500, unsigned long seed = 0) {
  std::mt19937_64 rng(seed);
  for (const auto& x : oracle_detail::domain_samples(f.domain(), count, rng)) {
    EvalResult r = f.evaluate(x);
    if (r.ok() && r.value.is_zero()) return false;
  }
  return true;
}

/// Spot check that f maps sampled domain points into B.
inline bool spot_check_range(const PiecewiseFn& f, const StructuredSet& b, int count = 500,
                             unsigned long seed = 0) {
  std::mt19937_64 rng(seed);
  for (const auto& x : oracle_detail::domain_samples(f.domain(), count, rng)) {
    EvalResult r = f.evaluate(x);
    if (r.ok() && !b.contains(r.value)) return false;
  }
  return true;
}

}  // namespace symcont
