#pragma once

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "symcont/checker.hpp"
#include "symcont/combine.hpp"
#include "symcont/corpus.hpp"
#include "symcont/oracle.hpp"

namespace symcont {

struct FuzzConfig {
  unsigned long seed = 0;
  int trials = 1000;        // attempts, unless target_hits asks for more
  int target_hits = 0;      // keep going until this many premise hits
  int max_trials = 200000;  // hard cap when chasing target_hits
  int max_branches = 4;
  int coef_range = 3;
  std::vector<FieldElement> scales{FieldElement(1), FieldElement::root(), FieldElement(Rational(3, 2)),
                                   FieldElement(2) * FieldElement::root()};
};

/// Outer map of a composition together with its continuity evidence.
struct OuterMap {
  std::string name;
  PiecewiseFn g;
  std::optional<UniformContinuityCert> cert;  // nullopt: continuous only
};

/// One generated instance: f, g on a shared domain and a point a.
struct Instance {
  PiecewiseFn f;
  PiecewiseFn g;
  FieldElement a;
  std::optional<OuterMap> outer;
};

enum class Outcome { PremiseFalse, PremiseUnknown, Holds, Violation, ConclusionUnknown };

inline const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::PremiseFalse: return "premise false";
    case Outcome::PremiseUnknown: return "premise unknown";
    case Outcome::Holds: return "holds";
    case Outcome::Violation: return "violation";
    case Outcome::ConclusionUnknown: return "conclusion unknown";
  }
  return "?";
}

enum class GenMode { Any, Nonvanishing, Outer, OuterNonuniform };

struct TheoremSpec {
  std::string id;
  std::string statement;
  bool negative_control = false;  // a premise is dropped or weakened on purpose
  GenMode f_mode = GenMode::Any;
  GenMode g_mode = GenMode::Any;
  // Premises: True, False or Unknown.
  std::function<Truth(const Instance&)> premises;
  // Constructions whose WSC at a is the conclusion, labelled.
  std::function<std::vector<std::pair<std::string, PiecewiseFn>>(const Instance&)> conclusions;
};

struct Violation {
  int trial = 0;
  std::string construction;
  Instance instance;
  Verdict verdict;
};

struct TheoremReport {
  std::string id;
  int trials = 0;
  int premise_hits = 0;
  int premise_unknown = 0;
  int conclusion_unknown = 0;
  int violation_count = 0;
  std::vector<Violation> violations;  // the first few, shrunk
};

namespace theorem_detail {

inline Truth all_of(std::initializer_list<Truth> ts) {
  bool unknown = false;
  for (Truth t : ts) {
    if (t == Truth::False) return Truth::False;
    if (t == Truth::Unknown) unknown = true;
  }
  return unknown ? Truth::Unknown : Truth::True;
}

inline Truth wsc(const PiecewiseFn& f, const FieldElement& a) { return check_weak_sym_cont(f, a).holds; }
inline Truth sc(const PiecewiseFn& f, const FieldElement& a) { return check_sym_cont(f, a).holds; }
inline Truth bounded(const PiecewiseFn& f, const FieldElement& a) { return locally_bounded_at(f, a).bounded; }
inline Truth from_bool(bool b) { return b ? Truth::True : Truth::False; }

// Truth of a premise evaluated lazily: stop at the first False.
inline Truth lazy_all(std::initializer_list<std::function<Truth()>> ps) {
  bool unknown = false;
  for (const auto& p : ps) {
    Truth t;
    try {
      t = p();
    } catch (const std::exception&) {
      t = Truth::Unknown;
    }
    if (t == Truth::False) return Truth::False;
    if (t == Truth::Unknown) unknown = true;
  }
  return unknown ? Truth::Unknown : Truth::True;
}

}  // namespace theorem_detail

/// Random piecewise functions shaped like the paper's examples: generated
/// sets with rational or irrational scale ratios and sign-split continuum
/// pieces.
class Generator {
 public:
  Generator(const FuzzConfig& cfg, unsigned long trial_seed)
      : cfg_(cfg), rng_(trial_seed), motif_turn_(std::uniform_int_distribution<std::size_t>(0, 5)(rng_)) {}

  Instance instance(GenMode f_mode, GenMode g_mode) {
    StructuredSet dom = domain();
    FieldElement a = point(dom);
    Instance inst{function(dom, a, f_mode), function(dom, a, g_mode), a, std::nullopt};
    if (g_mode == GenMode::Outer) inst.outer = outer_map(true);
    if (g_mode == GenMode::OuterNonuniform) inst.outer = outer_map(false);
    return inst;
  }

  PiecewiseFn function(const StructuredSet& dom, const FieldElement& a, GenMode mode) {
    if (mode == GenMode::Outer || mode == GenMode::OuterNonuniform)
      return PiecewiseFn(dom, {{Region(), expr::var()}});
    if (mode == GenMode::Any && a.is_zero() && chance(0.4)) return motif(dom);
    const int nb = uniform(1, cfg_.max_branches);
    // Continuous-looking functions keep premises like "g is SC" reachable.
    if (mode == GenMode::Any && chance(0.3)) return PiecewiseFn(dom, {{Region(), expression(false, mode)}});
    std::vector<Branch> branches;
    for (int i = 0; i + 1 < nb; ++i) {
      Region r = guard(a);
      const bool excludes_zero = guard_excludes(r, a);
      branches.push_back({r, expression(excludes_zero, mode)});
    }
    branches.push_back({Region(), expression(false, mode)});
    return PiecewiseFn(dom, std::move(branches));
  }

  OuterMap outer_map(bool uniform_only) {
    static const std::vector<std::string> uc{"affine", "abs", "ramp", "bump", "sqrt_abs"};
    static const std::vector<std::string> non_uc{"square", "square_right"};
    const auto& names = uniform_only ? uc : non_uc;
    return outer_by_name(names[static_cast<std::size_t>(uniform(0, static_cast<int>(names.size()) - 1))]);
  }

  static OuterMap outer_by_name(const std::string& name) {
    using namespace expr;
    const ExprPtr x = var();
    auto line = StructuredSet::line();
    auto lip = [&line](long c) {
      return UniformContinuityCert{UniformContinuityCert::Lipschitz{FieldElement(c), line}};
    };
    if (name == "affine")
      return {name, PiecewiseFn(line, {{Region(), add(mul(constant(FieldElement(2)), x), constant(FieldElement(1)))}}), lip(2)};
    if (name == "abs") return {name, PiecewiseFn(line, {{Region(), abs(x)}}), lip(1)};
    if (name == "ramp")
      return {name, PiecewiseFn(line, {{Region({Compare{CmpOp::Ge, FieldElement(0)}}), x}, {Region(), constant(FieldElement(0))}}), lip(1)};
    if (name == "bump")
      return {name, PiecewiseFn(line, {{Region(), div(constant(FieldElement(1)), add(pow(x, 2), constant(FieldElement(1))))}}), lip(1)};
    if (name == "sqrt_abs")
      return {name, PiecewiseFn(line, {{Region(), sqrt(abs(x))}}),
              UniformContinuityCert{UniformContinuityCert::Declared{2000}}};
    if (name == "square") return {name, PiecewiseFn(line, {{Region(), pow(x, 2)}}), std::nullopt};
    // Continuous, not uniformly continuous: x^2 on [0, inf), x below.
    return {name, PiecewiseFn(line, {{Region({Compare{CmpOp::Ge, FieldElement(0)}}), pow(x, 2)}, {Region(), x}}),
            std::nullopt};
  }

  StructuredSet domain() {
    if (chance(0.65)) return StructuredSet::line();
    std::vector<SetAtom> atoms;
    const int n = chance(0.5) ? 2 : uniform(1, 3);
    for (int i = 0; i < n; ++i) atoms.push_back(chance(0.6) ? GenSet::make(scale(), IndexRange::All) : genset());
    atoms.push_back(PointSet{{FieldElement(0)}});
    return StructuredSet(std::move(atoms));
  }

  FieldElement point(const StructuredSet& dom) {
    if (chance(0.7)) return FieldElement(0);
    std::vector<FieldElement> pts;
    for (const auto& atom : dom.atoms()) {
      if (const auto* g = std::get_if<GenSet>(&atom)) {
        pts.push_back(g->scale / FieldElement(g->has_positive() ? uniform(1, 4) : -uniform(1, 4)));
      } else if (std::holds_alternative<Interval>(atom)) {
        pts.push_back(FieldElement(Rational(uniform(-6, 6), uniform(1, 4))));
        pts.push_back(scale() / FieldElement(uniform(1, 3)));
      }
    }
    if (pts.empty()) return FieldElement(0);
    return pts[static_cast<std::size_t>(uniform(0, static_cast<int>(pts.size()) - 1))];
  }

 private:
  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }

  FieldElement scale() {
    return cfg_.scales[static_cast<std::size_t>(uniform(0, static_cast<int>(cfg_.scales.size()) - 1))];
  }

  GenSet genset() {
    const int r = uniform(0, 3);
    const IndexRange range = r <= 1 ? IndexRange::All : r == 2 ? IndexRange::Positive : IndexRange::Negative;
    return GenSet::make(scale(), range);
  }

  FieldElement coef(bool nonzero = false) {
    while (true) {
      FieldElement c(Rational(uniform(-cfg_.coef_range, cfg_.coef_range), uniform(1, 2)));
      if (chance(0.15)) c = c * FieldElement::root();
      if (!nonzero || !c.is_zero()) return c;
    }
  }

  FieldElement positive() { return FieldElement(Rational(uniform(1, 2 * cfg_.coef_range), uniform(1, 2))); }

  Region guard(const FieldElement& a) {
    std::vector<RegionAtom> atoms;
    const int n = chance(0.3) ? 2 : 1;
    for (int i = 0; i < n; ++i) {
      const int k = uniform(0, 9);
      if (k <= 4) {
        std::vector<SetAtom> set{genset()};
        if (chance(0.3)) set.push_back(PointSet{{FieldElement(0)}});
        atoms.push_back(InSet{StructuredSet(std::move(set)), k == 4});
      } else {
        static const CmpOp ops[] = {CmpOp::Gt, CmpOp::Lt, CmpOp::Ge, CmpOp::Le, CmpOp::Eq, CmpOp::Ne};
        const CmpOp op = ops[uniform(0, 5)];
        atoms.push_back(Compare{op, chance(0.8) ? a : a + FieldElement(Rational(uniform(-2, 2), 2))});
      }
    }
    return Region(std::move(atoms));
  }

  // True when no point at or near the origin can select the branch, so
  // poles at 0 are safe.
  static bool guard_excludes(const Region& r, const FieldElement&) {
    for (const auto& atom : r.atoms()) {
      if (const auto* c = std::get_if<Compare>(&atom)) {
        if ((c->op == CmpOp::Gt && c->value.sign() >= 0) || (c->op == CmpOp::Lt && c->value.sign() <= 0) ||
            (c->op == CmpOp::Ne && c->value.is_zero()))
          return true;
      }
      if (const auto* in = std::get_if<InSet>(&atom)) {
        if (!in->negated && !in->set.contains(FieldElement(0))) return true;
      }
    }
    return false;
  }

  // Shapes at a = 0 that are WSC without being SC, or SC while unbounded:
  // odd splits behind a sequence branch, symmetric and odd poles.
  PiecewiseFn motif(const StructuredSet& dom) {
    using namespace expr;
    const ExprPtr x = var();
    const Region pos({Compare{CmpOp::Gt, FieldElement(0)}});
    const Region neg_side({Compare{CmpOp::Lt, FieldElement(0)}});
    const Region nonzero({Compare{CmpOp::Ne, FieldElement(0)}});
    switch (uniform(0, 3)) {
      case 0:
      case 1: {
        ExprPtr even;
        switch (uniform(0, 2)) {
          case 0: even = constant(coef(true)); break;
          case 1: even = div(constant(coef(true)), add(pow(x, 2), constant(positive()))); break;
          default: even = add(mul(constant(coef()), pow(x, 2)), constant(coef(true))); break;
        }
        std::vector<Branch> bs;
        if (chance(0.8)) {
          std::vector<GenSet> own;
          for (const auto& atom : dom.atoms())
            if (const auto* g = std::get_if<GenSet>(&atom)) own.push_back(*g);
          // On sequence domains the guard reuses a domain sequence so that it
          // carries a pattern of its own.
          // Successive motifs rotate through the domain's sequences.
          std::vector<SetAtom> set{own.empty() || chance(0.2) ? genset() : own[motif_turn_++ % own.size()],
                                   PointSet{{FieldElement(0)}}};
          bs.push_back({Region({InSet{StructuredSet(std::move(set)), false}}), chance(0.3) ? x : constant(coef())});
        }
        bs.push_back({pos, even});
        bs.push_back({Region(), neg(even)});
        return PiecewiseFn(dom, std::move(bs));
      }
      case 2: {
        ExprPtr pole = div(constant(coef(true)), abs(x));
        if (chance(0.5)) pole = add(pole, constant(coef()));
        return PiecewiseFn(dom, {{nonzero, pole}, {Region(), constant(coef())}});
      }
      default: {
        const FieldElement c = coef(true);
        return PiecewiseFn(dom, {{pos, add(x, div(constant(c), x))},
                                 {neg_side, neg(div(constant(c), x))},
                                 {Region(), constant(FieldElement(0))}});
      }
    }
  }

  ExprPtr expression(bool allow_pole, GenMode mode) {
    using namespace expr;
    const ExprPtr x = var();
    if (mode == GenMode::Nonvanishing) {
      ExprPtr e;
      switch (uniform(0, 3)) {
        case 0: e = constant(coef(true)); break;
        case 1: e = add(pow(x, 2), constant(positive())); break;
        case 2: e = div(constant(positive()), add(pow(x, 2), constant(positive()))); break;
        default: e = add(abs(x), constant(positive())); break;
      }
      return chance(0.5) ? neg(e) : e;
    }
    const int k = uniform(0, allow_pole ? 9 : 7);
    switch (k) {
      case 0:
      case 1: return constant(coef());
      case 2: return add(mul(constant(coef(true)), x), constant(coef()));
      case 3: return add(mul(constant(coef(true)), pow(x, 2)), constant(coef()));
      case 4: return div(constant(coef(true)), add(pow(x, 2), constant(positive())));
      case 5: return add(mul(constant(coef(true)), abs(x)), constant(coef()));
      case 6: return add(mul(constant(coef(true)), sqrt(abs(x))), constant(coef()));
      case 7: return x;
      case 8: return div(constant(coef(true)), x);
      default: return add(x, div(constant(coef(true)), x));
    }
  }

  const FuzzConfig& cfg_;
  std::mt19937_64 rng_;
  std::size_t motif_turn_ = 0;
};

/// Catalog of executable theorem statements and negative controls.
inline std::vector<TheoremSpec> theorem_specs() {
  using namespace theorem_detail;
  std::vector<TheoremSpec> specs;
  using C = std::vector<std::pair<std::string, PiecewiseFn>>;

  specs.push_back({"sc-implies-wsc", "f SC at a => f WSC at a", false, GenMode::Any, GenMode::Any,
                   [](const Instance& i) { return sc(i.f, i.a); },
                   [](const Instance& i) { return C{{"f", i.f}}; }});
  specs.push_back({"abs-scale", "f WSC at a => |f| and cf WSC at a", false, GenMode::Any, GenMode::Any,
                   [](const Instance& i) { return wsc(i.f, i.a); },
                   [](const Instance& i) {
                     return C{{"abs(f)", combine_abs(i.f)},
                              {"scale(-3/2, f)", combine_scale(FieldElement(Rational(-3, 2)), i.f)},
                              {"scale(rt, f)", combine_scale(FieldElement::root(), i.f)}};
                   }});
  auto sum_conclusions = [](const Instance& i) {
    return C{{"add(f, g)", combine_add(i.f, i.g)},
             {"sub(f, g)", combine_sub(i.f, i.g)},
             {"max(f, g)", combine_max(i.f, i.g)},
             {"min(f, g)", combine_min(i.f, i.g)}};
  };
  specs.push_back({"sum-max-min", "f WSC, g SC at a => f+g, f-g, max, min WSC at a", false, GenMode::Any,
                   GenMode::Any,
                   [](const Instance& i) {
                     return lazy_all({[&] { return wsc(i.f, i.a); }, [&] { return sc(i.g, i.a); }});
                   },
                   sum_conclusions});
  specs.push_back({"product", "f WSC, g SC, both locally bounded at a => fg WSC at a", false, GenMode::Any,
                   GenMode::Any,
                   [](const Instance& i) {
                     return lazy_all({[&] { return wsc(i.f, i.a); }, [&] { return sc(i.g, i.a); },
                                      [&] { return bounded(i.f, i.a); }, [&] { return bounded(i.g, i.a); }});
                   },
                   [](const Instance& i) { return C{{"mul(f, g)", combine_mul(i.f, i.g)}}; }});
  specs.push_back({"reciprocal", "f WSC at a, f nonvanishing, 1/f locally bounded at a => 1/f WSC at a", false,
                   GenMode::Nonvanishing, GenMode::Any,
                   [](const Instance& i) {
                     return lazy_all({[&] { return wsc(i.f, i.a); },
                                      [&] { return from_bool(spot_check_nonvanishing(i.f, 100)); },
                                      [&] { return bounded(combine_recip(i.f), i.a); }});
                   },
                   [](const Instance& i) { return C{{"recip(f)", combine_recip(i.f)}}; }});
  specs.push_back({"quotient",
                   "f WSC and locally bounded, g SC, nonvanishing, 1/g locally bounded at a => f/g WSC at a", false,
                   GenMode::Any, GenMode::Nonvanishing,
                   [](const Instance& i) {
                     return lazy_all({[&] { return wsc(i.f, i.a); }, [&] { return sc(i.g, i.a); },
                                      [&] { return bounded(i.f, i.a); },
                                      [&] { return from_bool(spot_check_nonvanishing(i.g, 100)); },
                                      [&] { return bounded(combine_recip(i.g), i.a); }});
                   },
                   [](const Instance& i) { return C{{"quotient(f, g)", combine_quotient(i.f, i.g)}}; }});
  specs.push_back({"composition", "f WSC at a, g uniformly continuous => g o f WSC at a", false, GenMode::Any,
                   GenMode::Outer,
                   [](const Instance& i) {
                     return lazy_all({[&] { return from_bool(i.outer && i.outer->cert.has_value()); },
                                      [&] { return wsc(i.f, i.a); },
                                      [&] { return from_bool(validate_uniform_continuity(i.outer->g, *i.outer->cert)); }});
                   },
                   [](const Instance& i) { return C{{"compose(" + i.outer->name + ", f)", combine_compose(i.outer->g, i.f)}}; }});
  specs.push_back({"sqrt", "f >= 0 WSC at a => sqrt(f) WSC at a", false, GenMode::Any, GenMode::Any,
                   [](const Instance& i) {
                     const PiecewiseFn h = combine_abs(i.f);
                     return lazy_all({[&] { return wsc(h, i.a); },
                                      [&] { return from_bool(spot_check_nonnegative(h, 100)); }});
                   },
                   [](const Instance& i) { return C{{"sqrt(abs(f))", combine_sqrt(combine_abs(i.f))}}; }});

  // Negative controls.
  specs.push_back({"sum-weak-g", "f WSC, g only WSC at a => f+g, f-g, max, min WSC at a (false in general)", true,
                   GenMode::Any, GenMode::Any,
                   [](const Instance& i) {
                     return lazy_all({[&] { return wsc(i.f, i.a); }, [&] { return wsc(i.g, i.a); }});
                   },
                   sum_conclusions});
  specs.push_back({"product-unbounded", "f WSC, g SC at a, boundedness dropped => fg WSC at a (false in general)",
                   true, GenMode::Any, GenMode::Any,
                   [](const Instance& i) {
                     return lazy_all({[&] { return wsc(i.f, i.a); }, [&] { return sc(i.g, i.a); }});
                   },
                   [](const Instance& i) { return C{{"mul(f, g)", combine_mul(i.f, i.g)}}; }});
  specs.push_back({"product-weak-g", "f, g WSC and locally bounded at a => fg WSC at a (false in general)", true,
                   GenMode::Any, GenMode::Any,
                   [](const Instance& i) {
                     return lazy_all({[&] { return wsc(i.f, i.a); }, [&] { return wsc(i.g, i.a); },
                                      [&] { return bounded(i.f, i.a); }, [&] { return bounded(i.g, i.a); }});
                   },
                   [](const Instance& i) { return C{{"mul(f, g)", combine_mul(i.f, i.g)}}; }});
  specs.push_back({"composition-nonuniform", "f WSC at a, g only continuous => g o f WSC at a (false in general)",
                   true, GenMode::Any, GenMode::OuterNonuniform,
                   [](const Instance& i) {
                     return lazy_all({[&] { return from_bool(i.outer.has_value()); }, [&] { return wsc(i.f, i.a); }});
                   },
                   [](const Instance& i) { return C{{"compose(" + i.outer->name + ", f)", combine_compose(i.outer->g, i.f)}}; }});
  return specs;
}

inline std::optional<TheoremSpec> find_theorem(const std::string& id) {
  for (auto& s : theorem_specs())
    if (s.id == id) return s;
  return std::nullopt;
}

struct Evaluation {
  Outcome outcome = Outcome::PremiseFalse;
  std::string construction;
  std::optional<Verdict> verdict;
};

/// Premises first, then every conclusion; the first false conclusion is a
/// violation.
inline Evaluation evaluate_instance(const TheoremSpec& spec, const Instance& inst) {
  Truth p;
  try {
    p = spec.premises(inst);
  } catch (const std::exception&) {
    p = Truth::Unknown;
  }
  if (p == Truth::False) return {Outcome::PremiseFalse, "", std::nullopt};
  if (p == Truth::Unknown) return {Outcome::PremiseUnknown, "", std::nullopt};
  bool unknown = false;
  for (const auto& [label, h] : spec.conclusions(inst)) {
    Verdict v;
    try {
      v = check_weak_sym_cont(h, inst.a);
    } catch (const std::exception&) {
      unknown = true;
      continue;
    }
    if (v.is_false()) return {Outcome::Violation, label, v};
    if (v.is_unknown()) unknown = true;
  }
  return {unknown ? Outcome::ConclusionUnknown : Outcome::Holds, "", std::nullopt};
}

namespace theorem_detail {

inline std::vector<PiecewiseFn> shrink_candidates(const PiecewiseFn& f) {
  std::vector<PiecewiseFn> out;
  const auto& bs = f.branches();
  for (std::size_t i = 0; i + 1 < bs.size(); ++i) {
    std::vector<Branch> fewer;
    for (std::size_t j = 0; j < bs.size(); ++j)
      if (j != i) fewer.push_back(bs[j]);
    out.emplace_back(f.domain(), std::move(fewer));
  }
  for (std::size_t i = 0; i < bs.size(); ++i) {
    if (bs[i].expr->kind == ExprKind::Const) continue;
    for (const ExprPtr& simpler : {expr::constant(FieldElement(0)), expr::var()}) {
      if (same_expr(simpler, bs[i].expr)) continue;
      std::vector<Branch> copy = bs;
      copy[i].expr = simpler;
      out.emplace_back(f.domain(), std::move(copy));
    }
  }
  return out;
}

}  // namespace theorem_detail

/// Greedy shrinking: drop branches and simplify expressions while the
/// instance still satisfies the premises and violates the conclusion.
inline Violation shrink(const TheoremSpec& spec, Violation v, int max_steps = 40) {
  for (int step = 0; step < max_steps; ++step) {
    bool progressed = false;
    for (int which = 0; which < 2 && !progressed; ++which) {
      const PiecewiseFn& target = which == 0 ? v.instance.f : v.instance.g;
      for (const auto& cand : theorem_detail::shrink_candidates(target)) {
        Instance inst = v.instance;
        (which == 0 ? inst.f : inst.g) = cand;
        Evaluation e = evaluate_instance(spec, inst);
        if (e.outcome == Outcome::Violation) {
          v.instance = inst;
          v.construction = e.construction;
          v.verdict = *e.verdict;
          progressed = true;
          break;
        }
      }
    }
    if (!progressed) break;
  }
  return v;
}

inline constexpr std::size_t kKeptViolations = 3;

inline TheoremReport run_theorem(const TheoremSpec& spec, const FuzzConfig& cfg) {
  TheoremReport r;
  r.id = spec.id;
  const int limit = cfg.target_hits > 0 ? cfg.max_trials : cfg.trials;
  for (int t = 0; t < limit; ++t) {
    if (cfg.target_hits > 0 && r.premise_hits >= cfg.target_hits && t >= cfg.trials) break;
    ++r.trials;
    Generator gen(cfg, cfg.seed * 1000003UL + static_cast<unsigned long>(t));
    Instance inst = gen.instance(spec.f_mode, spec.g_mode);
    Evaluation e = evaluate_instance(spec, inst);
    switch (e.outcome) {
      case Outcome::PremiseFalse: break;
      case Outcome::PremiseUnknown: ++r.premise_unknown; break;
      case Outcome::Holds: ++r.premise_hits; break;
      case Outcome::ConclusionUnknown:
        ++r.premise_hits;
        ++r.conclusion_unknown;
        break;
      case Outcome::Violation:
        ++r.premise_hits;
        ++r.violation_count;
        if (r.violations.size() < kKeptViolations)
          r.violations.push_back(shrink(spec, Violation{t, e.construction, inst, *e.verdict}));
        break;
    }
  }
  return r;
}

inline json report_to_json(const TheoremReport& r) {
  json v = json::array();
  for (const auto& x : r.violations) {
    json j{{"trial", x.trial},
           {"construction", x.construction},
           {"point", x.instance.a.to_string()},
           {"f", x.instance.f.to_dsl("f")},
           {"g", x.instance.outer ? x.instance.outer->name : x.instance.g.to_dsl("g")},
           {"verdict", verdict_to_json(x.verdict)}};
    v.push_back(j);
  }
  return json{{"id", r.id},
              {"trials", r.trials},
              {"premise_hits", r.premise_hits},
              {"premise_unknown", r.premise_unknown},
              {"conclusion_unknown", r.conclusion_unknown},
              {"violation_count", r.violation_count},
              {"violations", v}};
}

/// The paper's counterexamples as instances of the negative controls.
struct PaperCounterexample {
  std::string theorem;
  std::string file;
  std::string f;
  std::string g;  // for composition: the outer map name in the file
};

inline std::vector<PaperCounterexample> paper_counterexamples() {
  return {{"sum-weak-g", "sum_counterexample.cont", "f", "g"},
          {"product-unbounded", "unbounded_product.cont", "f", "g"},
          {"product-weak-g", "bounded_product.cont", "f", "g"},
          {"composition-nonuniform", "composition.cont", "f", "g"}};
}

inline Evaluation evaluate_counterexample(const PaperCounterexample& c, const std::filesystem::path& dir) {
  auto spec = find_theorem(c.theorem);
  if (!spec) throw std::invalid_argument("unknown theorem " + c.theorem);
  Program p = parse_program(read_file(dir / c.file));
  Instance inst{p.fn(c.f), p.fn(c.g), FieldElement(0), std::nullopt};
  if (spec->g_mode == GenMode::Outer || spec->g_mode == GenMode::OuterNonuniform) {
    inst.outer = OuterMap{c.g, p.fn(c.g), std::nullopt};
    inst.g = PiecewiseFn(inst.f.domain(), {{Region(), expr::var()}});
  }
  return evaluate_instance(*spec, inst);
}

// Relation suite over the section-two corpus functions.

struct RelationRow {
  std::string file;
  std::map<Property, Truth> expected;  // membership in SC, WC, WSC
  std::map<Property, Truth> actual;
  std::map<Property, std::string> evidence;  // refuting point, if any
};

struct RelationReport {
  std::vector<RelationRow> rows;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// Membership at tested points: the special points of f plus the file's
/// check points. True when every tested point satisfies the property.
inline std::map<Property, Truth> membership(const PiecewiseFn& f, std::vector<FieldElement> extra,
                                           std::map<Property, std::string>* evidence = nullptr) {
  std::vector<FieldElement> pts = special_points(f);
  for (const auto& p : extra)
    if (f.domain().contains(p) && std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
  std::map<Property, Truth> out{{Property::SC, Truth::True}, {Property::WC, Truth::True}, {Property::WSC, Truth::True}};
  for (const auto& row : classify(f, pts)) {
    for (const Verdict* v : {&row.sc, &row.wc, &row.wsc}) {
      Truth& t = out[v->property];
      if (v->is_false()) {
        if (t != Truth::False && evidence) (*evidence)[v->property] = v->point.to_string();
        t = Truth::False;
      } else if (v->is_unknown() && t == Truth::True) {
        t = Truth::Unknown;
      }
    }
  }
  return out;
}

inline RelationReport relation_suite(const std::filesystem::path& dir = default_corpus_dir()) {
  using T = Truth;
  struct Expect {
    const char* file;
    T sc, wc, wsc;
  };
  // (i) SC in WSC, SC not in WC; (ii) WSC not in SC u WC; (iii) WSC n WC not in SC; (iv) WC not in WSC.
  static const Expect table[] = {
      {"indicator_nonzero.cont", T::True, T::False, T::True},
      {"sign_split.cont", T::False, T::False, T::True},
      {"two_sequence_domain.cont", T::False, T::True, T::True},
      {"wc_not_wsc_line.cont", T::False, T::False, T::False},
      {"wc_not_wsc_sparse.cont", T::False, T::True, T::False},
      {"continuous_reference.cont", T::True, T::True, T::True},
  };
  RelationReport rep;
  for (const auto& e : table) {
    Program p = parse_program(read_file(dir / e.file));
    std::vector<FieldElement> extra;
    for (const auto& c : p.checks) extra.push_back(c.point);
    RelationRow row{e.file, {{Property::SC, e.sc}, {Property::WC, e.wc}, {Property::WSC, e.wsc}}, {}, {}};
    row.actual = membership(p.fn("f"), extra, &row.evidence);
    for (Property prop : {Property::SC, Property::WC, Property::WSC})
      if (row.actual[prop] != row.expected[prop])
        rep.failures.push_back(std::string(e.file) + ": " + to_string(prop) + " expected " +
                               to_string(row.expected[prop]) + ", got " + to_string(row.actual[prop]));
    // Theorem: SC implies WSC, pointwise at every tested point.
    for (const auto& c : classify(p.fn("f"), extra.empty() ? std::vector<FieldElement>{} : extra))
      if (c.sc.is_true() && !c.wsc.is_true())
        rep.failures.push_back(std::string(e.file) + ": SC without WSC at " + c.point.to_string());
    rep.rows.push_back(std::move(row));
  }
  // The relations themselves, read off the matrix.
  auto member = [&rep](const char* file, Property p) {
    for (const auto& r : rep.rows)
      if (r.file == file) return r.actual.at(p) == T::True;
    return false;
  };
  auto relation = [&rep](bool holds, const std::string& what) {
    if (!holds) rep.failures.push_back("relation not witnessed: " + what);
  };
  relation(member("indicator_nonzero.cont", Property::SC) && !member("indicator_nonzero.cont", Property::WC),
           "SC not contained in WC");
  relation(member("sign_split.cont", Property::WSC) && !member("sign_split.cont", Property::SC) &&
               !member("sign_split.cont", Property::WC),
           "WSC not contained in SC u WC");
  relation(member("two_sequence_domain.cont", Property::WSC) && member("two_sequence_domain.cont", Property::WC) &&
               !member("two_sequence_domain.cont", Property::SC),
           "WSC n WC not contained in SC");
  relation(member("wc_not_wsc_sparse.cont", Property::WC) && !member("wc_not_wsc_sparse.cont", Property::WSC),
           "WC not contained in WSC");
  return rep;
}

inline json relation_report_to_json(const RelationReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    json j{{"file", row.file}};
    for (Property p : {Property::SC, Property::WC, Property::WSC}) {
      j[to_string(p)] = {{"expected", to_string(row.expected.at(p))}, {"actual", to_string(row.actual.at(p))}};
      if (row.evidence.count(p)) j[to_string(p)]["refuted_at"] = row.evidence.at(p);
    }
    rows.push_back(j);
  }
  return json{{"ok", r.ok()}, {"rows", rows}, {"failures", r.failures}};
}

// Uniform limits.

struct UniformLimitReport {
  bool premises_hold = true;       // every f_k WSC at a
  int premise_failure_k = 0;
  bool uniform_validated = true;   // sampled sup |f_k - f| within the bounds
  int nonuniform_k = 0;
  double sampled_sup = 0;          // at nonuniform_k, or the largest ratio seen
  std::string nonuniform_at;
  std::optional<Verdict> conclusion;  // WSC of the limit at a, when checked
  bool theorem_violated() const {
    return premises_hold && uniform_validated && conclusion && conclusion->is_false();
  }
};

namespace theorem_detail {

inline std::vector<FieldElement> uniform_grid(const StructuredSet& dom, const FieldElement& a) {
  std::vector<FieldElement> pts;
  auto near = [&pts](const FieldElement& c) {
    pts.push_back(c);
    Rational eps(1, 10);
    for (int j = 1; j <= 9; ++j, eps = eps / Rational(10)) {
      pts.push_back(c + FieldElement(eps));
      pts.push_back(c - FieldElement(eps));
    }
  };
  near(a);
  for (const auto& atom : dom.atoms()) {
    if (const auto* iv = std::get_if<Interval>(&atom)) {
      const FieldElement lo = iv->lower ? *iv->lower : FieldElement(-100);
      const FieldElement hi = iv->upper ? *iv->upper : FieldElement(100);
      const long steps = 2000;
      for (long i = 0; i <= steps; ++i) pts.push_back(lo + (hi - lo) * FieldElement(Rational(i, steps)));
      near(lo);
      near(hi);
    } else if (const auto* g = std::get_if<GenSet>(&atom)) {
      for (long n = 1; n <= 200; ++n) {
        if (g->has_positive()) pts.push_back(g->scale / FieldElement(n));
        if (g->has_negative()) pts.push_back(-g->scale / FieldElement(n));
      }
    } else if (const auto* p = std::get_if<PointSet>(&atom)) {
      for (const auto& x : p->points) near(x);
    }
  }
  std::vector<FieldElement> out;
  for (const auto& x : pts)
    if (dom.contains(x)) out.push_back(x);
  return out;
}

}  // namespace theorem_detail

/// Checks the uniform-limit theorem on a family: every f_k (k <= K) must be
/// WSC at a, sampled sup |f_k - f| must stay within error_bound(k), and then
/// the limit must be WSC at a.
inline UniformLimitReport uniform_limit_check(const FnFamily& family, const PiecewiseFn& limit_fn,
                                              const std::function<FieldElement(int)>& error_bound,
                                              const FieldElement& a, int K) {
  UniformLimitReport r;
  const auto grid = theorem_detail::uniform_grid(limit_fn.domain(), a);
  for (int k = 1; k <= K; ++k) {
    const PiecewiseFn fk = family.instantiate(k);
    if (r.premises_hold && !check_weak_sym_cont(fk, a).is_true()) {
      r.premises_hold = false;
      r.premise_failure_k = k;
    }
    if (!r.uniform_validated) continue;
    const double bound = error_bound(k).to_double();
    double sup = 0;
    std::string at;
    for (const auto& x : grid) {
      auto u = fk.evaluate_float(x);
      auto v = limit_fn.evaluate_float(x);
      if (!u || !v) continue;
      const double d = std::fabs(static_cast<double>(*u - *v));
      if (d > sup) {
        sup = d;
        at = x.to_string();
      }
    }
    if (sup > bound * (1 + 1e-9) + 1e-12) {
      r.uniform_validated = false;
      r.nonuniform_k = k;
      r.sampled_sup = sup;
      r.nonuniform_at = at;
    }
  }
  if (limit_fn.domain().contains(a)) r.conclusion = check_weak_sym_cont(limit_fn, a);
  return r;
}

// One-sided limits against symmetric continuity.

struct LimitConsistency {
  bool applicable = false;  // both one-sided limits exist and are finite
  bool consistent = true;
  bool limits_equal = false;
  Truth sc = Truth::Unknown;
};

/// At an interior point with finite one-sided limits, SC holds exactly when
/// the two limits are equal.
inline LimitConsistency one_sided_consistency(const PiecewiseFn& f, const FieldElement& a) {
  LimitConsistency c;
  if (!f.domain().contains(a)) return c;
  bool interior = false;
  for (const auto& atom : f.domain().atoms())
    if (const auto* iv = std::get_if<Interval>(&atom))
      if (iv->contains_near(a, Side::Left) && iv->contains_near(a, Side::Right)) interior = true;
  if (!interior) return c;
  FunctionLimit left = function_limit(f, a, Side::Left), right = function_limit(f, a, Side::Right);
  if (!left.value || !right.value || !left.value->is_finite() || !right.value->is_finite()) return c;
  c.applicable = true;
  c.limits_equal = *left.value == *right.value;
  c.sc = check_sym_cont(f, a).holds;
  c.consistent = c.sc == (c.limits_equal ? Truth::True : Truth::False);
  return c;
}

}  // namespace symcont
