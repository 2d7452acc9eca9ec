#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "symcont/combine.hpp"
#include "symcont/limits.hpp"
#include "symcont/piecewise.hpp"
#include "symcont/verdict.hpp"

namespace symcont {

struct PointOutsideDomain : std::invalid_argument {
  explicit PointOutsideDomain(const FieldElement& a)
      : std::invalid_argument("point " + a.to_string() + " is not in the domain") {}
};

/// Germ analysis of f at a: for each side, the branch that first-match
/// selects on every cell of the h-space decomposition.
class GermAnalysis {
 public:
  struct CellChoice {
    const Cell* cell;
    std::optional<std::size_t> right;  // branch at a + h, when a + h is in the domain
    std::optional<std::size_t> left;   // branch at a - h, when a - h is in the domain
    bool right_in_domain = false;
    bool left_in_domain = false;
  };

  GermAnalysis(const PiecewiseFn& f, const FieldElement& a) : f_(f), frame_(make_frame(f, a)) {
    for (const auto& cell : frame_.cells()) {
      CellChoice c{&cell, {}, {}, false, false};
      c.right_in_domain = frame_.set_holds(f.domain(), cell, Side::Right);
      c.left_in_domain = frame_.set_holds(f.domain(), cell, Side::Left);
      if (c.right_in_domain) c.right = select(cell, Side::Right);
      if (c.left_in_domain) c.left = select(cell, Side::Left);
      choices_.push_back(c);
    }
  }

  const GermFrame& frame() const { return frame_; }
  const std::vector<CellChoice>& choices() const { return choices_; }
  /// False when some composed guard had an undecidable germ.
  bool complete() const { return complete_; }

 private:
  static GermFrame make_frame(const PiecewiseFn& f, const FieldElement& a) {
    std::vector<const Region*> regions;
    for (const auto& b : f.branches()) regions.push_back(&b.region);
    return GermFrame(a, {&f.domain()}, regions);
  }

  std::optional<std::size_t> select(const Cell& cell, Side side) {
    for (std::size_t i = 0; i < f_.branches().size(); ++i) {
      auto v = frame_.region_holds(f_.branches()[i].region, cell, side);
      if (!v) {
        complete_ = false;
        return std::nullopt;
      }
      if (*v) return i;
    }
    complete_ = false;
    return std::nullopt;
  }

  const PiecewiseFn& f_;
  GermFrame frame_;
  std::vector<CellChoice> choices_;
  bool complete_ = true;
};

/// Feasible branch pairs at a; h-sets of cells with the same pair are merged.
inline std::vector<PatternPair> enumerate_patterns(const PiecewiseFn& f, const FieldElement& a,
                                                   bool* complete = nullptr) {
  GermAnalysis g(f, a);
  std::vector<PatternPair> out;
  bool ok = g.complete();
  for (const auto& c : g.choices()) {
    if (!c.right_in_domain || !c.left_in_domain) continue;
    if (!c.right || !c.left) {
      ok = false;
      continue;
    }
    auto it = std::find_if(out.begin(), out.end(), [&c](const PatternPair& p) {
      return p.plus_branch == *c.right && p.minus_branch == *c.left;
    });
    if (it == out.end()) out.push_back({*c.right, *c.left, {c.cell->piece}});
    else it->hset.push_back(c.cell->piece);
  }
  if (complete) *complete = ok;
  return out;
}

namespace detail {

inline PatternLimit pattern_limit(const PiecewiseFn& f, const FieldElement& a, const PatternPair& p) {
  PatternLimit row{p, AsymptoticValue::undecided(), ""};
  try {
    const HSetDescriptor& d = p.hset.front();
    PathValue diff = path_of(f.branches()[p.plus_branch].expr, a, Side::Right, d) -
                     path_of(f.branches()[p.minus_branch].expr, a, Side::Left, d);
    row.limit = limit(diff);
  } catch (const std::exception& e) {
    row.note = e.what();
  }
  return row;
}

inline std::vector<FieldElement> witness_sequence(const HSet& hset, std::size_t count = 5) {
  for (const auto& d : hset)
    if (d.feasible()) return d.sample(count);
  return {};
}

inline void require_in_domain(const PiecewiseFn& f, const FieldElement& a) {
  if (!f.domain().contains(a)) throw PointOutsideDomain(a);
}

inline Verdict vacuous(Property p, const FieldElement& a, const char* space) {
  Verdict v{p, a, Truth::True, {}};
  v.certificate.kind = Certificate::Kind::Vacuous;
  v.certificate.space = space;
  return v;
}

// Exact value of f at a, with square roots outside the field kept as radicals.
inline std::optional<AsymptoticValue> value_at(const PiecewiseFn& f, const FieldElement& a,
                                               std::optional<FieldElement>* field_value) {
  EvalResult r = f.evaluate(a);
  if (r.ok()) {
    *field_value = r.value;
    return AsymptoticValue(r.value);
  }
  if (r.status != EvalResult::Status::NotInField) return std::nullopt;
  try {
    AsymptoticValue v = limit(path_value(f.branches()[r.branch].expr, a, Side::Right, FieldElement(0)));
    if (v.is_finite()) return v;
  } catch (const std::exception&) {
  }
  return std::nullopt;
}

}  // namespace detail

/// Symmetric continuity at a: every pattern's difference tends to 0.
inline Verdict check_sym_cont(const PiecewiseFn& f, const FieldElement& a) {
  detail::require_in_domain(f, a);
  bool complete = true;
  const auto patterns = enumerate_patterns(f, a, &complete);
  if (patterns.empty() && complete) return detail::vacuous(Property::SC, a, "symmetric");
  Verdict v{Property::SC, a, Truth::True, {}};
  std::vector<PatternLimit> rows;
  std::optional<PatternLimit> refuting;
  for (const auto& p : patterns) {
    PatternLimit row = detail::pattern_limit(f, a, p);
    if (!row.limit.is_undecided() && !row.limit.is_zero()) {
      // Prefer the largest gap so the witness is the most visible one.
      if (!refuting || row.limit.magnitude() > refuting->limit.magnitude()) refuting = row;
    }
    rows.push_back(row);
  }
  if (refuting) {
    v.holds = Truth::False;
    v.certificate.kind = Certificate::Kind::Witness;
    v.certificate.rows = {*refuting};
    v.certificate.sequence = detail::witness_sequence(refuting->pattern.hset);
    return v;
  }
  const bool undecided = !complete || std::any_of(rows.begin(), rows.end(), [](const PatternLimit& r) {
                           return r.limit.is_undecided();
                         });
  v.holds = undecided ? Truth::Unknown : Truth::True;
  v.certificate.kind = Certificate::Kind::PatternTable;
  v.certificate.rows = std::move(rows);
  return v;
}

/// Weak symmetric continuity at a: some pattern's difference tends to 0.
inline Verdict check_weak_sym_cont(const PiecewiseFn& f, const FieldElement& a) {
  detail::require_in_domain(f, a);
  bool complete = true;
  const auto patterns = enumerate_patterns(f, a, &complete);
  if (patterns.empty() && complete) return detail::vacuous(Property::WSC, a, "symmetric");
  Verdict v{Property::WSC, a, Truth::False, {}};
  std::vector<PatternLimit> rows;
  for (const auto& p : patterns) {
    PatternLimit row = detail::pattern_limit(f, a, p);
    if (row.limit.is_zero()) {
      v.holds = Truth::True;
      v.certificate.kind = Certificate::Kind::Witness;
      v.certificate.rows = {row};
      v.certificate.sequence = detail::witness_sequence(row.pattern.hset);
      return v;
    }
    rows.push_back(row);
  }
  const bool undecided = !complete || std::any_of(rows.begin(), rows.end(), [](const PatternLimit& r) {
                           return r.limit.is_undecided();
                         });
  v.holds = undecided ? Truth::Unknown : Truth::False;
  v.certificate.kind = Certificate::Kind::PatternTable;
  v.certificate.rows = std::move(rows);
  return v;
}

namespace detail {

// Branches reachable from one side, with their limits; h-sets of cells
// sharing a branch are merged.
inline SideReport side_report(const PiecewiseFn& f, const FieldElement& a, const GermAnalysis& g,
                              Side side, bool* complete) {
  SideReport report{side, false, Truth::True, {}};
  for (const auto& c : g.choices()) {
    const bool in = side == Side::Right ? c.right_in_domain : c.left_in_domain;
    if (!in) continue;
    report.feasible = true;
    const auto& branch = side == Side::Right ? c.right : c.left;
    if (!branch) {
      *complete = false;
      continue;
    }
    auto it = std::find_if(report.branches.begin(), report.branches.end(),
                           [&branch](const BranchLimit& b) { return b.branch == *branch; });
    if (it != report.branches.end()) {
      it->hset.push_back(c.cell->piece);
      continue;
    }
    BranchLimit b{*branch, {c.cell->piece}, AsymptoticValue::undecided(), ""};
    try {
      b.limit = limit(path_of(f.branches()[*branch].expr, a, side, c.cell->piece));
    } catch (const std::exception& e) {
      b.note = e.what();
    }
    report.branches.push_back(b);
  }
  return report;
}

}  // namespace detail

/// Weak continuity at a: on each side with approach sequences, some branch
/// reachable from that side tends to f(a) exactly.
inline Verdict check_weak_cont(const PiecewiseFn& f, const FieldElement& a) {
  detail::require_in_domain(f, a);
  Verdict v{Property::WC, a, Truth::True, {}};
  std::optional<FieldElement> fa_field;
  auto fa = detail::value_at(f, a, &fa_field);
  v.certificate.value_at_point = fa_field;
  GermAnalysis g(f, a);
  bool complete = g.complete();
  std::vector<SideReport> sides;
  for (Side side : {Side::Left, Side::Right}) {
    SideReport s = detail::side_report(f, a, g, side, &complete);
    if (s.feasible) {
      bool hit = false, undecided = !complete;
      for (const auto& b : s.branches) {
        if (fa && b.limit == *fa) hit = true;
        if (b.limit.is_undecided()) undecided = true;
      }
      s.holds = hit ? Truth::True : ((undecided || !fa) ? Truth::Unknown : Truth::False);
    }
    sides.push_back(std::move(s));
  }
  if (std::none_of(sides.begin(), sides.end(), [](const SideReport& s) { return s.feasible; }))
    return detail::vacuous(Property::WC, a, "one-sided");
  v.certificate.kind = Certificate::Kind::Sides;
  for (const auto& s : sides) {
    if (s.holds == Truth::False) v.holds = Truth::False;
    else if (s.holds == Truth::Unknown && v.holds != Truth::False) v.holds = Truth::Unknown;
  }
  v.certificate.sides = std::move(sides);
  return v;
}

inline Verdict check(const PiecewiseFn& f, const FieldElement& a, Property p) {
  switch (p) {
    case Property::SC: return check_sym_cont(f, a);
    case Property::WC: return check_weak_cont(f, a);
    case Property::WSC: return check_weak_sym_cont(f, a);
  }
  throw std::invalid_argument("unknown property");
}

/// Limit of f(x) as x -> a from one side when every reachable branch agrees.
struct FunctionLimit {
  bool approachable = false;
  std::optional<AsymptoticValue> value;  // nullopt: branch limits disagree or are undecided
};

inline FunctionLimit function_limit(const PiecewiseFn& f, const FieldElement& a, Side side) {
  GermAnalysis g(f, a);
  bool complete = g.complete();
  SideReport s = detail::side_report(f, a, g, side, &complete);
  FunctionLimit out{s.feasible, std::nullopt};
  if (!s.feasible || !complete) return out;
  for (const auto& b : s.branches) {
    if (b.limit.is_undecided()) return {s.feasible, std::nullopt};
    if (out.value && !(*out.value == b.limit)) return {s.feasible, std::nullopt};
    out.value = b.limit;
  }
  return out;
}

struct BoundReport {
  Truth bounded = Truth::Unknown;
  std::optional<Rational> bound;  // M with |f| < M near a
  FieldElement radius;            // branch structure is fixed within this radius
  std::optional<BranchLimit> unbounded_branch;
  Side unbounded_side = Side::Right;
};

/// Local boundedness from one-sided branch limits: bounded iff every
/// reachable branch has a finite limit. M is the largest limit magnitude
/// (and |f(a)|) plus 1, rounded up.
inline BoundReport locally_bounded_at(const PiecewiseFn& f, const FieldElement& a) {
  GermAnalysis g(f, a);
  bool complete = g.complete();
  BoundReport r;
  r.radius = g.frame().radius();
  double m = 0;
  bool undecided = !complete;
  if (f.domain().contains(a)) {
    std::optional<FieldElement> fa_field;
    auto fa = detail::value_at(f, a, &fa_field);
    if (fa) m = fa->magnitude();
    else undecided = true;
  }
  for (Side side : {Side::Left, Side::Right}) {
    SideReport s = detail::side_report(f, a, g, side, &complete);
    for (const auto& b : s.branches) {
      if (b.limit.is_infinite()) {
        r.bounded = Truth::False;
        r.unbounded_branch = b;
        r.unbounded_side = side;
        return r;
      }
      if (b.limit.is_undecided()) undecided = true;
      else m = std::max(m, b.limit.magnitude());
    }
  }
  if (undecided || !complete) return r;
  r.bounded = Truth::True;
  r.bound = Rational(static_cast<long>(std::ceil(m)) + 1);
  return r;
}

/// Points where the branch structure can change: 0, comparison values,
/// interval endpoints and listed points, restricted to the domain.
inline std::vector<FieldElement> special_points(const PiecewiseFn& f) {
  std::vector<FieldElement> pts{FieldElement(0)};
  auto add_set = [&pts](const StructuredSet& s) {
    for (const auto& atom : s.atoms()) {
      if (const auto* p = std::get_if<PointSet>(&atom)) pts.insert(pts.end(), p->points.begin(), p->points.end());
      if (const auto* iv = std::get_if<Interval>(&atom)) {
        if (iv->lower) pts.push_back(*iv->lower);
        if (iv->upper) pts.push_back(*iv->upper);
      }
      if (const auto* gs = std::get_if<GenSet>(&atom)) {
        for (long n : {1, 2, 3}) {
          if (gs->has_positive()) pts.push_back(gs->scale / FieldElement(n));
          if (gs->has_negative()) pts.push_back(-gs->scale / FieldElement(n));
        }
      }
    }
  };
  add_set(f.domain());
  for (const auto& b : f.branches()) {
    for (const auto& atom : b.region.atoms()) {
      if (const auto* c = std::get_if<Compare>(&atom)) pts.push_back(c->value);
      if (const auto* in = std::get_if<InSet>(&atom)) add_set(in->set);
    }
  }
  // A couple of generic interior probes.
  for (long n : {7, -7}) pts.push_back(FieldElement(Rational(n, 13)));
  std::vector<FieldElement> out;
  for (const auto& p : pts) {
    if (!f.domain().contains(p)) continue;
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct Classification {
  FieldElement point;
  Verdict sc, wc, wsc;
};

inline std::vector<Classification> classify(const PiecewiseFn& f,
                                            std::vector<FieldElement> points = {}) {
  if (points.empty()) points = special_points(f);
  std::vector<Classification> out;
  for (const auto& a : points)
    out.push_back({a, check_sym_cont(f, a), check_weak_cont(f, a), check_weak_sym_cont(f, a)});
  return out;
}

}  // namespace symcont
