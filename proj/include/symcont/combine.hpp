#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "symcont/limits.hpp"
#include "symcont/piecewise.hpp"

namespace symcont {

struct DomainMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

enum class Combinator { Abs, Scale, Add, Sub, Max, Min, Mul, Recip, Quotient, Compose, Sqrt };

/// Guard "inner(x) in region" produced by composition.
///
/// The germ near a is decided from the eventual sign of inner(a +- t) - p
/// for each comparison against p. Generated sets and finite point sets in
/// the outer region are out of reach and leave the germ undecided.
class ComposeGuard final : public ExprGuard {
 public:
  ComposeGuard(ExprPtr inner, Region outer) : inner_(std::move(inner)), outer_(std::move(outer)) {}

  bool holds_at(const FieldElement& x) const override {
    ExactValue v = evaluate_exact(inner_, x);
    if (!v.ok()) throw EvaluationError("composed guard undefined at " + x.to_string());
    return outer_.contains(v.value);
  }

  std::optional<bool> holds_near(const FieldElement& a, Side side) const override {
    bool undecided = false;
    for (const auto& atom : outer_.atoms()) {
      std::optional<bool> v = atom_near(atom, a, side);
      if (v && !*v) return false;
      if (!v) undecided = true;
    }
    if (undecided) return std::nullopt;
    return true;
  }

  std::string describe() const override {
    return "(" + to_string(inner_) + ") satisfies [" + outer_.to_string() + "]";
  }

 private:
  // Eventual sign of inner - p along the continuum from `side`.
  std::optional<int> sign_near(const FieldElement& a, Side side, const FieldElement& p) const {
    try {
      PathValue v = path_value(inner_, a, side, FieldElement(1)) - PathValue(RatFun(p));
      return v.eventual_sign();
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }

  std::optional<bool> compare_germ(const FieldElement& a, Side side, CmpOp op,
                                   const FieldElement& p) const {
    auto s = sign_near(a, side, p);
    if (!s) return std::nullopt;
    switch (op) {
      case CmpOp::Gt: return *s > 0;
      case CmpOp::Lt: return *s < 0;
      case CmpOp::Eq: return *s == 0;
      case CmpOp::Ge: return *s >= 0;
      case CmpOp::Le: return *s <= 0;
      case CmpOp::Ne: return *s != 0;
    }
    return std::nullopt;
  }

  std::optional<bool> interval_germ(const Interval& iv, const FieldElement& a, Side side) const {
    std::optional<bool> lo = true, hi = true;
    if (iv.lower) lo = compare_germ(a, side, iv.lower_closed ? CmpOp::Ge : CmpOp::Gt, *iv.lower);
    if (iv.upper) hi = compare_germ(a, side, iv.upper_closed ? CmpOp::Le : CmpOp::Lt, *iv.upper);
    if ((lo && !*lo) || (hi && !*hi)) return false;
    if (!lo || !hi) return std::nullopt;
    return true;
  }

  std::optional<bool> set_germ(const StructuredSet& s, const FieldElement& a, Side side) const {
    bool undecided = false;
    for (const auto& atom : s.atoms()) {
      std::optional<bool> v;
      if (const auto* iv = std::get_if<Interval>(&atom)) {
        v = interval_germ(*iv, a, side);
      } else if (const auto* ps = std::get_if<PointSet>(&atom)) {
        bool any = false, unknown = false;
        for (const auto& p : ps->points) {
          auto e = compare_germ(a, side, CmpOp::Eq, p);
          if (!e) unknown = true;
          else if (*e) any = true;
        }
        v = any ? std::optional<bool>(true) : (unknown ? std::nullopt : std::optional<bool>(false));
      }
      if (v && *v) return true;
      if (!v) undecided = true;
    }
    if (undecided) return std::nullopt;
    return false;
  }

  std::optional<bool> atom_near(const RegionAtom& atom, const FieldElement& a, Side side) const {
    if (const auto* c = std::get_if<Compare>(&atom)) return compare_germ(a, side, c->op, c->value);
    if (const auto* in = std::get_if<InSet>(&atom)) {
      auto v = set_germ(in->set, a, side);
      if (v && in->negated) return !*v;
      return v;
    }
    return std::nullopt;
  }

  ExprPtr inner_;
  Region outer_;
};

namespace detail {

inline Region conjoin_dedup(const Region& x, const Region& y) {
  std::vector<RegionAtom> atoms = x.atoms();
  std::vector<std::string> seen;
  for (const auto& a : atoms) seen.push_back(Region({a}).to_string());
  for (const auto& a : y.atoms()) {
    const std::string s = Region({a}).to_string();
    if (std::find(seen.begin(), seen.end(), s) != seen.end()) continue;
    seen.push_back(s);
    atoms.push_back(a);
  }
  return Region(std::move(atoms));
}

inline void require_same_domain(const PiecewiseFn& f, const PiecewiseFn& g) {
  if (f.domain().canonical() != g.domain().canonical())
    throw DomainMismatch("functions have different domains: " + f.domain().to_string() +
                         " and " + g.domain().to_string());
}

template <typename Op>
PiecewiseFn map_branches(const PiecewiseFn& f, Op op) {
  std::vector<Branch> out;
  for (const auto& b : f.branches()) out.push_back({b.region, op(b.expr)});
  return PiecewiseFn(f.domain(), std::move(out));
}

// Product refinement in lexicographic branch order keeps first-match
// semantics: x selects (i, j) exactly when f selects i and g selects j.
template <typename Op>
PiecewiseFn refine(const PiecewiseFn& f, const PiecewiseFn& g, Op op) {
  require_same_domain(f, g);
  std::vector<Branch> out;
  for (const auto& bf : f.branches()) {
    for (const auto& bg : g.branches()) {
      Region r = conjoin_dedup(bf.region, bg.region);
      if (r.obviously_empty()) continue;
      out.push_back({std::move(r), op(bf.expr, bg.expr)});
    }
  }
  return PiecewiseFn(f.domain(), std::move(out));
}

}  // namespace detail

inline PiecewiseFn combine_abs(const PiecewiseFn& f) {
  return detail::map_branches(f, [](const ExprPtr& e) { return expr::abs(e); });
}

inline PiecewiseFn combine_scale(const FieldElement& c, const PiecewiseFn& f) {
  if (c.is_zero()) return PiecewiseFn(f.domain(), {Branch{Region(), expr::constant(FieldElement(0))}});
  return detail::map_branches(f, [&c](const ExprPtr& e) { return expr::mul(expr::constant(c), e); });
}

inline PiecewiseFn combine_add(const PiecewiseFn& f, const PiecewiseFn& g) {
  return detail::refine(f, g, [](const ExprPtr& a, const ExprPtr& b) { return expr::add(a, b); });
}

inline PiecewiseFn combine_sub(const PiecewiseFn& f, const PiecewiseFn& g) {
  return detail::refine(f, g, [](const ExprPtr& a, const ExprPtr& b) { return expr::sub(a, b); });
}

inline PiecewiseFn combine_mul(const PiecewiseFn& f, const PiecewiseFn& g) {
  return detail::refine(f, g, [](const ExprPtr& a, const ExprPtr& b) { return expr::mul(a, b); });
}

/// max{f, g} = (f + g + |f - g|) / 2.
inline PiecewiseFn combine_max(const PiecewiseFn& f, const PiecewiseFn& g) {
  return detail::refine(f, g, [](const ExprPtr& a, const ExprPtr& b) {
    return expr::div(expr::add(expr::add(a, b), expr::abs(expr::sub(a, b))),
                     expr::constant(FieldElement(2)));
  });
}

/// min{f, g} = (f + g - |f - g|) / 2.
inline PiecewiseFn combine_min(const PiecewiseFn& f, const PiecewiseFn& g) {
  return detail::refine(f, g, [](const ExprPtr& a, const ExprPtr& b) {
    return expr::div(expr::sub(expr::add(a, b), expr::abs(expr::sub(a, b))),
                     expr::constant(FieldElement(2)));
  });
}

/// 1/f; nonvanishing is the caller's obligation.
inline PiecewiseFn combine_recip(const PiecewiseFn& f) {
  return detail::map_branches(
      f, [](const ExprPtr& e) { return expr::div(expr::constant(FieldElement(1)), e); });
}

inline PiecewiseFn combine_quotient(const PiecewiseFn& f, const PiecewiseFn& g) {
  return detail::refine(f, g, [](const ExprPtr& a, const ExprPtr& b) { return expr::div(a, b); });
}

inline PiecewiseFn combine_sqrt(const PiecewiseFn& f) {
  return detail::map_branches(f, [](const ExprPtr& e) { return expr::sqrt(e); });
}

/// g o f on the domain of f; f(domain) inside the domain of g is the
/// caller's obligation.
inline PiecewiseFn combine_compose(const PiecewiseFn& g, const PiecewiseFn& f) {
  std::vector<Branch> out;
  for (const auto& bf : f.branches()) {
    for (const auto& bg : g.branches()) {
      Region r = bf.region;
      if (!bg.region.is_trivial())
        r = r.conjoin(Region({GuardAtom{std::make_shared<ComposeGuard>(bf.expr, bg.region)}}));
      out.push_back({std::move(r), substitute(bg.expr, bf.expr)});
    }
  }
  return PiecewiseFn(f.domain(), std::move(out));
}

inline const char* to_string(Combinator c) {
  switch (c) {
    case Combinator::Abs: return "abs";
    case Combinator::Scale: return "scale";
    case Combinator::Add: return "add";
    case Combinator::Sub: return "sub";
    case Combinator::Max: return "max";
    case Combinator::Min: return "min";
    case Combinator::Mul: return "mul";
    case Combinator::Recip: return "recip";
    case Combinator::Quotient: return "quotient";
    case Combinator::Compose: return "compose";
    case Combinator::Sqrt: return "sqrt";
  }
  return "?";
}

/// Dispatcher over all combinators. Scale takes its factor in `c`; compose
/// is g o f with g passed as `g`.
inline PiecewiseFn combine(Combinator op, const PiecewiseFn& f,
                           const std::optional<PiecewiseFn>& g = std::nullopt,
                           const FieldElement& c = FieldElement(1)) {
  auto need_g = [&]() -> const PiecewiseFn& {
    if (!g) throw std::invalid_argument(std::string(to_string(op)) + " needs two functions");
    return *g;
  };
  switch (op) {
    case Combinator::Abs: return combine_abs(f);
    case Combinator::Scale: return combine_scale(c, f);
    case Combinator::Add: return combine_add(f, need_g());
    case Combinator::Sub: return combine_sub(f, need_g());
    case Combinator::Max: return combine_max(f, need_g());
    case Combinator::Min: return combine_min(f, need_g());
    case Combinator::Mul: return combine_mul(f, need_g());
    case Combinator::Recip: return combine_recip(f);
    case Combinator::Quotient: return combine_quotient(f, need_g());
    case Combinator::Compose: return combine_compose(need_g(), f);
    case Combinator::Sqrt: return combine_sqrt(f);
  }
  throw std::invalid_argument("unknown combinator");
}

}  // namespace symcont
