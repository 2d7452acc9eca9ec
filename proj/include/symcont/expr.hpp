#pragma once

#include <cmath>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

#include "symcont/field.hpp"

namespace symcont {

enum class ExprKind { Const, Var, Param, Add, Sub, Mul, Div, Neg, Pow, Abs, Sqrt };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Elementary expression in x, optionally in the family index k.
///
/// Pow carries a literal exponent, or kParamExponent when the exponent is
/// the family index. Trees are immutable and shared.
struct Expr {
  static constexpr int kParamExponent = -1;

  ExprKind kind = ExprKind::Const;
  FieldElement value;  // Const
  int exponent = 0;    // Pow
  ExprPtr lhs, rhs;
};

inline constexpr int kMaxFamilyIndex = 64;

struct EvaluationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace expr {

inline ExprPtr make(ExprKind kind, ExprPtr l = nullptr, ExprPtr r = nullptr) {
  auto e = std::make_shared<Expr>();
  e->kind = kind;
  e->lhs = std::move(l);
  e->rhs = std::move(r);
  return e;
}

inline ExprPtr constant(FieldElement v) {
  auto e = std::make_shared<Expr>();
  e->value = std::move(v);
  return e;
}
inline ExprPtr var() { return make(ExprKind::Var); }
inline ExprPtr param() { return make(ExprKind::Param); }

inline bool is_const(const ExprPtr& e) { return e->kind == ExprKind::Const; }
inline bool is_const(const ExprPtr& e, long v) { return is_const(e) && e->value == FieldElement(v); }

// Constructors fold constant operands and drop identities that are valid
// everywhere (x + 0, x * 1, x / 1). Products with 0 are kept, since 0 * (1/x)
// is undefined at 0.
inline ExprPtr add(ExprPtr l, ExprPtr r) {
  if (is_const(l) && is_const(r)) return constant(l->value + r->value);
  if (is_const(l, 0)) return r;
  if (is_const(r, 0)) return l;
  return make(ExprKind::Add, std::move(l), std::move(r));
}
inline ExprPtr sub(ExprPtr l, ExprPtr r) {
  if (is_const(l) && is_const(r)) return constant(l->value - r->value);
  if (is_const(r, 0)) return l;
  return make(ExprKind::Sub, std::move(l), std::move(r));
}
inline ExprPtr mul(ExprPtr l, ExprPtr r) {
  if (is_const(l) && is_const(r)) return constant(l->value * r->value);
  if (is_const(l, 1)) return r;
  if (is_const(r, 1)) return l;
  return make(ExprKind::Mul, std::move(l), std::move(r));
}
inline ExprPtr div(ExprPtr l, ExprPtr r) {
  if (is_const(l) && is_const(r) && !r->value.is_zero()) return constant(l->value / r->value);
  if (is_const(r, 1)) return l;
  return make(ExprKind::Div, std::move(l), std::move(r));
}
inline ExprPtr neg(ExprPtr l) {
  if (is_const(l)) return constant(-l->value);
  if (l->kind == ExprKind::Neg) return l->lhs;
  return make(ExprKind::Neg, std::move(l));
}
inline ExprPtr pow(ExprPtr base, int exponent) {
  if (exponent != Expr::kParamExponent && exponent < 0)
    throw std::invalid_argument("negative exponent");
  if (exponent == 0) return constant(FieldElement(1));
  if (exponent == 1) return base;
  if (is_const(base) && exponent != Expr::kParamExponent) {
    FieldElement v(1);
    for (int i = 0; i < exponent; ++i) v *= base->value;
    return constant(v);
  }
  auto e = make(ExprKind::Pow, std::move(base));
  std::const_pointer_cast<Expr>(e)->exponent = exponent;
  return e;
}
inline ExprPtr abs(ExprPtr l) {
  if (is_const(l)) return constant(l->value.abs());
  if (l->kind == ExprKind::Abs) return l;
  return make(ExprKind::Abs, std::move(l));
}
inline ExprPtr sqrt(ExprPtr l) {
  if (is_const(l))
    if (auto r = sqrt_in_field(l->value)) return constant(*r);
  return make(ExprKind::Sqrt, std::move(l));
}

}  // namespace expr

inline bool mentions_param(const ExprPtr& e) {
  if (!e) return false;
  if (e->kind == ExprKind::Param) return true;
  if (e->kind == ExprKind::Pow && e->exponent == Expr::kParamExponent) return true;
  return mentions_param(e->lhs) || mentions_param(e->rhs);
}

inline bool mentions_sqrt(const ExprPtr& e) {
  if (!e) return false;
  return e->kind == ExprKind::Sqrt || mentions_sqrt(e->lhs) || mentions_sqrt(e->rhs);
}

/// Replaces the family index by k.
inline ExprPtr instantiate(const ExprPtr& e, int k) {
  if (k < 1 || k > kMaxFamilyIndex)
    throw std::out_of_range("family index must lie in [1, " + std::to_string(kMaxFamilyIndex) + "]");
  switch (e->kind) {
    case ExprKind::Const:
    case ExprKind::Var: return e;
    case ExprKind::Param: return expr::constant(FieldElement(static_cast<long>(k)));
    case ExprKind::Add: return expr::add(instantiate(e->lhs, k), instantiate(e->rhs, k));
    case ExprKind::Sub: return expr::sub(instantiate(e->lhs, k), instantiate(e->rhs, k));
    case ExprKind::Mul: return expr::mul(instantiate(e->lhs, k), instantiate(e->rhs, k));
    case ExprKind::Div: return expr::div(instantiate(e->lhs, k), instantiate(e->rhs, k));
    case ExprKind::Neg: return expr::neg(instantiate(e->lhs, k));
    case ExprKind::Pow:
      return expr::pow(instantiate(e->lhs, k),
                       e->exponent == Expr::kParamExponent ? k : e->exponent);
    case ExprKind::Abs: return expr::abs(instantiate(e->lhs, k));
    case ExprKind::Sqrt: return expr::sqrt(instantiate(e->lhs, k));
  }
  return e;
}

/// Replaces x by `inner`.
inline ExprPtr substitute(const ExprPtr& e, const ExprPtr& inner) {
  switch (e->kind) {
    case ExprKind::Const:
    case ExprKind::Param: return e;
    case ExprKind::Var: return inner;
    case ExprKind::Add: return expr::add(substitute(e->lhs, inner), substitute(e->rhs, inner));
    case ExprKind::Sub: return expr::sub(substitute(e->lhs, inner), substitute(e->rhs, inner));
    case ExprKind::Mul: return expr::mul(substitute(e->lhs, inner), substitute(e->rhs, inner));
    case ExprKind::Div: return expr::div(substitute(e->lhs, inner), substitute(e->rhs, inner));
    case ExprKind::Neg: return expr::neg(substitute(e->lhs, inner));
    case ExprKind::Pow: return expr::pow(substitute(e->lhs, inner), e->exponent);
    case ExprKind::Abs: return expr::abs(substitute(e->lhs, inner));
    case ExprKind::Sqrt: return expr::sqrt(substitute(e->lhs, inner));
  }
  return e;
}

/// Outcome of exact evaluation.
struct ExactValue {
  enum class Status { Ok, NotInField, DivisionByZero, NegativeSqrt };
  Status status = Status::Ok;
  FieldElement value;

  bool ok() const { return status == Status::Ok; }
};

inline ExactValue evaluate_exact(const ExprPtr& e, const FieldElement& x) {
  using S = ExactValue::Status;
  auto bin = [&x](const ExprPtr& l, const ExprPtr& r, auto op) -> ExactValue {
    ExactValue a = evaluate_exact(l, x);
    if (!a.ok()) return a;
    ExactValue b = evaluate_exact(r, x);
    if (!b.ok()) return b;
    return op(a.value, b.value);
  };
  switch (e->kind) {
    case ExprKind::Const: return {S::Ok, e->value};
    case ExprKind::Var: return {S::Ok, x};
    case ExprKind::Param: throw EvaluationError("family index is not bound");
    case ExprKind::Add:
      return bin(e->lhs, e->rhs, [](auto& a, auto& b) { return ExactValue{S::Ok, a + b}; });
    case ExprKind::Sub:
      return bin(e->lhs, e->rhs, [](auto& a, auto& b) { return ExactValue{S::Ok, a - b}; });
    case ExprKind::Mul:
      return bin(e->lhs, e->rhs, [](auto& a, auto& b) { return ExactValue{S::Ok, a * b}; });
    case ExprKind::Div:
      return bin(e->lhs, e->rhs, [](auto& a, auto& b) {
        if (b.is_zero()) return ExactValue{S::DivisionByZero, {}};
        return ExactValue{S::Ok, a / b};
      });
    case ExprKind::Neg: {
      ExactValue a = evaluate_exact(e->lhs, x);
      if (a.ok()) a.value = -a.value;
      return a;
    }
    case ExprKind::Pow: {
      if (e->exponent == Expr::kParamExponent) throw EvaluationError("family index is not bound");
      ExactValue a = evaluate_exact(e->lhs, x);
      if (!a.ok()) return a;
      FieldElement v(1);
      for (int i = 0; i < e->exponent; ++i) v *= a.value;
      return {S::Ok, v};
    }
    case ExprKind::Abs: {
      ExactValue a = evaluate_exact(e->lhs, x);
      if (a.ok()) a.value = a.value.abs();
      return a;
    }
    case ExprKind::Sqrt: {
      ExactValue a = evaluate_exact(e->lhs, x);
      if (!a.ok()) return a;
      if (a.value.sign() < 0) return {S::NegativeSqrt, {}};
      auto r = sqrt_in_field(a.value);
      if (!r) return {S::NotInField, {}};
      return {S::Ok, *r};
    }
  }
  return {S::Ok, {}};
}

/// Floating evaluation; NaN or infinity signals an undefined value.
inline long double evaluate_float(const ExprPtr& e, long double x) {
  switch (e->kind) {
    case ExprKind::Const: return static_cast<long double>(e->value.to_double());
    case ExprKind::Var: return x;
    case ExprKind::Param: throw EvaluationError("family index is not bound");
    case ExprKind::Add: return evaluate_float(e->lhs, x) + evaluate_float(e->rhs, x);
    case ExprKind::Sub: return evaluate_float(e->lhs, x) - evaluate_float(e->rhs, x);
    case ExprKind::Mul: return evaluate_float(e->lhs, x) * evaluate_float(e->rhs, x);
    case ExprKind::Div: return evaluate_float(e->lhs, x) / evaluate_float(e->rhs, x);
    case ExprKind::Neg: return -evaluate_float(e->lhs, x);
    case ExprKind::Pow: {
      if (e->exponent == Expr::kParamExponent) throw EvaluationError("family index is not bound");
      const long double b = evaluate_float(e->lhs, x);
      long double v = 1;
      for (int i = 0; i < e->exponent; ++i) v *= b;
      return v;
    }
    case ExprKind::Abs: return std::fabs(evaluate_float(e->lhs, x));
    case ExprKind::Sqrt: return std::sqrt(evaluate_float(e->lhs, x));
  }
  return 0;
}

namespace detail {

inline int precedence(const ExprPtr& e) {
  switch (e->kind) {
    case ExprKind::Add:
    case ExprKind::Sub: return 1;
    case ExprKind::Mul:
    case ExprKind::Div: return 2;
    case ExprKind::Neg: return 3;
    case ExprKind::Pow: return 4;
    case ExprKind::Const: return e->value.is_rational() && e->value.rat_part().is_integer() &&
                                         e->value.sign() >= 0
                                     ? 5
                                     : 1;
    default: return 5;
  }
}

inline std::string wrap(const ExprPtr& e, int min_prec);

}  // namespace detail

/// DSL syntax; the parser reads it back to an equal tree.
inline std::string to_string(const ExprPtr& e) {
  using detail::wrap;
  switch (e->kind) {
    case ExprKind::Const: return e->value.to_string();
    case ExprKind::Var: return "x";
    case ExprKind::Param: return "k";
    case ExprKind::Add: return wrap(e->lhs, 1) + " + " + wrap(e->rhs, 2);
    case ExprKind::Sub: return wrap(e->lhs, 1) + " - " + wrap(e->rhs, 2);
    case ExprKind::Mul: return wrap(e->lhs, 2) + "*" + wrap(e->rhs, 3);
    case ExprKind::Div: return wrap(e->lhs, 2) + "/" + wrap(e->rhs, 3);
    case ExprKind::Neg: return "-" + wrap(e->lhs, 3);
    case ExprKind::Pow:
      return wrap(e->lhs, 5) + "^" +
             (e->exponent == Expr::kParamExponent ? std::string("k") : std::to_string(e->exponent));
    case ExprKind::Abs: return "abs(" + to_string(e->lhs) + ")";
    case ExprKind::Sqrt: return "sqrt(" + to_string(e->lhs) + ")";
  }
  return "?";
}

inline std::string detail::wrap(const ExprPtr& e, int min_prec) {
  const std::string s = to_string(e);
  return precedence(e) >= min_prec ? s : "(" + s + ")";
}

inline bool same_expr(const ExprPtr& a, const ExprPtr& b) { return to_string(a) == to_string(b); }

}  // namespace symcont
