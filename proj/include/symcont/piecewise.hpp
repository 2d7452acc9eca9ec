#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "symcont/domain.hpp"
#include "symcont/expr.hpp"

namespace symcont {

struct Branch {
  Region region;
  ExprPtr expr;
};

struct EvalResult {
  enum class Status { Ok, NotInField, OutOfDomain, DivisionByZero, NegativeSqrt, NoBranch };
  Status status = Status::Ok;
  FieldElement value;
  std::size_t branch = 0;

  bool ok() const { return status == Status::Ok; }
};

inline const char* to_string(EvalResult::Status s) {
  switch (s) {
    case EvalResult::Status::Ok: return "ok";
    case EvalResult::Status::NotInField: return "not in field";
    case EvalResult::Status::OutOfDomain: return "out of domain";
    case EvalResult::Status::DivisionByZero: return "division by zero";
    case EvalResult::Status::NegativeSqrt: return "square root of a negative value";
    case EvalResult::Status::NoBranch: return "no branch applies";
  }
  return "?";
}

struct NonTotal : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Piecewise function with first-match dispatch over ordered branches. An
/// else-branch is a branch whose region is trivial.
class PiecewiseFn {
 public:
  PiecewiseFn() = default;
  PiecewiseFn(StructuredSet domain, std::vector<Branch> branches)
      : domain_(std::move(domain)), branches_(std::move(branches)) {}

  const StructuredSet& domain() const { return domain_; }
  const std::vector<Branch>& branches() const { return branches_; }

  bool has_else() const { return !branches_.empty() && branches_.back().region.is_trivial(); }

  /// Index of the first branch whose region contains x; x must be in the domain.
  std::optional<std::size_t> select(const FieldElement& x) const {
    for (std::size_t i = 0; i < branches_.size(); ++i) {
      try {
        if (branches_[i].region.contains(x)) return i;
      } catch (const std::exception&) {
        // A composed guard undefined at x does not hold there.
      }
    }
    return std::nullopt;
  }

  EvalResult evaluate(const FieldElement& x) const {
    using S = EvalResult::Status;
    if (!domain_.contains(x)) return {S::OutOfDomain, {}, 0};
    auto b = select(x);
    if (!b) return {S::NoBranch, {}, 0};
    ExactValue v = evaluate_exact(branches_[*b].expr, x);
    switch (v.status) {
      case ExactValue::Status::Ok: return {S::Ok, v.value, *b};
      case ExactValue::Status::NotInField: return {S::NotInField, {}, *b};
      case ExactValue::Status::DivisionByZero: return {S::DivisionByZero, {}, *b};
      case ExactValue::Status::NegativeSqrt: return {S::NegativeSqrt, {}, *b};
    }
    return {S::NoBranch, {}, 0};
  }

  /// Float value at an exactly given point; branch choice stays exact.
  std::optional<long double> evaluate_float(const FieldElement& x) const {
    if (!domain_.contains(x)) return std::nullopt;
    auto b = select(x);
    if (!b) return std::nullopt;
    const long double v = symcont::evaluate_float(branches_[*b].expr, x.to_double());
    if (!std::isfinite(v)) return std::nullopt;
    return v;
  }

  /// Syntactic totality: an else-branch, or unconditional `x in S` branches
  /// whose sets together list every atom of the domain.
  bool syntactically_total() const {
    if (has_else()) return true;
    std::vector<std::string> covered;
    for (const auto& b : branches_) {
      if (b.region.atoms().size() != 1) continue;
      const auto* in = std::get_if<InSet>(&b.region.atoms().front());
      if (!in || in->negated) continue;
      for (const auto& atom : in->set.atoms())
        covered.push_back(std::visit([](const auto& a) { return a.to_string(); }, atom));
    }
    for (const auto& atom : domain_.atoms()) {
      const std::string s = std::visit([](const auto& a) { return a.to_string(); }, atom);
      if (std::find(covered.begin(), covered.end(), s) == covered.end()) return false;
    }
    return true;
  }

  void require_total() const {
    if (!syntactically_total())
      throw NonTotal("piecewise definition needs an else branch to be total on " +
                     domain_.to_string());
  }

  bool mentions_param() const {
    for (const auto& b : branches_)
      if (symcont::mentions_param(b.expr)) return true;
    return false;
  }

  PiecewiseFn instantiate(int k) const {
    std::vector<Branch> out;
    for (const auto& b : branches_) out.push_back({b.region, symcont::instantiate(b.expr, k)});
    return PiecewiseFn(domain_, std::move(out));
  }

  /// DSL text of a declaration named `name`.
  std::string to_dsl(const std::string& name) const {
    std::string s = "fn " + name + " on " + domain_.to_string() + " = piecewise {\n";
    for (std::size_t i = 0; i < branches_.size(); ++i) {
      const auto& b = branches_[i];
      s += "  " + (b.region.is_trivial() ? std::string("else") : b.region.to_string()) + " -> " +
           symcont::to_string(b.expr) + (i + 1 < branches_.size() ? ",\n" : "\n");
    }
    return s + "}";
  }

 private:
  StructuredSet domain_;
  std::vector<Branch> branches_;
};

/// f_k for k = 1, 2, ...; the template mentions the index k.
struct FnFamily {
  std::string param = "k";
  PiecewiseFn body;

  PiecewiseFn instantiate(int k) const { return body.instantiate(k); }
};

/// Evidence that g is uniformly continuous on its domain.
struct UniformContinuityCert {
  struct Lipschitz {
    FieldElement constant;
    StructuredSet scope;
  };
  struct SqrtOnNonnegatives {};
  struct Declared {
    int sampling_budget = 10000;
  };
  std::variant<Lipschitz, SqrtOnNonnegatives, Declared> evidence;

  std::string describe() const {
    if (const auto* l = std::get_if<Lipschitz>(&evidence))
      return "lipschitz(" + l->constant.to_string() + ") on " + l->scope.to_string();
    if (std::holds_alternative<SqrtOnNonnegatives>(evidence)) return "sqrt on [0, inf)";
    return "declared(budget " + std::to_string(std::get<Declared>(evidence).sampling_budget) + ")";
  }
};

}  // namespace symcont
