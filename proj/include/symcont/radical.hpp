#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "symcont/field.hpp"

namespace symcont {

/// Finite sum  sum_i c_i * sqrt(r_i)  with c_i, r_i in the field and r_i > 0.
///
/// Radicands are kept pairwise inequivalent modulo field squares (r_i / r_j
/// is never a square), so the square roots are linearly independent and the
/// sum is zero exactly when every coefficient is. The class of 1 holds the
/// plain field part.
class RadicalSum {
 public:
  struct Term {
    FieldElement coef;
    FieldElement radicand;
  };

  RadicalSum() = default;
  RadicalSum(FieldElement v) { add_term(std::move(v), FieldElement(1)); }  // NOLINT

  static RadicalSum sqrt_of(const FieldElement& r) {
    RadicalSum s;
    if (r.sign() < 0) throw std::domain_error("square root of a negative value");
    s.add_term(FieldElement(1), r);
    return s;
  }

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// The value when it lies in the field.
  std::optional<FieldElement> field_value() const {
    if (terms_.empty()) return FieldElement(0);
    if (terms_.size() == 1 && terms_[0].radicand == FieldElement(1)) return terms_[0].coef;
    return std::nullopt;
  }

  void add_term(FieldElement coef, FieldElement radicand) {
    if (coef.is_zero() || radicand.is_zero()) return;
    if (auto root = sqrt_in_field(radicand)) {
      coef *= *root;
      radicand = FieldElement(1);
    }
    for (auto it = terms_.begin(); it != terms_.end(); ++it) {
      if (auto ratio = sqrt_in_field(radicand / it->radicand)) {
        it->coef += coef * *ratio;
        if (it->coef.is_zero()) terms_.erase(it);
        return;
      }
    }
    terms_.push_back({std::move(coef), std::move(radicand)});
  }

  RadicalSum operator-() const {
    RadicalSum r = *this;
    for (auto& t : r.terms_) t.coef = -t.coef;
    return r;
  }
  friend RadicalSum operator+(RadicalSum x, const RadicalSum& y) {
    for (const auto& t : y.terms_) x.add_term(t.coef, t.radicand);
    return x;
  }
  friend RadicalSum operator-(const RadicalSum& x, const RadicalSum& y) { return x + (-y); }
  friend RadicalSum operator*(const RadicalSum& x, const RadicalSum& y) {
    RadicalSum r;
    for (const auto& a : x.terms_)
      for (const auto& b : y.terms_) r.add_term(a.coef * b.coef, a.radicand * b.radicand);
    return r;
  }
  friend bool operator==(const RadicalSum& x, const RadicalSum& y) { return (x - y).is_zero(); }

  /// Exact inverse for single-term sums: 1/(c sqrt r) = sqrt(r) / (c r).
  std::optional<RadicalSum> inverse() const {
    if (terms_.size() != 1) return std::nullopt;
    RadicalSum r;
    r.add_term(FieldElement(1) / (terms_[0].coef * terms_[0].radicand), terms_[0].radicand);
    return r;
  }

  /// Exact for up to three classes; larger sums fall back to a float test
  /// that must clear a safety margin.
  std::optional<int> sign() const { return sign_impl(0); }

  double to_double() const {
    long double v = 0;
    for (const auto& t : terms_)
      v += static_cast<long double>(t.coef.to_double()) * std::sqrt(static_cast<long double>(t.radicand.to_double()));
    return static_cast<double>(v);
  }

  /// "c" for field values, otherwise terms like "c*sqrt(r)" joined by " + ".
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      const auto& t = terms_[i];
      if (i) s += " + ";
      if (t.radicand == FieldElement(1)) s += t.coef.to_string();
      else s += "(" + t.coef.to_string() + ")*sqrt(" + t.radicand.to_string() + ")";
    }
    return s;
  }

 private:
  std::optional<int> sign_impl(int depth) const {
    if (terms_.empty()) return 0;
    bool pos = false, neg = false;
    for (const auto& t : terms_) (t.coef.sign() > 0 ? pos : neg) = true;
    if (!(pos && neg)) return pos ? 1 : -1;
    if (depth < 3 && terms_.size() <= 3) {
      // sign(X + Y) with X the first term: compare X^2 against Y^2.
      RadicalSum x, y;
      x.terms_.push_back(terms_[0]);
      y.terms_.assign(terms_.begin() + 1, terms_.end());
      auto sy = y.sign_impl(depth + 1);
      const int sx = terms_[0].coef.sign();
      if (sy) {
        if (*sy == 0 || *sy == sx) return sx;
        auto cmp = (x * x - y * y).sign_impl(depth + 1);
        if (cmp) return *cmp > 0 ? sx : (*cmp < 0 ? *sy : 0);
      }
    }
    long double v = 0, scale = 0;
    for (const auto& t : terms_) {
      const long double term = static_cast<long double>(t.coef.to_double()) *
                               std::sqrt(static_cast<long double>(t.radicand.to_double()));
      v += term;
      scale += std::fabs(term);
    }
    if (std::fabs(v) <= 1e-12L * scale) return std::nullopt;
    return v > 0 ? 1 : -1;
  }

  std::vector<Term> terms_;
};

}  // namespace symcont
