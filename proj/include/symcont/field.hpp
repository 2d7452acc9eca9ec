#pragma once

#include <cctype>
#include <cmath>
#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "symcont/rational.hpp"

namespace symcont {

inline constexpr int kDefaultRadicand = 2;

struct MixedRadicand : std::invalid_argument {
  MixedRadicand(int d1, int d2)
      : std::invalid_argument("mixed radicands rt(" + std::to_string(d1) + ") and rt(" +
                              std::to_string(d2) + ")") {}
};

inline bool is_squarefree_radicand(int d) {
  if (d < 2) return false;
  for (int p = 2; p * p <= d; ++p)
    if (d % (p * p) == 0) return false;
  return true;
}

/// Exact element a + b*sqrt(d) of the real quadratic field Q(sqrt(d)).
///
/// One radicand is used per analysis universe. An element with b == 0 is
/// rational and combines with any radicand; combining two irrational
/// elements over different radicands throws MixedRadicand.
class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(long n) : a_(n) {}            // NOLINT(google-explicit-constructor)
  FieldElement(Rational a) : a_(std::move(a)) {}  // NOLINT(google-explicit-constructor)
  FieldElement(Rational a, Rational b, int radicand = kDefaultRadicand)
      : a_(std::move(a)), b_(std::move(b)), d_(radicand) {
    if (!b_.is_zero() && !is_squarefree_radicand(d_))
      throw std::invalid_argument("radicand must be a squarefree integer >= 2");
  }

  /// sqrt(d) itself.
  static FieldElement root(int radicand = kDefaultRadicand) {
    return FieldElement(Rational(0), Rational(1), radicand);
  }

  const Rational& rat_part() const { return a_; }
  const Rational& irr_part() const { return b_; }
  int radicand() const { return d_; }
  bool is_rational() const { return b_.is_zero(); }
  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

  /// Exact sign via integer comparison of a^2 against d*b^2.
  int sign() const {
    const int sa = a_.sign(), sb = b_.sign();
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sb;
    const Rational lhs = a_ * a_;
    const Rational rhs = b_ * b_ * Rational(d_);
    return lhs > rhs ? sa : sb;
  }

  FieldElement conjugate() const { return FieldElement(a_, -b_, d_); }
  /// a^2 - d b^2.
  Rational norm() const { return a_ * a_ - b_ * b_ * Rational(d_); }

  FieldElement abs() const { return sign() < 0 ? -*this : *this; }

  FieldElement inverse() const {
    if (is_zero()) throw DivisionByZero();
    const Rational n = norm();
    return FieldElement(a_ / n, -b_ / n, d_);
  }

  /// Double approximation. Opposite-sign parts are evaluated as
  /// norm / (a - b sqrt(d)) so no cancellation occurs.
  double to_double() const {
    if (b_.is_zero()) return a_.to_double();
    const double root = std::sqrt(static_cast<double>(d_));
    if (a_.is_zero() || a_.sign() == b_.sign()) return a_.to_double() + b_.to_double() * root;
    return norm().to_double() / (a_.to_double() - b_.to_double() * root);
  }

  /// Rendered as "p/q + r/s*rt(d)"; zero parts are omitted.
  std::string to_string() const {
    if (b_.is_zero()) return a_.to_string();
    auto surd = [this](const Rational& c) {
      const std::string r = "rt(" + std::to_string(d_) + ")";
      if (c == Rational(1)) return r;
      if (c == Rational(-1)) return "-" + r;
      return c.to_string() + "*" + r;
    };
    if (a_.is_zero()) return surd(b_);
    if (b_.sign() < 0) return a_.to_string() + " - " + surd(-b_);
    return a_.to_string() + " + " + surd(b_);
  }

  /// Inverse of to_string().
  static FieldElement parse(std::string_view text);

  FieldElement operator-() const { return FieldElement(-a_, -b_, d_); }

  FieldElement& operator+=(const FieldElement& o) {
    d_ = merged_radicand(o);
    a_ += o.a_;
    b_ += o.b_;
    return *this;
  }
  FieldElement& operator-=(const FieldElement& o) {
    d_ = merged_radicand(o);
    a_ -= o.a_;
    b_ -= o.b_;
    return *this;
  }
  FieldElement& operator*=(const FieldElement& o) {
    const int d = merged_radicand(o);
    Rational a = a_ * o.a_ + b_ * o.b_ * Rational(d);
    Rational b = a_ * o.b_ + b_ * o.a_;
    a_ = std::move(a);
    b_ = std::move(b);
    d_ = d;
    return *this;
  }
  FieldElement& operator/=(const FieldElement& o) { return *this *= o.inverse(); }

  friend FieldElement operator+(FieldElement x, const FieldElement& y) { return x += y; }
  friend FieldElement operator-(FieldElement x, const FieldElement& y) { return x -= y; }
  friend FieldElement operator*(FieldElement x, const FieldElement& y) { return x *= y; }
  friend FieldElement operator/(FieldElement x, const FieldElement& y) { return x /= y; }

  friend bool operator==(const FieldElement& x, const FieldElement& y) {
    if (x.a_ != y.a_ || x.b_ != y.b_) return false;
    return x.b_.is_zero() || x.d_ == y.d_;
  }
  friend std::strong_ordering operator<=>(const FieldElement& x, const FieldElement& y) {
    const int s = (x - y).sign();
    return s < 0 ? std::strong_ordering::less
                 : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  int merged_radicand(const FieldElement& o) const {
    if (o.b_.is_zero()) return d_;
    if (b_.is_zero()) return o.d_;
    if (d_ != o.d_) throw MixedRadicand(d_, o.d_);
    return d_;
  }

  Rational a_;
  Rational b_;
  int d_ = kDefaultRadicand;
};

enum class FieldOp { Add, Sub, Mul, Div, Neg };

/// Exact field arithmetic; Div by zero throws DivisionByZero.
inline FieldElement field_arith(FieldOp op, const FieldElement& x, const FieldElement& y = {}) {
  switch (op) {
    case FieldOp::Add: return x + y;
    case FieldOp::Sub: return x - y;
    case FieldOp::Mul: return x * y;
    case FieldOp::Div: return x / y;
    case FieldOp::Neg: return -x;
  }
  return x;
}

inline int field_sign(const FieldElement& x) { return x.sign(); }

/// x / y when the quotient is rational, nullopt otherwise.
inline std::optional<Rational> ratio_if_rational(const FieldElement& x, const FieldElement& y) {
  const FieldElement q = x / y;
  if (!q.is_rational()) return std::nullopt;
  return q.rat_part();
}

inline double to_float(const FieldElement& x) { return x.to_double(); }

/// Largest integer n with n <= x.
inline mpz_class floor_of(const FieldElement& x) {
  if (x.is_rational()) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), x.rat_part().numerator().get_mpz_t(),
               x.rat_part().denominator().get_mpz_t());
    return q;
  }
  const double approx = x.to_double();
  mpz_class n(std::floor(approx));
  while (FieldElement(Rational(n, 1)) > x) n -= 1;
  while (FieldElement(Rational(n + 1, 1)) <= x) n += 1;
  return n;
}

/// Nonnegative square root when it lies in the field.
inline std::optional<FieldElement> sqrt_in_field(const FieldElement& x) {
  const int s = x.sign();
  if (s < 0) return std::nullopt;
  if (s == 0) return FieldElement();
  const int d = x.radicand();
  Rational root;
  if (x.is_rational()) {
    if (x.rat_part().is_square(&root)) return FieldElement(root);
    // a = d q^2 gives q sqrt(d)
    if ((x.rat_part() / Rational(d)).is_square(&root)) return FieldElement(Rational(0), root, d);
    return std::nullopt;
  }
  // (p + q rt)^2 = p^2 + d q^2 + 2 p q rt, so p^2 = (a +- sqrt(norm)) / 2.
  Rational n;
  if (!x.norm().is_square(&n)) return std::nullopt;
  for (const Rational& cand : {(x.rat_part() + n) / Rational(2), (x.rat_part() - n) / Rational(2)}) {
    Rational p;
    if (cand.is_zero() || !cand.is_square(&p)) continue;
    const Rational q = x.irr_part() / (Rational(2) * p);
    FieldElement r(p, q, d);
    if (r * r == x) return r.abs();
  }
  return std::nullopt;
}

inline FieldElement FieldElement::parse(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw std::invalid_argument("empty field literal");

  // Split off the surd term "...rt(d)" if present.
  const auto rt = s.find("rt(");
  if (rt == std::string::npos) return FieldElement(Rational::parse(s));
  const auto close = s.find(')', rt);
  if (close == std::string::npos || close + 1 != s.size())
    throw std::invalid_argument("malformed field literal: " + s);
  const int d = std::stoi(s.substr(rt + 3, close - rt - 3));

  // Coefficient text sits between the sign that starts the surd term and "rt(".
  std::size_t term_start = rt;
  if (term_start > 0 && s[term_start - 1] == '*') --term_start;
  while (term_start > 0 && s[term_start - 1] != '+' && s[term_start - 1] != '-') --term_start;
  // A leading '-' belonging to the surd term.
  std::size_t sign_pos = term_start;
  bool negative = false;
  if (sign_pos > 0 && (s[sign_pos - 1] == '-' || s[sign_pos - 1] == '+')) {
    negative = s[sign_pos - 1] == '-';
    --sign_pos;
  }
  std::string coef = s.substr(term_start, rt - term_start);
  if (!coef.empty() && coef.back() == '*') coef.pop_back();
  Rational b = coef.empty() ? Rational(1) : Rational::parse(coef);
  if (negative) b = -b;
  const std::string head = s.substr(0, sign_pos);
  Rational a = head.empty() ? Rational(0) : Rational::parse(head);
  return FieldElement(a, b, d);
}

/// Extended reals over the field, used for limit values.
class ExtReal {
 public:
  enum class Kind { Finite, PlusInfinity, MinusInfinity };

  ExtReal() = default;
  ExtReal(FieldElement v) : value_(std::move(v)) {}  // NOLINT(google-explicit-constructor)
  static ExtReal plus_infinity() { return ExtReal(Kind::PlusInfinity); }
  static ExtReal minus_infinity() { return ExtReal(Kind::MinusInfinity); }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::Finite; }
  const FieldElement& value() const { return value_; }

  std::string to_string() const {
    switch (kind_) {
      case Kind::PlusInfinity: return "+inf";
      case Kind::MinusInfinity: return "-inf";
      default: return value_.to_string();
    }
  }

  friend bool operator==(const ExtReal& x, const ExtReal& y) {
    return x.kind_ == y.kind_ && (x.kind_ != Kind::Finite || x.value_ == y.value_);
  }
  friend std::strong_ordering operator<=>(const ExtReal& x, const ExtReal& y) {
    auto rank = [](Kind k) { return k == Kind::MinusInfinity ? 0 : (k == Kind::Finite ? 1 : 2); };
    if (x.kind_ != y.kind_ || x.kind_ != Kind::Finite) return rank(x.kind_) <=> rank(y.kind_);
    return x.value_ <=> y.value_;
  }

 private:
  explicit ExtReal(Kind k) : kind_(k) {}
  Kind kind_ = Kind::Finite;
  FieldElement value_;
};

}  // namespace symcont
