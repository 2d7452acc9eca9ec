#pragma once

#include <algorithm>
#include <climits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "symcont/domain.hpp"
#include "symcont/expr.hpp"
#include "symcont/radical.hpp"

namespace symcont {

/// Polynomial in t with field coefficients; c[i] multiplies t^i.
class Poly {
 public:
  Poly() = default;
  Poly(FieldElement c) {  // NOLINT(google-explicit-constructor)
    if (!c.is_zero()) c_.push_back(std::move(c));
  }
  explicit Poly(std::vector<FieldElement> c) : c_(std::move(c)) { trim(); }

  static Poly t() { return Poly({FieldElement(0), FieldElement(1)}); }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<FieldElement>& coefficients() const { return c_; }
  FieldElement coef(int i) const {
    return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : FieldElement(0);
  }
  const FieldElement& leading() const { return c_.back(); }

  /// Exponent of the lowest nonzero term; -1 for the zero polynomial.
  int order() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!c_[i].is_zero()) return static_cast<int>(i);
    return -1;
  }
  const FieldElement& lowest() const { return c_[order()]; }

  Poly shift_down(int k) const {
    return Poly(std::vector<FieldElement>(c_.begin() + std::min<int>(k, c_.size()), c_.end()));
  }
  Poly shift_up(int k) const {
    std::vector<FieldElement> c(k, FieldElement(0));
    c.insert(c.end(), c_.begin(), c_.end());
    return Poly(std::move(c));
  }

  Poly operator-() const {
    Poly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
  }
  friend Poly operator+(const Poly& x, const Poly& y) {
    std::vector<FieldElement> c(std::max(x.c_.size(), y.c_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = x.coef(i) + y.coef(i);
    return Poly(std::move(c));
  }
  friend Poly operator-(const Poly& x, const Poly& y) { return x + (-y); }
  friend Poly operator*(const Poly& x, const Poly& y) {
    if (x.is_zero() || y.is_zero()) return Poly();
    std::vector<FieldElement> c(x.c_.size() + y.c_.size() - 1);
    for (std::size_t i = 0; i < x.c_.size(); ++i) {
      if (x.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < y.c_.size(); ++j) c[i + j] += x.c_[i] * y.c_[j];
    }
    return Poly(std::move(c));
  }
  Poly scaled(const FieldElement& k) const {
    Poly r = *this;
    for (auto& c : r.c_) c *= k;
    r.trim();
    return r;
  }
  friend bool operator==(const Poly& x, const Poly& y) { return x.c_ == y.c_; }

  /// Quotient and remainder of Euclidean division.
  static std::pair<Poly, Poly> divmod(Poly a, const Poly& b) {
    if (b.is_zero()) throw DivisionByZero();
    std::vector<FieldElement> q(std::max(0, a.degree() - b.degree() + 1));
    const FieldElement lead_inv = b.leading().inverse();
    while (!a.is_zero() && a.degree() >= b.degree()) {
      const int shift = a.degree() - b.degree();
      const FieldElement f = a.leading() * lead_inv;
      q[shift] = f;
      a = a - b.scaled(f).shift_up(shift);
    }
    return {Poly(std::move(q)), a};
  }

  static Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
      Poly r = divmod(a, b).second;
      a = std::move(b);
      b = std::move(r);
    }
    if (a.is_zero()) return a;
    return a.scaled(a.leading().inverse());
  }

  std::string to_string() const {
    if (c_.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i].is_zero()) continue;
      if (!s.empty()) s += " + ";
      s += "(" + c_[i].to_string() + ")";
      if (i == 1) s += "*t";
      if (i > 1) s += "*t^" + std::to_string(i);
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<FieldElement> c_;
};

/// Truncated power series sum_i c[i] t^i.
using Series = std::vector<FieldElement>;

namespace detail {

inline Series series_of(const Poly& p, int terms) {
  Series s(terms);
  for (int i = 0; i < terms; ++i) s[i] = p.coef(i);
  return s;
}

// a / b for b(0) != 0.
inline Series series_divide(const Series& a, const Series& b) {
  const std::size_t n = a.size();
  Series y(n);
  if (n == 0) return y;
  const FieldElement inv = b[0].inverse();
  for (std::size_t k = 0; k < n; ++k) {
    FieldElement acc = a[k];
    for (std::size_t i = 1; i <= k && i < b.size(); ++i) acc -= b[i] * y[k - i];
    y[k] = acc * inv;
  }
  return y;
}

// sqrt(s) for s(0) == 1, with root(0) == 1.
inline Series series_sqrt_unit(const Series& s) {
  Series y(s.size());
  if (s.empty()) return y;
  y[0] = FieldElement(1);
  const FieldElement half(Rational(1, 2));
  for (std::size_t k = 1; k < s.size(); ++k) {
    FieldElement acc = s[k];
    for (std::size_t i = 1; i < k; ++i) acc -= y[i] * y[k - i];
    y[k] = acc * half;
  }
  return y;
}

inline Series series_multiply(const Series& a, const Series& b) {
  Series y(std::min(a.size(), b.size()));
  for (std::size_t k = 0; k < y.size(); ++k)
    for (std::size_t i = 0; i <= k; ++i) y[k] += a[i] * b[k - i];
  return y;
}

}  // namespace detail

/// Quotient of polynomials in t, reduced by their gcd; the denominator's
/// leading coefficient is 1.
class RatFun {
 public:
  RatFun() : num_(), den_(FieldElement(1)) {}
  RatFun(FieldElement c) : num_(std::move(c)), den_(FieldElement(1)) {}  // NOLINT
  RatFun(Poly p) : num_(std::move(p)), den_(FieldElement(1)) {}          // NOLINT
  RatFun(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }
  FieldElement constant_value() const { return num_.coef(0) / den_.coef(0); }

  /// Exponent of t in the leading behavior near 0 (num order - den order).
  int order() const { return num_.order() - den_.order(); }
  FieldElement lowest() const { return num_.lowest() / den_.lowest(); }

  /// Sign for all small t > 0; 0 only for the zero function.
  int eventual_sign() const { return is_zero() ? 0 : lowest().sign(); }

  /// Laurent coefficients: entries i = 0..terms-1 multiply t^(order + i).
  Series laurent(int terms) const {
    const Poly n = num_.shift_down(num_.order()), d = den_.shift_down(den_.order());
    return detail::series_divide(detail::series_of(n, terms), detail::series_of(d, terms));
  }

  RatFun operator-() const { return RatFun(-num_, den_, true); }
  friend RatFun operator+(const RatFun& x, const RatFun& y) {
    if (x.den_ == y.den_) return RatFun(x.num_ + y.num_, x.den_);
    return RatFun(x.num_ * y.den_ + y.num_ * x.den_, x.den_ * y.den_);
  }
  friend RatFun operator-(const RatFun& x, const RatFun& y) { return x + (-y); }
  friend RatFun operator*(const RatFun& x, const RatFun& y) {
    return RatFun(x.num_ * y.num_, x.den_ * y.den_);
  }
  friend RatFun operator/(const RatFun& x, const RatFun& y) {
    if (y.is_zero()) throw DivisionByZero();
    return RatFun(x.num_ * y.den_, x.den_ * y.num_);
  }
  friend bool operator==(const RatFun& x, const RatFun& y) {
    return x.num_ == y.num_ && x.den_ == y.den_;
  }

  /// Square root as a rational function when num * den is a perfect square.
  std::optional<RatFun> exact_sqrt() const {
    if (is_zero()) return RatFun();
    const Poly p = num_ * den_;
    const int m = p.order();
    if (m % 2 != 0) return std::nullopt;
    const Poly q = p.shift_down(m);
    auto r0 = sqrt_in_field(q.coef(0));
    if (!r0 || q.coef(0).sign() < 0) return std::nullopt;
    const int half = q.degree() / 2;
    if (q.degree() % 2 != 0) return std::nullopt;
    // Unit-normalize, take the series root, and verify the polynomial square.
    Series s = detail::series_of(q.scaled(q.coef(0).inverse()), half + 1);
    Series y = detail::series_sqrt_unit(s);
    Poly root = Poly(y).scaled(*r0);
    if (!(root * root == q)) return std::nullopt;
    // sqrt(num/den) = sqrt(num*den) / den with den eventually positive.
    RatFun r(root.shift_up(m / 2), den_);
    if (den_.lowest().sign() < 0) r = -r;
    return r;
  }

  std::string to_string() const {
    if (den_.degree() == 0 && den_.coef(0) == FieldElement(1)) return num_.to_string();
    return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
  }

 private:
  RatFun(Poly num, Poly den, bool) : num_(std::move(num)), den_(std::move(den)) {}

  void normalize() {
    if (den_.is_zero()) throw DivisionByZero();
    if (num_.is_zero()) {
      den_ = Poly(FieldElement(1));
      return;
    }
    if (den_.degree() > 0) {
      const Poly g = Poly::gcd(num_, den_);
      if (g.degree() > 0) {
        num_ = Poly::divmod(num_, g).first;
        den_ = Poly::divmod(den_, g).first;
      }
    }
    const FieldElement lead = den_.leading().inverse();
    num_ = num_.scaled(lead);
    den_ = den_.scaled(lead);
  }

  Poly num_;
  Poly den_;
};

/// Limit value along a path: a finite radical sum, an infinity, or
/// undecided.
class AsymptoticValue {
 public:
  enum class Kind { Finite, PlusInfinity, MinusInfinity, Undecided };

  AsymptoticValue() = default;
  AsymptoticValue(RadicalSum v) : value_(std::move(v)) {}  // NOLINT
  AsymptoticValue(FieldElement v) : value_(std::move(v)) {}  // NOLINT
  static AsymptoticValue plus_infinity() { return AsymptoticValue(Kind::PlusInfinity); }
  static AsymptoticValue minus_infinity() { return AsymptoticValue(Kind::MinusInfinity); }
  static AsymptoticValue infinity(int sign) {
    return sign > 0 ? plus_infinity() : minus_infinity();
  }
  static AsymptoticValue undecided() { return AsymptoticValue(Kind::Undecided); }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::Finite; }
  bool is_infinite() const { return kind_ == Kind::PlusInfinity || kind_ == Kind::MinusInfinity; }
  bool is_undecided() const { return kind_ == Kind::Undecided; }
  bool is_zero() const { return is_finite() && value_.is_zero(); }
  const RadicalSum& value() const { return value_; }

  std::optional<ExtReal> to_ext_real() const {
    if (kind_ == Kind::PlusInfinity) return ExtReal::plus_infinity();
    if (kind_ == Kind::MinusInfinity) return ExtReal::minus_infinity();
    if (kind_ == Kind::Finite)
      if (auto v = value_.field_value()) return ExtReal(*v);
    return std::nullopt;
  }

  double to_double() const {
    switch (kind_) {
      case Kind::PlusInfinity: return HUGE_VAL;
      case Kind::MinusInfinity: return -HUGE_VAL;
      case Kind::Undecided: return NAN;
      default: return value_.to_double();
    }
  }

  /// Absolute gap |v| as a double; infinite limits give +inf.
  double magnitude() const {
    if (is_infinite()) return HUGE_VAL;
    return std::fabs(to_double());
  }

  std::string to_string() const {
    switch (kind_) {
      case Kind::PlusInfinity: return "+inf";
      case Kind::MinusInfinity: return "-inf";
      case Kind::Undecided: return "undecided";
      default: return value_.to_string();
    }
  }

  friend bool operator==(const AsymptoticValue& x, const AsymptoticValue& y) {
    return x.kind_ == y.kind_ && (x.kind_ != Kind::Finite || x.value_ == y.value_);
  }

 private:
  explicit AsymptoticValue(Kind k) : kind_(k) {}
  Kind kind_ = Kind::Finite;
  RadicalSum value_;
};

struct PathError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Exact value of an expression along x = a +- scale * t, t -> 0+:
///   rat + sum_i coef_i * sqrt(radicand_i)
/// with rational functions throughout. Values the class cannot hold
/// (roots of sums of roots, division by several roots, undecided absolute
/// values) become opaque and only carry their asymptotic value.
class PathValue {
 public:
  struct Root {
    RatFun radicand;
    RatFun coef;
  };

  PathValue() = default;
  PathValue(RatFun r) : rat_(std::move(r)) {}  // NOLINT

  static PathValue opaque(AsymptoticValue v, std::optional<int> sign) {
    PathValue p;
    p.opaque_ = Opaque{std::move(v), sign};
    return p;
  }

  static PathValue sqrt_of(const RatFun& r) {
    if (r.is_zero()) return PathValue();
    if (r.eventual_sign() < 0) throw PathError("square root of a value negative near the point");
    if (auto s = r.exact_sqrt()) return PathValue(*s);
    PathValue p;
    p.add_root(r, RatFun(FieldElement(1)));
    return p;
  }

  bool is_opaque() const { return opaque_.has_value(); }
  bool is_rational() const { return !is_opaque() && roots_.empty(); }
  const RatFun& rat() const { return rat_; }
  const std::map<std::string, Root>& roots() const { return roots_; }

  bool is_identically_zero() const { return !is_opaque() && rat_.is_zero() && roots_.empty(); }

  /// Leading behaviour  coefficient * t^(exponent/2)  of a nonzero exact value.
  struct Leading {
    int half_exponent;
    RadicalSum coefficient;
  };

  std::optional<Leading> leading(int extra_terms = 24) const {
    if (is_opaque() || is_identically_zero()) return std::nullopt;
    const int start = lowest_half_exponent();
    auto coeffs = expansion(start, start + 2 * extra_terms);
    for (int e = start; e <= start + 2 * extra_terms; ++e) {
      auto it = coeffs.find(e);
      if (it != coeffs.end() && !it->second.is_zero()) return Leading{e, it->second};
    }
    return std::nullopt;
  }

  AsymptoticValue limit() const {
    if (is_opaque()) return opaque_->value;
    if (is_identically_zero()) return AsymptoticValue(FieldElement(0));
    const int start = lowest_half_exponent();
    // Coefficients through t^0 decide the limit; everything beyond tends to 0.
    const int stop = std::max(start, 0);
    auto coeffs = expansion(start, stop);
    for (int e = start; e <= stop; ++e) {
      auto it = coeffs.find(e);
      if (it == coeffs.end() || it->second.is_zero()) continue;
      if (e > 0) break;
      if (e == 0) return AsymptoticValue(it->second);
      auto s = it->second.sign();
      if (!s) return AsymptoticValue::undecided();
      return AsymptoticValue::infinity(*s);
    }
    return AsymptoticValue(FieldElement(0));
  }

  /// Sign for all small t > 0.
  std::optional<int> eventual_sign() const {
    if (is_opaque()) return opaque_->sign;
    if (is_identically_zero()) return 0;
    if (roots_.empty()) return rat_.eventual_sign();
    auto l = leading();
    if (!l) return std::nullopt;
    return l->coefficient.sign();
  }

  PathValue operator-() const {
    if (is_opaque()) return opaque(negate(opaque_->value), flip(opaque_->sign));
    PathValue r = *this;
    r.rat_ = -r.rat_;
    for (auto& [k, root] : r.roots_) root.coef = -root.coef;
    return r;
  }

  friend PathValue operator+(const PathValue& x, const PathValue& y) {
    if (x.is_opaque() || y.is_opaque()) return opaque(add(x.limit(), y.limit()), std::nullopt);
    PathValue r = x;
    r.rat_ = r.rat_ + y.rat_;
    for (const auto& [k, root] : y.roots_) r.add_root(root.radicand, root.coef);
    return r;
  }
  friend PathValue operator-(const PathValue& x, const PathValue& y) { return x + (-y); }

  friend PathValue operator*(const PathValue& x, const PathValue& y) {
    if (x.is_opaque() || y.is_opaque()) return opaque(multiply(x.limit(), y.limit()), sign_product(x, y));
    PathValue r(x.rat_ * y.rat_);
    for (const auto& [k, root] : y.roots_) r.add_root(root.radicand, root.coef * x.rat_);
    for (const auto& [k, root] : x.roots_) r.add_root(root.radicand, root.coef * y.rat_);
    for (const auto& [kx, a] : x.roots_) {
      for (const auto& [ky, b] : y.roots_) {
        const RatFun coef = a.coef * b.coef;
        if (kx == ky) {
          r.rat_ = r.rat_ + coef * a.radicand;
          continue;
        }
        const RatFun prod = a.radicand * b.radicand;
        if (auto s = prod.exact_sqrt()) r.rat_ = r.rat_ + coef * *s;
        else r.add_root(prod, coef);
      }
    }
    return r;
  }

  friend PathValue operator/(const PathValue& x, const PathValue& y) {
    if (y.is_identically_zero()) throw PathError("division by a value that is identically zero");
    if (!x.is_opaque() && y.is_rational()) {
      PathValue r(x.rat_ / y.rat_);
      for (const auto& [k, root] : x.roots_) r.add_root(root.radicand, root.coef / y.rat_);
      return r;
    }
    if (!x.is_opaque() && !y.is_opaque() && y.roots_.size() == 1) {
      // Multiply through by the conjugate p - q sqrt(R).
      const auto& [key, root] = *y.roots_.begin();
      PathValue conj(y.rat_);
      conj.add_root(root.radicand, -root.coef);
      const RatFun norm = y.rat_ * y.rat_ - root.coef * root.coef * root.radicand;
      if (!norm.is_zero()) return (x * conj) / PathValue(norm);
    }
    return opaque(divide(x.limit(), y.limit(), y.eventual_sign()), quotient_sign(x, y));
  }

  PathValue abs() const {
    auto s = eventual_sign();
    if (s && *s >= 0) return *this;
    if (s) return -*this;
    return opaque(absolute(limit()), std::nullopt);
  }

  PathValue sqrt() const {
    if (is_rational()) return sqrt_of(rat_);
    auto s = eventual_sign();
    if (s && *s < 0) throw PathError("square root of a value negative near the point");
    return opaque(root(limit()), s ? std::optional<int>(*s != 0) : std::nullopt);
  }

  PathValue pow(int k) const {
    PathValue result(RatFun(FieldElement(1))), base = *this;
    while (k > 0) {
      if (k & 1) result = result * base;
      k >>= 1;
      if (k) base = base * base;
    }
    return result;
  }

  std::string to_string() const {
    if (is_opaque()) return "opaque(" + opaque_->value.to_string() + ")";
    std::string s = rat_.to_string();
    for (const auto& [k, root] : roots_)
      s += " + (" + root.coef.to_string() + ")*sqrt(" + root.radicand.to_string() + ")";
    return s;
  }

  // Asymptotic arithmetic used for opaque values.
  static AsymptoticValue negate(const AsymptoticValue& v) {
    if (v.is_finite()) return AsymptoticValue(-v.value());
    if (v.kind() == AsymptoticValue::Kind::PlusInfinity) return AsymptoticValue::minus_infinity();
    if (v.kind() == AsymptoticValue::Kind::MinusInfinity) return AsymptoticValue::plus_infinity();
    return v;
  }
  static AsymptoticValue add(const AsymptoticValue& x, const AsymptoticValue& y) {
    if (x.is_undecided() || y.is_undecided()) return AsymptoticValue::undecided();
    if (x.is_finite() && y.is_finite()) return AsymptoticValue(x.value() + y.value());
    if (x.is_finite()) return y;
    if (y.is_finite()) return x;
    return x.kind() == y.kind() ? x : AsymptoticValue::undecided();
  }
  static AsymptoticValue multiply(const AsymptoticValue& x, const AsymptoticValue& y) {
    if (x.is_undecided() || y.is_undecided()) return AsymptoticValue::undecided();
    if (x.is_finite() && y.is_finite()) return AsymptoticValue(x.value() * y.value());
    auto sx = sign_of(x), sy = sign_of(y);
    if (!sx || !sy || *sx == 0 || *sy == 0) return AsymptoticValue::undecided();
    return AsymptoticValue::infinity(*sx * *sy);
  }

 private:
  struct Opaque {
    AsymptoticValue value;
    std::optional<int> sign;
  };

  static std::optional<int> flip(std::optional<int> s) {
    if (s) return -*s;
    return s;
  }
  static std::optional<int> sign_of(const AsymptoticValue& v) {
    if (v.kind() == AsymptoticValue::Kind::PlusInfinity) return 1;
    if (v.kind() == AsymptoticValue::Kind::MinusInfinity) return -1;
    if (v.is_finite()) return v.value().sign();
    return std::nullopt;
  }
  static std::optional<int> sign_product(const PathValue& x, const PathValue& y) {
    auto a = x.eventual_sign(), b = y.eventual_sign();
    if (a && b) return *a * *b;
    return std::nullopt;
  }
  static std::optional<int> quotient_sign(const PathValue& x, const PathValue& y) {
    return sign_product(x, y);
  }
  static AsymptoticValue divide(const AsymptoticValue& x, const AsymptoticValue& y,
                                std::optional<int> y_sign) {
    if (x.is_undecided() || y.is_undecided()) return AsymptoticValue::undecided();
    if (y.is_infinite()) return x.is_finite() ? AsymptoticValue(FieldElement(0)) : AsymptoticValue::undecided();
    if (y.value().is_zero()) {
      auto sx = sign_of(x);
      if (!sx || *sx == 0 || !y_sign || *y_sign == 0) return AsymptoticValue::undecided();
      return AsymptoticValue::infinity(*sx * *y_sign);
    }
    if (x.is_infinite()) {
      auto sy = y.value().sign();
      if (!sy) return AsymptoticValue::undecided();
      return AsymptoticValue::infinity(*sign_of(x) * *sy);
    }
    auto inv = y.value().inverse();
    if (!inv) return AsymptoticValue::undecided();
    return AsymptoticValue(x.value() * *inv);
  }
  static AsymptoticValue absolute(const AsymptoticValue& v) {
    if (v.is_infinite()) return AsymptoticValue::plus_infinity();
    if (v.is_undecided()) return v;
    auto s = v.value().sign();
    if (!s) return AsymptoticValue::undecided();
    return *s < 0 ? AsymptoticValue(-v.value()) : v;
  }
  static AsymptoticValue root(const AsymptoticValue& v) {
    if (v.kind() == AsymptoticValue::Kind::PlusInfinity) return v;
    if (!v.is_finite()) return AsymptoticValue::undecided();
    if (v.value().is_zero()) return v;
    auto f = v.value().field_value();
    if (!f || f->sign() < 0) return AsymptoticValue::undecided();
    return AsymptoticValue(RadicalSum::sqrt_of(*f));
  }

  static std::string key_of(const RatFun& r) { return r.to_string(); }

  void add_root(const RatFun& radicand, const RatFun& coef) {
    if (coef.is_zero()) return;
    const std::string key = key_of(radicand);
    auto it = roots_.find(key);
    if (it == roots_.end()) {
      roots_.emplace(key, Root{radicand, coef});
      return;
    }
    it->second.coef = it->second.coef + coef;
    if (it->second.coef.is_zero()) roots_.erase(it);
  }

  // Half-integer exponents are stored doubled.
  int lowest_half_exponent() const {
    int e = rat_.is_zero() ? INT_MAX : 2 * rat_.order();
    for (const auto& [k, root] : roots_)
      e = std::min(e, 2 * root.coef.order() + root.radicand.order());
    return e;
  }

  // Exact coefficients of t^(e/2) for start <= e <= stop.
  std::map<int, RadicalSum> expansion(int start, int stop) const {
    std::map<int, RadicalSum> out;
    auto deposit = [&](int e, const RadicalSum& v) {
      if (e < start || e > stop) return;
      out[e] = out[e] + v;
    };
    if (!rat_.is_zero()) {
      const int e0 = 2 * rat_.order();
      const int n = std::max(0, (stop - e0) / 2 + 1);
      Series s = rat_.laurent(n);
      for (int i = 0; i < n; ++i) deposit(e0 + 2 * i, RadicalSum(s[i]));
    }
    for (const auto& [k, root] : roots_) {
      const int m = root.radicand.order();
      const FieldElement r0 = root.radicand.lowest();
      const int e0 = 2 * root.coef.order() + m;
      const int n = std::max(0, (stop - e0) / 2 + 1);
      if (n == 0) continue;
      Series unit = root.radicand.laurent(n);
      const FieldElement inv = r0.inverse();
      for (auto& c : unit) c *= inv;
      Series s = detail::series_multiply(root.coef.laurent(n), detail::series_sqrt_unit(unit));
      for (int i = 0; i < n; ++i) {
        if (s[i].is_zero()) continue;
        RadicalSum term = RadicalSum::sqrt_of(r0) * RadicalSum(s[i]);
        deposit(e0 + 2 * i, term);
      }
    }
    return out;
  }

  RatFun rat_;
  std::map<std::string, Root> roots_;
  std::optional<Opaque> opaque_;
};

/// Evaluates expr along x = a + sign * scale * t (sign +1 right, -1 left).
inline PathValue path_value(const ExprPtr& e, const FieldElement& a, Side side,
                            const FieldElement& scale) {
  switch (e->kind) {
    case ExprKind::Const: return PathValue(RatFun(e->value));
    case ExprKind::Var: {
      const FieldElement step = side == Side::Right ? scale : -scale;
      return PathValue(RatFun(Poly({a, step})));
    }
    case ExprKind::Param: throw PathError("family index is not bound");
    case ExprKind::Add:
      return path_value(e->lhs, a, side, scale) + path_value(e->rhs, a, side, scale);
    case ExprKind::Sub:
      return path_value(e->lhs, a, side, scale) - path_value(e->rhs, a, side, scale);
    case ExprKind::Mul:
      return path_value(e->lhs, a, side, scale) * path_value(e->rhs, a, side, scale);
    case ExprKind::Div:
      return path_value(e->lhs, a, side, scale) / path_value(e->rhs, a, side, scale);
    case ExprKind::Neg: return -path_value(e->lhs, a, side, scale);
    case ExprKind::Pow:
      if (e->exponent == Expr::kParamExponent) throw PathError("family index is not bound");
      return path_value(e->lhs, a, side, scale).pow(e->exponent);
    case ExprKind::Abs: return path_value(e->lhs, a, side, scale).abs();
    case ExprKind::Sqrt: return path_value(e->lhs, a, side, scale).sqrt();
  }
  throw PathError("unknown expression node");
}

/// Path of expr at a from `side` through the h-set: h = path_scale * t.
inline PathValue path_of(const ExprPtr& e, const FieldElement& a, Side side,
                         const HSetDescriptor& hset) {
  return path_value(e, a, side, hset.path_scale());
}

inline AsymptoticValue limit(const PathValue& p) { return p.limit(); }

/// One-sided limit of expr restricted to region and domain; undecided when
/// the region is not approachable from that side.
inline AsymptoticValue one_sided_limit(const ExprPtr& e, const FieldElement& a, Side side,
                                       const Region& region, const StructuredSet& domain) {
  const HSet hs = feasible_h_set(a, side, region, domain);
  std::optional<AsymptoticValue> value;
  for (const auto& d : hs) {
    if (!d.feasible()) continue;
    AsymptoticValue v = limit(path_of(e, a, side, d));
    if (value && !(*value == v)) return AsymptoticValue::undecided();
    value = v;
  }
  return value.value_or(AsymptoticValue::undecided());
}

}  // namespace symcont
