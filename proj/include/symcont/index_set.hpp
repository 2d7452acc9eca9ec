#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace symcont {

/// A residue class n = residue (mod modulus).
struct Congruence {
  std::int64_t modulus = 1;
  std::int64_t residue = 0;

  bool contains(std::int64_t n) const { return mod(n, modulus) == residue; }

  static std::int64_t mod(std::int64_t n, std::int64_t m) {
    const std::int64_t r = n % m;
    return r < 0 ? r + m : r;
  }

  friend bool operator==(const Congruence&, const Congruence&) = default;
  friend auto operator<=>(const Congruence&, const Congruence&) = default;
};

namespace detail {

inline constexpr std::int64_t kModulusLimit = std::int64_t{1} << 40;

// Modular inverse of a (mod m) for gcd(a, m) == 1.
inline std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
  if (m == 1) return 0;
  __int128 t = 0, new_t = 1, r = m, new_r = Congruence::mod(a, m);
  while (new_r != 0) {
    const __int128 q = r / new_r;
    std::tie(t, new_t) = std::make_pair(new_t, t - q * new_t);
    std::tie(r, new_r) = std::make_pair(new_r, r - q * new_r);
  }
  if (r != 1) throw std::logic_error("mod_inverse: not invertible");
  if (t < 0) t += m;
  return static_cast<std::int64_t>(t);
}

// Intersection of two residue classes (generalized CRT).
inline std::optional<Congruence> intersect(const Congruence& x, const Congruence& y) {
  const std::int64_t g = std::gcd(x.modulus, y.modulus);
  if ((y.residue - x.residue) % g != 0) return std::nullopt;
  const __int128 l = static_cast<__int128>(x.modulus / g) * y.modulus;
  if (l > kModulusLimit) throw std::overflow_error("congruence modulus too large");
  const std::int64_t m2 = y.modulus / g;
  const __int128 k = static_cast<__int128>((y.residue - x.residue) / g) *
                     mod_inverse(x.modulus / g, m2) % (m2 == 0 ? 1 : m2);
  const __int128 r = (x.residue + x.modulus * k) % l;
  return Congruence{static_cast<std::int64_t>(l),
                    Congruence::mod(static_cast<std::int64_t>(r), static_cast<std::int64_t>(l))};
}

// Solutions k of q*k = c.residue (mod c.modulus).
inline std::optional<Congruence> scaled_preimage(const Congruence& c, std::int64_t q) {
  const std::int64_t g = std::gcd(q, c.modulus);
  if (c.residue % g != 0) return std::nullopt;
  const std::int64_t m = c.modulus / g;
  const __int128 k = static_cast<__int128>(c.residue / g) * mod_inverse(q / g, m) % m;
  return Congruence{m, Congruence::mod(static_cast<std::int64_t>(k), m)};
}

}  // namespace detail

/// Periodic set of positive indices
///   { n >= min_index : n in `allowed` } minus the union of `excluded` classes.
///
/// Represents the admissible indices n of a generated h-set {scale / n}.
/// Being periodic, the set is either empty or infinite.
class IndexSet {
 public:
  IndexSet() = default;
  static IndexSet all(std::int64_t min_index = 1) {
    IndexSet s;
    s.min_index_ = std::max<std::int64_t>(1, min_index);
    return s;
  }
  static IndexSet none() {
    IndexSet s;
    s.empty_ = true;
    return s;
  }

  const Congruence& allowed() const { return allowed_; }
  const std::vector<Congruence>& excluded() const { return excluded_; }
  std::int64_t min_index() const { return min_index_; }

  bool contains(std::int64_t n) const {
    if (empty_ || n < min_index_ || !allowed_.contains(n)) return false;
    return std::none_of(excluded_.begin(), excluded_.end(),
                        [n](const Congruence& c) { return c.contains(n); });
  }

  IndexSet intersect(const IndexSet& o) const {
    if (empty_ || o.empty_) return none();
    auto c = detail::intersect(allowed_, o.allowed_);
    if (!c) return none();
    IndexSet r;
    r.allowed_ = *c;
    r.min_index_ = std::max(min_index_, o.min_index_);
    r.excluded_ = excluded_;
    r.excluded_.insert(r.excluded_.end(), o.excluded_.begin(), o.excluded_.end());
    return r.normalized();
  }

  IndexSet exclude(const Congruence& c) const {
    if (empty_) return *this;
    IndexSet r = *this;
    r.excluded_.push_back(c);
    return r.normalized();
  }

  /// { k : q*k in this set }.
  IndexSet scaled_preimage(std::int64_t q) const {
    if (q <= 0) throw std::invalid_argument("scaled_preimage needs q > 0");
    if (empty_) return none();
    auto c = detail::scaled_preimage(allowed_, q);
    if (!c) return none();
    IndexSet r;
    r.allowed_ = *c;
    r.min_index_ = (min_index_ + q - 1) / q;
    if (r.min_index_ < 1) r.min_index_ = 1;
    for (const auto& e : excluded_) {
      auto pe = detail::scaled_preimage(e, q);
      if (pe) r.excluded_.push_back(*pe);
    }
    return r.normalized();
  }

  IndexSet with_min_index(std::int64_t m) const {
    IndexSet r = *this;
    r.min_index_ = std::max<std::int64_t>(std::max<std::int64_t>(1, m), min_index_);
    return r;
  }

  /// Exact emptiness: scans one period of the combined moduli.
  bool is_empty() const {
    if (empty_) return true;
    std::int64_t period = allowed_.modulus;
    for (const auto& e : excluded_) {
      period = std::lcm(period, e.modulus);
      if (period > (std::int64_t{1} << 26)) throw std::overflow_error("index period too large");
    }
    for (std::int64_t n = allowed_.residue; n < allowed_.residue + period; n += allowed_.modulus)
      if (std::none_of(excluded_.begin(), excluded_.end(),
                       [n](const Congruence& c) { return c.contains(n); }))
        return false;
    return true;
  }

  /// Smallest `count` members in increasing order.
  std::vector<std::int64_t> first(std::size_t count) const {
    std::vector<std::int64_t> out;
    if (is_empty()) return out;
    std::int64_t n = min_index_;
    n += Congruence::mod(allowed_.residue - n, allowed_.modulus);
    for (; out.size() < count; n += allowed_.modulus)
      if (contains(n)) out.push_back(n);
    return out;
  }

  /// Rewrites {n : n = 0 mod m} as m * {k}; returns the factor m pulled out.
  std::int64_t factor_out_modulus(IndexSet* rest) const {
    if (empty_ || allowed_.residue != 0 || allowed_.modulus == 1) {
      *rest = *this;
      return 1;
    }
    const std::int64_t m = allowed_.modulus;
    IndexSet r;
    r.min_index_ = (min_index_ + m - 1) / m;
    if (r.min_index_ < 1) r.min_index_ = 1;
    for (const auto& e : excluded_) {
      auto pe = detail::scaled_preimage(e, m);
      if (pe) r.excluded_.push_back(*pe);
    }
    *rest = r.normalized();
    return m;
  }

  std::string to_string() const {
    if (is_empty()) return "{}";
    std::string s = "n>=" + std::to_string(min_index_);
    if (allowed_.modulus != 1)
      s += ", n=" + std::to_string(allowed_.residue) + " mod " + std::to_string(allowed_.modulus);
    for (const auto& e : excluded_)
      s += ", n!=" + std::to_string(e.residue) + " mod " + std::to_string(e.modulus);
    return s;
  }

  friend bool operator==(const IndexSet& x, const IndexSet& y) {
    if (x.is_empty() || y.is_empty()) return x.is_empty() == y.is_empty();
    return x.allowed_ == y.allowed_ && x.excluded_ == y.excluded_ && x.min_index_ == y.min_index_;
  }

 private:
  // Drops exclusions disjoint from the allowed class or implied by another
  // exclusion; collapses to empty when an exclusion covers the allowed class.
  IndexSet normalized() const {
    if (empty_) return *this;
    std::vector<Congruence> kept;
    for (const auto& e : excluded_) {
      auto meet = detail::intersect(allowed_, e);
      if (!meet) continue;
      if (meet->modulus == allowed_.modulus) return none();
      kept.push_back(*meet);
    }
    std::sort(kept.begin(), kept.end());
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
    std::vector<Congruence> minimal;
    for (const auto& e : kept) {
      const bool implied = std::any_of(kept.begin(), kept.end(), [&e](const Congruence& o) {
        return !(o == e) && e.modulus % o.modulus == 0 && o.contains(e.residue);
      });
      if (!implied) minimal.push_back(e);
    }
    IndexSet r = *this;
    r.excluded_ = std::move(minimal);
    return r.tightened();
  }

  // Replaces the allowed class by the finest class containing every member,
  // so that e.g. "all n except odd n" becomes "n = 0 mod 2".
  IndexSet tightened() const {
    if (excluded_.empty()) return *this;
    std::int64_t period = allowed_.modulus;
    for (const auto& e : excluded_) {
      period = std::lcm(period, e.modulus);
      if (period > (std::int64_t{1} << 20)) return *this;
    }
    std::optional<std::int64_t> first;
    std::int64_t g = period;
    for (std::int64_t n = allowed_.residue; n < allowed_.residue + period; n += allowed_.modulus) {
      if (std::any_of(excluded_.begin(), excluded_.end(),
                      [n](const Congruence& c) { return c.contains(n); }))
        continue;
      if (!first) first = n;
      else g = std::gcd(g, n - *first);
    }
    if (!first) return none();
    if (g == allowed_.modulus) return *this;
    IndexSet r = *this;
    r.allowed_ = Congruence{g, Congruence::mod(*first, g)};
    return r.normalized();
  }

  Congruence allowed_{};
  std::vector<Congruence> excluded_;
  std::int64_t min_index_ = 1;
  bool empty_ = false;
};

}  // namespace symcont
