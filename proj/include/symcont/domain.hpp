#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "symcont/field.hpp"
#include "symcont/index_set.hpp"

namespace symcont {

/// Which side of the point a the variable approaches from:
/// Right means x = a + h, Left means x = a - h, with h > 0.
enum class Side { Left, Right };

inline const char* to_string(Side s) { return s == Side::Left ? "left" : "right"; }

enum class IndexRange { All, Positive, Negative };

/// {scale / n : n in range}, stored with scale > 0 so that the sign of n is
/// the sign of the member. The only accumulation point is 0.
struct GenSet {
  FieldElement scale;
  IndexRange range = IndexRange::All;

  /// Normalizes a negative scale by flipping the index range.
  static GenSet make(const FieldElement& c, IndexRange range) {
    if (c.is_zero()) throw std::invalid_argument("generated set needs a nonzero scale");
    if (c.sign() > 0) return GenSet{c, range};
    IndexRange flipped = range == IndexRange::Positive   ? IndexRange::Negative
                         : range == IndexRange::Negative ? IndexRange::Positive
                                                         : IndexRange::All;
    return GenSet{-c, flipped};
  }

  bool has_positive() const { return range != IndexRange::Negative; }
  bool has_negative() const { return range != IndexRange::Positive; }

  bool contains(const FieldElement& x) const {
    if (x.is_zero()) return false;
    auto n = ratio_if_rational(scale, x);
    if (!n || !n->is_integer()) return false;
    return x.sign() > 0 ? has_positive() : has_negative();
  }

  std::string to_string() const {
    const char* head = range == IndexRange::All        ? "seq("
                       : range == IndexRange::Positive ? "seqpos("
                                                       : "seqneg(";
    return head + scale.to_string() + ")";
  }
};

struct PointSet {
  std::vector<FieldElement> points;

  bool contains(const FieldElement& x) const {
    return std::find(points.begin(), points.end(), x) != points.end();
  }
  std::string to_string() const {
    std::string s = "points(";
    for (std::size_t i = 0; i < points.size(); ++i)
      s += (i ? ", " : "") + points[i].to_string();
    return s + ")";
  }
};

/// Interval with optional (infinite when absent) endpoints.
struct Interval {
  std::optional<FieldElement> lower;
  std::optional<FieldElement> upper;
  bool lower_closed = false;
  bool upper_closed = false;

  static Interval line() { return Interval{}; }

  bool contains(const FieldElement& x) const {
    if (lower && (lower_closed ? x < *lower : x <= *lower)) return false;
    if (upper && (upper_closed ? x > *upper : x >= *upper)) return false;
    return true;
  }

  /// Germ test: are all points a +- h (small h > 0) inside?
  bool contains_near(const FieldElement& a, Side side) const {
    if (side == Side::Right) return (!lower || *lower <= a) && (!upper || a < *upper);
    return (!lower || *lower < a) && (!upper || a <= *upper);
  }

  std::string to_string() const {
    if (!lower && !upper) return "line";
    std::string s = "interval";
    s += lower_closed && lower ? "[" : "(";
    s += lower ? lower->to_string() : "-inf";
    s += ", ";
    s += upper ? upper->to_string() : "inf";
    s += upper_closed && upper ? "]" : ")";
    return s;
  }
};

using SetAtom = std::variant<GenSet, PointSet, Interval>;

/// Union of generated sets, finite point sets and intervals.
class StructuredSet {
 public:
  StructuredSet() = default;
  explicit StructuredSet(std::vector<SetAtom> atoms) : atoms_(std::move(atoms)) {}

  static StructuredSet line() { return StructuredSet({Interval::line()}); }

  const std::vector<SetAtom>& atoms() const { return atoms_; }

  bool contains(const FieldElement& x) const {
    return std::any_of(atoms_.begin(), atoms_.end(), [&x](const SetAtom& atom) {
      return std::visit([&x](const auto& s) { return s.contains(x); }, atom);
    });
  }

  StructuredSet unite(const StructuredSet& o) const {
    std::vector<SetAtom> atoms = atoms_;
    atoms.insert(atoms.end(), o.atoms_.begin(), o.atoms_.end());
    return StructuredSet(std::move(atoms));
  }

  bool has_interval() const {
    return std::any_of(atoms_.begin(), atoms_.end(),
                       [](const SetAtom& a) { return std::holds_alternative<Interval>(a); });
  }

  /// True when a is an accumulation point: inside an interval closure, or 0
  /// with some generated set present.
  bool accumulates_at(const FieldElement& a) const {
    for (const auto& atom : atoms_) {
      if (const auto* g = std::get_if<GenSet>(&atom); g && a.is_zero()) return true;
      if (const auto* iv = std::get_if<Interval>(&atom))
        if (iv->contains_near(a, Side::Left) || iv->contains_near(a, Side::Right)) return true;
    }
    return false;
  }

  /// Atoms rendered and sorted, so equal unions compare equal textually.
  std::string canonical() const {
    std::vector<std::string> parts;
    for (const auto& atom : atoms_)
      parts.push_back(std::visit([](const auto& s) { return s.to_string(); }, atom));
    std::sort(parts.begin(), parts.end());
    parts.erase(std::unique(parts.begin(), parts.end()), parts.end());
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? " union " : "") + parts[i];
    return s;
  }

  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < atoms_.size(); ++i)
      s += (i ? " union " : "") + std::visit([](const auto& a) { return a.to_string(); }, atoms_[i]);
    return s.empty() ? "points()" : s;
  }

 private:
  std::vector<SetAtom> atoms_;
};

inline bool member(const FieldElement& x, const StructuredSet& s) { return s.contains(x); }

enum class CmpOp { Gt, Lt, Eq, Ge, Le, Ne };

inline const char* to_string(CmpOp op) {
  switch (op) {
    case CmpOp::Gt: return ">";
    case CmpOp::Lt: return "<";
    case CmpOp::Eq: return "=";
    case CmpOp::Ge: return ">=";
    case CmpOp::Le: return "<=";
    case CmpOp::Ne: return "!=";
  }
  return "?";
}

inline bool compare(const FieldElement& x, CmpOp op, const FieldElement& p) {
  const int s = (x - p).sign();
  switch (op) {
    case CmpOp::Gt: return s > 0;
    case CmpOp::Lt: return s < 0;
    case CmpOp::Eq: return s == 0;
    case CmpOp::Ge: return s >= 0;
    case CmpOp::Le: return s <= 0;
    case CmpOp::Ne: return s != 0;
  }
  return false;
}

/// Germ of "x op p" for x = a +- h, h -> 0+.
inline bool compare_near(const FieldElement& a, Side side, CmpOp op, const FieldElement& p) {
  const int s = (a - p).sign();
  switch (op) {
    case CmpOp::Eq: return false;
    case CmpOp::Ne: return true;
    case CmpOp::Gt:
    case CmpOp::Ge: return side == Side::Right ? s >= 0 : s > 0;
    case CmpOp::Lt:
    case CmpOp::Le: return side == Side::Right ? s < 0 : s <= 0;
  }
  return false;
}

/// Guard on a function of x, produced by composition. Pointwise truth is
/// exact; the germ near a may be undecidable (nullopt).
class ExprGuard {
 public:
  virtual ~ExprGuard() = default;
  virtual bool holds_at(const FieldElement& x) const = 0;
  virtual std::optional<bool> holds_near(const FieldElement& a, Side side) const = 0;
  virtual std::string describe() const = 0;
};

struct InSet {
  StructuredSet set;
  bool negated = false;
};

struct Compare {
  CmpOp op;
  FieldElement value;
};

struct GuardAtom {
  std::shared_ptr<const ExprGuard> guard;
};

using RegionAtom = std::variant<InSet, Compare, GuardAtom>;

/// Conjunction of atoms; the empty conjunction is the whole line.
class Region {
 public:
  Region() = default;
  explicit Region(std::vector<RegionAtom> atoms) : atoms_(std::move(atoms)) {}

  const std::vector<RegionAtom>& atoms() const { return atoms_; }
  bool is_trivial() const { return atoms_.empty(); }

  /// May throw when a composed guard cannot be evaluated at x.
  bool contains(const FieldElement& x) const {
    for (const auto& atom : atoms_) {
      bool ok = std::visit(
          [&x](const auto& a) -> bool {
            using T = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<T, InSet>) return a.set.contains(x) != a.negated;
            else if constexpr (std::is_same_v<T, Compare>) return compare(x, a.op, a.value);
            else return a.guard->holds_at(x);
          },
          atom);
      if (!ok) return false;
    }
    return true;
  }

  Region conjoin(const Region& o) const {
    std::vector<RegionAtom> atoms = atoms_;
    atoms.insert(atoms.end(), o.atoms_.begin(), o.atoms_.end());
    return Region(std::move(atoms));
  }

  /// Cheap syntactic emptiness: contradictory comparisons, or `in S` next
  /// to `notin S`. False does not mean nonempty.
  bool obviously_empty() const {
    std::optional<FieldElement> lo, hi;
    bool lo_strict = false, hi_strict = false;
    std::vector<FieldElement> equal_to;
    std::vector<std::string> in, notin;
    auto raise_lo = [&](const FieldElement& v, bool strict) {
      if (!lo || v > *lo || (v == *lo && strict)) { lo = v; lo_strict = strict; }
    };
    auto lower_hi = [&](const FieldElement& v, bool strict) {
      if (!hi || v < *hi || (v == *hi && strict)) { hi = v; hi_strict = strict; }
    };
    for (const auto& atom : atoms_) {
      if (const auto* c = std::get_if<Compare>(&atom)) {
        switch (c->op) {
          case CmpOp::Gt: raise_lo(c->value, true); break;
          case CmpOp::Ge: raise_lo(c->value, false); break;
          case CmpOp::Lt: lower_hi(c->value, true); break;
          case CmpOp::Le: lower_hi(c->value, false); break;
          case CmpOp::Eq:
            raise_lo(c->value, false);
            lower_hi(c->value, false);
            equal_to.push_back(c->value);
            break;
          case CmpOp::Ne: break;
        }
      } else if (const auto* s = std::get_if<InSet>(&atom)) {
        (s->negated ? notin : in).push_back(s->set.canonical());
      }
    }
    if (lo && hi && (*lo > *hi || (*lo == *hi && (lo_strict || hi_strict)))) return true;
    for (const auto& s : in)
      if (std::find(notin.begin(), notin.end(), s) != notin.end()) return true;
    // A pinned value must satisfy every atom that does not involve a guard.
    if (!equal_to.empty()) {
      for (const auto& atom : atoms_) {
        if (std::holds_alternative<GuardAtom>(atom)) continue;
        if (!Region({atom}).contains(equal_to.front())) return true;
      }
    }
    return false;
  }

  std::string to_string() const {
    if (atoms_.empty()) return "true";
    std::string s;
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      if (i) s += " & ";
      s += std::visit(
          [](const auto& a) -> std::string {
            using T = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<T, InSet>)
              return std::string("x ") + (a.negated ? "notin " : "in ") + a.set.to_string();
            else if constexpr (std::is_same_v<T, Compare>)
              return std::string("x ") + symcont::to_string(a.op) + " " + a.value.to_string();
            else return a.guard->describe();
          },
          atoms_[i]);
    }
    return s;
  }

 private:
  std::vector<RegionAtom> atoms_;
};

/// Exact description of a set of admissible h > 0 near 0.
class HSetDescriptor {
 public:
  struct Empty {};
  /// { h in (0, radius) } minus the generated sets {s / m : m >= 1} and the
  /// listed points.
  struct Continuum {
    FieldElement radius;
    std::vector<FieldElement> excluded_scales;
    std::vector<FieldElement> excluded_points;
  };
  /// { scale / n : n in indices }.
  struct Indexed {
    FieldElement scale;
    IndexSet indices;
  };

  HSetDescriptor() = default;
  HSetDescriptor(Continuum c) : v_(std::move(c)) {}  // NOLINT(google-explicit-constructor)
  HSetDescriptor(Indexed i) : v_(std::move(i)) {}    // NOLINT(google-explicit-constructor)

  bool is_empty_kind() const { return std::holds_alternative<Empty>(v_); }
  const Continuum* continuum() const { return std::get_if<Continuum>(&v_); }
  const Indexed* indexed() const { return std::get_if<Indexed>(&v_); }

  /// Nonempty descriptors have 0 as an accumulation point.
  bool feasible() const {
    if (const auto* c = continuum()) return c->radius.sign() > 0;
    if (const auto* i = indexed()) return !i->indices.is_empty();
    return false;
  }

  /// Multiplier used to parametrize the path: h = scale * t.
  FieldElement path_scale() const {
    if (const auto* i = indexed()) return i->scale;
    return FieldElement(1);
  }

  bool contains(const FieldElement& h) const {
    if (h.sign() <= 0) return false;
    if (const auto* c = continuum()) {
      if (h >= c->radius) return false;
      for (const auto& s : c->excluded_scales)
        if (GenSet{s, IndexRange::Positive}.contains(h)) return false;
      return std::find(c->excluded_points.begin(), c->excluded_points.end(), h) ==
             c->excluded_points.end();
    }
    if (const auto* i = indexed()) {
      auto n = ratio_if_rational(i->scale, h);
      if (!n || !n->is_integer()) return false;
      const mpz_class z = n->numerator();
      return z.fits_slong_p() && i->indices.contains(z.get_si());
    }
    return false;
  }

  /// First `count` members of a decreasing sequence in the set.
  std::vector<FieldElement> sample(std::size_t count) const {
    std::vector<FieldElement> out;
    if (!feasible()) return out;
    if (const auto* i = indexed()) {
      for (std::int64_t n : i->indices.first(count)) out.push_back(i->scale / FieldElement(n));
      return out;
    }
    const auto* c = continuum();
    for (long k = 2; out.size() < count; ++k) {
      for (long w = 1000; w > 900; --w) {
        FieldElement h = c->radius * FieldElement(Rational(w, 1000 * k));
        if (contains(h)) {
          out.push_back(h);
          break;
        }
      }
    }
    return out;
  }

  std::string to_string() const {
    if (const auto* c = continuum()) {
      std::string s = "continuum(radius " + c->radius.to_string();
      for (const auto& e : c->excluded_scales) s += ", minus seqpos(" + e.to_string() + ")";
      for (const auto& p : c->excluded_points) s += ", minus " + p.to_string();
      return s + ")";
    }
    if (const auto* i = indexed())
      return "indexed(" + i->scale.to_string() + "/n : " + i->indices.to_string() + ")";
    return "empty";
  }

 private:
  std::variant<Empty, Continuum, Indexed> v_;
};

/// Finite union of descriptors.
using HSet = std::vector<HSetDescriptor>;

inline bool feasible(const HSet& s) {
  return std::any_of(s.begin(), s.end(), [](const HSetDescriptor& d) { return d.feasible(); });
}

inline std::string to_string(const HSet& s) {
  if (s.empty()) return "empty";
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? " | " : "") + s[i].to_string();
  return out;
}

namespace detail {

inline std::optional<std::pair<std::int64_t, std::int64_t>> small_ratio(const FieldElement& x,
                                                                         const FieldElement& y) {
  auto r = ratio_if_rational(x, y);
  if (!r) return std::nullopt;
  const mpz_class p = r->numerator(), q = r->denominator();
  if (!p.fits_slong_p() || !q.fits_slong_p()) throw std::overflow_error("scale ratio too large");
  return std::make_pair(p.get_si(), q.get_si());
}

// {s1/n : n in I1} intersected with {s2/m : m in I2}.
inline HSetDescriptor::Indexed intersect_indexed(const HSetDescriptor::Indexed& x,
                                                 const HSetDescriptor::Indexed& y) {
  auto pq = small_ratio(y.scale, x.scale);
  if (!pq || pq->first <= 0) return {x.scale, IndexSet::none()};
  const auto [p, q] = *pq;
  // s1/n = s2/m  <=>  n = q k, m = p k.
  return {x.scale / FieldElement(q),
          x.indices.scaled_preimage(q).intersect(y.indices.scaled_preimage(p))};
}

// {s/n : n in I} minus {e/m : m >= 1}.
inline HSetDescriptor::Indexed subtract_generated(const HSetDescriptor::Indexed& x,
                                                  const FieldElement& e) {
  auto pq = small_ratio(e, x.scale);
  if (!pq || pq->first <= 0) return x;
  return {x.scale, x.indices.exclude(Congruence{pq->second, 0})};
}

inline HSetDescriptor::Indexed canonical_indexed(const HSetDescriptor::Indexed& x) {
  IndexSet rest;
  const std::int64_t m = x.indices.factor_out_modulus(&rest);
  if (m == 1) return x;
  return {x.scale / FieldElement(m), rest};
}

}  // namespace detail

/// One piece of the decomposition of h-space near a. `inside[k]` records
/// whether the piece lies in the k-th generated h-set {scales[k] / m}.
struct Cell {
  HSetDescriptor piece;
  std::vector<bool> inside;
};

/// Exact partition of the admissible h near a into pieces on which every
/// set and region atom is constant.
///
/// Away from 0 every generated set is locally finite, so the only piece is a
/// punctured continuum. At 0 the pieces are the Boolean cells of the
/// generated h-sets {c / m}: incommensurable scales never meet, so each
/// cell lives inside one commensurability class.
class GermFrame {
 public:
  GermFrame(FieldElement a, const std::vector<const StructuredSet*>& sets,
            const std::vector<const Region*>& regions)
      : a_(std::move(a)), radius_(1) {
    for (const auto* s : sets) collect(*s);
    for (const auto* r : regions) collect(*r);
    std::sort(scales_.begin(), scales_.end());
    build_cells();
  }

  const FieldElement& point() const { return a_; }
  const FieldElement& radius() const { return radius_; }
  const std::vector<FieldElement>& scales() const { return scales_; }
  const std::vector<Cell>& cells() const { return cells_; }

  bool set_holds(const StructuredSet& s, const Cell& cell, Side side) const {
    for (const auto& atom : s.atoms()) {
      if (const auto* g = std::get_if<GenSet>(&atom)) {
        if (!a_.is_zero()) continue;
        if (side == Side::Right ? !g->has_positive() : !g->has_negative()) continue;
        if (cell.inside[scale_index(g->scale)]) return true;
      } else if (const auto* iv = std::get_if<Interval>(&atom)) {
        if (iv->contains_near(a_, side)) return true;
      }
    }
    return false;
  }

  std::optional<bool> region_holds(const Region& r, const Cell& cell, Side side) const {
    bool undecided = false;
    for (const auto& atom : r.atoms()) {
      std::optional<bool> v;
      if (const auto* s = std::get_if<InSet>(&atom)) v = set_holds(s->set, cell, side) != s->negated;
      else if (const auto* c = std::get_if<Compare>(&atom)) v = compare_near(a_, side, c->op, c->value);
      else v = std::get<GuardAtom>(atom).guard->holds_near(a_, side);
      if (v && !*v) return false;
      if (!v) undecided = true;
    }
    if (undecided) return std::nullopt;
    return true;
  }

 private:
  std::size_t scale_index(const FieldElement& s) const {
    for (std::size_t k = 0; k < scales_.size(); ++k)
      if (scales_[k] == s) return k;
    throw std::logic_error("generated set missing from germ frame");
  }

  void shrink_to(const FieldElement& p) {
    if (p == a_) return;
    const FieldElement d = (p - a_).abs();
    if (d < radius_) radius_ = d;
  }

  void collect(const StructuredSet& s) {
    for (const auto& atom : s.atoms()) {
      if (const auto* g = std::get_if<GenSet>(&atom)) {
        if (a_.is_zero()) {
          if (std::find(scales_.begin(), scales_.end(), g->scale) == scales_.end())
            scales_.push_back(g->scale);
        } else {
          shrink_to_nearest_generated(*g);
        }
      } else if (const auto* p = std::get_if<PointSet>(&atom)) {
        for (const auto& x : p->points) shrink_to(x);
      } else if (const auto* iv = std::get_if<Interval>(&atom)) {
        if (iv->lower) shrink_to(*iv->lower);
        if (iv->upper) shrink_to(*iv->upper);
      }
    }
  }

  void collect(const Region& r) {
    for (const auto& atom : r.atoms()) {
      if (const auto* s = std::get_if<InSet>(&atom)) collect(s->set);
      else if (const auto* c = std::get_if<Compare>(&atom)) shrink_to(c->value);
    }
  }

  // a != 0: keep the radius below |a| and below the distance to the nearest
  // member of g other than a itself.
  void shrink_to_nearest_generated(const GenSet& g) {
    shrink_to(FieldElement(0));
    const mpz_class base = floor_of(g.scale / a_);
    for (int off = -1; off <= 2; ++off) {
      const mpz_class n = base + off;
      if (n == 0 || sgn(n) != a_.sign()) continue;
      if ((n > 0 && !g.has_positive()) || (n < 0 && !g.has_negative())) continue;
      shrink_to(g.scale / FieldElement(Rational(n, 1)));
    }
  }

  void build_cells() {
    std::vector<bool> none(scales_.size(), false);
    cells_.push_back(Cell{HSetDescriptor::Continuum{radius_, scales_, {}}, none});

    // Commensurability classes of the generated h-sets.
    std::vector<std::vector<std::size_t>> classes;
    for (std::size_t k = 0; k < scales_.size(); ++k) {
      bool placed = false;
      for (auto& cls : classes) {
        if (ratio_if_rational(scales_[k], scales_[cls.front()])) {
          cls.push_back(k);
          placed = true;
          break;
        }
      }
      if (!placed) classes.push_back({k});
    }

    for (const auto& cls : classes) {
      if (cls.size() > 16) throw std::overflow_error("too many commensurable generated sets");
      for (std::uint32_t mask = 1; mask < (1u << cls.size()); ++mask) {
        std::optional<HSetDescriptor::Indexed> piece;
        std::vector<bool> inside(scales_.size(), false);
        for (std::size_t j = 0; j < cls.size(); ++j) {
          if (!(mask & (1u << j))) continue;
          inside[cls[j]] = true;
          HSetDescriptor::Indexed g{scales_[cls[j]], IndexSet::all()};
          piece = piece ? detail::intersect_indexed(*piece, g) : g;
        }
        for (std::size_t j = 0; j < cls.size(); ++j)
          if (!(mask & (1u << j))) piece = detail::subtract_generated(*piece, scales_[cls[j]]);
        // Keep every member below the radius: scale / n < radius.
        const mpz_class min_n = floor_of(piece->scale / radius_) + 1;
        if (!min_n.fits_slong_p()) throw std::overflow_error("index bound too large");
        piece->indices = piece->indices.with_min_index(min_n.get_si());
        if (piece->indices.is_empty()) continue;
        cells_.push_back(Cell{detail::canonical_indexed(*piece), std::move(inside)});
      }
    }
  }

  FieldElement a_;
  FieldElement radius_;
  std::vector<FieldElement> scales_;
  std::vector<Cell> cells_;
};

/// h-sets of {h > 0 : a +- h in R and in A} (side chooses the sign).
inline HSet feasible_h_set(const FieldElement& a, Side side, const Region& region,
                           const StructuredSet& domain) {
  GermFrame frame(a, {&domain}, {&region});
  HSet out;
  for (const auto& cell : frame.cells()) {
    if (!frame.set_holds(domain, cell, side)) continue;
    auto r = frame.region_holds(region, cell, side);
    if (r && *r) out.push_back(cell.piece);
  }
  return out;
}

/// h-sets realizing S_a(A): both a + h and a - h in A.
inline HSet s_space(const FieldElement& a, const StructuredSet& domain) {
  GermFrame frame(a, {&domain}, {});
  HSet out;
  for (const auto& cell : frame.cells())
    if (frame.set_holds(domain, cell, Side::Right) && frame.set_holds(domain, cell, Side::Left))
      out.push_back(cell.piece);
  return out;
}

struct SideWitness {
  Side side;
  HSet hset;
  bool feasible() const { return symcont::feasible(hset); }
};

/// Left: approach from below (L_a(A)); right: from above (U_a(A)).
inline std::pair<SideWitness, SideWitness> lu_spaces(const FieldElement& a,
                                                     const StructuredSet& domain) {
  GermFrame frame(a, {&domain}, {});
  SideWitness left{Side::Left, {}}, right{Side::Right, {}};
  for (const auto& cell : frame.cells()) {
    if (frame.set_holds(domain, cell, Side::Left)) left.hset.push_back(cell.piece);
    if (frame.set_holds(domain, cell, Side::Right)) right.hset.push_back(cell.piece);
  }
  return {left, right};
}

}  // namespace symcont
