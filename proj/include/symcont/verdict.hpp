#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "symcont/domain.hpp"
#include "symcont/limits.hpp"

namespace symcont {

enum class Property { SC, WC, WSC };
enum class Truth { True, False, Unknown };

inline const char* to_string(Property p) {
  switch (p) {
    case Property::SC: return "sc";
    case Property::WC: return "wc";
    case Property::WSC: return "wsc";
  }
  return "?";
}

inline const char* to_string(Truth t) {
  switch (t) {
    case Truth::True: return "true";
    case Truth::False: return "false";
    case Truth::Unknown: return "unknown";
  }
  return "?";
}

/// Branch pair selected at a + h and a - h, with the exact set of h that
/// realizes it near a.
struct PatternPair {
  std::size_t plus_branch = 0;
  std::size_t minus_branch = 0;
  HSet hset;
};

/// A pattern with the limit of f(a + h) - f(a - h) along it.
struct PatternLimit {
  PatternPair pattern;
  AsymptoticValue limit;
  std::string note;  // set when the limit could not be computed
};

/// Branch reachable from one side with its limit along the side's h-set.
struct BranchLimit {
  std::size_t branch = 0;
  HSet hset;
  AsymptoticValue limit;
  std::string note;
};

struct SideReport {
  Side side = Side::Left;
  bool feasible = false;
  Truth holds = Truth::True;
  std::vector<BranchLimit> branches;
};

struct OracleHint {
  double gap = 0;
  std::string family;
  long samples = 0;
};

struct Certificate {
  enum class Kind { Vacuous, Witness, PatternTable, Sides, OracleHint };
  Kind kind = Kind::PatternTable;
  std::string space;                   // Vacuous: which sequence space is empty
  std::vector<PatternLimit> rows;      // Witness (one row) or PatternTable
  std::vector<FieldElement> sequence;  // replayable h_n for a witness
  std::vector<SideReport> sides;       // weak continuity
  std::optional<OracleHint> hint;      // attached to unknown verdicts
  std::optional<FieldElement> value_at_point;
};

inline const char* to_string(Certificate::Kind k) {
  switch (k) {
    case Certificate::Kind::Vacuous: return "vacuous";
    case Certificate::Kind::Witness: return "witness";
    case Certificate::Kind::PatternTable: return "table";
    case Certificate::Kind::Sides: return "sides";
    case Certificate::Kind::OracleHint: return "oracle_hint";
  }
  return "?";
}

struct Verdict {
  Property property = Property::SC;
  FieldElement point;
  Truth holds = Truth::Unknown;
  Certificate certificate;

  bool is_true() const { return holds == Truth::True; }
  bool is_false() const { return holds == Truth::False; }
  bool is_unknown() const { return holds == Truth::Unknown; }
  bool is_vacuous() const { return certificate.kind == Certificate::Kind::Vacuous; }
};

using json = nlohmann::json;

inline json hset_to_json(const HSetDescriptor& d) {
  json j;
  if (const auto* c = d.continuum()) {
    j["kind"] = "continuum";
    j["radius"] = c->radius.to_string();
    json ex = json::array();
    for (const auto& s : c->excluded_scales) ex.push_back(s.to_string());
    j["excluded_scales"] = ex;
    json pts = json::array();
    for (const auto& p : c->excluded_points) pts.push_back(p.to_string());
    j["excluded_points"] = pts;
  } else if (const auto* i = d.indexed()) {
    j["kind"] = "indexed";
    j["scale"] = i->scale.to_string();
    j["modulus"] = i->indices.allowed().modulus;
    j["residue"] = i->indices.allowed().residue;
    j["min_index"] = i->indices.min_index();
    json ex = json::array();
    for (const auto& e : i->indices.excluded())
      ex.push_back(json{{"modulus", e.modulus}, {"residue", e.residue}});
    j["excluded"] = ex;
  } else {
    j["kind"] = "empty";
  }
  return j;
}

inline json hset_to_json(const HSet& s) {
  json j = json::array();
  for (const auto& d : s) j.push_back(hset_to_json(d));
  return j;
}

inline json verdict_to_json(const Verdict& v) {
  const Certificate& c = v.certificate;
  json cert;
  cert["kind"] = to_string(c.kind);
  if (c.kind == Certificate::Kind::Vacuous) cert["space"] = c.space;
  if (!c.rows.empty()) {
    json rows = json::array();
    for (const auto& r : c.rows) {
      json row{{"plus_branch", r.pattern.plus_branch},
               {"minus_branch", r.pattern.minus_branch},
               {"hset", hset_to_json(r.pattern.hset)},
               {"limit", r.limit.to_string()}};
      if (!r.note.empty()) row["note"] = r.note;
      rows.push_back(row);
    }
    cert["patterns"] = rows;
  }
  if (!c.sequence.empty()) {
    json seq = json::array();
    for (const auto& h : c.sequence) seq.push_back(h.to_string());
    cert["sequence"] = seq;
  }
  if (!c.sides.empty()) {
    json sides = json::array();
    for (const auto& s : c.sides) {
      json side{{"side", to_string(s.side)}, {"feasible", s.feasible}, {"holds", to_string(s.holds)}};
      json branches = json::array();
      for (const auto& b : s.branches) {
        json row{{"branch", b.branch}, {"hset", hset_to_json(b.hset)}, {"limit", b.limit.to_string()}};
        if (!b.note.empty()) row["note"] = b.note;
        branches.push_back(row);
      }
      side["branches"] = branches;
      sides.push_back(side);
    }
    cert["sides"] = sides;
  }
  if (c.value_at_point) cert["value_at_point"] = c.value_at_point->to_string();
  if (c.hint)
    cert["oracle_hint"] = json{{"gap", c.hint->gap}, {"family", c.hint->family}, {"samples", c.hint->samples}};
  return json{{"property", to_string(v.property)},
              {"point", v.point.to_string()},
              {"holds", to_string(v.holds)},
              {"certificate", cert}};
}

/// Exact gap of a false verdict: the smallest |limit| among refuting rows
/// for WSC, the witness |limit| for SC, per-side distance for WC.
inline double exact_gap(const Verdict& v) {
  double gap = v.property == Property::SC ? 0 : HUGE_VAL;
  if (v.property == Property::WC) {
    double worst = 0;
    for (const auto& s : v.certificate.sides) {
      if (!s.feasible || s.holds != Truth::False) continue;
      double best = HUGE_VAL;
      const double fa = v.certificate.value_at_point ? v.certificate.value_at_point->to_double() : 0;
      for (const auto& b : s.branches) {
        const double d = b.limit.is_infinite() ? HUGE_VAL : std::fabs(b.limit.to_double() - fa);
        best = std::min(best, d);
      }
      worst = std::max(worst, best);
    }
    return worst;
  }
  for (const auto& r : v.certificate.rows) {
    const double m = r.limit.magnitude();
    gap = v.property == Property::SC ? std::max(gap, m) : std::min(gap, m);
  }
  return gap;
}

}  // namespace symcont
