#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "symcont/checker.hpp"
#include "symcont/oracle.hpp"
#include "symcont/parser.hpp"

namespace symcont {

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline json bound_to_json(const std::string& fn, const FieldElement& a, const BoundReport& r) {
  json j{{"fn", fn}, {"property", "bounded"}, {"point", a.to_string()}, {"holds", to_string(r.bounded)}};
  if (r.bound) j["bound"] = r.bound->to_string();
  j["radius"] = r.radius.to_string();
  if (r.unbounded_branch) {
    j["unbounded_branch"] = r.unbounded_branch->branch;
    j["unbounded_side"] = to_string(r.unbounded_side);
    j["limit"] = r.unbounded_branch->limit.to_string();
  }
  return j;
}

struct CheckRun {
  json results = json::array();
  bool any_unknown = false;
};

/// Executes every check directive of a program, in file order.
inline CheckRun run_checks(const Program& prog) {
  CheckRun run;
  for (const auto& d : prog.checks) {
    const PiecewiseFn& f = prog.fn(d.fn);
    if (d.kind == CheckKind::Bounded) {
      BoundReport r = locally_bounded_at(f, d.point);
      if (r.bounded == Truth::Unknown) run.any_unknown = true;
      run.results.push_back(bound_to_json(d.fn, d.point, r));
      continue;
    }
    std::vector<Property> props;
    if (d.kind == CheckKind::All) props = {Property::SC, Property::WC, Property::WSC};
    else props = {d.kind == CheckKind::SC ? Property::SC : d.kind == CheckKind::WC ? Property::WC : Property::WSC};
    for (Property p : props) {
      Verdict v = check(f, d.point, p);
      if (v.is_unknown()) run.any_unknown = true;
      json j = verdict_to_json(v);
      j["fn"] = d.fn;
      run.results.push_back(j);
    }
  }
  for (const auto& [name, cert] : prog.uc_certs)
    run.results.push_back(json{{"fn", name},
                               {"property", "uniform_continuity"},
                               {"evidence", cert.describe()},
                               {"validated", validate_uniform_continuity(prog.fn(name), cert)}});
  return run;
}

inline std::vector<std::filesystem::path> corpus_files(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".cont") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

inline std::filesystem::path default_corpus_dir() {
#ifdef SYMCONT_CORPUS_DIR
  return SYMCONT_CORPUS_DIR;
#else
  return "corpus";
#endif
}

inline std::filesystem::path golden_path(const std::filesystem::path& cont) {
  return cont.parent_path() / "golden" / (cont.stem().string() + ".json");
}

struct CorpusEntry {
  std::string name;
  bool matches = false;
  bool unknown = false;
  std::vector<std::string> diff;  // human-readable differences
};

// Line diff of two pretty-printed documents, reported by line number.
inline std::vector<std::string> diff_lines(const std::string& expected, const std::string& actual) {
  std::vector<std::string> a, b, out;
  std::istringstream sa(expected), sb(actual);
  for (std::string l; std::getline(sa, l);) a.push_back(l);
  for (std::string l; std::getline(sb, l);) b.push_back(l);
  const std::size_t n = std::max(a.size(), b.size());
  for (std::size_t i = 0; i < n && out.size() < 20; ++i) {
    const std::string* x = i < a.size() ? &a[i] : nullptr;
    const std::string* y = i < b.size() ? &b[i] : nullptr;
    if (x && y && *x == *y) continue;
    out.push_back("line " + std::to_string(i + 1) + ": expected " + (x ? *x : "<none>") + " | actual " +
                  (y ? *y : "<none>"));
  }
  return out;
}

/// Runs a corpus file and compares with its golden file; `update` rewrites
/// the golden file instead.
inline CorpusEntry run_corpus_file(const std::filesystem::path& cont, bool update = false) {
  CorpusEntry e{cont.stem().string(), false, false, {}};
  CheckRun run = run_checks(parse_program(read_file(cont)));
  e.unknown = run.any_unknown;
  const std::string actual = run.results.dump(2) + "\n";
  const auto golden = golden_path(cont);
  if (update) {
    std::filesystem::create_directories(golden.parent_path());
    std::ofstream(golden, std::ios::binary) << actual;
    e.matches = true;
    return e;
  }
  if (!std::filesystem::exists(golden)) {
    e.diff.push_back("missing golden file " + golden.string());
    return e;
  }
  const std::string expected = read_file(golden);
  e.matches = expected == actual;
  if (!e.matches) e.diff = diff_lines(expected, actual);
  return e;
}

}  // namespace symcont
