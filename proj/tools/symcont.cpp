// symcont: command-line front end for the continuity checker.
//
// Exit codes: 0 all suites pass, 2 parse or usage error, 3 some verdict is
// unknown, 4 a suite failed.

#include <CLI11.hpp>

#include <chrono>
#include <iostream>
#include <map>
#include <sstream>

#include "symcont/symcont.hpp"

using namespace symcont;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 2;
constexpr int kUnknown = 3;
constexpr int kFailure = 4;

struct Options {
  std::string file;
  std::string fn;
  std::vector<std::string> at;
  std::string prop = "all";
  std::string format = "text";
  unsigned long seed = 0;
  long budget = 10000;
  std::string theorem;
  int trials = 1000;
  int hits = 0;
  std::string dir;
  bool update_golden = false;
  bool hint = false;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<Property> properties(const std::string& p) {
  if (p == "sc") return {Property::SC};
  if (p == "wc") return {Property::WC};
  if (p == "wsc") return {Property::WSC};
  if (p == "all") return {Property::SC, Property::WC, Property::WSC};
  throw UsageError("unknown property '" + p + "' (expected sc, wc, wsc, all or bounded)");
}

std::string limit_text(const AsymptoticValue& v, const std::string& note) {
  return note.empty() ? v.to_string() : v.to_string() + " (" + note + ")";
}

void print_verdict(std::ostream& out, const std::string& fn, const Verdict& v) {
  const Certificate& c = v.certificate;
  out << fn << " " << to_string(v.property) << " at " << v.point.to_string() << ": " << to_string(v.holds) << " ["
      << to_string(c.kind) << "]\n";
  if (c.kind == Certificate::Kind::Vacuous) out << "  no sequences: " << c.space << " space is empty\n";
  for (const auto& r : c.rows)
    out << "  pattern (+" << r.pattern.plus_branch << ", -" << r.pattern.minus_branch
        << ") limit " << limit_text(r.limit, r.note) << " on " << to_string(r.pattern.hset) << "\n";
  if (!c.sequence.empty()) {
    out << "  h_n:";
    for (const auto& h : c.sequence) out << " " << h.to_string();
    out << "\n";
  }
  if (c.value_at_point) out << "  f(a) = " << c.value_at_point->to_string() << "\n";
  for (const auto& s : c.sides) {
    out << "  " << to_string(s.side) << ": " << (s.feasible ? to_string(s.holds) : "no sequences") << "\n";
    for (const auto& b : s.branches)
      out << "    branch " << b.branch << " limit " << limit_text(b.limit, b.note) << " on " << to_string(b.hset)
          << "\n";
  }
  if (c.hint)
    out << "  oracle: gap " << c.hint->gap << " along " << c.hint->family << " (" << c.hint->samples
        << " samples)\n";
}

void print_bound(std::ostream& out, const std::string& fn, const FieldElement& a, const BoundReport& r) {
  out << fn << " bounded at " << a.to_string() << ": " << to_string(r.bounded);
  if (r.bound) out << " (|f| < " << r.bound->to_string() << " within " << r.radius.to_string() << ")";
  if (r.unbounded_branch)
    out << " (branch " << r.unbounded_branch->branch << " from " << to_string(r.unbounded_side) << " tends to "
        << r.unbounded_branch->limit.to_string() << ")";
  out << "\n";
}

Program load_program(const std::string& file) {
  if (!std::filesystem::is_regular_file(file)) throw UsageError("cannot read " + file);
  return parse_program(read_file(file));
}

bool json_out(const Options& o) { return o.format == "json"; }

int run_check(const Options& o) {
  Program prog = load_program(o.file);
  bool unknown = false;
  json results = json::array();
  std::ostringstream text;
  auto emit = [&](const std::string& fn, const PiecewiseFn& f, const FieldElement& a, const std::string& prop) {
    if (prop == "bounded") {
      BoundReport r = locally_bounded_at(f, a);
      unknown |= r.bounded == Truth::Unknown;
      results.push_back(bound_to_json(fn, a, r));
      print_bound(text, fn, a, r);
      return;
    }
    for (Property p : properties(prop)) {
      Verdict v = check(f, a, p);
      if (v.is_unknown() && o.hint) attach_hint(v, f, o.budget, o.seed);
      unknown |= v.is_unknown();
      json j = verdict_to_json(v);
      j["fn"] = fn;
      results.push_back(j);
      print_verdict(text, fn, v);
    }
  };
  if (o.fn.empty()) {
    if (!o.at.empty()) throw UsageError("--at needs --fn");
    CheckRun run = run_checks(prog);
    results = run.results;
    unknown = run.any_unknown;
    for (const auto& d : prog.checks) {
      const PiecewiseFn& f = prog.fn(d.fn);
      if (d.kind == CheckKind::Bounded) {
        print_bound(text, d.fn, d.point, locally_bounded_at(f, d.point));
        continue;
      }
      std::string prop = to_string(d.kind);
      for (Property p : properties(prop)) print_verdict(text, d.fn, check(f, d.point, p));
    }
    for (const auto& j : results)
      if (j["property"] == "uniform_continuity")
        text << j["fn"].get<std::string>() << " uniformly continuous, " << j["evidence"].get<std::string>() << ": "
             << (j["validated"].get<bool>() ? "validated by sampling" : "rejected by sampling") << "\n";
  } else {
    if (!prog.fns.count(o.fn)) throw UsageError("no function '" + o.fn + "' in " + o.file);
    if (o.at.empty()) throw UsageError("--fn needs --at");
    const PiecewiseFn& f = prog.fn(o.fn);
    for (const auto& s : o.at) {
      const FieldElement a = parse_constant(s, prog.radicand);
      if (o.prop != "bounded" && !f.domain().contains(a))
        throw UsageError(a.to_string() + " is not in the domain of " + o.fn);
      emit(o.fn, f, a, o.prop);
    }
  }
  if (json_out(o)) std::cout << results.dump(2) << "\n";
  else std::cout << text.str();
  return unknown ? kUnknown : kOk;
}

int run_classify(const Options& o) {
  Program prog = load_program(o.file);
  std::vector<std::string> names = o.fn.empty() ? prog.fn_order : std::vector<std::string>{o.fn};
  bool unknown = false;
  json out = json::array();
  for (const auto& name : names) {
    if (!prog.fns.count(name)) throw UsageError("no function '" + name + "' in " + o.file);
    const PiecewiseFn& f = prog.fn(name);
    std::vector<FieldElement> pts;
    for (const auto& s : o.at) pts.push_back(parse_constant(s, prog.radicand));
    std::map<Property, Truth> all{{Property::SC, Truth::True}, {Property::WC, Truth::True}, {Property::WSC, Truth::True}};
    for (const auto& row : classify(f, pts)) {
      unknown |= row.sc.is_unknown() || row.wc.is_unknown() || row.wsc.is_unknown();
      for (const Verdict* v : {&row.sc, &row.wc, &row.wsc}) {
        Truth& t = all[v->property];
        if (v->is_false()) t = Truth::False;
        else if (v->is_unknown() && t == Truth::True) t = Truth::Unknown;
      }
      if (json_out(o)) {
        out.push_back(json{{"fn", name},
                           {"point", row.point.to_string()},
                           {"sc", to_string(row.sc.holds)},
                           {"wc", to_string(row.wc.holds)},
                           {"wsc", to_string(row.wsc.holds)},
                           {"vacuous", row.sc.is_vacuous() && row.wc.is_vacuous() && row.wsc.is_vacuous()}});
      } else {
        std::cout << name << " at " << row.point.to_string() << ": sc " << to_string(row.sc.holds) << ", wc "
                  << to_string(row.wc.holds) << ", wsc " << to_string(row.wsc.holds)
                  << (row.sc.is_vacuous() && row.wc.is_vacuous() && row.wsc.is_vacuous() ? " (vacuous)" : "")
                  << "\n";
      }
    }
    if (!json_out(o))
      std::cout << name << " at tested points: sc " << to_string(all[Property::SC]) << ", wc "
                << to_string(all[Property::WC]) << ", wsc " << to_string(all[Property::WSC]) << "\n";
  }
  if (json_out(o)) std::cout << out.dump(2) << "\n";
  return unknown ? kUnknown : kOk;
}

int run_corpus(const Options& o) {
  const std::filesystem::path dir = o.dir.empty() ? default_corpus_dir() : std::filesystem::path(o.dir);
  const auto t0 = std::chrono::steady_clock::now();
  bool failed = false, unknown = false;
  json out = json::array();
  for (const auto& path : corpus_files(dir)) {
    CorpusEntry e = run_corpus_file(path, o.update_golden);
    failed |= !e.matches;
    unknown |= e.unknown;
    out.push_back(json{{"name", e.name}, {"matches", e.matches}, {"unknown", e.unknown}, {"diff", e.diff}});
    if (!json_out(o)) {
      std::cout << (o.update_golden ? "wrote " : e.matches ? "ok    " : "DIFF  ") << e.name
                << (e.unknown ? " (unknown verdicts)" : "") << "\n";
      for (const auto& d : e.diff) std::cout << "  " << d << "\n";
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (json_out(o)) std::cout << json{{"files", out}, {"seconds", secs}}.dump(2) << "\n";
  else std::cout << out.size() << " files in " << secs << "s\n";
  return failed ? kFailure : unknown ? kUnknown : kOk;
}

int run_relations(const Options& o) {
  RelationReport r = relation_suite(o.dir.empty() ? default_corpus_dir() : std::filesystem::path(o.dir));
  if (json_out(o)) {
    std::cout << relation_report_to_json(r).dump(2) << "\n";
  } else {
    for (const auto& row : r.rows)
      std::cout << row.file << ": sc " << to_string(row.actual.at(Property::SC)) << ", wc "
                << to_string(row.actual.at(Property::WC)) << ", wsc " << to_string(row.actual.at(Property::WSC))
                << "\n";
    for (const auto& f : r.failures) std::cout << "FAIL " << f << "\n";
    std::cout << (r.ok() ? "relations hold\n" : "relation suite failed\n");
  }
  bool unknown = false;
  for (const auto& row : r.rows)
    for (const auto& [p, t] : row.actual) unknown |= t == Truth::Unknown;
  return !r.ok() ? kFailure : unknown ? kUnknown : kOk;
}

int run_fuzz(const Options& o) {
  std::vector<TheoremSpec> specs;
  for (auto& s : theorem_specs())
    if (o.theorem == "all" || s.id == o.theorem) specs.push_back(s);
  if (specs.empty()) {
    std::string ids;
    for (const auto& s : theorem_specs()) ids += " " + s.id;
    throw UsageError("unknown theorem '" + o.theorem + "'; known:" + ids);
  }
  FuzzConfig cfg;
  cfg.seed = o.seed;
  cfg.trials = o.trials;
  cfg.target_hits = o.hits;
  bool failed = false, unknown = false;
  json out = json::array();
  for (const auto& spec : specs) {
    TheoremReport r = run_theorem(spec, cfg);
    // A negative control passes when it does find a violation.
    const bool pass = spec.negative_control ? r.violation_count > 0 : r.violation_count == 0;
    failed |= !pass;
    unknown |= r.conclusion_unknown > 0;
    json j = report_to_json(r);
    j["negative_control"] = spec.negative_control;
    j["pass"] = pass;
    out.push_back(j);
    if (!json_out(o)) {
      std::cout << (pass ? "pass " : "FAIL ") << spec.id << ": " << r.trials << " trials, " << r.premise_hits
                << " premise hits, " << r.violation_count << " violations, " << r.conclusion_unknown
                << " unknown conclusions" << (spec.negative_control ? " (negative control)" : "") << "\n";
      for (const auto& v : r.violations) {
        std::cout << "  trial " << v.trial << ": " << v.construction << " not WSC at "
                  << v.instance.a.to_string() << "\n";
        std::istringstream f(v.instance.f.to_dsl("f"));
        for (std::string l; std::getline(f, l);) std::cout << "    " << l << "\n";
        if (v.instance.outer) {
          std::cout << "    g = " << v.instance.outer->name << "\n";
        } else {
          std::istringstream g(v.instance.g.to_dsl("g"));
          for (std::string l; std::getline(g, l);) std::cout << "    " << l << "\n";
        }
      }
    }
  }
  if (json_out(o)) std::cout << (out.size() == 1 ? out[0] : out).dump(2) << "\n";
  return failed ? kFailure : unknown ? kUnknown : kOk;
}

int run_probe(const Options& o) {
  Program prog = load_program(o.file);
  if (o.fn.empty() || o.at.empty()) throw UsageError("probe needs --fn and --at");
  if (!prog.fns.count(o.fn)) throw UsageError("no function '" + o.fn + "' in " + o.file);
  const PiecewiseFn& f = prog.fn(o.fn);
  json out = json::array();
  for (const auto& s : o.at) {
    const FieldElement a = parse_constant(s, prog.radicand);
    for (Property p : properties(o.prop)) {
      ProbeReport r = probe(f, a, p, o.budget, o.seed);
      out.push_back(probe_to_json(r));
      if (!json_out(o))
        std::cout << o.fn << " " << to_string(p) << " at " << a.to_string() << ": "
                  << (!r.admissible ? "no admissible samples" : r.refuted ? "refuted" : "not refuted") << ", gap "
                  << r.gap << (r.family.empty() ? "" : " along " + r.family) << " (" << r.samples
                  << " samples)\n";
    }
  }
  if (json_out(o)) std::cout << out.dump(2) << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact symmetric, weak and weakly symmetric continuity checks"};
  app.require_subcommand(1);
  Options o;

  auto add_format = [&o](CLI::App* c) {
    c->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  };
  auto* check = app.add_subcommand("check", "Check properties at points (default: the file's check lines)");
  check->add_option("file", o.file, "Program file (.cont)")->required();
  check->add_option("--fn", o.fn, "Function name");
  check->add_option("--at", o.at, "Point(s), e.g. 0, 1/2, -rt");
  check->add_option("--prop", o.prop, "sc, wc, wsc, all or bounded");
  check->add_flag("--hint", o.hint, "Attach an oracle hint to unknown verdicts");
  check->add_option("--budget", o.budget, "Oracle budget for --hint");
  check->add_option("--seed", o.seed, "Oracle seed for --hint");
  add_format(check);

  auto* classify_cmd = app.add_subcommand("classify", "SC/WC/WSC at the special points of each function");
  classify_cmd->add_option("file", o.file, "Program file (.cont)")->required();
  classify_cmd->add_option("--fn", o.fn, "Function name (default: all)");
  classify_cmd->add_option("--at", o.at, "Extra points");
  add_format(classify_cmd);

  auto* corpus = app.add_subcommand("corpus", "Run the bundled corpus against its golden verdicts");
  corpus->add_option("--dir", o.dir, "Corpus directory");
  corpus->add_flag("--update-golden", o.update_golden, "Rewrite the golden files");
  add_format(corpus);

  auto* relations = app.add_subcommand("relations", "Verify the relation diagram on the corpus functions");
  relations->add_option("--dir", o.dir, "Corpus directory");
  add_format(relations);

  auto* fuzz = app.add_subcommand("fuzz", "Property-test a closure theorem");
  fuzz->add_option("--theorem", o.theorem, "Theorem id, or 'all'")->required();
  fuzz->add_option("--seed", o.seed, "Random seed");
  fuzz->add_option("--trials", o.trials, "Number of generated instances");
  fuzz->add_option("--hits", o.hits, "Keep generating until this many premise hits");
  add_format(fuzz);

  auto* probe_cmd = app.add_subcommand("probe", "Numeric oracle along sampled sequence families");
  probe_cmd->add_option("file", o.file, "Program file (.cont)")->required();
  probe_cmd->add_option("--fn", o.fn, "Function name")->required();
  probe_cmd->add_option("--at", o.at, "Point(s)")->required();
  probe_cmd->add_option("--prop", o.prop, "sc, wc, wsc or all");
  probe_cmd->add_option("--budget", o.budget, "Largest sequence index");
  probe_cmd->add_option("--seed", o.seed, "Seed for the random scales");
  add_format(probe_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*check) return run_check(o);
    if (*classify_cmd) return run_classify(o);
    if (*corpus) return run_corpus(o);
    if (*relations) return run_relations(o);
    if (*fuzz) return run_fuzz(o);
    if (*probe_cmd) return run_probe(o);
  } catch (const ParseError& e) {
    std::cerr << (o.file.empty() ? "" : o.file + ": ") << e.what() << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const PointOutsideDomain& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kUsage;
}
