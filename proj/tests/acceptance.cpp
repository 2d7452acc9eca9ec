// Acceptance run: one PASS/FAIL line per criterion, details indented below.

#include <chrono>
#include <cmath>
#include <iostream>
#include <sstream>

#include "symcont/symcont.hpp"

using namespace symcont;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

FieldElement q(long n, long d = 1) { return FieldElement(Rational(n, d)); }

Program load(const std::string& name) { return parse_program(read_file(default_corpus_dir() / name)); }

struct Criterion {
  int id;
  std::string title;
  std::vector<std::string> problems;
  std::vector<std::string> notes;

  void expect(bool ok, const std::string& what) {
    if (!ok) problems.push_back(what);
  }
  bool pass() const { return problems.empty(); }
};

std::string str(double x) {
  std::ostringstream s;
  s << x;
  return s.str();
}

void verdict_is(Criterion& c, const std::string& file, const std::string& fn, const FieldElement& a, Property p,
                Truth want) {
  const Verdict v = check(load(file).fn(fn), a, p);
  c.expect(v.holds == want, file + " " + fn + " " + to_string(p) + " at " + a.to_string() + ": expected " +
                                to_string(want) + ", got " + to_string(v.holds));
}

Criterion corpus_matrix() {
  Criterion c{1, "corpus verdict matrix", {}, {}};
  using P = Property;
  const Truth T = Truth::True, F = Truth::False;
  const auto t0 = Clock::now();
  verdict_is(c, "sign_split.cont", "f", q(0), P::SC, F);
  verdict_is(c, "sign_split.cont", "f", q(0), P::WC, T);
  verdict_is(c, "sign_split.cont", "f", q(0), P::WSC, T);
  verdict_is(c, "sign_split.cont", "f", q(1), P::WC, F);
  verdict_is(c, "two_sequence_domain.cont", "f", q(0), P::SC, F);
  verdict_is(c, "two_sequence_domain.cont", "f", q(0), P::WC, T);
  verdict_is(c, "two_sequence_domain.cont", "f", q(0), P::WSC, T);
  {
    const PiecewiseFn f = load("two_sequence_domain.cont").fn("f");
    int checked = 0;
    for (const FieldElement& s : {q(1), FieldElement::root()})
      for (long n = 1; n <= 40; ++n)
        for (int sign : {1, -1}) {
          const FieldElement a = s / q(sign * n);
          if (!f.domain().contains(a)) continue;
          ++checked;
          for (P p : {P::SC, P::WC, P::WSC}) {
            const Verdict v = check(f, a, p);
            c.expect(v.is_true() && v.is_vacuous(),
                     "two_sequence_domain f " + std::string(to_string(p)) + " at " + a.to_string() + " not vacuous");
          }
        }
    c.notes.push_back("two_sequence_domain: " + std::to_string(checked) + " nonzero domain points vacuous");
  }
  verdict_is(c, "wc_not_wsc_line.cont", "f", q(0), P::WC, T);
  verdict_is(c, "wc_not_wsc_line.cont", "f", q(0), P::WSC, F);
  verdict_is(c, "wc_not_wsc_sparse.cont", "f", q(0), P::WC, T);
  verdict_is(c, "wc_not_wsc_sparse.cont", "f", q(0), P::WSC, F);
  verdict_is(c, "indicator_nonzero.cont", "f", q(0), P::SC, T);
  verdict_is(c, "indicator_nonzero.cont", "f", q(0), P::WC, F);
  verdict_is(c, "indicator_nonzero.cont", "f", q(0), P::WSC, T);
  for (const char* fn : {"f", "g"}) verdict_is(c, "sum_counterexample.cont", fn, q(0), P::WSC, T);
  for (const char* fn : {"sum", "diff", "hi", "lo"}) verdict_is(c, "sum_counterexample.cont", fn, q(0), P::WSC, F);
  c.expect(locally_bounded_at(load("unbounded_product.cont").fn("g"), q(0)).bounded == F,
           "unbounded_product g should not be locally bounded at 0");
  verdict_is(c, "unbounded_product.cont", "fg", q(0), P::WSC, F);
  for (const char* fn : {"f", "g"}) {
    verdict_is(c, "bounded_product.cont", fn, q(0), P::WSC, T);
    c.expect(locally_bounded_at(load("bounded_product.cont").fn(fn), q(0)).bounded == T,
             std::string("bounded_product ") + fn + " should be locally bounded at 0");
  }
  verdict_is(c, "bounded_product.cont", "fg", q(0), P::WSC, F);
  verdict_is(c, "composition.cont", "f", q(0), P::WSC, T);
  verdict_is(c, "composition.cont", "gf", q(0), P::WSC, F);
  verdict_is(c, "power_family.cont", "lim", q(1), P::WSC, F);
  const double matrix_secs = seconds_since(t0);

  const auto t1 = Clock::now();
  int files = 0;
  for (const auto& path : corpus_files(default_corpus_dir())) {
    CorpusEntry e = run_corpus_file(path);
    ++files;
    c.expect(e.matches, "golden mismatch in " + e.name);
    c.expect(!e.unknown, "unknown verdict in " + e.name);
  }
  const double corpus_secs = seconds_since(t1);
  c.expect(corpus_secs < 5.0, "full corpus took " + str(corpus_secs) + "s");
  c.notes.push_back(std::to_string(files) + " corpus files against golden verdicts in " + str(corpus_secs) +
                    "s; matrix assertions in " + str(matrix_secs) + "s");
  return c;
}

Criterion certificate_exactness() {
  Criterion c{2, "certificate exactness", {}, {}};
  const Verdict sc = check(load("sign_split.cont").fn("f"), q(0), Property::SC);
  c.expect(sc.certificate.kind == Certificate::Kind::Witness && sc.certificate.rows.size() == 1 &&
               sc.certificate.rows[0].limit == AsymptoticValue(q(2)),
           "sign split SC gap is not exactly 2");
  const Verdict wsc = check(load("wc_not_wsc_sparse.cont").fn("f"), q(0), Property::WSC);
  c.expect(!wsc.certificate.rows.empty(), "sparse WSC table is empty");
  for (const auto& r : wsc.certificate.rows)
    c.expect(r.limit == AsymptoticValue(q(1)), "sparse WSC pattern limit " + r.limit.to_string() + " != 1");
  const Verdict comp = check(load("composition.cont").fn("gf"), q(0), Property::WSC);
  c.expect(!comp.certificate.rows.empty(), "composition WSC table is empty");
  for (const auto& r : comp.certificate.rows)
    c.expect(r.limit == AsymptoticValue(q(2)), "composition limit " + r.limit.to_string() + " != 2");
  c.notes.push_back("sign split gap " + sc.certificate.rows.at(0).limit.to_string() + ", sparse table limits " +
                    std::to_string(wsc.certificate.rows.size()) + " x 1, composition limit 2");
  return c;
}

Criterion closure_fuzz() {
  Criterion c{3, "closure-theorem fuzz suites", {}, {}};
  const auto t0 = Clock::now();
  FuzzConfig cfg;
  cfg.seed = 0;
  cfg.trials = 1000;
  cfg.target_hits = 1000;
  for (const auto& spec : theorem_specs()) {
    if (spec.negative_control) continue;
    TheoremReport r = run_theorem(spec, cfg);
    const double rate = r.trials ? static_cast<double>(r.premise_hits) / r.trials : 0;
    c.expect(r.premise_hits >= 1000, spec.id + ": only " + std::to_string(r.premise_hits) + " premise hits");
    c.expect(r.violation_count == 0, spec.id + ": " + std::to_string(r.violation_count) + " violations");
    c.expect(rate > 0.01, spec.id + ": premise-hit rate " + str(rate));
    c.notes.push_back(spec.id + ": " + std::to_string(r.trials) + " trials, " + std::to_string(r.premise_hits) +
                      " hits (" + str(100 * rate) + "%), " + std::to_string(r.violation_count) + " violations, " +
                      std::to_string(r.conclusion_unknown) + " unknown conclusions, " +
                      std::to_string(r.premise_unknown) + " unknown premises");
  }
  const double secs = seconds_since(t0);
  c.expect(secs < 300, "fuzz suites took " + str(secs) + "s");
  c.notes.push_back("total " + str(secs) + "s");
  return c;
}

Criterion negative_controls() {
  Criterion c{4, "negative-control mining", {}, {}};
  FuzzConfig cfg;
  cfg.seed = 0;
  cfg.trials = 1000;
  for (const auto& spec : theorem_specs()) {
    if (!spec.negative_control) continue;
    TheoremReport r = run_theorem(spec, cfg);
    c.expect(r.violation_count > 0, spec.id + ": no violation within 1000 trials");
    c.notes.push_back(spec.id + ": " + std::to_string(r.violation_count) + " violations, first at trial " +
                      (r.violations.empty() ? std::string("-") : std::to_string(r.violations[0].trial)));
  }
  for (const auto& p : paper_counterexamples()) {
    Evaluation e = evaluate_counterexample(p, default_corpus_dir());
    c.expect(e.outcome == Outcome::Violation, p.file + " under " + p.theorem + ": " + to_string(e.outcome));
    c.notes.push_back(p.file + " under " + p.theorem + ": " + to_string(e.outcome));
  }
  return c;
}

Criterion oracle_concordance() {
  Criterion c{5, "oracle concordance", {}, {}};
  const long budget = 100000;
  int checked = 0, skipped = 0;
  for (const auto& path : corpus_files(default_corpus_dir())) {
    Program p = parse_program(read_file(path));
    for (const auto& d : p.checks) {
      if (d.kind == CheckKind::Bounded) continue;
      const PiecewiseFn& f = p.fn(d.fn);
      for (Property prop : {Property::SC, Property::WC, Property::WSC}) {
        if (d.kind != CheckKind::All && std::string(to_string(d.kind)) != to_string(prop)) continue;
        const Verdict v = check(f, d.point, prop);
        if (v.is_unknown()) {
          ++skipped;
          continue;
        }
        CrossCheck x = cross_validate(f, v, budget);
        ++checked;
        c.expect(x.consistent, path.filename().string() + " " + d.fn + " " + to_string(prop) + " at " +
                                   d.point.to_string() + ": " + x.reason);
      }
    }
  }
  c.notes.push_back(std::to_string(checked) + " verdicts cross-validated at budget 1e5, " + std::to_string(skipped) +
                    " unknown skipped");
  struct Claim {
    const char* file;
    Property prop;
    double gap;
  };
  for (const Claim& cl : {Claim{"sign_split.cont", Property::SC, 2}, Claim{"wc_not_wsc_line.cont", Property::WSC, 1},
                          Claim{"wc_not_wsc_sparse.cont", Property::WSC, 1},
                          Claim{"indicator_nonzero.cont", Property::WC, 1}}) {
    ProbeReport r = probe(load(cl.file).fn("f"), q(0), cl.prop, budget);
    c.expect(r.refuted && std::fabs(r.gap - cl.gap) <= 1e-3,
             std::string(cl.file) + " " + to_string(cl.prop) + ": oracle gap " + str(r.gap) + ", expected " +
                 str(cl.gap));
    c.notes.push_back(std::string(cl.file) + " " + to_string(cl.prop) + " gap " + str(r.gap) + " along " + r.family);
  }
  return c;
}

Criterion vacuity() {
  Criterion c{6, "vacuity at isolated points", {}, {}};
  struct Source {
    const char* file;
    const char* fn;
  };
  std::vector<std::pair<std::string, FieldElement>> points;
  for (const Source& s : {Source{"two_sequence_domain.cont", "f"}, Source{"wc_not_wsc_sparse.cont", "f"},
                          Source{"bounded_product.cont", "fg"}}) {
    const PiecewiseFn f = load(s.file).fn(s.fn);
    int taken = 0;
    for (long n = 1; n <= 12 && taken < 7; ++n)
      for (const FieldElement& scale : {q(1), FieldElement::root(), -q(1), -FieldElement::root()}) {
        const FieldElement a = scale / q(n);
        if (taken < 7 && f.domain().contains(a)) {
          points.emplace_back(std::string(s.file) + " " + s.fn, a);
          ++taken;
        }
      }
  }
  points.resize(std::min<std::size_t>(points.size(), 20));
  c.expect(points.size() == 20, "only " + std::to_string(points.size()) + " isolated points found");
  int vacuous = 0;
  for (const auto& [label, a] : points) {
    const std::string file = label.substr(0, label.find(' '));
    const PiecewiseFn f = load(file).fn(label.substr(label.find(' ') + 1));
    bool all = true;
    for (Property p : {Property::SC, Property::WC, Property::WSC}) {
      const Verdict v = check(f, a, p);
      if (!(v.is_true() && v.is_vacuous())) {
        all = false;
        c.expect(false, label + " " + to_string(p) + " at " + a.to_string() + " is " + to_string(v.holds) + " [" +
                            to_string(v.certificate.kind) + "]");
      }
    }
    vacuous += all;
  }
  c.notes.push_back(std::to_string(vacuous) + " of " + std::to_string(points.size()) +
                    " isolated points vacuous for SC, WC and WSC");
  return c;
}

Criterion lemma_consistency() {
  Criterion c{7, "one-sided limits vs symmetric continuity", {}, {}};
  int corpus_points = 0;
  for (const auto& path : corpus_files(default_corpus_dir())) {
    Program p = parse_program(read_file(path));
    for (const auto& name : p.fn_order) {
      const PiecewiseFn& f = p.fn(name);
      bool continuum = false;
      for (const auto& atom : f.domain().atoms()) continuum |= std::holds_alternative<Interval>(atom);
      if (!continuum) continue;
      std::vector<FieldElement> pts = special_points(f);
      for (const auto& d : p.checks)
        if (d.fn == name) pts.push_back(d.point);
      for (const auto& a : pts) {
        LimitConsistency lc = one_sided_consistency(f, a);
        if (!lc.applicable) continue;
        ++corpus_points;
        c.expect(lc.consistent, path.filename().string() + " " + name + " at " + a.to_string());
      }
    }
  }
  c.expect(corpus_points > 0, "no applicable corpus points");
  FuzzConfig cfg;
  int fuzzed = 0, attempts = 0, equal = 0;
  for (unsigned long t = 0; fuzzed < 1000 && attempts < 50000; ++t) {
    Generator gen(cfg, 777000 + t);
    Instance inst = gen.instance(GenMode::Any, GenMode::Any);
    for (const FieldElement& a : {inst.a, inst.a + q(1, 3), FieldElement::root() / q(2)}) {
      ++attempts;
      LimitConsistency lc;
      try {
        lc = one_sided_consistency(inst.f, a);
      } catch (const std::exception&) {
        continue;
      }
      if (!lc.applicable || lc.sc == Truth::Unknown) continue;
      ++fuzzed;
      equal += lc.limits_equal;
      c.expect(lc.consistent, "fuzzed point " + a.to_string() + " of\n" + inst.f.to_dsl("f"));
      if (fuzzed >= 1000) break;
    }
  }
  c.expect(fuzzed >= 1000, "only " + std::to_string(fuzzed) + " applicable fuzzed points");
  c.notes.push_back(std::to_string(corpus_points) + " corpus points, " + std::to_string(fuzzed) +
                    " fuzzed interior points (" + std::to_string(equal) + " with equal one-sided limits) from " +
                    std::to_string(attempts) + " attempts");
  return c;
}

}  // namespace

int main() {
  bool all = true;
  int index = 0;
  for (auto run : {corpus_matrix, certificate_exactness, closure_fuzz, negative_controls, oracle_concordance,
                   vacuity, lemma_consistency}) {
    const auto t0 = Clock::now();
    Criterion c{++index, "criterion", {}, {}};
    try {
      c = run();
    } catch (const std::exception& e) {
      c.problems.push_back(std::string("exception: ") + e.what());
    }
    all &= c.pass();
    std::cout << (c.pass() ? "PASS " : "FAIL ") << c.id << " " << c.title << " (" << str(seconds_since(t0))
              << "s)\n";
    for (const auto& n : c.notes) std::cout << "    " << n << "\n";
    for (const auto& p : c.problems) std::cout << "    problem: " << p << "\n";
    std::cout.flush();
  }
  return all ? 0 : 1;
}
