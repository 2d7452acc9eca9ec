#include <gtest/gtest.h>

#include "symcont/theorems.hpp"

using namespace symcont;

namespace {

FieldElement q(long n, long d = 1) { return FieldElement(Rational(n, d)); }

Program load(const std::string& name) { return parse_program(read_file(default_corpus_dir() / name)); }

}  // namespace

TEST(Theorems, ClosureTheoremsSurviveFuzzing) {
  FuzzConfig cfg;
  cfg.trials = 150;
  for (const auto& spec : theorem_specs()) {
    if (spec.negative_control) continue;
    TheoremReport r = run_theorem(spec, cfg);
    EXPECT_EQ(r.violation_count, 0) << spec.id << "\n" << report_to_json(r).dump(2);
    EXPECT_GT(r.premise_hits, 0) << spec.id;
  }
}

TEST(Theorems, NegativeControlsFindViolations) {
  FuzzConfig cfg;
  cfg.trials = 1000;
  for (const auto& spec : theorem_specs()) {
    if (!spec.negative_control) continue;
    TheoremReport r = run_theorem(spec, cfg);
    ASSERT_GT(r.violation_count, 0) << spec.id;
    // Shrunk violations still violate.
    const Violation& v = r.violations.front();
    EXPECT_EQ(evaluate_instance(spec, v.instance).outcome, Outcome::Violation) << spec.id;
    EXPECT_TRUE(v.verdict.is_false());
  }
}

TEST(Theorems, PaperCounterexamplesAreViolations) {
  for (const auto& c : paper_counterexamples()) {
    Evaluation e = evaluate_counterexample(c, default_corpus_dir());
    EXPECT_EQ(e.outcome, Outcome::Violation) << c.theorem << " " << to_string(e.outcome);
  }
}

TEST(Theorems, PaperCounterexamplesMissAPremiseOfTheRealTheorem) {
  // The sum counterexample's g is not SC, so the true theorem does not apply.
  Program p = load("sum_counterexample.cont");
  Instance inst{p.fn("f"), p.fn("g"), q(0), std::nullopt};
  EXPECT_EQ(evaluate_instance(*find_theorem("sum-max-min"), inst).outcome, Outcome::PremiseFalse);
  Program u = load("unbounded_product.cont");
  Instance prod{u.fn("f"), u.fn("g"), q(0), std::nullopt};
  EXPECT_EQ(evaluate_instance(*find_theorem("product"), prod).outcome, Outcome::PremiseFalse);
}

TEST(Theorems, ShrinkingDropsIrrelevantBranches) {
  Program p = load("sum_counterexample.cont");
  const StructuredSet line = StructuredSet::line();
  // Pad f with a branch that never matters near 0.
  std::vector<Branch> bs{{Region({Compare{CmpOp::Gt, q(5)}}), expr::pow(expr::var(), 3)}};
  for (const auto& b : p.fn("f").branches()) bs.push_back(b);
  Instance inst{PiecewiseFn(line, bs), p.fn("g"), q(0), std::nullopt};
  const TheoremSpec spec = *find_theorem("sum-weak-g");
  Evaluation e = evaluate_instance(spec, inst);
  ASSERT_EQ(e.outcome, Outcome::Violation);
  Violation v = shrink(spec, Violation{0, e.construction, inst, *e.verdict});
  EXPECT_LT(v.instance.f.branches().size(), 4u);
  EXPECT_EQ(evaluate_instance(spec, v.instance).outcome, Outcome::Violation);
}

TEST(Theorems, RelationDiagram) {
  RelationReport r = relation_suite();
  EXPECT_TRUE(r.ok()) << relation_report_to_json(r).dump(2);
  EXPECT_EQ(r.rows.size(), 6u);
}

TEST(Theorems, PowerFamilyLimitIsNotUniform) {
  Program p = load("power_family.cont");
  UniformLimitReport r = uniform_limit_check(p.families.at("p"), p.fn("lim"),
                                             [](int k) { return FieldElement(Rational(1, k)); }, q(1), 20);
  EXPECT_TRUE(r.premises_hold);
  EXPECT_FALSE(r.uniform_validated);
  ASSERT_TRUE(r.conclusion.has_value());
  EXPECT_TRUE(r.conclusion->is_false());
  EXPECT_FALSE(r.theorem_violated());
}

TEST(Theorems, UniformLimitKeepsWeakSymmetricContinuity) {
  Program p = parse_program(R"(
set A = seq(1) union points(0)
family u on line = piecewise {
  x in A -> 1/k,
  x > 0 -> 1,
  else -> -1
}
fn lim on line = piecewise {
  x in A -> 0,
  x > 0 -> 1,
  else -> -1
}
)");
  UniformLimitReport r = uniform_limit_check(p.families.at("u"), p.fn("lim"),
                                             [](int k) { return FieldElement(Rational(1, k)); }, q(0), 20);
  EXPECT_TRUE(r.premises_hold);
  EXPECT_TRUE(r.uniform_validated);
  ASSERT_TRUE(r.conclusion.has_value());
  EXPECT_TRUE(r.conclusion->is_true());
}

TEST(Theorems, OneSidedLimitsDecideSymmetricContinuity) {
  Program p = parse_program(R"(
fn step on line = piecewise { x > 0 -> 1, else -> 0 }
fn bump on line = piecewise { x = 0 -> 5, else -> x^2 + 1 }
)");
  LimitConsistency step = one_sided_consistency(p.fn("step"), q(0));
  EXPECT_TRUE(step.applicable);
  EXPECT_FALSE(step.limits_equal);
  EXPECT_EQ(step.sc, Truth::False);
  EXPECT_TRUE(step.consistent);
  LimitConsistency bump = one_sided_consistency(p.fn("bump"), q(0));
  EXPECT_TRUE(bump.applicable);
  EXPECT_TRUE(bump.limits_equal);
  EXPECT_EQ(bump.sc, Truth::True);
  // Sequence-valued branches leave no one-sided limit to compare.
  EXPECT_FALSE(one_sided_consistency(load("sign_split.cont").fn("f"), q(0)).applicable);
}

TEST(Theorems, GeneratorIsDeterministic) {
  FuzzConfig cfg;
  Generator a(cfg, 42), b(cfg, 42);
  Instance x = a.instance(GenMode::Any, GenMode::Any), y = b.instance(GenMode::Any, GenMode::Any);
  EXPECT_EQ(x.f.to_dsl("f"), y.f.to_dsl("f"));
  EXPECT_EQ(x.g.to_dsl("g"), y.g.to_dsl("g"));
  EXPECT_EQ(x.a, y.a);
}
