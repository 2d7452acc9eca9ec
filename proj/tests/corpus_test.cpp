#include <gtest/gtest.h>

#include "symcont/corpus.hpp"

using namespace symcont;

namespace {

FieldElement q(long n, long d = 1) { return FieldElement(Rational(n, d)); }

Program load(const std::string& name) { return parse_program(read_file(default_corpus_dir() / name)); }

Truth holds(const std::string& file, const std::string& fn, const FieldElement& a, Property p) {
  return check(load(file).fn(fn), a, p).holds;
}

}  // namespace

TEST(Corpus, EveryFileMatchesItsGoldenVerdicts) {
  const auto files = corpus_files(default_corpus_dir());
  ASSERT_GE(files.size(), 11u);
  for (const auto& f : files) {
    CorpusEntry e = run_corpus_file(f);
    EXPECT_TRUE(e.matches) << e.name << "\n" << ::testing::PrintToString(e.diff);
    EXPECT_FALSE(e.unknown) << e.name;
  }
}

TEST(Corpus, SectionTwoVerdicts) {
  using P = Property;
  const Truth T = Truth::True, F = Truth::False;
  EXPECT_EQ(holds("sign_split.cont", "f", q(0), P::SC), F);
  EXPECT_EQ(holds("sign_split.cont", "f", q(0), P::WC), T);
  EXPECT_EQ(holds("sign_split.cont", "f", q(0), P::WSC), T);
  EXPECT_EQ(holds("sign_split.cont", "f", q(1), P::WC), F);
  EXPECT_EQ(holds("two_sequence_domain.cont", "f", q(0), P::SC), F);
  EXPECT_EQ(holds("two_sequence_domain.cont", "f", q(0), P::WC), T);
  EXPECT_EQ(holds("two_sequence_domain.cont", "f", q(0), P::WSC), T);
  EXPECT_EQ(holds("wc_not_wsc_line.cont", "f", q(0), P::WC), T);
  EXPECT_EQ(holds("wc_not_wsc_line.cont", "f", q(0), P::WSC), F);
  EXPECT_EQ(holds("wc_not_wsc_sparse.cont", "f", q(0), P::WC), T);
  EXPECT_EQ(holds("wc_not_wsc_sparse.cont", "f", q(0), P::WSC), F);
  EXPECT_EQ(holds("indicator_nonzero.cont", "f", q(0), P::SC), T);
  EXPECT_EQ(holds("indicator_nonzero.cont", "f", q(0), P::WC), F);
  EXPECT_EQ(holds("indicator_nonzero.cont", "f", q(0), P::WSC), T);
}

TEST(Corpus, SectionThreeAndFourVerdicts) {
  using P = Property;
  for (const char* fn : {"sum", "diff", "hi", "lo"})
    EXPECT_EQ(holds("sum_counterexample.cont", fn, q(0), P::WSC), Truth::False) << fn;
  EXPECT_EQ(locally_bounded_at(load("unbounded_product.cont").fn("g"), q(0)).bounded, Truth::False);
  EXPECT_EQ(holds("unbounded_product.cont", "fg", q(0), P::WSC), Truth::False);
  EXPECT_EQ(locally_bounded_at(load("bounded_product.cont").fn("f"), q(0)).bounded, Truth::True);
  EXPECT_EQ(holds("bounded_product.cont", "fg", q(0), P::WSC), Truth::False);
  EXPECT_EQ(holds("composition.cont", "f", q(0), P::WSC), Truth::True);
  EXPECT_EQ(holds("power_family.cont", "lim", q(1), P::WSC), Truth::False);
}

TEST(Corpus, ExactCertificates) {
  Verdict sc = check(load("sign_split.cont").fn("f"), q(0), Property::SC);
  ASSERT_EQ(sc.certificate.rows.size(), 1u);
  EXPECT_EQ(sc.certificate.rows[0].limit, AsymptoticValue(q(2)));

  Verdict wsc = check(load("wc_not_wsc_sparse.cont").fn("f"), q(0), Property::WSC);
  ASSERT_FALSE(wsc.certificate.rows.empty());
  for (const auto& r : wsc.certificate.rows) EXPECT_EQ(r.limit, AsymptoticValue(q(1)));

  Verdict comp = check(load("composition.cont").fn("gf"), q(0), Property::WSC);
  ASSERT_FALSE(comp.certificate.rows.empty());
  for (const auto& r : comp.certificate.rows) EXPECT_EQ(r.limit, AsymptoticValue(q(2)));
}

TEST(Corpus, GoldenFilesStoreExactStrings) {
  const std::string golden = read_file(default_corpus_dir() / "golden" / "sign_split.json");
  json j = json::parse(golden);
  EXPECT_EQ(j[0]["certificate"]["patterns"][0]["limit"], "2");
  EXPECT_EQ(j.dump(2) + "\n", golden);
}

TEST(Corpus, UniformContinuityEvidenceIsSampled) {
  Program p = parse_program(R"(
fn a on line = piecewise { else -> abs(x) }
fn s on line = piecewise { else -> x^2 }
uc a lipschitz 1
uc s declared 2000
)");
  CheckRun run = run_checks(p);
  ASSERT_EQ(run.results.size(), 2u);
  EXPECT_EQ(run.results[0]["fn"], "a");
  EXPECT_EQ(run.results[0]["validated"], true);
  EXPECT_EQ(run.results[1]["fn"], "s");
  EXPECT_EQ(run.results[1]["validated"], false);
}
