#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "symcont/limits.hpp"

using namespace symcont;
namespace e = symcont::expr;

namespace {

FieldElement q(long n, long d = 1) { return FieldElement(Rational(n, d)); }
FieldElement rt2() { return FieldElement::root(2); }
ExprPtr c(long n, long d = 1) { return e::constant(q(n, d)); }
ExprPtr x() { return e::var(); }

const HSetDescriptor kContinuum = HSetDescriptor::Continuum{q(1), {}, {}};

AsymptoticValue lim(const ExprPtr& ex, const FieldElement& a, Side side,
                    const HSetDescriptor& h = kContinuum) {
  return limit(path_of(ex, a, side, h));
}

}  // namespace

TEST(Path, ReciprocalPlusIdentity) {
  // x + 1/x at 0 from the right is t + 1/t.
  PathValue p = path_of(e::add(x(), e::div(c(1), x())), q(0), Side::Right, kContinuum);
  ASSERT_TRUE(p.is_rational());
  EXPECT_EQ(p.rat(), RatFun(Poly({q(1), q(0), q(1)}), Poly({q(0), q(1)})));
  EXPECT_EQ(limit(p).kind(), AsymptoticValue::Kind::PlusInfinity);
}

TEST(Path, AbsResolvedBySign) {
  PathValue p = path_of(e::abs(x()), q(0), Side::Left, kContinuum);
  ASSERT_TRUE(p.is_rational());
  EXPECT_EQ(p.rat(), RatFun(Poly({q(0), q(1)})));
}

TEST(Path, IndexedScaleSubstitution) {
  // 1/(x^2+2) at 0 along h = rt2 t is 1/(2t^2+2).
  HSetDescriptor h = HSetDescriptor::Indexed{rt2(), IndexSet::all()};
  PathValue p = path_of(e::div(c(1), e::add(e::pow(x(), 2), c(2))), q(0), Side::Right, h);
  ASSERT_TRUE(p.is_rational());
  EXPECT_EQ(p.rat(), RatFun(Poly(q(1)), Poly({q(2), q(0), q(2)})));
  PathValue minus = path_of(e::neg(e::div(c(1), e::add(e::pow(x(), 2), c(2)))), q(0), Side::Left, h);
  EXPECT_EQ(limit(p - minus), AsymptoticValue(q(1)));
}

TEST(Limit, CompositionDifference) {
  // (x^2 + 1/x^2 + 2) at +t minus 1/x^2 at -t tends to 2.
  ExprPtr right = e::add(e::add(e::pow(x(), 2), e::div(c(1), e::pow(x(), 2))), c(2));
  ExprPtr left = e::div(c(1), e::pow(x(), 2));
  PathValue d = path_of(right, q(0), Side::Right, kContinuum) -
                path_of(left, q(0), Side::Left, kContinuum);
  EXPECT_EQ(limit(d), AsymptoticValue(q(2)));
  EXPECT_EQ(lim(e::mul(c(2), x()), q(0), Side::Right), AsymptoticValue(q(0)));
}

TEST(Limit, SquareRoots) {
  // sqrt(x) at 0+ -> 0; sqrt(x + 2) at 0 -> rt2; sqrt(x+1) - sqrt(x) -> 1.
  EXPECT_EQ(lim(e::sqrt(x()), q(0), Side::Right), AsymptoticValue(q(0)));
  EXPECT_EQ(lim(e::sqrt(e::add(x(), c(2))), q(0), Side::Right), AsymptoticValue(rt2()));
  EXPECT_EQ(lim(e::sub(e::sqrt(e::add(x(), c(1))), e::sqrt(x())), q(0), Side::Right),
            AsymptoticValue(q(1)));
  // sqrt(x^2) = |x|
  EXPECT_EQ(lim(e::div(e::sqrt(e::pow(x(), 2)), x()), q(0), Side::Left), AsymptoticValue(q(-1)));
  EXPECT_THROW(lim(e::sqrt(x()), q(0), Side::Left), PathError);
  // sqrt(x + 3) at 0 is sqrt(3), outside the field.
  AsymptoticValue v = lim(e::sqrt(e::add(x(), c(3))), q(0), Side::Right);
  ASSERT_TRUE(v.is_finite());
  EXPECT_NEAR(v.to_double(), std::sqrt(3.0), 1e-12);
  EXPECT_EQ(v, AsymptoticValue(RadicalSum::sqrt_of(q(3))));
}

TEST(Limit, CancellingRootsAtInfinity) {
  // sqrt(1/x + 1) - sqrt(1/x) -> 0 as x -> 0+.
  ExprPtr inv = e::div(c(1), x());
  EXPECT_EQ(lim(e::sub(e::sqrt(e::add(inv, c(1))), e::sqrt(inv)), q(0), Side::Right),
            AsymptoticValue(q(0)));
  // sqrt(1/x^2 + 1/x) - 1/x -> 1/2.
  ExprPtr big = e::add(e::div(c(1), e::pow(x(), 2)), inv);
  EXPECT_EQ(lim(e::sub(e::sqrt(big), inv), q(0), Side::Right), AsymptoticValue(q(1, 2)));
}

TEST(Limit, DivisionByRoot) {
  // 1 / (sqrt(x) + 1) -> 1;  x / sqrt(x) -> 0;  1 / sqrt(x) -> +inf.
  EXPECT_EQ(lim(e::div(c(1), e::add(e::sqrt(x()), c(1))), q(0), Side::Right), AsymptoticValue(q(1)));
  EXPECT_EQ(lim(e::div(x(), e::sqrt(x())), q(0), Side::Right), AsymptoticValue(q(0)));
  EXPECT_EQ(lim(e::div(c(1), e::sqrt(x())), q(0), Side::Right).kind(),
            AsymptoticValue::Kind::PlusInfinity);
}

TEST(Limit, OneSidedThroughRegion) {
  StructuredSet a({GenSet::make(q(1), IndexRange::All), PointSet{{q(0)}}});
  Region outside_pos({Compare{CmpOp::Gt, q(0)}, InSet{a, true}});
  EXPECT_EQ(one_sided_limit(c(1), q(1, 3), Side::Right, outside_pos, StructuredSet::line()),
            AsymptoticValue(q(1)));
  Region unit({InSet{StructuredSet({Interval{q(0), q(1), true, false}})}});
  EXPECT_EQ(one_sided_limit(c(0), q(1), Side::Left, unit, StructuredSet::line()),
            AsymptoticValue(q(0)));
  EXPECT_EQ(one_sided_limit(e::pow(x(), 5), q(1), Side::Left, unit, StructuredSet::line()),
            AsymptoticValue(q(1)));
}

namespace {

Poly random_poly(std::mt19937_64& rng, int max_degree) {
  std::uniform_int_distribution<int> deg(0, max_degree), num(-5, 5), pick(0, 3);
  std::vector<FieldElement> c;
  for (int i = deg(rng); i >= 0; --i)
    c.push_back(pick(rng) == 0 ? q(0) : FieldElement(Rational(num(rng)), Rational(pick(rng) == 1 ? num(rng) : 0)));
  return Poly(c);
}

long double eval_poly(const Poly& p, long double t) {
  long double v = 0;
  for (int i = p.degree(); i >= 0; --i) v = v * t + p.coef(i).to_double();
  return v;
}

}  // namespace

TEST(Limit, RationalFunctionsMatchNumericExtrapolation) {
  std::mt19937_64 rng(5);
  int checked = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    Poly n = random_poly(rng, 4), d = random_poly(rng, 4);
    if (d.is_zero() || n.is_zero()) continue;
    RatFun r(n, d);
    AsymptoticValue v = limit(PathValue(r));
    const long double t1 = 1e-4L, t2 = 1e-6L;
    const long double y1 = eval_poly(n, t1) / eval_poly(d, t1);
    const long double y2 = eval_poly(n, t2) / eval_poly(d, t2);
    ++checked;
    if (v.kind() == AsymptoticValue::Kind::PlusInfinity) {
      EXPECT_GT(y2, 0);
      EXPECT_GT(std::fabs(y2), std::fabs(y1) * 5);
    } else if (v.kind() == AsymptoticValue::Kind::MinusInfinity) {
      EXPECT_LT(y2, 0);
      EXPECT_GT(std::fabs(y2), std::fabs(y1) * 5);
    } else {
      ASSERT_TRUE(v.is_finite());
      EXPECT_NEAR(static_cast<double>(y2), v.to_double(), 1e-4 * (1 + std::fabs(v.to_double())))
          << r.to_string();
    }
  }
  EXPECT_GT(checked, 500);
}

TEST(RatFun, ExactSqrt) {
  RatFun sq(Poly({q(1), q(2), q(1)}), Poly({q(0), q(0), q(4)}));  // (1+t)^2 / (4t^2)
  auto r = sq.exact_sqrt();
  ASSERT_TRUE(r);
  EXPECT_EQ(*r * *r, sq);
  EXPECT_FALSE(RatFun(Poly({q(2), q(1)})).exact_sqrt());
  // (rt2 + t)^2 = 2 + 2 rt2 t + t^2
  auto s = RatFun(Poly({q(2), q(2) * rt2(), q(1)})).exact_sqrt();
  ASSERT_TRUE(s);
  EXPECT_EQ(*s, RatFun(Poly({rt2(), q(1)})));
}

TEST(RadicalSum, SignAndIndependence) {
  RadicalSum a = RadicalSum::sqrt_of(q(3)) - RadicalSum(q(17, 10));  // 1.732 - 1.7
  EXPECT_EQ(a.sign(), 1);
  RadicalSum b = RadicalSum::sqrt_of(q(12)) - RadicalSum::sqrt_of(q(3)) * RadicalSum(q(2));
  EXPECT_TRUE(b.is_zero());
  RadicalSum c3 = RadicalSum::sqrt_of(q(2)) + RadicalSum::sqrt_of(q(3)) - RadicalSum(q(314, 100));
  EXPECT_EQ(c3.sign(), 1);  // 3.146 > 3.14
}

TEST(Limit, VanishingRationalPartBesideRoot) {
  // x + sqrt|x| at 0: the rational part starts above the constant term.
  EXPECT_EQ(lim(e::add(x(), e::sqrt(e::abs(x()))), q(0), Side::Right), AsymptoticValue(q(0)));
  EXPECT_EQ(lim(e::add(e::pow(x(), 3), e::add(c(2), e::sqrt(e::abs(x())))), q(0), Side::Left),
            AsymptoticValue(q(2)));
}
