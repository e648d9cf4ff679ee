#include "lattes/torsion_detect.hpp"

#include <gtest/gtest.h>

using namespace lattes;

namespace {

// Order of a lift of z by walking the group law on C(F_{p^2}).
std::uint64_t lift_order(const Rational& lambda, const Rational& z, std::uint64_t p) {
  Field f = make_field(p, 2);
  LegendreCurve<FieldElement> c(reduce(lambda, f));
  auto lifts = c.lift_x(ProjPoint<FieldElement>::finite(reduce(z, f)));
  CurvePoint<FieldElement> P = lifts.at(0), Q = P;
  std::uint64_t n = 1;
  while (!Q.infinity) {
    Q = c.add(Q, P);
    ++n;
  }
  return n;
}

}  // namespace

TEST(LocalOrder, Examples) {
  EXPECT_EQ(local_order(Rational(27, 32), Rational(9, 8), 7), 3u);
  EXPECT_EQ(local_order(Rational(2), Rational(0), 5), 2u);
  EXPECT_THROW(local_order(Rational(2), Rational(3), 2), DomainError);
  EXPECT_THROW(local_order(Rational(27, 32), Rational(9, 8), 3), DomainError);
  EXPECT_EQ(local_order(Rational(2), std::nullopt, 5), 1u);
}

TEST(LocalOrder, MatchesGroupLawWalk) {
  for (auto [l, z] : {std::pair{Rational(2), Rational(3)}, std::pair{Rational(27, 32), Rational(9, 8)},
                      std::pair{Rational(-1), Rational(5, 7)}, std::pair{Rational(3, 4), Rational(-2)}})
    for (std::uint64_t p : {11, 13, 17, 19, 23})
      if (is_good_prime(l, z, p)) EXPECT_EQ(local_order(l, z, p), lift_order(l, z, p)) << l << " " << z << " " << p;
}

TEST(Detect, Examples) {
  auto a = detect({Rational(27, 32), Rational(9, 8)});
  EXPECT_EQ(a.verdict, Verdict::torsion);
  EXPECT_EQ(a.order, 3);
  EXPECT_EQ(a.witness, "psi_3(z;lambda)=0");
  EXPECT_EQ(a.primes, (std::vector<std::uint64_t>{7, 11}));
  // the witness by hand: 3x^4 - 4(1+l)x^3 + 6lx^2 - l^2 at (9/8, 27/32)
  Rational x(9, 8), l(27, 32);
  EXPECT_EQ(3 * x * x * x * x - 4 * (1 + l) * x * x * x + 6 * l * x * x - l * l, 0);

  auto b = detect({Rational(2), Rational(0)});
  EXPECT_EQ(b.verdict, Verdict::torsion);
  EXPECT_EQ(b.order, 2);

  auto c = detect({Rational(2), Rational(3)});
  EXPECT_EQ(c.verdict, Verdict::non_torsion);
  EXPECT_EQ(c.bound, 64);
  EXPECT_GE(c.primes.size(), 2u);

  auto d = detect({Rational(2), std::nullopt});
  EXPECT_EQ(d.verdict, Verdict::torsion);
  EXPECT_EQ(d.order, 1);

  EXPECT_EQ(division_value_q(3, Rational(3), Rational(2)), 23);
}

TEST(Detect, LoweredBoundNeverClaimsTorsion) {
  auto c = detect({Rational(27, 32), Rational(9, 8), 2});
  EXPECT_NE(c.verdict, Verdict::torsion);
  auto samples = manufacture_torsion_samples(20, 6, 7);
  for (const auto& s : samples) {
    auto full = detect({s.lambda, s.z});
    ASSERT_EQ(full.verdict, Verdict::torsion);
    auto low = detect({s.lambda, s.z, full.order - 1});
    EXPECT_NE(low.verdict, Verdict::torsion);
  }
}

TEST(Detect, ManufacturedSamples) {
  auto samples = manufacture_torsion_samples(100, 8);
  ASSERT_EQ(samples.size(), 100u);
  for (const auto& s : samples) {
    // each sample lies on its locus
    EXPECT_EQ(division_value_q(s.m, s.z, s.lambda), 0);
    auto c = detect({s.lambda, s.z});
    ASSERT_EQ(c.verdict, Verdict::torsion) << s.lambda << " " << s.z;
    EXPECT_EQ(s.m % c.order, 0);
    EXPECT_EQ(division_value_q(c.order, s.z, s.lambda), 0);
    // the order also divides what two primes see through the group law
    for (std::size_t i = 0; i < 2; ++i) EXPECT_EQ(c.order % lift_order(s.lambda, s.z, c.primes[i]), 0u);
  }
}

TEST(Detect, NonTorsionPoints) {
  // rank one curves: small multiples of a non-torsion point stay non-torsion
  for (auto [l, z] : {std::pair{Rational(2), Rational(3)}, std::pair{Rational(-1), Rational(2)},
                      std::pair{Rational(5), Rational(-3)}}) {
    auto c = detect({l, z});
    EXPECT_NE(c.verdict, Verdict::torsion) << l << " " << z;
  }
}
