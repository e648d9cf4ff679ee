#include "lattes/torsion_pvi.hpp"

#include <gtest/gtest.h>

using namespace lattes;

namespace {

using FProj = ProjPoint<FieldElement>;

// Value of a bivariate integer polynomial at (x, l) in a prime field.
FieldElement eval2(const BiZPoly& f, const FieldElement& x, const FieldElement& l, const Field& fp) {
  FieldElement acc = fp.zero();
  for (std::size_t i = f.coeffs().size(); i-- > 0;) {
    FieldElement c = fp.zero();
    const ZPoly& row = f.coeffs()[i];
    for (std::size_t j = row.coeffs().size(); j-- > 0;) c = c * l + fp.from_integer(row.coeffs()[j]);
    acc = acc * x + c;
  }
  return acc;
}

// PVI residual at a single point (x0, l0) of F = 0 over F_p, with x' and x''
// from the second-order implicit function formulas.
FieldElement pointwise_residual(const BiZPoly& F, const FieldElement& x, const FieldElement& l, const Field& fp,
                                const PVIParams& prm) {
  BiZPoly Fx = F.derivative(), Fl = derivative_inner(F);
  BiZPoly Fxx = Fx.derivative(), Fxl = derivative_inner(Fx), Fll = derivative_inner(Fl);
  FieldElement fx = eval2(Fx, x, l, fp);
  FieldElement x1 = -eval2(Fl, x, l, fp) / fx;
  FieldElement x2 = -(eval2(Fll, x, l, fp) + fp.from_int(2) * eval2(Fxl, x, l, fp) * x1 + eval2(Fxx, x, l, fp) * x1 * x1) / fx;
  auto q = [&](const Rational& r) { return reduce(r, fp); };
  FieldElement one = fp.one(), half = fp.from_int(2).inverse();
  FieldElement bracket = half * (one / x + one / (x - one) + one / (x - l)) * x1 * x1 -
                         (one / l + one / (l - one) + one / (x - l)) * x1 +
                         x * (x - one) * (x - l) / (l * l * (l - one) * (l - one)) *
                             (q(prm.alpha) + q(prm.beta) * l / (x * x) + q(prm.gamma) * (l - one) / ((x - one) * (x - one)) +
                              q(prm.delta) * l * (l - one) / ((x - l) * (x - l)));
  return x2 - bracket;
}

}  // namespace

TEST(TorsionLocus, Examples) {
  EXPECT_EQ(torsion_locus(2).psi, bizpoly({{0}, {0, 1}, {-1, -1}, {1}}));
  EXPECT_EQ(torsion_locus(3).psi, bizpoly({{0, 0, -1}, {0}, {0, 6}, {-4, -4}, {3}}));
  EXPECT_THROW(torsion_locus(1), DomainError);
  EXPECT_THROW(torsion_locus(13), DomainError);
  EXPECT_EQ(torsion_locus(4).psi.degree(), 6);
  EXPECT_EQ(torsion_locus(5).psi.degree(), 12);
}

TEST(TorsionLocus, RootsAreTorsionOverFiniteFields) {
  for (long m = 3; m <= 8; ++m) {
    BiZPoly psi = torsion_locus(m).psi;
    for (std::uint64_t p : {17, 23}) {
      if (m % static_cast<long>(p) == 0) continue;
      Field fp = make_field(p, 1);
      for (long l = 2; l < static_cast<long>(p); l += 3) {
        LegendreCurve<FieldElement> c(fp.from_int(l));
        std::uint64_t n = count_and_trace(c).count;
        for (std::uint64_t xi = 0; xi < p; ++xi) {
          FieldElement x = fp.from_index(xi);
          if (!eval2(psi, x, fp.from_int(l), fp).is_zero()) continue;
          std::uint64_t ord = x_order(c, FProj::finite(x), n);
          EXPECT_EQ(m % static_cast<long>(ord), 0) << m << " " << p << " " << l << " " << xi;
          EXPECT_NE(ord, 2u);
        }
      }
    }
  }
}

TEST(Etale, SmallOrders) {
  for (long m = 3; m <= 6; ++m) {
    EtaleReport r = etale_check(m);
    EXPECT_TRUE(r.etale) << m;
    EXPECT_NE(r.constant, 0);
    EXPECT_GT(r.lambda_exponent, 0u);
    EXPECT_GT(r.lambda1_exponent, 0u);
    std::vector<Rational> want{0, 1};
    EXPECT_EQ(r.disc_roots, want);
  }
  EXPECT_THROW(etale_check(2), DomainError);
}

TEST(Etale, DiscriminantVanishesExactlyAtCollisions) {
  // a fiber over lambda in F_p \ {0, 1} has a repeated root iff disc(lambda) = 0 mod p
  for (long m : {3, 4}) {
    EtaleReport r = etale_check(m);
    BiZPoly psi = torsion_locus(m).psi;
    Field fp = make_field(31, 1);
    for (long l = 2; l < 31; ++l) {
      FPoly g = specialize_inner(map_coefficients(psi, fp), fp.from_int(l));
      bool repeated = gcd_field(g, g.derivative()).degree() > 0;
      EXPECT_EQ(repeated, map_coefficients(r.disc, fp).eval(fp.from_int(l)).is_zero());
      EXPECT_FALSE(repeated);
    }
  }
}

TEST(PVI, ImplicitDerivativeExamples) {
  auto c = implicit_derivatives(bizpoly({{0, -1}, {1}}));  // x - l
  EXPECT_EQ(c.x1, c.ring.one());
  EXPECT_TRUE(c.x2.is_zero());

  auto s = implicit_derivatives(bizpoly({{0, -1}, {0}, {1}}));  // x^2 - l
  // x' = 1/(2x) = x/(2l), x'' = -1/(4x^3) = -x/(4l^2)
  EXPECT_EQ(s.x1, RatFunc(zpoly({1}), zpoly({0, 2})) * s.ring.x());
  EXPECT_EQ(s.x2, RatFunc(zpoly({-1}), zpoly({0, 0, 4})) * s.ring.x());

  // F_l + F_x x' = 0
  BiZPoly f = torsion_locus(3).psi;
  auto t = implicit_derivatives(f);
  EXPECT_TRUE((t.ring.element(derivative_inner(f)) + t.ring.element(f.derivative()) * t.x1).is_zero());

  EXPECT_THROW(implicit_derivatives(bizpoly({{0, -1}, {0}, {1}}) * bizpoly({{0, -1}, {0}, {1}})), DomainError);
}

TEST(PVI, ZeroDivisorSplitsModulus) {
  // (x - l)(x + l): F_x = 2x is a unit, but x - l is a zero divisor
  QuotientRing r(bizpoly({{0, -1}, {1}}) * bizpoly({{0, 1}, {1}}));
  EXPECT_THROW((r.x() - r.lambda()).inverse(), ZeroDivisorFound);
}

TEST(PVI, PicardResidualVanishes) {
  for (long m : {3, 4}) {
    auto c = implicit_derivatives(torsion_locus(m).psi);
    EXPECT_TRUE(pvi_residual(c, picard_params()).is_zero()) << m;
    EXPECT_FALSE(pvi_residual(c, PVIParams{}).is_zero()) << m;
  }
}

TEST(PVI, PointwiseOracleAgrees) {
  Field fp = make_field(10007, 1);
  for (long m : {3, 4, 5}) {
    BiZPoly psi = torsion_locus(m).psi;
    int checked = 0;
    for (long l = 2; l < 200 && checked < 20; ++l) {
      FieldElement lf = fp.from_int(l);
      for (long xi = 2; xi < 10007 && checked < 20; ++xi) {
        FieldElement x = fp.from_int(xi);
        if (x == lf || !eval2(psi, x, lf, fp).is_zero()) continue;
        EXPECT_TRUE(pointwise_residual(psi, x, lf, fp, picard_params()).is_zero());
        EXPECT_FALSE(pointwise_residual(psi, x, lf, fp, PVIParams{}).is_zero());
        ++checked;
      }
    }
    EXPECT_GT(checked, 0);
  }
}

TEST(PVI, Controls) {
  auto c = implicit_derivatives(bizpoly({{0, 0, -1}, {1}}));  // x - l^2
  EXPECT_FALSE(pvi_residual(c, picard_params()).is_zero());
  auto z = implicit_derivatives(bizpoly({{0}, {1}}));  // x = 0
  EXPECT_THROW(pvi_residual(z, picard_params()), SingularSolution);
  // the branch locus meets every pole
  auto b = implicit_derivatives(torsion_locus(2).psi);
  EXPECT_THROW(pvi_residual(b, picard_params()), SingularSolution);
}

TEST(PVI, GridScanIsUnique) {
  auto c = implicit_derivatives(torsion_locus(3).psi);
  std::vector<Rational> grid{-1, Rational(-1, 2), 0, Rational(1, 2), 1};
  auto hits = pvi_grid_scan(c, grid);
  ASSERT_EQ(hits.size(), 1u);
  EXPECT_EQ(hits[0], picard_params());
}

TEST(PVI, Check) {
  PVICheck r = pvi_check(3);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.params, picard_params());
}
