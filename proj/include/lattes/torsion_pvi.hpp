#pragma once
// Torsion loci T_m in the (x, lambda)-plane, their etaleness away from
// lambda in {0, 1, infinity}, and exact verification that they solve
// Painleve VI with t = lambda, y = x.

#include "lattes/legendre.hpp"
#include "lattes/quotient.hpp"

#include <array>
#include <chrono>
#include <string>
#include <vector>

namespace lattes {

inline constexpr long kMaxLocusOrder = 12;

struct TorsionLocus {
  long m = 0;
  BiZPoly psi;  // primitive, squarefree over Q(lambda)
};

/// For m = 2 the locus is the branch divisor x(x-1)(x-lambda). For m > 2 it is
/// the squarefree part of the x-only division polynomial, whose roots are the
/// x-coordinates of points of order dividing m other than the 2-torsion.
inline TorsionLocus torsion_locus(long m) {
  if (m < 2 || m > kMaxLocusOrder)
    throw DomainError("torsion locus order must lie in [2, " + std::to_string(kMaxLocusOrder) + "]");
  if (m == 2) return {2, bizpoly({{0}, {0, 1}, {-1, -1}, {1}})};
  return {m, squarefree_part(division_polynomial(m))};
}

// ---------------------------------------------------------------------------
// Etaleness

struct EtaleReport {
  long m = 0;
  ZPoly disc;                     // disc_x(Psi_m) in Z[lambda]
  Integer constant;               // disc = constant * lambda^a * (lambda - 1)^b * residual
  unsigned lambda_exponent = 0;   // a
  unsigned lambda1_exponent = 0;  // b
  ZPoly residual;                 // 1 when etale
  ZPoly leading;                  // leading coefficient of Psi_m in x
  std::vector<Rational> disc_roots;  // rational roots of disc
  bool etale = false;
};

inline EtaleReport etale_check(long m) {
  if (m < 3) throw DomainError("etale check needs m >= 3; the 2-torsion locus is the puncture set");
  TorsionLocus t = torsion_locus(m);
  EtaleReport r;
  r.m = m;
  r.leading = t.psi.lead();
  r.disc = discriminant(t.psi, Variable::x);
  ZPoly rest = r.disc;
  const ZPoly lam = zpoly({0, 1}), lam1 = zpoly({-1, 1});
  while (!rest.is_zero()) {
    auto q = try_exact_quotient(rest, lam);
    if (!q) break;
    rest = *q;
    ++r.lambda_exponent;
  }
  while (!rest.is_zero()) {
    auto q = try_exact_quotient(rest, lam1);
    if (!q) break;
    rest = *q;
    ++r.lambda1_exponent;
  }
  Integer c = rest.is_zero() ? Integer(0) : content(rest);
  if (!rest.is_zero() && sgn(rest.lead()) < 0) c = -c;
  r.constant = c;
  r.residual = rest.is_zero() ? rest : exact_quotient(rest, ZPoly::constant(c));
  r.disc_roots = r.disc.is_zero() ? std::vector<Rational>{} : rational_roots(r.disc);
  // the leading coefficient is an integer, so no fiber loses a root
  r.etale = !r.disc.is_zero() && r.residual.degree() == 0 && r.leading.degree() == 0;
  return r;
}

// ---------------------------------------------------------------------------
// Painleve VI

struct PVIParams {
  Rational alpha, beta, gamma, delta;

  std::array<Rational, 4> values() const { return {alpha, beta, gamma, delta}; }
  friend bool operator==(const PVIParams& a, const PVIParams& b) { return a.values() == b.values(); }
};

/// (alpha, beta, gamma, delta) = (0, 0, 0, 1/2): unipotent local monodromy at
/// 0, 1, lambda and eigenvalues {-1, -1} at infinity.
inline PVIParams picard_params() { return {0, 0, 0, Rational(1, 2)}; }

/// The solution passes through a pole of the equation (x = 0, 1 or lambda on
/// some component of the locus).
class SingularSolution : public std::runtime_error {
 public:
  explicit SingularSolution(BiZPoly factor)
      : std::runtime_error("solution meets the singular locus along " + factor.to_string()), factor_(std::move(factor)) {}
  const BiZPoly& factor() const { return factor_; }

 private:
  BiZPoly factor_;
};

struct AlgebraicSolutionCandidate {
  QuotientRing ring;
  QuotientElement x1;  // dx/dlambda
  QuotientElement x2;  // d^2x/dlambda^2
};

/// x' = -F_lambda / F_x and x'' = d(x')/dlambda + d(x')/dx * x' in Q(lambda)[x]/(F).
inline AlgebraicSolutionCandidate implicit_derivatives(const BiZPoly& f) {
  QuotientRing ring(f);
  const BiZPoly& F = ring.modulus();
  QuotientElement fx = ring.element(F.derivative());
  QuotientElement fl = ring.element(derivative_inner(F));
  QuotientElement x1 = -(fl * fx.inverse());
  QuotientElement x2 = x1.d_lambda() + x1.d_x() * x1;
  return {ring, x1, x2};
}

/// The residual is affine in the parameters:
///   R = base - alpha*A - beta*B - gamma*C - delta*D.
struct PVIResidualTerms {
  QuotientElement base;
  std::array<QuotientElement, 4> terms;

  QuotientElement operator()(const PVIParams& p) const {
    QuotientElement r = base;
    auto v = p.values();
    for (int i = 0; i < 4; ++i)
      if (v[i] != 0) r = r - v[i] * terms[i];
    return r;
  }
};

namespace detail {

inline QuotientElement inverse_or_singular(const QuotientElement& a) {
  try {
    return a.inverse();
  } catch (const ZeroDivisorFound& e) {
    throw SingularSolution(e.factor());
  }
}

}  // namespace detail

inline PVIResidualTerms pvi_residual_terms(const AlgebraicSolutionCandidate& c) {
  const QuotientRing& R = c.ring;
  QuotientElement x = R.x(), l = R.lambda(), one = R.one();
  QuotientElement ix = detail::inverse_or_singular(x);
  QuotientElement ix1 = detail::inverse_or_singular(x - one);
  QuotientElement ixl = detail::inverse_or_singular(x - l);
  RatFunc lam = RatFunc::lambda(), lam1 = lam - RatFunc::from_int(1);
  RatFunc il = lam.inverse(), il1 = lam1.inverse();
  RatFunc half(Rational(1, 2));

  QuotientElement first = half * ((ix + ix1 + ixl) * c.x1 * c.x1);
  QuotientElement second = (R.scalar(il + il1) + ixl) * c.x1;
  QuotientElement k = (il * il * il1 * il1) * (x * (x - one) * (x - l));

  PVIResidualTerms t{c.x2 - first + second,
                     {k, k * (lam * (ix * ix)), k * (lam1 * (ix1 * ix1)), k * ((lam * lam1) * (ixl * ixl))}};
  return t;
}

/// R = x'' - [1/2 (1/x + 1/(x-1) + 1/(x-l)) x'^2 - (1/l + 1/(l-1) + 1/(x-l)) x'
///      + x(x-1)(x-l)/(l^2 (l-1)^2) (alpha + beta l/x^2 + gamma (l-1)/(x-1)^2
///      + delta l(l-1)/(x-l)^2)], reduced in Q(l)[x]/(F).
inline QuotientElement pvi_residual(const AlgebraicSolutionCandidate& c, const PVIParams& p) {
  return pvi_residual_terms(c)(p);
}

/// Every tuple from grid^4 whose residual vanishes.
inline std::vector<PVIParams> pvi_grid_scan(const AlgebraicSolutionCandidate& c, const std::vector<Rational>& grid) {
  PVIResidualTerms t = pvi_residual_terms(c);
  std::vector<PVIParams> out;
  for (const auto& a : grid)
    for (const auto& b : grid)
      for (const auto& g : grid)
        for (const auto& d : grid) {
          PVIParams p{a, b, g, d};
          if (t(p).is_zero()) out.push_back(p);
        }
  return out;
}

struct PVICheck {
  long m = 0;
  PVIParams params;
  bool residual_zero = false;
  bool control_nonzero = false;  // residual for (0, 0, 0, 0)
  EtaleReport etale;
  double runtime_ms = 0;
  bool ok() const { return residual_zero && control_nonzero && etale.etale; }
};

inline PVICheck pvi_check(long m, const PVIParams& params = picard_params()) {
  if (m < 3) throw DomainError("PVI check needs m >= 3");
  auto t0 = std::chrono::steady_clock::now();
  PVICheck r;
  r.m = m;
  r.params = params;
  AlgebraicSolutionCandidate c = implicit_derivatives(torsion_locus(m).psi);
  PVIResidualTerms terms = pvi_residual_terms(c);
  r.residual_zero = terms(params).is_zero();
  r.control_nonzero = !terms(PVIParams{}).is_zero();
  r.etale = etale_check(m);
  r.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace lattes
