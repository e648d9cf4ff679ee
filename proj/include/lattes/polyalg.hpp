#pragma once
// Higher-level polynomial algorithms: gcd front ends, discriminants,
// squarefree parts, reduction modulo p and rational root finding.

#include "lattes/poly.hpp"
#include "lattes/ratfunc.hpp"

#include <algorithm>
#include <set>
#include <vector>

namespace lattes {

enum class Variable { x, lambda };

/// gcd over a field: monic. Over Z[x] or Z[lambda][x]: primitive part of the
/// gcd over the fraction field times the gcd of the contents.
template <class R>
Poly<R> poly_gcd(const Poly<R>& a, const Poly<R>& b) {
  if constexpr (RingTraits<R>::is_field) {
    if (a.is_zero() && b.is_zero()) return a;
    return gcd_field(a, b);
  } else {
    return RingTraits<Poly<R>>::gcd(a, b);
  }
}

/// Res(F, dF/dvar) / lead(F) with no extra sign factor.
inline ZPoly discriminant(const BiZPoly& f, Variable var = Variable::x) {
  BiZPoly g = var == Variable::x ? f : swap_variables(f, Integer(0));
  if (g.degree() < 1) throw DomainError("discriminant of a polynomial constant in the chosen variable");
  ZPoly r = resultant(g, g.derivative());
  return exact_quotient(r, g.lead());
}

template <class R>
R discriminant(const Poly<R>& f) {
  if (f.degree() < 1) throw DomainError("discriminant of a constant polynomial");
  R r = resultant(f, f.derivative());
  return RingTraits<R>::exact_div(r, f.lead());
}

namespace detail {

// p-th root of a polynomial whose derivative vanishes over a finite field:
// f = sum c_{pi} x^{pi}  ->  sum c_{pi}^(1/p) x^i.
inline FPoly pth_root(const FPoly& f) {
  std::uint64_t p = f.lead().characteristic();
  std::vector<FieldElement> out;
  for (std::size_t i = 0; i < f.coeffs().size(); i += p) out.push_back(f[i].frobenius(-1));
  return FPoly(std::move(out), f.zero_coeff());
}

}  // namespace detail

/// Product of the distinct irreducible factors, monic.
inline FPoly squarefree_part(const FPoly& f) {
  if (f.is_zero()) throw DomainError("squarefree part of the zero polynomial");
  if (f.degree() == 0) return monic(f);
  FPoly df = f.derivative();
  if (df.is_zero()) return squarefree_part(detail::pth_root(f));
  FPoly g = gcd_field(f, df);
  FPoly w = divrem(f, g).first;
  FPoly c = g;
  while (true) {
    FPoly h = gcd_field(c, w);
    if (h.degree() == 0) break;
    c = divrem(c, h).first;
  }
  if (c.degree() > 0) w = w * squarefree_part(detail::pth_root(monic(c)));
  return monic(w);
}

/// Characteristic zero: F / gcd(F, F'), primitive.
inline ZPoly squarefree_part(const ZPoly& f) {
  if (f.is_zero()) throw DomainError("squarefree part of the zero polynomial");
  if (f.degree() == 0) return ZPoly::constant(Integer(1));
  ZPoly g = gcd_integer_poly(f, f.derivative());
  return primitive_part(exact_quotient(primitive_part(f), primitive_part(g)));
}

inline QPoly squarefree_part(const QPoly& f) {
  if (f.is_zero()) throw DomainError("squarefree part of the zero polynomial");
  return monic(divrem(f, gcd_field(f, f.derivative())).first);
}

/// Squarefree in x over Q(lambda), primitive in Z[lambda][x].
inline BiZPoly squarefree_part(const BiZPoly& f) {
  if (f.is_zero()) throw DomainError("squarefree part of the zero polynomial");
  if (f.degree() == 0) return BiZPoly::constant(ZPoly::constant(Integer(1)));
  BiZPoly g = gcd_subresultant(f, f.derivative());
  return primitive_part(exact_quotient(primitive_part(f), primitive_part(g)));
}

// ---------------------------------------------------------------------------
// Reduction modulo p

inline FieldElement reduce(const Integer& a, const Field& f) { return f.from_integer(a); }

inline FieldElement reduce(const Rational& a, const Field& f) {
  FieldElement d = f.from_integer(a.get_den());
  if (d.is_zero()) throw DomainError("denominator " + a.get_den().get_str() + " is divisible by p");
  return f.from_integer(a.get_num()) / d;
}

inline FPoly map_coefficients(const ZPoly& a, const Field& f) {
  return map_coeffs(a, f.zero(), [&](const Integer& c) { return reduce(c, f); });
}

inline FPoly map_coefficients(const QPoly& a, const Field& f) {
  return map_coeffs(a, f.zero(), [&](const Rational& c) { return reduce(c, f); });
}

inline BiFPoly map_coefficients(const BiZPoly& a, const Field& f) {
  return map_coeffs(a, FPoly(f.zero()), [&](const ZPoly& c) { return map_coefficients(c, f); });
}

// ---------------------------------------------------------------------------
// Rational roots of integer polynomials (Hensel lifting + rational
// reconstruction).

namespace detail {

inline Integer eval_mod(const ZPoly& g, const Integer& x, const Integer& m) {
  Integer acc = 0;
  for (std::size_t i = g.coeffs().size(); i-- > 0;) {
    acc = acc * x + g[i];
    mpz_mod(acc.get_mpz_t(), acc.get_mpz_t(), m.get_mpz_t());
  }
  return acc;
}

// a/b with a = r*b mod m, |a| <= bound_num, 0 < b <= bound_den.
inline std::optional<Rational> rational_reconstruct(const Integer& r, const Integer& m, const Integer& bound_num,
                                                    const Integer& bound_den) {
  Integer r0 = m, r1 = r, t0 = 0, t1 = 1;
  while (r1 > bound_num) {
    Integer q = r0 / r1;
    Integer tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (sgn(t1) == 0 || abs(t1) > bound_den) return std::nullopt;
  Rational out(r1, t1);
  out.canonicalize();
  return out;
}

}  // namespace detail

/// All rational roots, ascending.
inline std::vector<Rational> rational_roots(const ZPoly& f) {
  if (f.is_zero()) throw DomainError("rational roots of the zero polynomial");
  std::vector<Rational> roots;
  if (f.degree() <= 0) return roots;
  ZPoly g = squarefree_part(f);
  if (sgn(g[0]) == 0) {
    roots.emplace_back(0);
    g = exact_quotient(g, zpoly({0, 1}));
  }
  if (g.degree() == 1) {
    Rational r(-g[0], g[1]);
    r.canonicalize();
    roots.push_back(r);
    std::sort(roots.begin(), roots.end());
    return roots;
  }
  if (g.degree() >= 1) {
    // good prime: leading coefficient a unit and g squarefree modulo p
    std::uint64_t p = 3;
    for (;; p = p + 2) {
      if (!is_prime(p)) continue;
      Field fp = make_field(p, 1);
      FPoly gp = map_coefficients(g, fp);
      if (gp.degree() != g.degree()) continue;
      if (gcd_field(gp, gp.derivative()).degree() == 0) break;
    }
    Field fp = make_field(p, 1);
    FPoly gp = map_coefficients(g, fp);
    ZPoly dg = g.derivative();
    Integer bound_num = abs(g[0]), bound_den = abs(g.lead());
    Integer target = 2 * bound_num * bound_den + 1;
    Integer pz(static_cast<unsigned long>(p));
    for (std::uint64_t r = 0; r < p; ++r) {
      if (!gp.eval(fp.from_int(static_cast<long long>(r))).is_zero()) continue;
      Integer m = pz, x = Integer(static_cast<unsigned long>(r));
      while (m < target) {
        m = m * m;
        Integer num = detail::eval_mod(g, x, m);
        Integer den = detail::eval_mod(dg, x, m);
        Integer inv;
        if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t()) == 0) break;
        x = x - num * inv;
        mpz_mod(x.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
      }
      auto cand = detail::rational_reconstruct(x, m, bound_num, bound_den);
      if (!cand) continue;
      // exact check: b^n g(a/b) = 0
      Integer a = cand->get_num(), b = cand->get_den(), acc = 0, bp = 1;
      std::vector<Integer> bpow(g.coeffs().size());
      for (std::size_t i = 0; i < bpow.size(); ++i) {
        bpow[i] = bp;
        bp *= b;
      }
      Integer ap = 1;
      for (std::size_t i = 0; i < g.coeffs().size(); ++i) {
        acc += g[i] * ap * bpow[g.coeffs().size() - 1 - i];
        ap *= a;
      }
      if (sgn(acc) == 0) roots.push_back(*cand);
    }
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

}  // namespace lattes
