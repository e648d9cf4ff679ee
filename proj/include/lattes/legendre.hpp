#pragma once
// The Legendre curve y^2 = x(x - 1)(x - lambda): group law, division
// polynomials, multiplication maps on the x-line, point counts and the Hasse
// invariant.
//
// Throughout, the cubic is written x^3 + a x^2 + b x with a = -(1 + lambda)
// and b = lambda.

#include "lattes/polyalg.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace lattes {

// ---------------------------------------------------------------------------
// Points

template <class K>
struct CurvePoint {
  bool infinity = true;
  K x{}, y{};

  static CurvePoint at_infinity() { return {}; }
  static CurvePoint affine(K x, K y) { return {false, std::move(x), std::move(y)}; }

  friend bool operator==(const CurvePoint& a, const CurvePoint& b) {
    if (a.infinity || b.infinity) return a.infinity == b.infinity;
    return a.x == b.x && a.y == b.y;
  }
};

/// A point of P^1: a finite value or infinity.
template <class K>
struct ProjPoint {
  bool infinity = true;
  K value{};

  static ProjPoint at_infinity() { return {}; }
  static ProjPoint finite(K v) { return {false, std::move(v)}; }

  friend bool operator==(const ProjPoint& a, const ProjPoint& b) {
    if (a.infinity || b.infinity) return a.infinity == b.infinity;
    return a.value == b.value;
  }
};

template <class K>
std::string to_string(const ProjPoint<K>& z) {
  if (z.infinity) return "inf";
  return RingTraits<K>::to_string(z.value);
}

// ---------------------------------------------------------------------------
// The curve

template <class K>
class LegendreCurve {
 public:
  using T = RingTraits<K>;

  explicit LegendreCurve(K lambda) : lambda_(std::move(lambda)) {
    if constexpr (std::is_same_v<K, FieldElement>) {
      if (lambda_.characteristic() == 2) throw DomainError("Legendre curve in characteristic 2");
    }
    if (T::is_zero(lambda_) || T::is_zero(lambda_ - one()))
      throw DomainError("Legendre parameter must avoid 0 and 1");
    a_ = -(one() + lambda_);
    b_ = lambda_;
  }

  const K& lambda() const { return lambda_; }
  const K& a() const { return a_; }
  const K& b() const { return b_; }
  K zero() const { return T::zero_like(lambda_); }
  K one() const { return T::from_int(lambda_, 1); }
  K from_int(long long v) const { return T::from_int(lambda_, v); }

  /// f(x) = x(x - 1)(x - lambda)
  K f(const K& x) const { return ((x + a_) * x + b_) * x; }
  K f_prime(const K& x) const { return (from_int(3) * x + from_int(2) * a_) * x + b_; }

  bool contains(const CurvePoint<K>& p) const { return p.infinity || p.y * p.y == f(p.x); }
  bool is_branch_point(const K& x) const { return T::is_zero(x) || x == one() || x == lambda_; }

  CurvePoint<K> neg(const CurvePoint<K>& p) const {
    if (p.infinity) return p;
    return CurvePoint<K>::affine(p.x, -p.y);
  }

  CurvePoint<K> dbl(const CurvePoint<K>& p) const {
    if (p.infinity || T::is_zero(p.y)) return CurvePoint<K>::at_infinity();
    K s = f_prime(p.x) / (from_int(2) * p.y);
    K x3 = s * s - a_ - from_int(2) * p.x;
    K y3 = s * (p.x - x3) - p.y;
    return CurvePoint<K>::affine(x3, y3);
  }

  CurvePoint<K> add(const CurvePoint<K>& p, const CurvePoint<K>& q) const {
    if (p.infinity) return q;
    if (q.infinity) return p;
    if (p.x == q.x) {
      if (p.y == q.y) return dbl(p);
      return CurvePoint<K>::at_infinity();
    }
    K s = (q.y - p.y) / (q.x - p.x);
    K x3 = s * s - a_ - p.x - q.x;
    K y3 = s * (p.x - x3) - p.y;
    return CurvePoint<K>::affine(x3, y3);
  }

  /// [m]P by double-and-add.
  CurvePoint<K> mul(const Integer& m, const CurvePoint<K>& p) const {
    if (sgn(m) < 0) return neg(mul(-m, p));
    CurvePoint<K> r = CurvePoint<K>::at_infinity();
    std::size_t bits = mpz_sizeinbase(m.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
      r = dbl(r);
      if (mpz_tstbit(m.get_mpz_t(), i)) r = add(r, p);
    }
    return r;
  }
  CurvePoint<K> mul(long m, const CurvePoint<K>& p) const { return mul(Integer(m), p); }

  /// The points over z: one at a branch point or infinity, two when f(z) is a
  /// nonzero square, none otherwise. Over a finite field the root with least
  /// index comes first; over Q the positive root does.
  std::vector<CurvePoint<K>> lift_x(const ProjPoint<K>& z) const {
    if (z.infinity) return {CurvePoint<K>::at_infinity()};
    K v = f(z.value);
    if (T::is_zero(v)) return {CurvePoint<K>::affine(z.value, zero())};
    if constexpr (std::is_same_v<K, FieldElement>) {
      auto r = v.sqrt();
      if (!r) return {};
      return {CurvePoint<K>::affine(z.value, *r), CurvePoint<K>::affine(z.value, -*r)};
    } else {
      auto r = rational_sqrt(v);
      if (!r) return {};
      return {CurvePoint<K>::affine(z.value, *r), CurvePoint<K>::affine(z.value, -*r)};
    }
  }

  friend bool operator==(const LegendreCurve& a, const LegendreCurve& b) { return a.lambda_ == b.lambda_; }

 private:
  static std::optional<Rational> rational_sqrt(const Rational& v) {
    if (sgn(v) < 0) return std::nullopt;
    Integer n = v.get_num(), d = v.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
    Integer rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    return Rational(rn, rd);
  }

  K lambda_, a_, b_;
};

template <class K>
LegendreCurve<K> curve_make(const K& lambda) {
  return LegendreCurve<K>(lambda);
}

// ---------------------------------------------------------------------------
// Division polynomials
//
// f_m is the x-only part of psi_m: psi_m = f_m for odd m and psi_m = 2y f_m
// for even m, with (2y)^2 = 4(x^3 + a x^2 + b x) substituted. For odd m the
// roots of f_m are the x-coordinates of the nonzero m-torsion points; for
// even m they are those of the m-torsion points outside E[2]. In
// characteristic p with p | m (m even), f_m additionally vanishes on E[2].

/// The sequence f_0, f_1, ... over any commutative ring T holding x, a, b
/// (T may be a polynomial ring, a field, or Q).
template <class T>
class DivisionSequence {
 public:
  DivisionSequence(const T& x, const T& a, const T& b) : x_(x), a_(a), b_(b) {
    auto n = [&](long long v) { return RingTraits<T>::from_int(x, v); };
    T x2 = x * x, x3 = x2 * x, x4 = x3 * x;
    T bb = b * b;
    f4_ = n(4) * (x3 + a * x2 + b * x);
    memo_[0] = n(0);
    memo_[1] = n(1);
    memo_[2] = n(1);
    memo_[3] = n(3) * x4 + n(4) * a * x3 + n(6) * b * x2 - bb;
    memo_[4] = n(2) * x4 * x2 + n(4) * a * x4 * x + n(10) * b * x4 - n(10) * bb * x2 - n(4) * a * bb * x -
               n(2) * bb * b;
  }

  /// 4(x^3 + a x^2 + b x), the square of 2y.
  const T& four_f() const { return f4_; }
  const T& x() const { return x_; }

  const T& operator()(long m) {
    if (m < 0) throw DomainError("division polynomial index must be nonnegative");
    auto it = memo_.find(m);
    if (it != memo_.end()) return it->second;
    long n = m / 2;
    T v;
    if (m % 2 == 1) {
      T fn = (*this)(n), fn1 = (*this)(n + 1), fnm1 = (*this)(n - 1), fn2 = (*this)(n + 2);
      T fn3 = fn * fn * fn, fn13 = fn1 * fn1 * fn1;
      if (n % 2 == 0)
        v = f4_ * f4_ * fn2 * fn3 - fnm1 * fn13;
      else
        v = fn2 * fn3 - f4_ * f4_ * fnm1 * fn13;
    } else {
      T fn = (*this)(n), fn1 = (*this)(n + 1), fnm1 = (*this)(n - 1), fn2 = (*this)(n + 2), fnm2 = (*this)(n - 2);
      v = fn * (fn2 * fnm1 * fnm1 - fnm2 * fn1 * fn1);
    }
    return memo_.emplace(m, std::move(v)).first->second;
  }

  /// Numerator and denominator of x([m]P) as functions of x(P), unreduced:
  /// x psi_m^2 - psi_{m-1} psi_{m+1} over psi_m^2 with y eliminated.
  std::pair<T, T> mult_x(long m) {
    if (m <= 0) throw DomainError("multiplication map index must be positive");
    T fm = (*this)(m), fm1 = (*this)(m - 1), fp1 = (*this)(m + 1);
    if (m % 2 == 1) {
      T den = fm * fm;
      return {x_ * den - f4_ * fm1 * fp1, den};
    }
    T den = f4_ * fm * fm;
    return {x_ * den - fm1 * fp1, den};
  }

 private:
  T x_, a_, b_, f4_;
  std::map<long, T> memo_;
};

/// f_m with symbolic lambda, as an element of Z[lambda][x].
inline BiZPoly division_polynomial(long m) {
  if (m < 1) throw DomainError("division polynomial index must be positive");
  ZPoly z(Integer(0));
  BiZPoly x = BiZPoly::variable(z);
  BiZPoly a = BiZPoly::constant(zpoly({-1, -1}));
  BiZPoly b = BiZPoly::constant(zpoly({0, 1}));
  DivisionSequence<BiZPoly> seq(x, a, b);
  return seq(m);
}

template <class K>
DivisionSequence<Poly<K>> division_sequence(const LegendreCurve<K>& c) {
  K z = c.zero();
  return DivisionSequence<Poly<K>>(Poly<K>::variable(z), Poly<K>::constant(c.a()), Poly<K>::constant(c.b()));
}

/// f_m for a specific curve.
template <class K>
Poly<K> division_polynomial(long m, const LegendreCurve<K>& c) {
  if (m < 1) throw DomainError("division polynomial index must be positive");
  auto seq = division_sequence(c);
  return seq(m);
}

/// f_m(x) computed directly on values.
template <class K>
K division_value(long m, const K& x, const LegendreCurve<K>& c) {
  if (m < 1) throw DomainError("division polynomial index must be positive");
  DivisionSequence<K> seq(x, c.a(), c.b());
  return seq(m);
}

// ---------------------------------------------------------------------------
// Rational maps of P^1

/// num/den over a field with gcd 1 and den monic.
template <class K>
struct RationalMap {
  Poly<K> num, den;

  static RationalMap reduced(Poly<K> n, Poly<K> d) {
    if (d.is_zero()) throw DomainError("rational map with zero denominator");
    Poly<K> g = gcd_field(n, d);
    if (g.degree() > 0) {
      n = divrem(n, g).first;
      d = divrem(d, g).first;
    }
    K inv = *RingTraits<K>::unit_inverse(d.lead());
    return {inv * n, inv * d};
  }

  int degree() const { return std::max(num.degree(), den.degree()); }

  ProjPoint<K> operator()(const ProjPoint<K>& z) const {
    if (z.infinity) {
      if (num.degree() > den.degree()) return ProjPoint<K>::at_infinity();
      if (num.degree() < den.degree()) return ProjPoint<K>::finite(RingTraits<K>::zero_like(den.lead()));
      return ProjPoint<K>::finite(num.lead() / den.lead());
    }
    K d = den.eval(z.value);
    if (RingTraits<K>::is_zero(d)) return ProjPoint<K>::at_infinity();
    return ProjPoint<K>::finite(num.eval(z.value) / d);
  }

  friend bool operator==(const RationalMap& a, const RationalMap& b) { return a.num == b.num && a.den == b.den; }
};

/// x o [m] on P^1 for a specific curve, reduced.
template <class K>
RationalMap<K> mult_x_map(long m, const LegendreCurve<K>& c) {
  auto seq = division_sequence(c);
  auto [n, d] = seq.mult_x(m);
  return RationalMap<K>::reduced(std::move(n), std::move(d));
}

/// A rational function of x over Q(lambda), stored as num/den in
/// Z[lambda][x] with no common factor and den's leading integer positive.
struct SymbolicMap {
  BiZPoly num, den;

  friend bool operator==(const SymbolicMap& a, const SymbolicMap& b) { return a.num == b.num && a.den == b.den; }

  /// Substitutes a rational lambda and returns num and den over Q.
  std::pair<QPoly, QPoly> specialize(const Rational& lambda) const {
    auto sp = [&](const BiZPoly& p) {
      return map_coeffs(p, Rational(0), [&](const ZPoly& c) { return RatFunc(c).eval(lambda); });
    };
    return {sp(num), sp(den)};
  }
};

namespace detail {

// True when num and den are certainly coprime over Q(lambda): some
// specialization modulo a prime keeps both degrees and gives gcd 1.
inline bool certify_coprime(const BiZPoly& num, const BiZPoly& den) {
  for (std::uint64_t p : {1000003ull, 1000033ull, 1000037ull}) {
    Field f = make_field(p, 1);
    for (long t : {12345L, 67891L, 424242L}) {
      FieldElement l = f.from_int(t);
      auto spec = [&](const BiZPoly& a) {
        return map_coeffs(a, f.zero(), [&](const ZPoly& c) { return map_coefficients(c, f).eval(l); });
      };
      FPoly n = spec(num), d = spec(den);
      if (n.degree() != num.degree() || d.degree() != den.degree()) continue;
      return gcd_field(n, d).degree() == 0;
    }
  }
  return false;
}

}  // namespace detail

/// Canonical reduced form of num/den over Q(lambda).
inline SymbolicMap reduce_symbolic(BiZPoly num, BiZPoly den) {
  if (den.is_zero()) throw DomainError("rational map with zero denominator");
  ZPoly zero(Integer(0));
  if (num.is_zero()) return {num, BiZPoly::constant(zpoly({1}))};
  if (!detail::certify_coprime(num, den)) {
    BiZPoly g = gcd_subresultant(num, den);
    if (g.degree() > 0) {
      g = primitive_part(g);
      num = exact_quotient(num, g);
      den = exact_quotient(den, g);
    }
  }
  ZPoly c = RingTraits<ZPoly>::gcd(content(num), content(den));
  if (!(c.degree() == 0 && c[0] == 1)) {
    num = exact_quotient(num, BiZPoly::constant(c));
    den = exact_quotient(den, BiZPoly::constant(c));
  }
  if (sgn(den.lead().lead()) < 0) {
    num = -num;
    den = -den;
  }
  return {std::move(num), std::move(den)};
}

/// x o [m] with symbolic lambda.
inline SymbolicMap mult_x_map(long m) {
  ZPoly z(Integer(0));
  DivisionSequence<BiZPoly> seq(BiZPoly::variable(z), BiZPoly::constant(zpoly({-1, -1})),
                                BiZPoly::constant(zpoly({0, 1})));
  auto [n, d] = seq.mult_x(m);
  return reduce_symbolic(std::move(n), std::move(d));
}

/// outer o inner, reduced.
inline SymbolicMap compose(const SymbolicMap& outer, const SymbolicMap& inner) {
  int d = std::max(outer.num.degree(), outer.den.degree());
  std::vector<BiZPoly> pp{BiZPoly::constant(zpoly({1}))}, qp{BiZPoly::constant(zpoly({1}))};
  for (int i = 1; i <= d; ++i) {
    pp.push_back(pp.back() * inner.num);
    qp.push_back(qp.back() * inner.den);
  }
  auto homog = [&](const BiZPoly& a) {
    BiZPoly acc(ZPoly(Integer(0)));
    for (int i = 0; i <= a.degree(); ++i)
      if (!a[i].is_zero()) acc += BiZPoly::constant(a[i]) * pp[i] * qp[d - i];
    return acc;
  };
  return reduce_symbolic(homog(outer.num), homog(outer.den));
}

// ---------------------------------------------------------------------------
// x-only arithmetic on P^1 (independent of the affine group law)

namespace detail {

template <class K>
struct XZ {
  K X, Z;
};

// Ladder on y^2 = x^3 + a x^2 + b x with x(P - Q) = xd fixed and affine.
template <class K>
struct XLadder {
  K a, b, four, xd;

  XZ<K> dbl(const XZ<K>& p) const {
    K xx = p.X * p.X, zz = p.Z * p.Z, xz = p.X * p.Z;
    K bzz = b * zz;
    K u = xx - bzz;
    return {u * u, four * xz * (xx + a * xz + bzz)};
  }

  // x(P+Q) from x(P), x(Q) and x(P-Q) = xd
  XZ<K> diff_add(const XZ<K>& p, const XZ<K>& q) const {
    K u = p.X * q.X - b * (p.Z * q.Z);
    K v = p.X * q.Z - q.X * p.Z;
    XZ<K> out{u * u, xd * (v * v)};
    // P = -Q with x^2 = b makes both coordinates vanish; the sum is infinity
    if (RingTraits<K>::is_zero(out.X) && RingTraits<K>::is_zero(out.Z)) out = {RingTraits<K>::from_int(a, 1), RingTraits<K>::zero_like(a)};
    return out;
  }
};

}  // namespace detail

/// x([n]P) from x(P) by a Montgomery ladder; P need not be defined over K.
template <class K>
ProjPoint<K> x_multiply(const LegendreCurve<K>& c, Integer n, const ProjPoint<K>& z) {
  using T = RingTraits<K>;
  if (sgn(n) < 0) n = -n;
  if (z.infinity || sgn(n) == 0) return ProjPoint<K>::at_infinity();
  if (T::is_zero(z.value)) {
    // (0,0) has order 2
    if (mpz_even_p(n.get_mpz_t())) return ProjPoint<K>::at_infinity();
    return z;
  }
  detail::XLadder<K> lad{c.a(), c.b(), c.from_int(4), z.value};
  detail::XZ<K> r0{z.value, c.one()};
  detail::XZ<K> r1 = lad.dbl(r0);
  std::size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
  for (std::size_t i = bits - 1; i-- > 0;) {
    if (mpz_tstbit(n.get_mpz_t(), i)) {
      r0 = lad.diff_add(r0, r1);
      r1 = lad.dbl(r1);
    } else {
      r1 = lad.diff_add(r0, r1);
      r0 = lad.dbl(r0);
    }
  }
  if (T::is_zero(r0.Z)) return ProjPoint<K>::at_infinity();
  return ProjPoint<K>::finite(r0.X / r0.Z);
}

// ---------------------------------------------------------------------------
// Finite fields: counting, orders, supersingularity

inline constexpr std::uint64_t kDefaultCountBound = 1000000;

/// Every element of the field of `sample`, in index order.
inline std::vector<FieldElement> field_elements(const FieldElement& sample) {
  const auto* f = sample.field_data();
  std::vector<FieldElement> out;
  out.reserve(f->q);
  for (std::uint64_t i = 0; i < f->q; ++i) out.emplace_back(f, i);
  return out;
}

struct CountTrace {
  std::uint64_t count = 0;
  long long trace = 0;
};

/// #C(F_q) by enumeration and the trace q + 1 - #C(F_q).
inline CountTrace count_and_trace(const LegendreCurve<FieldElement>& c, std::uint64_t bound = kDefaultCountBound) {
  const auto* fd = c.lambda().field_data();
  std::uint64_t q = fd->q;
  if (q > bound) throw DomainError("point count over a field of size " + std::to_string(q) + " exceeds bound");
  std::uint64_t count = 1;
  for (std::uint64_t i = 0; i < q; ++i) {
    FieldElement v = c.f(FieldElement(fd, i));
    if (v.is_zero())
      count += 1;
    else if (v.is_square())
      count += 2;
  }
  return {count, static_cast<long long>(q) + 1 - static_cast<long long>(count)};
}

/// #C(F_{q^r}) from the trace over F_q.
inline Integer count_over_extension(std::uint64_t q, long long trace, unsigned r) {
  Integer s0 = 2, s1 = static_cast<long>(trace), qq(static_cast<unsigned long>(q));
  for (unsigned i = 1; i < r; ++i) {
    Integer s2 = Integer(static_cast<long>(trace)) * s1 - qq * s0;
    s0 = s1;
    s1 = s2;
  }
  Integer qr;
  mpz_pow_ui(qr.get_mpz_t(), qq.get_mpz_t(), r);
  return qr + 1 - (r == 0 ? Integer(2) : s1);
}

/// Order of a point, given any multiple N of it.
template <class MulFn, class IsInf>
std::uint64_t order_from_multiple(std::uint64_t n, MulFn&& mul, IsInf&& is_inf) {
  std::uint64_t m = n;
  for (auto [l, e] : factorize(n)) {
    for (int i = 0; i < e; ++i) {
      if (!is_inf(mul(m / l))) break;
      m /= l;
    }
  }
  return m;
}

/// Order of P in C(F_q); `group_order` is #C(F_q) (counted when 0).
inline std::uint64_t torsion_order(const LegendreCurve<FieldElement>& c, const CurvePoint<FieldElement>& p,
                                   std::uint64_t group_order = 0) {
  if (p.infinity) return 1;
  if (!c.contains(p)) throw DomainError("point is not on the curve");
  if (group_order == 0) group_order = count_and_trace(c).count;
  return order_from_multiple(
      group_order, [&](std::uint64_t k) { return c.mul(Integer(static_cast<unsigned long>(k)), p); },
      [](const CurvePoint<FieldElement>& r) { return r.infinity; });
}

/// Order of either lift of z, computed on the x-line. The lift lies on C or on
/// its quadratic twist, whose orders are #C(F_q) and 2q + 2 - #C(F_q).
inline std::uint64_t x_order(const LegendreCurve<FieldElement>& c, const ProjPoint<FieldElement>& z,
                             std::uint64_t group_order = 0) {
  if (z.infinity) return 1;
  if (c.is_branch_point(z.value)) return 2;
  if (group_order == 0) group_order = count_and_trace(c).count;
  std::uint64_t q = z.value.field_data()->q;
  std::uint64_t n = c.f(z.value).is_square() ? group_order : 2 * q + 2 - group_order;
  return order_from_multiple(
      n, [&](std::uint64_t k) { return x_multiply(c, Integer(static_cast<unsigned long>(k)), z); },
      [](const ProjPoint<FieldElement>& r) { return r.infinity; });
}

/// Coefficients of H_p(lambda) = sum binom((p-1)/2, k)^2 lambda^k mod p.
inline std::vector<std::uint64_t> hasse_coefficients(std::uint64_t p) {
  if (p == 2 || !is_prime(p)) throw DomainError("Hasse polynomial needs an odd prime");
  unsigned long h = (p - 1) / 2;
  std::vector<std::uint64_t> out;
  for (unsigned long k = 0; k <= h; ++k) {
    Integer b = binomial(h, k);
    out.push_back(residue(b * b, p));
  }
  return out;
}

/// H_p as a polynomial over a field of characteristic p.
inline FPoly hasse_polynomial(const Field& f) {
  std::vector<FieldElement> c;
  for (auto v : hasse_coefficients(f.characteristic())) c.push_back(f.from_int(static_cast<long long>(v)));
  return FPoly(std::move(c), f.zero());
}

inline bool is_supersingular(const FieldElement& lambda) {
  std::uint64_t p = lambda.characteristic();
  LegendreCurve<FieldElement> check(lambda);  // validates lambda
  (void)check;
  auto c = hasse_coefficients(p);
  FieldElement acc = RingTraits<FieldElement>::zero_like(lambda);
  for (std::size_t i = c.size(); i-- > 0;)
    acc = acc * lambda + RingTraits<FieldElement>::from_int(lambda, static_cast<long long>(c[i]));
  return acc.is_zero();
}

}  // namespace lattes
