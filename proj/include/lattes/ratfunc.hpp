#pragma once
// The rational function field Q(lambda), stored as reduced fractions of
// integer polynomials.

#include "lattes/poly.hpp"

#include <string>

namespace lattes {

/// num/den with gcd(num, den) = 1 in Z[lambda] and den having positive
/// leading coefficient. Zero is 0/1.
class RatFunc {
 public:
  RatFunc() : num_(Integer(0)), den_(ZPoly::constant(Integer(1))) {}
  explicit RatFunc(ZPoly num) : num_(std::move(num)), den_(ZPoly::constant(Integer(1))) {}
  RatFunc(ZPoly num, ZPoly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }
  explicit RatFunc(const Rational& c)
      : num_(ZPoly::constant(c.get_num())), den_(ZPoly::constant(c.get_den())) {}
  static RatFunc from_int(long long v) { return RatFunc(ZPoly::constant(Integer(static_cast<long>(v)))); }
  /// The indeterminate lambda.
  static RatFunc lambda() { return RatFunc(zpoly({0, 1})); }

  const ZPoly& num() const { return num_; }
  const ZPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0 && den_[0] == 1; }

  RatFunc operator-() const { return RatFunc(-num_, den_, Reduced{}); }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
    ZPoly g = RingTraits<ZPoly>::gcd(a.den_, b.den_);
    if (g.degree() == 0 && g[0] == 1) return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_, Reduced{});
    ZPoly bd = exact_quotient(b.den_, g);
    ZPoly ad = exact_quotient(a.den_, g);
    return RatFunc(a.num_ * bd + b.num_ * ad, a.den_ * bd);
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero() || b.is_zero()) return RatFunc();
    ZPoly g1 = RingTraits<ZPoly>::gcd(a.num_, b.den_);
    ZPoly g2 = RingTraits<ZPoly>::gcd(b.num_, a.den_);
    ZPoly n = exact_quotient(a.num_, g1) * exact_quotient(b.num_, g2);
    ZPoly d = exact_quotient(a.den_, g2) * exact_quotient(b.den_, g1);
    return RatFunc(std::move(n), std::move(d), Reduced{});
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }

  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

  RatFunc inverse() const {
    if (is_zero()) throw DomainError("inverse of zero rational function");
    return RatFunc(den_, num_, Reduced{});
  }

  /// d/dlambda.
  RatFunc derivative() const {
    return RatFunc(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
  }

  Rational eval(const Rational& t) const {
    auto ev = [&](const ZPoly& p) {
      Rational acc = 0;
      for (std::size_t i = p.coeffs().size(); i-- > 0;) acc = acc * t + Rational(p[i]);
      return acc;
    };
    Rational d = ev(den_);
    if (sgn(d) == 0) throw DomainError("rational function pole");
    return ev(num_) / d;
  }

  std::string to_string() const {
    std::string n = num_.to_string("l");
    if (is_polynomial()) return n;
    return "(" + n + ")/(" + den_.to_string("l") + ")";
  }

 private:
  struct Reduced {};
  // Coprime inputs: only the sign of the denominator is fixed.
  RatFunc(ZPoly num, ZPoly den, Reduced) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw DomainError("zero denominator");
    if (num_.is_zero()) {
      den_ = ZPoly::constant(Integer(1));
      return;
    }
    if (sgn(den_.lead()) < 0) {
      num_ = -num_;
      den_ = -den_;
    }
  }

  void normalize() {
    if (den_.is_zero()) throw DomainError("zero denominator");
    if (num_.is_zero()) {
      den_ = ZPoly::constant(Integer(1));
      return;
    }
    ZPoly g = RingTraits<ZPoly>::gcd(num_, den_);
    if (!(g.degree() == 0 && g[0] == 1)) {
      num_ = exact_quotient(num_, g);
      den_ = exact_quotient(den_, g);
    }
    if (sgn(den_.lead()) < 0) {
      num_ = -num_;
      den_ = -den_;
    }
  }

  ZPoly num_;
  ZPoly den_;
};

template <>
struct RingTraits<RatFunc> {
  static constexpr bool is_field = true;
  static RatFunc zero_like(const RatFunc&) { return RatFunc(); }
  static RatFunc from_int(const RatFunc&, long long v) { return RatFunc::from_int(v); }
  static bool is_zero(const RatFunc& a) { return a.is_zero(); }
  static std::optional<RatFunc> unit_inverse(const RatFunc& a) {
    if (a.is_zero()) return std::nullopt;
    return a.inverse();
  }
  static RatFunc exact_div(const RatFunc& a, const RatFunc& b) { return a / b; }
  static std::string to_string(const RatFunc& a) { return a.to_string(); }
};

using KPoly = Poly<RatFunc>;  // Q(lambda)[x]

/// Embeds Z[lambda][x] into Q(lambda)[x].
inline KPoly to_kpoly(const BiZPoly& f) {
  return map_coeffs(f, RatFunc(), [](const ZPoly& c) { return RatFunc(c); });
}

/// Clears denominators of a Q(lambda)[x] polynomial and returns the primitive
/// Z[lambda][x] associate.
inline BiZPoly clear_denominators(const KPoly& f) {
  ZPoly zero(Integer(0));
  if (f.is_zero()) return BiZPoly(zero);
  ZPoly l = ZPoly::constant(Integer(1));
  for (const auto& c : f.coeffs()) {
    if (c.is_zero()) continue;
    ZPoly g = RingTraits<ZPoly>::gcd(l, c.den());
    l = exact_quotient(l * c.den(), g);
  }
  std::vector<ZPoly> out;
  for (const auto& c : f.coeffs()) out.push_back(exact_quotient(c.num() * l, c.den()));
  return primitive_part(BiZPoly(std::move(out), zero));
}

}  // namespace lattes
