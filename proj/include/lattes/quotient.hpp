#pragma once
// Arithmetic in Q(lambda)[x]/(F) for a squarefree, primitive F in
// Z[lambda][x].
//
// Elements are stored over a common denominator as N(x, lambda)/d(lambda)
// with deg_x N < deg_x F. Keeping integer polynomials (instead of a vector of
// rational functions) means one content gcd per operation rather than one
// gcd per coefficient.

#include "lattes/polyalg.hpp"
#include "lattes/ratfunc.hpp"

#include <memory>
#include <stdexcept>
#include <string>

namespace lattes {

/// Thrown when an inversion runs into a proper factor of the modulus.
class ZeroDivisorFound : public std::runtime_error {
 public:
  explicit ZeroDivisorFound(BiZPoly factor)
      : std::runtime_error("zero divisor: modulus has the factor " + factor.to_string()), factor_(std::move(factor)) {}
  const BiZPoly& factor() const { return factor_; }

 private:
  BiZPoly factor_;
};

class QuotientElement;

class QuotientRing {
 public:
  /// F must have positive degree in x; it is replaced by its primitive part.
  explicit QuotientRing(const BiZPoly& f) {
    if (f.degree() < 1) throw DomainError("quotient modulus must have positive degree in x");
    auto d = std::make_shared<Data>();
    d->modulus = primitive_part(f);
    // squarefree over Q(lambda) iff gcd(F, F_x) is constant in x
    if (gcd_subresultant(d->modulus, d->modulus.derivative()).degree() > 0)
      throw DomainError("quotient modulus is not squarefree");
    data_ = std::move(d);
  }

  const BiZPoly& modulus() const { return data_->modulus; }
  int degree() const { return data_->modulus.degree(); }

  QuotientElement element(const BiZPoly& n, const ZPoly& d) const;
  QuotientElement element(const BiZPoly& n) const;
  QuotientElement scalar(const RatFunc& c) const;
  QuotientElement x() const;
  QuotientElement lambda() const;
  QuotientElement zero() const;
  QuotientElement one() const;

  friend bool operator==(const QuotientRing& a, const QuotientRing& b) {
    return a.data_ == b.data_ || a.data_->modulus == b.data_->modulus;
  }

 private:
  struct Data {
    BiZPoly modulus;
  };
  std::shared_ptr<const Data> data_;
  friend class QuotientElement;
};

class QuotientElement {
 public:
  const BiZPoly& numerator() const { return n_; }
  const ZPoly& denominator() const { return d_; }
  const QuotientRing& ring() const { return ring_; }
  bool is_zero() const { return n_.is_zero(); }

  /// The value as a polynomial in x over Q(lambda).
  KPoly value() const {
    RatFunc inv = RatFunc(ZPoly::constant(Integer(1)), d_);
    return map_coeffs(n_, RatFunc(), [&](const ZPoly& c) { return RatFunc(c) * inv; });
  }

  friend QuotientElement operator+(const QuotientElement& a, const QuotientElement& b) {
    check(a, b);
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.d_ == b.d_) return QuotientElement(a.ring_, a.n_ + b.n_, a.d_, false);
    ZPoly g = RingTraits<ZPoly>::gcd(a.d_, b.d_);
    ZPoly ad = exact_quotient(a.d_, g), bd = exact_quotient(b.d_, g);
    return QuotientElement(a.ring_, a.n_ * BiZPoly::constant(bd) + b.n_ * BiZPoly::constant(ad), ad * b.d_, false);
  }
  QuotientElement operator-() const { return QuotientElement(ring_, -n_, d_, Canonical{}); }
  friend QuotientElement operator-(const QuotientElement& a, const QuotientElement& b) { return a + (-b); }
  friend QuotientElement operator*(const QuotientElement& a, const QuotientElement& b) {
    check(a, b);
    if (a.is_zero()) return a;
    if (b.is_zero()) return b;
    return QuotientElement(a.ring_, a.n_ * b.n_, a.d_ * b.d_, true);
  }
  friend QuotientElement operator*(const RatFunc& c, const QuotientElement& a) {
    if (c.is_zero() || a.is_zero()) return a.ring_.zero();
    return QuotientElement(a.ring_, a.n_ * BiZPoly::constant(c.num()), a.d_ * c.den(), false);
  }
  friend QuotientElement operator*(const Rational& c, const QuotientElement& a) { return RatFunc(c) * a; }
  friend bool operator==(const QuotientElement& a, const QuotientElement& b) {
    return a.n_ == b.n_ && a.d_ == b.d_;
  }

  /// Inverse via the extended Euclidean algorithm over Q(lambda). Throws
  /// ZeroDivisorFound with the primitive common factor when there is one.
  QuotientElement inverse() const {
    if (is_zero()) throw ZeroDivisorFound(ring_.modulus());
    KPoly num = to_kpoly(n_);
    KPoly mod = to_kpoly(ring_.modulus());
    auto eg = ext_gcd_field(num, mod);
    if (eg.g.degree() > 0) throw ZeroDivisorFound(clear_denominators(eg.g));
    // s * num = 1 mod F, so (N/d)^(-1) = d * s
    ZPoly l = ZPoly::constant(Integer(1));
    for (const auto& c : eg.s.coeffs()) {
      if (c.is_zero()) continue;
      l = exact_quotient(l * c.den(), RingTraits<ZPoly>::gcd(l, c.den()));
    }
    std::vector<ZPoly> out;
    for (const auto& c : eg.s.coeffs()) out.push_back(exact_quotient(c.num() * l, c.den()));
    return QuotientElement(ring_, BiZPoly(std::move(out), ZPoly(Integer(0))) * BiZPoly::constant(d_), l, false);
  }

  friend QuotientElement operator/(const QuotientElement& a, const QuotientElement& b) { return a * b.inverse(); }

  QuotientElement pow(unsigned e) const {
    QuotientElement r = ring_.one(), b = *this;
    while (e) {
      if (e & 1) r = r * b;
      e >>= 1;
      if (e) b = b * b;
    }
    return r;
  }

  /// Partial derivative in lambda of the representative (x held fixed).
  QuotientElement d_lambda() const {
    if (is_zero()) return *this;
    BiZPoly n = derivative_inner(n_) * BiZPoly::constant(d_) - n_ * BiZPoly::constant(d_.derivative());
    return QuotientElement(ring_, n, d_ * d_, false);
  }

  /// Partial derivative in x of the representative.
  QuotientElement d_x() const { return QuotientElement(ring_, n_.derivative(), d_, false); }

  std::string to_string() const {
    std::string n = n_.to_string();
    if (d_.degree() == 0 && d_[0] == 1) return n;
    return "(" + n + ")/(" + d_.to_string("l") + ")";
  }

 private:
  friend class QuotientRing;
  struct Canonical {};

  QuotientElement(QuotientRing r, BiZPoly n, ZPoly d, Canonical)
      : ring_(std::move(r)), n_(std::move(n)), d_(std::move(d)) {}

  QuotientElement(QuotientRing r, BiZPoly n, ZPoly d, bool reduce) : ring_(std::move(r)), n_(std::move(n)), d_(std::move(d)) {
    if (d_.is_zero()) throw DomainError("zero denominator in quotient element");
    const BiZPoly& f = ring_.modulus();
    if (reduce || n_.degree() >= f.degree()) {
      int e = n_.degree() - f.degree() + 1;
      if (e > 0) {
        n_ = prem(n_, f);
        d_ = d_ * f.lead().pow(static_cast<unsigned>(e));
      }
    }
    normalize();
  }

  void normalize() {
    if (n_.is_zero()) {
      d_ = ZPoly::constant(Integer(1));
      return;
    }
    ZPoly c = content(n_);
    ZPoly g = RingTraits<ZPoly>::gcd(c, d_);
    if (!(g.degree() == 0 && g[0] == 1)) {
      std::vector<ZPoly> out;
      for (const auto& x : n_.coeffs()) out.push_back(exact_quotient(x, g));
      n_ = BiZPoly(std::move(out), n_.zero_coeff());
      d_ = exact_quotient(d_, g);
    }
    if (sgn(d_.lead()) < 0) {
      n_ = -n_;
      d_ = -d_;
    }
  }

  static void check(const QuotientElement& a, const QuotientElement& b) {
    if (!(a.ring_ == b.ring_)) throw DomainError("quotient elements with different moduli");
  }

  QuotientRing ring_;
  BiZPoly n_;
  ZPoly d_;
};

inline QuotientElement QuotientRing::element(const BiZPoly& n, const ZPoly& d) const {
  return QuotientElement(*this, n, d, true);
}
inline QuotientElement QuotientRing::element(const BiZPoly& n) const {
  return element(n, ZPoly::constant(Integer(1)));
}
inline QuotientElement QuotientRing::scalar(const RatFunc& c) const {
  return element(BiZPoly::constant(c.num()), c.den());
}
inline QuotientElement QuotientRing::x() const { return element(bizpoly({{0}, {1}})); }
inline QuotientElement QuotientRing::lambda() const { return element(bizpoly({{0, 1}})); }
inline QuotientElement QuotientRing::zero() const { return element(BiZPoly(ZPoly(Integer(0)))); }
inline QuotientElement QuotientRing::one() const { return element(bizpoly({{1}})); }

}  // namespace lattes
