#pragma once
// Dense univariate polynomials over an arbitrary coefficient ring.
//
// Bivariate polynomials in (x, lambda) are Poly<Poly<R>>: the outer variable
// is x and each coefficient is a polynomial in lambda.

#include "lattes/arith.hpp"
#include "lattes/field.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lattes {

template <class R>
struct RingTraits;

template <class R>
class Poly;

template <>
struct RingTraits<Integer> {
  static constexpr bool is_field = false;
  static Integer zero_like(const Integer&) { return 0; }
  static Integer from_int(const Integer&, long long v) { return Integer(static_cast<long>(v)); }
  static bool is_zero(const Integer& a) { return sgn(a) == 0; }
  static std::optional<Integer> unit_inverse(const Integer& a) {
    if (a == 1 || a == -1) return a;
    return std::nullopt;
  }
  static Integer exact_div(const Integer& a, const Integer& b) {
    if (!mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t())) throw DomainError("inexact integer division");
    Integer r;
    mpz_divexact(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
  }
  static bool divides(const Integer& b, const Integer& a) { return mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t()) != 0; }
  static Integer gcd(const Integer& a, const Integer& b) {
    Integer r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
  }
  // Normalizes a gcd-type result to the positive associate.
  static Integer normal_unit(const Integer& a) { return sgn(a) < 0 ? Integer(-1) : Integer(1); }
  static std::string to_string(const Integer& a) { return a.get_str(); }
};

template <>
struct RingTraits<Rational> {
  static constexpr bool is_field = true;
  static Rational zero_like(const Rational&) { return 0; }
  static Rational from_int(const Rational&, long long v) { return Rational(static_cast<long>(v)); }
  static bool is_zero(const Rational& a) { return sgn(a) == 0; }
  static std::optional<Rational> unit_inverse(const Rational& a) {
    if (is_zero(a)) return std::nullopt;
    return Rational(1) / a;
  }
  static Rational exact_div(const Rational& a, const Rational& b) { return a / b; }
  static std::string to_string(const Rational& a) { return lattes::to_string(a); }
};

template <>
struct RingTraits<FieldElement> {
  static constexpr bool is_field = true;
  static FieldElement zero_like(const FieldElement& s) { return {s.field_data(), 0}; }
  static FieldElement from_int(const FieldElement& s, long long v) {
    long long p = static_cast<long long>(s.characteristic());
    return {s.field_data(), static_cast<std::uint64_t>(((v % p) + p) % p)};
  }
  static bool is_zero(const FieldElement& a) { return a.is_zero(); }
  static std::optional<FieldElement> unit_inverse(const FieldElement& a) {
    if (a.is_zero()) return std::nullopt;
    return a.inverse();
  }
  static FieldElement exact_div(const FieldElement& a, const FieldElement& b) { return a / b; }
  static std::string to_string(const FieldElement& a) { return a.to_string(); }
};

/// True when two coefficient samples come from the same ring.
template <class R>
bool same_ring(const R& a, const R& b);

template <class R>
class Poly {
 public:
  using coeff_type = R;
  using Traits = RingTraits<R>;

  Poly() = default;
  explicit Poly(R zero) : zero_(std::move(zero)) {}
  Poly(std::vector<R> coeffs, R zero) : c_(std::move(coeffs)), zero_(std::move(zero)) { trim(); }

  static Poly constant(const R& c) {
    Poly out(Traits::zero_like(c));
    if (!Traits::is_zero(c)) out.c_.push_back(c);
    return out;
  }
  static Poly monomial(const R& c, std::size_t deg) {
    Poly out(Traits::zero_like(c));
    if (Traits::is_zero(c)) return out;
    out.c_.assign(deg + 1, out.zero_);
    out.c_[deg] = c;
    return out;
  }
  /// The variable itself, over the ring of `zero`.
  static Poly variable(const R& zero) { return monomial(Traits::from_int(zero, 1), 1); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const std::vector<R>& coeffs() const { return c_; }
  const R& zero_coeff() const { return zero_; }
  R one_coeff() const { return Traits::from_int(zero_, 1); }
  const R& operator[](std::size_t i) const { return i < c_.size() ? c_[i] : zero_; }
  const R& lead() const { return c_.empty() ? zero_ : c_.back(); }

  /// Sets coefficient i (extending or trimming as needed).
  void set(std::size_t i, R v) {
    if (i >= c_.size()) {
      if (Traits::is_zero(v)) return;
      c_.resize(i + 1, zero_);
    }
    c_[i] = std::move(v);
    trim();
  }

  R eval(const R& x) const {
    R acc = zero_;
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  Poly derivative() const {
    Poly out(zero_);
    if (c_.size() <= 1) return out;
    out.c_.reserve(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) out.c_.push_back(c_[i] * Traits::from_int(zero_, static_cast<long long>(i)));
    out.trim();
    return out;
  }

  Poly operator-() const {
    Poly out(zero_);
    out.c_.reserve(c_.size());
    for (const auto& a : c_) out.c_.push_back(-a);
    return out;
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    check_ring(a, b);
    const Poly& big = a.c_.size() >= b.c_.size() ? a : b;
    const Poly& small = a.c_.size() >= b.c_.size() ? b : a;
    Poly out = big;
    for (std::size_t i = 0; i < small.c_.size(); ++i) out.c_[i] = out.c_[i] + small.c_[i];
    out.trim();
    return out;
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    check_ring(a, b);
    Poly out = a;
    if (out.c_.size() < b.c_.size()) out.c_.resize(b.c_.size(), a.zero_);
    for (std::size_t i = 0; i < b.c_.size(); ++i) out.c_[i] = out.c_[i] - b.c_[i];
    out.trim();
    return out;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    check_ring(a, b);
    Poly out(a.zero_);
    if (a.c_.empty() || b.c_.empty()) return out;
    out.c_.assign(a.c_.size() + b.c_.size() - 1, a.zero_);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (Traits::is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) {
        if (Traits::is_zero(b.c_[j])) continue;
        out.c_[i + j] += a.c_[i] * b.c_[j];
      }
    }
    out.trim();
    return out;
  }
  friend Poly operator*(const R& s, const Poly& a) {
    Poly out(a.zero_);
    if (Traits::is_zero(s)) return out;
    out.c_.reserve(a.c_.size());
    for (const auto& c : a.c_) out.c_.push_back(s * c);
    out.trim();
    return out;
  }
  friend Poly operator*(const Poly& a, const R& s) { return s * a; }

  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  /// Multiplication by x^n.
  Poly shift(std::size_t n) const {
    if (c_.empty() || n == 0) return *this;
    Poly out(zero_);
    out.c_.assign(n, zero_);
    out.c_.insert(out.c_.end(), c_.begin(), c_.end());
    return out;
  }

  Poly pow(unsigned e) const {
    Poly r = Poly::constant(one_coeff());
    Poly b = *this;
    while (e) {
      if (e & 1) r = r * b;
      e >>= 1;
      if (e) b = b * b;
    }
    return r;
  }

  /// g(f(x)) style substitution: returns this(inner).
  Poly compose(const Poly& inner) const {
    Poly acc(zero_);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * inner + Poly::constant(c_[i]);
    return acc;
  }

  std::string to_string(const std::string& var = "x") const {
    if (c_.empty()) return "0";
    std::string s;
    for (std::size_t i = c_.size(); i-- > 0;) {
      if (Traits::is_zero(c_[i])) continue;
      if (!s.empty()) s += " + ";
      std::string cs = Traits::to_string(c_[i]);
      if (i == 0) {
        s += cs;
        continue;
      }
      bool wrap = cs.find_first_of("+ ") != std::string::npos;
      if (cs != "1") s += (wrap ? "(" + cs + ")" : cs) + "*";
      s += var;
      if (i > 1) s += "^" + std::to_string(i);
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && Traits::is_zero(c_.back())) c_.pop_back();
  }

  static void check_ring(const Poly& a, const Poly& b) {
    if (!same_ring(a.zero_, b.zero_)) throw DomainError("polynomial arithmetic across different coefficient rings");
  }

  std::vector<R> c_;
  R zero_{};
};

template <class R>
bool same_ring(const R& a, const R& b) {
  if constexpr (std::is_same_v<R, FieldElement>) {
    const auto* fa = a.field_data();
    const auto* fb = b.field_data();
    return fa == fb || (fa && fb && fa->same_as(*fb));
  } else if constexpr (requires { a.zero_coeff(); }) {
    return same_ring(a.zero_coeff(), b.zero_coeff());
  } else {
    (void)a;
    (void)b;
    return true;
  }
}

template <class R>
struct RingTraits<Poly<R>> {
  static constexpr bool is_field = false;
  static Poly<R> zero_like(const Poly<R>& s) { return Poly<R>(s.zero_coeff()); }
  static Poly<R> from_int(const Poly<R>& s, long long v) {
    return Poly<R>::constant(RingTraits<R>::from_int(s.zero_coeff(), v));
  }
  static bool is_zero(const Poly<R>& a) { return a.is_zero(); }
  static std::optional<Poly<R>> unit_inverse(const Poly<R>& a) {
    if (a.degree() != 0) return std::nullopt;
    auto inv = RingTraits<R>::unit_inverse(a[0]);
    if (!inv) return std::nullopt;
    return Poly<R>::constant(*inv);
  }
  static Poly<R> exact_div(const Poly<R>& a, const Poly<R>& b);
  static bool divides(const Poly<R>& b, const Poly<R>& a);
  static Poly<R> gcd(const Poly<R>& a, const Poly<R>& b);
  static Poly<R> normal_unit(const Poly<R>& a);
  static std::string to_string(const Poly<R>& a) { return a.to_string("l"); }
};

// ---------------------------------------------------------------------------
// Division

class DivisionByZero : public DomainError {
 public:
  DivisionByZero() : DomainError("polynomial division by zero") {}
};

/// Quotient and remainder; the divisor's leading coefficient must be a unit.
template <class R>
std::pair<Poly<R>, Poly<R>> divrem(const Poly<R>& a, const Poly<R>& b) {
  using T = RingTraits<R>;
  if (b.is_zero()) throw DivisionByZero();
  auto inv = T::unit_inverse(b.lead());
  if (!inv) throw DomainError("divrem requires a divisor with unit leading coefficient");
  std::vector<R> r = a.coeffs();
  const R& z = a.zero_coeff();
  int db = b.degree();
  std::vector<R> q(std::max(0, a.degree() - db + 1), z);
  for (int i = a.degree(); i >= db; --i) {
    if (T::is_zero(r[i])) continue;
    R c = r[i] * *inv;
    q[i - db] = c;
    for (int j = 0; j <= db; ++j) r[i - db + j] = r[i - db + j] - c * b[j];
  }
  r.resize(std::max(0, std::min<int>(db, static_cast<int>(r.size()))), z);
  return {Poly<R>(std::move(q), z), Poly<R>(std::move(r), z)};
}

/// Pseudo-division: lead(b)^(deg a - deg b + 1) * a = q*b + r.
template <class R>
std::pair<Poly<R>, Poly<R>> pseudo_divrem(const Poly<R>& a, const Poly<R>& b) {
  using T = RingTraits<R>;
  if (b.is_zero()) throw DivisionByZero();
  const R& z = a.zero_coeff();
  int da = a.degree(), db = b.degree();
  if (da < db) return {Poly<R>(z), a};
  std::vector<R> r = a.coeffs();
  std::vector<R> q(da - db + 1, z);
  const R& l = b.lead();
  for (int i = da; i >= db; --i) {
    R c = r[i];
    for (auto& qi : q) qi = qi * l;
    q[i - db] = q[i - db] + c;
    for (int j = 0; j < i; ++j) r[j] = r[j] * l;
    if (!T::is_zero(c))
      for (int j = 0; j < db; ++j) r[i - db + j] = r[i - db + j] - c * b[j];
    r[i] = z;
  }
  r.resize(std::max(0, db), z);
  return {Poly<R>(std::move(q), z), Poly<R>(std::move(r), z)};
}

template <class R>
Poly<R> prem(const Poly<R>& a, const Poly<R>& b) {
  using T = RingTraits<R>;
  if (b.is_zero()) throw DivisionByZero();
  const R& z = a.zero_coeff();
  int da = a.degree(), db = b.degree();
  if (da < db) return a;
  std::vector<R> r = a.coeffs();
  const R& l = b.lead();
  for (int i = da; i >= db; --i) {
    R c = r[i];
    for (int j = 0; j < i; ++j) r[j] = r[j] * l;
    if (!T::is_zero(c))
      for (int j = 0; j < db; ++j) r[i - db + j] = r[i - db + j] - c * b[j];
    r[i] = z;
  }
  r.resize(std::max(0, db), z);
  return Poly<R>(std::move(r), z);
}

/// Division assumed exact: every step divides the leading coefficient exactly.
/// Returns nullopt when b does not divide a.
template <class R>
std::optional<Poly<R>> try_exact_quotient(const Poly<R>& a, const Poly<R>& b) {
  using T = RingTraits<R>;
  if (b.is_zero()) throw DivisionByZero();
  const R& z = a.zero_coeff();
  if (a.is_zero()) return Poly<R>(z);
  int da = a.degree(), db = b.degree();
  if (da < db) return std::nullopt;
  std::vector<R> r = a.coeffs();
  std::vector<R> q(da - db + 1, z);
  for (int i = da; i >= db; --i) {
    if (T::is_zero(r[i])) continue;
    R c;
    if constexpr (T::is_field) {
      c = T::exact_div(r[i], b.lead());
    } else {
      if (!T::divides(b.lead(), r[i])) return std::nullopt;
      c = T::exact_div(r[i], b.lead());
    }
    q[i - db] = c;
    for (int j = 0; j <= db; ++j) r[i - db + j] = r[i - db + j] - c * b[j];
  }
  for (const auto& x : r)
    if (!T::is_zero(x)) return std::nullopt;
  return Poly<R>(std::move(q), z);
}

template <class R>
Poly<R> exact_quotient(const Poly<R>& a, const Poly<R>& b) {
  auto q = try_exact_quotient(a, b);
  if (!q) throw DomainError("polynomial division is not exact");
  return *q;
}

template <class R>
Poly<R> RingTraits<Poly<R>>::exact_div(const Poly<R>& a, const Poly<R>& b) {
  return exact_quotient(a, b);
}

template <class R>
bool RingTraits<Poly<R>>::divides(const Poly<R>& b, const Poly<R>& a) {
  return try_exact_quotient(a, b).has_value();
}

// ---------------------------------------------------------------------------
// GCD, content, resultant

/// Monic associate over a field.
template <class R>
Poly<R> monic(const Poly<R>& a) {
  if (a.is_zero()) return a;
  return *RingTraits<R>::unit_inverse(a.lead()) * a;
}

/// Euclidean gcd over a field, monic; gcd(a, 0) = monic(a).
template <class R>
Poly<R> gcd_field(Poly<R> a, Poly<R> b) {
  while (!b.is_zero()) {
    Poly<R> r = divrem(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

template <class R>
struct ExtGcd {
  Poly<R> g, s, t;  // s*a + t*b = g, g monic
};

template <class R>
ExtGcd<R> ext_gcd_field(const Poly<R>& a, const Poly<R>& b) {
  const R& z = a.zero_coeff();
  Poly<R> r0 = a, r1 = b;
  Poly<R> s0 = Poly<R>::constant(RingTraits<R>::from_int(z, 1)), s1(z);
  Poly<R> t0(z), t1 = Poly<R>::constant(RingTraits<R>::from_int(z, 1));
  while (!r1.is_zero()) {
    auto [q, r] = divrem(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Poly<R> s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    Poly<R> t2 = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  R inv = *RingTraits<R>::unit_inverse(r0.lead());
  return {inv * r0, inv * s0, inv * t0};
}

/// gcd of the coefficients over a gcd domain, normalized.
template <class R>
R content(const Poly<R>& a) {
  using T = RingTraits<R>;
  if (a.is_zero()) return a.zero_coeff();
  R g = a.lead();
  for (std::size_t i = a.coeffs().size(); i-- > 0;) {
    g = T::gcd(g, a[i]);
    if (auto u = T::unit_inverse(g)) return T::from_int(g, 1);
  }
  return T::exact_div(g, T::normal_unit(g));
}

/// Primitive part with normalized leading coefficient.
template <class R>
Poly<R> primitive_part(const Poly<R>& a) {
  using T = RingTraits<R>;
  if (a.is_zero()) return a;
  R c = content(a);
  c = c * T::normal_unit(a.lead());
  std::vector<R> out;
  out.reserve(a.coeffs().size());
  for (const auto& x : a.coeffs()) out.push_back(T::exact_div(x, c));
  return Poly<R>(std::move(out), a.zero_coeff());
}

/// Subresultant gcd over a gcd domain; result is primitive times gcd of contents.
template <class R>
Poly<R> gcd_subresultant(Poly<R> a, Poly<R> b) {
  using T = RingTraits<R>;
  if (a.degree() < b.degree()) std::swap(a, b);
  if (b.is_zero()) {
    if (a.is_zero()) return a;
    return T::normal_unit(a.lead()) * a;
  }
  R ca = content(a), cb = content(b);
  R d = T::gcd(ca, cb);
  a = primitive_part(a);
  b = primitive_part(b);
  R one = T::from_int(a.zero_coeff(), 1);
  R g = one, h = one;
  while (true) {
    int delta = a.degree() - b.degree();
    Poly<R> r = prem(a, b);
    if (r.is_zero()) break;
    if (r.degree() == 0) {
      b = Poly<R>::constant(one);
      break;
    }
    a = std::move(b);
    R hd = one;
    for (int i = 0; i < delta; ++i) hd = hd * h;
    R div = g * hd;
    std::vector<R> rc;
    rc.reserve(r.coeffs().size());
    for (const auto& x : r.coeffs()) rc.push_back(T::exact_div(x, div));
    b = Poly<R>(std::move(rc), a.zero_coeff());
    g = a.lead();
    // h <- g^delta / h^(delta - 1)
    R gd = one;
    for (int i = 0; i < delta; ++i) gd = gd * g;
    R hd1 = one;
    for (int i = 0; i + 1 < delta; ++i) hd1 = hd1 * h;
    h = delta == 0 ? h : T::exact_div(gd, hd1);
  }
  return d * primitive_part(b);
}

/// Resultant by the subresultant algorithm (valid over any integral domain).
template <class R>
R resultant(Poly<R> a, Poly<R> b) {
  using T = RingTraits<R>;
  const R z = a.zero_coeff();
  if (a.is_zero() || b.is_zero()) return z;
  R one = T::from_int(z, 1);
  R sign = one;
  if (a.degree() < b.degree()) {
    std::swap(a, b);
    if (a.degree() % 2 == 1 && b.degree() % 2 == 1) sign = -sign;
  }
  if (b.degree() == 0) {
    R r = one;
    for (int i = 0; i < a.degree(); ++i) r = r * b.lead();
    return sign * r;
  }
  R g = one, h = one;
  while (true) {
    int delta = a.degree() - b.degree();
    if (a.degree() % 2 == 1 && b.degree() % 2 == 1) sign = -sign;
    Poly<R> r = prem(a, b);
    a = std::move(b);
    if (r.is_zero()) return z;
    R hd = one;
    for (int i = 0; i < delta; ++i) hd = hd * h;
    R div = g * hd;
    std::vector<R> rc;
    for (const auto& x : r.coeffs()) rc.push_back(T::exact_div(x, div));
    b = Poly<R>(std::move(rc), z);
    g = a.lead();
    R gd = one;
    for (int i = 0; i < delta; ++i) gd = gd * g;
    R hd1 = one;
    for (int i = 0; i + 1 < delta; ++i) hd1 = hd1 * h;
    h = delta == 0 ? h : T::exact_div(gd, hd1);
    if (b.degree() == 0) break;
  }
  // h <- h^(1 - deg a) * lead(b)^(deg a)
  int da = a.degree();
  R lb = one;
  for (int i = 0; i < da; ++i) lb = lb * b.lead();
  R hp = one;
  for (int i = 0; i + 1 < da; ++i) hp = hp * h;
  R res = da == 0 ? one : T::exact_div(lb, hp);
  return sign * res;
}

// ---------------------------------------------------------------------------
// Z[x] gcd: heuristic gcd with subresultant fallback.

namespace detail {

inline Integer max_norm(const Poly<Integer>& a) {
  Integer m = 0;
  for (const auto& c : a.coeffs()) {
    Integer ab = abs(c);
    if (ab > m) m = ab;
  }
  return m;
}

inline Poly<Integer> interpolate_symmetric(Integer h, const Integer& xi) {
  std::vector<Integer> out;
  Integer half = xi / 2;
  while (sgn(h) != 0) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), h.get_mpz_t(), xi.get_mpz_t());
    if (r > half) r -= xi;
    out.push_back(r);
    h -= r;
    mpz_divexact(h.get_mpz_t(), h.get_mpz_t(), xi.get_mpz_t());
  }
  return Poly<Integer>(std::move(out), Integer(0));
}

inline Integer eval_at(const Poly<Integer>& a, const Integer& x) {
  Integer acc = 0;
  for (std::size_t i = a.coeffs().size(); i-- > 0;) {
    acc *= x;
    acc += a[i];
  }
  return acc;
}

}  // namespace detail

inline Poly<Integer> gcd_integer_poly(const Poly<Integer>& a0, const Poly<Integer>& b0) {
  using T = RingTraits<Integer>;
  if (a0.is_zero() && b0.is_zero()) return a0;
  if (a0.is_zero()) return primitive_part(b0) * content(b0);
  if (b0.is_zero()) return primitive_part(a0) * content(a0);
  Integer c = T::gcd(content(a0), content(b0));
  Poly<Integer> a = primitive_part(a0), b = primitive_part(b0);
  if (a.degree() == 0 || b.degree() == 0) return Poly<Integer>::constant(c);
  Integer xi = 2 * std::min(detail::max_norm(a), detail::max_norm(b)) + 29;
  for (int attempt = 0; attempt < 6; ++attempt) {
    Integer h = T::gcd(detail::eval_at(a, xi), detail::eval_at(b, xi));
    if (sgn(h) != 0) {
      Poly<Integer> g = detail::interpolate_symmetric(h, xi);
      if (!g.is_zero()) {
        g = primitive_part(g);
        if (try_exact_quotient(a, g) && try_exact_quotient(b, g)) return c * g;
      }
    }
    xi = xi * 73794 / 27011 + 1;
  }
  return gcd_subresultant(a0, b0);
}

template <class R>
Poly<R> RingTraits<Poly<R>>::gcd(const Poly<R>& a, const Poly<R>& b) {
  if constexpr (std::is_same_v<R, Integer>) {
    return gcd_integer_poly(a, b);
  } else if constexpr (RingTraits<R>::is_field) {
    if (a.is_zero() && b.is_zero()) return a;
    return gcd_field(a, b);
  } else {
    return gcd_subresultant(a, b);
  }
}

template <class R>
Poly<R> RingTraits<Poly<R>>::normal_unit(const Poly<R>& a) {
  if constexpr (RingTraits<R>::is_field) {
    if (a.is_zero()) return from_int(a, 1);
    return Poly<R>::constant(*RingTraits<R>::unit_inverse(a.lead()));
  } else {
    return Poly<R>::constant(RingTraits<R>::normal_unit(a.lead()));
  }
}

// ---------------------------------------------------------------------------
// Conversions and evaluation

/// Applies `fn` to every coefficient; the result is re-canonicalized.
template <class S, class R, class Fn>
Poly<S> map_coeffs(const Poly<R>& a, const S& zero, Fn&& fn) {
  std::vector<S> out;
  out.reserve(a.coeffs().size());
  for (const auto& c : a.coeffs()) out.push_back(fn(c));
  return Poly<S>(std::move(out), zero);
}

/// Evaluates a polynomial at a point of a (possibly different) ring, given
/// a coefficient embedding.
template <class S, class R, class Fn>
S evaluate_as(const Poly<R>& a, const S& x, const S& zero, Fn&& embed) {
  S acc = zero;
  for (std::size_t i = a.coeffs().size(); i-- > 0;) acc = acc * x + embed(a[i]);
  return acc;
}

/// Swaps the roles of the two variables of a bivariate polynomial.
template <class R>
Poly<Poly<R>> swap_variables(const Poly<Poly<R>>& a, const R& zero) {
  std::size_t inner = 0;
  for (const auto& c : a.coeffs()) inner = std::max(inner, c.coeffs().size());
  std::vector<Poly<R>> out(inner, Poly<R>(zero));
  for (std::size_t i = 0; i < a.coeffs().size(); ++i)
    for (std::size_t j = 0; j < a[i].coeffs().size(); ++j) out[j].set(i, a[i][j]);
  return Poly<Poly<R>>(std::move(out), Poly<R>(zero));
}

/// Partial derivative of a bivariate polynomial in its inner variable.
template <class R>
Poly<Poly<R>> derivative_inner(const Poly<Poly<R>>& a) {
  std::vector<Poly<R>> out;
  for (const auto& c : a.coeffs()) out.push_back(c.derivative());
  return Poly<Poly<R>>(std::move(out), a.zero_coeff());
}

/// Specializes the inner variable of a bivariate polynomial.
template <class R>
Poly<R> specialize_inner(const Poly<Poly<R>>& a, const R& value) {
  std::vector<R> out;
  const R z = RingTraits<R>::zero_like(value);
  for (const auto& c : a.coeffs()) out.push_back(c.eval(value));
  return Poly<R>(std::move(out), z);
}

// Convenience aliases
using ZPoly = Poly<Integer>;          // Z[lambda] or Z[x]
using QPoly = Poly<Rational>;
using FPoly = Poly<FieldElement>;
using BiZPoly = Poly<ZPoly>;          // Z[lambda][x]
using BiFPoly = Poly<FPoly>;          // F[lambda][x]

inline ZPoly zpoly(std::initializer_list<long> c) {
  std::vector<Integer> v;
  for (long x : c) v.emplace_back(x);
  return ZPoly(std::move(v), Integer(0));
}

inline QPoly qpoly(std::initializer_list<Rational> c) { return QPoly(std::vector<Rational>(c), Rational(0)); }

inline FPoly fpoly(const Field& f, std::initializer_list<long long> c) {
  std::vector<FieldElement> v;
  for (long long x : c) v.push_back(f.from_int(x));
  return FPoly(std::move(v), f.zero());
}

/// Bivariate polynomial from rows: rows[i] is the lambda-polynomial
/// coefficient of x^i.
inline BiZPoly bizpoly(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<ZPoly> v;
  for (auto r : rows) v.push_back(zpoly(r));
  return BiZPoly(std::move(v), ZPoly(Integer(0)));
}

}  // namespace lattes
