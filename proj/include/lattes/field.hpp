#pragma once
// Finite fields F_p and F_{p^k} for small p^k.
//
// An element is stored as the base-p integer sum c_i p^i of its coefficient
// vector (c_0, ..., c_{k-1}) in the polynomial basis of F_p[x]/(modulus).
// Comparing these indices is the lexicographic order on coefficient vectors
// read from the highest power down; every "least element" choice in the
// library (modulus selection, square roots, embeddings) uses this order.

#include "lattes/arith.hpp"

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace lattes {

inline constexpr std::uint64_t kDefaultFieldBound = std::uint64_t{1} << 40;

namespace detail {

// Log/antilog tables are built for extension fields up to this size.
inline constexpr std::uint64_t kLogTableLimit = std::uint64_t{1} << 23;
inline constexpr std::uint64_t kFastTableLimit = std::uint64_t{1} << 16;  // larger tables miss the cache
inline constexpr unsigned kSmallDegree = 8;

struct FieldData : std::enable_shared_from_this<FieldData> {
  std::uint64_t p = 0;
  unsigned k = 0;
  std::uint64_t q = 0;
  std::vector<std::uint64_t> modulus;  // monic, length k + 1; empty when k == 1
  std::vector<std::uint32_t> exp_table;
  std::vector<std::uint32_t> log_table;
  std::uint64_t nonresidue = 0;  // least non-square, for Tonelli-Shanks
  std::uint64_t magic = 0;       // 2^64 / p rounded up, for dividing 32-bit values by p

  void set_magic() { magic = p < (std::uint64_t{1} << 32) ? ~std::uint64_t{0} / p + 1 : 0; }

  // (v / p, v % p); the reciprocal trick is exact for v < 2^32
  std::pair<std::uint64_t, std::uint64_t> divmod(std::uint64_t v) const {
    if (magic != 0 && v < (std::uint64_t{1} << 32)) {
      std::uint64_t d = static_cast<std::uint64_t>((static_cast<unsigned __int128>(magic) * v) >> 64);
      return {d, v - d * p};
    }
    return {v / p, v % p};
  }

  bool same_as(const FieldData& o) const { return p == o.p && k == o.k && modulus == o.modulus; }
};

// Dense arithmetic on coefficient vectors over F_p, used for the field itself
// before any Poly<> machinery is available.
using Digits = std::vector<std::uint64_t>;

inline void trim(Digits& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Digits mul_mod_poly(const Digits& a, const Digits& b, const Digits& m, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Digits prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] = (prod[i + j] + mulmod(a[i], b[j], p)) % p;
  std::size_t n = m.size() - 1;
  std::uint64_t inv_lead = powmod(m.back(), p - 2, p);
  for (std::size_t i = prod.size(); i-- > n;) {
    std::uint64_t c = mulmod(prod[i], inv_lead, p);
    if (c == 0) continue;
    for (std::size_t j = 0; j <= n; ++j) prod[i - n + j] = (prod[i - n + j] + p - mulmod(c, m[j], p)) % p;
  }
  prod.resize(std::min(prod.size(), n));
  trim(prod);
  return prod;
}

inline Digits rem_poly(Digits a, const Digits& b, std::uint64_t p) {
  trim(a);
  std::size_t n = b.size() - 1;
  std::uint64_t inv_lead = powmod(b.back(), p - 2, p);
  while (a.size() > n) {
    std::uint64_t c = mulmod(a.back(), inv_lead, p);
    std::size_t shift = a.size() - 1 - n;
    for (std::size_t j = 0; j <= n; ++j) a[shift + j] = (a[shift + j] + p - mulmod(c, b[j], p)) % p;
    trim(a);
  }
  return a;
}

inline Digits gcd_poly(Digits a, Digits b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Digits r = rem_poly(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// x^(p^j) mod m, for j = 0..upto.
inline std::vector<Digits> frobenius_powers_of_x(const Digits& m, std::uint64_t p, unsigned upto) {
  std::vector<Digits> out;
  Digits cur = rem_poly(Digits{0, 1}, m, p);
  out.push_back(cur);
  for (unsigned j = 1; j <= upto; ++j) {
    Digits acc{1};
    Digits base = cur;
    std::uint64_t e = p;
    while (e) {
      if (e & 1) acc = mul_mod_poly(acc, base, m, p);
      base = mul_mod_poly(base, base, m, p);
      e >>= 1;
    }
    cur = acc;
    out.push_back(cur);
  }
  return out;
}

// Rabin's test: m of degree k is irreducible iff x^(p^k) = x mod m and
// gcd(x^(p^(k/r)) - x, m) = 1 for every prime r | k.
inline bool is_irreducible(const Digits& m, std::uint64_t p) {
  unsigned k = static_cast<unsigned>(m.size() - 1);
  if (k == 1) return true;
  auto pw = frobenius_powers_of_x(m, p, k);
  Digits x = rem_poly(Digits{0, 1}, m, p);
  if (pw[k] != x) return false;
  for (auto [r, e] : factorize(k)) {
    (void)e;
    Digits h = pw[k / r];
    h.resize(std::max<std::size_t>(h.size(), 2), 0);
    h[1] = (h[1] + p - 1) % p;
    trim(h);
    Digits g = gcd_poly(m, h, p);
    if (g.size() != 1) return false;
  }
  return true;
}

}  // namespace detail

class FieldElement;

/// Handle to an immutable finite field. Elements keep a raw pointer to the
/// field data, so a Field must outlive the elements created from it.
class Field {
 public:
  Field() = default;

  std::uint64_t characteristic() const { return d_->p; }
  unsigned degree() const { return d_->k; }
  std::uint64_t order() const { return d_->q; }
  /// Monic modulus coefficients, constant term first; {0, 1} for prime fields.
  std::vector<std::uint64_t> modulus() const {
    if (d_->k == 1) return {0, 1};
    return d_->modulus;
  }
  const detail::FieldData* data() const { return d_.get(); }
  bool valid() const { return d_ != nullptr; }
  /// The field an element belongs to (the field must still be alive).
  static Field of(const FieldElement& a);

  FieldElement zero() const;
  FieldElement one() const;
  FieldElement from_int(long long v) const;
  FieldElement from_integer(const Integer& v) const;
  FieldElement from_index(std::uint64_t index) const;
  FieldElement from_coeffs(std::span<const std::uint64_t> coeffs) const;
  /// Class of x in F_p[x]/(modulus); prime fields return their least
  /// primitive root.
  FieldElement generator() const;
  /// Least element of multiplicative order q - 1.
  FieldElement primitive_element() const;

  friend bool operator==(const Field& a, const Field& b) {
    return a.d_ == b.d_ || (a.d_ && b.d_ && a.d_->same_as(*b.d_));
  }

 private:
  friend Field make_field(std::uint64_t p, unsigned k, std::uint64_t bound);
  explicit Field(std::shared_ptr<const detail::FieldData> d) : d_(std::move(d)) {}
  std::shared_ptr<const detail::FieldData> d_;
};

class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(const detail::FieldData* f, std::uint64_t index) : f_(f), v_(index) {}

  std::uint64_t index() const { return v_; }
  const detail::FieldData* field_data() const { return f_; }
  std::uint64_t characteristic() const { return f_->p; }
  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }

  /// Coefficient vector of length k, constant term first.
  std::vector<std::uint64_t> coeffs() const {
    std::vector<std::uint64_t> out(f_->k, 0);
    std::uint64_t v = v_;
    for (unsigned i = 0; i < f_->k; ++i) {
      out[i] = v % f_->p;
      v /= f_->p;
    }
    return out;
  }

  FieldElement operator-() const {
    if (f_->k == 1) return {f_, v_ == 0 ? 0 : f_->p - v_};
    std::uint64_t v = v_, out = 0, scale = 1;
    for (unsigned i = 0; i < f_->k; ++i) {
      auto [rest, c] = f_->divmod(v);
      v = rest;
      out += (c == 0 ? 0 : f_->p - c) * scale;
      scale *= f_->p;
    }
    return {f_, out};
  }

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    check_same(a, b);
    const auto* f = a.f_;
    if (f->k == 1) {
      std::uint64_t s = a.v_ + b.v_;
      return {f, s >= f->p ? s - f->p : s};
    }
    std::uint64_t x = a.v_, y = b.v_, out = 0, scale = 1;
    for (unsigned i = 0; i < f->k && (x | y); ++i) {
      auto [xr, xc] = f->divmod(x);
      auto [yr, yc] = f->divmod(y);
      std::uint64_t c = xc + yc;
      if (c >= f->p) c -= f->p;
      x = xr;
      y = yr;
      out += c * scale;
      scale *= f->p;
    }
    return {f, out};
  }

  friend FieldElement operator-(const FieldElement& a, const FieldElement& b) { return a + (-b); }

  friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    check_same(a, b);
    const auto* f = a.f_;
    if (f->k == 1) return {f, mulmod(a.v_, b.v_, f->p)};
    if (a.v_ == 0 || b.v_ == 0) return {f, 0};
    if (!f->log_table.empty() && f->q <= detail::kFastTableLimit) {
      std::uint64_t e = std::uint64_t{f->log_table[a.v_]} + f->log_table[b.v_];
      if (e >= f->q - 1) e -= f->q - 1;
      return {f, f->exp_table[e]};
    }
    return slow_mul(a, b);
  }

  friend FieldElement operator/(const FieldElement& a, const FieldElement& b) { return a * b.inverse(); }

  FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
  FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
  FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }
  FieldElement& operator/=(const FieldElement& o) { return *this = *this / o; }

  friend bool operator==(const FieldElement& a, const FieldElement& b) { return a.v_ == b.v_; }
  friend bool operator<(const FieldElement& a, const FieldElement& b) { return a.v_ < b.v_; }

  FieldElement inverse() const {
    if (v_ == 0) throw DomainError("inverse of zero field element");
    if (f_->k == 1) {
      // extended Euclid on (v, p)
      __int128 r0 = static_cast<__int128>(f_->p), r1 = v_, s0 = 0, s1 = 1;
      while (r1 != 0) {
        __int128 qt = r0 / r1;
        __int128 t = r0 - qt * r1;
        r0 = r1;
        r1 = t;
        t = s0 - qt * s1;
        s0 = s1;
        s1 = t;
      }
      __int128 inv = s0 % static_cast<__int128>(f_->p);
      if (inv < 0) inv += f_->p;
      return {f_, static_cast<std::uint64_t>(inv)};
    }
    if (!f_->log_table.empty()) {
      std::uint64_t l = f_->log_table[v_];  // a single lookup is still cheaper than pow
      return {f_, f_->exp_table[l == 0 ? 0 : f_->q - 1 - l]};
    }
    return pow(f_->q - 2);
  }

  FieldElement pow(std::uint64_t e) const {
    FieldElement r{f_, 1}, b = *this;
    while (e) {
      if (e & 1) r *= b;
      b *= b;
      e >>= 1;
    }
    return r;
  }

  FieldElement pow(const Integer& e) const {
    if (e < 0) return inverse().pow(Integer(-e));
    FieldElement r{f_, 1};
    for (std::size_t bit = mpz_sizeinbase(e.get_mpz_t(), 2); bit-- > 0;) {
      r *= r;
      if (mpz_tstbit(e.get_mpz_t(), bit)) r *= *this;
    }
    return r;
  }

  bool is_square() const {
    if (v_ == 0 || f_->p == 2) return true;
    if (!f_->log_table.empty()) return f_->log_table[v_] % 2 == 0;
    return pow((f_->q - 1) / 2).is_one();
  }

  /// Square root with the lesser index, or nullopt for non-squares.
  std::optional<FieldElement> sqrt() const {
    if (v_ == 0) return *this;
    if (f_->p == 2) return pow(f_->q / 2);
    if (!is_square()) return std::nullopt;
    // Tonelli-Shanks in F_q^*
    std::uint64_t t = f_->q - 1;
    unsigned s = 0;
    while (t % 2 == 0) {
      t /= 2;
      ++s;
    }
    FieldElement z = FieldElement{f_, f_->nonresidue}.pow(t);
    FieldElement x = pow((t + 1) / 2);
    FieldElement b = pow(t);
    unsigned m = s;
    while (!b.is_one()) {
      unsigned i = 0;
      FieldElement b2 = b;
      while (!b2.is_one()) {
        b2 *= b2;
        ++i;
      }
      FieldElement w = z;
      for (unsigned j = 0; j + 1 < m - i; ++j) w *= w;
      x *= w;
      z = w * w;
      b *= z;
      m = i;
    }
    FieldElement other = -x;
    return other < x ? other : x;
  }

  /// a -> a^(p^n); n is taken modulo the degree, negative n allowed.
  FieldElement frobenius(long long n) const {
    long long k = f_->k;
    long long r = ((n % k) + k) % k;
    FieldElement out = *this;
    for (long long i = 0; i < r; ++i) out = out.pow(f_->p);
    return out;
  }

  std::string to_string() const {
    if (f_->k == 1) return std::to_string(v_);
    std::string s = "[";
    auto c = coeffs();
    for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
    return s + "]";
  }

 private:
  static void check_same(const FieldElement& a, const FieldElement& b) {
    if (a.f_ != b.f_ && !(a.f_ && b.f_ && a.f_->same_as(*b.f_)))
      throw DomainError("field element arithmetic across different fields");
  }

  static FieldElement slow_mul(const FieldElement& a, const FieldElement& b) {
    const auto* f = a.f_;
    if (f->k <= detail::kSmallDegree && f->p < (std::uint64_t{1} << 16)) return small_mul(a, b);
    detail::Digits da = a.coeffs(), db = b.coeffs();
    detail::trim(da);
    detail::trim(db);
    detail::Digits prod = detail::mul_mod_poly(da, db, f->modulus, f->p);
    std::uint64_t out = 0;
    for (std::size_t i = prod.size(); i-- > 0;) out = out * f->p + prod[i];
    return {f, out};
  }

  // Schoolbook product on stack digit arrays; p < 2^16 keeps every partial sum
  // of 2k - 1 products below 2^64.
  static FieldElement small_mul(const FieldElement& a, const FieldElement& b) {
    const auto* f = a.f_;
    const unsigned k = f->k;
    const std::uint64_t p = f->p;
    std::uint64_t da[detail::kSmallDegree], db[detail::kSmallDegree], prod[2 * detail::kSmallDegree] = {};
    std::uint64_t x = a.v_, y = b.v_;
    for (unsigned i = 0; i < k; ++i) {
      auto [xr, xc] = f->divmod(x);
      auto [yr, yc] = f->divmod(y);
      da[i] = xc;
      db[i] = yc;
      x = xr;
      y = yr;
    }
    for (unsigned i = 0; i < k; ++i)
      if (da[i] != 0)
        for (unsigned j = 0; j < k; ++j) prod[i + j] += da[i] * db[j];
    // x^k = -(m_0 + ... + m_{k-1} x^{k-1})
    for (unsigned d = 2 * k - 1; d-- > k;) {
      std::uint64_t c = f->divmod(prod[d]).second;
      if (c == 0) continue;
      std::uint64_t neg = p - c;
      for (unsigned i = 0; i < k; ++i) prod[d - k + i] += neg * f->modulus[i];
    }
    std::uint64_t out = 0;
    for (unsigned i = k; i-- > 0;) out = out * p + f->divmod(prod[i]).second;
    return {f, out};
  }

  friend Field make_field(std::uint64_t p, unsigned k, std::uint64_t bound);

  const detail::FieldData* f_ = nullptr;
  std::uint64_t v_ = 0;
};

inline Field Field::of(const FieldElement& a) {
  if (!a.field_data()) throw DomainError("element has no field");
  return Field(a.field_data()->shared_from_this());
}

inline FieldElement Field::zero() const { return {d_.get(), 0}; }
inline FieldElement Field::one() const { return {d_.get(), 1}; }
inline FieldElement Field::from_int(long long v) const {
  long long p = static_cast<long long>(d_->p);
  long long r = ((v % p) + p) % p;
  return {d_.get(), static_cast<std::uint64_t>(r)};
}
inline FieldElement Field::from_integer(const Integer& v) const { return {d_.get(), residue(v, d_->p)}; }
inline FieldElement Field::from_index(std::uint64_t index) const {
  if (index >= d_->q) throw DomainError("field element index out of range");
  return {d_.get(), index};
}
inline FieldElement Field::from_coeffs(std::span<const std::uint64_t> coeffs) const {
  if (coeffs.size() > d_->k) throw DomainError("too many coefficients for field element");
  std::uint64_t out = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    if (coeffs[i] >= d_->p) throw DomainError("field element coefficient out of range");
    out = out * d_->p + coeffs[i];
  }
  return {d_.get(), out};
}
inline FieldElement Field::generator() const {
  if (d_->k == 1) return primitive_element();
  return {d_.get(), d_->p};
}

inline FieldElement Field::primitive_element() const {
  if (d_->q == 2) return one();
  auto factors = factorize(d_->q - 1);
  for (std::uint64_t i = 1; i < d_->q; ++i) {
    FieldElement g{d_.get(), i};
    bool ok = true;
    for (auto [r, e] : factors) {
      (void)e;
      if (g.pow((d_->q - 1) / r).is_one()) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw DomainError("no primitive element found");
}

/// Builds F_{p^k} with the least monic irreducible modulus of degree k.
inline Field make_field(std::uint64_t p, unsigned k, std::uint64_t bound = kDefaultFieldBound) {
  if (!is_prime(p)) throw DomainError("field characteristic " + std::to_string(p) + " is not prime");
  if (k == 0) throw DomainError("field degree must be positive");
  std::uint64_t q = checked_pow(p, k, bound);
  if (q == 0) throw DomainError("field size " + std::to_string(p) + "^" + std::to_string(k) + " exceeds bound");

  auto data = std::make_shared<detail::FieldData>();
  data->p = p;
  data->set_magic();
  data->k = k;
  data->q = q;
  if (k > 1) {
    std::uint64_t lower = q;  // p^k candidates for the lower coefficients
    for (std::uint64_t t = 0; t < lower; ++t) {
      detail::Digits m(k + 1, 0);
      std::uint64_t v = t;
      for (unsigned i = 0; i < k; ++i) {
        m[i] = v % p;
        v /= p;
      }
      m[k] = 1;
      if (m[0] == 0) continue;  // divisible by x
      if (detail::is_irreducible(m, p)) {
        data->modulus = m;
        break;
      }
    }
  }
  Field f(data);
  if (k > 1 && q <= detail::kLogTableLimit) {
    FieldElement g = f.primitive_element();
    data->exp_table.assign(q - 1, 0);
    data->log_table.assign(q, 0);
    FieldElement cur = f.one();
    for (std::uint64_t e = 0; e + 1 < q; ++e) {
      data->exp_table[e] = static_cast<std::uint32_t>(cur.index());
      data->log_table[cur.index()] = static_cast<std::uint32_t>(e);
      cur = FieldElement::slow_mul(cur, g);
    }
  }
  if (p != 2) {
    // F_p lies inside the squares of F_{p^k} for even k
    for (std::uint64_t i = (k % 2 == 0 ? p : 2); i < q; ++i) {
      if (!FieldElement{data.get(), i}.is_square()) {
        data->nonresidue = i;
        break;
      }
    }
  }
  return f;
}

/// Field homomorphism F_{p^a} -> F_{p^b} for a | b, sending the generator of
/// the source to the least root of its modulus in the target.
class FieldEmbedding {
 public:
  FieldEmbedding(Field from, Field to) : from_(std::move(from)), to_(std::move(to)) {
    if (from_.characteristic() != to_.characteristic() || to_.degree() % from_.degree() != 0)
      throw DomainError("no embedding between fields of these sizes");
    if (from_.degree() == 1) return;
    auto m = from_.modulus();
    for (std::uint64_t i = 0; i < to_.order(); ++i) {
      FieldElement r = to_.from_index(i);
      FieldElement acc = to_.zero();
      for (std::size_t j = m.size(); j-- > 0;) acc = acc * r + to_.from_int(static_cast<long long>(m[j]));
      if (acc.is_zero()) {
        root_ = r;
        return;
      }
    }
    throw DomainError("modulus has no root in target field");
  }

  FieldElement operator()(const FieldElement& a) const {
    if (from_.degree() == 1) return to_.from_int(static_cast<long long>(a.index()));
    auto c = a.coeffs();
    FieldElement acc = to_.zero();
    for (std::size_t j = c.size(); j-- > 0;) acc = acc * root_ + to_.from_int(static_cast<long long>(c[j]));
    return acc;
  }

  const Field& source() const { return from_; }
  const Field& target() const { return to_; }

 private:
  Field from_, to_;
  FieldElement root_;
};

}  // namespace lattes
