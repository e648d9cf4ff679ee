#pragma once
// Deciding whether z in P^1(Q) is the x-coordinate of a torsion point of the
// Legendre curve over Q, by reduction at several primes followed by an exact
// division-polynomial check.
//
// Reduction at a good prime p is injective on torsion of order prime to p, so
// a point of exact order m reduces to a point of order m_p with m / m_p a
// power of p. With two or more primes this pins m down to lcm(m_p) or rules
// every m out.

#include "lattes/legendre.hpp"
#include "lattes/parallel.hpp"
#include "lattes/torsion_pvi.hpp"

#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace lattes {

inline constexpr long kDefaultTorsionBound = 64;
inline constexpr int kDetectPrimes = 5;

struct TorsionQuery {
  Rational lambda;
  std::optional<Rational> z;  // nullopt is the point at infinity
  long bound = kDefaultTorsionBound;
};

enum class Verdict { torsion, non_torsion, inconclusive };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::torsion:
      return "torsion";
    case Verdict::non_torsion:
      return "non_torsion";
    default:
      return "inconclusive";
  }
}

struct TorsionCertificate {
  Verdict verdict = Verdict::inconclusive;
  long order = 0;       // torsion only
  std::string witness;  // torsion only, e.g. "psi_3(z;lambda)=0"
  std::vector<std::uint64_t> primes;
  std::vector<std::uint64_t> local_orders;  // parallel to primes
  long bound = kDefaultTorsionBound;
  std::string reason;
};

namespace detail {

inline void check_lambda(const Rational& lambda) {
  if (lambda == 0 || lambda == 1) throw DomainError("lambda must avoid 0 and 1");
}

inline bool divides(std::uint64_t p, const Integer& n) {
  return n != 0 && mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(p)) != 0;
}

inline bool is_power_of(std::uint64_t n, std::uint64_t p) {
  while (n % p == 0) n /= p;
  return n == 1;
}

}  // namespace detail

/// Good reduction for the query at p: p odd, the curve reduces to a Legendre
/// curve, z reduces to an affine point off the branch locus.
inline bool is_good_prime(const Rational& lambda, const std::optional<Rational>& z, std::uint64_t p) {
  if (p < 3 || !is_prime(p)) return false;
  const Rational l1 = lambda - 1;
  for (const Integer& n : {lambda.get_num(), lambda.get_den(), l1.get_num()})
    if (detail::divides(p, n)) return false;
  if (z) {
    Rational fz = *z * (*z - 1) * (*z - lambda);
    if (detail::divides(p, z->get_den()) || fz == 0 || detail::divides(p, fz.get_num())) return false;
  }
  return true;
}

inline std::vector<std::uint64_t> good_primes(const Rational& lambda, const std::optional<Rational>& z, int count) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 3; static_cast<int>(out.size()) < count; p += 2)
    if (is_good_prime(lambda, z, p)) out.push_back(p);
  return out;
}

/// Order of the reduction of either lift of z in C(F_{p^2}).
inline std::uint64_t local_order(const Rational& lambda, const std::optional<Rational>& z, std::uint64_t p) {
  detail::check_lambda(lambda);
  if (p < 3 || !is_prime(p)) throw DomainError("bad prime " + std::to_string(p) + ": need an odd prime");
  Field fp = make_field(p, 1);
  if (detail::divides(p, lambda.get_den()) || detail::divides(p, lambda.get_num()) ||
      detail::divides(p, Rational(lambda - 1).get_num()))
    throw DomainError("bad prime " + std::to_string(p) + ": the curve has bad reduction");
  if (!z) return 1;
  if (detail::divides(p, z->get_den())) throw DomainError("bad prime " + std::to_string(p) + ": z reduces to infinity");
  LegendreCurve<FieldElement> c(reduce(lambda, fp));
  return x_order(c, ProjPoint<FieldElement>::finite(reduce(*z, fp)));
}

/// psi_m(z; lambda) over Q, up to the factor y for even m.
inline Rational division_value_q(long m, const Rational& z, const Rational& lambda) {
  LegendreCurve<Rational> c(lambda);
  return division_value(m, z, c);
}

inline TorsionCertificate detect(const TorsionQuery& q) {
  detail::check_lambda(q.lambda);
  TorsionCertificate out;
  out.bound = q.bound;
  if (!q.z) {
    out.verdict = Verdict::torsion;
    out.order = 1;
    out.witness = "z=infinity";
    return out;
  }
  const Rational& z = *q.z;
  if (z == 0 || z == 1 || z == q.lambda) {
    out.verdict = Verdict::torsion;
    out.order = 2;
    out.witness = "z is a branch point";
    return out;
  }

  auto primes = good_primes(q.lambda, q.z, kDetectPrimes);
  std::vector<std::uint64_t> orders(primes.size());
  parallel_for(primes.size(), [&](std::size_t i) { orders[i] = local_order(q.lambda, q.z, primes[i]); });

  // consume primes in order until the local data decides
  std::uint64_t l = 1;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    out.primes.push_back(primes[i]);
    out.local_orders.push_back(orders[i]);
    l = std::lcm(l, orders[i]);
    bool consistent = true;
    for (std::size_t j = 0; j <= i; ++j) consistent = consistent && detail::is_power_of(l / orders[j], primes[j]);
    if (!consistent) {
      out.verdict = Verdict::non_torsion;
      out.reason = "local orders admit no common global order";
      return out;
    }
    if (i == 0) continue;
    // with two or more primes lcm is the only possible order
    if (l > static_cast<std::uint64_t>(q.bound)) {
      out.verdict = Verdict::inconclusive;
      out.reason = "the only possible order " + std::to_string(l) + " exceeds the bound";
      return out;
    }
    long m = static_cast<long>(l);
    if (division_value_q(m, z, q.lambda) == 0) {
      out.verdict = Verdict::torsion;
      out.order = m;
      out.witness = "psi_" + std::to_string(m) + "(z;lambda)=0";
      return out;
    }
    out.verdict = Verdict::non_torsion;
    out.reason = "psi_" + std::to_string(m) + "(z;lambda) != 0 for the only possible order " + std::to_string(m);
    return out;
  }
  out.verdict = Verdict::inconclusive;
  out.reason = "fewer than two good primes";
  return out;
}

// ---------------------------------------------------------------------------
// Manufactured torsion samples

struct TorsionSample {
  long m = 0;
  Rational lambda;
  Rational z;
};

/// Rational pairs (z, lambda) on the locus: the rational roots lambda of
/// Psi_m(z, .) outside {0, 1, z}.
inline std::vector<TorsionSample> torsion_samples_at(const TorsionLocus& locus, const Rational& z) {
  BiZPoly swapped = swap_variables(locus.psi, Integer(0));  // outer lambda, inner x
  std::vector<Rational> vals;
  for (const auto& row : swapped.coeffs()) {
    Rational acc = 0;
    for (std::size_t j = row.coeffs().size(); j-- > 0;) acc = acc * z + Rational(row.coeffs()[j]);
    vals.push_back(acc);
  }
  Integer den = 1;
  for (const auto& v : vals) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den().get_mpz_t());
  std::vector<Integer> coeffs;
  for (const auto& v : vals) coeffs.push_back(Integer(v * den));
  ZPoly g(std::move(coeffs), Integer(0));
  std::vector<TorsionSample> out;
  if (g.is_zero()) return out;
  for (const auto& l : rational_roots(g))
    if (l != 0 && l != 1 && l != z) out.push_back({locus.m, l, z});
  return out;
}

/// Up to `count` distinct samples with m in [3, max_m]. The seeds are
/// z = 1/(1 - r^2) for small rational r, which makes z(z - 1) a square, taken
/// in a seeded random order.
inline std::vector<TorsionSample> manufacture_torsion_samples(int count, long max_m, std::uint64_t seed = 1) {
  std::vector<TorsionLocus> loci;
  for (long m = 3; m <= max_m; ++m) loci.push_back(torsion_locus(m));
  std::vector<std::pair<std::size_t, Rational>> seeds;
  for (std::size_t i = 0; i < loci.size(); ++i)
    for (long b = 1; b <= 9; ++b)
      for (long a = 1; a <= 9; ++a) {
        Rational r(a, b);
        r.canonicalize();
        if (r.get_den() != b || r == 1) continue;
        seeds.emplace_back(i, 1 / (1 - r * r));
      }
  std::mt19937_64 rng(seed);
  std::shuffle(seeds.begin(), seeds.end(), rng);
  std::vector<TorsionSample> out;
  for (const auto& [i, z] : seeds) {
    if (static_cast<int>(out.size()) >= count) break;
    for (auto& s : torsion_samples_at(loci[i], z)) {
      bool dup = false;
      for (const auto& t : out) dup = dup || (t.lambda == s.lambda && t.z == s.z);
      if (!dup && static_cast<int>(out.size()) < count) out.push_back(std::move(s));
    }
  }
  return out;
}

}  // namespace lattes
