#pragma once
// The moduli space of rank-two parabolic Higgs bundles of type (1/2) at
// infinity on P^1 minus {0, 1, lambda, infinity}, identified with P^1 through
// the zero of the Higgs field, and its self-map.
//
// The self-map is not computed from the Higgs-de Rham flow. It is defined as
// the Lattes map of multiplication by p on the Legendre curve reduced mod p,
// which is the elliptic description of the flow; everything below (orbits,
// censuses, the supersingular identity) is built on that map.

#include "lattes/legendre.hpp"
#include "lattes/parallel.hpp"

#include <map>
#include <numeric>
#include <optional>
#include <unordered_map>
#include <vector>

namespace lattes {

// ---------------------------------------------------------------------------
// Parabolic data and stability

/// Type-(1/2) parabolic data: weight 0 at 0, 1, lambda and weight 1/2 on the
/// whole fiber at infinity, on E = O + O(-1) with theta: O -> O(-1) (x) Omega(log D).
class ParabolicData {
 public:
  static ParabolicData type_half_at_infinity() { return ParabolicData(); }

  /// Only the type-(1/2) weights are representable.
  static ParabolicData from_weights(const std::vector<Rational>& w) {
    if (w != std::vector<Rational>{0, 0, 0, Rational(1, 2)})
      throw DomainError("only the weights (0, 0, 0, 1/2) at (0, 1, lambda, infinity) are supported");
    return ParabolicData();
  }

  const std::vector<Rational>& weights() const { return weights_; }
  std::pair<int, int> degrees() const { return {0, -1}; }

 private:
  ParabolicData() : weights_{0, 0, 0, Rational(1, 2)} {}
  std::vector<Rational> weights_;
};

struct StabilityReport {
  Rational sub_pardeg;    // parabolic degree of the theta-invariant O(-1)
  Rational total_pardeg;  // parabolic degree of E
  Rational slope;         // total_pardeg / rank
  bool stable = false;
};

/// The theta-invariant sub line bundle is O(-1) for every zero z, so the
/// answer does not depend on z.
template <class K>
StabilityReport stability_check(const ProjPoint<K>& /*z*/, const ParabolicData& data = ParabolicData::type_half_at_infinity()) {
  Rational w = data.weights()[3];
  auto [d0, d1] = data.degrees();
  StabilityReport r;
  r.sub_pardeg = Rational(d1) + w;
  r.total_pardeg = Rational(d0 + d1) + 2 * w;
  r.slope = r.total_pardeg / 2;
  r.stable = r.sub_pardeg < r.slope;
  return r;
}

// ---------------------------------------------------------------------------
// The self-map

struct SelfMap {
  std::uint64_t p = 0;
  FieldElement lambda;
  Field field;                    // the field of lambda
  RationalMap<FieldElement> map;  // reduced
  std::uint64_t unreduced_degree = 0;

  ProjPoint<FieldElement> operator()(const ProjPoint<FieldElement>& z) const { return map(z); }
};

inline SelfMap build_selfmap(const FieldElement& lambda, std::uint64_t p) {
  if (p < 3 || !is_prime(p)) throw DomainError("self-map needs an odd prime p");
  if (lambda.characteristic() != p) throw DomainError("lambda must lie in a field of characteristic p");
  LegendreCurve<FieldElement> c(lambda);
  SelfMap s;
  s.p = p;
  s.lambda = lambda;
  s.field = Field::of(lambda);
  s.map = mult_x_map(static_cast<long>(p), c);
  s.unreduced_degree = p * p;
  return s;
}

/// The map with coefficients pushed into a larger field.
inline RationalMap<FieldElement> embed_map(const RationalMap<FieldElement>& m, const FieldEmbedding& e) {
  FieldElement z = e.target().zero();
  auto push = [&](const FPoly& a) { return map_coeffs(a, z, [&](const FieldElement& c) { return e(c); }); };
  return {push(m.num), push(m.den)};
}

// ---------------------------------------------------------------------------
// Orbits

/// P^1(F) enumerated as field indices 0..q-1 followed by infinity at q.
inline std::uint64_t proj_index(const ProjPoint<FieldElement>& z, std::uint64_t q) {
  return z.infinity ? q : z.value.index();
}
inline ProjPoint<FieldElement> proj_point(const Field& f, std::uint64_t i) {
  if (i == f.order()) return ProjPoint<FieldElement>::at_infinity();
  return ProjPoint<FieldElement>::finite(f.from_index(i));
}

struct OrbitReport {
  ProjPoint<FieldElement> z;
  std::uint64_t tail = 0;    // steps before entering the cycle
  std::uint64_t period = 0;  // cycle length reached from z
  std::uint64_t torsion_order = 0;
  bool periodic = false;
  // the remaining fields are meaningful for periodic z
  bool divides_pf_minus_1 = false;
  bool divides_pf_plus_1 = false;
  bool equals_pf_minus_1 = false;
  bool coprime_to_p = false;
};

namespace detail {

inline void fill_torsion_verdicts(OrbitReport& r, std::uint64_t p) {
  r.coprime_to_p = std::gcd(r.torsion_order, p) == 1;
  if (!r.periodic) return;
  Integer pf;
  mpz_ui_pow_ui(pf.get_mpz_t(), p, r.period);
  Integer m(static_cast<unsigned long>(r.torsion_order));
  r.divides_pf_minus_1 = mpz_divisible_p(Integer(pf - 1).get_mpz_t(), m.get_mpz_t()) != 0;
  r.divides_pf_plus_1 = mpz_divisible_p(Integer(pf + 1).get_mpz_t(), m.get_mpz_t()) != 0;
  r.equals_pf_minus_1 = m == pf - 1;
}

struct FunctionalGraph {
  std::vector<std::uint32_t> tail, period;
};

// Tail lengths and cycle lengths of every node of i -> next[i].
inline FunctionalGraph analyse(const std::vector<std::uint32_t>& next) {
  std::size_t n = next.size();
  constexpr std::uint32_t kUnseen = 0xffffffffu;
  FunctionalGraph g{std::vector<std::uint32_t>(n, kUnseen), std::vector<std::uint32_t>(n, 0)};
  std::vector<std::uint32_t> pos(n, kUnseen);
  std::vector<std::uint32_t> path;
  for (std::size_t s = 0; s < n; ++s) {
    if (g.tail[s] != kUnseen) continue;
    path.clear();
    std::uint32_t v = static_cast<std::uint32_t>(s);
    while (g.tail[v] == kUnseen && pos[v] == kUnseen) {
      pos[v] = static_cast<std::uint32_t>(path.size());
      path.push_back(v);
      v = next[v];
    }
    std::size_t end = path.size();
    std::uint32_t base_tail, per;
    if (g.tail[v] == kUnseen) {
      // closed a new cycle at path[pos[v]]
      std::size_t start = pos[v];
      per = static_cast<std::uint32_t>(end - start);
      for (std::size_t i = start; i < end; ++i) {
        g.tail[path[i]] = 0;
        g.period[path[i]] = per;
      }
      end = start;
      base_tail = 0;
    } else {
      base_tail = g.tail[v];
      per = g.period[v];
    }
    for (std::size_t i = end; i-- > 0;) {
      g.tail[path[i]] = base_tail + static_cast<std::uint32_t>(end - i);
      g.period[path[i]] = per;
    }
    for (auto u : path) pos[u] = kUnseen;
  }
  return g;
}

}  // namespace detail

/// Iterates the self-map from z inside P^1(field) until a point repeats.
inline OrbitReport orbit(const ProjPoint<FieldElement>& z, const SelfMap& sm, const Field& field) {
  FieldEmbedding e(sm.field, field);
  RationalMap<FieldElement> m = embed_map(sm.map, e);
  LegendreCurve<FieldElement> c(e(sm.lambda));
  std::unordered_map<std::uint64_t, std::uint64_t> seen;
  std::uint64_t q = field.order();
  ProjPoint<FieldElement> cur = z;
  std::uint64_t step = 0;
  while (true) {
    auto [it, fresh] = seen.emplace(proj_index(cur, q), step);
    if (!fresh) {
      OrbitReport r;
      r.z = z;
      r.tail = it->second;
      r.period = step - it->second;
      r.periodic = r.tail == 0;
      r.torsion_order = x_order(c, z);
      detail::fill_torsion_verdicts(r, sm.p);
      return r;
    }
    cur = m(cur);
    ++step;
  }
}

inline OrbitReport period_torsion_report(const ProjPoint<FieldElement>& z, const SelfMap& sm, const Field& field) {
  return orbit(z, sm, field);
}

// ---------------------------------------------------------------------------
// Census over P^1(F_{p^{2n}})

struct Census {
  std::uint64_t p = 0;
  FieldElement lambda;
  unsigned n = 0;
  std::uint64_t field_order = 0;  // p^{2n}
  bool supersingular = false;
  std::uint64_t periodic = 0;
  std::uint64_t preperiodic = 0;
  std::uint64_t expected = 0;  // p^{2n} + 1
  std::map<std::uint64_t, std::uint64_t> period_histogram;
  // tallies over periodic points
  std::uint64_t div_pf_minus_1 = 0;
  std::uint64_t div_pf_plus_1 = 0;
  std::uint64_t equal_pf_minus_1 = 0;
  std::uint64_t divisibility_violations = 0;  // neither p^f - 1 nor p^f + 1
  std::uint64_t torsion_not_periodic = 0;     // order prime to p but not periodic
  std::vector<OrbitReport> reports;           // filled when requested
};

struct CensusOptions {
  bool keep_reports = false;
  bool torsion = true;  // compute torsion orders and verdicts
  std::uint64_t bound = kDefaultCountBound;
};

/// Runs every point of P^1(F_{p^{2n}}) through the self-map.
inline Census classify_field(const FieldElement& lambda, std::uint64_t p, unsigned n, const CensusOptions& opt = {}) {
  if (n == 0) throw DomainError("census needs n >= 1");
  SelfMap sm = build_selfmap(lambda, p);
  unsigned k = sm.field.degree();
  if ((2 * n) % k != 0) throw DomainError("lambda does not lie in F_{p^{2n}}");
  std::uint64_t q = checked_pow(p, 2 * n, opt.bound);
  if (q == 0) throw DomainError("census field exceeds the size bound");
  Field big = make_field(p, 2 * n);
  FieldEmbedding e(sm.field, big);
  RationalMap<FieldElement> m = embed_map(sm.map, e);
  LegendreCurve<FieldElement> c(e(lambda));

  std::vector<std::uint32_t> next(q + 1);
  parallel_for(q + 1, [&](std::size_t i) { next[i] = static_cast<std::uint32_t>(proj_index(m(proj_point(big, i)), q)); });
  auto g = detail::analyse(next);

  Census out;
  out.p = p;
  out.lambda = lambda;
  out.n = n;
  out.field_order = q;
  out.expected = q + 1;
  out.supersingular = is_supersingular(lambda);
  std::uint64_t group_order = 0;
  if (opt.torsion) {
    LegendreCurve<FieldElement> small(lambda);
    auto ct = count_and_trace(small, opt.bound);
    group_order = count_over_extension(sm.field.order(), ct.trace, 2 * n / k).get_ui();
  }
  std::vector<OrbitReport> reports(q + 1);
  parallel_for(q + 1, [&](std::size_t i) {
    OrbitReport& r = reports[i];
    r.z = proj_point(big, i);
    r.tail = g.tail[i];
    r.period = g.period[i];
    r.periodic = r.tail == 0;
    if (opt.torsion) {
      r.torsion_order = x_order(c, r.z, group_order);
      detail::fill_torsion_verdicts(r, p);
    }
  });
  for (const auto& r : reports) {
    if (r.periodic) {
      ++out.periodic;
      ++out.period_histogram[r.period];
      if (opt.torsion) {
        out.div_pf_minus_1 += r.divides_pf_minus_1;
        out.div_pf_plus_1 += r.divides_pf_plus_1;
        out.equal_pf_minus_1 += r.equals_pf_minus_1;
        out.divisibility_violations += !(r.divides_pf_minus_1 || r.divides_pf_plus_1) || !r.coprime_to_p;
      }
    } else {
      ++out.preperiodic;
      if (opt.torsion && r.coprime_to_p) ++out.torsion_not_periodic;
    }
  }
  if (opt.keep_reports) out.reports = std::move(reports);
  return out;
}

// ---------------------------------------------------------------------------
// The supersingular identity phi(z) = z^{p^2}

struct IdentityCheck {
  bool symbolic = false;
  bool pointwise = false;
  std::uint64_t points_checked = 0;
  std::optional<ProjPoint<FieldElement>> counterexample;  // in F_{p^4}
  bool ok() const { return symbolic && pointwise; }
};

/// Checks that the reduced self-map is x^{p^2} as a rational function and
/// that x([p]P) = x(P)^{p^2} at every point of P^1(F_{p^4}), the latter with
/// the x-only ladder rather than the map itself.
inline IdentityCheck supersingular_identity_check(const FieldElement& lambda, std::uint64_t p) {
  if (!is_supersingular(lambda)) throw DomainError("lambda " + lambda.to_string() + " is not supersingular");
  SelfMap sm = build_selfmap(lambda, p);
  IdentityCheck out;
  FPoly target = FPoly::monomial(sm.field.one(), static_cast<std::size_t>(p * p));
  out.symbolic = sm.map.num == target && sm.map.den == FPoly::constant(sm.field.one());

  Field f4 = make_field(p, 4);
  FieldEmbedding e(sm.field, f4);
  RationalMap<FieldElement> m = embed_map(sm.map, e);
  LegendreCurve<FieldElement> c(e(lambda));
  std::uint64_t q = f4.order();
  std::vector<std::uint8_t> bad(q + 1, 0);
  Integer pp(static_cast<unsigned long>(p));
  parallel_for(q + 1, [&](std::size_t i) {
    ProjPoint<FieldElement> z = proj_point(f4, i);
    ProjPoint<FieldElement> want =
        z.infinity ? z : ProjPoint<FieldElement>::finite(z.value.pow(static_cast<std::uint64_t>(p * p)));
    ProjPoint<FieldElement> ladder = x_multiply(c, pp, z);
    // once the map is known to be x^{p^2} only the ladder needs checking
    bad[i] = !(ladder == want) || (!out.symbolic && !(m(z) == want));
  });
  out.points_checked = q + 1;
  out.pointwise = true;
  for (std::uint64_t i = 0; i <= q; ++i)
    if (bad[i]) {
      out.pointwise = false;
      out.counterexample = proj_point(f4, i);
      break;
    }
  return out;
}

/// Supersingular parameters in F_{p^2} \ {0, 1}, i.e. the roots of H_p there.
inline std::vector<FieldElement> supersingular_lambdas(const Field& fp2) {
  FPoly h = hasse_polynomial(fp2);
  std::vector<FieldElement> out;
  for (std::uint64_t i = 2; i < fp2.order(); ++i) {
    FieldElement l = fp2.from_index(i);
    if (h.eval(l).is_zero()) out.push_back(l);
  }
  return out;
}

}  // namespace lattes
