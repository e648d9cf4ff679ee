#pragma once
// End-to-end verification suite, shared by `lattes verify-all` and the
// acceptance runner. Each check returns one result line.

#include "lattes/moduli.hpp"
#include "lattes/torsion_detect.hpp"
#include "lattes/torsion_pvi.hpp"

#include <chrono>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace lattes {

struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

struct VerifyOptions {
  std::uint64_t pmax = 13;         // supersingular identity
  std::uint64_t census_pmax = 13;
  std::uint64_t hasse_pmax = 50;   // Hasse roots against brute force
  long pvi_max_m = 4;
  std::uint64_t census_bound = 1000000;
  int lattes_trials = 1000;
  int torsion_samples = 100;
  long torsion_max_m = 8;
};

namespace detail {

inline std::vector<std::uint64_t> odd_primes_up_to(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (auto p : primes_up_to(n))
    if (p != 2) out.push_back(p);
  return out;
}

template <class Fn>
CheckResult timed(int id, std::string name, Fn&& fn) {
  auto t0 = std::chrono::steady_clock::now();
  CheckResult r;
  r.id = id;
  r.name = std::move(name);
  try {
    fn(r);
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail += std::string(r.detail.empty() ? "" : "; ") + "exception: " + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

inline std::vector<CurvePoint<FieldElement>> all_points(const LegendreCurve<FieldElement>& c) {
  std::vector<CurvePoint<FieldElement>> out{CurvePoint<FieldElement>::at_infinity()};
  for (const auto& x : field_elements(c.lambda()))
    for (const auto& p : c.lift_x(ProjPoint<FieldElement>::finite(x))) out.push_back(p);
  return out;
}

inline std::vector<std::pair<std::uint64_t, unsigned>> odd_fields(std::uint64_t bound) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (auto p : odd_primes_up_to(bound)) {
    std::uint64_t q = p;
    for (unsigned k = 1; q <= bound; ++k, q *= p) out.emplace_back(p, k);
  }
  return out;
}

}  // namespace detail

/// Reduced [p]-map equals x^{p^2}, symbolically and on P^1(F_{p^4}).
inline CheckResult check_supersingular_identity(std::uint64_t pmax) {
  return detail::timed(1, "supersingular self-map is z^(p^2)", [&](CheckResult& r) {
    std::size_t pairs = 0, failures = 0;
    std::uint64_t points = 0;
    std::string first_bad;
    for (auto p : detail::odd_primes_up_to(pmax)) {
      Field fp2 = make_field(p, 2);
      for (const auto& l : supersingular_lambdas(fp2)) {
        IdentityCheck c = supersingular_identity_check(l, p);
        ++pairs;
        points += c.points_checked;
        if (!c.ok()) {
          ++failures;
          if (first_bad.empty()) first_bad = "p=" + std::to_string(p) + " lambda=" + l.to_string();
        }
      }
    }
    r.passed = failures == 0 && pairs > 0;
    r.detail = "p<=" + std::to_string(pmax) + ": " + std::to_string(pairs) + " supersingular lambdas, " +
               std::to_string(points) + " points";
    if (!first_bad.empty()) r.detail += ", first failure " + first_bad;
  });
}

/// Every point of P^1(F_{p^{2n}}) is periodic for supersingular lambda.
inline CheckResult check_supersingular_census(std::uint64_t pmax, std::uint64_t bound) {
  return detail::timed(2, "supersingular census counts q^(2n)+1 periodic points", [&](CheckResult& r) {
    std::size_t runs = 0, failures = 0;
    std::string first_bad;
    for (auto p : detail::odd_primes_up_to(pmax)) {
      Field fp2 = make_field(p, 2);
      auto lambdas = supersingular_lambdas(fp2);
      for (unsigned n : {1u, 2u}) {
        if (checked_pow(p, 2 * n, bound) == 0) continue;
        for (const auto& l : lambdas) {
          CensusOptions opt;
          opt.torsion = false;
          opt.bound = bound;
          Census c = classify_field(l, p, n, opt);
          ++runs;
          if (c.periodic != c.expected || !c.supersingular) {
            ++failures;
            if (first_bad.empty())
              first_bad = "p=" + std::to_string(p) + " n=" + std::to_string(n) + " lambda=" + l.to_string() + " periodic=" +
                          std::to_string(c.periodic) + " expected=" + std::to_string(c.expected);
          }
        }
      }
    }
    r.passed = failures == 0 && runs > 0;
    r.detail = std::to_string(runs) + " censuses";
    if (!first_bad.empty()) r.detail += ", first failure " + first_bad;
  });
}

/// Periodic points over F_{p^2} of ordinary curves have order dividing
/// p^f - 1 or p^f + 1 and prime to p.
inline CheckResult check_period_torsion(const std::vector<std::uint64_t>& primes = {5, 7, 11}) {
  return detail::timed(3, "period-torsion divisibility on ordinary curves", [&](CheckResult& r) {
    std::uint64_t periodic = 0, violations = 0, equal = 0, curves = 0;
    for (auto p : primes) {
      Field fp2 = make_field(p, 2);
      for (std::uint64_t i = 2; i < fp2.order(); ++i) {
        FieldElement l = fp2.from_index(i);
        if (l.is_one() || is_supersingular(l)) continue;
        Census c = classify_field(l, p, 1);
        ++curves;
        periodic += c.periodic;
        violations += c.divisibility_violations;
        equal += c.equal_pf_minus_1;
      }
    }
    r.passed = violations == 0 && curves > 0;
    r.detail = std::to_string(curves) + " curves, " + std::to_string(periodic) + " periodic points, " +
               std::to_string(violations) + " violations, m = p^f-1 in " + std::to_string(equal);
  });
}

/// Roots of H_p in F_{p^2} against supersingularity by point counting.
inline CheckResult check_hasse_brute_force(std::uint64_t pmax) {
  return detail::timed(4, "Hasse roots equal brute-force supersingular set", [&](CheckResult& r) {
    std::size_t primes = 0, mismatches = 0, total = 0;
    std::string first_bad;
    for (auto p : detail::odd_primes_up_to(pmax)) {
      ++primes;
      Field fp = make_field(p, 1), fp2 = make_field(p, 2);
      FieldEmbedding e(fp, fp2);
      auto hasse = supersingular_lambdas(fp2);
      std::vector<FieldElement> brute;
      for (std::uint64_t i = 2; i < fp2.order(); ++i) {
        FieldElement l = fp2.from_index(i);
        if (l.is_one()) continue;
        // over the smallest field containing lambda
        long long trace;
        if (l.frobenius(1) == l) {
          FieldElement small;
          for (std::uint64_t j = 0; j < p; ++j)
            if (e(fp.from_index(j)) == l) small = fp.from_index(j);
          trace = count_and_trace(LegendreCurve<FieldElement>(small)).trace;
        } else {
          trace = count_and_trace(LegendreCurve<FieldElement>(l)).trace;
        }
        if (trace % static_cast<long long>(p) == 0) brute.push_back(l);
      }
      total += brute.size();
      if (brute != hasse) {
        ++mismatches;
        if (first_bad.empty()) first_bad = "p=" + std::to_string(p);
      }
    }
    r.passed = mismatches == 0 && primes > 0;
    r.detail = std::to_string(primes) + " primes, " + std::to_string(total) + " supersingular lambdas";
    if (!first_bad.empty()) r.detail += ", first mismatch " + first_bad;
  });
}

/// x o [m] evaluated at x(P) against the group law, plus phi_mn = phi_m o phi_n.
inline CheckResult check_lattes_commutation(int trials, std::uint64_t seed = 2024) {
  return detail::timed(5, "Lattes map commutes with [m]", [&](CheckResult& r) {
    std::mt19937_64 rng(seed);
    std::vector<std::pair<std::uint64_t, unsigned>> fields;
    for (auto [p, k] : detail::odd_fields(13 * 13))
      if (p <= 13) fields.emplace_back(p, k);
    int agree = 0, poles = 0, bad = 0;
    for (int t = 0; t < trials; ++t) {
      auto [p, k] = fields[rng() % fields.size()];
      Field f = make_field(p, k);
      LegendreCurve<FieldElement> c(f.from_index(2 + rng() % (f.order() - 2)));
      long m = 1 + static_cast<long>(rng() % 10);
      auto phi = mult_x_map(m, c);
      auto pts = detail::all_points(c);
      auto pnt = pts[1 + rng() % (pts.size() - 1)];
      auto img = c.mul(m, pnt);
      auto got = phi(ProjPoint<FieldElement>::finite(pnt.x));
      if (img.infinity) {
        ++poles;
        bad += !got.infinity;
      } else {
        bad += !(got == ProjPoint<FieldElement>::finite(img.x));
        ++agree;
      }
    }
    std::map<long, SymbolicMap> maps;
    for (long m = 1; m <= 12; ++m) maps.emplace(m, mult_x_map(m));
    int compositions = 0, comp_bad = 0;
    for (long m = 2; m <= 6; ++m)
      for (long n = 2; m * n <= 12; ++n) {
        ++compositions;
        comp_bad += !(compose(maps.at(m), maps.at(n)) == maps.at(m * n));
      }
    r.passed = bad == 0 && comp_bad == 0;
    r.detail = std::to_string(trials) + " trials (" + std::to_string(agree) + " affine, " + std::to_string(poles) +
               " at infinity, " + std::to_string(bad) + " mismatches), " + std::to_string(compositions) +
               " symbolic compositions (" + std::to_string(comp_bad) + " mismatches)";
  });
}

/// Painleve VI residual of the torsion loci, the zero-parameter control and
/// etaleness.
inline CheckResult check_pvi(long max_m) {
  return detail::timed(6, "torsion loci solve Painleve VI (0,0,0,1/2)", [&](CheckResult& r) {
    bool ok = true;
    std::ostringstream os;
    for (long m = 3; m <= max_m; ++m) {
      PVICheck c = pvi_check(m);
      ok = ok && c.ok();
      os << (m > 3 ? "; " : "") << "m=" << m << " residual " << (c.residual_zero ? "0" : "nonzero") << ", control "
         << (c.control_nonzero ? "nonzero" : "0") << ", disc roots {";
      for (std::size_t i = 0; i < c.etale.disc_roots.size(); ++i)
        os << (i ? "," : "") << to_string(c.etale.disc_roots[i]);
      os << "}";
    }
    r.passed = ok;
    r.detail = os.str();
  });
}

inline CheckResult check_torsion_detection(int samples, long max_m) {
  return detail::timed(7, "torsion certificates", [&](CheckResult& r) {
    auto a = detect({Rational(27, 32), Rational(9, 8)});
    auto b = detect({Rational(2), Rational(0)});
    auto c = detect({Rational(2), Rational(3), 64});
    bool examples = a.verdict == Verdict::torsion && a.order == 3 && b.verdict == Verdict::torsion && b.order == 2 &&
                    c.verdict == Verdict::non_torsion && c.bound == 64;
    auto ss = manufacture_torsion_samples(samples, max_m);
    int certified = 0;
    for (const auto& s : ss) {
      auto t = detect({s.lambda, s.z});
      if (t.verdict == Verdict::torsion && s.m % t.order == 0 && division_value_q(t.order, s.z, s.lambda) == 0)
        ++certified;
    }
    r.passed = examples && static_cast<int>(ss.size()) == samples && certified == samples;
    r.detail = std::string("examples ") + (examples ? "ok" : "FAILED") + ", " + std::to_string(certified) + "/" +
               std::to_string(ss.size()) + " manufactured samples certified";
  });
}

/// Group axioms on every curve with at most 64 points, the Hasse bound on
/// every curve counted, and polynomial round-trips.
inline CheckResult check_algebraic_sanity(std::uint64_t seed = 7) {
  return detail::timed(8, "group law, Hasse bound, polynomial round-trips", [&](CheckResult& r) {
    int curves = 0, axiom_failures = 0, counted = 0, hasse_failures = 0;
    for (auto [p, k] : detail::odd_fields(90)) {
      Field f = make_field(p, k);
      for (std::uint64_t i = 2; i < f.order(); ++i) {
        LegendreCurve<FieldElement> c(f.from_index(i));
        auto ct = count_and_trace(c);
        ++counted;
        hasse_failures += ct.trace * ct.trace > 4 * static_cast<long long>(f.order());
        if (ct.count > 64) continue;
        auto pts = detail::all_points(c);
        std::size_t n = pts.size();
        bool ok = n == ct.count;
        std::vector<std::size_t> table(n * n);
        for (std::size_t a = 0; a < n && ok; ++a)
          for (std::size_t b = 0; b < n && ok; ++b) {
            auto s = c.add(pts[a], pts[b]);
            auto it = std::find(pts.begin(), pts.end(), s);
            ok = it != pts.end();
            if (ok) table[a * n + b] = static_cast<std::size_t>(it - pts.begin());
          }
        for (std::size_t a = 0; a < n && ok; ++a) {
          ok = table[a * n] == a;
          bool has_inverse = false;
          for (std::size_t b = 0; b < n && ok; ++b) {
            has_inverse = has_inverse || table[a * n + b] == 0;
            ok = table[a * n + b] == table[b * n + a];
            for (std::size_t d = 0; d < n && ok; ++d)
              ok = table[table[a * n + b] * n + d] == table[a * n + table[b * n + d]];
          }
          ok = ok && has_inverse;
        }
        ++curves;
        axiom_failures += !ok;
      }
    }
    // Hasse bound on larger fields too
    for (auto [p, k] : detail::odd_fields(400)) {
      Field f = make_field(p, k);
      for (std::uint64_t i = 2; i < f.order(); ++i) {
        auto ct = count_and_trace(LegendreCurve<FieldElement>(f.from_index(i)));
        ++counted;
        hasse_failures += ct.trace * ct.trace > 4 * static_cast<long long>(f.order());
      }
    }

    std::mt19937_64 rng(seed);
    auto rnd = [&](int lo, int hi) { return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); };
    int trips = 0, trip_failures = 0;
    Field f = make_field(101, 1);
    for (int t = 0; t < 200; ++t) {
      auto random_poly = [&](int max_len, bool monic_ish) {
        std::vector<Rational> c;
        for (int i = 0, n = static_cast<int>(rnd(1, max_len)); i < n; ++i) c.emplace_back(rnd(-20, 20));
        if (monic_ish) c.emplace_back(rnd(1, 5));
        return QPoly(std::move(c), Rational(0));
      };
      QPoly a = random_poly(8, false), b = random_poly(4, true), g = random_poly(3, true);
      auto [q, rem] = divrem(a, b);
      bool ok = q * b + rem == a && rem.degree() < b.degree();
      // gcd(a g, b g) is a multiple of g
      QPoly h = gcd_field(a * g, b * g);
      ok = ok && divrem(h, g).second.is_zero();
      FPoly fa = map_coefficients(a, f), fb = map_coefficients(b, f);
      auto [fq, fr] = divrem(fa, fb);
      ok = ok && fq * fb + fr == fa;
      ++trips;
      trip_failures += !ok;
    }
    // quotient ring: u * u^-1 = 1 modulo Psi_3
    QuotientRing ring(torsion_locus(3).psi);
    for (int t = 0; t < 20; ++t) {
      std::vector<ZPoly> rows;
      for (int i = 0; i < 4; ++i) rows.push_back(zpoly({rnd(-5, 5), rnd(-5, 5)}));
      QuotientElement u = ring.element(BiZPoly(std::move(rows), ZPoly(Integer(0))));
      if (u.is_zero()) continue;
      ++trips;
      trip_failures += !(u * u.inverse() == ring.one());
    }
    r.passed = axiom_failures == 0 && hasse_failures == 0 && trip_failures == 0 && curves > 0;
    r.detail = std::to_string(curves) + " small curves (" + std::to_string(axiom_failures) + " axiom failures), " +
               std::to_string(counted) + " counts (" + std::to_string(hasse_failures) + " over the Hasse bound), " +
               std::to_string(trips) + " round-trips (" + std::to_string(trip_failures) + " failures)";
  });
}

inline std::vector<CheckResult> verify_all(const VerifyOptions& o,
                                           const std::function<void(const CheckResult&)>& on_result = {}) {
  std::vector<std::function<CheckResult()>> checks{
      [&] { return check_supersingular_identity(o.pmax); },
      [&] { return check_supersingular_census(o.census_pmax, o.census_bound); },
      [&] { return check_period_torsion(); },
      [&] { return check_hasse_brute_force(o.hasse_pmax); },
      [&] { return check_lattes_commutation(o.lattes_trials); },
      [&] { return check_pvi(o.pvi_max_m); },
      [&] { return check_torsion_detection(o.torsion_samples, o.torsion_max_m); },
      [&] { return check_algebraic_sanity(); },
  };
  std::vector<CheckResult> out;
  for (auto& c : checks) {
    out.push_back(c());
    if (on_result) on_result(out.back());
  }
  return out;
}

}  // namespace lattes
