#pragma once
// JSON encodings used by the command-line tool.
//
// Keys are sorted (nlohmann::json keeps objects in a std::map). Values of
// arbitrary size (Integer coefficients) are decimal strings; rationals are
// "num/den" strings, or plain integers when they are small whole numbers.

#include "lattes/moduli.hpp"
#include "lattes/torsion_detect.hpp"
#include "lattes/torsion_pvi.hpp"
#include "lattes/verify.hpp"

#include <json.hpp>

namespace lattes {

using Json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "1";

inline Json to_json(const Integer& v) { return to_string(v); }

/// Small whole numbers as JSON numbers, everything else as "num/den".
inline Json rational_json(const Rational& r) {
  if (r.get_den() == 1 && r.get_num().fits_slong_p()) return r.get_num().get_si();
  return to_string(r);
}

inline Json to_json(const Field& f) {
  Json mod = Json::array();
  if (f.degree() == 1)
    mod = {0, 1};  // x
  else
    for (auto c : f.modulus()) mod.push_back(c);
  return {{"p", f.characteristic()}, {"k", f.degree()}, {"modulus", mod}};
}

/// Coefficient list, constant term first.
inline Json to_json(const FieldElement& a) { return a.coeffs(); }

inline Json to_json(const FPoly& f) {
  Json out = Json::array();
  for (const auto& c : f.coeffs()) out.push_back(to_json(c));
  return out;
}

inline Json to_json(const ZPoly& f) {
  Json out = Json::array();
  for (const auto& c : f.coeffs()) out.push_back(to_json(c));
  return out;
}

/// List of lambda-coefficient lists, one per power of x.
inline Json to_json(const BiZPoly& f) {
  Json out = Json::array();
  for (const auto& row : f.coeffs()) out.push_back(to_json(row));
  return out;
}

inline Json to_json(const ProjPoint<FieldElement>& z) {
  if (z.infinity) return "inf";
  return to_json(z.value);
}

inline Json to_json(const CurvePoint<FieldElement>& p) {
  if (p.infinity) return "inf";
  return {{"x", to_json(p.x)}, {"y", to_json(p.y)}};
}

inline Json to_json(const RationalMap<FieldElement>& m) { return {{"num", to_json(m.num)}, {"den", to_json(m.den)}}; }

inline Json to_json(const PVIParams& p) {
  Json out = Json::array();
  for (const auto& v : p.values()) out.push_back(rational_json(v));
  return out;
}

inline Json to_json(const OrbitReport& r) {
  Json j = {{"z", to_json(r.z)},
            {"tail", r.tail},
            {"period", r.period},
            {"periodic", r.periodic},
            {"torsion_order", r.torsion_order},
            {"coprime_to_p", r.coprime_to_p}};
  if (r.periodic) {
    j["divides_pf_minus_1"] = r.divides_pf_minus_1;
    j["divides_pf_plus_1"] = r.divides_pf_plus_1;
    j["equals_pf_minus_1"] = r.equals_pf_minus_1;
  }
  return j;
}

inline Json to_json(const Census& c) {
  Json hist = Json::object();
  for (auto [f, n] : c.period_histogram) hist[std::to_string(f)] = n;
  return {{"p", c.p},
          {"lambda", to_json(c.lambda)},
          {"n", c.n},
          {"field_order", std::to_string(c.field_order)},
          {"supersingular", c.supersingular},
          {"periodic", c.periodic},
          {"preperiodic", c.preperiodic},
          {"expected", c.expected},
          {"period_histogram", hist},
          {"verdicts",
           {{"div_pf_minus_1", c.div_pf_minus_1},
            {"div_pf_plus_1", c.div_pf_plus_1},
            {"equal_pf_minus_1", c.equal_pf_minus_1},
            {"violations", c.divisibility_violations}}}};
}

inline Json to_json(const EtaleReport& r) {
  Json roots = Json::array();
  for (const auto& v : r.disc_roots) roots.push_back(to_string(v));
  return {{"m", r.m},
          {"disc", to_json(r.disc)},
          {"constant", to_json(r.constant)},
          {"lambda_exponent", r.lambda_exponent},
          {"lambda_minus_1_exponent", r.lambda1_exponent},
          {"residual_factor", to_json(r.residual)},
          {"disc_roots", roots},
          {"etale", r.etale}};
}

inline Json to_json(const PVICheck& c) {
  Json roots = Json::array();
  for (const auto& v : c.etale.disc_roots) roots.push_back(to_string(v));
  return {{"m", c.m},
          {"params", to_json(c.params)},
          {"residual_zero", c.residual_zero},
          {"control_nonzero", c.control_nonzero},
          {"etale", c.etale.etale},
          {"disc_roots", roots},
          {"runtime_ms", static_cast<std::int64_t>(c.runtime_ms + 0.5)}};
}

inline Json to_json(const TorsionCertificate& c) {
  Json j = {{"verdict", to_string(c.verdict)},
            {"primes", c.primes},
            {"local_orders", c.local_orders},
            {"bound", c.bound}};
  if (c.verdict == Verdict::torsion) {
    j["order"] = c.order;
    j["witness"] = c.witness;
  } else {
    j["reason"] = c.reason;
  }
  return j;
}

inline Json to_json(const CheckResult& r) {
  return {{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}};
}

/// Adds the schema tag to a top-level report.
inline Json with_schema(Json j) {
  j["schema"] = kSchemaVersion;
  return j;
}

}  // namespace lattes
