#include "lattes/json_io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace lattes;

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kUsage = 2, kNegative = 3, kInconclusive = 4 };

struct Options {
  std::uint64_t p = 0;
  unsigned k = 0;  // 0 picks a default per command
  std::string lambda;
  std::string z;
  long m = 3;
  unsigned n = 1;
  std::uint64_t pmax = 13;
  long bound = 0;  // 0 picks a default per command
  std::string format = "json";
  std::string out;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) out.push_back(part);
  return out;
}

void require_prime(std::uint64_t p) {
  if (p < 3 || !is_prime(p)) throw UsageError("--p must be an odd prime");
}

// Field degree implied by a value: a comma list of c0,c1,... needs as many
// coefficients as the degree; a rational lives in the prime field.
unsigned implied_degree(const std::string& v) {
  return v.find(',') == std::string::npos ? 1u : static_cast<unsigned>(split_commas(v).size());
}

FieldElement parse_element(const std::string& v, const Field& f) {
  if (v.empty()) throw UsageError("missing field element");
  if (v.find(',') == std::string::npos) return reduce(parse_rational(v), f);
  std::vector<std::uint64_t> coeffs;
  for (const auto& part : split_commas(v)) {
    Rational r = parse_rational(part);
    if (r.get_den() != 1) throw UsageError("coefficients of a field element must be integers");
    coeffs.push_back(residue(r.get_num(), f.characteristic()));
  }
  return f.from_coeffs(coeffs);
}

ProjPoint<FieldElement> parse_point(const std::string& v, const Field& f) {
  if (v == "inf") return ProjPoint<FieldElement>::at_infinity();
  return ProjPoint<FieldElement>::finite(parse_element(v, f));
}

std::optional<Rational> parse_rational_point(const std::string& v) {
  if (v == "inf") return std::nullopt;
  return parse_rational(v);
}

// Text rendering: one "key: value" line per top-level entry.
std::string render(const Json& j, const std::string& format) {
  if (format == "json") return j.dump() + "\n";
  std::string out;
  for (auto it = j.begin(); it != j.end(); ++it) {
    out += it.key() + ": ";
    out += it->is_string() ? it->get<std::string>() : it->dump();
    out += "\n";
  }
  return out;
}

int run_selfmap(const Options& o, Json& j) {
  require_prime(o.p);
  unsigned k = o.k ? o.k : implied_degree(o.lambda);
  Field f = make_field(o.p, k);
  FieldElement l = parse_element(o.lambda, f);
  SelfMap s = build_selfmap(l, o.p);
  j = {{"field", to_json(f)},
       {"p", o.p},
       {"lambda", to_json(l)},
       {"map", to_json(s.map)},
       {"degree", s.map.degree()},
       {"unreduced_degree", s.unreduced_degree},
       {"supersingular", is_supersingular(l)}};
  return kOk;
}

int run_orbit(const Options& o, Json& j) {
  require_prime(o.p);
  unsigned k = o.k ? o.k : 2;
  Field f = make_field(o.p, k);
  FieldElement l = parse_element(o.lambda, f);
  SelfMap s = build_selfmap(l, o.p);
  OrbitReport r = orbit(parse_point(o.z, f), s, f);
  j = to_json(r);
  j["field"] = to_json(f);
  j["lambda"] = to_json(l);
  j["p"] = o.p;
  return kOk;
}

int run_census(const Options& o, Json& j) {
  require_prime(o.p);
  unsigned k = o.k ? o.k : implied_degree(o.lambda);
  Field f = make_field(o.p, k);
  FieldElement l = parse_element(o.lambda, f);
  CensusOptions opt;
  if (o.bound > 0) opt.bound = static_cast<std::uint64_t>(o.bound);
  Census c = classify_field(l, o.p, o.n, opt);
  j = to_json(c);
  j["field"] = to_json(f);
  return kOk;
}

int run_supersingular_scan(const Options& o, Json& j) {
  require_prime(o.p);
  Field fp = make_field(o.p, 1), fp2 = make_field(o.p, 2);
  Json small = Json::array(), big = Json::array();
  for (std::uint64_t i = 2; i < o.p; ++i)
    if (is_supersingular(fp.from_index(i))) small.push_back(i);
  for (const auto& l : supersingular_lambdas(fp2)) big.push_back(to_json(l));
  j = {{"p", o.p},
       {"hasse", to_json(hasse_polynomial(fp))},
       {"fp", small},
       {"fp2_field", to_json(fp2)},
       {"fp2", big}};
  return kOk;
}

int run_hasse_poly(const Options& o, Json& j) {
  require_prime(o.p);
  unsigned k = o.k ? o.k : 2;
  Field f = make_field(o.p, k);
  FPoly h = hasse_polynomial(f);
  Json roots = Json::array();
  for (std::uint64_t i = 0; i < f.order(); ++i)
    if (h.eval(f.from_index(i)).is_zero()) roots.push_back(to_json(f.from_index(i)));
  Json coeffs = Json::array();
  for (auto c : hasse_coefficients(o.p)) coeffs.push_back(c);
  j = {{"p", o.p}, {"coefficients", coeffs}, {"field", to_json(f)}, {"roots", roots}};
  return kOk;
}

int run_torsion_locus(const Options& o, Json& j) {
  TorsionLocus t = torsion_locus(o.m);
  j = {{"m", t.m}, {"psi", to_json(t.psi)}, {"degree_x", t.psi.degree()}};
  j["etale"] = o.m >= 3 ? to_json(etale_check(o.m)) : Json(nullptr);
  return kOk;
}

int run_pvi_check(const Options& o, Json& j) {
  PVICheck c = pvi_check(o.m);
  j = to_json(c);
  return c.ok() ? kOk : kVerifyFailed;
}

int run_is_torsion(const Options& o, Json& j) {
  if (o.lambda.empty() || o.z.empty()) throw UsageError("is-torsion needs --lambda and --z");
  TorsionQuery q{parse_rational(o.lambda), parse_rational_point(o.z), o.bound > 0 ? o.bound : kDefaultTorsionBound};
  TorsionCertificate c = detect(q);
  j = to_json(c);
  if (c.verdict == Verdict::torsion) return kOk;
  return c.verdict == Verdict::non_torsion ? kNegative : kInconclusive;
}

int run_verify_all(const Options& o, Json& j, bool text) {
  VerifyOptions v;
  v.pmax = o.pmax;
  Json results = Json::array();
  bool all = true;
  verify_all(v, [&](const CheckResult& r) {
    all = all && r.passed;
    results.push_back(to_json(r));
    if (text)
      std::cerr << (r.passed ? "[PASS] " : "[FAIL] ") << r.id << " " << r.name << ": " << r.detail << "\n";
  });
  j = {{"pmax", o.pmax}, {"results", results}, {"passed", all}};
  return all ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lattes maps, supersingular reduction and torsion loci on the Legendre family"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--out", o.out, "write the report to this file instead of stdout");

  auto add_p = [&](CLI::App* c) { return c->add_option("--p", o.p, "odd prime")->required(); };
  auto add_k = [&](CLI::App* c) { return c->add_option("--k", o.k, "field degree over F_p")->check(CLI::Range(1u, 12u)); };
  auto add_lambda = [&](CLI::App* c, bool required) {
    auto opt = c->add_option("--lambda", o.lambda, "rational a/b, or coefficients c0,c1,... of a field element");
    if (required) opt->required();
    return opt;
  };

  auto* selfmap = app.add_subcommand("selfmap", "the self-map x o [p] over F_{p^k}");
  add_p(selfmap);
  add_k(selfmap);
  add_lambda(selfmap, true);

  auto* orb = app.add_subcommand("orbit", "orbit of z under the self-map inside P^1(F_{p^k})");
  add_p(orb);
  add_k(orb);
  add_lambda(orb, true);
  orb->add_option("--z", o.z, "field element or inf")->required();

  auto* census = app.add_subcommand("census", "periodic points of P^1(F_{p^{2n}})");
  add_p(census);
  add_k(census);
  add_lambda(census, true);
  census->add_option("--n", o.n, "census over F_{p^{2n}}")->check(CLI::Range(1u, 8u));
  census->add_option("--bound", o.bound, "largest field size to enumerate")->check(CLI::PositiveNumber);

  auto* scan = app.add_subcommand("supersingular-scan", "supersingular lambda over F_p and F_{p^2}");
  add_p(scan);

  auto* hasse = app.add_subcommand("hasse-poly", "Hasse polynomial H_p and its roots in F_{p^k}");
  add_p(hasse);
  add_k(hasse);

  auto* locus = app.add_subcommand("torsion-locus", "Psi_m(x, lambda) and its etaleness");
  locus->add_option("--m", o.m, "torsion order")->required()->check(CLI::Range(2L, kMaxLocusOrder));

  auto* pvi = app.add_subcommand("pvi-check", "exact Painleve VI residual of Psi_m");
  pvi->add_option("--m", o.m, "torsion order")->check(CLI::Range(3L, kMaxLocusOrder));

  auto* tors = app.add_subcommand("is-torsion", "torsion certificate for z on the curve over Q");
  add_lambda(tors, true);
  tors->add_option("--z", o.z, "rational or inf")->required();
  tors->add_option("--bound", o.bound, "largest order considered")->check(CLI::PositiveNumber);

  auto* verify = app.add_subcommand("verify-all", "run the verification suite");
  verify->add_option("--pmax", o.pmax, "largest prime for the supersingular checks")->check(CLI::Range(3u, 1000u));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  Json j;
  int code = kOk;
  bool text = o.format == "text";
  try {
    if (*selfmap) code = run_selfmap(o, j);
    else if (*orb) code = run_orbit(o, j);
    else if (*census) code = run_census(o, j);
    else if (*scan) code = run_supersingular_scan(o, j);
    else if (*hasse) code = run_hasse_poly(o, j);
    else if (*locus) code = run_torsion_locus(o, j);
    else if (*pvi) code = run_pvi_check(o, j);
    else if (*tors) code = run_is_torsion(o, j);
    else if (*verify) code = run_verify_all(o, j, text);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kVerifyFailed;
  }

  std::string body = render(with_schema(std::move(j)), o.format);
  if (o.out.empty()) {
    std::cout << body;
  } else {
    std::ofstream f(o.out);
    if (!f) {
      std::cerr << "error: cannot write " << o.out << "\n";
      return kUsage;
    }
    f << body;
  }
  return code;
}
