// Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any FAIL.

#include <json.hpp>
#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "spbw/cli/cli.hpp"
#include "spbw/cli/instance.hpp"
#include "spbw/literal.hpp"
#include "spbw/properties.hpp"
#include "support/corpus.hpp"
#include "support/gen.hpp"
#include "support/oracles.hpp"

#ifndef SPBW_EXECUTABLE
#error "SPBW_EXECUTABLE must name the built command-line tool"
#endif

using namespace spbw;
using nlohmann::json;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

const char* kCommutativeZ6 = R"({"ring":"Z6","variables":2,"relations":[{"i":1,"j":2,"c":"1"}]})";
const char* kZ3Trivial = R"({"ring":"Z3","variables":2,"relations":[{"i":1,"j":2,"c":"1"}]})";

Outcome commutative_oracle() {
  Outcome o;
  const auto inst = cli::parse_instance(kCommutativeZ6);
  const auto& P = *inst.presentation;
  gen::Gen g(1);
  std::vector<std::pair<SkewPoly, SkewPoly>> pairs;
  for (int k = 0; k < 500; ++k) pairs.emplace_back(g.poly(P, 4, 6), g.poly(P, 4, 6));
  const auto t0 = Clock::now();
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto& [f, h] = pairs[k];
    const auto want = oracle::comm_mul(oracle::to_cpoly(f), oracle::to_cpoly(h), 6);
    o.require(oracle::to_cpoly(mul(f, h)) == want, "pair " + std::to_string(k) + ": " + to_string(f) + " * " +
                                                      to_string(h) + " differs from the commutative product");
  }
  const double s = seconds_since(t0);
  o.require(s < 2.0, "took " + std::to_string(s) + " s");
  if (o.ok) o.detail = "500/500 pairs, " + std::to_string(s) + " s";
  return o;
}

Outcome associativity() {
  Outcome o;
  const auto t0 = Clock::now();
  std::size_t checked = 0;
  for (const char* file : {"quantum_plane_z5.json", "weyl_dual_regular.json"}) {
    const auto inst = corpus::load(file);
    const auto& P = *inst.presentation;
    gen::Gen g(2);
    for (int k = 0; k < 200; ++k) {
      const auto f = g.poly(P, 3, 4), h = g.poly(P, 3, 4), l = g.poly(P, 3, 4);
      o.require(mul(mul(f, h), l) == mul(f, mul(h, l)), std::string(file) + ": (fg)h != f(gh) at case " +
                                                             std::to_string(k));
      o.require(mul(f, h + l) == mul(f, h) + mul(f, l), std::string(file) + ": f(g+h) != fg+fh at case " +
                                                            std::to_string(k));
      ++checked;
    }
  }
  const double s = seconds_since(t0);
  o.require(s < 5.0, "took " + std::to_string(s) + " s");
  if (o.ok) o.detail = std::to_string(checked) + " triples, " + std::to_string(s) + " s";
  return o;
}

Outcome commutation_contract() {
  Outcome o;
  std::size_t checked = 0;
  for (const char* file : {"quantum_plane_z5.json", "weyl_dual_regular.json"}) {
    const auto inst = corpus::load(file);
    const auto& P = *inst.presentation;
    const auto& R = P.ring();
    for (const auto& alpha : enumerate_upto(P.n(), 3, P.order()))
      for (Elem r = 0; r < R.order(); ++r) {
        const auto [ra, p] = P.alpha_commute(alpha, r);
        const std::string at = std::string(file) + " alpha=" + to_string(alpha) + " r=" + R.name(r);
        const auto lhs = mul(SkewPoly::monomial(P, alpha, R.one()), SkewPoly::constant(P, r));
        o.require(lhs == SkewPoly::monomial(P, alpha, ra) + p, at + ": recombination fails");
        o.require(ra == P.sigma_power(alpha, r), at + ": leading coefficient is not sigma^alpha(r)");
        o.require(p.is_zero() || p.deg() < static_cast<int>(degree(alpha)), at + ": tail degree too large");
        ++checked;
      }
  }
  if (o.ok) o.detail = std::to_string(checked) + " (alpha, r) pairs";
  return o;
}

Outcome module_associativity() {
  Outcome o;
  const auto inst = corpus::load("weyl_dual_quotient.json");
  const auto& P = *inst.presentation;
  const auto& M = *inst.module;
  gen::Gen g(4);
  for (int k = 0; k < 200; ++k) {
    const auto m = g.module_poly(M, P, 3, 4);
    const auto f = g.poly(P, 3, 4), h = g.poly(P, 3, 4);
    o.require(act(act(m, f), h) == act(m, mul(f, h)), "(mf)g != m(fg) at case " + std::to_string(k) + ": m=" +
                                                          to_string(m) + " f=" + to_string(f) + " g=" + to_string(h));
  }
  if (o.ok) o.detail = "200/200 triples";
  return o;
}

Outcome reduced_implies_armendariz() {
  Outcome o;
  const auto inst = cli::parse_instance(kZ3Trivial);
  const auto& P = *inst.presentation;
  const auto& M = *inst.module;
  const auto t0 = Clock::now();
  o.require(is_reduced(M).verdict == Verdict::Holds, "Z3 is not reported reduced");
  o.require(is_sigma_compatible(M, P).verdict == Verdict::Holds, "Z3 is not reported sigma-compatible");
  o.require(is_delta_compatible(M, P).verdict == Verdict::Holds, "Z3 is not reported delta-compatible");
  const std::uint64_t k = count_upto(P.n(), 2);
  std::uint64_t space = 1;
  for (std::uint64_t i = 0; i < 2 * k; ++i) space *= 3;
  o.require(space <= 531441, "search space " + std::to_string(space) + " exceeds 3^12");
  const auto v = is_skew_armendariz_bounded(M, P, 2);
  o.require(v.verdict == Verdict::HoldsUpToBound && v.bound == 2u && v.witness.empty(),
            "skew-Armendariz verdict is " + std::string(verdict_name(v.verdict)));
  const double s = seconds_since(t0);
  o.require(s < 60.0, "took " + std::to_string(s) + " s");
  if (o.ok) o.detail = "HoldsUpToBound(2) over " + std::to_string(space) + " candidates, " + std::to_string(s) + " s";
  return o;
}

Outcome unstable_idempotent() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto inst = corpus::load("z2xz2_swap.json");
  const auto& P = *inst.presentation;
  const auto& M = *inst.module;
  const auto& R = P.ring();
  const auto st = idempotent_stability(P);
  o.require(st.fails() && st.item("e") == "(1,0)", "idempotent stability did not fail at e=(1,0)");
  const auto v = is_linearly_skew_armendariz(M, P);
  o.require(v.fails(), "linear skew-Armendariz did not fail");
  if (v.fails()) {
    const auto m = parse_module_poly(M, P, v.item("m"));
    const auto gpoly = parse_poly(P, v.item("g"));
    const Elem m0 = *M.find(v.item("m0")), b = *R.find(v.item("b"));
    bool b_is_coeff = false;
    for (const auto& [alpha, c] : gpoly.terms()) b_is_coeff = b_is_coeff || c == b;
    o.require(m.deg() <= 1 && gpoly.deg() <= 1, "witness is not linear");
    o.require(act(m, gpoly).is_zero(), "replayed m g is not zero");
    o.require(m.coeff(MultiIndex(P.n())) == m0 && b_is_coeff, "witness m0 or b does not belong to (m, g)");
    o.require(M.act(m0, b) != M.zero(), "replayed m0 b is zero");
    if (o.ok) o.detail = "m=" + to_string(m) + ", g=" + to_string(gpoly) + ", m0*b=" + M.name(M.act(m0, b));
  }
  const double s = seconds_since(t0);
  o.require(s < 5.0, "took " + std::to_string(s) + " s");
  return o;
}

Outcome baer_family() {
  Outcome o;
  struct Case {
    FiniteRing ring;
    bool all_hold;
  };
  for (auto& c : {Case{FiniteRing::integers_mod(3), true}, Case{FiniteRing::integers_mod(4), false},
                  Case{FiniteRing::product_of_integers_mod({2, 2}), true}}) {
    const auto M = RightModule::regular(std::make_shared<const FiniteRing>(c.ring));
    const auto fam = oracle::baer_family(M);
    const std::string at = M.label() + ": ";
    const std::vector<std::pair<PropertyVerdict, bool>> got{
        {is_pp(M), fam.pp}, {is_pq_baer(M), fam.pq_baer}, {is_quasi_baer(M), fam.quasi_baer}, {is_baer(M), fam.baer}};
    for (const auto& [v, want] : got) {
      o.require(v.holds() == want, at + v.property + " disagrees with the oracle");
      o.require(v.holds() == c.all_hold, at + v.property + " has the wrong verdict");
    }
    if (!c.all_hold) {
      o.require(got[0].first.item("m") == "2" && got[1].first.item("m") == "2", at + "witness is not m=2");
      o.require(fam.pp_witness == 2 && fam.pq_witness == 2, at + "oracle witness is not m=2");
    }
  }
  if (o.ok) o.detail = "Z3 all Hold, Z4 all Fail at m=2, Z2xZ2 all Hold";
  return o;
}

Outcome reduced_pp_pq() {
  Outcome o;
  std::size_t reduced = 0;
  for (const auto& file : corpus::files()) {
    const auto inst = corpus::load(file);
    const auto& M = *inst.module;
    if (!is_reduced(M).holds()) continue;
    ++reduced;
    o.require(is_pp(M).verdict == is_pq_baer(M).verdict, file + ": pp and pq-Baer verdicts differ");
  }
  o.require(reduced > 0, "no reduced instance in the corpus");
  if (o.ok) o.detail = std::to_string(reduced) + " reduced instances agree";
  return o;
}

Outcome quasi_baer_transfer() {
  Outcome o;
  const auto inst = corpus::load("z3_trivial.json");
  const auto& P = *inst.presentation;
  const auto& M = *inst.module;
  const auto& R = P.ring();
  o.require(is_quasi_baer(M).verdict == Verdict::Holds, "Z3 is not reported quasi-Baer");

  const auto mons = enumerate_upto(P.n(), 2, P.order());
  gen::Gen g(9);
  std::size_t checked = 0;
  for (int k = 0; k < 60 && o.ok; ++k) {
    std::vector<ModulePoly> gens{g.module_poly(M, P, 2, 4)};
    if (k % 2 == 1) gens.push_back(g.module_poly(M, P, 2, 4));
    // generators of the submodule, truncated at degree 1 on the A side
    std::vector<ModulePoly> Ms = gens;
    for (const auto& m : gens)
      for (std::size_t i = 1; i <= P.n(); ++i) Ms.push_back(act(m, SkewPoly::variable(P, i)));
    ElementSet U;
    for (const auto& m : Ms) U = U | m.coefficients();
    const auto I = ann_in_R(M, U);
    const auto e = is_idempotent_generated(R, I);
    o.require(e.has_value(), "ann_R of the coefficients is not idempotent-generated");
    const auto ann = ann_in_A_bounded(Ms, P, 2);
    std::size_t want = 1;
    for (std::size_t t = 0; t < mons.size(); ++t) want *= I.size();
    o.require(ann.size() == want, "bounded annihilator has " + std::to_string(ann.size()) + " elements, expected " +
                                      std::to_string(want));
    for (const auto& f : ann)
      for (const auto& [alpha, c] : f.terms()) o.require(I.contains(c), "annihilator coefficient outside eR");
    ++checked;
  }
  SuiteOptions opts;
  opts.embedding = R.one();
  for (const auto& rep : theorem_suite(M, P, opts))
    if (rep.id == "quasi_baer_transfers_to_polynomial_module" || rep.id == "quasi_baer_implies_skew_quasi_armendariz")
      o.require(rep.status == TheoremStatus::Confirmed, rep.id + " is " + std::string(theorem_status_name(rep.status)));
  const auto v = is_skew_quasi_armendariz_bounded(M, P, 2);
  o.require(v.verdict == Verdict::HoldsUpToBound && v.bound == 2u,
            "skew quasi-Armendariz verdict is " + std::string(verdict_name(v.verdict)));
  if (o.ok) o.detail = std::to_string(checked) + " generator sets, skew quasi-Armendariz HoldsUpToBound(2)";
  return o;
}

Outcome master_regression() {
  Outcome o;
  const auto t0 = Clock::now();
  std::size_t reports = 0, inconclusive = 0;
  for (const auto& file : corpus::files()) {
    std::ostringstream out, err;
    const int code = cli::run_cli({corpus::path(file), "theorems", "--degree", "2", "--json-only"}, out, err);
    const auto rep = json::parse(out.str());
    o.require(rep["status"] != "error", file + ": " + rep.value("/error/message"_json_pointer, std::string()));
    if (rep["status"] == "error") continue;
    const auto& summary = rep["result"]["summary"];
    o.require(summary["VIOLATION"] == 0, file + ": " + summary.dump());
    o.require(code == 0, file + ": exit code " + std::to_string(code));
    reports += rep["result"]["theorems"].size();
    inconclusive += summary["Inconclusive"].get<std::size_t>();
  }
  o.require(corpus::files().size() >= 6, "corpus has fewer than 6 instances");
  const double s = seconds_since(t0);
  o.require(s < 300.0, "took " + std::to_string(s) + " s");
  if (o.ok)
    o.detail = std::to_string(corpus::files().size()) + " instances, " + std::to_string(reports) + " reports, 0 VIOLATION, " +
               std::to_string(inconclusive) + " Inconclusive, " + std::to_string(s) + " s";
  return o;
}

struct Process {
  int code = -1;
  std::string out;
};

std::string quoted(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

Process spawn(const std::vector<std::string>& args) {
  std::string cmd = quoted(SPBW_EXECUTABLE);
  for (const auto& a : args) cmd += " " + quoted(a);
  cmd += " 2>/dev/null";
  Process p;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return p;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) p.out.append(buf, n);
  const int status = pclose(pipe);
  p.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return p;
}

int expected_exit(const json& rep) {
  if (rep["status"] == "error") return rep["error"]["code"] == "VerificationFailed" ? 3 : 2;
  if (rep["command"] == "check") {
    const std::string v = rep["result"]["verdict"];
    return v == "Fails" ? 1 : v == "Inconclusive" ? 2 : 0;
  }
  if (rep["command"] == "theorems") return rep["result"]["summary"]["VIOLATION"] == 0 ? 0 : 3;
  return 0;
}

Outcome cli_determinism() {
  Outcome o;
  std::size_t runs = 0;
  for (const auto& file : corpus::files()) {
    const auto inst = corpus::load(file);
    const std::string path = corpus::path(file);
    const std::string m = inst.module->name(static_cast<Elem>(inst.module->order() > 1 ? 1 : 0));
    std::vector<std::vector<std::string>> cmds{{"validate"},
                                               {"mul", "x1", "x1"},
                                               {"act", m + "*x1", "x1"},
                                               {"ann", m, "--degree", "1"},
                                               {"theorems", "--degree", "1"},
                                               {"serialize"},
                                               {"check", "no-such-property"}};
    for (const auto& p : property_names()) cmds.push_back({"check", p, "--degree", "1"});
    for (auto args : cmds) {
      args.insert(args.begin(), path);
      args.push_back("--json-only");
      const auto a = spawn(args), b = spawn(args);
      std::string cmd;
      for (std::size_t k = 1; k < args.size(); ++k) cmd += " " + args[k];
      o.require(a.out == b.out && a.code == b.code, file + cmd + ": runs differ");
      json rep;
      try {
        rep = json::parse(a.out);
      } catch (const json::exception&) {
        o.require(false, file + cmd + ": output is not JSON");
        continue;
      }
      o.require(rep["exit_code"] == a.code, file + cmd + ": report and process exit codes differ");
      o.require(a.code == expected_exit(rep), file + cmd + ": exit code " + std::to_string(a.code) +
                                                  " breaks the documented contract");
      runs += 2;
    }
  }
  if (o.ok) o.detail = std::to_string(runs) + " process runs, byte-identical in pairs";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"commutative oracle equivalence on Z6", commutative_oracle},
      {"associativity and distributivity in A", associativity},
      {"commutation of x^alpha past scalars", commutation_contract},
      {"module action associativity", module_associativity},
      {"reduced compatible Z3 is skew-Armendariz up to degree 2", reduced_implies_armendariz},
      {"swap automorphism breaks idempotent stability and linear skew-Armendariz", unstable_idempotent},
      {"Baer-family deciders match the table oracle", baer_family},
      {"pp equals pq-Baer on reduced corpus instances", reduced_pp_pq},
      {"bounded quasi-Baer transfer on Z3", quasi_baer_transfer},
      {"theorem suite over the corpus has no violations", master_regression},
      {"CLI determinism and exit codes", cli_determinism},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.ok) ++failures;
    std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << k + 1 << ": " << criteria[k].first << " (" << o.detail
              << ")" << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
