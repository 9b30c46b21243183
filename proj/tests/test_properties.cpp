#include <doctest.h>

#include <memory>
#include <set>

#include "spbw/cli/instance.hpp"
#include "spbw/error.hpp"
#include "spbw/literal.hpp"
#include "spbw/properties.hpp"
#include "support/corpus.hpp"
#include "support/gen.hpp"
#include "support/oracles.hpp"

using namespace spbw;
using spbw::cli::parse_instance;

namespace {

Errc code_of(const auto& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::BadTable;
}

using RingPtr = std::shared_ptr<const FiniteRing>;

RingPtr ring_ptr(FiniteRing R) { return std::make_shared<const FiniteRing>(std::move(R)); }

RightModule zero_module(const RingPtr& R) {
  return RightModule::from_tables(R, {{0}}, {std::vector<Elem>(R->order(), 0)}, "0");
}

// "{a,b}" or "[a,b]" split at top-level commas; names may contain brackets.
std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  if (s.size() <= 2) return out;
  std::string cur;
  int depth = 0;
  for (std::size_t k = 1; k + 1 < s.size(); ++k) {
    const char c = s[k];
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

Elem melem(const RightModule& M, const std::string& s) {
  const auto e = M.find(s);
  REQUIRE_MESSAGE(e.has_value(), "unknown module element " << s);
  return *e;
}

Elem relem(const FiniteRing& R, const std::string& s) {
  const auto e = R.find(s);
  REQUIRE_MESSAGE(e.has_value(), "unknown ring element " << s);
  return *e;
}

// Re-derives a Fails verdict from its witness using only tables and the
// public arithmetic. Returns false when the witness does not show a failure.
bool replays(const RightModule& M, const Presentation& P, const PropertyVerdict& v) {
  const FiniteRing& R = M.ring();
  const std::string& p = v.property;
  auto not_idem = [&](ElementSet X) {
    std::vector<int> xs;
    for (Elem x : X.members()) xs.push_back(x);
    return !oracle::idempotent_generated(R, oracle::ann_bits(M, xs));
  };
  if (p == "reduced") {
    const Elem m = melem(M, v.item("m")), a = relem(R, v.item("a")), c = melem(M, v.item("common"));
    if (M.act(m, a) != M.zero() || c == M.zero()) return false;
    bool in_mR = false, in_Ma = false;
    for (Elem r = 0; r < R.order(); ++r) in_mR = in_mR || M.act(m, r) == c;
    for (Elem y = 0; y < M.order(); ++y) in_Ma = in_Ma || M.act(y, a) == c;
    return in_mR && in_Ma;
  }
  if (p == "sigma-compatible" || p == "delta-compatible") {
    const Elem m = melem(M, v.item("m")), r = relem(R, v.item("r")), g = relem(R, v.item("map(r)"));
    const bool kills = M.act(m, r) == M.zero(), kills_g = M.act(m, g) == M.zero();
    if (p == "sigma-compatible") return kills != kills_g;
    return kills && !kills_g;
  }
  if (p == "skew-armendariz" || p == "linearly-skew-armendariz") {
    const auto m = parse_module_poly(M, P, v.item("m"));
    const auto f = parse_poly(P, v.item(p == "skew-armendariz" ? "f" : "g"));
    const Elem m0 = melem(M, v.item("m0")), b = relem(R, v.item("b"));
    if (m.coeff(MultiIndex(P.n())) != m0) return false;
    bool b_is_coeff = false;
    for (const auto& [alpha, c] : f.terms()) b_is_coeff = b_is_coeff || c == b;
    if (p == "linearly-skew-armendariz" && (m.deg() > 1 || f.deg() > 1)) return false;
    return annihilates(m, f) && b_is_coeff && M.act(m0, b) != M.zero();
  }
  if (p == "pp") return not_idem(ElementSet::single(melem(M, v.item("m"))));
  if (p == "pq-baer") return not_idem(cyclic_submodule(M, melem(M, v.item("m"))));
  if (p == "quasi-baer" || p == "baer") {
    ElementSet X;
    for (const auto& s : split_list(v.item(p == "baer" ? "subset" : "submodule"))) X.insert(melem(M, s));
    if (p == "quasi-baer" && !is_submodule(M, X)) return false;
    return not_idem(X);
  }
  if (p == "abelian") {
    const Elem m = melem(M, v.item("m")), r = relem(R, v.item("r")), e = relem(R, v.item("e"));
    return R.mul(e, e) == e && M.act(M.act(m, r), e) != M.act(M.act(m, e), r);
  }
  if (p == "idempotent-stability") {
    const Elem e = relem(R, v.item("e"));
    const std::size_t i = std::stoul(v.item("i"));
    return R.mul(e, e) == e && (P.sigma(i)(e) != e || P.delta(i)(e) != R.zero());
  }
  return false;
}

// n = 1 with identity sigma and zero delta.
std::shared_ptr<const Presentation> trivial_line(const RingPtr& R) {
  PresentationData d;
  d.ring = R;
  d.n = 1;
  d.sigmas = {RingMap::identity(*R)};
  d.deltas = {RingMap::zero_derivation(*R, d.sigmas[0])};
  return Presentation::create(std::move(d));
}

std::vector<RightModule> small_modules() {
  std::vector<RightModule> out;
  for (auto R : {ring_ptr(FiniteRing::integers_mod(4)), ring_ptr(FiniteRing::integers_mod(6)),
                 ring_ptr(FiniteRing::integers_mod(8)), ring_ptr(FiniteRing::integers_mod(9)),
                 ring_ptr(FiniteRing::product_of_integers_mod({2, 2})),
                 ring_ptr(FiniteRing::product_of_integers_mod({2, 4})), ring_ptr(FiniteRing::dual_numbers(2)),
                 ring_ptr(FiniteRing::dual_numbers(3)), ring_ptr(FiniteRing::upper_triangular(2, 2))}) {
    out.push_back(RightModule::regular(R));
    out.push_back(zero_module(R));
    for (Elem g = 0; g < R->order(); ++g) out.push_back(RightModule::quotient(R, {g}));
  }
  return out;
}

const char* kZ6ModTwo = R"({"ring":"Z6","variables":2,"relations":[{"i":1,"j":2,"c":"1"}],"module":{"quotient":["2"]}})";
const char* kZ3Line = R"({"ring":"Z3","variables":1})";

}  // namespace

TEST_CASE("reduced: examples") {
  const auto Z3 = ring_ptr(FiniteRing::integers_mod(3)), Z4 = ring_ptr(FiniteRing::integers_mod(4));
  CHECK(is_reduced(RightModule::regular(Z3)).verdict == Verdict::Holds);
  const auto z4 = is_reduced(RightModule::regular(Z4));
  CHECK(z4.fails());
  CHECK(z4.item("m") == "2");
  CHECK(z4.item("a") == "2");
  CHECK(is_reduced(zero_module(Z4)).verdict == Verdict::Holds);
}

TEST_CASE("compatibility: examples") {
  const auto z3 = parse_instance(kZ3Line);
  CHECK(is_sigma_compatible(*z3.module, *z3.presentation).verdict == Verdict::Holds);
  CHECK(is_delta_compatible(*z3.module, *z3.presentation).verdict == Verdict::Holds);

  const auto swap = corpus::load("z2xz2_swap.json");
  const auto s = is_sigma_compatible(*swap.module, *swap.presentation);
  CHECK(s.fails());
  CHECK(replays(*swap.module, *swap.presentation, s));
  CHECK(is_delta_compatible(*swap.module, *swap.presentation).verdict == Verdict::Holds);
  CHECK(is_sigma_compatible(zero_module(swap.ring), *swap.presentation).verdict == Verdict::Holds);

  const auto weyl = corpus::load("weyl_dual_quotient.json");
  const auto d = is_delta_compatible(*weyl.module, *weyl.presentation);
  CHECK(d.fails());
  CHECK(d.item("m") == "1");
  CHECK(d.item("r") == "y");
  CHECK(d.item("map(r)") == "1");
  CHECK(is_delta_compatible(zero_module(weyl.ring), *weyl.presentation).verdict == Verdict::Holds);
}

TEST_CASE("skew-Armendariz: examples") {
  const auto z3 = parse_instance(kZ3Line);
  const auto v = is_skew_armendariz_bounded(*z3.module, *z3.presentation, 2);
  CHECK(v.verdict == Verdict::HoldsUpToBound);
  CHECK(v.bound == 2u);
  CHECK(is_linearly_skew_armendariz(*z3.module, *z3.presentation).verdict == Verdict::Holds);

  const auto swap = corpus::load("z2xz2_swap.json");
  const auto& M = *swap.module;
  const auto& P = *swap.presentation;
  const auto bounded = is_skew_armendariz_bounded(M, P, 1);
  CHECK(bounded.fails());
  CHECK(replays(M, P, bounded));
  CHECK(parse_poly(P, bounded.item("f")).deg() <= 1);
  const auto lin = is_linearly_skew_armendariz(M, P);
  CHECK(lin.fails());
  CHECK(replays(M, P, lin));
  CHECK(is_linearly_skew_armendariz(zero_module(swap.ring), P).verdict == Verdict::Holds);
  CHECK(is_skew_armendariz_bounded(zero_module(swap.ring), P, 2).verdict == Verdict::HoldsUpToBound);
}

TEST_CASE("skew quasi-Armendariz: examples") {
  const auto z3 = corpus::load("z3_trivial.json");
  const auto v = is_skew_quasi_armendariz_bounded(*z3.module, *z3.presentation, 2);
  CHECK(v.verdict == Verdict::HoldsUpToBound);
  CHECK(v.bound == 2u);
  CHECK(is_skew_quasi_armendariz_bounded(zero_module(z3.ring), *z3.presentation, 2).verdict ==
        Verdict::HoldsUpToBound);
}

TEST_CASE("Baer family: examples") {
  const auto Z3 = ring_ptr(FiniteRing::integers_mod(3)), Z4 = ring_ptr(FiniteRing::integers_mod(4));
  const auto P = ring_ptr(FiniteRing::product_of_integers_mod({2, 2}));
  for (const auto& M : {RightModule::regular(Z3), RightModule::regular(P), zero_module(Z4)}) {
    CAPTURE(M.label());
    CHECK(is_pp(M).verdict == Verdict::Holds);
    CHECK(is_pq_baer(M).verdict == Verdict::Holds);
    CHECK(is_quasi_baer(M).verdict == Verdict::Holds);
    CHECK(is_baer(M).verdict == Verdict::Holds);
  }
  const auto M4 = RightModule::regular(Z4);
  for (const auto& v : {is_pp(M4), is_pq_baer(M4), is_quasi_baer(M4), is_baer(M4)}) {
    CAPTURE(v.property);
    CHECK(v.fails());
  }
  CHECK(is_pp(M4).item("m") == "2");
  CHECK(is_pq_baer(M4).item("m") == "2");
  CHECK(is_quasi_baer(M4).item("submodule") == "{0,2}");
}

TEST_CASE("abelian and idempotent stability: examples") {
  const auto Z6 = ring_ptr(FiniteRing::integers_mod(6));
  CHECK(is_abelian(RightModule::regular(Z6)).verdict == Verdict::Holds);
  const auto U = ring_ptr(FiniteRing::upper_triangular(2, 2));
  const auto ut = is_abelian(RightModule::regular(U));
  CHECK(ut.fails());
  CHECK_FALSE(is_central(*U, relem(*U, ut.item("e"))));
  CHECK(is_abelian(RightModule::regular(ring_ptr(FiniteRing::dual_numbers(2)))).verdict == Verdict::Holds);

  CHECK(idempotent_stability(*parse_instance(kZ3Line).presentation).verdict == Verdict::Holds);
  const auto swap = corpus::load("z2xz2_swap.json");
  const auto st = idempotent_stability(*swap.presentation);
  CHECK(st.fails());
  CHECK(st.item("e") == "(1,0)");
  // only 0 and 1 are idempotent, so any maps are stable
  CHECK(idempotent_stability(*corpus::load("weyl_dual_regular.json").presentation).verdict == Verdict::Holds);
}

TEST_CASE("unknown properties and oversized searches") {
  const auto z4 = corpus::load("z4.json");
  CHECK(code_of([&] { (void)check_property(*z4.module, *z4.presentation, "artinian", 1); }) ==
        Errc::UnknownProperty);
  const auto qp = corpus::load("quantum_plane_z5.json");
  const auto v = check_property(*qp.module, *qp.presentation, "skew-armendariz", 2);
  CHECK(v.inconclusive());
  CHECK_FALSE(v.note.empty());
  CHECK(code_of([&] { (void)is_skew_armendariz_bounded(*qp.module, *qp.presentation, 2); }) ==
        Errc::SearchSpaceTooLarge);
  // the same search fits at degree 1
  CHECK(check_property(*qp.module, *qp.presentation, "skew-armendariz", 1).holds());
}

TEST_CASE("Baer family and reducedness agree with the table oracle") {
  for (const auto& M : small_modules()) {
    CAPTURE(M.label());
    CAPTURE(M.order());
    const auto fam = oracle::baer_family(M);
    const auto pp = is_pp(M), pq = is_pq_baer(M), qb = is_quasi_baer(M), b = is_baer(M);
    CHECK(pp.holds() == fam.pp);
    CHECK(pq.holds() == fam.pq_baer);
    CHECK(qb.holds() == fam.quasi_baer);
    CHECK(b.holds() == fam.baer);
    if (fam.pp_witness) CHECK(pp.item("m") == M.name(static_cast<Elem>(*fam.pp_witness)));
    if (fam.pq_witness) CHECK(pq.item("m") == M.name(static_cast<Elem>(*fam.pq_witness)));
    const auto red = is_reduced(M);
    CHECK(red.holds() == !oracle::reduced_witness(M).has_value());
    const auto P = trivial_line(M.ring_ptr());
    for (const auto& v : {pp, pq, qb, b, red, is_abelian(M)})
      if (v.fails()) {
        CAPTURE(v.property);
        CHECK(replays(M, *P, v));
      }
  }
}

TEST_CASE("linear skew-Armendariz agrees with enumeration in the reference algebra") {
  for (const char* file : {"z4.json", "z2xz2_swap.json", "weyl_dual_regular.json", "ut2_z2.json", "z6.json"}) {
    CAPTURE(file);
    const auto inst = corpus::load(file);
    const auto& P = *inst.presentation;
    const auto& R = P.ring();
    const oracle::RefAlgebra A(P);
    bool holds = true;
    for (Elem m0 = 0; m0 < R.order() && holds; ++m0)
      for (Elem m1 = 0; m1 < R.order() && holds; ++m1)
        for (Elem b0 = 0; b0 < R.order() && holds; ++b0)
          for (Elem b1 = 0; b1 < R.order() && holds; ++b1) {
            const auto m = A.add(A.monomial({0}, m0), A.monomial({1}, m1));
            const auto g = A.add(A.monomial({0}, b0), A.monomial({1}, b1));
            if (A.mul(m, g).empty() && (R.mul(m0, b0) != R.zero() || R.mul(m0, b1) != R.zero())) holds = false;
          }
    const auto v = is_linearly_skew_armendariz(*inst.module, P);
    CHECK(v.holds() == holds);
    if (v.fails()) CHECK(replays(*inst.module, P, v));
  }
}

TEST_CASE("every corpus failure replays from its witness") {
  for (const auto& file : corpus::files()) {
    CAPTURE(file);
    const auto inst = corpus::load(file);
    for (const auto& name : property_names()) {
      const auto v = check_property(*inst.module, *inst.presentation, name, 2);
      CAPTURE(name);
      if (v.fails()) CHECK(replays(*inst.module, *inst.presentation, v));
      if (v.holds()) CHECK(v.witness.empty());
      const bool bounded = name == "skew-armendariz" || name == "skew-quasi-armendariz";
      if (v.holds()) CHECK((v.verdict == Verdict::HoldsUpToBound) == bounded);
    }
  }
}

TEST_CASE("bounded verdicts are monotone in the degree") {
  for (const char* file : {"z4.json", "z2xz2_swap.json", "weyl_dual_quotient.json", "weyl_dual_regular.json",
                           "z3_trivial.json"}) {
    CAPTURE(file);
    const auto inst = corpus::load(file);
    for (const char* name : {"skew-armendariz", "skew-quasi-armendariz"}) {
      CAPTURE(name);
      bool failed = false;
      for (unsigned d = 0; d <= 2; ++d) {
        const auto v = check_property(*inst.module, *inst.presentation, name, d);
        if (v.inconclusive()) break;
        if (failed) CHECK(v.fails());
        failed = failed || v.fails();
      }
    }
  }
}

TEST_CASE("torsion witnesses") {
  const auto z3 = corpus::load("z3_trivial.json");
  const auto& P3 = *z3.presentation;
  const auto h = parse_poly(P3, "2*x1*x2 + 1");
  CHECK(torsion_witness(ModulePoly(*z3.module, P3), h) == *z3.ring->find("2"));

  const auto z4 = corpus::load("z4.json");
  CHECK(code_of([&] {
          (void)torsion_witness(parse_module_poly(*z4.module, *z4.presentation, "2"), parse_poly(*z4.presentation, "2"));
        }) == Errc::HypothesisNotMet);
  CHECK(code_of([&] { (void)torsion_witness(ModulePoly(*z3.module, P3), SkewPoly(P3)); }) == Errc::HypothesisNotMet);

  // Z6 acting on Z6/(2): every pair with m h = 0 is found by enumeration first
  const auto inst = parse_instance(kZ6ModTwo);
  const auto& M = *inst.module;
  const auto& P = *inst.presentation;
  std::size_t found = 0;
  const long bad = gen::forall(23, 400, [&](gen::Gen& g, std::size_t) {
    const auto m = g.module_poly(M, P, 2, 3);
    const auto f = g.poly(P, 2, 3);
    if (f.is_zero() || !annihilates(m, f)) return true;
    ++found;
    const Elem c = torsion_witness(m, f);
    return c != P.ring().zero() && act_scalar(m, c).is_zero();
  });
  CHECK(bad == -1);
  CHECK(found > 20);
}

TEST_CASE("the characterization of reduced compatible modules") {
  for (const char* file : {"z3_trivial.json", "z4.json", "z2xz2_swap.json", "weyl_dual_quotient.json",
                           "weyl_dual_regular.json", "ut2_z2.json", "z6.json"}) {
    CAPTURE(file);
    const auto inst = corpus::load(file);
    const auto rep = reduced_compatible_characterization(*inst.module, *inst.presentation);
    CHECK(rep.status == TheoremStatus::Confirmed);
  }
}

TEST_CASE("the theorem suite reports no violations on the corpus") {
  for (const auto& file : corpus::files()) {
    CAPTURE(file);
    const auto inst = corpus::load(file);
    SuiteOptions opts;
    opts.embedding = inst.embedding;
    if (!opts.embedding && inst.module->is_regular()) opts.embedding = inst.ring->one();
    const auto reps = theorem_suite(*inst.module, *inst.presentation, opts);
    CHECK(reps.size() == theorem_ids().size());
    for (const auto& r : reps) {
      CAPTURE(r.id);
      CHECK(r.status != TheoremStatus::Violation);
    }
  }
  for (const auto& M : small_modules()) {
    CAPTURE(M.label());
    const auto P = trivial_line(M.ring_ptr());
    SuiteOptions opts;
    opts.degree = 1;
    for (const auto& r : theorem_suite(M, *P, opts)) {
      CAPTURE(r.id);
      CHECK(r.status != TheoremStatus::Violation);
    }
  }
}

TEST_CASE("bounded skew-Armendariz agrees with naive enumeration") {
  // regular modules only: m f is the product in the reference algebra
  for (const auto& [file, d] : std::vector<std::pair<const char*, unsigned>>{
           {"z4.json", 2}, {"z2xz2_swap.json", 1}, {"weyl_dual_regular.json", 1}, {"ut2_z2.json", 1},
           {"z3_trivial.json", 1}, {"z2xz2_swap.json", 2}}) {
    CAPTURE(file);
    CAPTURE(d);
    const auto inst = corpus::load(file);
    const auto& P = *inst.presentation;
    const auto& R = P.ring();
    const oracle::RefAlgebra A(P);
    const auto mons = enumerate_upto(P.n(), d, P.order());
    std::vector<oracle::RefAlgebra::Poly> all;
    std::vector<std::size_t> digits(mons.size(), 0);
    for (;;) {
      oracle::RefAlgebra::Poly f;
      for (std::size_t k = 0; k < mons.size(); ++k) {
        std::vector<unsigned> e(P.n());
        for (std::size_t v = 0; v < P.n(); ++v) e[v] = mons[k][v];
        f = A.add(f, A.monomial(e, static_cast<int>(digits[k])));
      }
      all.push_back(f);
      std::size_t k = 0;
      while (k < digits.size() && ++digits[k] == R.order()) digits[k++] = 0;
      if (k == digits.size()) break;
    }
    const std::vector<unsigned> origin(P.n(), 0);
    bool holds = true;
    for (const auto& m : all) {
      const auto it = m.find(origin);
      const int m0 = it == m.end() ? R.zero() : it->second;
      if (m0 == R.zero()) continue;
      for (const auto& f : all) {
        bool kills_all = true;
        for (const auto& [beta, b] : f) kills_all = kills_all && R.mul(static_cast<Elem>(m0), static_cast<Elem>(b)) == R.zero();
        if (!kills_all && A.mul(m, f).empty()) holds = false;
      }
      if (!holds) break;
    }
    const auto v = is_skew_armendariz_bounded(*inst.module, P, d);
    CHECK(v.holds() == holds);
  }
}
