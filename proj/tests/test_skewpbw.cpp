#include <doctest.h>

#include "spbw/cli/instance.hpp"
#include "spbw/error.hpp"
#include "spbw/literal.hpp"
#include "spbw/skewpbw.hpp"
#include "support/corpus.hpp"
#include "support/gen.hpp"
#include "support/oracles.hpp"

using namespace spbw;
using spbw::cli::parse_instance;

namespace {

const char* kHeisenberg = R"({
  "ring": "Z2", "variables": 3,
  "relations": [{"i": 1, "j": 2, "c": "1", "d": "x3"},
                {"i": 1, "j": 3, "c": "1"},
                {"i": 2, "j": 3, "c": "1"}]
})";

// [x2,x1] = x3, [x3,x1] = x1, [x3,x2] = 0 breaks the Jacobi identity.
const char* kBrokenJacobi = R"({
  "ring": "Z2", "variables": 3,
  "relations": [{"i": 1, "j": 2, "c": "1", "d": "x3"},
                {"i": 1, "j": 3, "c": "1", "d": "x1"},
                {"i": 2, "j": 3, "c": "1"}]
})";

const char* kCommutativeZ6 = R"({
  "ring": "Z6", "variables": 2, "relations": [{"i": 1, "j": 2, "c": "1"}]
})";

const char* kQuadraticTail =
    R"({"ring":"Z5","variables":2,"relations":[{"i":1,"j":2,"c":"1","d":"x1*x2"}]})";
const char* kFalseQuasiCommutative =
    R"js({"ring":"Z2[y]/(y^2)","variables":1,"delta":"d/dy","claims":{"quasi_commutative":true}})js";
const char* kFalseBijective =
    R"({"ring":"Z4","variables":2,"relations":[{"i":1,"j":2,"c":"2"}],"claims":{"bijective":true}})";

SkewPoly P_(const Presentation& P, const std::string& s) { return parse_poly(P, s); }

Errc code_of(const auto& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::BadTable;
}

GenWord word_of(const SkewPoly& f, const MultiIndex& alpha) {
  GenWord w{Token::coeff(f.coeff(alpha))};
  for (std::size_t k = 0; k < alpha.size(); ++k)
    for (unsigned e = 0; e < alpha[k]; ++e) w.push_back(Token::var(k + 1));
  return w;
}

}  // namespace

TEST_CASE("presentation validation") {
  const auto qp = corpus::load("quantum_plane_z5.json");
  CHECK(qp.presentation->quasi_commutative());
  CHECK(qp.presentation->bijective());
  const auto weyl = corpus::load("weyl_dual_regular.json");
  CHECK_FALSE(weyl.presentation->quasi_commutative());
  CHECK(weyl.presentation->bijective());
  CHECK(weyl.presentation->certificate().bound >= 4);

  CHECK(code_of([] {
          (void)parse_instance(R"({"ring":"Z5","variables":2,"relations":[{"i":1,"j":2,"c":"0"}]})");
        }) == Errc::ZeroCij);
  CHECK(code_of([] { (void)parse_instance(R"({"ring":"Z5","variables":2})"); }) == Errc::MissingRelation);
  CHECK(code_of([] { (void)parse_instance(kQuadraticTail); }) == Errc::HigherOrderRelation);
}

TEST_CASE("zero-divisor relation constants pass structure but are not bijective") {
  const auto z4 = parse_instance(R"({"ring":"Z4","variables":2,"relations":[{"i":1,"j":2,"c":"2"}]})");
  CHECK_FALSE(z4.presentation->bijective());
  CHECK(z4.presentation->quasi_commutative());
  CHECK(z4.presentation->certificate().overlaps > 0);
}

TEST_CASE("claimed flags are checked against the computed ones") {
  CHECK(code_of([] { (void)parse_instance(kFalseQuasiCommutative); }) == Errc::QuasiCommutativeViolation);
  CHECK(code_of([] { (void)parse_instance(kFalseBijective); }) == Errc::BijectiveViolation);
}

TEST_CASE("Lie-type relations: Jacobi holds, consistent") {
  const auto h = parse_instance(kHeisenberg);
  const Presentation& P = *h.presentation;
  CHECK(mul(P_(P, "x2"), P_(P, "x1")) == P_(P, "x1*x2 + x3"));
  const auto r = P.check_consistency(5, 64, 1);
  CHECK(r.consistent());
}

TEST_CASE("Lie-type relations: a broken Jacobi identity is caught") {
  CHECK(code_of([] { (void)parse_instance(kBrokenJacobi); }) == Errc::InconsistentPresentation);
  const auto R = std::make_shared<const FiniteRing>(FiniteRing::integers_mod(2));
  PresentationData d;
  d.ring = R;
  d.n = 3;
  for (int i = 0; i < 3; ++i) {
    d.sigmas.push_back(RingMap::identity(*R));
    d.deltas.push_back(RingMap::zero_derivation(*R, d.sigmas.back()));
  }
  d.relations[{1, 2}] = QuadRelation{1, AffinePart{0, {0, 0, 1}}};
  d.relations[{1, 3}] = QuadRelation{1, AffinePart{0, {1, 0, 0}}};
  d.relations[{2, 3}] = QuadRelation{1, AffinePart{0, {0, 0, 0}}};
  const auto P = Presentation::create_unchecked(d);
  const auto r = P->check_consistency(4, 0, 1);
  REQUIRE_FALSE(r.consistent());
  CHECK_FALSE(r.witness->left == r.witness->right);
  // both sides are normal forms of the same word
  CHECK(r.witness->word.size() == 3);
}

TEST_CASE("normalize examples") {
  const auto z3 = corpus::load("z3_trivial.json");
  const Presentation& C = *z3.presentation;
  CHECK(C.normalize({Token::var(1), Token::coeff(2)}) == P_(C, "2*x1"));

  const auto qp = corpus::load("quantum_plane_z5.json");
  const Presentation& Q = *qp.presentation;
  CHECK(Q.normalize({Token::var(2), Token::var(1)}) == P_(Q, "2*x1*x2"));

  const auto weyl = corpus::load("weyl_dual_regular.json");
  const Presentation& W = *weyl.presentation;
  const Elem y = *W.ring().find("y");
  CHECK(W.normalize({Token::var(1), Token::var(1), Token::coeff(y)}) == SkewPoly::monomial(W, MultiIndex{2}, y));
}

TEST_CASE("mul examples") {
  const auto weyl = corpus::load("weyl_dual_regular.json");
  const Presentation& W = *weyl.presentation;
  CHECK(to_string(mul(P_(W, "x1"), P_(W, "y"))) == "y*x1 + 1");
  const auto qp = corpus::load("quantum_plane_z5.json");
  const Presentation& Q = *qp.presentation;
  CHECK(mul(P_(Q, "x2"), P_(Q, "x1*x2")) == P_(Q, "2*x1*x2^2"));
  CHECK(to_string(mul(P_(Q, "x2"), P_(Q, "x1"))) == "2*x1*x2");
}

TEST_CASE("mixing presentations is an error") {
  const auto a = corpus::load("z3_trivial.json"), b = corpus::load("z3_trivial.json");
  CHECK(code_of([&] { (void)mul(a.presentation->one(), b.presentation->one()); }) == Errc::PresentationMismatch);
}

TEST_CASE("alpha_commute examples") {
  const auto weyl = corpus::load("weyl_dual_regular.json");
  const Presentation& W = *weyl.presentation;
  const Elem y = *W.ring().find("y");
  auto [r0, p0] = W.alpha_commute(MultiIndex{0}, y);
  CHECK(r0 == y);
  CHECK(p0.is_zero());
  auto [r2, p2] = W.alpha_commute(MultiIndex{2}, y);
  CHECK(r2 == y);
  CHECK(p2.is_zero());
  auto [r1, p1] = W.alpha_commute(MultiIndex{1}, y);
  CHECK(r1 == y);
  CHECK(p1 == W.one());

  const auto sw = corpus::load("z2xz2_swap.json");
  const Presentation& S = *sw.presentation;
  const Elem e = *S.ring().find("(1,0)"), f = *S.ring().find("(0,1)");
  auto [s1, q1] = S.alpha_commute(MultiIndex{1}, e);
  CHECK(s1 == f);
  CHECK(q1.is_zero());
  auto [s2, q2] = S.alpha_commute(MultiIndex{2}, e);
  CHECK(s2 == e);
  CHECK(q2.is_zero());
}

TEST_CASE("monomial_product examples") {
  const auto qp = corpus::load("quantum_plane_z5.json");
  const Presentation& Q = *qp.presentation;
  auto [c, p] = Q.monomial_product(MultiIndex{0, 1}, MultiIndex{1, 0});
  CHECK(Q.ring().name(c) == "2");
  CHECK(p.is_zero());
  auto [c0, p0] = Q.monomial_product(MultiIndex{2, 1}, MultiIndex{0, 0});
  CHECK(c0 == Q.ring().one());
  CHECK(p0.is_zero());
  const auto z3 = corpus::load("z3_trivial.json");
  auto [c1, p1] = z3.presentation->monomial_product(MultiIndex{1, 2}, MultiIndex{2, 1});
  CHECK(c1 == z3.presentation->ring().one());
  CHECK(p1.is_zero());
}

TEST_CASE("leading data") {
  const auto qp = corpus::load("quantum_plane_z5.json");
  const Presentation& Q = *qp.presentation;
  const auto f = P_(Q, "3*x1 + x1*x2");
  CHECK(f.lm() == P_(Q, "x1*x2"));
  CHECK(f.lc() == Q.ring().one());
  CHECK(f.deg() == 2);
  CHECK(f.exp() == MultiIndex{1, 1});
  const auto r = P_(Q, "4");
  CHECK(r.lm() == Q.one());
  CHECK(Q.ring().name(r.lc()) == "4");
  const SkewPoly z(Q);
  CHECK(z.lm().is_zero());
  CHECK(z.lc() == Q.ring().zero());
  CHECK(z.lt().is_zero());
  CHECK(z.deg() == -1);
}

TEST_CASE("Weyl powers match the binomial closed form") {
  // x^k r = sum_i C(k,i) delta^i(r) x^(k-i) when sigma = id.
  const auto weyl = corpus::load("weyl_dual_regular.json");
  const Presentation& W = *weyl.presentation;
  const FiniteRing& R = W.ring();
  for (unsigned k = 0; k <= 5; ++k)
    for (Elem r = 0; r < R.order(); ++r) {
      SkewPoly expect(W);
      Elem dr = r;
      unsigned long binom = 1;
      for (unsigned i = 0; i <= k; ++i) {
        expect.add_term(MultiIndex{k - i}, R.times(dr, binom));
        dr = W.delta(1)(dr);
        binom = binom * (k - i) / (i + 1);
      }
      CHECK(mul(SkewPoly::monomial(W, MultiIndex{k}, R.one()), SkewPoly::constant(W, r)) == expect);
    }
}

TEST_CASE("quantum plane powers match q^(ab)") {
  const auto qp = corpus::load("quantum_plane_z5.json");
  const Presentation& Q = *qp.presentation;
  const FiniteRing& R = Q.ring();
  for (unsigned a = 0; a <= 3; ++a)
    for (unsigned b = 0; b <= 3; ++b) {
      unsigned long c = 1;
      for (unsigned k = 0; k < a * b; ++k) c = c * 2 % 5;
      const auto lhs = mul(SkewPoly::monomial(Q, MultiIndex{0, a}, R.one()),
                           SkewPoly::monomial(Q, MultiIndex{b, 0}, R.one()));
      CHECK(lhs == SkewPoly::monomial(Q, MultiIndex{b, a}, *R.find(std::to_string(c))));
    }
}

TEST_CASE("mul agrees with ordinary polynomial multiplication on a commutative presentation") {
  const auto inst = parse_instance(kCommutativeZ6);
  const Presentation& P = *inst.presentation;
  const long bad = gen::forall(21, 300, [&](gen::Gen& g, std::size_t) {
    const auto f = g.poly(P, 4, 6), h = g.poly(P, 4, 6);
    return oracle::to_cpoly(mul(f, h)) == oracle::comm_mul(oracle::to_cpoly(f), oracle::to_cpoly(h), 6);
  });
  CHECK(bad == -1);
}

TEST_CASE("mul agrees with the recursive reference algebra") {
  std::vector<cli::Instance> insts;
  for (const auto& f : corpus::files()) insts.push_back(corpus::load(f));
  insts.push_back(parse_instance(kHeisenberg));
  insts.push_back(parse_instance(R"({"ring":"Z4","variables":2,"relations":[{"i":1,"j":2,"c":"3","d":"2 + x1"}]})"));
  for (const auto& inst : insts) {
    const Presentation& P = *inst.presentation;
    const oracle::RefAlgebra ref(P);
    CAPTURE(inst.name);
    const long bad = gen::forall(5, 150, [&](gen::Gen& g, std::size_t) {
      const auto f = g.poly(P, 3, 4), h = g.poly(P, 3, 4);
      return ref.from(mul(f, h)) == ref.mul(ref.from(f), ref.from(h));
    });
    CHECK(bad == -1);
  }
}

TEST_CASE("ring axioms in A") {
  for (const auto& file : corpus::files()) {
    const auto inst = corpus::load(file);
    const Presentation& P = *inst.presentation;
    CAPTURE(file);
    const long bad = gen::forall(9, 80, [&](gen::Gen& g, std::size_t) {
      const auto f = g.poly(P, 3, 3), h = g.poly(P, 3, 3), k = g.poly(P, 3, 3);
      return mul(mul(f, h), k) == mul(f, mul(h, k)) && mul(f, h + k) == mul(f, h) + mul(f, k) &&
             mul(h + k, f) == mul(h, f) + mul(k, f) && mul(P.one(), f) == f && mul(f, P.one()) == f &&
             f + (-f) == P.zero();
    });
    CHECK(bad == -1);
  }
}

TEST_CASE("normal forms are idempotent") {
  for (const auto& file : corpus::files()) {
    const auto inst = corpus::load(file);
    const Presentation& P = *inst.presentation;
    const long bad = gen::forall(13, 100, [&](gen::Gen& g, std::size_t) {
      GenWord w;
      const std::size_t len = g.below(7);
      for (std::size_t k = 0; k < len; ++k)
        w.push_back(g.coin() ? Token::var(1 + g.below(P.n())) : Token::coeff(g.elem(P.ring())));
      const auto nf = P.normalize(w);
      std::vector<WordTerm> sum;
      for (const auto& [alpha, r] : nf.terms()) sum.push_back({P.ring().one(), word_of(nf, alpha)});
      return P.normalize_sum(sum) == nf;
    });
    CHECK(bad == -1);
  }
}

TEST_CASE("alpha_commute and monomial_product recombine") {
  for (const auto& file : corpus::files()) {
    const auto inst = corpus::load(file);
    const Presentation& P = *inst.presentation;
    const FiniteRing& R = P.ring();
    CAPTURE(file);
    for (const auto& alpha : enumerate_upto(P.n(), 3, P.order())) {
      for (Elem r = 0; r < R.order(); ++r) {
        auto [ra, p] = P.alpha_commute(alpha, r);
        CHECK(ra == P.sigma_power(alpha, r));
        CHECK(mul(SkewPoly::monomial(P, alpha, R.one()), SkewPoly::constant(P, r)) ==
              SkewPoly::monomial(P, alpha, ra) + p);
        if (!p.is_zero()) CHECK(p.deg() < static_cast<int>(degree(alpha)));
      }
      for (const auto& beta : enumerate_upto(P.n(), 2, P.order())) {
        auto [c, p] = P.monomial_product(alpha, beta);
        const auto top = add(alpha, beta);
        CHECK(mul(SkewPoly::monomial(P, alpha, R.one()), SkewPoly::monomial(P, beta, R.one())) ==
              SkewPoly::monomial(P, top, c) + p);
        if (!p.is_zero()) CHECK(p.deg() < static_cast<int>(degree(top)));
        if (P.bijective()) {
          bool left_invertible = false;
          for (Elem v = 0; v < R.order(); ++v) left_invertible = left_invertible || R.mul(v, c) == R.one();
          CHECK(left_invertible);
        }
      }
    }
  }
}

TEST_CASE("leading coefficient of a product") {
  for (const auto& file : corpus::files()) {
    const auto inst = corpus::load(file);
    const Presentation& P = *inst.presentation;
    if (!P.bijective() || P.order().kind() != OrderKind::DegLex) continue;
    const FiniteRing& R = P.ring();
    const long bad = gen::forall(17, 200, [&](gen::Gen& g, std::size_t) {
      const auto f = g.poly(P, 3, 3), h = g.poly(P, 3, 3);
      if (f.is_zero() || h.is_zero()) return true;
      const auto [c, rest] = P.monomial_product(f.exp(), h.exp());
      const Elem lead = R.mul(R.mul(f.lc(), P.sigma_power(f.exp(), h.lc())), c);
      const auto fh = mul(f, h);
      if (lead == R.zero()) return fh.coeff(add(f.exp(), h.exp())) == R.zero();
      return fh.exp() == add(f.exp(), h.exp()) && fh.lc() == lead;
    });
    CHECK(bad == -1);
  }
}

TEST_CASE("polynomial literals round-trip") {
  for (const auto& file : corpus::files()) {
    const auto inst = corpus::load(file);
    const Presentation& P = *inst.presentation;
    const long bad = gen::forall(3, 100, [&](gen::Gen& g, std::size_t) {
      const auto f = g.poly(P, 3, 4);
      return parse_poly(P, to_string(f)) == f;
    });
    CHECK(bad == -1);
  }
}

TEST_CASE("polynomial literal errors") {
  const auto qp = corpus::load("quantum_plane_z5.json");
  const Presentation& Q = *qp.presentation;
  CHECK(code_of([&] { (void)parse_poly(Q, "x1 +"); }) == Errc::ParseError);
  CHECK(code_of([&] { (void)parse_poly(Q, "x3"); }) == Errc::ParseError);
  CHECK(code_of([&] { (void)parse_poly(Q, "7*x1"); }) == Errc::UnknownName);
  CHECK(parse_poly(Q, " 3 * x1 ^ 2 * x2 + x1 ") == P_(Q, "3*x1^2*x2+x1"));
  // a term is a word in A, so x2*x1 is normalized
  CHECK(parse_poly(Q, "x2*x1") == P_(Q, "2*x1*x2"));
  CHECK(code_of([&] { (void)parse_affine(Q.ring(), 2, "x1*x2"); }) == Errc::HigherOrderRelation);
}

TEST_CASE("reference algebra reproduces the defining relations") {
  const auto weyl = corpus::load("weyl_dual_regular.json");
  const oracle::RefAlgebra W(*weyl.presentation);
  const int y = *weyl.ring->find("y"), one = weyl.ring->one();
  const auto xy = W.mul(W.monomial({1}, one), W.monomial({0}, y));
  CHECK(xy == oracle::RefAlgebra::Poly{{{1}, y}, {{0}, one}});

  const auto h = parse_instance(kHeisenberg);
  const oracle::RefAlgebra H(*h.presentation);
  const auto x2x1 = H.mul(H.monomial({0, 1, 0}, 1), H.monomial({1, 0, 0}, 1));
  CHECK(x2x1 == oracle::RefAlgebra::Poly{{{1, 1, 0}, 1}, {{0, 0, 1}, 1}});
}
