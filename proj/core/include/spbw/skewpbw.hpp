#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spbw/finring.hpp"
#include "spbw/monomial.hpp"

namespace spbw {

class Presentation;

/// One letter of a word in A: a ring element or a variable x_i (1-based).
struct Token {
  bool is_var = false;
  Elem value = 0;

  static Token coeff(Elem r) { return {false, r}; }
  static Token var(std::size_t i) { return {true, static_cast<Elem>(i)}; }
  friend bool operator==(const Token&, const Token&) = default;
  friend auto operator<=>(const Token&, const Token&) = default;
};

using GenWord = std::vector<Token>;

/// r * word, one summand of a formal sum of words.
struct WordTerm {
  Elem coeff;
  GenWord word;
};

/// Element of A in the left R-basis of standard monomials. Never stores zero
/// coefficients.
class SkewPoly {
 public:
  using TermMap = std::map<MultiIndex, Elem>;

  explicit SkewPoly(const Presentation& p) : p_(&p) {}
  static SkewPoly constant(const Presentation& p, Elem r);
  static SkewPoly monomial(const Presentation& p, const MultiIndex& alpha, Elem r);
  static SkewPoly variable(const Presentation& p, std::size_t i);

  const Presentation& presentation() const { return *p_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  Elem coeff(const MultiIndex& alpha) const;

  /// Adds r x^alpha, merging with an existing term.
  void add_term(const MultiIndex& alpha, Elem r);

  /// Terms in descending monomial order.
  std::vector<std::pair<MultiIndex, Elem>> sorted_terms() const;

  /// Leading data under the presentation's order; lm(0) = lc(0) = lt(0) = 0.
  SkewPoly lm() const;
  Elem lc() const;
  SkewPoly lt() const;
  /// exp(0) is the zero vector.
  MultiIndex exp() const;
  /// Total degree; -1 for the zero polynomial.
  int deg() const;

  friend bool operator==(const SkewPoly& a, const SkewPoly& b) { return a.p_ == b.p_ && a.terms_ == b.terms_; }

 private:
  const Presentation* p_;
  TermMap terms_;
};

SkewPoly operator+(const SkewPoly& f, const SkewPoly& g);
SkewPoly operator-(const SkewPoly& f, const SkewPoly& g);
SkewPoly operator-(const SkewPoly& f);
SkewPoly operator*(const SkewPoly& f, const SkewPoly& g);
SkewPoly mul(const SkewPoly& f, const SkewPoly& g);
SkewPoly scalar_mul_left(Elem r, const SkewPoly& f);

/// d_{i,j} = r0 + sum_k r^k x_k.
struct AffinePart {
  Elem constant = 0;
  std::vector<Elem> linear;
};

/// x_j x_i = c x_i x_j + d for i < j.
struct QuadRelation {
  Elem c = 0;
  AffinePart d;
};

/// Unvalidated presentation data; Presentation::create checks it.
struct PresentationData {
  std::shared_ptr<const FiniteRing> ring;
  std::size_t n = 1;
  std::vector<RingMap> sigmas;
  std::vector<RingMap> deltas;
  /// Keyed by 1-based (i, j), i < j.
  std::map<std::pair<std::size_t, std::size_t>, QuadRelation> relations;
  std::optional<MonomialOrder> order;
  std::optional<bool> claim_quasi_commutative;
  std::optional<bool> claim_bijective;
  unsigned consistency_bound = 4;
  std::size_t fuzz_triples = 24;
  std::uint64_t seed = 0x5eed;
};

struct ConsistencyCertificate {
  unsigned bound = 0;
  std::size_t overlaps = 0;
  std::size_t fuzz_triples = 0;
  std::uint64_t seed = 0;
};

struct ConsistencyWitness {
  GenWord word;
  std::string detail;
  SkewPoly left;
  SkewPoly right;
};

struct ConsistencyResult {
  ConsistencyCertificate certificate;
  std::optional<ConsistencyWitness> witness;
  bool consistent() const { return !witness.has_value(); }
};

/// A validated skew PBW extension A = sigma(R)<x1, ..., xn>.
class Presentation {
 public:
  /// Throws ZeroCij{i,j}, MissingRelation{i,j}, NotSigmaDerivation{i},
  /// QuasiCommutativeViolation, BijectiveViolation, InconsistentPresentation.
  static std::shared_ptr<const Presentation> create(PresentationData data);
  /// Skips the consistency screen; for tests that probe inconsistent data.
  static std::shared_ptr<const Presentation> create_unchecked(PresentationData data);

  const FiniteRing& ring() const { return *ring_; }
  std::shared_ptr<const FiniteRing> ring_ptr() const { return ring_; }
  std::size_t n() const { return n_; }
  const RingMap& sigma(std::size_t i) const { return sigmas_[i - 1]; }
  const RingMap& delta(std::size_t i) const { return deltas_[i - 1]; }
  const std::vector<RingMap>& sigmas() const { return sigmas_; }
  const std::vector<RingMap>& deltas() const { return deltas_; }
  const QuadRelation& relation(std::size_t i, std::size_t j) const { return rel_[(i - 1) * n_ + (j - 1)]; }
  const MonomialOrder& order() const { return order_; }
  bool quasi_commutative() const { return quasi_commutative_; }
  bool bijective() const { return bijective_; }
  const ConsistencyCertificate& certificate() const { return certificate_; }
  /// The validated input, for re-serialization.
  const PresentationData& data() const { return data_; }

  /// sigma^alpha = sigma_1^a1 o ... o sigma_n^an (sigma_n applied first).
  Elem sigma_power(const MultiIndex& alpha, Elem r) const;

  SkewPoly zero() const { return SkewPoly(*this); }
  SkewPoly one() const { return SkewPoly::constant(*this, ring_->one()); }

  /// Normal form of a word in the standard-monomial basis.
  SkewPoly normalize(const GenWord& w) const;
  SkewPoly normalize_sum(const std::vector<WordTerm>& sum) const;
  /// Applies the rewrite rule at position pos (Var Coeff or Var_j Var_i with
  /// j > i); returns nullopt when there is no redex there.
  std::optional<std::vector<WordTerm>> rewrite_once(const GenWord& w, std::size_t pos) const;

  /// x^alpha r = r_alpha x^alpha + p.
  std::pair<Elem, SkewPoly> alpha_commute(const MultiIndex& alpha, Elem r) const;
  /// x^alpha x^beta = c x^(alpha+beta) + p.
  std::pair<Elem, SkewPoly> monomial_product(const MultiIndex& alpha, const MultiIndex& beta) const;

  /// The word r x1^a1 ... xn^an for each term of f.
  std::vector<WordTerm> words(const SkewPoly& f) const;

  /// Overlap scan plus associativity fuzzing up to the bound.
  ConsistencyResult check_consistency(unsigned bound, std::size_t fuzz_triples, std::uint64_t seed) const;

 private:
  Presentation() = default;
  static std::shared_ptr<Presentation> build(PresentationData data);

  std::shared_ptr<const FiniteRing> ring_;
  std::size_t n_ = 0;
  std::vector<RingMap> sigmas_;
  std::vector<RingMap> deltas_;
  std::vector<QuadRelation> rel_;
  MonomialOrder order_;
  bool quasi_commutative_ = false;
  bool bijective_ = false;
  ConsistencyCertificate certificate_;
  PresentationData data_;
};

/// Throws PresentationMismatch unless both live in the same presentation.
void require_same(const Presentation& a, const Presentation& b);

/// Random polynomial with support in degree <= max_deg and at most max_terms terms.
template <class Rng>
SkewPoly random_poly(const Presentation& p, Rng& rng, unsigned max_deg, std::size_t max_terms);

}  // namespace spbw

#include "spbw/detail/random_poly.ipp"
