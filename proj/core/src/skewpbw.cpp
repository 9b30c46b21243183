#include "spbw/skewpbw.hpp"

#include <algorithm>
#include <random>

#include "spbw/literal.hpp"

namespace spbw {

// ---------------------------------------------------------------- SkewPoly

SkewPoly SkewPoly::constant(const Presentation& p, Elem r) {
  SkewPoly f(p);
  f.add_term(MultiIndex(p.n()), r);
  return f;
}

SkewPoly SkewPoly::monomial(const Presentation& p, const MultiIndex& alpha, Elem r) {
  SkewPoly f(p);
  f.add_term(alpha, r);
  return f;
}

SkewPoly SkewPoly::variable(const Presentation& p, std::size_t i) {
  return monomial(p, MultiIndex::unit(p.n(), i), p.ring().one());
}

Elem SkewPoly::coeff(const MultiIndex& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? p_->ring().zero() : it->second;
}

void SkewPoly::add_term(const MultiIndex& alpha, Elem r) {
  const FiniteRing& R = p_->ring();
  if (r == R.zero()) return;
  if (alpha.size() != p_->n())
    throw Error(Errc::LengthMismatch, "term has " + std::to_string(alpha.size()) + " exponents, expected " +
                                          std::to_string(p_->n()));
  auto [it, inserted] = terms_.try_emplace(alpha, r);
  if (inserted) return;
  it->second = R.add(it->second, r);
  if (it->second == R.zero()) terms_.erase(it);
}

std::vector<std::pair<MultiIndex, Elem>> SkewPoly::sorted_terms() const {
  std::vector<std::pair<MultiIndex, Elem>> out(terms_.begin(), terms_.end());
  const MonomialOrder& ord = p_->order();
  std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) { return ord.compare(a.first, b.first) > 0; });
  return out;
}

MultiIndex SkewPoly::exp() const {
  MultiIndex best(p_->n());
  bool first = true;
  for (const auto& [alpha, r] : terms_) {
    if (first || p_->order().greater(alpha, best)) best = alpha;
    first = false;
  }
  return best;
}

SkewPoly SkewPoly::lm() const {
  if (is_zero()) return SkewPoly(*p_);
  return monomial(*p_, exp(), p_->ring().one());
}

Elem SkewPoly::lc() const { return is_zero() ? p_->ring().zero() : coeff(exp()); }

SkewPoly SkewPoly::lt() const {
  if (is_zero()) return SkewPoly(*p_);
  const MultiIndex e = exp();
  return monomial(*p_, e, coeff(e));
}

int SkewPoly::deg() const {
  int d = -1;
  for (const auto& [alpha, r] : terms_) d = std::max(d, static_cast<int>(alpha.degree()));
  return d;
}

void require_same(const Presentation& a, const Presentation& b) {
  if (&a != &b) throw Error(Errc::PresentationMismatch, "operands belong to different presentations");
}

SkewPoly operator+(const SkewPoly& f, const SkewPoly& g) {
  require_same(f.presentation(), g.presentation());
  SkewPoly out = f;
  for (const auto& [alpha, r] : g.terms()) out.add_term(alpha, r);
  return out;
}

SkewPoly operator-(const SkewPoly& f) {
  SkewPoly out(f.presentation());
  for (const auto& [alpha, r] : f.terms()) out.add_term(alpha, f.presentation().ring().neg(r));
  return out;
}

SkewPoly operator-(const SkewPoly& f, const SkewPoly& g) { return f + (-g); }

SkewPoly scalar_mul_left(Elem r, const SkewPoly& f) {
  // r (a x^alpha) = (ra) x^alpha: no rewriting needed on the left.
  SkewPoly out(f.presentation());
  for (const auto& [alpha, a] : f.terms()) out.add_term(alpha, f.presentation().ring().mul(r, a));
  return out;
}

namespace {

void append_monomial(GenWord& w, const MultiIndex& alpha) {
  for (std::size_t k = 0; k < alpha.size(); ++k)
    for (unsigned e = 0; e < alpha[k]; ++e) w.push_back(Token::var(k + 1));
}

}  // namespace

SkewPoly mul(const SkewPoly& f, const SkewPoly& g) {
  require_same(f.presentation(), g.presentation());
  const Presentation& p = f.presentation();
  std::vector<WordTerm> sum;
  sum.reserve(f.size() * g.size());
  for (const auto& [alpha, a] : f.terms())
    for (const auto& [beta, b] : g.terms()) {
      GenWord w;
      append_monomial(w, alpha);
      w.push_back(Token::coeff(b));
      append_monomial(w, beta);
      sum.push_back({a, std::move(w)});
    }
  return p.normalize_sum(sum);
}

SkewPoly operator*(const SkewPoly& f, const SkewPoly& g) { return mul(f, g); }

// ------------------------------------------------------------ Presentation

namespace {

[[noreturn]] void fail(Errc code, const std::string& what, std::vector<std::int64_t> witness = {}) {
  throw Error(code, what, std::move(witness));
}

std::int64_t encode_token(const Token& t) { return t.is_var ? -static_cast<std::int64_t>(t.value) : t.value; }

std::size_t var_count(const GenWord& w) {
  return static_cast<std::size_t>(std::count_if(w.begin(), w.end(), [](const Token& t) { return t.is_var; }));
}

/// Highest degree first, so that merges of equal words happen before expansion.
struct PendingKey {
  std::size_t vars;
  GenWord word;
  friend bool operator<(const PendingKey& a, const PendingKey& b) {
    if (a.vars != b.vars) return a.vars > b.vars;
    return a.word < b.word;
  }
};

}  // namespace

std::shared_ptr<Presentation> Presentation::build(PresentationData data) {
  if (!data.ring) fail(Errc::BadTable, "presentation has no ring");
  const FiniteRing& R = *data.ring;
  const std::size_t n = data.n;
  if (n == 0) fail(Errc::BadTable, "a presentation needs at least one variable");
  if (n > kMaxVariables)
    fail(Errc::TooManyVariables, std::to_string(n) + " variables requested, at most " + std::to_string(kMaxVariables),
         {static_cast<std::int64_t>(n)});
  if (data.sigmas.size() != n || data.deltas.size() != n)
    fail(Errc::LengthMismatch, "expected " + std::to_string(n) + " sigma and delta maps");

  auto p = std::shared_ptr<Presentation>(new Presentation());
  p->ring_ = data.ring;
  p->n_ = n;
  for (std::size_t i = 0; i < n; ++i) {
    const RingMap& s = data.sigmas[i];
    const RingMap& d = data.deltas[i];
    if (s.kind() != MapKind::Endomorphism || s.table().size() != R.order())
      fail(Errc::BadTable, "sigma_" + std::to_string(i + 1) + " is not an endomorphism of the ring");
    if (d.kind() != MapKind::SigmaDerivation || d.table().size() != R.order() || d.base() != s.table())
      fail(Errc::NotSigmaDerivation, "delta_" + std::to_string(i + 1) + " is not a sigma_" + std::to_string(i + 1) +
                                         "-derivation",
           {static_cast<std::int64_t>(i + 1)});
  }
  p->sigmas_ = data.sigmas;
  p->deltas_ = data.deltas;

  for (const auto& [key, rel] : data.relations) {
    const auto [i, j] = key;
    if (i < 1 || j > n || i >= j)
      fail(Errc::BadTable, "relation index (" + std::to_string(i) + "," + std::to_string(j) + ") is out of range");
  }
  p->rel_.assign(n * n, QuadRelation{R.one(), AffinePart{R.zero(), std::vector<Elem>(n, R.zero())}});
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = i + 1; j <= n; ++j) {
      auto it = data.relations.find({i, j});
      const std::vector<std::int64_t> w{static_cast<std::int64_t>(i), static_cast<std::int64_t>(j)};
      if (it == data.relations.end())
        fail(Errc::MissingRelation, "no relation given for x" + std::to_string(j) + "*x" + std::to_string(i), w);
      QuadRelation rel = it->second;
      if (rel.c >= R.order() || rel.d.constant >= R.order()) fail(Errc::BadTable, "relation entry out of range", w);
      if (rel.c == R.zero())
        fail(Errc::ZeroCij, "c_{" + std::to_string(i) + "," + std::to_string(j) + "} must be nonzero", w);
      if (rel.d.linear.empty()) rel.d.linear.assign(n, R.zero());
      if (rel.d.linear.size() != n) fail(Errc::LengthMismatch, "relation linear part has the wrong length", w);
      for (Elem e : rel.d.linear)
        if (e >= R.order()) fail(Errc::BadTable, "relation entry out of range", w);
      p->rel_[(i - 1) * n + (j - 1)] = rel;
    }

  p->order_ = data.order.value_or(MonomialOrder::deglex(n));
  if (p->order_.precedence().size() != n) fail(Errc::LengthMismatch, "monomial order has the wrong number of variables");

  bool qc = std::all_of(p->deltas_.begin(), p->deltas_.end(), [&](const RingMap& d) { return d.is_zero(R); });
  std::optional<std::pair<std::size_t, std::size_t>> non_unit;
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = i + 1; j <= n; ++j) {
      const QuadRelation& rel = p->relation(i, j);
      if (rel.d.constant != R.zero() ||
          std::any_of(rel.d.linear.begin(), rel.d.linear.end(), [&](Elem e) { return e != R.zero(); }))
        qc = false;
      if (!non_unit && !is_invertible(R, rel.c)) non_unit = {i, j};
    }
  p->quasi_commutative_ = qc;
  // Injective self-maps of a finite ring are bijective, so only c_{i,j} matter.
  p->bijective_ = !non_unit.has_value();

  if (data.claim_quasi_commutative && *data.claim_quasi_commutative != qc)
    fail(Errc::QuasiCommutativeViolation,
         std::string("instance claims the extension is ") + (qc ? "not " : "") + "quasi-commutative, but it is" +
             (qc ? "" : " not"));
  if (data.claim_bijective && *data.claim_bijective != p->bijective_) {
    std::vector<std::int64_t> w;
    if (non_unit) w = {static_cast<std::int64_t>(non_unit->first), static_cast<std::int64_t>(non_unit->second)};
    fail(Errc::BijectiveViolation,
         std::string("instance claims the extension is ") + (p->bijective_ ? "not " : "") + "bijective, but it is" +
             (p->bijective_ ? "" : " not"),
         w);
  }
  p->data_ = std::move(data);
  return p;
}

std::shared_ptr<const Presentation> Presentation::create(PresentationData data) {
  const unsigned bound = data.consistency_bound;
  const std::size_t fuzz = data.fuzz_triples;
  const std::uint64_t seed = data.seed;
  auto p = build(std::move(data));
  ConsistencyResult res = p->check_consistency(bound, fuzz, seed);
  if (!res.consistent()) {
    std::vector<std::int64_t> w;
    for (const Token& t : res.witness->word) w.push_back(encode_token(t));
    fail(Errc::InconsistentPresentation,
         "presentation is inconsistent: " + res.witness->detail + " gives " + to_string(res.witness->left) +
             " and " + to_string(res.witness->right),
         w);
  }
  p->certificate_ = res.certificate;
  return p;
}

std::shared_ptr<const Presentation> Presentation::create_unchecked(PresentationData data) {
  return build(std::move(data));
}

Elem Presentation::sigma_power(const MultiIndex& alpha, Elem r) const {
  for (std::size_t k = n_; k-- > 0;)
    for (unsigned e = 0; e < alpha[k]; ++e) r = sigmas_[k](r);
  return r;
}

std::optional<std::vector<WordTerm>> Presentation::rewrite_once(const GenWord& w, std::size_t pos) const {
  if (pos + 1 >= w.size() || !w[pos].is_var) return std::nullopt;
  const FiniteRing& R = *ring_;
  const Token a = w[pos], b = w[pos + 1];
  auto splice = [&](std::initializer_list<Token> mid) {
    GenWord out(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(pos));
    out.insert(out.end(), mid);
    out.insert(out.end(), w.begin() + static_cast<std::ptrdiff_t>(pos + 2), w.end());
    return out;
  };
  std::vector<WordTerm> out;
  if (!b.is_var) {
    // x_i r = sigma_i(r) x_i + delta_i(r)
    const std::size_t i = a.value;
    out.push_back({R.one(), splice({Token::coeff(sigma(i)(b.value)), Token::var(i)})});
    const Elem d = delta(i)(b.value);
    if (d != R.zero()) out.push_back({R.one(), splice({Token::coeff(d)})});
    return out;
  }
  if (b.value >= a.value) return std::nullopt;
  // x_j x_i = c x_i x_j + sum_k r^k x_k + r0, for i < j
  const std::size_t j = a.value, i = b.value;
  const QuadRelation& rel = relation(i, j);
  out.push_back({R.one(), splice({Token::coeff(rel.c), Token::var(i), Token::var(j)})});
  for (std::size_t k = 1; k <= n_; ++k)
    if (rel.d.linear[k - 1] != R.zero())
      out.push_back({R.one(), splice({Token::coeff(rel.d.linear[k - 1]), Token::var(k)})});
  if (rel.d.constant != R.zero()) out.push_back({R.one(), splice({Token::coeff(rel.d.constant)})});
  return out;
}

SkewPoly Presentation::normalize(const GenWord& w) const { return normalize_sum({WordTerm{ring_->one(), w}}); }

SkewPoly Presentation::normalize_sum(const std::vector<WordTerm>& sum) const {
  const FiniteRing& R = *ring_;
  std::map<PendingKey, Elem> pending;

  auto push = [&](Elem a, const GenWord& w) {
    if (a == R.zero()) return;
    GenWord c;
    c.reserve(w.size());
    for (const Token& t : w) {
      if (!t.is_var) {
        if (t.value == R.zero()) return;
        if (!c.empty() && !c.back().is_var) {
          c.back().value = R.mul(c.back().value, t.value);
          if (c.back().value == R.zero()) return;
          continue;
        }
      }
      c.push_back(t);
    }
    std::erase_if(c, [&](const Token& t) { return !t.is_var && t.value == R.one(); });
    if (!c.empty() && !c.front().is_var) {
      a = R.mul(a, c.front().value);
      c.erase(c.begin());
      if (a == R.zero()) return;
    }
    PendingKey key{var_count(c), std::move(c)};
    auto [it, inserted] = pending.try_emplace(std::move(key), a);
    if (!inserted) {
      it->second = R.add(it->second, a);
      if (it->second == R.zero()) pending.erase(it);
    }
  };

  for (const WordTerm& t : sum) push(t.coeff, t.word);

  SkewPoly out(*this);
  while (!pending.empty()) {
    auto node = pending.extract(pending.begin());
    const Elem a = node.mapped();
    const GenWord& w = node.key().word;
    std::size_t pos = 0;
    for (; pos + 1 < w.size(); ++pos)
      if (w[pos].is_var && (!w[pos + 1].is_var || w[pos + 1].value < w[pos].value)) break;
    if (pos + 1 >= w.size()) {
      MultiIndex alpha(n_);
      for (const Token& t : w) alpha.set(t.value - 1, alpha[t.value - 1] + 1);
      out.add_term(alpha, a);
      continue;
    }
    const auto rewritten = rewrite_once(w, pos);
    for (const WordTerm& t : *rewritten) push(R.mul(a, t.coeff), t.word);
  }
  return out;
}

std::pair<Elem, SkewPoly> Presentation::alpha_commute(const MultiIndex& alpha, Elem r) const {
  GenWord w;
  append_monomial(w, alpha);
  w.push_back(Token::coeff(r));
  SkewPoly nf = normalize(w);
  const Elem ra = sigma_power(alpha, r);
  return {ra, nf - SkewPoly::monomial(*this, alpha, ra)};
}

std::pair<Elem, SkewPoly> Presentation::monomial_product(const MultiIndex& alpha, const MultiIndex& beta) const {
  GenWord w;
  append_monomial(w, alpha);
  append_monomial(w, beta);
  SkewPoly nf = normalize(w);
  const MultiIndex top = add(alpha, beta);
  const Elem c = nf.coeff(top);
  return {c, nf - SkewPoly::monomial(*this, top, c)};
}

std::vector<WordTerm> Presentation::words(const SkewPoly& f) const {
  std::vector<WordTerm> out;
  for (const auto& [alpha, r] : f.terms()) {
    GenWord w{Token::coeff(r)};
    append_monomial(w, alpha);
    out.push_back({ring_->one(), std::move(w)});
  }
  return out;
}

ConsistencyResult Presentation::check_consistency(unsigned bound, std::size_t fuzz_triples,
                                                  std::uint64_t seed) const {
  const FiniteRing& R = *ring_;
  ConsistencyResult res;
  res.certificate = {bound, 0, 0, seed};

  auto routes = [&](const GenWord& w, std::size_t p1, std::size_t p2, const std::string& detail) {
    ++res.certificate.overlaps;
    SkewPoly left = normalize_sum(*rewrite_once(w, p1));
    SkewPoly right = normalize_sum(*rewrite_once(w, p2));
    if (left == right) return true;
    res.witness = ConsistencyWitness{w, detail, std::move(left), std::move(right)};
    return false;
  };

  for (std::size_t i = 1; i <= n_; ++i)
    for (std::size_t j = i + 1; j <= n_; ++j)
      for (std::size_t k = j + 1; k <= n_; ++k) {
        const GenWord w{Token::var(k), Token::var(j), Token::var(i)};
        if (!routes(w, 0, 1, "x" + std::to_string(k) + "*x" + std::to_string(j) + "*x" + std::to_string(i)))
          return res;
      }
  for (std::size_t i = 1; i <= n_; ++i)
    for (std::size_t j = i + 1; j <= n_; ++j)
      for (std::size_t r = 0; r < R.order(); ++r) {
        if (r == R.zero()) continue;
        const GenWord w{Token::var(j), Token::var(i), Token::coeff(static_cast<Elem>(r))};
        if (!routes(w, 0, 1, "x" + std::to_string(j) + "*x" + std::to_string(i) + "*" + R.name(static_cast<Elem>(r))))
          return res;
      }
  for (std::size_t i = 1; i <= n_; ++i)
    for (std::size_t r = 0; r < R.order(); ++r)
      for (std::size_t s = 0; s < R.order(); ++s) {
        const Elem er = static_cast<Elem>(r), es = static_cast<Elem>(s);
        if (er == R.zero() || es == R.zero()) continue;
        ++res.certificate.overlaps;
        const GenWord w{Token::var(i), Token::coeff(er), Token::coeff(es)};
        SkewPoly merged = normalize(GenWord{Token::var(i), Token::coeff(R.mul(er, es))});
        SkewPoly pushed = normalize_sum(*rewrite_once(w, 0));
        if (merged != pushed) {
          res.witness = ConsistencyWitness{w, "x" + std::to_string(i) + "*" + R.name(er) + "*" + R.name(es),
                                           std::move(merged), std::move(pushed)};
          return res;
        }
      }

  std::mt19937_64 rng(seed);
  for (std::size_t t = 0; t < fuzz_triples; ++t) {
    SkewPoly f = random_poly(*this, rng, bound, 3);
    SkewPoly g = random_poly(*this, rng, bound, 3);
    SkewPoly h = random_poly(*this, rng, bound, 3);
    SkewPoly left = (f * g) * h;
    SkewPoly right = f * (g * h);
    ++res.certificate.fuzz_triples;
    if (left != right) {
      res.witness = ConsistencyWitness{{}, "(f*g)*h vs f*(g*h) for f=" + to_string(f) + ", g=" + to_string(g) +
                                               ", h=" + to_string(h),
                                       std::move(left), std::move(right)};
      return res;
    }
  }
  return res;
}

}  // namespace spbw
