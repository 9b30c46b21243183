#include "spbw/polymodule.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace spbw {

namespace {

[[noreturn]] void fail(Errc code, const std::string& what, std::vector<std::int64_t> witness = {}) {
  throw Error(code, what, std::move(witness));
}

std::int64_t w(std::size_t v) { return static_cast<std::int64_t>(v); }

}  // namespace

RightModule RightModule::from_tables(std::shared_ptr<const FiniteRing> ring, const Table& add, const Table& action,
                                     std::string label, std::vector<std::string> names) {
  if (!ring) fail(Errc::BadTable, "module has no ring");
  const FiniteRing& R = *ring;
  const std::size_t q = R.order();
  const std::size_t m = add.size();
  if (m == 0) fail(Errc::BadTable, "module must have at least one element");
  if (m > kMaxCarrier) fail(Errc::TooLarge, "module order exceeds " + std::to_string(kMaxCarrier), {w(m)});
  for (const auto& row : add) {
    if (row.size() != m) fail(Errc::BadTable, "module addition table is not square");
    for (Elem e : row)
      if (e >= m) fail(Errc::BadTable, "module addition entry out of range", {e});
  }
  if (action.size() != m) fail(Errc::BadTable, "action table needs one row per module element");
  for (const auto& row : action) {
    if (row.size() != q) fail(Errc::BadTable, "action table rows need one entry per ring element");
    for (Elem e : row)
      if (e >= m) fail(Errc::BadTable, "action entry out of range", {e});
  }
  if (names.empty())
    for (std::size_t i = 0; i < m; ++i) names.push_back(std::to_string(i));
  if (names.size() != m) fail(Errc::BadTable, "module name list length differs from module order");
  {
    std::set<std::string> seen;
    for (const auto& nm : names) {
      if (!is_valid_element_name(nm)) fail(Errc::BadTable, "invalid module element name '" + nm + "'");
      if (!seen.insert(nm).second) fail(Errc::BadTable, "duplicate module element name '" + nm + "'");
    }
  }

  RightModule M;
  M.ring_ = ring;
  M.order_ = m;
  M.label_ = std::move(label);
  M.names_ = std::move(names);
  M.add_.resize(m * m);
  M.act_.resize(m * q);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) M.add_[a * m + b] = add[a][b];
    for (std::size_t r = 0; r < q; ++r) M.act_[a * q + r] = action[a][r];
  }
  auto E = [](std::size_t v) { return static_cast<Elem>(v); };

  std::optional<Elem> zero;
  for (std::size_t z = 0; z < m && !zero; ++z) {
    bool ok = true;
    for (std::size_t a = 0; a < m && ok; ++a) ok = M.add(E(z), E(a)) == a && M.add(E(a), E(z)) == a;
    if (ok) zero = E(z);
  }
  if (!zero) fail(Errc::BadGroup, "module addition has no identity element");
  M.zero_ = *zero;
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      if (M.add(E(a), E(b)) != M.add(E(b), E(a)))
        fail(Errc::BadGroup, "module addition is not commutative", {w(a), w(b)});
      for (std::size_t c = 0; c < m; ++c)
        if (M.add(M.add(E(a), E(b)), E(c)) != M.add(E(a), M.add(E(b), E(c))))
          fail(Errc::BadGroup, "module addition is not associative", {w(a), w(b), w(c)});
    }
  M.neg_.assign(m, 0);
  for (std::size_t a = 0; a < m; ++a) {
    bool found = false;
    for (std::size_t b = 0; b < m && !found; ++b)
      if (M.add(E(a), E(b)) == M.zero_) {
        M.neg_[a] = E(b);
        found = true;
      }
    if (!found) fail(Errc::BadGroup, "module element has no additive inverse", {w(a)});
  }

  for (std::size_t a = 0; a < m; ++a)
    if (M.act(E(a), R.one()) != a)
      fail(Errc::ModuleNotUnital, "m*1 != m for m = " + M.names_[a], {w(a)});
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t r = 0; r < q; ++r)
      for (std::size_t s = 0; s < q; ++s)
        if (M.act(E(a), R.mul(E(r), E(s))) != M.act(M.act(E(a), E(r)), E(s)))
          fail(Errc::ActionNotAssociative,
               "m*(rs) != (m*r)*s at (" + M.names_[a] + ", " + R.name(E(r)) + ", " + R.name(E(s)) + ")",
               {w(a), w(r), w(s)});
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      for (std::size_t r = 0; r < q; ++r)
        if (M.act(M.add(E(a), E(b)), E(r)) != M.add(M.act(E(a), E(r)), M.act(E(b), E(r))))
          fail(Errc::NotBiadditive, "(m+m')r != mr + m'r", {w(a), w(b), w(r)});
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t r = 0; r < q; ++r)
      for (std::size_t s = 0; s < q; ++s)
        if (M.act(E(a), R.add(E(r), E(s))) != M.add(M.act(E(a), E(r)), M.act(E(a), E(s))))
          fail(Errc::NotBiadditive, "m(r+s) != mr + ms", {w(a), w(r), w(s)});
  return M;
}

RightModule RightModule::regular(std::shared_ptr<const FiniteRing> ring) {
  RightModule M = from_tables(ring, ring->add_table(), ring->mul_table(), ring->label(), ring->names());
  M.regular_ = true;
  return M;
}

RightModule RightModule::quotient(std::shared_ptr<const FiniteRing> ring, const std::vector<Elem>& generators) {
  const FiniteRing& R = *ring;
  const std::size_t q = R.order();
  // Right ideal generated by the elements: closure under + and right multiplication.
  ElementSet I = ElementSet::single(R.zero());
  std::deque<Elem> queue;
  auto visit = [&](Elem e) {
    if (!I.contains(e)) {
      I.insert(e);
      queue.push_back(e);
    }
  };
  for (Elem g : generators) {
    if (g >= q) fail(Errc::BadTable, "quotient generator out of range", {g});
    visit(g);
  }
  while (!queue.empty()) {
    const Elem x = queue.front();
    queue.pop_front();
    for (std::size_t r = 0; r < q; ++r) visit(R.mul(x, static_cast<Elem>(r)));
    for (Elem y : I.members()) visit(R.add(x, y));
  }
  // Cosets are named after their lowest-index representative.
  std::vector<int> coset(q, -1);
  std::vector<Elem> reps;
  for (std::size_t a = 0; a < q; ++a) {
    if (coset[a] >= 0) continue;
    const int id = static_cast<int>(reps.size());
    reps.push_back(static_cast<Elem>(a));
    for (Elem i : I.members()) coset[R.add(static_cast<Elem>(a), i)] = id;
  }
  const std::size_t m = reps.size();
  Table add(m, std::vector<Elem>(m)), action(m, std::vector<Elem>(q));
  std::vector<std::string> names(m);
  for (std::size_t a = 0; a < m; ++a) {
    names[a] = R.name(reps[a]);
    for (std::size_t b = 0; b < m; ++b) add[a][b] = static_cast<Elem>(coset[R.add(reps[a], reps[b])]);
    for (std::size_t r = 0; r < q; ++r) action[a][r] = static_cast<Elem>(coset[R.mul(reps[a], static_cast<Elem>(r))]);
  }
  std::string label = R.label() + "/(";
  for (std::size_t k = 0; k < generators.size(); ++k) label += (k ? "," : "") + R.name(generators[k]);
  return from_tables(ring, add, action, label + ")", names);
}

std::optional<Elem> RightModule::find(std::string_view name) const {
  for (std::size_t i = 0; i < order_; ++i)
    if (names_[i] == name) return static_cast<Elem>(i);
  return std::nullopt;
}

RightModule::Table RightModule::add_table() const {
  Table t(order_, std::vector<Elem>(order_));
  for (std::size_t a = 0; a < order_; ++a)
    for (std::size_t b = 0; b < order_; ++b) t[a][b] = add(static_cast<Elem>(a), static_cast<Elem>(b));
  return t;
}

RightModule::Table RightModule::action_table() const {
  Table t(order_, std::vector<Elem>(ring_->order()));
  for (std::size_t a = 0; a < order_; ++a)
    for (std::size_t r = 0; r < ring_->order(); ++r) t[a][r] = act(static_cast<Elem>(a), static_cast<Elem>(r));
  return t;
}

ElementSet submodule_closure(const RightModule& M, ElementSet seed) {
  ElementSet s = seed;
  s.insert(M.zero());
  std::deque<Elem> queue;
  for (Elem e : s.members()) queue.push_back(e);
  auto visit = [&](Elem e) {
    if (!s.contains(e)) {
      s.insert(e);
      queue.push_back(e);
    }
  };
  while (!queue.empty()) {
    const Elem x = queue.front();
    queue.pop_front();
    for (std::size_t r = 0; r < M.ring().order(); ++r) visit(M.act(x, static_cast<Elem>(r)));
    for (Elem y : s.members()) visit(M.add(x, y));
  }
  return s;
}

bool is_submodule(const RightModule& M, ElementSet s) {
  if (!s.contains(M.zero())) return false;
  for (Elem x : s.members()) {
    for (Elem y : s.members())
      if (!s.contains(M.add(x, y))) return false;
    for (std::size_t r = 0; r < M.ring().order(); ++r)
      if (!s.contains(M.act(x, static_cast<Elem>(r)))) return false;
  }
  return true;
}

ElementSet cyclic_submodule(const RightModule& M, Elem m) {
  ElementSet s;
  for (std::size_t r = 0; r < M.ring().order(); ++r) s.insert(M.act(m, static_cast<Elem>(r)));
  return s;
}

std::vector<ElementSet> all_submodules(const RightModule& M, std::size_t max_order) {
  if (M.order() > max_order)
    throw Error(Errc::TooLarge,
                "submodule enumeration is limited to modules of order " + std::to_string(max_order) + ", got " +
                    std::to_string(M.order()),
                {w(M.order())});
  std::set<std::uint64_t> seen;
  std::vector<ElementSet> found;
  std::deque<ElementSet> queue;
  const ElementSet bottom = ElementSet::single(M.zero());
  seen.insert(bottom.bits());
  found.push_back(bottom);
  queue.push_back(bottom);
  while (!queue.empty()) {
    const ElementSet s = queue.front();
    queue.pop_front();
    for (std::size_t m = 0; m < M.order(); ++m) {
      if (s.contains(static_cast<Elem>(m))) continue;
      ElementSet t = s;
      t.insert(static_cast<Elem>(m));
      t = submodule_closure(M, t);
      if (seen.insert(t.bits()).second) {
        found.push_back(t);
        queue.push_back(t);
      }
    }
  }
  std::sort(found.begin(), found.end(), [](ElementSet a, ElementSet b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.bits() < b.bits();
  });
  return found;
}

std::vector<Elem> generators_of(const RightModule& M, ElementSet s) {
  std::vector<Elem> gens;
  ElementSet span = ElementSet::single(M.zero());
  for (Elem e : s.members()) {
    if (span.contains(e)) continue;
    gens.push_back(e);
    span = submodule_closure(M, span | ElementSet::single(e));
  }
  return gens;
}

Embedding Embedding::validate(const RightModule& M, Elem u) {
  if (u >= M.order()) throw Error(Errc::BadEmbedding, "embedding target out of range", {u});
  std::vector<int> pre(M.order(), -1);
  for (std::size_t r = 0; r < M.ring().order(); ++r) {
    const Elem img = M.act(u, static_cast<Elem>(r));
    if (pre[img] >= 0)
      throw Error(Errc::BadEmbedding,
                  "r |-> " + M.name(u) + "*r is not injective: " + M.ring().name(static_cast<Elem>(pre[img])) +
                      " and " + M.ring().name(static_cast<Elem>(r)) + " collide",
                  {pre[img], w(r)});
    pre[img] = static_cast<int>(r);
  }
  return Embedding{u};
}

// --------------------------------------------------------------- ModulePoly

ModulePoly ModulePoly::constant(const RightModule& M, const Presentation& p, Elem m) {
  ModulePoly out(M, p);
  out.add_term(MultiIndex(p.n()), m);
  return out;
}

ModulePoly ModulePoly::monomial(const RightModule& M, const Presentation& p, const MultiIndex& alpha, Elem m) {
  ModulePoly out(M, p);
  out.add_term(alpha, m);
  return out;
}

Elem ModulePoly::coeff(const MultiIndex& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? M_->zero() : it->second;
}

void ModulePoly::add_term(const MultiIndex& alpha, Elem m) {
  if (m == M_->zero()) return;
  if (alpha.size() != p_->n()) throw Error(Errc::LengthMismatch, "module term has the wrong number of exponents");
  auto [it, inserted] = terms_.try_emplace(alpha, m);
  if (inserted) return;
  it->second = M_->add(it->second, m);
  if (it->second == M_->zero()) terms_.erase(it);
}

std::vector<std::pair<MultiIndex, Elem>> ModulePoly::sorted_terms() const {
  std::vector<std::pair<MultiIndex, Elem>> out(terms_.begin(), terms_.end());
  const MonomialOrder& ord = p_->order();
  std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) { return ord.compare(a.first, b.first) > 0; });
  return out;
}

ElementSet ModulePoly::coefficients() const {
  ElementSet s = ElementSet::single(M_->zero());
  for (const auto& [alpha, m] : terms_) s.insert(m);
  return s;
}

int ModulePoly::deg() const {
  int d = -1;
  for (const auto& [alpha, m] : terms_) d = std::max(d, static_cast<int>(alpha.degree()));
  return d;
}

ModulePoly operator+(const ModulePoly& a, const ModulePoly& b) {
  if (&a.module() != &b.module()) throw Error(Errc::PresentationMismatch, "operands live in different modules");
  require_same(a.presentation(), b.presentation());
  ModulePoly out = a;
  for (const auto& [alpha, m] : b.terms()) out.add_term(alpha, m);
  return out;
}

ModulePoly operator-(const ModulePoly& a) {
  ModulePoly out(a.module(), a.presentation());
  for (const auto& [alpha, m] : a.terms()) out.add_term(alpha, a.module().neg(m));
  return out;
}

const SkewPoly& ProductCache::get(const MultiIndex& alpha, Elem c, const MultiIndex& beta) {
  auto key = std::make_tuple(alpha, c, beta);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  GenWord w;
  for (std::size_t k = 0; k < alpha.size(); ++k)
    for (unsigned e = 0; e < alpha[k]; ++e) w.push_back(Token::var(k + 1));
  w.push_back(Token::coeff(c));
  for (std::size_t k = 0; k < beta.size(); ++k)
    for (unsigned e = 0; e < beta[k]; ++e) w.push_back(Token::var(k + 1));
  return cache_.emplace(std::move(key), p_->normalize(w)).first->second;
}

ModulePoly scale(const RightModule& M, Elem m, const SkewPoly& g) {
  ModulePoly out(M, g.presentation());
  for (const auto& [alpha, r] : g.terms()) out.add_term(alpha, M.act(m, r));
  return out;
}

ModulePoly act(const ModulePoly& m, const SkewPoly& f, ProductCache* cache) {
  require_same(m.presentation(), f.presentation());
  if (&m.module().ring() != &f.presentation().ring() && !(m.module().ring() == f.presentation().ring()))
    throw Error(Errc::PresentationMismatch, "module and presentation use different rings");
  const RightModule& M = m.module();
  const Presentation& p = m.presentation();
  ModulePoly out(M, p);
  std::optional<ProductCache> local;
  if (!cache) cache = &local.emplace(p);
  for (const auto& [alpha, mi] : m.terms())
    for (const auto& [beta, b] : f.terms())
      for (const auto& [gamma, c] : cache->get(alpha, b, beta).terms()) out.add_term(gamma, M.act(mi, c));
  return out;
}

ModulePoly act_scalar(const ModulePoly& m, Elem r, ProductCache* cache) {
  return act(m, SkewPoly::constant(m.presentation(), r), cache);
}

}  // namespace spbw
