#include "spbw/properties.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "spbw/literal.hpp"
#include "spbw/scan.hpp"

namespace spbw {

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "Holds";
    case Verdict::Fails: return "Fails";
    case Verdict::HoldsUpToBound: return "HoldsUpToBound";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

std::string_view theorem_status_name(TheoremStatus s) {
  switch (s) {
    case TheoremStatus::Confirmed: return "Confirmed";
    case TheoremStatus::HypothesisNotMet: return "HypothesisNotMet";
    case TheoremStatus::Violation: return "VIOLATION";
    case TheoremStatus::Inconclusive: return "Inconclusive";
  }
  return "?";
}

std::string PropertyVerdict::item(std::string_view key) const {
  for (const auto& w : witness)
    if (w.key == key) return w.value;
  return {};
}

namespace {

PropertyVerdict holds(std::string name, std::optional<unsigned> bound = std::nullopt) {
  PropertyVerdict v;
  v.property = std::move(name);
  v.verdict = bound ? Verdict::HoldsUpToBound : Verdict::Holds;
  v.bound = bound;
  return v;
}

PropertyVerdict fails(std::string name, std::vector<WitnessItem> witness, std::optional<unsigned> bound = std::nullopt) {
  PropertyVerdict v;
  v.property = std::move(name);
  v.verdict = Verdict::Fails;
  v.witness = std::move(witness);
  v.bound = bound;
  return v;
}

PropertyVerdict inconclusive(std::string name, std::string note, std::optional<unsigned> bound = std::nullopt) {
  PropertyVerdict v;
  v.property = std::move(name);
  v.verdict = Verdict::Inconclusive;
  v.note = std::move(note);
  v.bound = bound;
  return v;
}

Elem E(std::size_t v) { return static_cast<Elem>(v); }

std::string set_string(const std::vector<std::string>& names, ElementSet s) {
  std::string out = "{";
  for (Elem e : s.members()) {
    if (out.size() > 1) out += ",";
    out += names[e];
  }
  return out + "}";
}

std::string list_string(const std::vector<std::string>& items) {
  std::string out = "[";
  for (const auto& s : items) {
    if (out.size() > 1) out += ",";
    out += s;
  }
  return out + "]";
}

std::string map_word(const std::vector<std::size_t>& word, const char* base) {
  if (word.empty()) return "id";
  std::string out;
  for (std::size_t g : word) {
    if (!out.empty()) out += "*";
    out += base + std::to_string(g + 1);
  }
  return out;
}

void require_space(std::uint64_t space, std::uint64_t limit, const std::string& what) {
  if (space > limit)
    throw Error(Errc::SearchSpaceTooLarge,
                what + " needs " + std::to_string(space) + " candidates, limit is " + std::to_string(limit),
                {static_cast<std::int64_t>(std::min<std::uint64_t>(space, INT64_MAX))});
}

MapMonoid sigma_monoid(const Presentation& P) { return closure_monoid(P.ring(), std::span<const RingMap>(P.sigmas())); }

MapMonoid delta_monoid(const Presentation& P) {
  std::vector<std::vector<Elem>> tables;
  for (const RingMap& d : P.deltas()) tables.push_back(d.table());
  return closure_monoid(P.ring(), std::span<const std::vector<Elem>>(tables));
}

bool check_modules(const RightModule& M, const Presentation& P) {
  if (&M.ring() != &P.ring() && !(M.ring() == P.ring()))
    throw Error(Errc::PresentationMismatch, "module and presentation use different rings");
  return true;
}

// Searches pairs (m, f) over monomials of degree <= d. conclusion(scan, m, f)
// returns the witness items for a violation, or an empty vector.
using PairCheck = std::function<std::vector<WitnessItem>(const ActionScan&, const std::vector<Elem>&,
                                                         const std::vector<Elem>&)>;

std::vector<WitnessItem> scan_pairs(ActionScan& scan, const std::string& what, const ScanLimits& limits,
                                    const PairCheck& conclusion) {
  require_space(mul_saturating(scan.m_space(), scan.f_space()), limits.max_space, what);
  const RightModule& M = scan.module();
  std::vector<Elem> m(scan.m_mons().size(), 0);
  std::vector<WitnessItem> found;
  do {
    scan.set_m(m);
    scan.for_each_annihilator([&](std::uint64_t, const std::vector<Elem>& f) {
      found = conclusion(scan, m, f);
      return found.empty();
    });
    if (!found.empty()) return found;
  } while (next_digits(m, M.order()));
  return found;
}

PropertyVerdict skew_armendariz_scan(const RightModule& M, const Presentation& P, unsigned d,
                                     const ScanLimits& limits, const std::string& name, bool exact) {
  check_modules(M, P);
  auto mons = enumerate_upto(P.n(), d, P.order());
  ActionScan scan(M, P, mons, mons);
  const char* fkey = exact ? "g" : "f";
  auto witness = scan_pairs(scan, name, limits, [&](const ActionScan& s, const auto& m, const auto& f) {
    std::vector<WitnessItem> out;
    for (std::size_t j = 0; j < f.size(); ++j)
      if (M.act(m[0], f[j]) != M.zero()) {
        out = {{"m", to_string(s.m_poly(m))},
               {fkey, to_string(s.f_poly(f))},
               {"m0", M.name(m[0])},
               {"b", P.ring().name(f[j])},
               {"monomial", to_string(s.f_mons()[j])},
               {"m0*b", M.name(M.act(m[0], f[j]))}};
        break;
      }
    return out;
  });
  std::optional<unsigned> bound;
  if (!exact) bound = d;
  if (!witness.empty()) return fails(name, std::move(witness), bound);
  return holds(name, bound);
}

std::vector<Middle> all_middles(const Presentation& P, unsigned d) {
  const FiniteRing& R = P.ring();
  std::vector<Middle> out{{R.one(), MultiIndex(P.n())}};
  for (const MultiIndex& g : enumerate_upto(P.n(), d, P.order()))
    for (std::size_t r = 0; r < R.order(); ++r) {
      if (E(r) == R.zero() || (E(r) == R.one() && g.is_zero())) continue;
      out.push_back({E(r), g});
    }
  return out;
}

// Elements of M<X> supported in degree <= d, indexed in mixed radix (first
// monomial most significant), with the right R-action tabulated.
struct BoundedPolyModule {
  const RightModule* M = nullptr;
  const Presentation* P = nullptr;
  std::vector<MultiIndex> mons;
  std::size_t N = 0;
  std::vector<std::size_t> phi;  // phi[x * q + r] = index of x r

  std::vector<Elem> decode(std::size_t x) const {
    std::vector<Elem> d(mons.size());
    for (std::size_t k = mons.size(); k-- > 0;) {
      d[k] = E(x % M->order());
      x /= M->order();
    }
    return d;
  }
  std::size_t encode(const std::vector<Elem>& d) const {
    std::size_t x = 0;
    for (Elem e : d) x = x * M->order() + e;
    return x;
  }
  std::size_t act(std::size_t x, Elem r) const { return phi[x * P->ring().order() + r]; }
  std::size_t zero() const { return encode(std::vector<Elem>(mons.size(), M->zero())); }
  std::string name(std::size_t x) const {
    ModulePoly m(*M, *P);
    auto d = decode(x);
    for (std::size_t k = 0; k < mons.size(); ++k) m.add_term(mons[k], d[k]);
    return to_string(m);
  }

  BoundedPolyModule(const RightModule& mod, const Presentation& pres, unsigned deg, const ScanLimits& limits)
      : M(&mod), P(&pres), mons(enumerate_upto(pres.n(), deg, pres.order())) {
    const FiniteRing& R = pres.ring();
    const std::size_t q = R.order();
    const std::uint64_t n = power_saturating(mod.order(), mons.size());
    require_space(mul_saturating(n, q), limits.max_space, "bounded M<X> as a right R-module");
    N = static_cast<std::size_t>(n);
    std::map<MultiIndex, std::size_t> index;
    for (std::size_t k = 0; k < mons.size(); ++k) index.emplace(mons[k], k);
    // T[(i * q + r) * K + k]: coefficient at mons[k] of x^alpha_i r.
    const std::size_t K = mons.size();
    std::vector<Elem> T(K * q * K, R.zero());
    for (std::size_t i = 0; i < K; ++i)
      for (std::size_t r = 0; r < q; ++r) {
        GenWord w;
        for (std::size_t v = 0; v < mons[i].size(); ++v)
          for (unsigned e = 0; e < mons[i][v]; ++e) w.push_back(Token::var(v + 1));
        w.push_back(Token::coeff(E(r)));
        const SkewPoly nf = pres.normalize(w);
        for (const auto& [g, c] : nf.terms()) T[(i * q + r) * K + index.at(g)] = c;
      }
    phi.assign(N * q, 0);
    std::vector<Elem> out(K);
    for (std::size_t x = 0; x < N; ++x) {
      const auto d = decode(x);
      for (std::size_t r = 0; r < q; ++r) {
        std::fill(out.begin(), out.end(), mod.zero());
        for (std::size_t i = 0; i < K; ++i) {
          if (d[i] == mod.zero()) continue;
          for (std::size_t k = 0; k < K; ++k) out[k] = mod.add(out[k], mod.act(d[i], T[(i * q + r) * K + k]));
        }
        phi[x * q + r] = encode(out);
      }
    }
  }
};

}  // namespace

PropertyVerdict is_reduced(const RightModule& M) {
  const FiniteRing& R = M.ring();
  for (std::size_t m = 0; m < M.order(); ++m)
    for (std::size_t a = 0; a < R.order(); ++a) {
      if (M.act(E(m), E(a)) != M.zero()) continue;
      ElementSet Ma;
      for (std::size_t x = 0; x < M.order(); ++x) Ma.insert(M.act(E(x), E(a)));
      ElementSet common = cyclic_submodule(M, E(m)) & Ma;
      common.erase(M.zero());
      if (!common.empty())
        return fails("reduced", {{"m", M.name(E(m))},
                                 {"a", R.name(E(a))},
                                 {"common", M.name(common.members().front())}});
    }
  return holds("reduced");
}

PropertyVerdict is_sigma_compatible(const RightModule& M, const Presentation& P) {
  check_modules(M, P);
  const FiniteRing& R = P.ring();
  const MapMonoid mon = sigma_monoid(P);
  for (std::size_t m = 0; m < M.order(); ++m)
    for (std::size_t r = 0; r < R.order(); ++r) {
      const bool z = M.act(E(m), E(r)) == M.zero();
      for (std::size_t k = 1; k < mon.size(); ++k) {
        const Elem gr = mon.elements[k][r];
        if ((M.act(E(m), gr) == M.zero()) != z)
          return fails("sigma-compatible", {{"m", M.name(E(m))},
                                            {"r", R.name(E(r))},
                                            {"map", map_word(mon.words[k], "sigma")},
                                            {"map(r)", R.name(gr)},
                                            {"m*r", M.name(M.act(E(m), E(r)))},
                                            {"m*map(r)", M.name(M.act(E(m), gr))}});
      }
    }
  return holds("sigma-compatible");
}

PropertyVerdict is_delta_compatible(const RightModule& M, const Presentation& P) {
  check_modules(M, P);
  const FiniteRing& R = P.ring();
  const MapMonoid mon = delta_monoid(P);
  for (std::size_t m = 0; m < M.order(); ++m)
    for (std::size_t r = 0; r < R.order(); ++r) {
      if (M.act(E(m), E(r)) != M.zero()) continue;
      for (std::size_t k = 1; k < mon.size(); ++k) {
        const Elem gr = mon.elements[k][r];
        if (M.act(E(m), gr) != M.zero())
          return fails("delta-compatible", {{"m", M.name(E(m))},
                                            {"r", R.name(E(r))},
                                            {"map", map_word(mon.words[k], "delta")},
                                            {"map(r)", R.name(gr)},
                                            {"m*map(r)", M.name(M.act(E(m), gr))}});
      }
    }
  return holds("delta-compatible");
}

PropertyVerdict is_pp(const RightModule& M) {
  for (std::size_t m = 0; m < M.order(); ++m) {
    RightIdeal I = ann_in_R(M, ElementSet::single(E(m)));
    if (!is_idempotent_generated(M.ring(), I))
      return fails("pp", {{"m", M.name(E(m))}, {"ann", set_string(M.ring().names(), I.elements())}});
  }
  return holds("pp");
}

PropertyVerdict is_pq_baer(const RightModule& M) {
  for (std::size_t m = 0; m < M.order(); ++m) {
    RightIdeal I = ann_in_R(M, cyclic_submodule(M, E(m)));
    if (!is_idempotent_generated(M.ring(), I))
      return fails("pq-baer", {{"m", M.name(E(m))}, {"ann", set_string(M.ring().names(), I.elements())}});
  }
  return holds("pq-baer");
}

PropertyVerdict is_quasi_baer(const RightModule& M) {
  for (ElementSet N : all_submodules(M)) {
    RightIdeal I = ann_in_R(M, N);
    if (!is_idempotent_generated(M.ring(), I)) {
      std::vector<std::string> gens;
      for (Elem g : generators_of(M, N)) gens.push_back(M.name(g));
      return fails("quasi-baer", {{"generators", list_string(gens)},
                                  {"submodule", set_string(M.names(), N)},
                                  {"ann", set_string(M.ring().names(), I.elements())}});
    }
  }
  return holds("quasi-baer");
}

PropertyVerdict is_baer(const RightModule& M) {
  // ann(X) is the intersection of the ann({x}); close that family under
  // intersection, remembering a generating subset for each member.
  const FiniteRing& R = M.ring();
  std::vector<std::pair<ElementSet, ElementSet>> family;
  std::set<std::uint64_t> seen;
  auto check = [&](ElementSet ann, ElementSet X) -> std::optional<PropertyVerdict> {
    if (!seen.insert(ann.bits()).second) return std::nullopt;
    family.emplace_back(ann, X);
    if (is_idempotent_generated(R, RightIdeal::from_set(R, ann))) return std::nullopt;
    std::vector<std::string> xs;
    for (Elem x : X.members()) xs.push_back(M.name(x));
    return fails("baer", {{"subset", list_string(xs)}, {"ann", set_string(R.names(), ann)}});
  };
  for (std::size_t m = 0; m < M.order(); ++m)
    if (auto v = check(ann_in_R(M, ElementSet::single(E(m))).elements(), ElementSet::single(E(m)))) return *v;
  for (std::size_t a = 0; a < family.size(); ++a)
    for (std::size_t b = 0; b < a; ++b)
      if (auto v = check(family[a].first & family[b].first, family[a].second | family[b].second)) return *v;
  return holds("baer");
}

PropertyVerdict is_abelian(const RightModule& M) {
  const FiniteRing& R = M.ring();
  const auto ids = idempotents(R);
  for (std::size_t m = 0; m < M.order(); ++m)
    for (std::size_t r = 0; r < R.order(); ++r)
      for (Elem e : ids) {
        const Elem mre = M.act(M.act(E(m), E(r)), e);
        const Elem mer = M.act(M.act(E(m), e), E(r));
        if (mre != mer)
          return fails("abelian", {{"m", M.name(E(m))},
                                   {"r", R.name(E(r))},
                                   {"e", R.name(e)},
                                   {"m*r*e", M.name(mre)},
                                   {"m*e*r", M.name(mer)}});
      }
  return holds("abelian");
}

PropertyVerdict idempotent_stability(const Presentation& P) {
  const FiniteRing& R = P.ring();
  for (Elem e : idempotents(R))
    for (std::size_t i = 1; i <= P.n(); ++i)
      if (P.sigma(i)(e) != e || P.delta(i)(e) != R.zero())
        return fails("idempotent-stability", {{"e", R.name(e)},
                                              {"i", std::to_string(i)},
                                              {"sigma(e)", R.name(P.sigma(i)(e))},
                                              {"delta(e)", R.name(P.delta(i)(e))}});
  return holds("idempotent-stability");
}

PropertyVerdict is_linearly_skew_armendariz(const RightModule& M, const Presentation& P, const ScanLimits& limits) {
  return skew_armendariz_scan(M, P, 1, limits, "linearly-skew-armendariz", true);
}

PropertyVerdict is_skew_armendariz_bounded(const RightModule& M, const Presentation& P, unsigned d,
                                           const ScanLimits& limits) {
  return skew_armendariz_scan(M, P, d, limits, "skew-armendariz", false);
}

PropertyVerdict is_skew_quasi_armendariz_bounded(const RightModule& M, const Presentation& P, unsigned d,
                                                 const ScanLimits& limits) {
  check_modules(M, P);
  const std::string name = "skew-quasi-armendariz";
  auto mons = enumerate_upto(P.n(), d, P.order());
  ActionScan scan(M, P, mons, mons, all_middles(P, d));
  auto witness = scan_pairs(scan, name, limits, [&](const ActionScan& s, const auto& m, const auto& f) {
    std::vector<WitnessItem> out;
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = 0; j < f.size(); ++j)
        for (std::size_t mid = 0; mid < s.middles().size(); ++mid)
          if (!s.term_vanishes(mid, i, m[i], j, f[j])) {
            const Middle& md = s.middles()[mid];
            out = {{"m", to_string(s.m_poly(m))},
                   {"f", to_string(s.f_poly(f))},
                   {"m_i", to_string(ModulePoly::monomial(M, P, s.m_mons()[i], m[i]))},
                   {"r", P.ring().name(md.r)},
                   {"t", to_string(md.gamma)},
                   {"a_j", to_string(SkewPoly::monomial(P, s.f_mons()[j], f[j]))}};
            return out;
          }
    return out;
  });
  if (!witness.empty()) return fails(name, std::move(witness), d);
  return holds(name, d);
}

const std::vector<std::string>& property_names() {
  static const std::vector<std::string> names{
      "reduced",      "sigma-compatible", "delta-compatible", "skew-armendariz", "linearly-skew-armendariz",
      "skew-quasi-armendariz", "pp",      "pq-baer",          "quasi-baer",      "baer",
      "abelian",      "idempotent-stability"};
  return names;
}

PropertyVerdict check_property(const RightModule& M, const Presentation& P, std::string_view name, unsigned d,
                               const ScanLimits& limits) {
  try {
    if (name == "reduced") return is_reduced(M);
    if (name == "sigma-compatible") return is_sigma_compatible(M, P);
    if (name == "delta-compatible") return is_delta_compatible(M, P);
    if (name == "skew-armendariz") return is_skew_armendariz_bounded(M, P, d, limits);
    if (name == "linearly-skew-armendariz") return is_linearly_skew_armendariz(M, P, limits);
    if (name == "skew-quasi-armendariz") return is_skew_quasi_armendariz_bounded(M, P, d, limits);
    if (name == "pp") return is_pp(M);
    if (name == "pq-baer") return is_pq_baer(M);
    if (name == "quasi-baer") return is_quasi_baer(M);
    if (name == "baer") return is_baer(M);
    if (name == "abelian") return is_abelian(M);
    if (name == "idempotent-stability") return idempotent_stability(P);
  } catch (const Error& e) {
    if (e.code() != Errc::SearchSpaceTooLarge) throw;
    const bool bounded = name == "skew-armendariz" || name == "skew-quasi-armendariz";
    return inconclusive(std::string(name), e.what(), bounded ? std::optional<unsigned>(d) : std::nullopt);
  }
  std::string known;
  for (const auto& n : property_names()) known += (known.empty() ? "" : ", ") + n;
  throw Error(Errc::UnknownProperty, "unknown property '" + std::string(name) + "'; known: " + known);
}

Elem torsion_witness(const ModulePoly& m, const SkewPoly& h) {
  require_same(m.presentation(), h.presentation());
  const RightModule& M = m.module();
  const Presentation& P = m.presentation();
  if (h.is_zero()) throw Error(Errc::HypothesisNotMet, "h must be non-zero");
  if (!annihilates(m, h)) throw Error(Errc::HypothesisNotMet, "m h is not zero");
  if (!is_reduced(M).holds()) throw Error(Errc::HypothesisNotMet, "module is not reduced");
  if (!is_sigma_compatible(M, P).holds()) throw Error(Errc::HypothesisNotMet, "module is not sigma-compatible");
  if (!is_delta_compatible(M, P).holds()) throw Error(Errc::HypothesisNotMet, "module is not delta-compatible");
  if (!P.bijective()) throw Error(Errc::HypothesisNotMet, "presentation is not bijective");
  const Elem c = h.lc();
  if (!act_scalar(m, c).is_zero())
    throw Error(Errc::VerificationFailed, "m * lc(h) = " + to_string(act_scalar(m, c)) + " is not zero", {c});
  return c;
}

// ---------------------------------------------------------------------------
// Theorem suite

namespace {

enum class Tri { T, F, U };

Tri tri(const PropertyVerdict& v) {
  if (v.holds()) return Tri::T;
  if (v.fails()) return Tri::F;
  return Tri::U;
}

Tri conj(const std::vector<PropertyVerdict>& vs) {
  Tri out = Tri::T;
  for (const auto& v : vs) {
    if (tri(v) == Tri::F) return Tri::F;
    if (tri(v) == Tri::U) out = Tri::U;
  }
  return out;
}

TheoremStatus decide(Tri hyp, Tri concl) {
  if (hyp == Tri::F) return concl == Tri::F ? TheoremStatus::Confirmed : TheoremStatus::HypothesisNotMet;
  if (hyp == Tri::U || concl == Tri::U) return TheoremStatus::Inconclusive;
  return concl == Tri::T ? TheoremStatus::Confirmed : TheoremStatus::Violation;
}

void prefix_items(std::vector<WitnessItem>& out, const std::string& prefix, const PropertyVerdict& v) {
  for (const auto& w : v.witness) out.push_back({prefix + "." + w.key, w.value});
}

// Truth of "a iff b" as a verdict; the witness names the failing side.
PropertyVerdict equivalence(std::string name, const PropertyVerdict& a, const PropertyVerdict& b) {
  std::optional<unsigned> bound = a.bound ? a.bound : b.bound;
  if (a.inconclusive() || b.inconclusive())
    return inconclusive(std::move(name), a.inconclusive() ? a.note : b.note, bound);
  std::vector<WitnessItem> items{{a.property, std::string(verdict_name(a.verdict))},
                                 {b.property, std::string(verdict_name(b.verdict))}};
  if (a.holds() == b.holds()) {
    PropertyVerdict v = holds(std::move(name), bound);
    v.witness = std::move(items);
    return v;
  }
  prefix_items(items, a.property, a);
  prefix_items(items, b.property, b);
  return fails(std::move(name), std::move(items), bound);
}

PropertyVerdict conjunction(std::string name, const std::vector<PropertyVerdict>& parts) {
  std::optional<unsigned> bound;
  for (const auto& p : parts)
    if (p.bound) bound = p.bound;
  for (const auto& p : parts)
    if (p.fails()) {
      std::vector<WitnessItem> items{{"failing", p.property}};
      prefix_items(items, p.property, p);
      return fails(std::move(name), std::move(items), bound);
    }
  for (const auto& p : parts)
    if (p.inconclusive()) return inconclusive(std::move(name), p.note, bound);
  return holds(std::move(name), bound);
}

using Bits = std::vector<std::uint64_t>;

Bits bits_and(const Bits& a, const Bits& b) {
  Bits out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k] & b[k];
  return out;
}

class Analyzer {
 public:
  Analyzer(const RightModule& M, const Presentation& P, const SuiteOptions& o) : M_(M), P_(P), o_(o) {}

  const PropertyVerdict& get(const std::string& key, const std::function<PropertyVerdict()>& compute) {
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    PropertyVerdict v;
    try {
      v = compute();
    } catch (const Error& e) {
      if (e.code() != Errc::SearchSpaceTooLarge && e.code() != Errc::TooLarge) throw;
      v = inconclusive(key, e.what(), o_.degree);
    }
    return cache_.emplace(key, std::move(v)).first->second;
  }

  const PropertyVerdict& prop(const std::string& name) {
    return get(name, [&] { return check_property(M_, P_, name, o_.degree, o_.limits); });
  }

  const PropertyVerdict& bijective() {
    return get("bijective", [&] {
      const FiniteRing& R = P_.ring();
      for (std::size_t i = 1; i <= P_.n(); ++i)
        for (std::size_t j = i + 1; j <= P_.n(); ++j)
          if (!is_invertible(R, P_.relation(i, j).c))
            return fails("bijective", {{"i", std::to_string(i)},
                                       {"j", std::to_string(j)},
                                       {"c", R.name(P_.relation(i, j).c)}});
      return holds("bijective");
    });
  }

  const PropertyVerdict& embedding() {
    return get("embedding", [&] {
      if (!o_.embedding) return fails("embedding", {{"u", "none"}});
      return holds("embedding");
    });
  }

  const PropertyVerdict& skew_armendariz_linear_part() {
    return get("skew-armendariz-degree", [&] {
      if (o_.degree == 0)
        return inconclusive("skew-armendariz-degree", "the degree bound must be at least 1 to cover linear elements");
      return holds("skew-armendariz-degree");
    });
  }

  const PropertyVerdict& characterization_sides(bool left);
  const PropertyVerdict& annihilator_rules();
  const PropertyVerdict& scalar_coefficientwise();
  const PropertyVerdict& poly_sigma_reduced();
  const PropertyVerdict& constant_annihilators();
  const PropertyVerdict& poly_pp(bool cyclic);
  const PropertyVerdict& poly_baer(bool submodules);
  const PropertyVerdict& torsion();

  const RightModule& M_;
  const Presentation& P_;
  SuiteOptions o_;

 private:
  struct Kernels {
    std::vector<MultiIndex> mons;
    std::uint64_t f_space = 0;
    // distinct kernels, each with the index of the first m producing it
    std::vector<std::pair<Bits, std::vector<Elem>>> family;
    // (eR)^K for each idempotent e
    std::vector<std::pair<Elem, Bits>> principal;
  };
  const Kernels& kernels(bool middles);
  std::optional<Elem> principal_match(const Kernels& k, const Bits& b) const {
    for (const auto& [e, bits] : k.principal)
      if (bits == b) return e;
    return std::nullopt;
  }

  std::map<std::string, PropertyVerdict> cache_;
  std::map<bool, Kernels> kernels_;
  std::optional<BoundedPolyModule> poly_;
};

const Analyzer::Kernels& Analyzer::kernels(bool middles) {
  auto it = kernels_.find(middles);
  if (it != kernels_.end()) return it->second;
  const unsigned d = o_.degree;
  Kernels k;
  k.mons = enumerate_upto(P_.n(), d, P_.order());
  ActionScan scan(M_, P_, k.mons, k.mons, middles ? all_middles(P_, d) : std::vector<Middle>{});
  k.f_space = scan.f_space();
  require_space(k.f_space, o_.limits.max_kernel, "annihilator bitsets");
  require_space(mul_saturating(scan.m_space(), scan.f_space()), o_.limits.max_space, "bounded annihilator family");
  const std::size_t words = static_cast<std::size_t>((k.f_space + 63) / 64);
  const FiniteRing& R = P_.ring();
  for (Elem e : idempotents(R)) {
    const ElementSet eR = principal_right_ideal(R, e);
    Bits b(words, 0);
    std::vector<Elem> f(k.mons.size(), 0);
    std::uint64_t idx = 0;
    do {
      if (std::all_of(f.begin(), f.end(), [&](Elem c) { return eR.contains(c); })) b[idx / 64] |= 1ull << (idx % 64);
      ++idx;
    } while (next_digits(f, R.order()));
    k.principal.emplace_back(e, std::move(b));
  }
  std::map<Bits, std::size_t> seen;
  std::vector<Elem> m(k.mons.size(), 0);
  do {
    scan.set_m(m);
    Bits b(words, 0);
    scan.for_each_annihilator([&](std::uint64_t idx, const std::vector<Elem>&) {
      b[idx / 64] |= 1ull << (idx % 64);
      return true;
    });
    if (seen.emplace(b, k.family.size()).second) k.family.emplace_back(std::move(b), m);
  } while (next_digits(m, M_.order()));
  return kernels_.emplace(middles, std::move(k)).first->second;
}

std::string m_string(const RightModule& M, const Presentation& P, const std::vector<MultiIndex>& mons,
                     const std::vector<Elem>& m) {
  ModulePoly out(M, P);
  for (std::size_t i = 0; i < mons.size(); ++i) out.add_term(mons[i], m[i]);
  return to_string(out);
}

const PropertyVerdict& Analyzer::poly_pp(bool cyclic) {
  const std::string name = cyclic ? "polynomial-module-pq-baer" : "polynomial-module-pp";
  return get(name, [&] {
    const Kernels& k = kernels(cyclic);
    for (const auto& [bits, m] : k.family)
      if (!principal_match(k, bits))
        return fails(name, {{"m", m_string(M_, P_, k.mons, m)}}, o_.degree);
    return holds(name, o_.degree);
  });
}

const PropertyVerdict& Analyzer::poly_baer(bool submodules) {
  const std::string name = submodules ? "polynomial-module-quasi-baer" : "polynomial-module-baer";
  return get(name, [&] {
    const Kernels& k = kernels(submodules);
    constexpr std::size_t kMaxFamily = 4096;
    std::vector<std::pair<Bits, std::vector<std::size_t>>> fam;
    std::set<Bits> seen;
    auto add = [&](Bits b, std::vector<std::size_t> gens) -> std::optional<PropertyVerdict> {
      if (!seen.insert(b).second) return std::nullopt;
      if (seen.size() > kMaxFamily)
        throw Error(Errc::SearchSpaceTooLarge,
                    "annihilator intersection family exceeds " + std::to_string(kMaxFamily) + " members");
      const bool ok = principal_match(k, b).has_value();
      fam.emplace_back(std::move(b), gens);
      if (ok) return std::nullopt;
      std::vector<std::string> xs;
      for (std::size_t g : gens) xs.push_back(m_string(M_, P_, k.mons, k.family[g].second));
      return fails(name, {{"subset", list_string(xs)}}, o_.degree);
    };
    for (std::size_t g = 0; g < k.family.size(); ++g)
      if (auto v = add(k.family[g].first, {g})) return *v;
    for (std::size_t a = 0; a < fam.size(); ++a)
      for (std::size_t b = 0; b < a; ++b) {
        std::vector<std::size_t> gens = fam[a].second;
        gens.insert(gens.end(), fam[b].second.begin(), fam[b].second.end());
        std::sort(gens.begin(), gens.end());
        gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
        if (auto v = add(bits_and(fam[a].first, fam[b].first), gens)) return *v;
      }
    return holds(name, o_.degree);
  });
}

const PropertyVerdict& Analyzer::characterization_sides(bool left) {
  if (left)
    return get("reduced-and-compatible", [&] {
      return conjunction("reduced-and-compatible",
                         {prop("reduced"), prop("sigma-compatible"), prop("delta-compatible")});
    });
  return get("elementwise-conditions", [&] {
    const std::string name = "elementwise-conditions";
    const FiniteRing& R = P_.ring();
    const MapMonoid sig = sigma_monoid(P_);
    const MapMonoid del = delta_monoid(P_);
    for (std::size_t m = 0; m < M_.order(); ++m)
      for (std::size_t r = 0; r < R.order(); ++r) {
        const Elem mm = E(m), rr = E(r);
        const bool z = M_.act(mm, rr) == M_.zero();
        if (z)
          for (std::size_t s = 0; s < R.order(); ++s)
            if (M_.act(M_.act(mm, E(s)), rr) != M_.zero())
              return fails(name, {{"condition", "mr=0 implies mRr=0"},
                                  {"m", M_.name(mm)},
                                  {"r", R.name(rr)},
                                  {"s", R.name(E(s))}});
        if (z)
          for (std::size_t k = 1; k < del.size(); ++k)
            if (M_.act(mm, del.elements[k][r]) != M_.zero())
              return fails(name, {{"condition", "mr=0 implies m delta(r)=0"},
                                  {"m", M_.name(mm)},
                                  {"r", R.name(rr)},
                                  {"map", map_word(del.words[k], "delta")}});
        for (std::size_t k = 1; k < sig.size(); ++k)
          if ((M_.act(mm, sig.elements[k][r]) == M_.zero()) != z)
            return fails(name, {{"condition", "mr=0 iff m sigma(r)=0"},
                                {"m", M_.name(mm)},
                                {"r", R.name(rr)},
                                {"map", map_word(sig.words[k], "sigma")}});
        if (M_.act(mm, R.mul(rr, rr)) == M_.zero() && !z)
          return fails(name, {{"condition", "mr^2=0 implies mr=0"}, {"m", M_.name(mm)}, {"r", R.name(rr)}});
      }
    return holds(name);
  });
}

const PropertyVerdict& Analyzer::annihilator_rules() {
  return get("compatible-annihilator-rules", [&] {
    const std::string name = "compatible-annihilator-rules";
    const FiniteRing& R = P_.ring();
    const MapMonoid sig = sigma_monoid(P_);
    const MapMonoid del = delta_monoid(P_);
    const Elem z = M_.zero();
    for (std::size_t m = 0; m < M_.order(); ++m)
      for (std::size_t a = 0; a < R.order(); ++a) {
        const Elem mm = E(m), aa = E(a);
        const Elem ma = M_.act(mm, aa);
        if (ma == z) {
          for (const MapMonoid* mon : {&sig, &del})
            for (std::size_t k = 1; k < mon->size(); ++k)
              if (M_.act(mm, mon->elements[k][a]) != z)
                return fails(name, {{"rule", "ma=0 implies m g(a)=0"},
                                    {"m", M_.name(mm)},
                                    {"a", R.name(aa)},
                                    {"map", map_word(mon->words[k], mon == &sig ? "sigma" : "delta")}});
        }
        for (std::size_t b = 0; b < R.order(); ++b) {
          if (M_.act(ma, E(b)) != z) continue;
          for (std::size_t k = 1; k < del.size(); ++k) {
            if (M_.act(ma, del.elements[k][b]) != z)
              return fails(name, {{"rule", "mab=0 implies m a delta(b)=0"},
                                  {"m", M_.name(mm)},
                                  {"a", R.name(aa)},
                                  {"b", R.name(E(b))},
                                  {"map", map_word(del.words[k], "delta")}});
            if (M_.act(M_.act(mm, del.elements[k][a]), E(b)) != z)
              return fails(name, {{"rule", "mab=0 implies m delta(a) b=0"},
                                  {"m", M_.name(mm)},
                                  {"a", R.name(aa)},
                                  {"b", R.name(E(b))},
                                  {"map", map_word(del.words[k], "delta")}});
          }
        }
        const ElementSet ann_ma = ann_in_R(M_, ElementSet::single(ma)).elements();
        for (std::size_t i = 1; i <= P_.n(); ++i) {
          const Elem ms = M_.act(mm, P_.sigma(i)(aa));
          if (ann_in_R(M_, ElementSet::single(ms)).elements() != ann_ma)
            return fails(name, {{"rule", "ann(ma) = ann(m sigma_i(a))"},
                                {"m", M_.name(mm)},
                                {"a", R.name(aa)},
                                {"i", std::to_string(i)}});
        }
      }
    return holds(name);
  });
}

const PropertyVerdict& Analyzer::scalar_coefficientwise() {
  return get("scalar-annihilation-coefficientwise", [&] {
    const std::string name = "scalar-annihilation-coefficientwise";
    if (!poly_) poly_.emplace(M_, P_, o_.degree, o_.limits);
    const BoundedPolyModule& B = *poly_;
    const std::size_t zero = B.zero();
    for (std::size_t x = 0; x < B.N; ++x) {
      const auto d = B.decode(x);
      for (std::size_t r = 0; r < P_.ring().order(); ++r) {
        const bool whole = B.act(x, E(r)) == zero;
        const bool each = std::all_of(d.begin(), d.end(), [&](Elem c) { return M_.act(c, E(r)) == M_.zero(); });
        if (whole != each)
          return fails(name, {{"m", B.name(x)}, {"r", P_.ring().name(E(r))}}, o_.degree);
      }
    }
    return holds(name, o_.degree);
  });
}

const PropertyVerdict& Analyzer::poly_sigma_reduced() {
  return get("polynomial-module-sigma-reduced", [&] {
    const std::string name = "polynomial-module-sigma-reduced";
    if (!poly_) poly_.emplace(M_, P_, o_.degree, o_.limits);
    const BoundedPolyModule& B = *poly_;
    const FiniteRing& R = P_.ring();
    const std::size_t q = R.order();
    const std::size_t zero = B.zero();
    std::vector<bool> image(B.N);
    for (std::size_t a = 0; a < q; ++a) {
      std::fill(image.begin(), image.end(), false);
      for (std::size_t x = 0; x < B.N; ++x) image[B.act(x, E(a))] = true;
      for (std::size_t x = 0; x < B.N; ++x) {
        if (B.act(x, E(a)) != zero) continue;
        for (std::size_t r = 0; r < q; ++r) {
          const std::size_t y = B.act(x, E(r));
          if (y != zero && image[y])
            return fails(name, {{"condition", "reduced"},
                                {"m", B.name(x)},
                                {"a", R.name(E(a))},
                                {"common", B.name(y)}},
                         o_.degree);
        }
      }
    }
    const MapMonoid sig = sigma_monoid(P_);
    for (std::size_t x = 0; x < B.N; ++x)
      for (std::size_t r = 0; r < q; ++r) {
        const bool z = B.act(x, E(r)) == zero;
        for (std::size_t k = 1; k < sig.size(); ++k)
          if ((B.act(x, sig.elements[k][r]) == zero) != z)
            return fails(name, {{"condition", "sigma-compatible"},
                                {"m", B.name(x)},
                                {"r", R.name(E(r))},
                                {"map", map_word(sig.words[k], "sigma")}},
                         o_.degree);
      }
    return holds(name, o_.degree);
  });
}

const PropertyVerdict& Analyzer::constant_annihilators() {
  return get("constant-annihilators-extend", [&] {
    const std::string name = "constant-annihilators-extend";
    const FiniteRing& R = P_.ring();
    const auto mons = enumerate_upto(P_.n(), o_.degree, P_.order());
    const std::uint64_t cap = std::min<std::uint64_t>(o_.limits.max_kernel, o_.limits.max_space);
    std::vector<ModulePoly> all;
    std::vector<Elem> everything;
    for (std::size_t m = 0; m < M_.order(); ++m) everything.push_back(E(m));
    auto expected_count = [&](ElementSet ann) { return power_saturating(ann.size(), mons.size()); };
    auto check = [&](const std::vector<Elem>& U) -> std::optional<PropertyVerdict> {
      std::vector<ModulePoly> ms;
      ElementSet Uset;
      for (Elem u : U) {
        ms.push_back(ModulePoly::constant(M_, P_, u));
        Uset.insert(u);
      }
      const ElementSet ann = ann_in_R(M_, Uset).elements();
      const auto found = ann_in_A_bounded(ms, P_, o_.degree, cap);
      bool ok = found.size() == expected_count(ann);
      for (const SkewPoly& f : found)
        for (const auto& [alpha, c] : f.terms()) ok = ok && ann.contains(c);
      if (ok) return std::nullopt;
      std::vector<std::string> names;
      for (Elem u : U) names.push_back(M_.name(u));
      return fails(name, {{"subset", list_string(names)}, {"ann_R", set_string(R.names(), ann)}}, o_.degree);
    };
    for (Elem m : everything)
      if (auto v = check({m})) return *v;
    if (auto v = check(everything)) return *v;
    return holds(name, o_.degree);
  });
}

const PropertyVerdict& Analyzer::torsion() {
  return get("torsion-lead-coefficient", [&] {
    const std::string name = "torsion-lead-coefficient";
    auto mons = enumerate_upto(P_.n(), o_.degree, P_.order());
    ActionScan scan(M_, P_, mons, mons);
    ProductCache cache(P_);
    auto witness = scan_pairs(scan, name, o_.limits, [&](const ActionScan& s, const auto& m, const auto& f) {
      std::vector<WitnessItem> out;
      if (std::all_of(f.begin(), f.end(), [&](Elem c) { return c == P_.ring().zero(); })) return out;
      if (std::all_of(m.begin(), m.end(), [&](Elem c) { return c == M_.zero(); })) return out;
      const SkewPoly h = s.f_poly(f);
      const ModulePoly mp = s.m_poly(m);
      if (!act_scalar(mp, h.lc(), &cache).is_zero())
        out = {{"m", to_string(mp)}, {"h", to_string(h)}, {"lc(h)", P_.ring().name(h.lc())}};
      return out;
    });
    if (!witness.empty()) return fails(name, std::move(witness), o_.degree);
    return holds(name, o_.degree);
  });
}

struct Entry {
  std::string id;
  std::string statement;
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> list{
      {"reduced_compatible_characterization",
       "M is reduced and (Sigma,Delta)-compatible iff, for all m and r: mr=0 implies mRr=0; mr=0 implies "
       "m delta^b(r)=0; mr=0 iff m sigma^a(r)=0; mr^2=0 implies mr=0"},
      {"compatible_annihilator_rules",
       "if M is (Sigma,Delta)-compatible then ma=0 implies m sigma^a(a)=0=m delta^b(a); mab=0 implies "
       "m a delta^b(b)=0=m delta^b(a) b; ann(ma)=ann(m sigma_i(a))"},
      {"compatible_scalar_annihilation_coefficientwise",
       "if M is (Sigma,Delta)-compatible then for m in M<X> and r in R, mr=0 iff every coefficient of m is "
       "killed by r"},
      {"sigma_reduced_extends_to_polynomial_module",
       "if M is reduced and (Sigma,Delta)-compatible then M<X> is reduced and Sigma-compatible as a right "
       "R-module"},
      {"sigma_reduced_restricts_from_polynomial_module",
       "if M<X> is reduced and Sigma-compatible as a right R-module then so is M"},
      {"reduced_compatible_implies_skew_armendariz",
       "if M is reduced and (Sigma,Delta)-compatible over a bijective extension then M is skew-Armendariz"},
      {"compatible_skew_armendariz_annihilators_extend",
       "if M is (Sigma,Delta)-compatible and skew-Armendariz then ann_A(U) = ann_R(U)A for every U in M"},
      {"linear_skew_armendariz_implies_idempotent_stability",
       "if M is linearly skew-Armendariz and contains R then sigma_i(e)=e and delta_i(e)=0 for every "
       "idempotent e"},
      {"linear_skew_armendariz_implies_abelian",
       "if M is linearly skew-Armendariz and contains R then M is abelian"},
      {"skew_armendariz_implies_abelian", "if M is skew-Armendariz and contains R then M is abelian"},
      {"reduced_pp_iff_pq_baer", "if M is reduced then M is p.p. iff M is p.q.-Baer"},
      {"pp_transfers_to_polynomial_module",
       "if M is (Sigma,Delta)-compatible, skew-Armendariz and contains R then M is p.p. iff M<X> is p.p."},
      {"baer_transfers_to_polynomial_module",
       "if M is (Sigma,Delta)-compatible, skew-Armendariz and contains R then M is Baer iff M<X> is Baer"},
      {"quasi_baer_transfers_to_polynomial_module",
       "if M is (Sigma,Delta)-compatible then M is quasi-Baer iff M<X> is quasi-Baer"},
      {"pq_baer_transfers_to_polynomial_module",
       "if M is (Sigma,Delta)-compatible then M is p.q.-Baer iff M<X> is p.q.-Baer"},
      {"quasi_baer_implies_skew_quasi_armendariz",
       "if M is (Sigma,Delta)-compatible and quasi-Baer then M is skew quasi-Armendariz"},
      {"torsion_killed_by_lead_coefficient",
       "if M is reduced and (Sigma,Delta)-compatible over a bijective extension, mh=0 with h non-zero implies "
       "m lc(h)=0"},
  };
  return list;
}

TheoremReport make_report(std::size_t k, std::vector<PropertyVerdict> hyps, PropertyVerdict concl) {
  TheoremReport r;
  r.id = entries()[k].id;
  r.statement = entries()[k].statement;
  r.status = decide(conj(hyps), tri(concl));
  r.hypotheses = std::move(hyps);
  r.conclusion = std::move(concl);
  return r;
}

TheoremReport characterization(Analyzer& a) {
  return make_report(0, {},
                     equivalence("characterization", a.characterization_sides(true), a.characterization_sides(false)));
}

}  // namespace

TheoremReport reduced_compatible_characterization(const RightModule& M, const Presentation& P) {
  check_modules(M, P);
  Analyzer a(M, P, SuiteOptions{});
  return characterization(a);
}

const std::vector<std::string>& theorem_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    for (const auto& e : entries()) out.push_back(e.id);
    return out;
  }();
  return ids;
}

std::vector<TheoremReport> theorem_suite(const RightModule& M, const Presentation& P, const SuiteOptions& opts) {
  check_modules(M, P);
  SuiteOptions o = opts;
  if (!o.embedding && M.is_regular()) o.embedding = M.ring().one();
  if (o.embedding) Embedding::validate(M, *o.embedding);
  Analyzer a(M, P, o);

  auto compat = [&] { return std::vector<PropertyVerdict>{a.prop("sigma-compatible"), a.prop("delta-compatible")}; };
  auto with = [](std::vector<PropertyVerdict> v, std::initializer_list<PropertyVerdict> more) {
    v.insert(v.end(), more.begin(), more.end());
    return v;
  };
  auto needs_embedding = [&](TheoremReport r) {
    if (!o.embedding) r.status = TheoremStatus::HypothesisNotMet;
    return r;
  };

  std::vector<TheoremReport> out;
  out.push_back(characterization(a));
  out.push_back(make_report(1, compat(), a.annihilator_rules()));
  out.push_back(make_report(2, compat(), a.scalar_coefficientwise()));
  out.push_back(make_report(3, with(compat(), {a.prop("reduced")}), a.poly_sigma_reduced()));
  out.push_back(make_report(4, {a.poly_sigma_reduced()},
                            conjunction("sigma-reduced", {a.prop("reduced"), a.prop("sigma-compatible")})));
  out.push_back(make_report(5, with(compat(), {a.prop("reduced"), a.bijective()}), a.prop("skew-armendariz")));
  out.push_back(make_report(6, with(compat(), {a.prop("skew-armendariz")}), a.constant_annihilators()));
  out.push_back(needs_embedding(make_report(7, {a.prop("linearly-skew-armendariz"), a.embedding()},
                                            a.prop("idempotent-stability"))));
  out.push_back(needs_embedding(
      make_report(8, {a.prop("linearly-skew-armendariz"), a.embedding()}, a.prop("abelian"))));
  out.push_back(needs_embedding(make_report(
      9, {a.prop("skew-armendariz"), a.skew_armendariz_linear_part(), a.embedding()}, a.prop("abelian"))));
  out.push_back(make_report(10, {a.prop("reduced")}, equivalence("pp-iff-pq-baer", a.prop("pp"), a.prop("pq-baer"))));
  const auto transfer_hyps = with(compat(), {a.prop("skew-armendariz"), a.embedding()});
  out.push_back(needs_embedding(
      make_report(11, transfer_hyps, equivalence("pp-transfer", a.prop("pp"), a.poly_pp(false)))));
  out.push_back(needs_embedding(
      make_report(12, transfer_hyps, equivalence("baer-transfer", a.prop("baer"), a.poly_baer(false)))));
  out.push_back(make_report(13, compat(), equivalence("quasi-baer-transfer", a.prop("quasi-baer"), a.poly_baer(true))));
  out.push_back(make_report(14, compat(), equivalence("pq-baer-transfer", a.prop("pq-baer"), a.poly_pp(true))));
  out.push_back(make_report(15, with(compat(), {a.prop("quasi-baer")}), a.prop("skew-quasi-armendariz")));
  out.push_back(make_report(16, with(compat(), {a.prop("reduced"), a.bijective()}), a.torsion()));
  return out;
}

}  // namespace spbw
