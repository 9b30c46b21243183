#include "spbw/annihilator.hpp"

#include "spbw/scan.hpp"

namespace spbw {

RightIdeal RightIdeal::from_set(const FiniteRing& R, ElementSet s) {
  if (!s.contains(R.zero())) throw Error(Errc::NotRightIdeal, "set does not contain zero");
  const auto members = s.members();
  for (Elem a : members) {
    for (Elem b : members)
      if (!s.contains(R.add(a, b)))
        throw Error(Errc::NotRightIdeal, "set is not closed under addition", {a, b});
    for (std::size_t r = 0; r < R.order(); ++r)
      if (!s.contains(R.mul(a, static_cast<Elem>(r))))
        throw Error(Errc::NotRightIdeal, "set is not closed under right multiplication",
                    {a, static_cast<std::int64_t>(r)});
  }
  return RightIdeal(s);
}

ElementSet principal_right_ideal(const FiniteRing& R, Elem e) {
  ElementSet s;
  for (std::size_t r = 0; r < R.order(); ++r) s.insert(R.mul(e, static_cast<Elem>(r)));
  return s;
}

RightIdeal ann_in_R(const RightModule& M, ElementSet X) {
  const FiniteRing& R = M.ring();
  ElementSet s;
  const auto xs = X.members();
  for (std::size_t r = 0; r < R.order(); ++r) {
    bool kills = true;
    for (Elem x : xs)
      if (M.act(x, static_cast<Elem>(r)) != M.zero()) {
        kills = false;
        break;
      }
    if (kills) s.insert(static_cast<Elem>(r));
  }
  return RightIdeal::from_set(R, s);
}

std::optional<Elem> is_idempotent_generated(const FiniteRing& R, const RightIdeal& I) {
  for (Elem e : idempotents(R))
    if (principal_right_ideal(R, e) == I.elements()) return e;
  return std::nullopt;
}

bool annihilates(const ModulePoly& m, const SkewPoly& f) { return act(m, f).is_zero(); }

std::vector<SkewPoly> ann_in_A_bounded(const std::vector<ModulePoly>& Ms, const Presentation& p, unsigned d,
                                       std::uint64_t max_candidates) {
  const auto f_mons = enumerate_upto(p.n(), d, p.order());
  const std::uint64_t space = power_saturating(p.ring().order(), f_mons.size());
  if (space > max_candidates)
    throw Error(Errc::SearchSpaceTooLarge,
                "annihilator search needs " + std::to_string(space) + " candidates, limit is " +
                    std::to_string(max_candidates),
                {static_cast<std::int64_t>(std::min<std::uint64_t>(space, INT64_MAX))});

  std::vector<bool> keep(space, true);
  for (const ModulePoly& m : Ms) {
    require_same(m.presentation(), p);
    std::vector<MultiIndex> m_mons;
    std::vector<Elem> coeffs;
    for (const auto& [alpha, mi] : m.terms()) {
      m_mons.push_back(alpha);
      coeffs.push_back(mi);
    }
    ActionScan scan(m.module(), p, m_mons, f_mons);
    scan.set_m(coeffs);
    std::vector<bool> hit(space, false);
    scan.for_each_annihilator([&](std::uint64_t idx, const std::vector<Elem>&) {
      hit[idx] = true;
      return true;
    });
    for (std::uint64_t k = 0; k < space; ++k) keep[k] = keep[k] && hit[k];
  }

  std::vector<SkewPoly> out;
  std::vector<Elem> f(f_mons.size(), 0);
  std::uint64_t idx = 0;
  do {
    if (keep[idx]) {
      SkewPoly g(p);
      for (std::size_t j = 0; j < f_mons.size(); ++j) g.add_term(f_mons[j], f[j]);
      out.push_back(std::move(g));
    }
    ++idx;
  } while (next_digits(f, p.ring().order()));
  return out;
}

}  // namespace spbw
