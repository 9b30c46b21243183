#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "spbw/polymodule.hpp"

namespace spbw {

/// A subset of R closed under addition and right multiplication by R.
class RightIdeal {
 public:
  /// Throws NotRightIdeal{a,b} when a + b or a * b leaves the set.
  static RightIdeal from_set(const FiniteRing& R, ElementSet s);

  ElementSet elements() const { return s_; }
  bool contains(Elem r) const { return s_.contains(r); }
  std::size_t size() const { return s_.size(); }
  friend bool operator==(const RightIdeal&, const RightIdeal&) = default;

 private:
  explicit RightIdeal(ElementSet s) : s_(s) {}
  ElementSet s_;
};

/// eR = {e r : r in R}.
ElementSet principal_right_ideal(const FiniteRing& R, Elem e);

/// {r : x r = 0 for all x in X}.
RightIdeal ann_in_R(const RightModule& M, ElementSet X);

/// The first idempotent e (in index order) with I = eR, if any.
std::optional<Elem> is_idempotent_generated(const FiniteRing& R, const RightIdeal& I);

/// act(m, f) == 0.
bool annihilates(const ModulePoly& m, const SkewPoly& f);

/// Every f with support in degree <= d such that m f = 0 for all m in Ms,
/// in enumeration order (coefficients of the ascending monomials, first one
/// most significant). Throws SearchSpaceTooLarge above max_candidates.
std::vector<SkewPoly> ann_in_A_bounded(const std::vector<ModulePoly>& Ms, const Presentation& p, unsigned d,
                                       std::uint64_t max_candidates = 1'000'000);

}  // namespace spbw
