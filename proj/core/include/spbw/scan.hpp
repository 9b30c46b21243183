#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "spbw/polymodule.hpp"

namespace spbw {

/// A factor r x^gamma placed between m and f.
struct Middle {
  Elem r = 0;
  MultiIndex gamma;
};

/// Saturating a^k.
std::uint64_t power_saturating(std::uint64_t a, std::size_t k);
/// Saturating a * b.
std::uint64_t mul_saturating(std::uint64_t a, std::uint64_t b);

/// Advances a mixed-radix counter with digit 0 most significant. Returns
/// false after the last value (the digits wrap to zero).
bool next_digits(std::vector<Elem>& digits, std::size_t base);

/// Exhaustive search over pairs (m, f) with m supported on m_mons and f on
/// f_mons. For a fixed m the products m * mid * f are linear in the
/// coefficients of f, so every normal form x^alpha r x^gamma b x^beta is
/// tabulated once and the images of m are summed along an odometer over f.
class ActionScan {
 public:
  /// An empty middle list means the single middle 1 * x^0.
  ActionScan(const RightModule& M, const Presentation& P, std::vector<MultiIndex> m_mons,
             std::vector<MultiIndex> f_mons, std::vector<Middle> middles = {});

  const RightModule& module() const { return *M_; }
  const Presentation& presentation() const { return *P_; }
  const std::vector<MultiIndex>& m_mons() const { return m_mons_; }
  const std::vector<MultiIndex>& f_mons() const { return f_mons_; }
  const std::vector<Middle>& middles() const { return middles_; }

  std::uint64_t m_space() const { return power_saturating(M_->order(), m_mons_.size()); }
  std::uint64_t f_space() const { return power_saturating(P_->ring().order(), f_mons_.size()); }

  /// Fixes the coefficients of m, one per entry of m_mons.
  void set_m(const std::vector<Elem>& m);

  /// Calls visit(f_index, f_digits) for each f with m * mid * f = 0 for every
  /// middle, in odometer order. f_index is the position in that order. A
  /// false return from visit stops the scan; the result is then false.
  bool for_each_annihilator(const std::function<bool(std::uint64_t, const std::vector<Elem>&)>& visit);

  /// Whether (m_i x^alpha_i) * (r x^gamma) * (b x^beta_j) vanishes for the
  /// given middle.
  bool term_vanishes(std::size_t mid, std::size_t i, Elem mi, std::size_t j, Elem b) const;

  ModulePoly m_poly(const std::vector<Elem>& m) const;
  SkewPoly f_poly(const std::vector<Elem>& f) const;

 private:
  const Elem* nf(std::size_t mid, std::size_t i, std::size_t j, Elem b) const {
    return &nf_[(((mid * m_mons_.size() + i) * f_mons_.size() + j) * q_ + b) * G_];
  }
  Elem* img(std::size_t mid, std::size_t j, Elem b) {
    return &img_[((mid * f_mons_.size() + j) * q_ + b) * G_];
  }

  const RightModule* M_;
  const Presentation* P_;
  std::vector<MultiIndex> m_mons_;
  std::vector<MultiIndex> f_mons_;
  std::vector<Middle> middles_;
  std::size_t q_ = 0;
  std::size_t G_ = 0;
  std::vector<Elem> nf_;
  std::vector<Elem> img_;
};

}  // namespace spbw
