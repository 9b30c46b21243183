#include "spbw/scan.hpp"

#include <algorithm>
#include <limits>

namespace spbw {

std::uint64_t mul_saturating(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

std::uint64_t power_saturating(std::uint64_t a, std::size_t k) {
  std::uint64_t out = 1;
  for (std::size_t i = 0; i < k; ++i) out = mul_saturating(out, a);
  return out;
}

bool next_digits(std::vector<Elem>& digits, std::size_t base) {
  for (std::size_t k = digits.size(); k-- > 0;) {
    if (digits[k] + 1u < base) {
      ++digits[k];
      return true;
    }
    digits[k] = 0;
  }
  return false;
}

namespace {

void push_monomial(GenWord& w, const MultiIndex& a) {
  for (std::size_t k = 0; k < a.size(); ++k)
    for (unsigned e = 0; e < a[k]; ++e) w.push_back(Token::var(k + 1));
}

}  // namespace

ActionScan::ActionScan(const RightModule& M, const Presentation& P, std::vector<MultiIndex> m_mons,
                       std::vector<MultiIndex> f_mons, std::vector<Middle> middles)
    : M_(&M), P_(&P), m_mons_(std::move(m_mons)), f_mons_(std::move(f_mons)), middles_(std::move(middles)) {
  if (M.ring_ptr().get() != P.ring_ptr().get() && !(M.ring() == P.ring()))
    throw Error(Errc::PresentationMismatch, "module and presentation use different rings");
  const FiniteRing& R = P.ring();
  q_ = R.order();
  if (middles_.empty()) middles_.push_back({R.one(), MultiIndex(P.n())});

  std::vector<SkewPoly> polys;
  polys.reserve(middles_.size() * m_mons_.size() * f_mons_.size() * q_);
  std::map<MultiIndex, std::size_t> index;
  for (const Middle& mid : middles_)
    for (const MultiIndex& a : m_mons_)
      for (const MultiIndex& b : f_mons_)
        for (std::size_t c = 0; c < q_; ++c) {
          GenWord w;
          push_monomial(w, a);
          w.push_back(Token::coeff(mid.r));
          push_monomial(w, mid.gamma);
          w.push_back(Token::coeff(static_cast<Elem>(c)));
          push_monomial(w, b);
          polys.push_back(P.normalize(w));
          for (const auto& [g, r] : polys.back().terms()) index.emplace(g, index.size());
        }
  G_ = index.size();
  nf_.assign(polys.size() * G_, R.zero());
  for (std::size_t k = 0; k < polys.size(); ++k)
    for (const auto& [g, r] : polys[k].terms()) nf_[k * G_ + index.at(g)] = r;
  img_.assign(middles_.size() * f_mons_.size() * q_ * G_, M.zero());
}

void ActionScan::set_m(const std::vector<Elem>& m) {
  const RightModule& M = *M_;
  std::fill(img_.begin(), img_.end(), M.zero());
  for (std::size_t mid = 0; mid < middles_.size(); ++mid)
    for (std::size_t j = 0; j < f_mons_.size(); ++j)
      for (std::size_t b = 0; b < q_; ++b) {
        Elem* out = img(mid, j, static_cast<Elem>(b));
        for (std::size_t i = 0; i < m_mons_.size(); ++i) {
          if (m[i] == M.zero()) continue;
          const Elem* src = nf(mid, i, j, static_cast<Elem>(b));
          for (std::size_t g = 0; g < G_; ++g) out[g] = M.add(out[g], M.act(m[i], src[g]));
        }
      }
}

bool ActionScan::for_each_annihilator(
    const std::function<bool(std::uint64_t, const std::vector<Elem>&)>& visit) {
  const RightModule& M = *M_;
  const std::size_t K = f_mons_.size();
  const Elem z = M.zero();
  std::vector<Elem> f(K, 0);
  std::vector<Elem> sums((K + 1) * G_, z);
  auto refresh = [&](std::size_t from) {
    for (std::size_t k = from; k < K; ++k) {
      const Elem* prev = &sums[k * G_];
      Elem* next = &sums[(k + 1) * G_];
      const Elem* add = img(0, k, f[k]);
      for (std::size_t g = 0; g < G_; ++g) next[g] = M.add(prev[g], add[g]);
    }
  };
  auto zero = [&](const Elem* v) {
    for (std::size_t g = 0; g < G_; ++g)
      if (v[g] != z) return false;
    return true;
  };
  std::vector<Elem> acc(G_);
  refresh(0);
  std::uint64_t idx = 0;
  while (true) {
    if (zero(&sums[K * G_])) {
      bool all = true;
      for (std::size_t mid = 1; mid < middles_.size() && all; ++mid) {
        std::fill(acc.begin(), acc.end(), z);
        for (std::size_t j = 0; j < K; ++j) {
          const Elem* add = img(mid, j, f[j]);
          for (std::size_t g = 0; g < G_; ++g) acc[g] = M.add(acc[g], add[g]);
        }
        all = zero(acc.data());
      }
      if (all && !visit(idx, f)) return false;
    }
    std::size_t k = K;
    while (k > 0 && f[k - 1] + 1u == q_) f[--k] = 0;
    if (k == 0) break;
    ++f[k - 1];
    refresh(k - 1);
    ++idx;
  }
  return true;
}

bool ActionScan::term_vanishes(std::size_t mid, std::size_t i, Elem mi, std::size_t j, Elem b) const {
  const RightModule& M = *M_;
  const Elem* src = nf(mid, i, j, b);
  for (std::size_t g = 0; g < G_; ++g)
    if (M.act(mi, src[g]) != M.zero()) return false;
  return true;
}

ModulePoly ActionScan::m_poly(const std::vector<Elem>& m) const {
  ModulePoly out(*M_, *P_);
  for (std::size_t i = 0; i < m_mons_.size(); ++i) out.add_term(m_mons_[i], m[i]);
  return out;
}

SkewPoly ActionScan::f_poly(const std::vector<Elem>& f) const {
  SkewPoly out(*P_);
  for (std::size_t j = 0; j < f_mons_.size(); ++j) out.add_term(f_mons_[j], f[j]);
  return out;
}

}  // namespace spbw
