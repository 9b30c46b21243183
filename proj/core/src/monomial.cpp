#include "spbw/monomial.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace spbw {

namespace {

void check_length(std::size_t n) {
  if (n > kMaxVariables)
    throw Error(Errc::TooManyVariables,
                std::to_string(n) + " variables requested, at most " + std::to_string(kMaxVariables) + " supported",
                {static_cast<std::int64_t>(n)});
}

}  // namespace

MultiIndex::MultiIndex(std::size_t n) {
  check_length(n);
  n_ = static_cast<std::uint8_t>(n);
}

MultiIndex::MultiIndex(std::initializer_list<unsigned> exps) : MultiIndex(std::vector<unsigned>(exps)) {}

MultiIndex::MultiIndex(const std::vector<unsigned>& exps) : MultiIndex(exps.size()) {
  for (std::size_t k = 0; k < exps.size(); ++k) e_[k] = static_cast<std::uint16_t>(exps[k]);
}

MultiIndex MultiIndex::unit(std::size_t n, std::size_t i) {
  MultiIndex m(n);
  m.e_[i - 1] = 1;
  return m;
}

unsigned MultiIndex::degree() const {
  unsigned d = 0;
  for (std::size_t k = 0; k < n_; ++k) d += e_[k];
  return d;
}

std::string MultiIndex::to_string() const {
  std::string s = "(";
  for (std::size_t k = 0; k < n_; ++k) s += (k ? "," : "") + std::to_string(e_[k]);
  return s + ")";
}

MultiIndex add(const MultiIndex& a, const MultiIndex& b) {
  if (a.size() != b.size())
    throw Error(Errc::LengthMismatch, "multi-indices of length " + std::to_string(a.size()) + " and " +
                                          std::to_string(b.size()));
  MultiIndex out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out.set(k, a[k] + b[k]);
  return out;
}

unsigned degree(const MultiIndex& a) { return a.degree(); }

MonomialOrder::MonomialOrder(OrderKind kind, std::size_t n) : kind_(kind), prec_(n) {
  check_length(n);
  for (std::size_t k = 0; k < n; ++k) prec_[k] = n - 1 - k;
}

MonomialOrder::MonomialOrder(OrderKind kind, std::vector<std::size_t> precedence)
    : kind_(kind), prec_(std::move(precedence)) {
  check_length(prec_.size());
  std::vector<std::size_t> sorted = prec_;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t k = 0; k < sorted.size(); ++k)
    if (sorted[k] != k) throw Error(Errc::ParseError, "variable precedence is not a permutation");
}

std::strong_ordering MonomialOrder::compare(const MultiIndex& a, const MultiIndex& b) const {
  if (a.size() != b.size() || a.size() != prec_.size())
    throw Error(Errc::LengthMismatch, "cannot compare multi-indices of lengths " + std::to_string(a.size()) +
                                          " and " + std::to_string(b.size()));
  if (kind_ == OrderKind::DegLex) {
    if (auto c = a.degree() <=> b.degree(); c != 0) return c;
  }
  for (std::size_t v : prec_)
    if (auto c = a[v] <=> b[v]; c != 0) return c;
  return std::strong_ordering::equal;
}

std::size_t count_upto(std::size_t n, unsigned d) {
  // C(n+d, d) built incrementally; each partial product is itself a binomial.
  std::size_t c = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    const std::size_t num = d + k;
    if (c > std::numeric_limits<std::size_t>::max() / num) return std::numeric_limits<std::size_t>::max();
    c = c * num / k;
  }
  return c;
}

std::vector<MultiIndex> enumerate_upto(std::size_t n, unsigned d, const MonomialOrder& order) {
  check_length(n);
  std::vector<MultiIndex> out;
  MultiIndex cur(n);
  // Odometer over exponent vectors with total degree <= d.
  auto rec = [&](auto&& self, std::size_t k, unsigned left) -> void {
    if (k == n) {
      out.push_back(cur);
      return;
    }
    for (unsigned v = 0; v <= left; ++v) {
      cur.set(k, v);
      self(self, k + 1, left - v);
    }
    cur.set(k, 0);
  };
  rec(rec, 0, d);
  std::sort(out.begin(), out.end(), [&](const MultiIndex& a, const MultiIndex& b) { return order.compare(a, b) < 0; });
  return out;
}

}  // namespace spbw
