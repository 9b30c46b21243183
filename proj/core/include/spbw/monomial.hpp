#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "spbw/error.hpp"

namespace spbw {

inline constexpr std::size_t kMaxVariables = 8;

/// Exponent vector of a standard monomial x1^a1 ... xn^an.
class MultiIndex {
 public:
  MultiIndex() = default;
  /// The zero vector of length n. Throws TooManyVariables above kMaxVariables.
  explicit MultiIndex(std::size_t n);
  MultiIndex(std::initializer_list<unsigned> exps);
  explicit MultiIndex(const std::vector<unsigned>& exps);

  /// x_i as an exponent vector, i is 1-based.
  static MultiIndex unit(std::size_t n, std::size_t i);

  std::size_t size() const { return n_; }
  unsigned operator[](std::size_t k) const { return e_[k]; }
  void set(std::size_t k, unsigned v) { e_[k] = static_cast<std::uint16_t>(v); }
  unsigned degree() const;
  bool is_zero() const { return degree() == 0; }

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  /// Storage order only (length, then exponents); not a monomial order.
  friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;

  std::string to_string() const;

 private:
  std::array<std::uint16_t, kMaxVariables> e_{};
  std::uint8_t n_ = 0;
};

/// Componentwise sum; LengthMismatch on different lengths.
MultiIndex add(const MultiIndex& a, const MultiIndex& b);
unsigned degree(const MultiIndex& a);

enum class OrderKind { DegLex, Lex };

/// Total order on Mon(A). precedence lists 0-based variable indices from the
/// most significant down; the default is x_n > x_{n-1} > ... > x_1.
class MonomialOrder {
 public:
  MonomialOrder() = default;
  MonomialOrder(OrderKind kind, std::size_t n);
  MonomialOrder(OrderKind kind, std::vector<std::size_t> precedence);

  static MonomialOrder deglex(std::size_t n) { return {OrderKind::DegLex, n}; }
  static MonomialOrder lex(std::size_t n) { return {OrderKind::Lex, n}; }

  OrderKind kind() const { return kind_; }
  const std::vector<std::size_t>& precedence() const { return prec_; }

  /// LengthMismatch when lengths differ from each other or from the order.
  std::strong_ordering compare(const MultiIndex& a, const MultiIndex& b) const;
  bool greater(const MultiIndex& a, const MultiIndex& b) const { return compare(a, b) > 0; }

  friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;

 private:
  OrderKind kind_ = OrderKind::DegLex;
  std::vector<std::size_t> prec_;
};

/// All alpha with |alpha| <= d, ascending under the order; C(n+d, d) entries.
std::vector<MultiIndex> enumerate_upto(std::size_t n, unsigned d, const MonomialOrder& order);

/// C(n+d, d), saturating at SIZE_MAX.
std::size_t count_upto(std::size_t n, unsigned d);

}  // namespace spbw
