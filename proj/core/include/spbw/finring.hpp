#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spbw/error.hpp"

namespace spbw {

/// Dense index of an element of a finite ring or module.
using Elem = std::uint16_t;

/// Rings and modules are stored as full Cayley tables; element sets are
/// 64-bit masks, so 64 is the hard ceiling on any carrier.
inline constexpr std::size_t kMaxCarrier = 64;

/// Subset of a carrier of at most 64 elements.
class ElementSet {
 public:
  constexpr ElementSet() = default;
  constexpr explicit ElementSet(std::uint64_t bits) : bits_(bits) {}

  static ElementSet full(std::size_t order) {
    return ElementSet(order >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << order) - 1);
  }
  static ElementSet single(Elem e) { return ElementSet(std::uint64_t{1} << e); }

  bool contains(Elem e) const { return (bits_ >> e) & 1u; }
  void insert(Elem e) { bits_ |= std::uint64_t{1} << e; }
  void erase(Elem e) { bits_ &= ~(std::uint64_t{1} << e); }
  std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  bool empty() const { return bits_ == 0; }
  std::uint64_t bits() const { return bits_; }

  ElementSet operator&(ElementSet o) const { return ElementSet(bits_ & o.bits_); }
  ElementSet operator|(ElementSet o) const { return ElementSet(bits_ | o.bits_); }
  bool subset_of(ElementSet o) const { return (bits_ & ~o.bits_) == 0; }
  friend bool operator==(ElementSet, ElementSet) = default;
  friend auto operator<=>(ElementSet, ElementSet) = default;

  /// Members in increasing index order.
  std::vector<Elem> members() const;

 private:
  std::uint64_t bits_ = 0;
};

/// Element names are plain tokens ([A-Za-z0-9_.']+, but not x<digits>) or a
/// single balanced "(...)" / "[...]" group without whitespace.
bool is_valid_element_name(std::string_view name);

struct RingLimits {
  std::size_t max_order = kMaxCarrier;
  std::size_t warn_order = 16;
  /// Receives the size warning; defaults to std::clog.
  std::function<void(const std::string&)> warn;
};

/// A finite unital ring given by addition and multiplication tables.
/// Instances only exist in validated form.
class FiniteRing {
 public:
  using Table = std::vector<std::vector<Elem>>;

  /// Validates the tables exhaustively. Throws Error with BadTable, BadGroup,
  /// NonAssociative{a,b,c}, NonDistributive{a,b,c}, NoIdentity or RingTooLarge.
  static FiniteRing from_tables(const Table& add, const Table& mul, std::string label,
                                std::vector<std::string> names = {}, const RingLimits& limits = {});

  static FiniteRing integers_mod(std::size_t n);
  /// Z_{n1} x Z_{n2} x ...; the first coordinate varies fastest in the index.
  static FiniteRing product_of_integers_mod(const std::vector<std::size_t>& factors);
  /// Z_n[y]/(y^2), element a + b*y has index a + n*b.
  static FiniteRing dual_numbers(std::size_t n);
  /// Upper-triangular dim x dim matrices over Z_p.
  static FiniteRing upper_triangular(std::size_t dim, std::size_t p);

  std::size_t order() const { return order_; }
  Elem zero() const { return zero_; }
  Elem one() const { return one_; }
  const std::string& label() const { return label_; }

  Elem add(Elem a, Elem b) const { return add_[a * order_ + b]; }
  Elem mul(Elem a, Elem b) const { return mul_[a * order_ + b]; }
  Elem neg(Elem a) const { return neg_[a]; }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  /// n-fold sum a + ... + a.
  Elem times(Elem a, std::size_t n) const;

  const std::string& name(Elem e) const { return names_[e]; }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<Elem> find(std::string_view name) const;

  Table add_table() const;
  Table mul_table() const;
  ElementSet all() const { return ElementSet::full(order_); }

  friend bool operator==(const FiniteRing& a, const FiniteRing& b) {
    return a.order_ == b.order_ && a.add_ == b.add_ && a.mul_ == b.mul_ && a.names_ == b.names_;
  }

 private:
  FiniteRing() = default;

  std::size_t order_ = 0;
  std::vector<Elem> add_;
  std::vector<Elem> mul_;
  std::vector<Elem> neg_;
  Elem zero_ = 0;
  Elem one_ = 0;
  std::string label_;
  std::vector<std::string> names_;
};

std::vector<Elem> idempotents(const FiniteRing& ring);
std::vector<Elem> left_invertibles(const FiniteRing& ring);
bool is_central(const FiniteRing& ring, Elem c);
/// Two-sided unit test used by the bijective flag.
bool is_invertible(const FiniteRing& ring, Elem c);

enum class MapKind { Endomorphism, SigmaDerivation };

/// A tabulated self-map of a ring, validated as an injective endomorphism
/// or as a sigma-derivation over such an endomorphism.
class RingMap {
 public:
  /// Throws NotAdditive{a,b}, NotMultiplicative{a,b}, NotUnital, NotInjective{a,b}.
  static RingMap endomorphism(const FiniteRing& ring, std::vector<Elem> table);
  /// Throws NotAdditive{a,b}, LeibnizFail{a,b}.
  static RingMap sigma_derivation(const FiniteRing& ring, const RingMap& sigma, std::vector<Elem> table);

  static RingMap identity(const FiniteRing& ring);
  static RingMap zero_derivation(const FiniteRing& ring, const RingMap& sigma);

  Elem operator()(Elem a) const { return table_[a]; }
  MapKind kind() const { return kind_; }
  const std::vector<Elem>& table() const { return table_; }
  /// Inverse table of an endomorphism (always present: injective on a finite set).
  const std::vector<Elem>& inverse() const { return inverse_; }
  /// Table of the endomorphism a derivation twists by.
  const std::vector<Elem>& base() const { return base_; }

  bool is_identity() const;
  bool is_zero(const FiniteRing& ring) const;

  friend bool operator==(const RingMap&, const RingMap&) = default;

 private:
  RingMap() = default;

  MapKind kind_ = MapKind::Endomorphism;
  std::vector<Elem> table_;
  std::vector<Elem> inverse_;
  std::vector<Elem> base_;
};

/// All finite compositions of a set of self-maps, identity included.
struct MapMonoid {
  std::vector<std::vector<Elem>> elements;
  /// words[k] lists generator indices, applied right to left, composing to elements[k].
  std::vector<std::vector<std::size_t>> words;

  std::size_t size() const { return elements.size(); }
};

/// Breadth-first closure; elements[0] is the identity and words are shortest.
/// Throws TooLarge beyond max_elements.
MapMonoid closure_monoid(const FiniteRing& ring, std::span<const std::vector<Elem>> generators,
                         std::size_t max_elements = 100000);
MapMonoid closure_monoid(const FiniteRing& ring, std::span<const RingMap> generators,
                         std::size_t max_elements = 100000);

}  // namespace spbw
