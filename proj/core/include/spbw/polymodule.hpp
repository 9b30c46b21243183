#pragma once

#include <map>
#include <memory>
#include <optional>
#include <tuple>
#include <string>
#include <vector>

#include "spbw/finring.hpp"
#include "spbw/skewpbw.hpp"

namespace spbw {

/// A finite right R-module given by its addition table and action table.
class RightModule {
 public:
  using Table = std::vector<std::vector<Elem>>;

  /// Throws BadTable, BadGroup, NotUnital{m}, ActionNotAssociative{m,r,s},
  /// NotBiadditive{m,m',r} (sum of modules) or {m,r,s} (sum of scalars).
  static RightModule from_tables(std::shared_ptr<const FiniteRing> ring, const Table& add, const Table& action,
                                 std::string label, std::vector<std::string> names = {});
  /// R as a right module over itself.
  static RightModule regular(std::shared_ptr<const FiniteRing> ring);
  /// R/I for the right ideal I generated by the given elements.
  static RightModule quotient(std::shared_ptr<const FiniteRing> ring, const std::vector<Elem>& generators);

  const FiniteRing& ring() const { return *ring_; }
  std::shared_ptr<const FiniteRing> ring_ptr() const { return ring_; }
  std::size_t order() const { return order_; }
  Elem zero() const { return zero_; }
  const std::string& label() const { return label_; }

  Elem add(Elem a, Elem b) const { return add_[a * order_ + b]; }
  Elem neg(Elem a) const { return neg_[a]; }
  /// m * r
  Elem act(Elem m, Elem r) const { return act_[m * ring_->order() + r]; }

  const std::string& name(Elem e) const { return names_[e]; }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<Elem> find(std::string_view name) const;
  ElementSet all() const { return ElementSet::full(order_); }

  Table add_table() const;
  Table action_table() const;

  /// Set when the module was built as the regular module.
  bool is_regular() const { return regular_; }

 private:
  RightModule() = default;

  std::shared_ptr<const FiniteRing> ring_;
  std::size_t order_ = 0;
  std::vector<Elem> add_;
  std::vector<Elem> neg_;
  std::vector<Elem> act_;
  Elem zero_ = 0;
  std::string label_;
  std::vector<std::string> names_;
  bool regular_ = false;
};

/// Smallest submodule containing the given elements.
ElementSet submodule_closure(const RightModule& M, ElementSet seed);
bool is_submodule(const RightModule& M, ElementSet s);
/// mR, already closed under addition.
ElementSet cyclic_submodule(const RightModule& M, Elem m);
/// Every submodule, ordered by size and then by membership bits. Throws
/// TooLarge when |M| exceeds max_order.
std::vector<ElementSet> all_submodules(const RightModule& M, std::size_t max_order = 16);
/// A generating set picked greedily in index order.
std::vector<Elem> generators_of(const RightModule& M, ElementSet s);

/// An injective R-linear map R -> M, r |-> u r. Throws BadEmbedding.
struct Embedding {
  Elem image_of_one = 0;
  static Embedding validate(const RightModule& M, Elem u);
};

/// Element of M<X>: a finite sum of m_i x^alpha_i. Never stores zero terms.
class ModulePoly {
 public:
  ModulePoly(const RightModule& M, const Presentation& p) : M_(&M), p_(&p) {}
  static ModulePoly constant(const RightModule& M, const Presentation& p, Elem m);
  static ModulePoly monomial(const RightModule& M, const Presentation& p, const MultiIndex& alpha, Elem m);

  const RightModule& module() const { return *M_; }
  const Presentation& presentation() const { return *p_; }
  const std::map<MultiIndex, Elem>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  Elem coeff(const MultiIndex& alpha) const;
  void add_term(const MultiIndex& alpha, Elem m);
  /// Terms in descending monomial order.
  std::vector<std::pair<MultiIndex, Elem>> sorted_terms() const;
  /// Distinct coefficients together with zero.
  ElementSet coefficients() const;
  int deg() const;

  friend bool operator==(const ModulePoly& a, const ModulePoly& b) {
    return a.M_ == b.M_ && a.p_ == b.p_ && a.terms_ == b.terms_;
  }

 private:
  const RightModule* M_;
  const Presentation* p_;
  std::map<MultiIndex, Elem> terms_;
};

ModulePoly operator+(const ModulePoly& a, const ModulePoly& b);
ModulePoly operator-(const ModulePoly& a);

/// Memoized normal forms of x^alpha c x^beta.
class ProductCache {
 public:
  explicit ProductCache(const Presentation& p) : p_(&p) {}
  const SkewPoly& get(const MultiIndex& alpha, Elem c, const MultiIndex& beta);
  std::size_t size() const { return cache_.size(); }

 private:
  const Presentation* p_;
  std::map<std::tuple<MultiIndex, Elem, MultiIndex>, SkewPoly> cache_;
};

/// The right A-action on M<X>: sum over i, j of m_i NF(x^alpha_i b_j x^beta_j).
/// Throws PresentationMismatch.
ModulePoly act(const ModulePoly& m, const SkewPoly& f, ProductCache* cache = nullptr);
ModulePoly act_scalar(const ModulePoly& m, Elem r, ProductCache* cache = nullptr);
/// m_i * g applied coefficientwise, for a module element m_i.
ModulePoly scale(const RightModule& M, Elem m, const SkewPoly& g);

}  // namespace spbw
