#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "spbw/annihilator.hpp"
#include "spbw/polymodule.hpp"

namespace spbw {

enum class Verdict { Holds, Fails, HoldsUpToBound, Inconclusive };

std::string_view verdict_name(Verdict v);

/// One named component of a counterexample. Values are element names or
/// polynomial literals, so a witness can be parsed back and replayed.
struct WitnessItem {
  std::string key;
  std::string value;
  friend bool operator==(const WitnessItem&, const WitnessItem&) = default;
};

struct PropertyVerdict {
  std::string property;
  Verdict verdict = Verdict::Holds;
  std::vector<WitnessItem> witness;
  /// Degree bound for properties that quantify over A or M<X>.
  std::optional<unsigned> bound;
  /// Why a search was abandoned, for Inconclusive.
  std::string note;

  bool holds() const { return verdict == Verdict::Holds || verdict == Verdict::HoldsUpToBound; }
  bool fails() const { return verdict == Verdict::Fails; }
  bool inconclusive() const { return verdict == Verdict::Inconclusive; }
  /// Value of the named witness item, empty when absent.
  std::string item(std::string_view key) const;
};

struct ScanLimits {
  /// Cap on |M|^K * |R|^K for searches over pairs (m, f).
  std::uint64_t max_space = 10'000'000;
  /// Cap on |R|^K for annihilator bitsets.
  std::uint64_t max_kernel = std::uint64_t{1} << 20;
};

// Exact deciders over the finite module M.
PropertyVerdict is_reduced(const RightModule& M);
PropertyVerdict is_sigma_compatible(const RightModule& M, const Presentation& P);
PropertyVerdict is_delta_compatible(const RightModule& M, const Presentation& P);
PropertyVerdict is_pp(const RightModule& M);
PropertyVerdict is_pq_baer(const RightModule& M);
/// TooLarge when |M| exceeds 16.
PropertyVerdict is_quasi_baer(const RightModule& M);
PropertyVerdict is_baer(const RightModule& M);
PropertyVerdict is_abelian(const RightModule& M);
PropertyVerdict idempotent_stability(const Presentation& P);
/// Exact: m and g range over all linear polynomials.
PropertyVerdict is_linearly_skew_armendariz(const RightModule& M, const Presentation& P,
                                            const ScanLimits& limits = {});

// Deciders over M<X> and A, restricted to support in degree <= d. Throw
// SearchSpaceTooLarge when the search exceeds the limits.
PropertyVerdict is_skew_armendariz_bounded(const RightModule& M, const Presentation& P, unsigned d,
                                           const ScanLimits& limits = {});
PropertyVerdict is_skew_quasi_armendariz_bounded(const RightModule& M, const Presentation& P, unsigned d,
                                                 const ScanLimits& limits = {});

/// Property names accepted by check_property, in report order.
const std::vector<std::string>& property_names();
/// Dispatch by name; UnknownProperty on a bad name. Search overflows become
/// Inconclusive verdicts.
PropertyVerdict check_property(const RightModule& M, const Presentation& P, std::string_view name, unsigned d,
                               const ScanLimits& limits = {});

/// For m h = 0 with h != 0 over a compatible reduced module, returns lc(h)
/// after checking m lc(h) = 0. Throws HypothesisNotMet or VerificationFailed.
Elem torsion_witness(const ModulePoly& m, const SkewPoly& h);

enum class TheoremStatus { Confirmed, HypothesisNotMet, Violation, Inconclusive };

std::string_view theorem_status_name(TheoremStatus s);

struct TheoremReport {
  std::string id;
  std::string statement;
  std::vector<PropertyVerdict> hypotheses;
  PropertyVerdict conclusion;
  TheoremStatus status = TheoremStatus::Confirmed;
};

struct SuiteOptions {
  unsigned degree = 2;
  ScanLimits limits;
  /// Image of 1 under an R-linear embedding R -> M, when one is known.
  std::optional<Elem> embedding;
};

/// reduced and compatible, against the elementwise conditions on (m, r).
TheoremReport reduced_compatible_characterization(const RightModule& M, const Presentation& P);

/// Every implication and equivalence of the suite, in a fixed order.
std::vector<TheoremReport> theorem_suite(const RightModule& M, const Presentation& P, const SuiteOptions& opts);

/// Identifiers of theorem_suite entries, in report order.
const std::vector<std::string>& theorem_ids();

}  // namespace spbw
