#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "spbw/polymodule.hpp"
#include "spbw/skewpbw.hpp"

namespace spbw::cli {

/// Overrides applied while loading, before the presentation is validated.
struct LoadOptions {
  std::optional<OrderKind> order;
  std::optional<std::uint64_t> seed;
};

/// A validated instance file: ring, presentation, module and optional
/// embedding R -> M, plus its canonical serialization.
struct Instance {
  std::string name;
  std::shared_ptr<const FiniteRing> ring;
  std::shared_ptr<const Presentation> presentation;
  std::shared_ptr<const RightModule> module;
  /// Image of 1 under the declared embedding, if the file declares one.
  std::optional<Elem> embedding;
  /// Canonical JSON text; parsing it again yields the same text.
  std::string canonical;
  /// FNV-1a 64 of the canonical text, as 16 hex digits.
  std::string digest;
};

/// Throws Error: ParseError (with line and column) for malformed JSON or a
/// bad field, otherwise the validation error of the failing component.
Instance parse_instance(std::string_view text, const LoadOptions& options = {});
Instance load_instance(const std::string& path, const LoadOptions& options = {});

std::string fnv1a64_hex(std::string_view bytes);

}  // namespace spbw::cli
