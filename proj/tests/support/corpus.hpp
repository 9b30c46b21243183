#pragma once

#include <string>
#include <vector>

#include "spbw/cli/instance.hpp"

#ifndef SPBW_CORPUS_DIR
#error "SPBW_CORPUS_DIR must point at the bundled corpus"
#endif

namespace corpus {

inline std::string path(const std::string& file) { return std::string(SPBW_CORPUS_DIR) + "/" + file; }

inline spbw::cli::Instance load(const std::string& file) { return spbw::cli::load_instance(path(file)); }

inline const std::vector<std::string>& files() {
  static const std::vector<std::string> all{"z3_trivial.json",        "z4.json",
                                            "z6.json",                "z2xz2_swap.json",
                                            "weyl_dual_quotient.json", "weyl_dual_regular.json",
                                            "quantum_plane_z5.json",  "ut2_z2.json"};
  return all;
}

}  // namespace corpus
