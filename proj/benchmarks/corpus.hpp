#pragma once

#include <string>

#include "spbw/cli/instance.hpp"

inline spbw::cli::Instance load_corpus(const std::string& file) {
  return spbw::cli::load_instance(std::string(SPBW_CORPUS_DIR) + "/" + file);
}
