#pragma once

#include <random>
#include <string>

#include "homgrow/presentation.hpp"
#include "homgrow/word.hpp"

namespace testing {

inline std::string corpus(const std::string& name) {
  return std::string(HOMGROW_CORPUS_DIR) + "/" + name;
}

inline homgrow::Presentation load(const std::string& name) {
  return homgrow::load_presentation(corpus(name));
}

inline homgrow::Word random_word(std::mt19937_64& rng, std::size_t gens,
                                 std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<std::size_t> gen(0, gens - 1);
  std::vector<homgrow::Letter> raw(len(rng));
  for (auto& l : raw) {
    l.gen = static_cast<homgrow::GeneratorId>(gen(rng));
    l.sign = (rng() & 1U) ? 1 : -1;
  }
  return homgrow::Word::reduce(raw);
}

}  // namespace testing
