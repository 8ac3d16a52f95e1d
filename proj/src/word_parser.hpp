#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "homgrow/word.hpp"

namespace homgrow::detail {

/// Recursive-descent reader over one line of text. Stops at a top-level
/// comma or the end of the line so relator lists can be read item by item.
class WordReader {
 public:
  WordReader(std::string_view text, const std::vector<std::string>& names,
             std::size_t line, std::size_t column_base);

  Word read_word();
  void skip_space();
  bool at_end();
  bool consume(char c);
  std::size_t column() const { return column_base_ + pos_; }
  [[noreturn]] void fail(const std::string& message) const;

 private:
  Word read_factor();
  Word read_atom();
  int read_exponent();
  char peek() const;

  std::string_view text_;
  const std::vector<std::string>& names_;
  std::size_t line_;
  std::size_t column_base_;
  std::size_t pos_ = 0;
};

bool is_identifier(std::string_view name);

}  // namespace homgrow::detail
