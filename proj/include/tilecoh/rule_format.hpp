#pragma once

#include <stdexcept>
#include <string>

#include "tilecoh/tiling.hpp"

namespace tilecoh {

/// Parse failure. `kind` is one of syntax, schema, field, arity, reference;
/// `where` is a JSON pointer (or "byte N" for syntax errors).
class FormatError : public std::runtime_error {
 public:
  FormatError(std::string kind, std::string where, const std::string& what)
      : std::runtime_error(kind + " error at " + where + ": " + what), kind_(std::move(kind)), where_(std::move(where)) {}
  const std::string& kind() const { return kind_; }
  const std::string& where() const { return where_; }

 private:
  std::string kind_, where_;
};

TilingSystem parse_system(const std::string& text);
std::string serialize_system(const TilingSystem& sys);

/// Deep equality: field, prototiles, placements, combinatorial block.
bool structurally_equal(const TilingSystem& a, const TilingSystem& b);

}  // namespace tilecoh
