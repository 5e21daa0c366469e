#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rauzy/error.h"
#include "rauzy/substitution.h"

namespace rauzy {

/// Malformed text; `position` is the 0-based offset of the offending
/// character in the input.
class ParseError : public InvalidInput {
 public:
  ParseError(const std::string& what, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// "1->21; 2->31; 3->1". Rules are separated by ';', whitespace is ignored.
/// With more than nine letters, image letters are comma-separated integers
/// ("1->10,2").
Substitution parse_substitution(std::string_view text);

/// Canonical text: rules in letter order joined by "; ".
std::string format_substitution(const Substitution& s);

/// "(j;k),(j;k)". A ',' inside the parentheses is accepted too.
std::vector<Occurrence> parse_occurrences(std::string_view text);
std::string format_occurrences(const std::vector<Occurrence>& occs);

/// "a,c".
std::pair<Letter, Letter> parse_letter_pair(std::string_view text);

}  // namespace rauzy
