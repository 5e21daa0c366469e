#pragma once
// Substitutions shared by several test files.

#include <string_view>

#include "rauzy/substitution.h"

namespace fx {

inline rauzy::Word word(std::string_view digits) {
  rauzy::Word w;
  for (char ch : digits) w.push_back(ch - '0');
  return w;
}

inline rauzy::Substitution subst(std::initializer_list<std::string_view> images) {
  std::vector<rauzy::Word> out;
  for (auto img : images) out.push_back(word(img));
  return rauzy::Substitution(static_cast<int>(out.size()), out);
}

inline const rauzy::Substitution base = subst({"21", "31", "1"});
inline const rauzy::Substitution tribonacci = subst({"12", "13", "1"});
inline const rauzy::Substitution quadribonacci = subst({"21", "31", "41", "1"});
inline const rauzy::Substitution base_cubed = subst({"1213121", "213121", "3121"});
inline const rauzy::Substitution split_tau = subst({"4213121", "213124", "3421", "4213121"});
inline const rauzy::Substitution drill_tau = subst({"1213124", "213121", "3121", "1213124"});
inline const rauzy::Substitution drill_theta = subst({"121314", "213121", "3121", "213121121314"});
inline const rauzy::Substitution quad_theta = subst({"4121315", "121315", "213121", "3121", "1213154121315"});

}  // namespace fx
