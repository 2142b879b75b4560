#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "isoprofile/words.hpp"

namespace isoprofile {

// `<a, b | a b a^-1 b^-1, a^2>`: comma-separated generators, then
// comma-separated relators whose letters are generator names separated by
// whitespace, each optionally raised to an integer power `^k`.
Presentation parse_presentation(std::string_view text);

// A word over `generators`. `e`, `1` and the empty string denote the identity
// (`e` only when no generator is named e). When every generator name is a
// single character, juxtaposed letters such as `aba^-1` are accepted too.
Word parse_word(std::string_view text, const std::vector<std::string>& generators);

// Inverse of parse_word: runs of a letter are written as powers, e.g.
// `a^2 b^-1`; the identity is `e`.
std::string format_word(const Word& w, const std::vector<std::string>& generators);

}  // namespace isoprofile
