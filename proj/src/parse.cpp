#include "isoprofile/parse.hpp"

#include <cctype>
#include <charconv>
#include <cstdint>

#include "isoprofile/errors.hpp"

namespace isoprofile {

namespace {

constexpr std::int64_t kMaxPower = 1 << 20;

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      parts.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return parts;
}

std::optional<std::uint32_t> find_generator(
    std::string_view name, const std::vector<std::string>& generators) {
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (generators[i] == name) return static_cast<std::uint32_t>(i);
  }
  return std::nullopt;
}

void push_power(std::vector<Letter>& out, std::uint32_t g, std::int64_t k) {
  const Letter l{g, k < 0};
  for (std::int64_t i = 0; i < (k < 0 ? -k : k); ++i) out.push_back(l);
}

}  // namespace

Word parse_word(std::string_view text,
                const std::vector<std::string>& generators) {
  const bool single_chars = [&] {
    for (const auto& g : generators) {
      if (g.size() != 1) return false;
    }
    return true;
  }();
  const bool e_is_identity = !find_generator("e", generators).has_value();

  std::vector<Letter> letters;
  std::size_t i = 0;
  const auto fail = [&](const std::string& why) -> ParseError {
    return ParseError("in word '" + std::string(text) + "': " + why);
  };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::vector<std::uint32_t> run;
    bool identity = false;
    if (c == '1') {
      identity = true;
      ++i;
    } else if (is_ident_start(c)) {
      const std::size_t start = i;
      while (i < text.size() && is_ident_char(text[i])) ++i;
      const std::string_view name = text.substr(start, i - start);
      if (auto g = find_generator(name, generators)) {
        run.push_back(*g);
      } else if (name == "e" && e_is_identity) {
        identity = true;
      } else if (single_chars) {
        for (const char ch : name) {
          auto g1 = find_generator(std::string_view(&ch, 1), generators);
          if (!g1) throw fail("unknown generator '" + std::string(1, ch) + "'");
          run.push_back(*g1);
        }
      } else {
        throw fail("unknown generator '" + std::string(name) + "'");
      }
    } else {
      throw fail(std::string("unexpected character '") + c + "'");
    }

    std::int64_t power = 1;
    std::size_t j = i;
    while (j < text.size() && std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j < text.size() && text[j] == '^') {
      i = j + 1;
      while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
      const char* first = text.data() + i;
      const char* last = text.data() + text.size();
      if (first != last && *first == '+') ++first;
      auto [ptr, ec] = std::from_chars(first, last, power);
      if (ec != std::errc() || ptr == first) throw fail("malformed exponent");
      if (power > kMaxPower || power < -kMaxPower) throw fail("exponent too large");
      i = static_cast<std::size_t>(ptr - text.data());
    }
    if (identity) continue;
    for (std::size_t k = 0; k + 1 < run.size(); ++k) push_power(letters, run[k], 1);
    push_power(letters, run.back(), power);
  }
  return Word(generators.size(), letters);
}

Presentation parse_presentation(std::string_view text) {
  std::string_view s = trim(text);
  if (s.size() < 2 || s.front() != '<' || s.back() != '>') {
    throw ParseError("presentation must be enclosed in < >");
  }
  s = s.substr(1, s.size() - 2);
  const auto bar = s.find('|');
  const std::string_view gens_part = s.substr(0, bar);
  const std::string_view rels_part =
      bar == std::string_view::npos ? std::string_view() : s.substr(bar + 1);

  std::vector<std::string> generators;
  if (!trim(gens_part).empty()) {
    for (auto g : split(gens_part, ',')) {
      g = trim(g);
      if (g.empty() || !is_ident_start(g.front())) {
        throw ParseError("malformed generator name '" + std::string(g) + "'");
      }
      for (const char c : g) {
        if (!is_ident_char(c)) {
          throw ParseError("malformed generator name '" + std::string(g) + "'");
        }
      }
      generators.emplace_back(g);
    }
  }

  std::vector<Word> relators;
  if (!trim(rels_part).empty()) {
    for (auto r : split(rels_part, ',')) {
      r = trim(r);
      if (r.empty()) throw ParseError("empty relator");
      Word w = parse_word(r, generators);
      if (w.empty()) {
        throw ParseError("relator '" + std::string(r) +
                         "' is empty after free reduction");
      }
      relators.push_back(std::move(w));
    }
  }
  return Presentation(std::move(generators), std::move(relators));
}

std::string format_word(const Word& w,
                        const std::vector<std::string>& generators) {
  const auto letters = w.letters();
  if (letters.empty()) return find_generator("e", generators) ? "1" : "e";
  std::string out;
  std::size_t i = 0;
  while (i < letters.size()) {
    std::size_t j = i;
    while (j < letters.size() && letters[j] == letters[i]) ++j;
    const auto run = static_cast<std::int64_t>(j - i);
    if (!out.empty()) out += ' ';
    out += generators.at(letters[i].generator);
    const std::int64_t power = letters[i].inverse ? -run : run;
    if (power != 1) out += "^" + std::to_string(power);
    i = j;
  }
  return out;
}

}  // namespace isoprofile
