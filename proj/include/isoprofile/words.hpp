#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace isoprofile {

// A signed generator: y or y^-1.
struct Letter {
  std::uint32_t generator = 0;
  bool inverse = false;

  Letter inverted() const { return {generator, !inverse}; }
  bool cancels(Letter other) const {
    return generator == other.generator && inverse != other.inverse;
  }
  // a < a^-1 < b < b^-1 < ...
  std::uint32_t order_key() const { return generator * 2 + (inverse ? 1 : 0); }

  friend bool operator==(Letter, Letter) = default;
};

// Cancels adjacent inverse pairs until none remain.
std::vector<Letter> free_reduce(std::span<const Letter> letters);

// An element of the free group F(Y) on `rank` generators, always stored
// freely reduced. Ordered shortlex (length first, then letter by letter).
class Word {
 public:
  explicit Word(std::size_t rank = 0) : rank_(rank) {}
  // Freely reduces `letters`. Throws AlphabetError on an out-of-range
  // generator.
  Word(std::size_t rank, std::span<const Letter> letters);
  Word(std::size_t rank, std::initializer_list<Letter> letters)
      : Word(rank, std::span<const Letter>(letters.begin(), letters.size())) {}

  static Word generator(std::size_t rank, std::uint32_t index,
                        bool inverse = false);

  std::size_t rank() const { return rank_; }
  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  std::span<const Letter> letters() const { return letters_; }

  friend bool operator==(const Word& a, const Word& b) {
    return a.rank_ == b.rank_ && a.letters_ == b.letters_;
  }
  friend std::strong_ordering operator<=>(const Word& a, const Word& b);

 private:
  std::size_t rank_;
  std::vector<Letter> letters_;
};

// Concatenation, freely reduced. Throws AlphabetError if the ranks differ.
Word compose(const Word& lhs, const Word& rhs);
Word invert(const Word& w);

// Exponent sum of each generator.
std::vector<std::int64_t> exponent_sums(const Word& w);

// Compact, presentation-independent encoding used for signatures and hashing.
void append_word_key(const Word& w, std::string& out);

class Presentation {
 public:
  Presentation() = default;
  // Throws InputError on duplicate or malformed generator names and ParseError
  // on relators that are empty after free reduction.
  Presentation(std::vector<std::string> generators, std::vector<Word> relators);

  std::size_t rank() const { return generators_.size(); }
  const std::vector<std::string>& generators() const { return generators_; }
  const std::vector<Word>& relators() const { return relators_; }
  std::optional<std::uint32_t> generator_index(std::string_view name) const;
  std::size_t longest_relator() const;

  friend bool operator==(const Presentation&, const Presentation&) = default;

 private:
  std::vector<std::string> generators_;
  std::vector<Word> relators_;
};

}  // namespace isoprofile

template <>
struct std::hash<isoprofile::Word> {
  std::size_t operator()(const isoprofile::Word& w) const noexcept;
};
