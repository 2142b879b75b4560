#include "isoprofile/words.hpp"

#include <algorithm>
#include <set>

#include "isoprofile/errors.hpp"

namespace isoprofile {

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParse:
      return "parse-error";
    case ErrorKind::kAlphabet:
      return "alphabet-error";
    case ErrorKind::kOracleUndecided:
      return "oracle-undecided";
    case ErrorKind::kBudgetExceeded:
      return "budget-exceeded";
    case ErrorKind::kInvalidSkeleton:
      return "invalid-skeleton";
    case ErrorKind::kWrongAlgorithm:
      return "wrong-algorithm";
    case ErrorKind::kInput:
      return "input-error";
    case ErrorKind::kOverflow:
      return "overflow";
  }
  return "error";
}

std::vector<Letter> free_reduce(std::span<const Letter> letters) {
  std::vector<Letter> out;
  out.reserve(letters.size());
  for (const Letter l : letters) {
    if (!out.empty() && out.back().cancels(l)) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

Word::Word(std::size_t rank, std::span<const Letter> letters) : rank_(rank) {
  for (const Letter l : letters) {
    if (l.generator >= rank) {
      throw AlphabetError("generator index " + std::to_string(l.generator) +
                          " out of range for rank " + std::to_string(rank));
    }
  }
  letters_ = free_reduce(letters);
}

Word Word::generator(std::size_t rank, std::uint32_t index, bool inverse) {
  const Letter l{index, inverse};
  return Word(rank, std::span<const Letter>(&l, 1));
}

std::strong_ordering operator<=>(const Word& a, const Word& b) {
  if (auto c = a.rank_ <=> b.rank_; c != 0) return c;
  if (auto c = a.letters_.size() <=> b.letters_.size(); c != 0) return c;
  for (std::size_t i = 0; i < a.letters_.size(); ++i) {
    if (auto c = a.letters_[i].order_key() <=> b.letters_[i].order_key();
        c != 0) {
      return c;
    }
  }
  return std::strong_ordering::equal;
}

Word compose(const Word& lhs, const Word& rhs) {
  if (lhs.rank() != rhs.rank()) {
    throw AlphabetError("cannot compose words over alphabets of rank " +
                        std::to_string(lhs.rank()) + " and " +
                        std::to_string(rhs.rank()));
  }
  const auto a = lhs.letters();
  const auto b = rhs.letters();
  // Both sides are reduced, so cancellation only happens at the junction.
  std::size_t cut = 0;
  while (cut < a.size() && cut < b.size() &&
         a[a.size() - 1 - cut].cancels(b[cut])) {
    ++cut;
  }
  std::vector<Letter> letters(a.begin(), a.end() - cut);
  letters.insert(letters.end(), b.begin() + cut, b.end());
  return Word(lhs.rank(), letters);
}

Word invert(const Word& w) {
  std::vector<Letter> letters;
  letters.reserve(w.length());
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) {
    letters.push_back(it->inverted());
  }
  return Word(w.rank(), letters);
}

std::vector<std::int64_t> exponent_sums(const Word& w) {
  std::vector<std::int64_t> sums(w.rank(), 0);
  for (const Letter l : w.letters()) sums[l.generator] += l.inverse ? -1 : 1;
  return sums;
}

void append_word_key(const Word& w, std::string& out) {
  // One byte per letter for ranks below 64, two bytes (both with the high
  // bit set) otherwise. No letter byte is ever zero.
  for (const Letter l : w.letters()) {
    const std::uint32_t k = l.order_key() + 1;
    if (k < 128) {
      out.push_back(static_cast<char>(k));
    } else {
      out.push_back(static_cast<char>(0x80 | ((k >> 7) & 0x7f)));
      out.push_back(static_cast<char>(0x80 | (k & 0x7f)));
    }
  }
  out.push_back('\0');
}

Presentation::Presentation(std::vector<std::string> generators,
                           std::vector<Word> relators)
    : generators_(std::move(generators)), relators_(std::move(relators)) {
  std::set<std::string> seen;
  for (const auto& name : generators_) {
    if (name.empty()) throw InputError("empty generator name");
    if (!seen.insert(name).second) {
      throw InputError("duplicate generator name '" + name + "'");
    }
  }
  for (const auto& r : relators_) {
    if (r.rank() != generators_.size()) {
      throw AlphabetError("relator rank does not match generator count");
    }
    if (r.empty()) throw ParseError("relator is empty after free reduction");
  }
}

std::optional<std::uint32_t> Presentation::generator_index(
    std::string_view name) const {
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (generators_[i] == name) return static_cast<std::uint32_t>(i);
  }
  return std::nullopt;
}

std::size_t Presentation::longest_relator() const {
  std::size_t longest = 0;
  for (const auto& r : relators_) longest = std::max(longest, r.length());
  return longest;
}

}  // namespace isoprofile

std::size_t std::hash<isoprofile::Word>::operator()(
    const isoprofile::Word& w) const noexcept {
  std::size_t h = w.rank() * 0x9e3779b97f4a7c15ULL;
  for (const auto l : w.letters()) {
    h ^= l.order_key() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}
