#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "isoprofile/words.hpp"

namespace isoprofile {

enum class Verdict { kTrivial, kNontrivial, kUndecided };

const char* verdict_name(Verdict v);

enum class OracleKind { kFree, kFreeAbelian, kFiniteTable, kBoundedBfs, kDehn };

// Decides whether a word represents the identity of the group. Which oracle
// is sound for which presentation is the caller's declaration; nothing here
// can check it in general.
//
// Implementations must be safe to query from several threads at once, or
// else callers duplicate them with clone() per worker.
class WordOracle {
 public:
  virtual ~WordOracle() = default;

  virtual OracleKind kind() const = 0;
  virtual std::size_t rank() const = 0;
  virtual Verdict is_trivial(const Word& w) const = 0;

  // A canonical representative of w's group element, when the oracle has
  // normal forms. Two words are equal in G iff their normal forms are
  // identical.
  virtual bool has_normal_form() const { return false; }
  virtual Word normalize(const Word& w) const { return w; }

  // Stable textual identity, part of the cache fingerprint.
  virtual std::string id() const = 0;
  virtual std::unique_ptr<WordOracle> clone() const = 0;
};

Verdict is_trivial(const WordOracle& oracle, const Word& w);
// Verdict on w1 =_G w2, decided as is_trivial(w1^-1 w2).
Verdict words_equal(const WordOracle& oracle, const Word& w1, const Word& w2);

// Exact for presentations without relators.
class FreeOracle final : public WordOracle {
 public:
  explicit FreeOracle(std::size_t rank) : rank_(rank) {}
  OracleKind kind() const override { return OracleKind::kFree; }
  std::size_t rank() const override { return rank_; }
  Verdict is_trivial(const Word& w) const override;
  bool has_normal_form() const override { return true; }
  Word normalize(const Word& w) const override { return w; }
  std::string id() const override;
  std::unique_ptr<WordOracle> clone() const override;

 private:
  std::size_t rank_;
};

// Treats the generators as a basis of a free abelian group.
class FreeAbelianOracle final : public WordOracle {
 public:
  explicit FreeAbelianOracle(std::size_t rank) : rank_(rank) {}
  OracleKind kind() const override { return OracleKind::kFreeAbelian; }
  std::size_t rank() const override { return rank_; }
  Verdict is_trivial(const Word& w) const override;
  bool has_normal_form() const override { return true; }
  // y1^e1 y2^e2 ... in generator order.
  Word normalize(const Word& w) const override;
  std::string id() const override;
  std::unique_ptr<WordOracle> clone() const override;

 private:
  std::size_t rank_;
};

// A finite group given by its multiplication table and the elements the
// generators map to. Normal forms are shortlex-least words.
class FiniteTableOracle final : public WordOracle {
 public:
  // Throws InputError if the table is not a group, if the generator images
  // are out of range, or if some relator of `presentation` does not evaluate
  // to the identity.
  FiniteTableOracle(const Presentation& presentation, std::size_t identity,
                    std::vector<std::size_t> generator_images,
                    std::vector<std::vector<std::size_t>> multiplication);

  OracleKind kind() const override { return OracleKind::kFiniteTable; }
  std::size_t rank() const override { return generator_images_.size(); }
  Verdict is_trivial(const Word& w) const override;
  bool has_normal_form() const override { return true; }
  Word normalize(const Word& w) const override;
  std::string id() const override;
  std::unique_ptr<WordOracle> clone() const override;

  std::size_t order() const { return table_.size(); }
  std::size_t identity() const { return identity_; }
  std::size_t evaluate(const Word& w) const;
  // The normal form of element `index`. Throws InputError if the generators
  // do not reach it.
  const Word& element_word(std::size_t index) const;
  // Elements reachable from the generators, in shortlex order of their
  // normal forms. This is the vertex set of the universal cover.
  const std::vector<std::size_t>& elements() const { return reachable_; }

 private:
  std::size_t identity_;
  std::vector<std::size_t> generator_images_;
  std::vector<std::size_t> generator_inverses_;
  std::vector<std::vector<std::size_t>> table_;
  std::vector<std::optional<Word>> normal_forms_;
  std::vector<std::size_t> reachable_;
};

// Semi-decision by search: explores freely reduced words obtained from w by
// inserting cyclic conjugates of relators (or their inverses) and freely
// reducing, never exceeding a length radius. Reaching the empty word proves
// triviality. A nonzero image in the abelianization proves nontriviality.
// Anything else is Undecided.
//
// Keeps a memo table, so one instance must not be shared between threads.
class BoundedBfsOracle final : public WordOracle {
 public:
  // With no radius, each query uses max(2 |w|, 2 * longest relator).
  explicit BoundedBfsOracle(Presentation presentation,
                            std::optional<std::size_t> radius = std::nullopt,
                            std::size_t max_states = 200000);

  OracleKind kind() const override { return OracleKind::kBoundedBfs; }
  std::size_t rank() const override { return presentation_.rank(); }
  Verdict is_trivial(const Word& w) const override;
  std::string id() const override;
  std::unique_ptr<WordOracle> clone() const override;

  std::size_t radius_for(const Word& w) const;
  // True iff the image of w in the abelianization is nonzero.
  bool abelian_image_nonzero(const Word& w) const;

 private:
  Verdict search(const Word& w, std::size_t radius) const;

  Presentation presentation_;
  std::optional<std::size_t> radius_;
  std::size_t max_states_;
  std::vector<Word> conjugates_;
  // Echelon basis of the relator exponent lattice: (pivot column, row).
  std::vector<std::pair<std::size_t, std::vector<std::int64_t>>> lattice_;
  mutable std::unordered_map<Word, Verdict> memo_;
};

// Dehn's algorithm. Exact for presentations satisfying the metric small
// cancellation condition C'(1/6), which the constructor checks.
class DehnOracle final : public WordOracle {
 public:
  // Throws InputError if some relator is not cyclically reduced or the
  // symmetrized relators have a piece of length >= 1/6 of a relator.
  explicit DehnOracle(Presentation presentation);

  OracleKind kind() const override { return OracleKind::kDehn; }
  std::size_t rank() const override { return presentation_.rank(); }
  Verdict is_trivial(const Word& w) const override;
  std::string id() const override;
  std::unique_ptr<WordOracle> clone() const override;

  // Applies Dehn reductions until none applies.
  Word dehn_reduce(const Word& w) const;

 private:
  Presentation presentation_;
  std::vector<Word> symmetrized_;
};

}  // namespace isoprofile
