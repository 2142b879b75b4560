#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "isoprofile/oracle.hpp"
#include "isoprofile/words.hpp"

namespace isoprofile {

using Coeff = std::int64_t;

// Throw OverflowError instead of wrapping.
Coeff checked_add(Coeff a, Coeff b);
Coeff checked_mul(Coeff a, Coeff b);

// The cell g * sigma of the universal cover, for a base cell sigma of the
// given dimension.
struct LiftedCell {
  int dim = 0;
  std::size_t base = 0;
  Word g;

  friend bool operator==(const LiftedCell&, const LiftedCell&) = default;
  // By dimension, then base cell index, then shortlex word.
  friend std::strong_ordering operator<=>(const LiftedCell& a,
                                          const LiftedCell& b) {
    if (auto c = a.dim <=> b.dim; c != 0) return c;
    if (auto c = a.base <=> b.base; c != 0) return c;
    return a.g <=> b.g;
  }
};

struct Term {
  LiftedCell cell;
  Coeff coeff = 0;

  friend bool operator==(const Term&, const Term&) = default;
};

// A finitely supported integer combination of lifted cells of one dimension.
// Chains built directly from terms may repeat cells; canonicalize() merges
// cells that are equal in G, drops zero terms and sorts.
class Chain {
 public:
  explicit Chain(int dim = 0) : dim_(dim) {}
  // Throws InputError if some term has a different dimension.
  Chain(int dim, std::vector<Term> terms);

  static Chain single(LiftedCell cell, Coeff coeff = 1);

  int dim() const { return dim_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  friend bool operator==(const Chain&, const Chain&) = default;

 private:
  int dim_;
  std::vector<Term> terms_;
};

// Throws OracleUndecided when an equality needed for merging is undecided.
Chain canonicalize(const Chain& chain, const WordOracle& oracle);

// Sum of |coeff|; meaningful on canonical chains.
Coeff norm(const Chain& chain);

Chain add(const Chain& a, const Chain& b, const WordOracle& oracle);
Chain subtract(const Chain& a, const Chain& b, const WordOracle& oracle);
Chain negate(const Chain& a);
Chain scale(const Chain& a, Coeff k);

// Left-multiplies every cell's word by g.
Chain translate(const Word& g, const Chain& a, const WordOracle& oracle);

bool chains_equal(const Chain& a, const Chain& b, const WordOracle& oracle);

// Structural serialization of a chain as stored. For canonical chains under
// an oracle with normal forms, equal keys mean equal chains.
std::string chain_key(const Chain& chain);

}  // namespace isoprofile
