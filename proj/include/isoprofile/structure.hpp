#pragma once

#include <cstdint>
#include <iterator>
#include <vector>

#include "isoprofile/chain.hpp"
#include "isoprofile/skeleton.hpp"

namespace isoprofile {

// All subchains of a canonical chain A: the chains B with
// ||A|| = ||B|| + ||A - B||, i.e. with every coefficient between 0 and A's.
// There are prod(|n_i| + 1) of them, starting with 0 and ending with A.
class Subchains {
 public:
  explicit Subchains(Chain a);

  // Throws OverflowError if the count does not fit in 64 bits.
  std::uint64_t size() const;

  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = Chain;
    using difference_type = std::ptrdiff_t;
    using pointer = void;
    using reference = Chain;

    Chain operator*() const;
    iterator& operator++();
    bool operator==(const iterator& other) const { return done_ == other.done_; }

    // Magnitude of each coefficient of the current subchain.
    const std::vector<Coeff>& digits() const { return digits_; }

   private:
    friend class Subchains;
    iterator(const Subchains* parent, bool done);

    const Subchains* parent_;
    std::vector<Coeff> digits_;
    bool done_;
  };

  iterator begin() const { return iterator(this, false); }
  iterator end() const { return iterator(this, true); }

 private:
  Chain a_;
};

std::vector<Chain> subchains(const Chain& a);

bool is_subchain(const Chain& b, const Chain& a, const WordOracle& oracle);

// B is a subchain of A and dB is a subchain of dA.
bool is_component(const Chain& b, const Chain& a, const CellComplex& complex);

// A != 0 is connected when its only components are 0 and A. The zero chain is
// reported as not connected.
bool is_connected(const Chain& a, const CellComplex& complex);

// A = B_1 + ... + B_n with every B_i connected. The smallest-norm component
// is split off first (ties broken by enumeration order) and the rest
// decomposed recursively.
std::vector<Chain> components(const Chain& a, const CellComplex& complex);

}  // namespace isoprofile
