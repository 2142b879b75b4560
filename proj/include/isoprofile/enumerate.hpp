#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "isoprofile/chain.hpp"
#include "isoprofile/skeleton.hpp"

namespace isoprofile {

struct EnumerationLimits {
  // Largest number of chains any intermediate level may hold.
  std::size_t max_nodes = 1'000'000;
  unsigned workers = 1;
};

// One representative per G-orbit of connected chains (or cycles) of a
// dimension with norm at most max_volume, ordered by norm and then by orbit
// signature. The zero chain is never included.
struct ChainClassSet {
  int dim = 0;
  int max_volume = 0;
  std::vector<Chain> representatives;

  std::vector<std::size_t> counts_by_volume() const;
};

// The chains B + C where C = +-1 times one cell whose boundary cancels
// against dB, i.e. ||d(B + C)|| < ||dB|| + ||dC||. A cell already in B may
// only grow in magnitude. Canonical and deduplicated.
std::vector<Chain> adjacent_extensions(const Chain& b, const CellComplex& complex);

// Whether translate(g, A) = B for some g. Tries the translations carrying
// A's first cell onto each cell of B with the same base cell.
bool equal_up_to_translation(const Chain& a, const Chain& b,
                             const CellComplex& complex);

// A translation-invariant key: the least serialization of A translated so
// that one of its cells sits at the identity. Requires an oracle with normal
// forms.
std::string orbit_signature(const Chain& a, const CellComplex& complex);

// Seeds with +-sigma for each base cell and grows by adjacent_extensions,
// keeping one chain per orbit at each volume, then keeps the connected ones.
// Throws BudgetExceeded when a level outgrows limits.max_nodes.
ChainClassSet connected_chains_up_to_action(int dim, int max_volume,
                                            const CellComplex& complex,
                                            const EnumerationLimits& limits = {});

// The cycles among the connected chains. Growth prefixes that can no longer
// close up within the volume bound are pruned.
ChainClassSet connected_cycles_up_to_action(int dim, int max_volume,
                                            const CellComplex& complex,
                                            const EnumerationLimits& limits = {});

}  // namespace isoprofile
