#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "isoprofile/chain.hpp"
#include "isoprofile/skeleton.hpp"

namespace isoprofile {

// Search caps. Exceeding either aborts the whole query with BudgetExceeded;
// no partial maximum is ever reported.
struct Budget {
  Coeff max_fill_volume = 64;
  std::size_t max_nodes = 1'000'000;
  unsigned workers = 1;
};

struct Filling {
  Coeff volume = 0;
  Chain witness;  // a q-chain with boundary equal to the cycle

  friend bool operator==(const Filling&, const Filling&) = default;
};

// Minimum norm of a q-chain whose boundary is `cycle`, a (q-1)-cycle.
//
// Iterative deepening on the volume N. Within one depth the search takes the
// first cell c of the residual R = A - dB and branches over the q-cells
// containing c in their boundary, each with the sign that moves c's
// coefficient toward zero. Any filling F of A with B a subchain of F has a
// cell of F - B among these branches, so every filling of volume <= N is
// reachable and the first N that succeeds is the minimum.
//
// Throws BudgetExceeded past budget.max_fill_volume or budget.max_nodes
// (either the budget is too small or no filling exists), InputError if
// `cycle` is not a (q-1)-cycle.
Filling filling_volume(const Chain& cycle, const CellComplex& complex,
                       const Budget& budget = {});

// dB = A and ||B|| = volume.
bool verify_filling(const Chain& cycle, const Filling& filling,
                    const CellComplex& complex);

// One value of a profile together with the cycle that attains it and a
// minimal filling of that cycle. For Phi the witness is one such pair per
// part of the maximizing partition.
struct ProfileEntry {
  Coeff value = 0;
  std::vector<int> partition;
  std::vector<std::pair<Chain, Filling>> witnesses;
};

// Psi(k) for k = 0..max_n: the largest filling volume of a connected
// (q-1)-cycle of norm <= k, 0 when there is none.
std::vector<ProfileEntry> psi_table(int max_n, const CellComplex& complex,
                                    const Budget& budget = {});
Coeff psi(int n, const CellComplex& complex, const Budget& budget = {});

// Phi(k) for k = 0..max_n: the largest sum of Psi over a partition of k.
// This is the chain profile for infinite groups; throws WrongAlgorithm for a
// finite-table oracle.
std::vector<ProfileEntry> phi_table(int max_n, const CellComplex& complex,
                                    const Budget& budget = {});
Coeff phi(int n, const CellComplex& complex, const Budget& budget = {});

// The exact profile of a finite group: lists every nonzero (q-1)-cycle of
// norm <= max_n on the finite cover, then sweeps q-chains by increasing norm
// and marks their boundaries until every cycle is marked. Throws
// WrongAlgorithm unless the oracle is a finite table.
std::vector<ProfileEntry> finite_profile_table(int max_n,
                                               const CellComplex& complex,
                                               const Budget& budget = {});
Coeff finite_profile(int n, const CellComplex& complex,
                     const Budget& budget = {});

// max over partitions P of n of sum_{k in P} table[k], for n = 0..max_n, by
// f(0) = 0, f(n) = max_{1<=k<=n} table[k] + f(n - k). `parts` (optional)
// receives, per n, the k chosen first.
std::vector<Coeff> partition_max(const std::vector<Coeff>& table, int max_n,
                                 std::vector<int>* parts = nullptr);

using DeltaTable = std::map<int, Coeff>;

// Upper bound on the 2-dimensional chain profile from a Dehn function
// table: max over partitions of n of the sum of delta over the parts. Throws
// InputError if some delta(1..n) is missing.
Coeff chain2_bound(const DeltaTable& delta, int n);

// Upper bound for surfaces with k boundary circles: max over n_1 + ... + n_k
// = n (parts >= 0) of sum delta(n_i). delta(0) must be 0 or absent.
Coeff disk_combination(const DeltaTable& delta, int circles, int n);

}  // namespace isoprofile
