#include "isoprofile/enumerate.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "isoprofile/errors.hpp"
#include "isoprofile/parallel.hpp"
#include "isoprofile/structure.hpp"

namespace isoprofile {

namespace {

// The translate of A with the least key among those placing one of A's cells
// of its first base cell at the identity.
std::pair<std::string, Chain> canonical_translate(const Chain& a,
                                                  const CellComplex& complex) {
  const auto& oracle = complex.oracle();
  std::optional<std::pair<std::string, Chain>> best;
  const std::size_t first_base = a.terms().front().cell.base;
  for (const auto& t : a.terms()) {
    if (t.cell.base != first_base) break;
    Chain moved = translate(invert(t.cell.g), a, oracle);
    std::string key = chain_key(moved);
    if (!best || key < best->first) best.emplace(std::move(key), std::move(moved));
  }
  return std::move(*best);
}

// Existing coefficient of `cell` in canonical chain B.
Coeff coefficient_of(const Chain& b, const LiftedCell& cell,
                     const WordOracle& oracle) {
  for (const auto& t : b.terms()) {
    if (t.cell.base != cell.base) continue;
    if (t.cell.g == cell.g) return t.coeff;
    if (oracle.has_normal_form()) continue;
    const Verdict v = words_equal(oracle, t.cell.g, cell.g);
    if (v == Verdict::kUndecided) {
      throw OracleUndecided("cannot decide whether two lifted cells coincide");
    }
    if (v == Verdict::kTrivial) return t.coeff;
  }
  return 0;
}

// ||A + s B|| for canonical chains under an oracle with normal forms, by
// merging the sorted term lists.
Coeff merged_norm(const Chain& a, const Chain& b, Coeff s) {
  const auto& x = a.terms();
  const auto& y = b.terms();
  Coeff total = 0;
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    Coeff k;
    if (j == y.size() || (i < x.size() && x[i].cell < y[j].cell)) {
      k = x[i++].coeff;
    } else if (i == x.size() || y[j].cell < x[i].cell) {
      k = checked_mul(s, y[j++].coeff);
    } else {
      k = checked_add(x[i++].coeff, checked_mul(s, y[j++].coeff));
    }
    total = checked_add(total, k < 0 ? -k : k);
  }
  return total;
}

// Keeps one chain per orbit, in first-seen order (pairwise fallback).
class PairwiseOrbits {
 public:
  explicit PairwiseOrbits(const CellComplex& complex) : complex_(complex) {}

  bool insert(const Chain& c) {
    const Coeff n = norm(c);
    for (const auto& existing : chains_) {
      if (existing.size() == c.size() && norm(existing) == n &&
          equal_up_to_translation(existing, c, complex_)) {
        return false;
      }
    }
    chains_.push_back(c);
    return true;
  }
  std::vector<Chain> take() { return std::move(chains_); }
  std::size_t size() const { return chains_.size(); }

 private:
  const CellComplex& complex_;
  std::vector<Chain> chains_;
};

struct Extension {
  Chain chain;
  Coeff boundary_norm;
};

// adjacent_extensions, also reporting ||d(B + C)||.
std::vector<Extension> extensions(const Chain& b, const CellComplex& complex) {
  if (b.is_zero()) throw InputError("cannot extend the zero chain");
  const int dim = b.dim();
  const auto& oracle = complex.oracle();
  if (dim == 0) return {};
  const Chain db = boundary(b, complex);
  const Coeff db_norm = norm(db);

  std::set<LiftedCell> candidates;
  for (const auto& t : db.terms()) {
    for (auto& up : coboundary(t.cell, complex)) candidates.insert(up.cell);
  }

  std::map<std::string, Extension> out;
  std::vector<Extension> pairwise;
  for (const auto& cell : candidates) {
    const Coeff existing = coefficient_of(b, cell, oracle);
    const Chain cell_boundary = boundary(Chain::single(cell), complex);
    const Coeff cell_norm = norm(cell_boundary);
    for (const Coeff s : {Coeff{1}, Coeff{-1}}) {
      if (existing != 0 && (existing > 0) != (s > 0)) continue;
      const Coeff merged = oracle.has_normal_form()
                               ? merged_norm(db, cell_boundary, s)
                               : norm(add(db, scale(cell_boundary, s), oracle));
      if (merged >= db_norm + cell_norm) continue;
      Chain grown = add(b, Chain::single(cell, s), oracle);
      if (oracle.has_normal_form()) {
        std::string key = chain_key(grown);
        out.emplace(std::move(key), Extension{std::move(grown), merged});
      } else if (std::none_of(pairwise.begin(), pairwise.end(),
                              [&](const Extension& e) {
                                return chains_equal(e.chain, grown, oracle);
                              })) {
        pairwise.push_back({std::move(grown), merged});
      }
    }
  }
  if (!oracle.has_normal_form()) return pairwise;
  std::vector<Extension> result;
  result.reserve(out.size());
  for (auto& [key, e] : out) result.push_back(std::move(e));
  return result;
}

ChainClassSet enumerate_connected(int dim, int max_volume,
                                  const CellComplex& complex,
                                  const EnumerationLimits& limits,
                                  bool cycles_only) {
  if (dim < 1 || dim > complex.top_dim()) {
    throw InputError("chain dimension must lie in 1..q");
  }
  if (max_volume < 0) throw InputError("volume bound must be nonnegative");
  ChainClassSet result;
  result.dim = dim;
  result.max_volume = max_volume;
  if (max_volume == 0) return result;

  const bool signatures = complex.oracle().has_normal_form();
  const Coeff reach = complex.max_boundary_norm(dim);

  const auto cap = [&](std::size_t size) {
    if (size > limits.max_nodes) {
      throw BudgetExceeded("enumeration level exceeds the node cap of " +
                           std::to_string(limits.max_nodes));
    }
  };

  // Deduplicates one level, keeping canonical translates ordered by key.
  // With signatures, each chain arrives already paired with its key.
  using Keyed = std::pair<std::string, Chain>;
  const auto dedup = [&](std::vector<std::vector<Keyed>>& batches) {
    std::vector<Chain> out;
    if (signatures) {
      std::map<std::string, Chain> by_key;
      for (auto& batch : batches) {
        for (auto& [key, c] : batch) {
          by_key.emplace(std::move(key), std::move(c));
          cap(by_key.size());
        }
      }
      out.reserve(by_key.size());
      for (auto& [key, c] : by_key) out.push_back(std::move(c));
      return out;
    }
    PairwiseOrbits orbits(complex);
    for (auto& batch : batches) {
      for (auto& [key, c] : batch) {
        orbits.insert(c);
        cap(orbits.size());
      }
    }
    return orbits.take();
  };
  const auto keyed = [&](Chain c, const CellComplex& local) -> Keyed {
    if (!signatures) return {std::string(), std::move(c)};
    return canonical_translate(c, local);
  };

  // A cycle of volume n built through B_k satisfies ||dB_k|| <= (n - k) * reach.
  const auto can_close = [&](Coeff boundary_norm, int volume) {
    return !cycles_only || boundary_norm <= (max_volume - volume) * reach;
  };

  std::vector<std::vector<Chain>> levels(max_volume + 1);
  {
    std::vector<std::vector<Keyed>> seeds(1);
    for (std::size_t base = 0; base < complex.count(dim); ++base) {
      for (const Coeff s : {Coeff{1}, Coeff{-1}}) {
        Chain c = Chain::single(lifted(complex, dim, base, complex.identity()), s);
        if (can_close(norm(boundary(c, complex)), 1)) seeds[0].push_back(keyed(std::move(c), complex));
      }
    }
    levels[1] = dedup(seeds);
  }
  for (int k = 1; k < max_volume; ++k) {
    const auto& level = levels[k];
    auto grown = parallel_map<std::vector<Keyed>>(
        level.size(), limits.workers, complex,
        [&](const CellComplex& local, std::size_t i) {
          std::vector<Keyed> kept;
          for (auto& e : extensions(level[i], local)) {
            if (can_close(e.boundary_norm, k + 1)) {
              kept.push_back(keyed(std::move(e.chain), local));
            }
          }
          return kept;
        });
    levels[k + 1] = dedup(grown);
  }

  for (int k = 1; k <= max_volume; ++k) {
    const auto& level = levels[k];
    const auto keep = parallel_map<char>(
        level.size(), limits.workers, complex,
        [&](const CellComplex& local, std::size_t i) -> char {
          if (cycles_only && !is_cycle(level[i], local)) return 0;
          return is_connected(level[i], local) ? 1 : 0;
        });
    for (std::size_t i = 0; i < level.size(); ++i) {
      if (keep[i]) result.representatives.push_back(level[i]);
    }
  }
  return result;
}

}  // namespace

std::vector<std::size_t> ChainClassSet::counts_by_volume() const {
  std::vector<std::size_t> counts(static_cast<std::size_t>(max_volume) + 1, 0);
  for (const auto& c : representatives) {
    const auto n = static_cast<std::size_t>(norm(c));
    if (n < counts.size()) ++counts[n];
  }
  return counts;
}

std::vector<Chain> adjacent_extensions(const Chain& b,
                                       const CellComplex& complex) {
  std::vector<Chain> out;
  for (auto& e : extensions(b, complex)) out.push_back(std::move(e.chain));
  return out;
}

bool equal_up_to_translation(const Chain& a, const Chain& b,
                             const CellComplex& complex) {
  if (a.dim() != b.dim() || a.size() != b.size()) return false;
  if (a.is_zero()) return true;
  const auto& oracle = complex.oracle();
  const Term& first = a.terms().front();
  const Word first_inverse = invert(first.cell.g);
  for (const auto& t : b.terms()) {
    if (t.cell.base != first.cell.base || t.coeff != first.coeff) continue;
    const Word g = compose(t.cell.g, first_inverse);
    if (chains_equal(translate(g, a, oracle), b, oracle)) return true;
  }
  return false;
}

std::string orbit_signature(const Chain& a, const CellComplex& complex) {
  if (!complex.oracle().has_normal_form()) {
    throw WrongAlgorithm("orbit signatures need an oracle with normal forms");
  }
  if (a.is_zero()) return chain_key(a);
  return canonical_translate(a, complex).first;
}

ChainClassSet connected_chains_up_to_action(int dim, int max_volume,
                                            const CellComplex& complex,
                                            const EnumerationLimits& limits) {
  return enumerate_connected(dim, max_volume, complex, limits, false);
}

ChainClassSet connected_cycles_up_to_action(int dim, int max_volume,
                                            const CellComplex& complex,
                                            const EnumerationLimits& limits) {
  return enumerate_connected(dim, max_volume, complex, limits, true);
}

}  // namespace isoprofile
