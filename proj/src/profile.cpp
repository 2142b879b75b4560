#include "isoprofile/profile.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <unordered_set>

#include "isoprofile/enumerate.hpp"
#include "isoprofile/errors.hpp"
#include "isoprofile/parallel.hpp"

namespace isoprofile {

namespace {

Coeff sign(Coeff c) { return c < 0 ? -1 : 1; }

class FillingSearch {
 public:
  FillingSearch(const CellComplex& complex, const Budget& budget)
      : complex_(complex),
        budget_(budget),
        reach_(complex.max_boundary_norm(complex.top_dim())) {}

  std::optional<Chain> run(const Chain& cycle, Coeff limit) {
    visited_.clear();
    Chain found(complex_.top_dim());
    if (dfs(Chain(complex_.top_dim()), cycle, 0, limit, found)) return found;
    return std::nullopt;
  }

 private:
  bool dfs(const Chain& filling, const Chain& residual, Coeff used,
           Coeff limit, Chain& found) {
    if (residual.is_zero()) {
      found = filling;
      return true;
    }
    if (++nodes_ > budget_.max_nodes) {
      throw BudgetExceeded("filling search exceeded the node cap of " +
                           std::to_string(budget_.max_nodes));
    }
    const Coeff remaining = limit - used;
    if (remaining <= 0 || norm(residual) > remaining * reach_) return false;

    const auto& oracle = complex_.oracle();
    const Term& first = residual.terms().front();
    for (const auto& up : coboundary(first.cell, complex_)) {
      const Coeff s = sign(first.coeff) * sign(up.coeff);
      Chain grown = add(filling, Chain::single(up.cell, s), oracle);
      if (norm(grown) != used + 1) continue;
      if (oracle.has_normal_form() && !visited_.insert(chain_key(grown)).second) {
        continue;
      }
      const Chain cell_boundary =
          boundary(Chain::single(up.cell, s), complex_);
      const Chain rest = subtract(residual, cell_boundary, oracle);
      if (dfs(grown, rest, used + 1, limit, found)) return true;
    }
    return false;
  }

  const CellComplex& complex_;
  const Budget& budget_;
  Coeff reach_;
  std::size_t nodes_ = 0;
  std::unordered_set<std::string> visited_;
};

Chain dense_to_chain(const std::vector<Coeff>& coeffs, int dim,
                     const std::vector<LiftedCell>& cells) {
  std::vector<Term> terms;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] != 0) terms.push_back({cells[i], coeffs[i]});
  }
  return Chain(dim, std::move(terms));
}

// Visits every integer vector of the given length whose L1 norm is exactly
// `total`.
template <class Visit>
void for_each_vector_of_norm(std::size_t length, Coeff total, Visit&& visit) {
  std::vector<Coeff> v(length, 0);
  const auto rec = [&](auto&& self, std::size_t i, Coeff left) -> void {
    if (i + 1 == length) {
      if (left == 0) {
        v[i] = 0;
        visit(v);
      } else {
        v[i] = left;
        visit(v);
        v[i] = -left;
        visit(v);
      }
      v[i] = 0;
      return;
    }
    for (Coeff m = 0; m <= left; ++m) {
      if (m == 0) {
        v[i] = 0;
        self(self, i + 1, left);
      } else {
        v[i] = m;
        self(self, i + 1, left - m);
        v[i] = -m;
        self(self, i + 1, left - m);
      }
    }
    v[i] = 0;
  };
  if (length == 0) {
    if (total == 0) visit(v);
    return;
  }
  rec(rec, 0, total);
}

// The finite universal cover of a finite-table complex in dimensions q-1 and
// q, with boundary matrices over local cell indices.
struct FiniteCover {
  std::vector<LiftedCell> low_cells;   // dimension q-1
  std::vector<LiftedCell> top_cells;   // dimension q
  std::size_t below_count = 0;         // cells of dimension q-2
  // Sparse columns: boundary of each cell.
  std::vector<std::vector<std::pair<std::size_t, Coeff>>> low_boundary;
  std::vector<std::vector<std::pair<std::size_t, Coeff>>> top_boundary;
};

FiniteCover build_finite_cover(const CellComplex& complex,
                               const FiniteTableOracle& table) {
  const int q = complex.top_dim();
  const auto& elements = table.elements();
  std::map<std::size_t, std::size_t> position;
  for (std::size_t i = 0; i < elements.size(); ++i) position[elements[i]] = i;

  const auto cells_of = [&](int dim) {
    std::vector<LiftedCell> out;
    for (const auto x : elements) {
      for (std::size_t b = 0; b < complex.count(dim); ++b) {
        out.push_back({dim, b, table.element_word(x)});
      }
    }
    return out;
  };
  const auto index_of = [&](int dim, std::size_t base, const Word& g) {
    const auto pos = position.at(table.evaluate(g));
    return pos * complex.count(dim) + base;
  };
  const auto boundary_columns = [&](const std::vector<LiftedCell>& cells,
                                    int dim) {
    std::vector<std::vector<std::pair<std::size_t, Coeff>>> cols;
    for (const auto& c : cells) {
      std::map<std::size_t, Coeff> col;
      for (const auto& bt : complex.base_boundary(dim, c.base).terms()) {
        const auto j = index_of(dim - 1, bt.cell.base, compose(c.g, bt.cell.g));
        col[j] = checked_add(col[j], bt.coeff);
      }
      std::vector<std::pair<std::size_t, Coeff>> sparse;
      for (const auto& [j, k] : col) {
        if (k != 0) sparse.emplace_back(j, k);
      }
      cols.push_back(std::move(sparse));
    }
    return cols;
  };

  FiniteCover cover;
  cover.low_cells = cells_of(q - 1);
  cover.top_cells = cells_of(q);
  cover.below_count = elements.size() * complex.count(q - 2);
  cover.low_boundary = boundary_columns(cover.low_cells, q - 1);
  cover.top_boundary = boundary_columns(cover.top_cells, q);
  return cover;
}

std::vector<Coeff> apply(const std::vector<std::vector<std::pair<std::size_t, Coeff>>>& cols,
                         std::size_t rows, const std::vector<Coeff>& v) {
  std::vector<Coeff> out(rows, 0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    for (const auto& [j, k] : cols[i]) {
      out[j] = checked_add(out[j], checked_mul(v[i], k));
    }
  }
  return out;
}

std::vector<Coeff> delta_vector(const DeltaTable& delta, int from, int n) {
  std::vector<Coeff> table(static_cast<std::size_t>(n) + 1, 0);
  for (int k = from; k <= n; ++k) {
    auto it = delta.find(k);
    if (it == delta.end()) {
      throw InputError("delta table has no entry for " + std::to_string(k));
    }
    table[k] = it->second;
  }
  return table;
}

}  // namespace

Filling filling_volume(const Chain& cycle, const CellComplex& complex,
                       const Budget& budget) {
  const int q = complex.top_dim();
  if (cycle.dim() != q - 1) {
    throw InputError("filling needs a chain of dimension q - 1 = " +
                     std::to_string(q - 1));
  }
  if (!is_cycle(cycle, complex)) throw InputError("chain is not a cycle");
  if (cycle.is_zero()) return {0, Chain(q)};

  const Coeff reach = complex.max_boundary_norm(q);
  Coeff start = 1;
  if (reach > 0) start = std::max<Coeff>(1, (norm(cycle) + reach - 1) / reach);
  FillingSearch search(complex, budget);
  for (Coeff limit = start; limit <= budget.max_fill_volume; ++limit) {
    if (auto found = search.run(cycle, limit)) {
      return {norm(*found), std::move(*found)};
    }
  }
  throw BudgetExceeded("no filling of volume <= " +
                       std::to_string(budget.max_fill_volume) + " found");
}

bool verify_filling(const Chain& cycle, const Filling& filling,
                    const CellComplex& complex) {
  if (filling.witness.dim() != complex.top_dim()) return false;
  const Chain canon = canonicalize(filling.witness, complex.oracle());
  if (norm(canon) != filling.volume) return false;
  return chains_equal(boundary(canon, complex), cycle, complex.oracle());
}

std::vector<ProfileEntry> psi_table(int max_n, const CellComplex& complex,
                                    const Budget& budget) {
  if (max_n < 0) throw InputError("volume must be nonnegative");
  const int q = complex.top_dim();
  const auto cycles = connected_cycles_up_to_action(
      q - 1, max_n, complex, {budget.max_nodes, budget.workers});
  const auto& reps = cycles.representatives;
  auto fillings = parallel_map<Filling>(
      reps.size(), budget.workers, complex,
      [&](const CellComplex& local, std::size_t i) {
        return filling_volume(reps[i], local, budget);
      });

  std::vector<ProfileEntry> table(static_cast<std::size_t>(max_n) + 1);
  std::vector<std::optional<std::size_t>> best(table.size());
  for (std::size_t i = 0; i < reps.size(); ++i) {
    const auto n = static_cast<std::size_t>(norm(reps[i]));
    if (!best[n] || fillings[i].volume > fillings[*best[n]].volume) best[n] = i;
  }
  std::optional<std::size_t> running;
  for (std::size_t n = 1; n < table.size(); ++n) {
    if (best[n] &&
        (!running || fillings[*best[n]].volume > fillings[*running].volume)) {
      running = best[n];
    }
    if (running) {
      table[n].value = fillings[*running].volume;
      table[n].witnesses.emplace_back(reps[*running], fillings[*running]);
    }
  }
  return table;
}

Coeff psi(int n, const CellComplex& complex, const Budget& budget) {
  return psi_table(n, complex, budget).back().value;
}

std::vector<ProfileEntry> phi_table(int max_n, const CellComplex& complex,
                                    const Budget& budget) {
  if (complex.oracle().kind() == OracleKind::kFiniteTable) {
    throw WrongAlgorithm(
        "the partition formula applies to infinite groups; use finite-profile "
        "for a finite-table oracle");
  }
  const auto psi_values = psi_table(max_n, complex, budget);
  std::vector<Coeff> values;
  for (const auto& e : psi_values) values.push_back(e.value);
  std::vector<int> first_part;
  const auto phi_values = partition_max(values, max_n, &first_part);

  std::vector<ProfileEntry> table(psi_values.size());
  for (int n = 1; n <= max_n; ++n) {
    auto& entry = table[n];
    entry.value = phi_values[n];
    for (int m = n; m > 0; m -= first_part[m]) {
      const int part = first_part[m];
      entry.partition.push_back(part);
      for (const auto& w : psi_values[part].witnesses) entry.witnesses.push_back(w);
    }
  }
  return table;
}

Coeff phi(int n, const CellComplex& complex, const Budget& budget) {
  return phi_table(n, complex, budget).back().value;
}

std::vector<ProfileEntry> finite_profile_table(int max_n,
                                               const CellComplex& complex,
                                               const Budget& budget) {
  const auto* table = dynamic_cast<const FiniteTableOracle*>(&complex.oracle());
  if (!table) {
    throw WrongAlgorithm("finite-profile needs a finite-table oracle");
  }
  if (max_n < 0) throw InputError("volume must be nonnegative");
  const int q = complex.top_dim();
  const FiniteCover cover = build_finite_cover(complex, *table);

  std::size_t nodes = 0;
  const auto tick = [&] {
    if (++nodes > budget.max_nodes) {
      throw BudgetExceeded("finite sweep exceeded the node cap of " +
                           std::to_string(budget.max_nodes));
    }
  };

  // Every nonzero (q-1)-cycle of norm <= max_n. On the cover of a K(G,1)
  // skeleton each of them is a boundary.
  std::map<std::vector<Coeff>, std::optional<std::vector<Coeff>>> targets;
  for (Coeff total = 1; total <= max_n; ++total) {
    for_each_vector_of_norm(cover.low_cells.size(), total,
                            [&](const std::vector<Coeff>& s) {
                              tick();
                              const auto ds = apply(cover.low_boundary,
                                                    cover.below_count, s);
                              if (std::all_of(ds.begin(), ds.end(),
                                              [](Coeff x) { return x == 0; })) {
                                targets.emplace(s, std::nullopt);
                              }
                            });
  }

  std::map<std::vector<Coeff>, Coeff> volume_of;
  std::size_t unflagged = targets.size();
  for (Coeff volume = 1; unflagged > 0; ++volume) {
    if (volume > budget.max_fill_volume) {
      throw BudgetExceeded("some cycle has no filling of volume <= " +
                           std::to_string(budget.max_fill_volume));
    }
    for_each_vector_of_norm(
        cover.top_cells.size(), volume, [&](const std::vector<Coeff>& t) {
          tick();
          const auto dt = apply(cover.top_boundary, cover.low_cells.size(), t);
          auto it = targets.find(dt);
          if (it == targets.end() || it->second) return;
          it->second = t;
          volume_of[dt] = volume;
          --unflagged;
        });
  }

  std::vector<ProfileEntry> out(static_cast<std::size_t>(max_n) + 1);
  for (int n = 1; n <= max_n; ++n) {
    const std::vector<Coeff>* hardest = nullptr;
    Coeff value = 0;
    for (const auto& [s, fill] : targets) {
      Coeff size = 0;
      for (const auto x : s) size += x < 0 ? -x : x;
      if (size > n) continue;
      if (!hardest || volume_of[s] > value) {
        hardest = &s;
        value = volume_of[s];
      }
    }
    out[n].value = value;
    if (hardest) {
      const Chain cycle = canonicalize(
          dense_to_chain(*hardest, q - 1, cover.low_cells), complex.oracle());
      const Chain fill = canonicalize(
          dense_to_chain(*targets.at(*hardest), q, cover.top_cells),
          complex.oracle());
      out[n].witnesses.emplace_back(cycle, Filling{value, fill});
    }
  }
  return out;
}

Coeff finite_profile(int n, const CellComplex& complex, const Budget& budget) {
  return finite_profile_table(n, complex, budget).back().value;
}

std::vector<Coeff> partition_max(const std::vector<Coeff>& table, int max_n,
                                 std::vector<int>* parts) {
  if (max_n < 0) throw InputError("volume must be nonnegative");
  if (table.size() < static_cast<std::size_t>(max_n) + 1) {
    throw InputError("table too short for the requested volume");
  }
  std::vector<Coeff> f(static_cast<std::size_t>(max_n) + 1, 0);
  std::vector<int> choice(f.size(), 0);
  for (int n = 1; n <= max_n; ++n) {
    for (int k = 1; k <= n; ++k) {
      const Coeff candidate = checked_add(table[k], f[n - k]);
      if (k == 1 || candidate > f[n]) {
        f[n] = candidate;
        choice[n] = k;
      }
    }
  }
  if (parts) *parts = std::move(choice);
  return f;
}

Coeff chain2_bound(const DeltaTable& delta, int n) {
  if (n < 0) throw InputError("volume must be nonnegative");
  return partition_max(delta_vector(delta, 1, n), n)[n];
}

Coeff disk_combination(const DeltaTable& delta, int circles, int n) {
  if (circles < 1) throw InputError("need at least one boundary circle");
  if (n < 0) throw InputError("volume must be nonnegative");
  if (auto it = delta.find(0); it != delta.end() && it->second != 0) {
    throw InputError("delta(0) must be 0");
  }
  const auto table = delta_vector(delta, 1, n);
  // best[m]: max over compositions of m into the circles handled so far.
  std::vector<Coeff> best = table;
  for (int c = 2; c <= circles; ++c) {
    std::vector<Coeff> next(best.size(), 0);
    for (int m = 0; m <= n; ++m) {
      for (int x = 0; x <= m; ++x) {
        const Coeff candidate = checked_add(table[x], best[m - x]);
        if (x == 0 || candidate > next[m]) next[m] = candidate;
      }
    }
    best = std::move(next);
  }
  return best[n];
}

}  // namespace isoprofile
