// Acceptance suite: one line per criterion, exit status 1 if any fails.
// Pass --fast to skip the slow part of criterion 3 (Psi and Phi at 12).

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "isoprofile/enumerate.hpp"
#include "isoprofile/errors.hpp"
#include "isoprofile/oracle.hpp"
#include "isoprofile/parse.hpp"
#include "isoprofile/profile.hpp"
#include "isoprofile/structure.hpp"
#include "support.hpp"

using namespace isoprofile;
using testing_support::load_complex;

namespace {

// Collects the first few mismatches of a criterion.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    if (failures_++ < 3) notes_ << (notes_.tellp() > 0 ? "; " : "") << what;
  }
  bool ok() const { return failures_ == 0; }
  std::string notes() const {
    std::string s = notes_.str();
    if (failures_ > 3) s += "; " + std::to_string(failures_ - 3) + " more";
    return s;
  }

 private:
  int failures_ = 0;
  std::ostringstream notes_;
};

bool run_criterion(int number, const std::string& title, double limit_seconds,
                   const std::function<void(Check&)>& body) {
  Check check;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(check);
  } catch (const Error& e) {
    check.expect(false, std::string("error (") + error_kind_name(e.kind()) + "): " + e.what());
  } catch (const std::exception& e) {
    check.expect(false, std::string("exception: ") + e.what());
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = limit_seconds <= 0 || seconds <= limit_seconds;
  if (!in_time) {
    check.expect(false, "took longer than " + std::to_string(static_cast<int>(limit_seconds)) + " s");
  }
  char timing[32];
  std::snprintf(timing, sizeof timing, "%.2f s", seconds);
  std::cout << "criterion " << number << ' ' << (check.ok() ? "PASS" : "FAIL") << ' ' << title
            << " (" << timing << ")";
  if (!check.ok()) std::cout << ": " << check.notes();
  std::cout << std::endl;
  return check.ok();
}

std::string num(Coeff v) { return std::to_string(v); }

// Coefficient of `cell` in `a`, comparing group elements through the oracle.
Coeff coefficient(const Chain& a, const LiftedCell& cell, const WordOracle& oracle) {
  Coeff sum = 0;
  for (const auto& t : a.terms()) {
    if (t.cell.dim != cell.dim || t.cell.base != cell.base) continue;
    if (words_equal(oracle, t.cell.g, cell.g) == Verdict::kTrivial) sum += t.coeff;
  }
  return sum;
}

std::vector<Word> reduced_words(std::size_t rank, std::size_t max_len) {
  std::vector<Word> out{Word(rank)};
  std::vector<Word> level{Word(rank)};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<Word> next;
    for (const auto& w : level) {
      for (std::uint32_t g = 0; g < rank; ++g) {
        for (const bool inv : {false, true}) {
          const Word x = compose(w, Word::generator(rank, g, inv));
          if (x.length() == len) next.push_back(x);
        }
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    level = std::move(next);
  }
  return out;
}

void boundary_squared(Check& check) {
  std::mt19937_64 rng(101);
  for (const auto& name : testing_support::bundled_skeletons()) {
    const auto complex = load_complex(name);
    for (int i = 0; i < 200; ++i) {
      const int dim = 2 + static_cast<int>(rng() % (complex.top_dim() - 1));
      if (complex.count(dim) == 0) continue;
      const Chain a = testing_support::random_chain(rng, complex, dim, 4, 4, 3);
      const Chain dd = boundary(boundary(a, complex), complex);
      check.expect(dd.is_zero(), name + ": dd != 0 on a chain of dimension " +
                                     std::to_string(dim));
    }
  }
}

void free_group(Check& check) {
  const auto f2 = load_complex("f2.json");
  const auto cycles = connected_cycles_up_to_action(1, 10, f2);
  check.expect(cycles.representatives.empty(), "F2 has a connected cycle of norm <= 10");
  const auto psi = psi_table(10, f2);
  const auto phi = phi_table(10, f2);
  for (int n = 0; n <= 10; ++n) {
    check.expect(psi[n].value == 0, "Psi(" + std::to_string(n) + ") = " + num(psi[n].value));
    check.expect(phi[n].value == 0, "Phi(" + std::to_string(n) + ") = " + num(phi[n].value));
  }
}

void lattice_values(Check& check, bool slow) {
  const auto z2 = load_complex("z2.json");
  const Chain square = z2.base_boundary(2, 0);
  const Coeff fv = filling_volume(square, z2).volume;
  const auto window_fv = oracle::lattice_fv(testing_support::to_lattice(square));
  check.expect(fv == 1 && window_fv == 1,
               "FV(square) = " + num(fv) + ", window " + num(window_fv));

  const int top = slow ? 12 : 8;
  const auto psi = psi_table(top, z2);
  const auto phi = phi_table(top, z2);
  const auto expect = [&](const std::string& what, Coeff got, Coeff window, Coeff want) {
    check.expect(got == want && window == want,
                 what + " = " + num(got) + ", window " + num(window) + ", expected " + num(want));
  };
  // Phi from the window: partitions over the window Psi values.
  std::vector<std::int64_t> window_psi(top + 1, 0);
  for (int n = 1; n <= top; ++n) window_psi[n] = oracle::lattice_psi_by_walks(n);
  expect("Psi(4)", psi[4].value, window_psi[4], 1);
  expect("Psi(8)", psi[8].value, window_psi[8], 4);
  expect("Phi(8)", phi[8].value, oracle::partition_max_exhaustive(window_psi, 8), 4);
  if (slow) {
    expect("Psi(12)", psi[12].value, window_psi[12], 9);
    expect("Phi(12)", phi[12].value, oracle::partition_max_exhaustive(window_psi, 12), 9);
  }
}

void finite_cover(Check& check) {
  const auto c = load_complex("z2_mod.json");
  const auto table = finite_profile_table(6, c);
  for (int n = 0; n <= 6; ++n) {
    const auto window = oracle::z2_cover_profile(n);
    check.expect(table[n].value == n / 2 && window == n / 2,
                 "n = " + std::to_string(n) + ": " + num(table[n].value) + ", exhaustive " +
                     num(window));
  }
}

void decomposition(Check& check) {
  const auto z2 = load_complex("z2.json");
  std::mt19937_64 rng(505);
  for (int i = 0; i < 500; ++i) {
    Chain a;
    switch (i % 4) {
      case 0:
      case 1:
        a = testing_support::random_chain(rng, z2, 1, 4, 3, 2);
        break;
      case 2:
        a = testing_support::path_chain(testing_support::random_closed_lattice_word(rng, 8), z2);
        break;
      default:
        // Nearby faces with overlapping boundaries.
        a = boundary(testing_support::random_chain(rng, z2, 2, 3, 1, 2), z2);
        break;
    }
    if (a.is_zero()) continue;
    const auto parts = components(a, z2);
    const Chain da = boundary(a, z2);
    Coeff norms = 0, boundary_norms = 0;
    Chain sum(a.dim());
    for (const auto& b : parts) {
      norms += norm(b);
      boundary_norms += norm(boundary(b, z2));
      sum = add(sum, b, z2.oracle());
      check.expect(is_connected(b, z2), "a component is not connected");
      if (da.is_zero()) check.expect(is_cycle(b, z2), "a component of a cycle is not a cycle");
    }
    check.expect(norms == norm(a), "component norms do not add up");
    check.expect(boundary_norms == norm(da), "component boundary norms do not add up");
    check.expect(chains_equal(sum, a, z2.oracle()), "components do not sum to the chain");
  }
}

void translation_invariance(Check& check) {
  const auto z2 = load_complex("z2.json");
  std::mt19937_64 rng(606);
  for (int i = 0; i < 50; ++i) {
    const Chain a =
        testing_support::path_chain(testing_support::random_closed_lattice_word(rng, 6), z2);
    const Word g = testing_support::random_word(rng, 2, 6);
    const Chain moved = translate(g, a, z2.oracle());
    const Coeff x = filling_volume(a, z2).volume;
    const Coeff y = filling_volume(moved, z2).volume;
    check.expect(x == y, "FV " + num(x) + " vs translated " + num(y));
  }
}

void partition_recurrence(Check& check) {
  std::mt19937_64 rng(707);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Coeff> table(13, 0);
    DeltaTable delta;
    for (int k = 1; k <= 12; ++k) {
      table[k] = table[k - 1] + static_cast<Coeff>(rng() % 6);
      delta[k] = table[k];
    }
    const auto recurrence = partition_max(table, 12);
    for (int n = 0; n <= 12; ++n) {
      const auto exhaustive = oracle::partition_max_exhaustive(table, n);
      check.expect(recurrence[n] == exhaustive,
                   "partition_max(" + std::to_string(n) + ") = " + num(recurrence[n]) +
                       ", exhaustive " + num(exhaustive));
      const Coeff bound = chain2_bound(delta, n);
      check.expect(bound == exhaustive, "chain2_bound(" + std::to_string(n) + ") = " +
                                            num(bound) + ", exhaustive " + num(exhaustive));
    }
  }
}

void enumeration_counts(Check& check) {
  const auto z2 = load_complex("z2.json");
  const auto chains = connected_chains_up_to_action(1, 6, z2).counts_by_volume();
  const auto chain_census = oracle::lattice_census(6, true);
  for (int n = 1; n <= 6; ++n) {
    check.expect(chains[n] == static_cast<std::size_t>(chain_census.chains[n]),
                 "chains of norm " + std::to_string(n) + ": " + std::to_string(chains[n]) +
                     ", window " + std::to_string(chain_census.chains[n]));
  }
  const auto cycles = connected_cycles_up_to_action(1, 8, z2).counts_by_volume();
  const auto cycle_census = oracle::lattice_census(8, false);
  for (int n = 1; n <= 8; ++n) {
    check.expect(cycles[n] == static_cast<std::size_t>(cycle_census.cycles[n]),
                 "cycles of norm " + std::to_string(n) + ": " + std::to_string(cycles[n]) +
                     ", window " + std::to_string(cycle_census.cycles[n]));
  }
}

void oracle_consistency(Check& check) {
  const Presentation p = parse_presentation("<a, b | a b a^-1 b^-1>");
  const BoundedBfsOracle bfs(p);
  const FreeAbelianOracle abelian(2);
  for (const auto& w : reduced_words(2, 8)) {
    const Verdict got = bfs.is_trivial(w);
    const Verdict want = abelian.is_trivial(w);
    check.expect(got == want, format_word(w, p.generators()) + ": bfs " + verdict_name(got) +
                                  ", abelian " + verdict_name(want));
  }

  std::vector<std::unique_ptr<BoundedBfsOracle>> by_radius;
  for (std::size_t r = 0; r <= 16; r += 2) {
    by_radius.push_back(std::make_unique<BoundedBfsOracle>(p, r));
  }
  std::mt19937_64 rng(909);
  for (int i = 0; i < 1000; ++i) {
    // Half the words are closed so that the search has to do the work.
    const Word w = i % 2 == 0 ? testing_support::random_word(rng, 2, 10)
                              : testing_support::random_closed_lattice_word(rng, 10);
    Verdict decided = Verdict::kUndecided;
    for (const auto& o : by_radius) {
      const Verdict v = o->is_trivial(w);
      if (decided != Verdict::kUndecided) {
        check.expect(v == decided, format_word(w, p.generators()) +
                                       ": verdict changed at radius " +
                                       std::to_string(o->radius_for(w)));
      }
      if (v != Verdict::kUndecided) decided = v;
    }
  }
}

void coboundary_adjointness(Check& check) {
  for (const auto& name : testing_support::bundled_skeletons()) {
    const auto complex = load_complex(name);
    const auto& oracle = complex.oracle();
    const auto words = reduced_words(complex.rank(), 3);
    for (int t = 0; t < complex.top_dim(); ++t) {
      // Every coboundary entry is an incidence of the boundary.
      for (std::size_t base = 0; base < complex.count(t); ++base) {
        for (const auto& w : words) {
          const LiftedCell c = lifted(complex, t, base, w);
          for (const auto& up : coboundary(c, complex)) {
            const Coeff k = coefficient(boundary(Chain::single(up.cell), complex), c, oracle);
            check.expect(k == up.coeff, name + ": coboundary coefficient " + num(up.coeff) +
                                            " but boundary coefficient " + num(k));
          }
        }
      }
      // Every boundary incidence appears in the coboundary.
      for (std::size_t base = 0; base < complex.count(t + 1); ++base) {
        for (const auto& w : words) {
          const LiftedCell d = lifted(complex, t + 1, base, w);
          const Chain below = boundary(Chain::single(d), complex);
          for (const auto& down : below.terms()) {
            const auto up = coboundary(down.cell, complex);
            const Coeff k = coefficient(Chain(t + 1, up), d, oracle);
            check.expect(k == down.coeff, name + ": boundary coefficient " + num(down.coeff) +
                                              " but coboundary coefficient " + num(k));
          }
        }
      }
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  bool slow = true;
  for (int i = 1; i < argc; ++i) {
    if (std::string(argv[i]) == "--fast") slow = false;
  }
  bool all = true;
  all &= run_criterion(1, "boundary of boundary is zero on every bundled skeleton", 5,
                       boundary_squared);
  all &= run_criterion(2, "F2 has no cycles and Psi = Phi = 0 up to 10", 5, free_group);
  all &= run_criterion(3,
                       slow ? "Z2 FV(square), Psi(4), Psi(8), Phi(8), Psi(12), Phi(12) match "
                              "the lattice window"
                            : "Z2 FV(square), Psi(4), Psi(8), Phi(8) match the lattice window",
                       300, [&](Check& c) { lattice_values(c, slow); });
  all &= run_criterion(4, "Z/2 finite profile is floor(n/2) up to 6", 10, finite_cover);
  all &= run_criterion(5, "component decomposition laws on 500 chains", 30, decomposition);
  all &= run_criterion(6, "filling volume is translation invariant", 0, translation_invariance);
  all &= run_criterion(7, "partition recurrence matches exhaustive partitions", 0,
                       partition_recurrence);
  all &= run_criterion(8, "orbit counts of connected chains and cycles match the window", 0,
                       enumeration_counts);
  all &= run_criterion(9, "bfs oracle agrees with the abelian oracle and is radius monotone", 0,
                       oracle_consistency);
  all &= run_criterion(10, "boundary and coboundary incidences agree", 0,
                       coboundary_adjointness);
  return all ? 0 : 1;
}
