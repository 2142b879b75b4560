#include <gtest/gtest.h>

#include "isoprofile/enumerate.hpp"
#include "isoprofile/errors.hpp"
#include "isoprofile/parse.hpp"
#include "isoprofile/structure.hpp"
#include "support.hpp"

namespace isoprofile {
namespace {

using testing_support::lattice_word;
using testing_support::load_complex;

LiftedCell edge(int dir, int x, int y) {
  return {1, static_cast<std::size_t>(dir), lattice_word(x, y)};
}

bool contains(const std::vector<Chain>& list, const Chain& c) {
  return std::find(list.begin(), list.end(), c) != list.end();
}

TEST(AdjacentExtensions, LatticeEdge) {
  const auto z2 = load_complex("z2.json");
  const Chain b = Chain::single(edge(0, 0, 0));
  const auto ext = adjacent_extensions(b, z2);
  const auto& o = z2.oracle();
  EXPECT_TRUE(contains(ext, add(b, Chain::single(edge(1, 1, 0)), o)));
  EXPECT_TRUE(contains(ext, add(b, Chain::single(edge(1, 0, 0), -1), o)));
  EXPECT_FALSE(contains(ext, Chain::single(edge(0, 0, 0), 2)));
  EXPECT_FALSE(contains(ext, add(b, Chain::single(edge(1, 4, 4)), o)));
  for (const auto& c : ext) {
    EXPECT_EQ(norm(c), 2);
    EXPECT_LT(norm(boundary(c, z2)), norm(boundary(b, z2)) + 2);
  }
  // Six edges meet the two endpoints besides b itself, each with the one
  // sign that cancels.
  EXPECT_EQ(ext.size(), 6u);
}

TEST(AdjacentExtensions, FreeGroupAndCycles) {
  const auto f2 = load_complex("f2.json");
  EXPECT_EQ(adjacent_extensions(Chain::single(edge(0, 0, 0)), f2).size(), 6u);
  const auto z2 = load_complex("z2.json");
  const Chain square = z2.base_boundary(2, 0);
  EXPECT_TRUE(adjacent_extensions(square, z2).empty());
  EXPECT_THROW(adjacent_extensions(Chain(1), z2), InputError);
}

TEST(EqualUpToTranslation, Examples) {
  const auto z2 = load_complex("z2.json");
  const Chain square = z2.base_boundary(2, 0);
  const auto& gens = z2.spec().presentation.generators();
  EXPECT_TRUE(equal_up_to_translation(
      square, translate(parse_word("a^3 b^-1", gens), square, z2.oracle()), z2));
  EXPECT_FALSE(equal_up_to_translation(Chain::single(edge(0, 0, 0)),
                                       Chain::single(edge(1, 0, 0)), z2));
  EXPECT_FALSE(equal_up_to_translation(square, negate(square), z2));
}

TEST(OrbitSignature, TranslationInvariant) {
  const auto z2 = load_complex("z2.json");
  std::mt19937_64 rng(4);
  for (int i = 0; i < 100; ++i) {
    const Chain a = testing_support::random_chain(rng, z2, 1, 4, 3, 2);
    if (a.is_zero()) continue;
    const Word g = testing_support::random_word(rng, 2, 5);
    EXPECT_EQ(orbit_signature(a, z2), orbit_signature(translate(g, a, z2.oracle()), z2));
  }
}

TEST(ConnectedChains, SmallCases) {
  const auto z2 = load_complex("z2.json");
  EXPECT_EQ(connected_chains_up_to_action(1, 1, z2).representatives.size(), 4u);
  EXPECT_TRUE(connected_chains_up_to_action(1, 0, z2).representatives.empty());
  const auto surface = load_complex("surface2.json");
  EXPECT_EQ(connected_chains_up_to_action(1, 1, surface).representatives.size(), 8u);
  EXPECT_THROW(connected_chains_up_to_action(0, 2, z2), InputError);
  EXPECT_THROW(connected_chains_up_to_action(3, 2, z2), InputError);
}

TEST(ConnectedChains, MatchesWindowOracle) {
  const auto z2 = load_complex("z2.json");
  const auto set = connected_chains_up_to_action(1, 5, z2);
  const auto census = oracle::lattice_census(5, true);
  const auto counts = set.counts_by_volume();
  for (int n = 1; n <= 5; ++n) EXPECT_EQ(counts[n], census.chains[n]) << "norm " << n;
}

TEST(ConnectedChains, SoundAndDeduplicated) {
  const auto z2 = load_complex("z2.json");
  const auto set = connected_chains_up_to_action(1, 4, z2);
  const auto& reps = set.representatives;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    EXPECT_TRUE(is_connected(reps[i], z2));
    EXPECT_LE(norm(reps[i]), 4);
    for (std::size_t j = i + 1; j < reps.size(); ++j) {
      EXPECT_FALSE(equal_up_to_translation(reps[i], reps[j], z2));
    }
  }
  // Every class of volume <= 3 is again found with the larger bound.
  const auto smaller = connected_chains_up_to_action(1, 3, z2).representatives;
  for (const auto& c : smaller) EXPECT_TRUE(contains(reps, c));
}

TEST(ConnectedCycles, Examples) {
  const auto f2 = load_complex("f2.json");
  EXPECT_TRUE(connected_cycles_up_to_action(1, 8, f2).representatives.empty());
  const auto z2 = load_complex("z2.json");
  EXPECT_TRUE(connected_cycles_up_to_action(1, 3, z2).representatives.empty());
  const auto four = connected_cycles_up_to_action(1, 4, z2).representatives;
  ASSERT_EQ(four.size(), 2u);
  const Chain square = z2.base_boundary(2, 0);
  EXPECT_TRUE(equal_up_to_translation(four[0], square, z2) ||
              equal_up_to_translation(four[1], square, z2));
}

TEST(ConnectedCycles, ThirdDimension) {
  const auto z3 = load_complex("z3.json");
  const auto cycles = connected_cycles_up_to_action(2, 6, z3).representatives;
  // The boundary of the unit cube and its negative.
  ASSERT_EQ(cycles.size(), 2u);
  for (const auto& c : cycles) EXPECT_EQ(norm(c), 6);
}

TEST(Enumeration, PairwiseFallbackAgrees) {
  const auto z2 = load_complex("z2.json");
  const auto bfs = load_complex("z2_bfs.json");
  EXPECT_EQ(connected_chains_up_to_action(1, 3, bfs).counts_by_volume(),
            connected_chains_up_to_action(1, 3, z2).counts_by_volume());
  EXPECT_EQ(connected_cycles_up_to_action(1, 6, bfs).counts_by_volume(),
            connected_cycles_up_to_action(1, 6, z2).counts_by_volume());
  EXPECT_THROW(orbit_signature(bfs.base_boundary(2, 0), bfs), WrongAlgorithm);
}

TEST(Enumeration, WorkerCountDoesNotChangeOutput) {
  const auto z2 = load_complex("z2.json");
  const auto one = connected_cycles_up_to_action(1, 8, z2, {1'000'000, 1});
  const auto three = connected_cycles_up_to_action(1, 8, z2, {1'000'000, 3});
  EXPECT_EQ(one.representatives, three.representatives);
}

TEST(Enumeration, NodeCap) {
  const auto z2 = load_complex("z2.json");
  EXPECT_THROW(connected_chains_up_to_action(1, 6, z2, {50, 1}), BudgetExceeded);
}

}  // namespace
}  // namespace isoprofile
