#pragma once

#include <algorithm>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "isoprofile/chain.hpp"
#include "isoprofile/io.hpp"
#include "isoprofile/skeleton.hpp"
#include "oracles.hpp"

namespace testing_support {

using namespace isoprofile;

inline std::filesystem::path data_path(const std::string& name) {
  return std::filesystem::path(ISOPROFILE_DATA_DIR) / name;
}

inline CellComplex load_complex(const std::string& name) {
  LoadedSkeleton s = load_skeleton_file(data_path(name));
  return CellComplex(std::move(s.spec), std::move(s.oracle));
}

inline const std::vector<std::string>& bundled_skeletons() {
  static const std::vector<std::string> names = {
      "f2.json", "z2.json", "z2_bfs.json", "z2_mod.json", "surface2.json", "z3.json"};
  return names;
}

inline Word power_word(std::size_t rank, std::uint32_t gen, int e) {
  std::vector<Letter> letters(std::abs(e), Letter{gen, e < 0});
  return Word(rank, letters);
}

// a^x b^y in the rank 2 free group.
inline Word lattice_word(int x, int y) {
  return compose(power_word(2, 0, x), power_word(2, 1, y));
}

inline Chain to_library(const oracle::LatticeChain& a, const CellComplex& z2) {
  std::vector<Term> terms;
  for (const auto& [e, k] : a) {
    const auto [dir, x, y] = e;
    terms.push_back({{1, static_cast<std::size_t>(dir), lattice_word(x, y)}, k});
  }
  return canonicalize(Chain(1, std::move(terms)), z2.oracle());
}

inline oracle::LatticeChain to_lattice(const Chain& a) {
  oracle::LatticeChain out;
  for (const auto& t : a.terms()) {
    const auto sums = exponent_sums(t.cell.g);
    oracle::add_edge(out,
                     {static_cast<int>(t.cell.base), static_cast<int>(sums[0]),
                      static_cast<int>(sums[1])},
                     t.coeff);
  }
  return out;
}

inline Word random_word(std::mt19937_64& rng, std::size_t rank, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<std::uint32_t> gen(0, static_cast<std::uint32_t>(rank) - 1);
  std::bernoulli_distribution inv(0.5);
  std::vector<Letter> letters;
  const std::size_t n = len(rng);
  for (std::size_t i = 0; i < n; ++i) letters.push_back({gen(rng), inv(rng)});
  return Word(rank, letters);
}

// A random chain of the given dimension: up to `terms` cells with words of
// length <= max_len and coefficients in [-max_coeff, max_coeff].
inline Chain random_chain(std::mt19937_64& rng, const CellComplex& complex, int dim,
                          std::size_t terms, std::size_t max_len, Coeff max_coeff) {
  std::uniform_int_distribution<std::size_t> count(1, terms);
  std::uniform_int_distribution<std::size_t> base(0, complex.count(dim) - 1);
  std::uniform_int_distribution<Coeff> coeff(-max_coeff, max_coeff);
  std::vector<Term> out;
  const std::size_t n = count(rng);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back({{dim, base(rng), random_word(rng, complex.rank(), max_len)}, coeff(rng)});
  }
  return canonicalize(Chain(dim, std::move(out)), complex.oracle());
}

// The 1-chain traced by reading w from the identity: each letter y at prefix
// p adds (p, e_y), each y^-1 subtracts (p y^-1, e_y).
inline Chain path_chain(const Word& w, const CellComplex& complex) {
  std::vector<Term> terms;
  Word prefix(w.rank());
  for (const Letter l : w.letters()) {
    const Word step = Word::generator(w.rank(), l.generator, l.inverse);
    if (l.inverse) {
      terms.push_back({{1, l.generator, compose(prefix, step)}, -1});
    } else {
      terms.push_back({{1, l.generator, prefix}, 1});
    }
    prefix = compose(prefix, step);
  }
  return canonicalize(Chain(1, std::move(terms)), complex.oracle());
}

// A random word of length <= max_len with zero exponent sums, so that its
// path in the lattice closes up.
inline Word random_closed_lattice_word(std::mt19937_64& rng, int max_len) {
  std::uniform_int_distribution<int> half(1, max_len / 2);
  const int pairs = half(rng);
  std::uniform_int_distribution<int> split(0, pairs);
  const int ka = split(rng);
  std::vector<Letter> letters;
  for (int i = 0; i < ka; ++i) {
    letters.push_back({0, false});
    letters.push_back({0, true});
  }
  for (int i = ka; i < pairs; ++i) {
    letters.push_back({1, false});
    letters.push_back({1, true});
  }
  std::shuffle(letters.begin(), letters.end(), rng);
  return Word(2, letters);
}

}  // namespace testing_support
