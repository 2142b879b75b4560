#include "isoprofile/chain.hpp"

#include <algorithm>

#include "isoprofile/errors.hpp"

namespace isoprofile {

Coeff checked_add(Coeff a, Coeff b) {
  Coeff r;
  if (__builtin_add_overflow(a, b, &r)) {
    throw OverflowError("chain coefficient overflow");
  }
  return r;
}

Coeff checked_mul(Coeff a, Coeff b) {
  Coeff r;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw OverflowError("chain coefficient overflow");
  }
  return r;
}

Chain::Chain(int dim, std::vector<Term> terms)
    : dim_(dim), terms_(std::move(terms)) {
  for (const auto& t : terms_) {
    if (t.cell.dim != dim_) {
      throw InputError("term of dimension " + std::to_string(t.cell.dim) +
                       " in a chain of dimension " + std::to_string(dim_));
    }
  }
}

Chain Chain::single(LiftedCell cell, Coeff coeff) {
  const int dim = cell.dim;
  std::vector<Term> terms;
  if (coeff != 0) terms.push_back({std::move(cell), coeff});
  return Chain(dim, std::move(terms));
}

Chain canonicalize(const Chain& chain, const WordOracle& oracle) {
  std::vector<Term> terms = chain.terms();
  // Reduced words are already the normal forms of the free group.
  if (oracle.has_normal_form() && oracle.kind() != OracleKind::kFree) {
    for (auto& t : terms) t.cell.g = oracle.normalize(t.cell.g);
  }
  std::stable_sort(terms.begin(), terms.end(),
                   [](const Term& a, const Term& b) { return a.cell < b.cell; });

  std::vector<Term> merged;
  merged.reserve(terms.size());
  if (oracle.has_normal_form()) {
    for (auto& t : terms) {
      if (!merged.empty() && merged.back().cell == t.cell) {
        merged.back().coeff = checked_add(merged.back().coeff, t.coeff);
      } else {
        merged.push_back(std::move(t));
      }
    }
  } else {
    // Sorted input: each class is represented by its shortlex-least word.
    for (auto& t : terms) {
      bool placed = false;
      for (auto it = merged.rbegin();
           it != merged.rend() && it->cell.base == t.cell.base; ++it) {
        const Verdict v = words_equal(oracle, it->cell.g, t.cell.g);
        if (v == Verdict::kUndecided) {
          throw OracleUndecided("cannot decide whether two lifted cells coincide");
        }
        if (v == Verdict::kTrivial) {
          it->coeff = checked_add(it->coeff, t.coeff);
          placed = true;
          break;
        }
      }
      if (!placed) merged.push_back(std::move(t));
    }
  }
  std::erase_if(merged, [](const Term& t) { return t.coeff == 0; });
  return Chain(chain.dim(), std::move(merged));
}

Coeff norm(const Chain& chain) {
  Coeff total = 0;
  for (const auto& t : chain.terms()) {
    total = checked_add(total, t.coeff < 0 ? -t.coeff : t.coeff);
  }
  return total;
}

Chain add(const Chain& a, const Chain& b, const WordOracle& oracle) {
  if (a.dim() != b.dim()) throw InputError("adding chains of different dimension");
  std::vector<Term> terms = a.terms();
  terms.insert(terms.end(), b.terms().begin(), b.terms().end());
  return canonicalize(Chain(a.dim(), std::move(terms)), oracle);
}

Chain subtract(const Chain& a, const Chain& b, const WordOracle& oracle) {
  return add(a, negate(b), oracle);
}

Chain negate(const Chain& a) { return scale(a, -1); }

Chain scale(const Chain& a, Coeff k) {
  std::vector<Term> terms;
  if (k != 0) {
    terms.reserve(a.size());
    for (const auto& t : a.terms()) {
      terms.push_back({t.cell, checked_mul(t.coeff, k)});
    }
  }
  return Chain(a.dim(), std::move(terms));
}

Chain translate(const Word& g, const Chain& a, const WordOracle& oracle) {
  std::vector<Term> terms;
  terms.reserve(a.size());
  for (const auto& t : a.terms()) {
    terms.push_back({{t.cell.dim, t.cell.base, compose(g, t.cell.g)}, t.coeff});
  }
  return canonicalize(Chain(a.dim(), std::move(terms)), oracle);
}

bool chains_equal(const Chain& a, const Chain& b, const WordOracle& oracle) {
  if (a.dim() != b.dim()) return false;
  return subtract(a, b, oracle).is_zero();
}

std::string chain_key(const Chain& chain) {
  std::string key;
  key += std::to_string(chain.dim());
  key.push_back(':');
  for (const auto& t : chain.terms()) {
    key += std::to_string(t.cell.base);
    key.push_back(',');
    key += std::to_string(t.coeff);
    key.push_back(',');
    append_word_key(t.cell.g, key);
  }
  return key;
}

}  // namespace isoprofile
