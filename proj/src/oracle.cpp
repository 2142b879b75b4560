#include "isoprofile/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <set>
#include <sstream>
#include <unordered_set>

#include "isoprofile/errors.hpp"

namespace isoprofile {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw OverflowError("integer overflow in relator lattice reduction");
  }
  return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) {
    throw OverflowError("integer overflow in relator lattice reduction");
  }
  return r;
}

void subtract_multiple(std::vector<std::int64_t>& row, std::int64_t factor,
                       const std::vector<std::int64_t>& pivot_row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    row[i] = checked_sub(row[i], checked_mul(factor, pivot_row[i]));
  }
}

// All cyclic permutations of r and r^-1, deduplicated, in shortlex order.
std::vector<Word> cyclic_conjugates(const std::vector<Word>& relators) {
  std::set<Word> out;
  for (const auto& r : relators) {
    for (const Word& base : {r, invert(r)}) {
      const auto letters = base.letters();
      for (std::size_t shift = 0; shift < letters.size(); ++shift) {
        std::vector<Letter> rotated(letters.begin() + shift, letters.end());
        rotated.insert(rotated.end(), letters.begin(), letters.begin() + shift);
        Word w(base.rank(), rotated);
        if (!w.empty()) out.insert(std::move(w));
      }
    }
  }
  return {out.begin(), out.end()};
}

bool cyclically_reduced(const Word& w) {
  const auto l = w.letters();
  return l.size() < 2 || !l.front().cancels(l.back());
}

bool is_proper_power(const Word& w) {
  const auto l = w.letters();
  const std::size_t n = l.size();
  for (std::size_t period = 1; period < n; ++period) {
    if (n % period != 0) continue;
    bool periodic = true;
    for (std::size_t i = period; i < n && periodic; ++i) {
      periodic = l[i] == l[i - period];
    }
    if (periodic) return true;
  }
  return false;
}

std::string words_id(const std::vector<Word>& words) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i) os << ',';
    for (const auto l : words[i].letters()) os << l.order_key() << '.';
  }
  os << ']';
  return os.str();
}

}  // namespace

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kTrivial:
      return "trivial";
    case Verdict::kNontrivial:
      return "nontrivial";
    case Verdict::kUndecided:
      return "undecided";
  }
  return "?";
}

Verdict is_trivial(const WordOracle& oracle, const Word& w) {
  if (w.rank() != oracle.rank()) {
    throw AlphabetError("word rank does not match the oracle's presentation");
  }
  return oracle.is_trivial(w);
}

Verdict words_equal(const WordOracle& oracle, const Word& w1, const Word& w2) {
  if (w1 == w2) return Verdict::kTrivial;
  return is_trivial(oracle, compose(invert(w1), w2));
}

// --- free ---

Verdict FreeOracle::is_trivial(const Word& w) const {
  return w.empty() ? Verdict::kTrivial : Verdict::kNontrivial;
}

std::string FreeOracle::id() const {
  return "free(rank=" + std::to_string(rank_) + ")";
}

std::unique_ptr<WordOracle> FreeOracle::clone() const {
  return std::make_unique<FreeOracle>(*this);
}

// --- free abelian ---

Verdict FreeAbelianOracle::is_trivial(const Word& w) const {
  for (const auto e : exponent_sums(w)) {
    if (e != 0) return Verdict::kNontrivial;
  }
  return Verdict::kTrivial;
}

Word FreeAbelianOracle::normalize(const Word& w) const {
  const auto& ls = w.letters();
  bool sorted = true;
  for (std::size_t i = 1; i < ls.size() && sorted; ++i) {
    sorted = ls[i - 1].generator < ls[i].generator ||
             (ls[i - 1].generator == ls[i].generator &&
              ls[i - 1].inverse == ls[i].inverse);
  }
  if (sorted) return w;
  const auto sums = exponent_sums(w);
  std::vector<Letter> letters;
  for (std::uint32_t g = 0; g < sums.size(); ++g) {
    const Letter l{g, sums[g] < 0};
    for (std::int64_t k = 0; k < std::llabs(sums[g]); ++k) letters.push_back(l);
  }
  return Word(rank_, letters);
}

std::string FreeAbelianOracle::id() const {
  return "abelian(rank=" + std::to_string(rank_) + ")";
}

std::unique_ptr<WordOracle> FreeAbelianOracle::clone() const {
  return std::make_unique<FreeAbelianOracle>(*this);
}

// --- finite table ---

FiniteTableOracle::FiniteTableOracle(
    const Presentation& presentation, std::size_t identity,
    std::vector<std::size_t> generator_images,
    std::vector<std::vector<std::size_t>> multiplication)
    : identity_(identity),
      generator_images_(std::move(generator_images)),
      table_(std::move(multiplication)) {
  const std::size_t m = table_.size();
  if (m == 0) throw InputError("multiplication table is empty");
  if (identity_ >= m) throw InputError("identity index out of range");
  for (const auto& row : table_) {
    if (row.size() != m) throw InputError("multiplication table is not square");
    std::vector<bool> hit(m, false);
    for (const auto x : row) {
      if (x >= m) throw InputError("multiplication table entry out of range");
      hit[x] = true;
    }
    if (std::find(hit.begin(), hit.end(), false) != hit.end()) {
      throw InputError("multiplication table row is not a permutation");
    }
  }
  for (std::size_t x = 0; x < m; ++x) {
    if (table_[identity_][x] != x || table_[x][identity_] != x) {
      throw InputError("declared identity is not a two-sided identity");
    }
  }
  for (std::size_t x = 0; x < m; ++x) {
    for (std::size_t y = 0; y < m; ++y) {
      for (std::size_t z = 0; z < m; ++z) {
        if (table_[table_[x][y]][z] != table_[x][table_[y][z]]) {
          throw InputError("multiplication table is not associative");
        }
      }
    }
  }
  if (generator_images_.size() != presentation.rank()) {
    throw InputError("need one table element per generator");
  }
  for (const auto g : generator_images_) {
    if (g >= m) throw InputError("generator image out of range");
    std::size_t inv = 0;
    while (table_[g][inv] != identity_) ++inv;
    generator_inverses_.push_back(inv);
  }
  for (const auto& r : presentation.relators()) {
    if (evaluate(r) != identity_) {
      throw InputError("a relator does not evaluate to the identity");
    }
  }

  // Breadth-first in letter order visits elements along shortlex-least words.
  normal_forms_.assign(m, std::nullopt);
  normal_forms_[identity_] = Word(rank());
  std::deque<std::size_t> queue{identity_};
  while (!queue.empty()) {
    const std::size_t x = queue.front();
    queue.pop_front();
    reachable_.push_back(x);
    for (std::uint32_t g = 0; g < rank(); ++g) {
      for (const bool inverse : {false, true}) {
        const std::size_t y =
            table_[x][inverse ? generator_inverses_[g] : generator_images_[g]];
        if (normal_forms_[y]) continue;
        normal_forms_[y] =
            compose(*normal_forms_[x], Word::generator(rank(), g, inverse));
        queue.push_back(y);
      }
    }
  }
}

std::size_t FiniteTableOracle::evaluate(const Word& w) const {
  std::size_t x = identity_;
  for (const auto l : w.letters()) {
    x = table_[x][l.inverse ? generator_inverses_[l.generator]
                            : generator_images_[l.generator]];
  }
  return x;
}

Verdict FiniteTableOracle::is_trivial(const Word& w) const {
  return evaluate(w) == identity_ ? Verdict::kTrivial : Verdict::kNontrivial;
}

const Word& FiniteTableOracle::element_word(std::size_t index) const {
  if (index >= normal_forms_.size() || !normal_forms_[index]) {
    throw InputError("table element " + std::to_string(index) +
                     " is not generated");
  }
  return *normal_forms_[index];
}

Word FiniteTableOracle::normalize(const Word& w) const {
  return element_word(evaluate(w));
}

std::string FiniteTableOracle::id() const {
  std::ostringstream os;
  os << "table(identity=" << identity_ << ",gens=[";
  for (std::size_t i = 0; i < generator_images_.size(); ++i) {
    os << (i ? "," : "") << generator_images_[i];
  }
  os << "],mul=[";
  for (const auto& row : table_) {
    os << '[';
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << ']';
  }
  os << "])";
  return os.str();
}

std::unique_ptr<WordOracle> FiniteTableOracle::clone() const {
  return std::make_unique<FiniteTableOracle>(*this);
}

// --- bounded search ---

BoundedBfsOracle::BoundedBfsOracle(Presentation presentation,
                                   std::optional<std::size_t> radius,
                                   std::size_t max_states)
    : presentation_(std::move(presentation)),
      radius_(radius),
      max_states_(max_states),
      conjugates_(cyclic_conjugates(presentation_.relators())) {
  std::vector<std::vector<std::int64_t>> rows;
  for (const auto& r : presentation_.relators()) {
    rows.push_back(exponent_sums(r));
  }
  const std::size_t k = presentation_.rank();
  for (std::size_t col = 0; col < k; ++col) {
    while (true) {
      std::size_t best = rows.size();
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i][col] == 0) continue;
        if (best == rows.size() ||
            std::llabs(rows[i][col]) < std::llabs(rows[best][col])) {
          best = i;
        }
      }
      if (best == rows.size()) break;
      bool clean = true;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i == best || rows[i][col] == 0) continue;
        subtract_multiple(rows[i], rows[i][col] / rows[best][col], rows[best]);
        if (rows[i][col] != 0) clean = false;
      }
      if (clean) {
        auto pivot = std::move(rows[best]);
        rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(best));
        if (pivot[col] < 0) {
          for (auto& x : pivot) x = -x;
        }
        lattice_.emplace_back(col, std::move(pivot));
        break;
      }
    }
  }
}

bool BoundedBfsOracle::abelian_image_nonzero(const Word& w) const {
  auto v = exponent_sums(w);
  for (const auto& [col, row] : lattice_) {
    if (v[col] % row[col] != 0) return true;
    subtract_multiple(v, v[col] / row[col], row);
  }
  return std::any_of(v.begin(), v.end(), [](auto x) { return x != 0; });
}

std::size_t BoundedBfsOracle::radius_for(const Word& w) const {
  if (radius_) return *radius_;
  return std::max(2 * w.length(), 2 * presentation_.longest_relator());
}

Verdict BoundedBfsOracle::is_trivial(const Word& w) const {
  if (w.empty()) return Verdict::kTrivial;
  if (presentation_.relators().empty()) return Verdict::kNontrivial;
  if (abelian_image_nonzero(w)) return Verdict::kNontrivial;
  if (auto it = memo_.find(w); it != memo_.end()) return it->second;
  const Verdict v = search(w, radius_for(w));
  memo_.emplace(w, v);
  return v;
}

Verdict BoundedBfsOracle::search(const Word& w, std::size_t radius) const {
  if (w.length() > radius) return Verdict::kUndecided;
  // Shortest words first: every state within the radius that is reachable
  // through shorter-or-equal states is expanded before any longer one.
  std::set<Word> frontier{w};
  std::unordered_set<Word> seen{w};
  while (!frontier.empty()) {
    const Word current = *frontier.begin();
    frontier.erase(frontier.begin());
    const auto letters = current.letters();
    for (std::size_t pos = 0; pos <= letters.size(); ++pos) {
      for (const auto& c : conjugates_) {
        std::vector<Letter> next(letters.begin(), letters.begin() + pos);
        next.insert(next.end(), c.letters().begin(), c.letters().end());
        next.insert(next.end(), letters.begin() + pos, letters.end());
        Word candidate(current.rank(), next);
        if (candidate.empty()) return Verdict::kTrivial;
        if (candidate.length() > radius) continue;
        if (!seen.insert(candidate).second) continue;
        if (seen.size() > max_states_) return Verdict::kUndecided;
        frontier.insert(std::move(candidate));
      }
    }
  }
  return Verdict::kUndecided;
}

std::string BoundedBfsOracle::id() const {
  return "bfs(rank=" + std::to_string(rank()) + ",relators=" +
         words_id(presentation_.relators()) + ",radius=" +
         (radius_ ? std::to_string(*radius_) : std::string("auto")) +
         ",states=" + std::to_string(max_states_) + ")";
}

std::unique_ptr<WordOracle> BoundedBfsOracle::clone() const {
  auto copy = std::make_unique<BoundedBfsOracle>(*this);
  copy->memo_.clear();
  return copy;
}

// --- Dehn ---

DehnOracle::DehnOracle(Presentation presentation)
    : presentation_(std::move(presentation)) {
  for (const auto& r : presentation_.relators()) {
    if (!cyclically_reduced(r)) {
      throw InputError("Dehn oracle needs cyclically reduced relators");
    }
    if (is_proper_power(r)) {
      throw InputError("Dehn oracle does not accept proper-power relators");
    }
  }
  symmetrized_ = cyclic_conjugates(presentation_.relators());
  for (std::size_t i = 0; i < symmetrized_.size(); ++i) {
    for (std::size_t j = i + 1; j < symmetrized_.size(); ++j) {
      const auto a = symmetrized_[i].letters();
      const auto b = symmetrized_[j].letters();
      std::size_t piece = 0;
      while (piece < a.size() && piece < b.size() && a[piece] == b[piece]) {
        ++piece;
      }
      if (6 * piece >= a.size() || 6 * piece >= b.size()) {
        throw InputError(
            "presentation fails the C'(1/6) small cancellation condition");
      }
    }
  }
}

Word DehnOracle::dehn_reduce(const Word& w) const {
  Word current = w;
  bool changed = true;
  while (changed) {
    changed = false;
    const auto letters = current.letters();
    for (std::size_t pos = 0; pos < letters.size() && !changed; ++pos) {
      for (const auto& s : symmetrized_) {
        const auto rel = s.letters();
        std::size_t m = 0;
        while (m < rel.size() && pos + m < letters.size() &&
               letters[pos + m] == rel[m]) {
          ++m;
        }
        if (2 * m <= rel.size()) continue;
        // rel = u v with u matched; replace u by v^-1.
        std::vector<Letter> next(letters.begin(), letters.begin() + pos);
        for (std::size_t i = rel.size(); i > m; --i) {
          next.push_back(rel[i - 1].inverted());
        }
        next.insert(next.end(), letters.begin() + pos + m, letters.end());
        current = Word(current.rank(), next);
        changed = true;
        break;
      }
    }
  }
  return current;
}

Verdict DehnOracle::is_trivial(const Word& w) const {
  return dehn_reduce(w).empty() ? Verdict::kTrivial : Verdict::kNontrivial;
}

std::string DehnOracle::id() const {
  return "dehn(rank=" + std::to_string(rank()) +
         ",relators=" + words_id(presentation_.relators()) + ")";
}

std::unique_ptr<WordOracle> DehnOracle::clone() const {
  return std::make_unique<DehnOracle>(*this);
}

}  // namespace isoprofile
