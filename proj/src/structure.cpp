#include "isoprofile/structure.hpp"

#include <map>
#include <optional>

#include "isoprofile/errors.hpp"

namespace isoprofile {

namespace {

Coeff magnitude(Coeff c) { return c < 0 ? -c : c; }
Coeff sign(Coeff c) { return c < 0 ? -1 : 1; }

bool sandwiched(Coeff inner, Coeff outer) {
  return outer >= 0 ? (0 <= inner && inner <= outer)
                    : (outer <= inner && inner <= 0);
}

// The boundaries of the cells of a chain A written over a local index of the
// distinct cells they touch, so that the boundary of any subchain is an
// integer vector.
struct LocalBoundary {
  std::vector<std::vector<std::pair<std::size_t, Coeff>>> rows;
  std::size_t columns = 0;

  std::vector<Coeff> of(const std::vector<Coeff>& coeffs) const {
    std::vector<Coeff> out(columns, 0);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (coeffs[i] == 0) continue;
      for (const auto& [col, k] : rows[i]) {
        out[col] = checked_add(out[col], checked_mul(coeffs[i], k));
      }
    }
    return out;
  }
};

LocalBoundary local_boundary(const Chain& a, const CellComplex& complex) {
  LocalBoundary lb;
  lb.rows.resize(a.size());
  if (a.dim() == 0) return lb;
  const auto& oracle = complex.oracle();
  const bool normal = oracle.has_normal_form();

  std::map<LiftedCell, std::size_t> index;
  std::vector<LiftedCell> reps;
  const auto column_of = [&](LiftedCell cell) -> std::size_t {
    if (normal) {
      cell.g = oracle.normalize(cell.g);
      auto [it, inserted] = index.emplace(std::move(cell), reps.size());
      if (inserted) reps.push_back(it->first);
      return it->second;
    }
    for (std::size_t j = 0; j < reps.size(); ++j) {
      if (reps[j].base != cell.base) continue;
      const Verdict v = words_equal(oracle, reps[j].g, cell.g);
      if (v == Verdict::kUndecided) {
        throw OracleUndecided("cannot decide whether two lifted cells coincide");
      }
      if (v == Verdict::kTrivial) return j;
    }
    reps.push_back(std::move(cell));
    return reps.size() - 1;
  };

  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& t = a.terms()[i];
    std::map<std::size_t, Coeff> row;
    for (const auto& bt : complex.base_boundary(a.dim(), t.cell.base).terms()) {
      const std::size_t col = column_of(
          {a.dim() - 1, bt.cell.base, compose(t.cell.g, bt.cell.g)});
      row[col] = checked_add(row[col], bt.coeff);
    }
    for (const auto& [col, k] : row) {
      if (k != 0) lb.rows[i].emplace_back(col, k);
    }
  }
  lb.columns = reps.size();
  return lb;
}

// Visits every digit vector 0 <= d_i <= mags_i, first digit fastest. Stops
// early when `visit` returns false.
template <class Visit>
void for_each_digits(const std::vector<Coeff>& mags, Visit&& visit) {
  std::vector<Coeff> d(mags.size(), 0);
  while (true) {
    if (!visit(d)) return;
    std::size_t i = 0;
    while (i < d.size() && d[i] == mags[i]) d[i++] = 0;
    if (i == d.size()) return;
    ++d[i];
  }
}

struct Split {
  std::vector<Coeff> digits;
  Coeff norm;
};

// Smallest-norm proper nonzero component of A, as digit magnitudes. If B is
// a component so is A - B, so only digit vectors whose first digit is at
// least half of A's first magnitude need to be tried.
std::optional<Split> smallest_component(const Chain& a,
                                        const CellComplex& complex,
                                        bool stop_at_first) {
  if (a.size() == 0) return std::nullopt;
  const LocalBoundary lb = local_boundary(a, complex);
  std::vector<Coeff> mags, signs;
  for (const auto& t : a.terms()) {
    mags.push_back(magnitude(t.coeff));
    signs.push_back(sign(t.coeff));
  }
  Coeff total = 0;
  for (const auto m : mags) total += m;
  std::vector<Coeff> full_coeffs(mags.size());
  for (std::size_t i = 0; i < mags.size(); ++i) full_coeffs[i] = signs[i] * mags[i];
  const std::vector<Coeff> full = lb.of(full_coeffs);
  const Coeff half = (mags[0] + 1) / 2;

  std::optional<Split> best;
  std::vector<Coeff> coeffs(mags.size());
  for_each_digits(mags, [&](const std::vector<Coeff>& d) {
    if (d[0] < half) return true;
    Coeff n = 0;
    for (const auto x : d) n += x;
    if (n == 0 || n == total) return true;
    for (std::size_t i = 0; i < d.size(); ++i) coeffs[i] = signs[i] * d[i];
    const auto bd = lb.of(coeffs);
    for (std::size_t j = 0; j < bd.size(); ++j) {
      if (!sandwiched(bd[j], full[j])) return true;
    }
    if (n * 2 <= total) {
      if (!best || n < best->norm) best = Split{d, n};
    } else {
      std::vector<Coeff> rest(mags.size());
      for (std::size_t i = 0; i < d.size(); ++i) rest[i] = mags[i] - d[i];
      if (!best || total - n < best->norm) best = Split{rest, total - n};
    }
    return !stop_at_first;
  });
  return best;
}

Chain from_digits(const Chain& a, const std::vector<Coeff>& digits) {
  std::vector<Term> terms;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (digits[i] == 0) continue;
    const auto& t = a.terms()[i];
    terms.push_back({t.cell, sign(t.coeff) * digits[i]});
  }
  return Chain(a.dim(), std::move(terms));
}

}  // namespace

Subchains::Subchains(Chain a) : a_(std::move(a)) {}

std::uint64_t Subchains::size() const {
  std::uint64_t count = 1;
  for (const auto& t : a_.terms()) {
    if (__builtin_mul_overflow(count, static_cast<std::uint64_t>(magnitude(t.coeff)) + 1,
                               &count)) {
      throw OverflowError("too many subchains to count");
    }
  }
  return count;
}

Subchains::iterator::iterator(const Subchains* parent, bool done)
    : parent_(parent), digits_(parent->a_.size(), 0), done_(done) {}

Chain Subchains::iterator::operator*() const {
  return from_digits(parent_->a_, digits_);
}

Subchains::iterator& Subchains::iterator::operator++() {
  const auto& terms = parent_->a_.terms();
  std::size_t i = 0;
  while (i < digits_.size() && digits_[i] == magnitude(terms[i].coeff)) {
    digits_[i++] = 0;
  }
  if (i == digits_.size()) {
    done_ = true;
  } else {
    ++digits_[i];
  }
  return *this;
}

std::vector<Chain> subchains(const Chain& a) {
  const Subchains range(a);
  return {range.begin(), range.end()};
}

bool is_subchain(const Chain& b, const Chain& a, const WordOracle& oracle) {
  if (a.dim() != b.dim()) return false;
  return norm(a) == checked_add(norm(b), norm(subtract(a, b, oracle)));
}

bool is_component(const Chain& b, const Chain& a, const CellComplex& complex) {
  const auto& oracle = complex.oracle();
  if (!is_subchain(b, a, oracle)) return false;
  if (a.dim() == 0) return true;
  return is_subchain(boundary(b, complex), boundary(a, complex), oracle);
}

bool is_connected(const Chain& a, const CellComplex& complex) {
  if (a.is_zero()) return false;
  return !smallest_component(a, complex, /*stop_at_first=*/true).has_value();
}

std::vector<Chain> components(const Chain& a, const CellComplex& complex) {
  std::vector<Chain> out;
  Chain rest = a;
  while (!rest.is_zero()) {
    const auto split = smallest_component(rest, complex, false);
    if (!split) {
      out.push_back(rest);
      break;
    }
    out.push_back(from_digits(rest, split->digits));
    std::vector<Coeff> remaining;
    for (std::size_t i = 0; i < rest.size(); ++i) {
      remaining.push_back(magnitude(rest.terms()[i].coeff) - split->digits[i]);
    }
    rest = from_digits(rest, remaining);
  }
  return out;
}

}  // namespace isoprofile
