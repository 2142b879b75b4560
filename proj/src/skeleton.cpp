#include "isoprofile/skeleton.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "isoprofile/errors.hpp"

namespace isoprofile {

std::optional<std::pair<int, std::size_t>> SkeletonSpec::find(
    std::string_view id) const {
  for (std::size_t t = 0; t < cells.size(); ++t) {
    for (std::size_t i = 0; i < cells[t].size(); ++i) {
      if (cells[t][i].id == id) return std::pair{static_cast<int>(t), i};
    }
  }
  return std::nullopt;
}

void check_structure(const SkeletonSpec& spec) {
  const std::size_t rank = spec.presentation.rank();
  if (spec.q < 2) throw InvalidSkeleton("skeleton dimension must be at least 2");
  if (spec.cells.size() != static_cast<std::size_t>(spec.q) + 1) {
    throw InvalidSkeleton("need cell lists for every dimension 0..q");
  }
  if (spec.cells[0].size() != 1) {
    throw InvalidSkeleton("exactly one 0-cell is required");
  }
  if (!spec.cells[0][0].boundary.empty()) {
    throw InvalidSkeleton("the 0-cell has no boundary");
  }
  if (spec.cells[1].size() != rank) {
    throw InvalidSkeleton("need exactly one 1-cell per generator");
  }

  std::set<std::string> ids;
  for (std::size_t t = 0; t < spec.cells.size(); ++t) {
    for (const auto& cell : spec.cells[t]) {
      if (cell.id.empty()) throw InvalidSkeleton("cell with empty id");
      if (!ids.insert(cell.id).second) {
        throw InvalidSkeleton("duplicate cell id '" + cell.id + "'");
      }
      if (t == 0) continue;
      for (const auto& term : cell.boundary) {
        if (term.base >= spec.cells[t - 1].size()) {
          throw InvalidSkeleton("cell '" + cell.id +
                                "' references a missing boundary cell");
        }
        if (term.word.rank() != rank) {
          throw InvalidSkeleton("cell '" + cell.id +
                                "' has a boundary word over the wrong alphabet");
        }
      }
    }
  }

  for (std::uint32_t y = 0; y < rank; ++y) {
    std::map<Word, Coeff> sums;
    for (const auto& term : spec.cells[1][y].boundary) {
      sums[term.word] = checked_add(sums[term.word], term.coeff);
    }
    std::erase_if(sums, [](const auto& kv) { return kv.second == 0; });
    const std::map<Word, Coeff> expected{{Word::generator(rank, y), 1},
                                         {Word(rank), -1}};
    if (sums != expected) {
      throw InvalidSkeleton("1-cell '" + spec.cells[1][y].id +
                            "' must have boundary (y, v) - (e, v) for its "
                            "generator y");
    }
  }
}

SkeletonSpec presentation_complex(const Presentation& presentation) {
  const std::size_t rank = presentation.rank();
  SkeletonSpec spec;
  spec.q = 2;
  spec.presentation = presentation;
  spec.cells.resize(3);
  spec.cells[0].push_back({"v", {}});
  for (std::uint32_t y = 0; y < rank; ++y) {
    spec.cells[1].push_back(
        {"e_" + presentation.generators()[y],
         {{Word::generator(rank, y), 0, 1}, {Word(rank), 0, -1}}});
  }
  for (std::size_t i = 0; i < presentation.relators().size(); ++i) {
    const Word& r = presentation.relators()[i];
    if (r.empty()) throw ParseError("empty relator");
    BaseCell cell{"r" + std::to_string(i), {}};
    Word prefix(rank);
    for (const Letter l : r.letters()) {
      const Word letter(rank, {l});
      if (!l.inverse) {
        cell.boundary.push_back({prefix, l.generator, 1});
      } else {
        cell.boundary.push_back({compose(prefix, letter), l.generator, -1});
      }
      prefix = compose(prefix, letter);
    }
    spec.cells[2].push_back(std::move(cell));
  }
  return spec;
}

CellComplex::CellComplex(SkeletonSpec spec,
                         std::shared_ptr<const WordOracle> oracle)
    : spec_(std::make_shared<const SkeletonSpec>(std::move(spec))),
      oracle_(std::move(oracle)) {
  check_structure(*spec_);
  if (oracle_->rank() != spec_->presentation.rank()) {
    throw InputError("oracle rank does not match the presentation");
  }
  const int q = spec_->q;
  auto boundaries = std::make_shared<std::vector<std::vector<Chain>>>(q + 1);
  auto incidences =
      std::make_shared<std::vector<std::vector<std::vector<Incidence>>>>(q + 1);
  for (int t = 0; t <= q; ++t) {
    (*incidences)[t].resize(spec_->count(t));
    for (std::size_t i = 0; i < spec_->count(t); ++i) {
      if (t == 0) {
        (*boundaries)[t].emplace_back(0);
        continue;
      }
      std::vector<Term> terms;
      for (const auto& bt : spec_->cells[t][i].boundary) {
        terms.push_back({{t - 1, bt.base, bt.word}, bt.coeff});
      }
      (*boundaries)[t].push_back(
          canonicalize(Chain(t - 1, std::move(terms)), *oracle_));
    }
  }
  for (int t = 1; t <= q; ++t) {
    for (std::size_t i = 0; i < spec_->count(t); ++i) {
      for (const auto& term : (*boundaries)[t][i].terms()) {
        (*incidences)[t - 1][term.cell.base].push_back(
            {i, term.cell.g, term.coeff});
      }
    }
  }
  boundaries_ = std::move(boundaries);
  incidences_ = std::move(incidences);
}

const Chain& CellComplex::base_boundary(int dim, std::size_t base) const {
  return boundaries_->at(dim).at(base);
}

Coeff CellComplex::max_boundary_norm(int dim) const {
  Coeff best = 0;
  for (const auto& b : boundaries_->at(dim)) best = std::max(best, norm(b));
  return best;
}

const std::vector<CellComplex::Incidence>& CellComplex::incidences(
    int dim, std::size_t base) const {
  return incidences_->at(dim).at(base);
}

CellComplex CellComplex::for_worker() const {
  CellComplex copy(*this);
  copy.oracle_ = std::shared_ptr<const WordOracle>(oracle_->clone());
  return copy;
}

void validate(const CellComplex& complex) {
  const auto& spec = complex.spec();
  for (int t = 2; t <= spec.q; ++t) {
    for (std::size_t i = 0; i < spec.count(t); ++i) {
      if (!boundary(complex.base_boundary(t, i), complex).is_zero()) {
        throw InvalidSkeleton("boundary of the boundary of cell '" +
                              spec.cells[t][i].id + "' is not zero");
      }
    }
  }
}

LiftedCell lifted(const CellComplex& complex, int dim, std::size_t base,
                  const Word& g) {
  const auto& o = complex.oracle();
  return {dim, base, o.has_normal_form() ? o.normalize(g) : g};
}

Chain boundary(const Chain& a, const CellComplex& complex) {
  if (a.dim() < 1) throw InputError("boundary of a 0-chain is undefined");
  std::vector<Term> terms;
  for (const auto& t : a.terms()) {
    for (const auto& bt : complex.base_boundary(a.dim(), t.cell.base).terms()) {
      terms.push_back({{a.dim() - 1, bt.cell.base, compose(t.cell.g, bt.cell.g)},
                       checked_mul(t.coeff, bt.coeff)});
    }
  }
  return canonicalize(Chain(a.dim() - 1, std::move(terms)), complex.oracle());
}

bool is_cycle(const Chain& a, const CellComplex& complex) {
  return boundary(a, complex).is_zero();
}

std::vector<Term> coboundary(const LiftedCell& cell,
                             const CellComplex& complex) {
  if (cell.dim >= complex.top_dim()) {
    throw InputError("no cells above the top dimension");
  }
  std::vector<Term> terms;
  for (const auto& inc : complex.incidences(cell.dim, cell.base)) {
    terms.push_back({{cell.dim + 1, inc.cobase, compose(cell.g, invert(inc.h))},
                     inc.coeff});
  }
  return canonicalize(Chain(cell.dim + 1, std::move(terms)), complex.oracle())
      .terms();
}

}  // namespace isoprofile
