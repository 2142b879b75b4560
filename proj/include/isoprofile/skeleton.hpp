#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "isoprofile/chain.hpp"
#include "isoprofile/oracle.hpp"
#include "isoprofile/words.hpp"

namespace isoprofile {

struct BoundaryTerm {
  Word word;
  std::size_t base = 0;
  Coeff coeff = 0;

  friend bool operator==(const BoundaryTerm&, const BoundaryTerm&) = default;
};

struct BaseCell {
  std::string id;
  // The boundary of the lift at the identity, as a combination of lifted
  // cells one dimension down. Empty for the 0-cell.
  std::vector<BoundaryTerm> boundary;

  friend bool operator==(const BaseCell&, const BaseCell&) = default;
};

// The q-skeleton of a K(G,1) with a single 0-cell, as the finite data from
// which its universal cover is built: for each dimension t the base cells
// Sigma_t, and for t >= 1 their lifted boundaries.
//
// Whether the data really describes a K(G,1) skeleton cannot be checked;
// validate() only checks that it is a chain complex.
struct SkeletonSpec {
  int q = 2;
  Presentation presentation;
  std::vector<std::vector<BaseCell>> cells;  // cells[t], t = 0..q

  std::size_t count(int dim) const { return cells.at(dim).size(); }
  // Cell ids are unique across dimensions.
  std::optional<std::pair<int, std::size_t>> find(std::string_view id) const;

  friend bool operator==(const SkeletonSpec&, const SkeletonSpec&) = default;
};

// Structural checks that need no oracle: one 0-cell, one 1-cell per
// generator with boundary (y, v) - (e, v), unique ids, in-range references
// and matching word ranks. Throws InvalidSkeleton.
void check_structure(const SkeletonSpec& spec);

// The presentation complex (q = 2): one vertex `v`, an edge `e_<y>` per
// generator and a 2-cell `r<i>` per relator attached along the relator word.
// Letter i of a relator contributes +(w_{i-1}, e_y) for y and
// -(w_{i-1} y^-1, e_y) for y^-1, where w_{i-1} is the prefix before it.
SkeletonSpec presentation_complex(const Presentation& presentation);

// A skeleton bound to a word oracle: the universal cover's chain complex.
// Base boundaries are canonicalized once at construction, which can throw
// OracleUndecided.
class CellComplex {
 public:
  CellComplex(SkeletonSpec spec, std::shared_ptr<const WordOracle> oracle);

  const SkeletonSpec& spec() const { return *spec_; }
  const WordOracle& oracle() const { return *oracle_; }
  const std::shared_ptr<const WordOracle>& oracle_ptr() const { return oracle_; }
  int top_dim() const { return spec_->q; }
  std::size_t rank() const { return spec_->presentation.rank(); }
  std::size_t count(int dim) const { return spec_->count(dim); }

  // Canonical boundary of the base cell lifted at the identity.
  const Chain& base_boundary(int dim, std::size_t base) const;
  // Largest norm of a base boundary in dimension `dim`.
  Coeff max_boundary_norm(int dim) const;

  // Same complex with a private copy of the oracle, for a worker thread.
  CellComplex for_worker() const;

  struct Incidence {
    std::size_t cobase;  // base cell one dimension up
    Word h;              // translation of the boundary term
    Coeff coeff;
  };
  // Boundary terms (h, base, k) of (dim+1)-cells, indexed by `base`.
  const std::vector<Incidence>& incidences(int dim, std::size_t base) const;

  Word identity() const { return Word(rank()); }

 private:
  CellComplex() = default;

  std::shared_ptr<const SkeletonSpec> spec_;
  std::shared_ptr<const WordOracle> oracle_;
  std::shared_ptr<const std::vector<std::vector<Chain>>> boundaries_;
  std::shared_ptr<const std::vector<std::vector<std::vector<Incidence>>>>
      incidences_;
};

// Checks that boundary(boundary(sigma)) = 0 for every base cell of dimension
// >= 2. Throws InvalidSkeleton naming the first offending cell.
void validate(const CellComplex& complex);

LiftedCell lifted(const CellComplex& complex, int dim, std::size_t base,
                  const Word& g);

// d(g sigma) = g d(sigma), extended linearly. Requires dim >= 1.
Chain boundary(const Chain& a, const CellComplex& complex);

bool is_cycle(const Chain& a, const CellComplex& complex);

// Every (dim+1)-cell whose boundary contains `cell`, with the coefficient it
// appears with. Sorted in canonical order.
std::vector<Term> coboundary(const LiftedCell& cell, const CellComplex& complex);

}  // namespace isoprofile
