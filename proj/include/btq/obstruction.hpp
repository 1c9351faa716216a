// Shells, obstruction spaces and bad pairs.
#pragma once

#include "btq/cf_structures.hpp"

#include <set>
#include <vector>

namespace btq {

struct Shell {
  std::vector<int> vertices;  // core ids, sorted
  bool contains(int v) const;
};

// After deleting half edges every component is a tree with at most one
// actual vertex of valency 1.
bool t3_criterion(const WCFG& w);

// Core vertices lying on no cusp and no generalized cusp (a cusp may absorb
// a vertex with exactly one further neighbour regardless of half edges and
// weights).  The attach vertex of each extended cusp is excluded as well.
Shell candidate_shell(const WCFG& w);

struct ObstructionOptions {
  bool column_sums_zero = true;
  int guard = 2;  // extra window steps beyond the shell diameter
};

struct ObstructionBasis {
  Shell shell;
  std::vector<QMatrix> basis;  // F[y][x] over shell positions (row y, column x)
  int dimension = 0;
  bool stable = true;  // same dimension with a window four steps wider
};

// Solves FT = TF on a finite window with F supported on shell x shell, where
// T is the normalized transition matrix.
ObstructionBasis obstruction_space(const WCFG& w, const Shell& shell, const ObstructionOptions& opt = {});

// Shell vertices touched by some basis element.
std::set<int> bad_set(const ObstructionBasis& b);
std::set<std::pair<int, int>> bad_pairs(const WCFG& w);
// Greedy trimming: drops shell vertices whose removal keeps the dimension.
Shell trim_shell(const WCFG& w, const Shell& shell, const ObstructionOptions& opt = {});

// Characteristic polynomial of the weight matrix block on the given vertices.
QPoly projected_char_poly(const WCFG& w, const Shell& shell);

// Maps F on the shell with F A = A F = 0 and zero column sums, where A is the
// projected weight block.  Every member of the obstruction space lies here
// when A is diagonalizable and its nonzero eigenvectors leak out of the
// shell; the converse fails in general, so this is a diagnostic superset.
ObstructionBasis annihilator_family(const WCFG& w, const Shell& shell);

// Whether a matrix over shell x shell lies in the span of the basis.
bool in_span(const ObstructionBasis& b, const QMatrix& f);

}  // namespace btq
