#pragma once

#include <string>

#include "welfarelens/curves.hpp"
#include "welfarelens/distributions.hpp"

// Pointwise curve orders. "Dominates" always means "is more unequal at
// every rank": the first argument dominates when its Lorenz curve lies
// weakly below the second's everywhere, equivalently when its uniformity
// ratio does. Verdicts come from a rank grid that includes every lattice
// point of the samples involved, which makes the classification exact for
// piecewise-linear inputs.

namespace welfarelens {

enum class DominanceRelation {
  first_dominates,
  second_dominates,
  equal,
  crossing
};

const char* to_string(DominanceRelation r);

struct DominanceVerdict {
  DominanceRelation relation = DominanceRelation::equal;
  double max_gap = 0.0;  // largest curve separation seen on the grid
  int crossings = 0;     // sign changes of the difference along the grid
  int grid_size = 0;
};

DominanceVerdict lorenz_dominance(const Distribution& x,
                                  const Distribution& y,
                                  int grid_points = 1001);

DominanceVerdict zenga_dominance(const Distribution& x, const Distribution& y,
                                 int grid_points = 1001);

struct EquivalenceReport {
  DominanceVerdict lorenz;
  DominanceVerdict zenga;
  bool agree = false;
};

// Both orders on the same pair. The two relations coincide for any pair of
// distributions; a disagreement indicates gaps inside the tolerance band.
EquivalenceReport equivalence_check(const Distribution& x,
                                    const Distribution& y,
                                    int grid_points = 1001);

}  // namespace welfarelens
