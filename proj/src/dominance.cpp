#include "welfarelens/dominance.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace welfarelens {
namespace {

// per-point band treated as "same value"
constexpr double kEqualTol = 1e-12;
// a dominance call needs at least one separation this large
constexpr double kMaterialGap = 1e-9;

std::vector<double> merged_grid(const Distribution& x, const Distribution& y,
                                int grid_points) {
  std::vector<double> grid = open_uniform_grid(grid_points);
  auto add_lattice = [&grid](const Distribution& d) {
    const EmpiricalSample* s = d.sample();
    if (s == nullptr) return;
    const double w = s->total_weight();
    for (std::size_t i = 0; i + 1 < s->size(); ++i) {
      const double p = s->cum_weights()[i] / w;
      if (p > 0.0 && p < 1.0) grid.push_back(p);
    }
  };
  add_lattice(x);
  add_lattice(y);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

template <typename Curve>
DominanceVerdict classify(const Distribution& x, const Distribution& y,
                          int grid_points, Curve curve) {
  const std::vector<double> grid = merged_grid(x, y, grid_points);
  DominanceVerdict v;
  v.grid_size = static_cast<int>(grid.size());

  double most_positive = 0.0;  // second curve above first
  double most_negative = 0.0;
  int last_sign = 0;
  for (double p : grid) {
    const Rank r = Rank::from_p(p);
    const double diff = curve(y, r) - curve(x, r);
    most_positive = std::max(most_positive, diff);
    most_negative = std::max(most_negative, -diff);
    const int sign = diff > kEqualTol ? 1 : diff < -kEqualTol ? -1 : 0;
    if (sign != 0) {
      if (last_sign != 0 && sign != last_sign) ++v.crossings;
      last_sign = sign;
    }
  }
  v.max_gap = std::max(most_positive, most_negative);

  const bool pos = most_positive > kEqualTol;
  const bool neg = most_negative > kEqualTol;
  if (pos && neg) {
    v.relation = DominanceRelation::crossing;
  } else if (most_positive > kMaterialGap) {
    v.relation = DominanceRelation::first_dominates;
  } else if (most_negative > kMaterialGap) {
    v.relation = DominanceRelation::second_dominates;
  } else {
    v.relation = DominanceRelation::equal;
  }
  return v;
}

}  // namespace

const char* to_string(DominanceRelation r) {
  switch (r) {
    case DominanceRelation::first_dominates: return "first_dominates";
    case DominanceRelation::second_dominates: return "second_dominates";
    case DominanceRelation::equal: return "equal";
    case DominanceRelation::crossing: return "crossing";
  }
  return "unknown";
}

DominanceVerdict lorenz_dominance(const Distribution& x, const Distribution& y,
                                  int grid_points) {
  return classify(x, y, grid_points, [](const Distribution& d, Rank r) {
    return lorenz_pair(d, r).value;
  });
}

DominanceVerdict zenga_dominance(const Distribution& x, const Distribution& y,
                                 int grid_points) {
  return classify(x, y, grid_points, [](const Distribution& d, Rank r) {
    return uniformity_ratio(d, r);
  });
}

EquivalenceReport equivalence_check(const Distribution& x,
                                    const Distribution& y, int grid_points) {
  EquivalenceReport report;
  report.lorenz = lorenz_dominance(x, y, grid_points);
  report.zenga = zenga_dominance(x, y, grid_points);
  report.agree = report.lorenz.relation == report.zenga.relation;
  return report;
}

}  // namespace welfarelens
