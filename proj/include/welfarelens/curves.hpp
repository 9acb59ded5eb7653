#pragma once

#include <map>
#include <vector>

#include "welfarelens/distributions.hpp"
#include "welfarelens/quadrature.hpp"

// Concentration curves and scalar inequality indices.
//
// Point evaluations use closed forms for the parametric families and the
// piecewise-linear interpolation between lattice points (c_i/W, S_i/T) for
// samples. The Lorenz value and its complement 1-L are always computed as a
// pair, each from the side where it has full relative precision.
//
// Every index comes in two routes:
//   * the official estimator (discrete formulas on samples, curve-definition
//     integrals on parametric families), and
//   * the *_from_curve variant, which always integrates the defining curve
//     expression over the distribution's Lorenz function. On samples that is
//     the piecewise-linear embedding; on parametric families the two routes
//     coincide.

namespace welfarelens {

enum class CurveKind {
  lorenz,
  generalized_lorenz,
  bonferroni_curve,
  uniformity_ratio,
  zenga_inequality
};

struct CurvePoint {
  double p;
  double value;
};

struct CurveGrid {
  CurveKind kind;
  std::vector<CurvePoint> points;
};

struct IndexReport {
  double gini = 0.0;
  std::map<double, double> gini_k;
  double bonferroni = 0.0;
  double zenga = 0.0;
  double mean = 0.0;
};

// L(p) and 1-L(p), the shares of total income below and above rank p.
struct LorenzPair {
  double value;
  double complement;
};
LorenzPair lorenz_pair(const Distribution& d, Rank r);

double lorenz(const Distribution& d, Rank r);
double lorenz_complement(const Distribution& d, Rank r);
double generalized_lorenz(const Distribution& d, Rank r);  // mean * L(p)
double bonferroni_curve(const Distribution& d, Rank r);    // L(p)/p

// Ratio of the mean income of the poorest p-share to the mean income of the
// richest (1-p)-share, and its one-complement.
double uniformity_ratio(const Distribution& d, Rank r);
double zenga_inequality_curve(const Distribution& d, Rank r);

inline double lorenz(const Distribution& d, double p) {
  return lorenz(d, Rank::from_p(p));
}
inline double lorenz_complement(const Distribution& d, double p) {
  return lorenz_complement(d, Rank::from_p(p));
}
inline double generalized_lorenz(const Distribution& d, double p) {
  return generalized_lorenz(d, Rank::from_p(p));
}
inline double bonferroni_curve(const Distribution& d, double p) {
  return bonferroni_curve(d, Rank::from_p(p));
}
inline double uniformity_ratio(const Distribution& d, double p) {
  return uniformity_ratio(d, Rank::from_p(p));
}
inline double zenga_inequality_curve(const Distribution& d, double p) {
  return zenga_inequality_curve(d, Rank::from_p(p));
}

// Official index estimators.
double gini(const Distribution& d, double rel_tol = kDefaultRelTol);
double gini_generalized(const Distribution& d, double k,
                        double rel_tol = kDefaultRelTol);  // k >= 1
double bonferroni(const Distribution& d, double rel_tol = kDefaultRelTol);
double zenga_index(const Distribution& d, double rel_tol = kDefaultRelTol);

// Curve-definition routes (piecewise-linear embedding on samples).
double gini_from_curve(const Distribution& d, double rel_tol = kDefaultRelTol);
double gini_generalized_from_curve(const Distribution& d, double k,
                                   double rel_tol = kDefaultRelTol);
double bonferroni_from_curve(const Distribution& d,
                             double rel_tol = kDefaultRelTol);
double zenga_from_curve(const Distribution& d,
                        double rel_tol = kDefaultRelTol);

IndexReport indices(const Distribution& d,
                    const std::vector<double>& gini_k_orders = {2.0},
                    double rel_tol = kDefaultRelTol);

// p_i = i/(n+1) for i = 1..n: uniform, open at both ends.
std::vector<double> open_uniform_grid(int n_points);

CurveGrid curve_grid(const Distribution& d, CurveKind kind, int n_points);

namespace detail {

// One observation of a sorted sample as a rank interval [a,b], on which the
// piecewise-linear Lorenz curve is L(p) = alpha + beta*p. ua and ub are the
// complements 1-a and 1-b accumulated from the top lattice, exact where the
// tail is thin.
struct LatticeCell {
  double a, b;
  double ua, ub;
  double alpha, beta;
  double la, lb;  // lattice Lorenz values
  double x, w;
};

std::vector<LatticeCell> lattice_cells(const EmpiricalSample& s);

}  // namespace detail

}  // namespace welfarelens
