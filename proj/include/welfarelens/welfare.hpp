#pragma once

#include <string>
#include <vector>

#include "welfarelens/curves.hpp"
#include "welfarelens/distributions.hpp"
#include "welfarelens/quadrature.hpp"

// Rank-based welfare: W = integral of quantile(p) * weight(p) dp. Each
// inequality index has a weight profile that makes mean*(1-index) drop out
// of that integral. The gini family weights depend on the rank alone; the
// zenga weight splits into a distribution-free core (weight_zenga_star)
// times a distribution correction (beta_zenga).

namespace welfarelens {

enum class WelfareFamily { gini, gini_generalized, bonferroni, zenga };

struct WelfareKind {
  WelfareFamily family = WelfareFamily::gini;
  double k = 2.0;  // order, gini_generalized only
};

// Distribution-free weights. All integrate to 1 over (0,1).
double weight_gini(Rank r);                           // 2(1-p)
double weight_gini_generalized(Rank r, double k);     // (k+1)(1-p)^k
double weight_bonferroni(Rank r);                     // -log p
double weight_zenga_star(Rank r);  // (-log p + p - 1) / (1-p)^2

// Distribution correction for the zenga weight: ((1-p)/(1-L(p)))^2.
// Equals the squared ratio of the overall mean to the mean above rank p.
double beta_zenga(const Distribution& d, Rank r);

// weight_zenga_star(r) * beta_zenga(d, r). Integrates to at most 1,
// with equality only when the distribution is degenerate.
double weight_zenga(const Distribution& d, Rank r);

// Weight for `kind`; `d` may be null except for the zenga family.
double welfare_weight(const Distribution* d, const WelfareKind& kind, Rank r);

// mean * (1 - index), using the official index estimator for samples.
double welfare(const Distribution& d, const WelfareKind& kind,
               double rel_tol = kDefaultRelTol);

// integral of quantile * weight. Closed cell sums for samples where the
// weight is distribution-free, quadrature otherwise.
double welfare_direct(const Distribution& d, const WelfareKind& kind,
                      double rel_tol = kDefaultRelTol);

// mean * (1 - index), with the index taken as the area under the relevant
// curve. For samples this embeds the data as a piecewise-linear curve, the
// representation welfare_direct matches identically.
double welfare_from_curve(const Distribution& d, const WelfareKind& kind,
                          double rel_tol = kDefaultRelTol);

enum class WeightVariant { nu, nu_star, beta };

struct WeightProfile {
  WelfareKind kind;
  WeightVariant variant = WeightVariant::nu;
  std::vector<CurvePoint> points;
  double integral = 0.0;  // numeric integral of the plotted function
};

// Tabulates a weight function on the open uniform grid. `d` may be null
// unless the variant needs the distribution (zenga nu, beta). nu_star and
// beta are only defined for the zenga family.
WeightProfile weight_profile(const Distribution* d, const WelfareKind& kind,
                             WeightVariant variant, int n_points,
                             double rel_tol = kDefaultRelTol);

struct PropositionCertificate {
  std::string id;
  bool passed = false;
  double residual = 0.0;
  std::string description;
};

// Numeric certification of the analytic properties of the zenga weight and
// the welfare identity, evaluated on a concrete distribution. Fixed order:
//   boundary_term_zero, nu_star_integrates_to_1, nu_star_decreasing,
//   nu_star_convex, limits, beta_decreasing, welfare_identity.
std::vector<PropositionCertificate> certify(const Distribution& d,
                                            double rel_tol = kDefaultRelTol);

}  // namespace welfarelens
