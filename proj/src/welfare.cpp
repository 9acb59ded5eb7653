#include "welfarelens/welfare.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace welfarelens {
namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::domain_error(msg);
}

void check_order(const WelfareKind& kind) {
  if (kind.family == WelfareFamily::gini_generalized) {
    require(kind.k >= 1.0 && std::isfinite(kind.k),
            "generalized order k must be >= 1");
  }
}

double log_p(Rank r) {
  return r.p < 0.5 ? std::log(r.p) : std::log1p(-r.complement);
}

Integrand with_hints(std::function<double(Rank)> f) {
  return Integrand(std::move(f), true, true);
}

// integral of weight_zenga over one sample cell, beta anchored to the exact
// tail sums so the top cell keeps full precision
double zenga_cell_mass(const EmpiricalSample& s, const detail::LatticeCell& c,
                       std::size_t i, double rel_tol) {
  const double W = s.total_weight();
  const double T = s.total_value();
  const double tv = s.tail_values()[i];
  const double tw = s.tail_weights()[i];
  auto f = [&, tv, tw](Rank r) {
    const double olt = tv + (r.complement * W - tw) * c.x;
    require(olt > 0.0, "degenerate upper tail");
    const double ratio = r.complement * T / olt;
    return weight_zenga_star(r) * ratio * ratio;
  };
  return integrate(Integrand(f, i == 0, false), c.a, c.b, rel_tol).value;
}

double direct_sample(const EmpiricalSample& s, const WelfareKind& kind,
                     double rel_tol) {
  const auto cells = detail::lattice_cells(s);
  double acc = 0.0;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const detail::LatticeCell& c = cells[i];
    double mass = 0.0;  // integral of the weight over the cell
    switch (kind.family) {
      case WelfareFamily::gini:
        mass = c.ua * c.ua - c.ub * c.ub;
        break;
      case WelfareFamily::gini_generalized:
        mass = std::pow(c.ua, kind.k + 1.0) - std::pow(c.ub, kind.k + 1.0);
        break;
      case WelfareFamily::bonferroni: {
        auto anti = [](double p) {
          return p == 0.0 ? 0.0 : p * (1.0 - std::log(p));
        };
        mass = anti(c.b) - anti(c.a);
        break;
      }
      case WelfareFamily::zenga:
        mass = zenga_cell_mass(s, c, i, rel_tol);
        break;
    }
    acc += c.x * mass;
  }
  return acc;
}

double index_for(const Distribution& d, const WelfareKind& kind,
                 double rel_tol, bool from_curve) {
  switch (kind.family) {
    case WelfareFamily::gini:
      return from_curve ? gini_from_curve(d, rel_tol) : gini(d, rel_tol);
    case WelfareFamily::gini_generalized:
      return from_curve ? gini_generalized_from_curve(d, kind.k, rel_tol)
                        : gini_generalized(d, kind.k, rel_tol);
    case WelfareFamily::bonferroni:
      return from_curve ? bonferroni_from_curve(d, rel_tol)
                        : bonferroni(d, rel_tol);
    case WelfareFamily::zenga:
      return from_curve ? zenga_from_curve(d, rel_tol)
                        : zenga_index(d, rel_tol);
  }
  throw std::logic_error("unreachable welfare family");
}

}  // namespace

double weight_gini(Rank r) { return 2.0 * r.complement; }

double weight_gini_generalized(Rank r, double k) {
  require(k >= 1.0 && std::isfinite(k), "generalized order k must be >= 1");
  return (k + 1.0) * std::pow(r.complement, k);
}

double weight_bonferroni(Rank r) { return -log_p(r); }

double weight_zenga_star(Rank r) {
  const double q = r.complement;
  if (q < 1e-4) {
    // (-log(1-q) - q)/q^2 expanded around q = 0
    double acc = 1.0 / 8.0;
    for (int k = 7; k >= 2; --k) acc = acc * q + 1.0 / k;
    return acc;
  }
  return (-log_p(r) - q) / (q * q);
}

double beta_zenga(const Distribution& d, Rank r) {
  const LorenzPair l = lorenz_pair(d, r);
  require(l.complement > 0.0, "degenerate upper tail");
  const double ratio = r.complement / l.complement;
  return ratio * ratio;
}

double weight_zenga(const Distribution& d, Rank r) {
  return weight_zenga_star(r) * beta_zenga(d, r);
}

double welfare_weight(const Distribution* d, const WelfareKind& kind, Rank r) {
  switch (kind.family) {
    case WelfareFamily::gini: return weight_gini(r);
    case WelfareFamily::gini_generalized:
      return weight_gini_generalized(r, kind.k);
    case WelfareFamily::bonferroni: return weight_bonferroni(r);
    case WelfareFamily::zenga:
      require(d != nullptr, "zenga weights need a distribution");
      return weight_zenga(*d, r);
  }
  throw std::logic_error("unreachable welfare family");
}

double welfare(const Distribution& d, const WelfareKind& kind,
               double rel_tol) {
  check_order(kind);
  return d.mean() * (1.0 - index_for(d, kind, rel_tol, false));
}

double welfare_from_curve(const Distribution& d, const WelfareKind& kind,
                          double rel_tol) {
  check_order(kind);
  return d.mean() * (1.0 - index_for(d, kind, rel_tol, true));
}

double welfare_direct(const Distribution& d, const WelfareKind& kind,
                      double rel_tol) {
  check_order(kind);
  if (const EmpiricalSample* s = d.sample()) {
    return direct_sample(*s, kind, rel_tol);
  }
  return integrate(with_hints([&](Rank r) {
                     return d.quantile(r) * welfare_weight(&d, kind, r);
                   }),
                   0.0, 1.0, rel_tol)
      .value;
}

WeightProfile weight_profile(const Distribution* d, const WelfareKind& kind,
                             WeightVariant variant, int n_points,
                             double rel_tol) {
  check_order(kind);
  if (variant != WeightVariant::nu) {
    require(kind.family == WelfareFamily::zenga,
            "nu_star and beta are parts of the zenga weight only");
  }
  const bool needs_d =
      (variant == WeightVariant::nu && kind.family == WelfareFamily::zenga) ||
      variant == WeightVariant::beta;
  require(!needs_d || d != nullptr, "this weight variant needs a distribution");

  auto value_at = [&](Rank r) {
    switch (variant) {
      case WeightVariant::nu: return welfare_weight(d, kind, r);
      case WeightVariant::nu_star: return weight_zenga_star(r);
      case WeightVariant::beta: return beta_zenga(*d, r);
    }
    throw std::logic_error("unreachable weight variant");
  };

  WeightProfile out;
  out.kind = kind;
  out.variant = variant;
  for (double p : open_uniform_grid(n_points)) {
    out.points.push_back(CurvePoint{p, value_at(Rank::from_p(p))});
  }

  const EmpiricalSample* s = needs_d ? d->sample() : nullptr;
  if (s == nullptr) {
    out.integral = integrate(with_hints(value_at), 0.0, 1.0, rel_tol).value;
  } else if (variant == WeightVariant::beta) {
    // beta is smooth inside every cell and bounded at both ends
    double acc = 0.0;
    for (const detail::LatticeCell& c : detail::lattice_cells(*s)) {
      acc += integrate([&](Rank r) { return beta_zenga(*d, r); }, c.a, c.b,
                       rel_tol)
                 .value;
    }
    out.integral = acc;
  } else {
    const auto cells = detail::lattice_cells(*s);
    double acc = 0.0;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      acc += zenga_cell_mass(*s, cells[i], i, rel_tol);
    }
    out.integral = acc;
  }
  return out;
}

std::vector<PropositionCertificate> certify(const Distribution& d,
                                            double rel_tol) {
  const double tight = std::min(rel_tol, 1e-10);
  std::vector<PropositionCertificate> out;

  {
    // L/(1-L) * (log p + 1 - p) at both ends of the unit interval
    double worst = 0.0;
    for (Rank r : {Rank::from_p(1e-8), Rank::from_complement(1e-8)}) {
      const LorenzPair l = lorenz_pair(d, r);
      require(l.complement > 0.0, "degenerate upper tail");
      const double term = l.value / l.complement * (log_p(r) + r.complement);
      worst = std::max(worst, std::abs(term));
    }
    out.push_back({"boundary_term_zero", worst <= 1e-6, worst,
                   "integration-by-parts boundary term vanishes at both ends "
                   "of the unit interval"});
  }

  {
    const double integral =
        integrate(with_hints(weight_zenga_star), 0.0, 1.0, tight).value;
    const double res = std::abs(integral - 1.0);
    out.push_back({"nu_star_integrates_to_1", res <= 1e-8, res,
                   "the distribution-free part of the zenga weight "
                   "integrates to 1"});
  }

  const std::vector<double> grid = open_uniform_grid(10000);
  std::vector<double> star(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    star[i] = weight_zenga_star(Rank::from_p(grid[i]));
  }

  {
    double worst = -HUGE_VAL;
    for (std::size_t i = 0; i + 1 < star.size(); ++i) {
      worst = std::max(worst, star[i + 1] - star[i]);
    }
    out.push_back({"nu_star_decreasing", worst < 0.0, worst,
                   "the distribution-free part of the zenga weight is "
                   "strictly decreasing (largest first difference)"});
  }

  {
    double margin = HUGE_VAL;
    for (std::size_t i = 1; i + 1 < star.size(); ++i) {
      margin =
          std::min(margin, star[i + 1] - 2.0 * star[i] + star[i - 1] + 1e-10);
    }
    // convexity is equivalent to h(p) >= 6 log p, and h itself stays
    // positive left of its first root near 0.1867
    for (double p : grid) {
      const double h = (((2.0 * p + 3.0) * p - 6.0) * p + 1.0) / (p * p);
      margin = std::min(margin, h - 6.0 * std::log(p) + 1e-12);
      if (p <= 0.186) margin = std::min(margin, h);
    }
    out.push_back({"nu_star_convex", margin >= 0.0, margin,
                   "the distribution-free part of the zenga weight is convex "
                   "(worst margin across the grid checks)"});
  }

  {
    const double top = weight_zenga_star(Rank::from_complement(1e-6));
    double margin = std::min(top - 0.5, 0.5 + 1e-6 - top);
    margin = std::min(margin, weight_zenga_star(Rank::from_p(1e-12)) - 25.0);
    if (auto xmax = d.support_max()) {
      const double target = d.mean() / *xmax;
      const double tail = beta_zenga(d, Rank::from_complement(1e-9));
      margin = std::min(margin, 1e-6 - std::abs(tail - target * target));
    } else {
      // unbounded support: the zenga weight must fade out toward the top
      double prev = HUGE_VAL;
      for (double q : {1e-2, 1e-4, 1e-6, 1e-8}) {
        const double w = weight_zenga(d, Rank::from_complement(q));
        if (prev != HUGE_VAL) margin = std::min(margin, prev - w);
        prev = w;
      }
    }
    out.push_back({"limits", margin >= 0.0, margin,
                   "the zenga weight tends to 1/2 at the top rank, diverges "
                   "at the bottom, and its tail correction has the expected "
                   "limit (worst margin)"});
  }

  {
    double margin = HUGE_VAL;
    double prev = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double b = beta_zenga(d, Rank::from_p(grid[i]));
      if (i > 0) margin = std::min(margin, 1e-12 - (b - prev));
      margin = std::min(margin, 1.0 + 1e-12 - b);
      margin = std::min(margin, b);
      prev = b;
    }
    out.push_back({"beta_decreasing", margin >= 0.0, margin,
                   "the distribution correction stays within [0,1] and never "
                   "increases (worst margin)"});
  }

  {
    const bool is_sample = d.sample() != nullptr;
    double worst = 0.0;
    for (WelfareKind kind :
         {WelfareKind{WelfareFamily::gini, 2.0},
          WelfareKind{WelfareFamily::gini_generalized, 2.0},
          WelfareKind{WelfareFamily::bonferroni, 2.0},
          WelfareKind{WelfareFamily::zenga, 2.0}}) {
      const double ref = is_sample ? welfare_from_curve(d, kind, tight)
                                   : welfare(d, kind, tight);
      const double dir = welfare_direct(d, kind, tight);
      worst = std::max(worst, std::abs(dir - ref) / std::max(1.0, std::abs(ref)));
    }
    out.push_back({"welfare_identity", worst <= 1e-8, worst,
                   "integrating quantiles against the welfare weights "
                   "reproduces mean times (1 - curve index) for every family "
                   "(worst relative gap)"});
  }

  return out;
}

}  // namespace welfarelens
