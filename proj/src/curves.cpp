#include "welfarelens/curves.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace welfarelens {
namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::domain_error(msg);
}

void check_rank(Rank r) {
  require(r.p > 0.0 && r.p < 1.0, "curve evaluation requires p in (0,1)");
}

// log(1-p) from whichever representation is exact on that side
double log_complement(Rank r) {
  return r.p < 0.5 ? std::log1p(-r.p) : std::log(r.complement);
}

// Piecewise-linear Lorenz interpolation for samples. Below the median rank
// the cell is located and anchored from the bottom lattice, above it from
// the top, so both L and 1-L keep full precision in their small regime.
LorenzPair lorenz_pair_sample(const EmpiricalSample& s, Rank r) {
  const double W = s.total_weight();
  const double T = s.total_value();
  const auto& cw = s.cum_weights();
  const auto& cv = s.cum_values();
  const auto& tw = s.tail_weights();
  const auto& tv = s.tail_values();

  if (r.p <= 0.5) {
    const double target = r.p * W;
    auto it = std::lower_bound(cw.begin(), cw.end(), target);
    if (it == cw.end()) --it;
    const std::size_t i = static_cast<std::size_t>(it - cw.begin());
    const double below_w = i == 0 ? 0.0 : cw[i - 1];
    const double below_v = i == 0 ? 0.0 : cv[i - 1];
    const double lt = below_v + (target - below_w) * s.values()[i];
    return {lt / T, (T - lt) / T};
  }
  const double tail_target = r.complement * W;
  auto it = std::lower_bound(tw.begin(), tw.end(), tail_target,
                             std::greater<double>());
  if (it == tw.end()) --it;
  const std::size_t i = static_cast<std::size_t>(it - tw.begin());
  const double olt = tv[i] + (tail_target - tw[i]) * s.values()[i];
  return {(T - olt) / T, olt / T};
}

struct LorenzVisitor {
  Rank r;

  LorenzPair operator()(const Degenerate&) const { return {r.p, r.complement}; }
  LorenzPair operator()(const Uniform& d) const {
    const double mu = 0.5 * (d.lo + d.hi);
    const double lt = r.p * (d.lo + 0.5 * (d.hi - d.lo) * r.p);
    const double olt =
        r.complement * (d.lo + 0.5 * (d.hi - d.lo) * (1.0 + r.p));
    return {lt / mu, olt / mu};
  }
  LorenzPair operator()(const Exponential&) const {
    // L = p + (1-p)log(1-p); 1-L = (1-p)(1 - log(1-p)); rate cancels
    const double lq = log_complement(r);
    return {r.p + r.complement * lq, r.complement * (1.0 - lq)};
  }
  LorenzPair operator()(const Pareto& d) const {
    // 1-L = (1-p)^(1-1/shape)
    const double e = (1.0 - 1.0 / d.shape) * log_complement(r);
    return {-std::expm1(e), std::exp(e)};
  }
  LorenzPair operator()(const Lognormal& d) const {
    const double z = detail::normal_quantile(r);
    return {detail::normal_cdf(z - d.log_sd), detail::normal_cdf(d.log_sd - z)};
  }
  LorenzPair operator()(const EmpiricalSample& s) const {
    return lorenz_pair_sample(s, r);
  }
};

// income share of the p..1 slice relative to p..1 population share, squared
// appears in welfare weights; here we only need the building blocks.

double income_gap(Rank r, LorenzPair l) {
  // p - L(p), computed on the side where both terms carry full precision
  return r.p < 0.5 ? r.p - l.value : l.complement - r.complement;
}

using detail::LatticeCell;
using detail::lattice_cells;

// ---------------------------------------------------------------------------
// Index routes.

double gini_discrete(const EmpiricalSample& s) {
  const double W = s.total_weight();
  double acc = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    acc += s.weights()[i] * s.values()[i] *
           (2.0 * s.cum_weights()[i] - s.weights()[i] - W);
  }
  return acc / (W * W * s.mean());
}

double gini_generalized_weight_route(const EmpiricalSample& s, double k) {
  // 1 - sum_i x_i * integral over the cell of (k+1)(1-p)^k dp, all closed form
  double acc = 0.0;
  for (const LatticeCell& c : lattice_cells(s)) {
    acc += c.x * (std::pow(c.ua, k + 1.0) - std::pow(c.ub, k + 1.0));
  }
  return 1.0 - acc / s.mean();
}

double bonferroni_discrete(const EmpiricalSample& s) {
  const std::size_t n = s.size();
  if (n == 1) return 0.0;
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    acc += s.cum_values()[i] / s.cum_weights()[i];
  }
  return 1.0 - acc / (static_cast<double>(n - 1) * s.mean());
}

double zenga_discrete(const EmpiricalSample& s) {
  const std::size_t n = s.size();
  const double W = s.total_weight();
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lower_mean = s.cum_values()[i] / s.cum_weights()[i];
    const double upper_mean = i + 1 < n
                                  ? s.tail_values()[i] / s.tail_weights()[i]
                                  : s.max_value();
    acc += s.weights()[i] / W * (1.0 - lower_mean / upper_mean);
  }
  return acc;
}

Integrand with_hints(std::function<double(Rank)> f) {
  return Integrand(std::move(f), true, true);
}

double gini_curve_parametric(const Distribution& d, double rel_tol) {
  return 2.0 *
         integrate(with_hints([&d](Rank r) {
                     return income_gap(r, lorenz_pair(d, r));
                   }),
                   0.0, 1.0, rel_tol)
             .value;
}

double gini_k_curve_parametric(const Distribution& d, double k,
                               double rel_tol) {
  const double load =
      integrate(with_hints([&d, k](Rank r) {
                  return lorenz_pair(d, r).value *
                         std::pow(r.complement, k - 1.0);
                }),
                0.0, 1.0, rel_tol)
          .value;
  return 1.0 - k * (k + 1.0) * load;
}

double bonferroni_curve_parametric(const Distribution& d, double rel_tol) {
  return integrate(with_hints([&d](Rank r) {
                     return 1.0 - lorenz_pair(d, r).value / r.p;
                   }),
                   0.0, 1.0, rel_tol)
      .value;
}

double zenga_curve_parametric(const Distribution& d, double rel_tol) {
  return integrate(with_hints([&d](Rank r) {
                     const LorenzPair l = lorenz_pair(d, r);
                     require(l.complement > 0.0, "degenerate upper tail");
                     return income_gap(r, l) / (r.p * l.complement);
                   }),
                   0.0, 1.0, rel_tol)
      .value;
}

double gini_curve_sample(const EmpiricalSample& s) {
  double area2 = 0.0;  // 2 * integral of the piecewise-linear Lorenz curve
  for (const LatticeCell& c : lattice_cells(s)) {
    area2 += (c.b - c.a) * (c.la + c.lb);
  }
  return 1.0 - area2;
}

double gini_k_curve_sample(const EmpiricalSample& s, double k) {
  // antiderivative of (alpha + beta p)(1-p)^(k-1) in u = 1-p
  double load = 0.0;
  for (const LatticeCell& c : lattice_cells(s)) {
    auto anti = [&](double u) {
      return -(c.alpha + c.beta) * std::pow(u, k) / k +
             c.beta * std::pow(u, k + 1.0) / (k + 1.0);
    };
    load += anti(c.ub) - anti(c.ua);
  }
  return 1.0 - k * (k + 1.0) * load;
}

double bonferroni_curve_sample(const EmpiricalSample& s) {
  double share = 0.0;  // integral of L(p)/p
  for (const LatticeCell& c : lattice_cells(s)) {
    if (c.a == 0.0) {
      share += c.beta * c.b;  // lowest cell: L/p is the constant beta
    } else {
      share += c.alpha * std::log(c.b / c.a) + c.beta * (c.b - c.a);
    }
  }
  return 1.0 - share;
}

double zenga_curve_sample(const EmpiricalSample& s, double rel_tol) {
  const double W = s.total_weight();
  const auto cells = lattice_cells(s);
  double uniformity_mass = 0.0;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const LatticeCell& c = cells[i];
    const double below_w = i == 0 ? 0.0 : s.cum_weights()[i - 1];
    const double below_v = i == 0 ? 0.0 : s.cum_values()[i - 1];
    const double tv = s.tail_values()[i];
    const double tw = s.tail_weights()[i];
    auto u_cell = [&, below_w, below_v, tv, tw](Rank r) {
      const double lt = below_v + (r.p * W - below_w) * c.x;
      const double olt = tv + (r.complement * W - tw) * c.x;
      require(olt > 0.0, "degenerate upper tail");
      return (lt * r.complement) / (r.p * olt);
    };
    uniformity_mass += integrate(u_cell, c.a, c.b, rel_tol).value;
  }
  return 1.0 - uniformity_mass;
}

}  // namespace

LorenzPair lorenz_pair(const Distribution& d, Rank r) {
  check_rank(r);
  return std::visit(LorenzVisitor{r}, d.node());
}

double lorenz(const Distribution& d, Rank r) { return lorenz_pair(d, r).value; }

double lorenz_complement(const Distribution& d, Rank r) {
  return lorenz_pair(d, r).complement;
}

double generalized_lorenz(const Distribution& d, Rank r) {
  return d.mean() * lorenz_pair(d, r).value;
}

double bonferroni_curve(const Distribution& d, Rank r) {
  return lorenz_pair(d, r).value / r.p;
}

double uniformity_ratio(const Distribution& d, Rank r) {
  const LorenzPair l = lorenz_pair(d, r);
  require(l.complement > 0.0, "degenerate upper tail");
  return (l.value * r.complement) / (r.p * l.complement);
}

double zenga_inequality_curve(const Distribution& d, Rank r) {
  const LorenzPair l = lorenz_pair(d, r);
  require(l.complement > 0.0, "degenerate upper tail");
  return income_gap(r, l) / (r.p * l.complement);
}

double gini(const Distribution& d, double rel_tol) {
  if (const EmpiricalSample* s = d.sample()) return gini_discrete(*s);
  return gini_curve_parametric(d, rel_tol);
}

double gini_generalized(const Distribution& d, double k, double rel_tol) {
  require(k >= 1.0 && std::isfinite(k), "generalized order k must be >= 1");
  if (const EmpiricalSample* s = d.sample()) {
    return gini_generalized_weight_route(*s, k);
  }
  return gini_k_curve_parametric(d, k, rel_tol);
}

double bonferroni(const Distribution& d, double rel_tol) {
  if (const EmpiricalSample* s = d.sample()) {
    return s->uniform_weights() ? bonferroni_discrete(*s)
                                : bonferroni_curve_sample(*s);
  }
  return bonferroni_curve_parametric(d, rel_tol);
}

double zenga_index(const Distribution& d, double rel_tol) {
  if (const EmpiricalSample* s = d.sample()) return zenga_discrete(*s);
  return zenga_curve_parametric(d, rel_tol);
}

double gini_from_curve(const Distribution& d, double rel_tol) {
  if (const EmpiricalSample* s = d.sample()) return gini_curve_sample(*s);
  return gini_curve_parametric(d, rel_tol);
}

double gini_generalized_from_curve(const Distribution& d, double k,
                                   double rel_tol) {
  require(k >= 1.0 && std::isfinite(k), "generalized order k must be >= 1");
  if (const EmpiricalSample* s = d.sample()) return gini_k_curve_sample(*s, k);
  return gini_k_curve_parametric(d, k, rel_tol);
}

double bonferroni_from_curve(const Distribution& d, double rel_tol) {
  if (const EmpiricalSample* s = d.sample()) return bonferroni_curve_sample(*s);
  return bonferroni_curve_parametric(d, rel_tol);
}

double zenga_from_curve(const Distribution& d, double rel_tol) {
  if (const EmpiricalSample* s = d.sample()) {
    return zenga_curve_sample(*s, rel_tol);
  }
  return zenga_curve_parametric(d, rel_tol);
}

IndexReport indices(const Distribution& d,
                    const std::vector<double>& gini_k_orders, double rel_tol) {
  IndexReport report;
  report.gini = gini(d, rel_tol);
  for (double k : gini_k_orders) {
    report.gini_k[k] = gini_generalized(d, k, rel_tol);
  }
  report.bonferroni = bonferroni(d, rel_tol);
  report.zenga = zenga_index(d, rel_tol);
  report.mean = d.mean();
  return report;
}

std::vector<double> open_uniform_grid(int n_points) {
  require(n_points >= 1, "grid needs at least one point");
  std::vector<double> grid(static_cast<std::size_t>(n_points));
  for (int i = 1; i <= n_points; ++i) {
    grid[static_cast<std::size_t>(i - 1)] = static_cast<double>(i) / (n_points + 1.0);
  }
  return grid;
}

namespace detail {

std::vector<LatticeCell> lattice_cells(const EmpiricalSample& s) {
  const double W = s.total_weight();
  const double T = s.total_value();
  const auto& cw = s.cum_weights();
  const auto& cv = s.cum_values();
  const auto& tw = s.tail_weights();
  std::vector<LatticeCell> cells(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double below_w = i == 0 ? 0.0 : cw[i - 1];
    const double below_v = i == 0 ? 0.0 : cv[i - 1];
    const double x = s.values()[i];
    cells[i] = LatticeCell{below_w / W,
                           cw[i] / W,
                           (tw[i] + s.weights()[i]) / W,
                           tw[i] / W,
                           (below_v - below_w * x) / T,
                           x * W / T,
                           below_v / T,
                           cv[i] / T,
                           x,
                           s.weights()[i]};
  }
  return cells;
}

}  // namespace detail

CurveGrid curve_grid(const Distribution& d, CurveKind kind, int n_points) {
  CurveGrid out;
  out.kind = kind;
  for (double p : open_uniform_grid(n_points)) {
    const Rank r = Rank::from_p(p);
    double v = 0.0;
    switch (kind) {
      case CurveKind::lorenz: v = lorenz(d, r); break;
      case CurveKind::generalized_lorenz: v = generalized_lorenz(d, r); break;
      case CurveKind::bonferroni_curve: v = bonferroni_curve(d, r); break;
      case CurveKind::uniformity_ratio: v = uniformity_ratio(d, r); break;
      case CurveKind::zenga_inequality: v = zenga_inequality_curve(d, r); break;
    }
    out.points.push_back(CurvePoint{p, v});
  }
  return out;
}

}  // namespace welfarelens
