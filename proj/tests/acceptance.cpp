// Acceptance harness: every release criterion as one pass/fail line.
// Exits nonzero when any line fails.

#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "welfarelens/dominance.hpp"
#include "welfarelens/report.hpp"
#include "welfarelens/welfare.hpp"

using namespace welfarelens;

namespace {

int failures = 0;

void report(const std::string& name, bool ok, const std::string& detail) {
  std::printf("%s: %s (%s)\n", ok ? "PASS" : "FAIL", name.c_str(),
              detail.c_str());
  if (!ok) ++failures;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

EmpiricalSample random_sample(std::uint64_t seed, std::size_t n,
                              bool weighted) {
  std::mt19937_64 rng(seed);
  std::lognormal_distribution<double> income(0.0, 0.5 + (seed % 7) * 0.1);
  std::uniform_real_distribution<double> weight(0.5, 2.5);
  std::vector<double> x(n), w(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = income(rng);
    w[i] = weighted ? weight(rng) : 1.0;
  }
  return weighted ? EmpiricalSample(x, w) : EmpiricalSample(x);
}

double phi(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

// 1. every weight function integrates to 1 over (0,1), within 1e-8
void criterion_normalization() {
  double worst = 0.0;
  auto probe = [&worst](auto f) {
    double mass = integrate(Integrand(f, true, true), 0.0, 1.0, 1e-12).value;
    worst = std::max(worst, std::abs(mass - 1.0));
  };
  probe(weight_gini);
  probe(weight_bonferroni);
  probe(weight_zenga_star);
  for (double k : {1.0, 2.0, 5.0}) {
    probe([k](Rank r) { return weight_gini_generalized(r, k); });
  }
  report("weight functions integrate to one", worst <= 1e-8,
         "worst |mass - 1| " + num(worst));
}

// 2. limit behavior of the zenga weight at both ends of the rank scale
void criterion_limits() {
  bool ok = true;
  std::string detail;

  const double top = weight_zenga_star(Rank::from_complement(1e-6));
  ok &= top >= 0.5 && top <= 0.5 + 1e-6;
  detail += "top " + num(top);

  const double bottom = weight_zenga_star(Rank::from_p(1e-12));
  ok &= bottom > 25.0;
  detail += ", bottom " + num(bottom);

  for (const Distribution& d :
       {Distribution(Pareto{2.0, 1.0}), Distribution(Lognormal{0.0, 1.0})}) {
    const double w = weight_zenga(d, Rank::from_complement(1e-4));
    ok &= w < 1e-3;
    detail += ", fade " + num(w);
  }

  Distribution two = EmpiricalSample({1.0, 3.0});
  for (double q : {1e-9, 1e-12}) {
    const double b = beta_zenga(two, Rank::from_complement(q));
    ok &= std::abs(b - 4.0 / 9.0) <= 1e-12;
    detail += ", beta gap " + num(std::abs(b - 4.0 / 9.0));
  }
  report("zenga weight limits at the rank ends", ok, detail);
}

// 3. shape of the distribution-free zenga weight on a fine grid
void criterion_shape() {
  const std::vector<double> grid = open_uniform_grid(10000);
  std::vector<double> star(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    star[i] = weight_zenga_star(Rank::from_p(grid[i]));
  }
  double worst_diff = -HUGE_VAL, worst_curv = HUGE_VAL, worst_aux = HUGE_VAL;
  double worst_head = HUGE_VAL;
  for (std::size_t i = 0; i + 1 < star.size(); ++i) {
    worst_diff = std::max(worst_diff, star[i + 1] - star[i]);
    if (i > 0) {
      worst_curv = std::min(worst_curv,
                            star[i + 1] - 2.0 * star[i] + star[i - 1]);
    }
  }
  for (double p : grid) {
    const double h = (((2.0 * p + 3.0) * p - 6.0) * p + 1.0) / (p * p);
    worst_aux = std::min(worst_aux, h - 6.0 * std::log(p));
    if (p <= 0.186) worst_head = std::min(worst_head, h);
  }
  const bool ok = worst_diff < 0.0 && worst_curv >= -1e-10 &&
                  worst_aux >= -1e-12 && worst_head >= 0.0;
  report("zenga weight is decreasing and convex", ok,
         "max diff " + num(worst_diff) + ", min curvature " + num(worst_curv) +
             ", min aux margin " + num(worst_aux));
}

// 4. the integration-by-parts boundary term vanishes at both ends
void criterion_boundary() {
  double worst = 0.0;
  for (const Distribution& d :
       {Distribution(Uniform{0.0, 1.0}), Distribution(Exponential{1.0}),
        Distribution(Pareto{2.0, 1.0}), Distribution(Lognormal{0.0, 1.0})}) {
    for (Rank r : {Rank::from_p(1e-8), Rank::from_complement(1e-8)}) {
      const LorenzPair l = lorenz_pair(d, r);
      const double log_p =
          r.p < 0.5 ? std::log(r.p) : std::log1p(-r.complement);
      const double term = l.value / l.complement * (log_p + r.complement);
      worst = std::max(worst, std::abs(term));
    }
  }
  report("boundary term vanishes at both rank ends", worst < 1e-6,
         "worst |term| " + num(worst));
}

// 5. integrating quantiles against the weights reproduces the welfare values
void criterion_identity() {
  const std::vector<WelfareKind> kinds = {
      {WelfareFamily::gini, 2.0},
      {WelfareFamily::gini_generalized, 2.0},
      {WelfareFamily::bonferroni, 2.0},
      {WelfareFamily::zenga, 2.0}};
  double worst = 0.0;
  for (const Distribution& d :
       {Distribution(Uniform{0.0, 1.0}), Distribution(Exponential{1.0}),
        Distribution(Pareto{2.0, 1.0}), Distribution(Pareto{3.0, 1.0}),
        Distribution(Lognormal{0.0, 1.0})}) {
    for (const WelfareKind& kind : kinds) {
      const double ref = welfare(d, kind);
      const double dir = welfare_direct(d, kind);
      worst = std::max(worst,
                       std::abs(dir - ref) / std::max(1.0, std::abs(ref)));
    }
  }
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Distribution s = random_sample(seed, 50, seed % 2 == 0);
    for (const WelfareKind& kind : kinds) {
      const double ref = welfare_from_curve(s, kind);
      const double dir = welfare_direct(s, kind);
      worst = std::max(worst,
                       std::abs(dir - ref) / std::max(1.0, std::abs(ref)));
    }
  }
  report("weighted-quantile welfare matches the index route", worst <= 1e-8,
         "worst relative gap " + num(worst));
}

// 6. closed-form index values
void criterion_oracles() {
  double worst = 0.0;
  auto check = [&worst](double got, double want) {
    worst = std::max(worst, std::abs(got - want));
  };
  check(gini(Exponential{1.0}), 0.5);
  check(gini(Uniform{0.0, 1.0}), 1.0 / 3.0);
  check(gini(Pareto{2.0, 1.0}), 1.0 / 3.0);
  check(gini(Lognormal{0.0, 1.0}), 2.0 * phi(1.0 / std::sqrt(2.0)) - 1.0);
  check(bonferroni(Uniform{0.0, 1.0}), 0.5);
  check(zenga_index(Uniform{0.0, 1.0}), std::log(2.0));
  check(gini_generalized(Exponential{1.0}, 2.0), 2.0 / 3.0);
  report("closed-form index values", worst <= 1e-6,
         "worst |gap| " + num(worst));
}

// 7. lorenz and zenga dominance verdicts agree on random pairs
void criterion_equivalence() {
  int disagreements = 0;
  std::mt19937_64 rng(424242);
  std::uniform_int_distribution<std::size_t> size(25, 60);
  for (int pair = 0; pair < 200; ++pair) {
    Distribution x = random_sample(1000 + 2 * pair, size(rng), pair % 2 == 0);
    Distribution y = random_sample(1001 + 2 * pair, size(rng), pair % 3 == 0);
    EquivalenceReport rep = equivalence_check(x, y, 501);
    if (!rep.agree) ++disagreements;
  }
  report("lorenz and zenga dominance orders agree", disagreements == 0,
         "disagreements " + std::to_string(disagreements) + "/200");
}

// 8. progressive transfers lower every index; rescaling moves none
void criterion_transfers() {
  int transfer_failures = 0;
  double worst_scale = 0.0;
  for (std::uint64_t seed = 100; seed < 150; ++seed) {
    std::mt19937_64 rng(seed);
    std::lognormal_distribution<double> income(0.0, 0.8);
    const std::size_t n = 20 + seed % 41;
    std::vector<double> x(n);
    for (double& v : x) v = income(rng);
    std::sort(x.begin(), x.end());

    const std::size_t i = n / 4, j = (3 * n) / 4;
    const double room = std::min({x[i + 1] - x[i], x[j] - x[j - 1],
                                  0.5 * (x[j] - x[i])});
    std::vector<double> y = x;
    y[i] += 0.45 * room;
    y[j] -= 0.45 * room;

    Distribution before = EmpiricalSample(x);
    Distribution after = EmpiricalSample(y);
    const bool lowered = gini(after) < gini(before) &&
                         gini_generalized(after, 2.0) <
                             gini_generalized(before, 2.0) &&
                         bonferroni(after) < bonferroni(before) &&
                         zenga_index(after) < zenga_index(before);
    if (!(room > 0.0 && lowered)) ++transfer_failures;

    for (double c : {0.1, 10.0}) {
      Distribution scaled = scale(before, c);
      worst_scale = std::max(
          {worst_scale, std::abs(gini(scaled) - gini(before)),
           std::abs(gini_generalized(scaled, 2.0) -
                    gini_generalized(before, 2.0)),
           std::abs(bonferroni(scaled) - bonferroni(before)),
           std::abs(zenga_index(scaled) - zenga_index(before))});
    }
  }
  report("progressive transfers lower every index, rescaling moves none",
         transfer_failures == 0 && worst_scale <= 1e-12,
         "transfer failures " + std::to_string(transfer_failures) +
             "/50, worst scale drift " + num(worst_scale));
}

// 9. the two-point sample {1,3} in exact arithmetic
void criterion_two_point() {
  Distribution two = EmpiricalSample({1.0, 3.0});
  double worst = 0.0;
  auto check = [&worst](double got, double want) {
    worst = std::max(worst, std::abs(got - want));
  };
  check(gini(two), 0.25);
  check(bonferroni(two), 0.5);
  check(zenga_index(two), 0.5);
  check(welfare(two, {WelfareFamily::gini, 2.0}), 1.5);
  check(welfare_direct(two, {WelfareFamily::gini, 2.0}), 1.5);
  check(welfare(two, {WelfareFamily::zenga, 2.0}), 1.0);
  report("two-point sample reproduces its exact values", worst <= 1e-12,
         "worst |gap| " + num(worst));
}

}  // namespace

int main() {
  criterion_normalization();
  criterion_limits();
  criterion_shape();
  criterion_boundary();
  criterion_identity();
  criterion_oracles();
  criterion_equivalence();
  criterion_transfers();
  criterion_two_point();
  if (failures == 0) {
    std::printf("all acceptance criteria passed\n");
    return 0;
  }
  std::printf("%d acceptance criteria failed\n", failures);
  return 1;
}
