#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "welfarelens/curves.hpp"
#include "welfarelens/distributions.hpp"

using namespace welfarelens;

namespace {

// quadratic-cost reference estimator, kept independent of the library route
double pairwise_gini(const std::vector<double>& x,
                     const std::vector<double>& w) {
  double num = 0.0, total_w = 0.0, total_v = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    total_w += w[i];
    total_v += w[i] * x[i];
    for (std::size_t j = 0; j < x.size(); ++j) {
      num += w[i] * w[j] * std::abs(x[i] - x[j]);
    }
  }
  return num / (2.0 * total_w * total_v);
}

EmpiricalSample random_sample(std::uint64_t seed, std::size_t n,
                              bool weighted) {
  std::mt19937_64 rng(seed);
  std::lognormal_distribution<double> income(0.0, 0.75);
  std::uniform_real_distribution<double> weight(0.5, 2.5);
  std::vector<double> x(n), w(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = income(rng);
    w[i] = weighted ? weight(rng) : 1.0;
  }
  return weighted ? EmpiricalSample(x, w) : EmpiricalSample(x);
}

double phi(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

}  // namespace

TEST_CASE("lorenz matches closed forms") {
  const std::vector<double> grid = {0.001, 0.1, 0.25, 0.5, 0.75, 0.9, 0.999};

  Distribution u = Uniform{0.0, 1.0};
  Distribution e = Exponential{1.3};
  Distribution par = Pareto{2.0, 1.0};
  Distribution ln = Lognormal{0.0, 1.0};

  for (double p : grid) {
    CAPTURE(p);
    CHECK(lorenz(u, p) == doctest::Approx(p * p).epsilon(1e-13));
    CHECK(lorenz(e, p) ==
          doctest::Approx(p + (1.0 - p) * std::log1p(-p)).epsilon(1e-13));
    CHECK(lorenz(par, p) ==
          doctest::Approx(1.0 - std::sqrt(1.0 - p)).epsilon(1e-13));
    double z = detail::normal_quantile(Rank::from_p(p));
    CHECK(lorenz(ln, p) == doctest::Approx(phi(z - 1.0)).epsilon(1e-12));
    for (const Distribution* d : {&u, &e, &par, &ln}) {
      CHECK(lorenz(*d, p) + lorenz_complement(*d, p) ==
            doctest::Approx(1.0).epsilon(1e-14));
    }
  }
  CHECK(lorenz(par, 0.75) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(lorenz(u, 0.5) == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("lorenz complement keeps precision deep in the upper tail") {
  // pareto(2): 1-L = sqrt(1-p)
  Distribution par = Pareto{2.0, 1.0};
  Rank r = Rank::from_complement(1e-14);
  CHECK(lorenz_complement(par, r) == doctest::Approx(1e-7).epsilon(1e-12));

  // two-point sample {1,3}: top cell has 1-L = 3*(1-p)*2/4 = 1.5(1-p)
  Distribution s = EmpiricalSample({1.0, 3.0});
  CHECK(lorenz_complement(s, Rank::from_complement(1e-12)) ==
        doctest::Approx(1.5e-12).epsilon(1e-13));
}

TEST_CASE("two point sample curve values") {
  Distribution s = EmpiricalSample({1.0, 3.0});
  CHECK(lorenz(s, 0.5) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(bonferroni_curve(s, 0.5) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(uniformity_ratio(s, 0.5) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(zenga_inequality_curve(s, 0.5) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(generalized_lorenz(s, 0.5) == doctest::Approx(0.5).epsilon(1e-15));

  CHECK(gini(s) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(bonferroni(s) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(zenga_index(s) == doctest::Approx(0.5).epsilon(1e-15));

  // rescaling the weights must not move anything
  Distribution s2 = EmpiricalSample({1.0, 3.0}, {7.0, 7.0});
  CHECK(gini(s2) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(zenga_index(s2) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("index oracles for parametric families") {
  CHECK(gini(Exponential{1.0}) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(gini(Exponential{3.7}) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(gini(Uniform{0.0, 1.0}) == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
  // (b-a)/(3(a+b))
  CHECK(gini(Uniform{2.0, 6.0}) == doctest::Approx(4.0 / 24.0).epsilon(1e-9));
  // 1/(2*shape - 1)
  CHECK(gini(Pareto{2.0, 1.0}) == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
  CHECK(gini(Pareto{3.0, 5.0}) == doctest::Approx(0.2).epsilon(1e-9));
  // 2*Phi(sd/sqrt(2)) - 1
  CHECK(gini(Lognormal{0.0, 1.0}) ==
        doctest::Approx(2.0 * phi(1.0 / std::sqrt(2.0)) - 1.0).epsilon(1e-9));

  CHECK(bonferroni(Uniform{0.0, 1.0}) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(zenga_index(Uniform{0.0, 1.0}) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-9));
  CHECK(gini_generalized(Exponential{2.0}, 2.0) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-9));

  for (double idx : {gini(Degenerate{4.0}), bonferroni(Degenerate{4.0}),
                     zenga_index(Degenerate{4.0}),
                     gini_generalized(Degenerate{4.0}, 3.0)}) {
    CHECK(std::abs(idx) < 1e-12);
  }
}

TEST_CASE("generalized gini at k=1 is the gini") {
  for (const Distribution& d :
       {Distribution(Uniform{1.0, 5.0}), Distribution(Exponential{0.7}),
        Distribution(Pareto{2.5, 2.0}), Distribution(Lognormal{0.1, 0.6})}) {
    CHECK(gini_generalized(d, 1.0) == doctest::Approx(gini(d)).epsilon(1e-8));
  }
  for (std::uint64_t seed : {11u, 12u, 13u}) {
    Distribution s = random_sample(seed, 200, seed % 2 == 0);
    // identical closed forms on both routes, so equality is exact
    CHECK(gini_generalized(s, 1.0) == doctest::Approx(gini(s)).epsilon(1e-13));
  }
}

TEST_CASE("discrete gini agrees with the pairwise reference") {
  for (std::uint64_t seed : {1u, 2u, 3u, 4u}) {
    for (bool weighted : {false, true}) {
      EmpiricalSample s = random_sample(seed * 17 + weighted, 250, weighted);
      Distribution d = s;
      double reference = pairwise_gini(s.values(), s.weights());
      CHECK(gini(d) == doctest::Approx(reference).epsilon(1e-11));
      CHECK(gini_from_curve(d) == doctest::Approx(reference).epsilon(1e-11));
    }
  }
  // ties must not break the cumulative-weight form
  EmpiricalSample tied({2.0, 2.0, 2.0, 5.0, 5.0}, {1.0, 2.0, 1.0, 3.0, 1.0});
  CHECK(gini(Distribution(tied)) ==
        doctest::Approx(pairwise_gini(tied.values(), tied.weights()))
            .epsilon(1e-13));
}

TEST_CASE("curve route and discrete route split where they should") {
  // bonferroni's classical estimator differs from the area under the
  // piecewise-linear share curve by design
  Distribution s = EmpiricalSample({1.0, 3.0});
  CHECK(bonferroni(s) == doctest::Approx(0.5).epsilon(1e-14));
  double area = bonferroni_from_curve(s);
  CHECK(area == doctest::Approx(1.0 - (0.25 + 0.75 - 0.5 * std::log(2.0)))
                    .epsilon(1e-12));
  CHECK(bonferroni(s) - area > 0.1);

  // weighted input falls back to the curve route
  Distribution sw = EmpiricalSample({1.0, 3.0}, {1.0, 2.0});
  CHECK(bonferroni(sw) == doctest::Approx(bonferroni_from_curve(sw)).epsilon(1e-13));

  // gini has no such split
  Distribution g = random_sample(99, 80, true);
  CHECK(gini(g) == doctest::Approx(gini_from_curve(g)).epsilon(1e-12));
}

TEST_CASE("curve invariants hold on a fine grid") {
  std::vector<Distribution> ds = {
      Uniform{0.0, 1.0}, Exponential{1.7}, Pareto{2.5, 1.0},
      Lognormal{0.3, 0.8}, random_sample(42, 100, true)};
  for (const Distribution& d : ds) {
    CAPTURE(d.describe());
    std::vector<double> grid = open_uniform_grid(400);
    std::vector<double> lor(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      Rank r = Rank::from_p(grid[i]);
      LorenzPair l = lorenz_pair(d, r);
      lor[i] = l.value;
      REQUIRE(l.value >= 0.0);
      REQUIRE(l.value <= grid[i] + 1e-14);
      REQUIRE(l.complement >= 0.0);

      double u = uniformity_ratio(d, r);
      double z = zenga_inequality_curve(d, r);
      REQUIRE(u >= -1e-14);
      REQUIRE(u <= 1.0 + 1e-14);
      CHECK(z == doctest::Approx(1.0 - u).epsilon(1e-12));

      double b = bonferroni_curve(d, r);
      REQUIRE(b >= -1e-14);
      REQUIRE(b <= 1.0 + 1e-14);

      // the share ratio determines the lorenz value and vice versa
      double rebuilt = u * grid[i] / (1.0 - grid[i] + grid[i] * u);
      CHECK(std::abs(l.value - rebuilt) < 1e-10);
    }
    for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
      CHECK(lor[i + 1] - 2.0 * lor[i] + lor[i - 1] >= -1e-12);
    }
  }
}

TEST_CASE("indices are scale invariant and bounded") {
  std::vector<Distribution> ds = {Exponential{1.0}, Pareto{2.0, 1.0},
                                  Lognormal{0.0, 0.5},
                                  random_sample(7, 60, true)};
  for (const Distribution& d : ds) {
    CAPTURE(d.describe());
    IndexReport base = indices(d, {1.0, 2.0, 5.0});
    CHECK(base.mean == doctest::Approx(d.mean()).epsilon(1e-12));
    for (double c : {0.1, 10.0}) {
      IndexReport scaled = indices(scale(d, c), {1.0, 2.0, 5.0});
      CHECK(scaled.gini == doctest::Approx(base.gini).epsilon(1e-10));
      CHECK(scaled.bonferroni ==
            doctest::Approx(base.bonferroni).epsilon(1e-10));
      CHECK(scaled.zenga == doctest::Approx(base.zenga).epsilon(1e-10));
      for (double k : {1.0, 2.0, 5.0}) {
        CHECK(scaled.gini_k.at(k) ==
              doctest::Approx(base.gini_k.at(k)).epsilon(1e-10));
      }
      CHECK(scaled.mean == doctest::Approx(c * base.mean).epsilon(1e-12));
    }
    // orderings that hold for every distribution
    CHECK(base.bonferroni >= base.gini - 1e-10);
    CHECK(base.zenga >= base.gini - 1e-10);
    CHECK(base.gini_k.at(2.0) >= base.gini_k.at(1.0) - 1e-10);
    CHECK(base.gini_k.at(5.0) >= base.gini_k.at(2.0) - 1e-10);
    for (double v : {base.gini, base.bonferroni, base.zenga}) {
      CHECK(v > 0.0);
      CHECK(v < 1.0);
    }
  }
}

TEST_CASE("progressive transfer lowers every index") {
  Distribution before = EmpiricalSample({1.0, 2.0, 3.0, 4.0, 10.0});
  Distribution after = EmpiricalSample({1.5, 2.0, 3.0, 4.0, 9.5});
  CHECK(gini(after) < gini(before));
  CHECK(gini_generalized(after, 2.0) < gini_generalized(before, 2.0));
  CHECK(bonferroni(after) < bonferroni(before));
  CHECK(zenga_index(after) < zenga_index(before));
  CHECK(Distribution(after).mean() == doctest::Approx(before.mean()));
}

TEST_CASE("curve grids use an open uniform lattice") {
  auto grid = open_uniform_grid(3);
  REQUIRE(grid.size() == 3);
  CHECK(grid[0] == doctest::Approx(0.25));
  CHECK(grid[1] == doctest::Approx(0.5));
  CHECK(grid[2] == doctest::Approx(0.75));

  CurveGrid g = curve_grid(Uniform{0.0, 1.0}, CurveKind::lorenz, 99);
  REQUIRE(g.points.size() == 99);
  CHECK(g.kind == CurveKind::lorenz);
  for (const CurvePoint& pt : g.points) {
    CHECK(pt.p > 0.0);
    CHECK(pt.p < 1.0);
    CHECK(pt.value == doctest::Approx(pt.p * pt.p).epsilon(1e-12));
  }
  CurveGrid z =
      curve_grid(EmpiricalSample({1.0, 3.0}), CurveKind::zenga_inequality, 9);
  CHECK(z.points[4].value == doctest::Approx(2.0 / 3.0).epsilon(1e-13));

  CHECK_THROWS_AS(open_uniform_grid(0), std::domain_error);
  CHECK_THROWS_AS(curve_grid(Uniform{0.0, 1.0}, CurveKind::lorenz, -2),
                  std::domain_error);
}

TEST_CASE("rank domain and order validation") {
  Distribution d = Exponential{1.0};
  CHECK_THROWS_AS(lorenz(d, 0.0), std::domain_error);
  CHECK_THROWS_AS(lorenz(d, 1.0), std::domain_error);
  CHECK_THROWS_AS(uniformity_ratio(d, 1.5), std::domain_error);
  CHECK_THROWS_AS(gini_generalized(d, 0.5), std::domain_error);
  CHECK_THROWS_AS(gini_generalized(d, std::nan("")), std::domain_error);
}
