#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "welfarelens/quadrature.hpp"

// Income distributions: five parametric families plus weighted samples.
// All values are immutable after construction and safe to share across
// threads. Supports are nonnegative and every distribution has a finite,
// strictly positive mean; constructors reject parameters that break this.

namespace welfarelens {

struct Degenerate {
  double value;  // > 0
};

struct Uniform {
  double lo;  // >= 0
  double hi;  // > lo
};

struct Exponential {
  double rate;  // > 0
};

struct Pareto {
  double shape;  // > 1, otherwise the mean is infinite
  double x_min;  // > 0
};

struct Lognormal {
  double log_mean;
  double log_sd;  // > 0
};

// Weighted observations, sorted ascending by value on construction.
// Values must be finite and nonnegative with at least one strictly positive;
// weights must be finite and strictly positive.
class EmpiricalSample {
 public:
  explicit EmpiricalSample(std::vector<double> values);
  EmpiricalSample(std::vector<double> values, std::vector<double> weights);

  std::size_t size() const { return values_.size(); }
  const std::vector<double>& values() const { return values_; }
  const std::vector<double>& weights() const { return weights_; }

  // c_i = w_1 + ... + w_i and S_i = w_1 x_1 + ... + w_i x_i, 1-based via
  // index i-1; tail_values()[i] and tail_weights()[i] hold the mass and
  // weight strictly above observation i, summed from the top so upper-tail
  // quantities keep full precision.
  const std::vector<double>& cum_weights() const { return cum_weights_; }
  const std::vector<double>& cum_values() const { return cum_values_; }
  const std::vector<double>& tail_values() const { return tail_values_; }
  const std::vector<double>& tail_weights() const { return tail_weights_; }

  double total_weight() const { return cum_weights_.back(); }
  double total_value() const { return cum_values_.back(); }
  double mean() const { return mean_; }
  double min_value() const { return values_.front(); }
  double max_value() const { return values_.back(); }
  bool uniform_weights() const { return uniform_weights_; }

  // Left-continuous generalized inverse of the weighted step CDF: the value
  // x_(i) on the cumulative-share interval (c_{i-1}/W, c_i/W].
  double quantile(Rank r) const;
  double cdf(double x) const;

 private:
  void finish_construction();

  std::vector<double> values_;
  std::vector<double> weights_;
  std::vector<double> cum_weights_;
  std::vector<double> cum_values_;
  std::vector<double> tail_values_;
  std::vector<double> tail_weights_;
  double mean_ = 0.0;
  bool uniform_weights_ = true;
};

class Distribution {
 public:
  using Node = std::variant<Degenerate, Uniform, Exponential, Pareto,
                            Lognormal, EmpiricalSample>;

  Distribution(Degenerate d);
  Distribution(Uniform d);
  Distribution(Exponential d);
  Distribution(Pareto d);
  Distribution(Lognormal d);
  Distribution(EmpiricalSample d);

  double quantile(double p) const { return quantile(Rank::from_p(p)); }
  double quantile(Rank r) const;
  double cdf(double x) const;
  double mean() const { return mean_; }

  // Largest support point for bounded-support kinds, empty otherwise.
  std::optional<double> support_max() const;

  const Node& node() const { return node_; }
  const EmpiricalSample* sample() const {
    return std::get_if<EmpiricalSample>(&node_);
  }
  std::string describe() const;

 private:
  explicit Distribution(Node node);

  Node node_;
  double mean_;
};

// Same family, every income multiplied by factor > 0.
Distribution scale(const Distribution& d, double factor);

namespace detail {

// Inverse standard normal CDF. Rational approximation polished by one
// Halley step; relative error is far below the 1e-9 contract.
double normal_quantile(double p);
double normal_quantile(Rank r);

double normal_cdf(double z);

}  // namespace detail

}  // namespace welfarelens
