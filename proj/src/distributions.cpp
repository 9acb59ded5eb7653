#include "welfarelens/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

namespace welfarelens {
namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::domain_error(msg);
}

bool finite(double x) { return std::isfinite(x); }

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

}  // namespace

// ---------------------------------------------------------------------------
// EmpiricalSample

EmpiricalSample::EmpiricalSample(std::vector<double> values)
    : values_(std::move(values)),
      weights_(values_.size(), 1.0) {
  finish_construction();
}

EmpiricalSample::EmpiricalSample(std::vector<double> values,
                                 std::vector<double> weights)
    : values_(std::move(values)), weights_(std::move(weights)) {
  require(values_.size() == weights_.size(),
          "sample values and weights must have equal length");
  finish_construction();
}

void EmpiricalSample::finish_construction() {
  require(!values_.empty(), "sample must contain at least one observation");
  for (double x : values_) {
    require(finite(x) && x >= 0.0, "sample values must be finite and nonnegative");
  }
  for (double w : weights_) {
    require(finite(w) && w > 0.0, "sample weights must be finite and positive");
  }

  std::vector<std::size_t> order(values_.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [this](std::size_t a, std::size_t b) {
    return values_[a] < values_[b];
  });
  std::vector<double> v(values_.size()), w(values_.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    v[i] = values_[order[i]];
    w[i] = weights_[order[i]];
  }
  values_ = std::move(v);
  weights_ = std::move(w);

  require(values_.back() > 0.0, "sample must contain a positive value");

  cum_weights_.resize(values_.size());
  cum_values_.resize(values_.size());
  tail_values_.resize(values_.size());
  double cw = 0.0, cv = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    cw += weights_[i];
    cv += weights_[i] * values_[i];
    cum_weights_[i] = cw;
    cum_values_[i] = cv;
  }
  tail_weights_.resize(values_.size());
  double tail = 0.0, tail_w = 0.0;
  for (std::size_t i = values_.size(); i-- > 0;) {
    tail_values_[i] = tail;  // mass strictly above observation i
    tail_weights_[i] = tail_w;
    tail += weights_[i] * values_[i];
    tail_w += weights_[i];
  }
  mean_ = cum_values_.back() / cum_weights_.back();
  uniform_weights_ =
      std::all_of(weights_.begin(), weights_.end(),
                  [this](double x) { return x == weights_.front(); });
}

double EmpiricalSample::quantile(Rank r) const {
  require(r.p > 0.0 && r.p < 1.0, "quantile requires p in (0,1)");
  const double target = r.p * total_weight();
  auto it = std::lower_bound(cum_weights_.begin(), cum_weights_.end(), target);
  if (it == cum_weights_.end()) --it;
  return values_[static_cast<std::size_t>(it - cum_weights_.begin())];
}

double EmpiricalSample::cdf(double x) const {
  auto it = std::upper_bound(values_.begin(), values_.end(), x);
  if (it == values_.begin()) return 0.0;
  return cum_weights_[static_cast<std::size_t>(it - values_.begin()) - 1] /
         total_weight();
}

// ---------------------------------------------------------------------------
// Distribution

Distribution::Distribution(Node node) : node_(std::move(node)), mean_(0.0) {
  struct Validate {
    double operator()(const Degenerate& d) const {
      require(finite(d.value) && d.value > 0.0,
              "degenerate value must be finite and positive");
      return d.value;
    }
    double operator()(const Uniform& d) const {
      require(finite(d.lo) && finite(d.hi) && d.lo >= 0.0 && d.hi > d.lo,
              "uniform support must satisfy 0 <= lo < hi");
      return 0.5 * (d.lo + d.hi);
    }
    double operator()(const Exponential& d) const {
      require(finite(d.rate) && d.rate > 0.0, "exponential rate must be positive");
      return 1.0 / d.rate;
    }
    double operator()(const Pareto& d) const {
      require(finite(d.shape) && finite(d.x_min) && d.x_min > 0.0,
              "pareto x_min must be positive");
      require(d.shape > 1.0, "pareto shape must exceed 1 (the mean is infinite otherwise)");
      return d.shape * d.x_min / (d.shape - 1.0);
    }
    double operator()(const Lognormal& d) const {
      require(finite(d.log_mean) && finite(d.log_sd) && d.log_sd > 0.0,
              "lognormal log_sd must be positive");
      return std::exp(d.log_mean + 0.5 * d.log_sd * d.log_sd);
    }
    double operator()(const EmpiricalSample& d) const { return d.mean(); }
  };
  mean_ = std::visit(Validate{}, node_);
  require(finite(mean_) && mean_ > 0.0, "distribution mean must be finite and positive");
}

Distribution::Distribution(Degenerate d) : Distribution(Node(d)) {}
Distribution::Distribution(Uniform d) : Distribution(Node(d)) {}
Distribution::Distribution(Exponential d) : Distribution(Node(d)) {}
Distribution::Distribution(Pareto d) : Distribution(Node(d)) {}
Distribution::Distribution(Lognormal d) : Distribution(Node(d)) {}
Distribution::Distribution(EmpiricalSample d) : Distribution(Node(std::move(d))) {}

double Distribution::quantile(Rank r) const {
  require(r.p > 0.0 && r.p < 1.0, "quantile requires p in (0,1)");
  struct Visit {
    Rank r;
    double operator()(const Degenerate& d) const { return d.value; }
    double operator()(const Uniform& d) const {
      return d.lo + (d.hi - d.lo) * r.p;
    }
    double operator()(const Exponential& d) const {
      // -log(1-p)/rate; pick the argument with full relative precision
      return (r.p < 0.5 ? -std::log1p(-r.p) : -std::log(r.complement)) / d.rate;
    }
    double operator()(const Pareto& d) const {
      return d.x_min * std::pow(r.complement, -1.0 / d.shape);
    }
    double operator()(const Lognormal& d) const {
      return std::exp(d.log_mean + d.log_sd * detail::normal_quantile(r));
    }
    double operator()(const EmpiricalSample& d) const { return d.quantile(r); }
  };
  return std::visit(Visit{r}, node_);
}

double Distribution::cdf(double x) const {
  require(finite(x), "cdf requires a finite argument");
  struct Visit {
    double x;
    double operator()(const Degenerate& d) const { return x >= d.value ? 1.0 : 0.0; }
    double operator()(const Uniform& d) const {
      if (x <= d.lo) return 0.0;
      if (x >= d.hi) return 1.0;
      return (x - d.lo) / (d.hi - d.lo);
    }
    double operator()(const Exponential& d) const {
      return x <= 0.0 ? 0.0 : -std::expm1(-d.rate * x);
    }
    double operator()(const Pareto& d) const {
      return x <= d.x_min ? 0.0 : 1.0 - std::pow(d.x_min / x, d.shape);
    }
    double operator()(const Lognormal& d) const {
      if (x <= 0.0) return 0.0;
      return detail::normal_cdf((std::log(x) - d.log_mean) / d.log_sd);
    }
    double operator()(const EmpiricalSample& d) const { return d.cdf(x); }
  };
  return std::visit(Visit{x}, node_);
}

std::optional<double> Distribution::support_max() const {
  struct Visit {
    std::optional<double> operator()(const Degenerate& d) const { return d.value; }
    std::optional<double> operator()(const Uniform& d) const { return d.hi; }
    std::optional<double> operator()(const Exponential&) const { return std::nullopt; }
    std::optional<double> operator()(const Pareto&) const { return std::nullopt; }
    std::optional<double> operator()(const Lognormal&) const { return std::nullopt; }
    std::optional<double> operator()(const EmpiricalSample& d) const {
      return d.max_value();
    }
  };
  return std::visit(Visit{}, node_);
}

std::string Distribution::describe() const {
  struct Visit {
    std::string operator()(const Degenerate& d) const {
      return "degenerate(" + fmt(d.value) + ")";
    }
    std::string operator()(const Uniform& d) const {
      return "uniform(" + fmt(d.lo) + "," + fmt(d.hi) + ")";
    }
    std::string operator()(const Exponential& d) const {
      return "exponential(" + fmt(d.rate) + ")";
    }
    std::string operator()(const Pareto& d) const {
      return "pareto(" + fmt(d.shape) + "," + fmt(d.x_min) + ")";
    }
    std::string operator()(const Lognormal& d) const {
      return "lognormal(" + fmt(d.log_mean) + "," + fmt(d.log_sd) + ")";
    }
    std::string operator()(const EmpiricalSample& d) const {
      return "empirical(n=" + std::to_string(d.size()) + ")";
    }
  };
  return std::visit(Visit{}, node_);
}

Distribution scale(const Distribution& d, double factor) {
  require(finite(factor) && factor > 0.0, "scale factor must be positive");
  struct Visit {
    double c;
    Distribution operator()(const Degenerate& d) const {
      return Degenerate{d.value * c};
    }
    Distribution operator()(const Uniform& d) const {
      return Uniform{d.lo * c, d.hi * c};
    }
    Distribution operator()(const Exponential& d) const {
      return Exponential{d.rate / c};
    }
    Distribution operator()(const Pareto& d) const {
      return Pareto{d.shape, d.x_min * c};
    }
    Distribution operator()(const Lognormal& d) const {
      return Lognormal{d.log_mean + std::log(c), d.log_sd};
    }
    Distribution operator()(const EmpiricalSample& d) const {
      std::vector<double> v = d.values();
      for (double& x : v) x *= c;
      return EmpiricalSample(std::move(v), d.weights());
    }
  };
  return std::visit(Visit{factor}, d.node());
}

// ---------------------------------------------------------------------------
// Standard normal helpers

namespace detail {

double normal_cdf(double z) {
  return 0.5 * std::erfc(-z / std::sqrt(2.0));
}

namespace {

// Rational approximation for the inverse normal CDF (central and tail
// branches), then one Halley refinement against erfc.
double normal_quantile_lower_half(double p) {
  static const double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                              -2.759285104469687e+02, 1.383577518672690e+02,
                              -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                              -1.556989798598866e+02, 6.680131188771972e+01,
                              -1.328068155288572e+01};
  static const double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                              -2.400758277161838e+00, -2.549732539343734e+00,
                              4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                              2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) *
        q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  }

  // Halley step: e = Phi(x) - p, u = e / phi(x)
  const double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
  const double u = e * std::sqrt(2.0 * 3.141592653589793238462643) *
                   std::exp(0.5 * x * x);
  return x - u / (1.0 + 0.5 * x * u);
}

}  // namespace

double normal_quantile(Rank r) {
  if (!(r.p > 0.0 && r.p < 1.0)) {
    throw std::domain_error("normal quantile requires p in (0,1)");
  }
  if (r.p <= 0.5) return normal_quantile_lower_half(r.p);
  return -normal_quantile_lower_half(r.complement);
}

double normal_quantile(double p) { return normal_quantile(Rank::from_p(p)); }

}  // namespace detail

}  // namespace welfarelens
