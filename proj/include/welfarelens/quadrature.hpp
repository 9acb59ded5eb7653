#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>

// One-dimensional quadrature over sub-intervals of [0,1], tuned for the
// integrands that show up in inequality analysis: smooth in the interior,
// possibly log-singular at p=0, possibly steep or algebraically singular
// as p->1.
//
// Two schemes share one interface:
//   * adaptive panels with an embedded Gauss(7)/Kronrod(15) pair for
//     integrands that are well behaved at the interval ends;
//   * a tanh-sinh (double-exponential) transformation that clusters nodes
//     exponentially toward both endpoints for improper behavior.
// Neither scheme ever evaluates the integrand at p=0 or p=1 exactly; the
// transformed nodes bottom out around 1e-276 before hitting an endpoint.

namespace welfarelens {

// A population share p in (0,1) together with its complement 1-p.
// The complement is tracked separately because nodes placed within an ulp
// of 1 would otherwise lose all relative precision in 1-p, which is the
// quantity upper-tail formulas actually consume.
struct Rank {
  double p;
  double complement;

  static Rank from_p(double p) { return {p, 1.0 - p}; }
  static Rank from_complement(double q) { return {1.0 - q, q}; }
};

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long evaluations = 0;
};

inline constexpr double kDefaultRelTol = 1e-10;
inline constexpr double kQuadAbsFloor = 1e-14;
inline constexpr long kDefaultEvalBudget = 1000000;

// Callable on (0,1) plus endpoint hints. The hints steer interval routing:
// an integrand flagged as singular or non-smooth at an endpoint is handed to
// the double-exponential scheme whenever the requested interval touches that
// endpoint.
class Integrand {
 public:
  template <class F,
            std::enable_if_t<std::is_invocable_r_v<double, F, Rank>, int> = 0>
  Integrand(F fn, bool log_singular_at_zero = false,
            bool nonsmooth_at_one = false)
      : eval_(std::move(fn)),
        log_singular_at_zero_(log_singular_at_zero),
        nonsmooth_at_one_(nonsmooth_at_one) {}

  template <class F,
            std::enable_if_t<std::is_invocable_r_v<double, F, double> &&
                                 !std::is_invocable_r_v<double, F, Rank>,
                             int> = 0>
  Integrand(F fn, bool log_singular_at_zero = false,
            bool nonsmooth_at_one = false)
      : eval_([g = std::move(fn)](Rank r) { return g(r.p); }),
        log_singular_at_zero_(log_singular_at_zero),
        nonsmooth_at_one_(nonsmooth_at_one) {}

  double operator()(Rank r) const { return eval_(r); }
  bool log_singular_at_zero() const { return log_singular_at_zero_; }
  bool nonsmooth_at_one() const { return nonsmooth_at_one_; }

 private:
  std::function<double(Rank)> eval_;
  bool log_singular_at_zero_;
  bool nonsmooth_at_one_;
};

// The integrand returned NaN or an infinity at an interior node.
class IntegrandError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Tolerance not reached within the evaluation budget. The best partial
// result is attached so callers can degrade gracefully.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& msg, QuadResult partial)
      : std::runtime_error(msg), partial_(partial) {}
  const QuadResult& partial() const noexcept { return partial_; }

 private:
  QuadResult partial_;
};

// The integral grows without bound toward an endpoint (e.g. 1/p at 0).
class DivergentIntegral : public QuadratureError {
 public:
  using QuadratureError::QuadratureError;
};

// Integral of f over [lo,hi], 0 <= lo <= hi <= 1. Aims for
// |result - exact| <= rel_tol*|result| + 1e-14.
QuadResult integrate(const Integrand& f, double lo, double hi,
                     double rel_tol = kDefaultRelTol,
                     long max_evals = kDefaultEvalBudget);

// Integral of f over (0,1) for integrands with endpoint singularities that
// are integrable (logarithmic or algebraic with exponent > -1). Divergent
// behavior is detected and reported instead of returning garbage.
QuadResult integrate_improper_at_zero(const Integrand& f,
                                      double rel_tol = kDefaultRelTol,
                                      long max_evals = kDefaultEvalBudget);

}  // namespace welfarelens
