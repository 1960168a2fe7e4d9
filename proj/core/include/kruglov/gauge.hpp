#pragma once

#include "kruglov/distribution.hpp"
#include "kruglov/exact.hpp"
#include "kruglov/step_function.hpp"

#include <memory>
#include <optional>
#include <string>

namespace kruglov {

// A quasi-concave gauge on [0,1] with phi(0) = 0, validated at construction
// to be strictly increasing and midpoint-concave (to 1e-12) on a 1024-point
// dyadic grid.
class ConcaveGauge {
 public:
  enum class Kind { Power, IterLog, Tabulated };

  // t^alpha, alpha in (0,1].
  static ConcaveGauge power(double alpha);
  // u * ln(e/u) / ln(ln(ln(a/u))), a > e^e (default e^{e^2}).
  static ConcaveGauge iter_log(double a = kDefaultIterLogA);
  // Integral of a nonnegative step-function density.
  static ConcaveGauge tabulated(StepFunction density);

  Kind kind() const { return kind_; }
  double param() const { return param_; }
  const StepFunction* density() const {
    return density_ ? &*density_ : nullptr;
  }

  double operator()(double t) const;

  // Certified upper bound on sum_{k>K} phi(t^k / k!) given u_next =
  // t^{K+1}/(K+1)!; the bound is kind-specific but always sound.
  double series_tail_bound(double t, unsigned K, double u_next) const;

  std::string describe() const;

  static constexpr double kDefaultIterLogA = 1618.1779919126539;  // e^{e^2}

 private:
  ConcaveGauge(Kind kind, double param, std::optional<StepFunction> density);
  void validate() const;

  Kind kind_;
  double param_ = 0.0;
  std::optional<StepFunction> density_;
  // Fast evaluation of the tabulated integral: breakpoints, cumulative
  // integrals, and piece values as doubles.
  std::vector<double> cum_t_, cum_phi_, dens_val_;
};

// e^{u^p} - 1 for p >= 1; for p < 1, the greatest convex minorant (linear
// from the origin up to the tangency point u0 with M(u0) = u0 M'(u0)).
class OrliczYoungFunction {
 public:
  explicit OrliczYoungFunction(double p);

  double p() const { return p_; }
  double operator()(double u) const;
  double log_value(double u) const;  // ln(M(u)), u > 0, stable for huge u^p
  double linear_cutoff() const { return u0_; }

 private:
  double p_;
  double u0_ = 0.0;    // tangency point (0 when p >= 1)
  double slope_ = 0.0; // chord slope on [0, u0]
};

// Supremum over a grid in (0,1] of (1/phi(t)) sum_{k>=1} phi(t^k/k!), each
// series truncated once the certified tail bound is below series_tol
// relative to the partial sum.  Divergence (running max past value_cap) is
// reported, not thrown.
struct CriterionResult {
  double value;
  double argmax_t;
  bool diverged;
};
CriterionResult kruglov_criterion(const ConcaveGauge& phi, unsigned grid_size,
                                  double series_tol,
                                  double value_cap = 1e6);

// Partial sum sum_{k=1}^N phi(2^{-k}).
double dyadic_gauge_sum(const ConcaveGauge& phi, unsigned N);

// Partial sum sum_{k=1}^N (k+1) (phi(2^{1-k}) - phi(2^{-k})).
double log_in_lorentz(const ConcaveGauge& phi, unsigned N);

// Tabulated gauge whose density is sum_{n=0}^{n_max} eps^n h_n where h_0 = 1
// and h_n is the decreasing rearrangement of the n-fold compound-sum iterate.
// The dropped series remainder has L1 mass <= eps^{n_max+1}/(1-eps).
ConcaveGauge build_epsilon_gauge(const Rat& eps, unsigned n_max,
                                 const Rat& tail_tol,
                                 const Rat& prune_theta);

// Same construction reusing precomputed compound-sum iterates
// (iterates[k-1] = the k-fold iterate); n_max <= iterates.size().
ConcaveGauge build_epsilon_gauge(
    const Rat& eps, unsigned n_max,
    const std::vector<DiscreteDistribution>& iterates);

// Parses "power:alpha", "paper-psi:a" (param optional), and
// "eps-family:eps:n_max".
ConcaveGauge parse_gauge(const std::string& spec);

}  // namespace kruglov
