#include "kruglov/gauge.hpp"

#include "kruglov/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace kruglov {

ConcaveGauge::ConcaveGauge(Kind kind, double param,
                           std::optional<StepFunction> density)
    : kind_(kind), param_(param), density_(std::move(density)) {
  if (density_) {
    cum_t_.push_back(0.0);
    cum_phi_.push_back(0.0);
    double t = 0.0, phi = 0.0;
    for (const auto& p : density_->pieces()) {
      const double v = p.val.as_double();
      if (v < 0) throw std::invalid_argument("ConcaveGauge: negative density");
      const double len = to_double(p.len);
      t += len;
      phi += len * v;
      cum_t_.push_back(t);
      cum_phi_.push_back(phi);
      dens_val_.push_back(v);
    }
  }
  validate();
}

ConcaveGauge ConcaveGauge::power(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("ConcaveGauge::power: alpha must be in (0,1]");
  }
  return ConcaveGauge(Kind::Power, alpha, std::nullopt);
}

ConcaveGauge ConcaveGauge::iter_log(double a) {
  // ln(ln(ln(a/u))) must stay positive on (0,1]; the worst case is u = 1.
  if (!(a > std::exp(std::exp(1.0)))) {
    throw std::invalid_argument("ConcaveGauge::iter_log: a must exceed e^e");
  }
  return ConcaveGauge(Kind::IterLog, a, std::nullopt);
}

ConcaveGauge ConcaveGauge::tabulated(StepFunction density) {
  return ConcaveGauge(Kind::Tabulated, 0.0, std::move(density));
}

double ConcaveGauge::operator()(double t) const {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw std::invalid_argument("ConcaveGauge: argument outside [0,1]");
  }
  if (t == 0.0) return 0.0;
  switch (kind_) {
    case Kind::Power:
      return std::pow(t, param_);
    case Kind::IterLog:
      return t * std::log(std::numbers::e / t) /
             std::log(std::log(std::log(param_ / t)));
    case Kind::Tabulated: {
      const auto it = std::upper_bound(cum_t_.begin(), cum_t_.end(), t);
      const std::size_t i = std::min<std::size_t>(it - cum_t_.begin(),
                                                  cum_t_.size() - 1) - 1;
      return cum_phi_[i] + (t - cum_t_[i]) * dens_val_[i];
    }
  }
  return 0.0;  // unreachable
}

void ConcaveGauge::validate() const {
  constexpr int kGrid = 1024;
  double prev = 0.0;
  double prev_prev = 0.0;
  for (int j = 1; j <= kGrid; ++j) {
    const double t = static_cast<double>(j) / kGrid;
    const double cur = (*this)(t);
    if (!(cur > prev)) {
      throw std::invalid_argument(
          "ConcaveGauge: not strictly increasing on the dyadic grid");
    }
    if (j >= 2) {
      // Local midpoint concavity on the uniform grid.
      if (prev < (prev_prev + cur) / 2.0 - 1e-12) {
        throw std::invalid_argument(
            "ConcaveGauge: midpoint concavity fails on the dyadic grid");
      }
    }
    prev_prev = prev;
    prev = cur;
  }
}

double ConcaveGauge::series_tail_bound(double t, unsigned K,
                                       double u_next) const {
  // Successive series arguments u_k = t^k/k! shrink by at least
  // r = t/(K+2) per step beyond u_{K+1} = u_next.
  const double r = t / (K + 2);
  switch (kind_) {
    case Kind::Power: {
      const double q = std::pow(r, param_);
      return std::pow(u_next, param_) / (1.0 - q);
    }
    case Kind::Tabulated: {
      // phi(u) <= D u with D the density sup.
      const double d = *std::max_element(dens_val_.begin(), dens_val_.end());
      return d * u_next / (1.0 - r);
    }
    case Kind::IterLog: {
      // phi(u) <= u (1 + ln(1/u)) / ln 2 on (0,1], and u (1 + ln(1/u)) is
      // increasing there, so bound each term via u_k <= u_next r^j.
      const double lu = std::log(1.0 / u_next);
      const double lr = std::log(1.0 / r);
      const double sum =
          u_next * ((1.0 + lu) / (1.0 - r) + r * lr / ((1.0 - r) * (1.0 - r)));
      return sum / std::numbers::ln2;
    }
  }
  return std::numeric_limits<double>::infinity();  // unreachable
}

std::string ConcaveGauge::describe() const {
  switch (kind_) {
    case Kind::Power:
      return "power:" + std::to_string(param_);
    case Kind::IterLog:
      return "paper-psi:" + std::to_string(param_);
    case Kind::Tabulated:
      return "tabulated[" + std::to_string(dens_val_.size()) + " pieces]";
  }
  return "?";
}

OrliczYoungFunction::OrliczYoungFunction(double p) : p_(p) {
  if (!(p > 0.0)) throw std::invalid_argument("OrliczYoungFunction: p must be > 0");
  if (p < 1.0) {
    // Tangency from the origin: M(u0) = u0 M'(u0).  In w = u0^p this reads
    // 1 - e^{-w} = p w, which has a unique positive root for p < 1.
    double lo = 1e-9, hi = 2.0 / p;
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      if (1.0 - std::exp(-mid) > p * mid) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    const double w = 0.5 * (lo + hi);
    u0_ = std::pow(w, 1.0 / p);
    slope_ = std::expm1(w) / u0_;
  }
}

double OrliczYoungFunction::operator()(double u) const {
  u = std::fabs(u);
  if (u == 0.0) return 0.0;
  if (u <= u0_) return slope_ * u;
  return std::expm1(std::pow(u, p_));
}

double OrliczYoungFunction::log_value(double u) const {
  u = std::fabs(u);
  if (u <= 0.0) throw std::domain_error("OrliczYoungFunction::log_value: u must be > 0");
  if (u <= u0_) return std::log(slope_) + std::log(u);
  const double z = std::pow(u, p_);
  if (z > 36.0) return z + std::log1p(-std::exp(-z));
  return std::log(std::expm1(z));
}

CriterionResult kruglov_criterion(const ConcaveGauge& phi, unsigned grid_size,
                                  double series_tol, double value_cap) {
  if (grid_size < 64) throw std::invalid_argument("kruglov_criterion: grid_size < 64");
  if (!(series_tol > 0.0)) throw std::invalid_argument("kruglov_criterion: series_tol <= 0");

  std::vector<double> ts;
  ts.reserve(grid_size + 40);
  for (unsigned j = 1; j <= grid_size; ++j) {
    ts.push_back(static_cast<double>(j) / grid_size);
  }
  for (int k = 1; k <= 40; ++k) ts.push_back(std::ldexp(1.0, -k));

  CriterionResult res{0.0, 0.0, false};
  for (double t : ts) {
    const double phi_t = phi(t);
    double sum = 0.0;
    double u = t;  // u_k = t^k / k!, starting at k = 1
    for (unsigned k = 1;; ++k) {
      sum += phi(std::min(u, 1.0));
      const double u_next = u * t / (k + 1);
      const double tail = phi.series_tail_bound(t, k, u_next);
      if (tail <= series_tol * sum) {
        sum += tail;
        break;
      }
      if (sum / phi_t > value_cap) break;
      u = u_next;
    }
    const double ratio = sum / phi_t;
    if (ratio > res.value) {
      res.value = ratio;
      res.argmax_t = t;
    }
    if (ratio > value_cap) {
      res.diverged = true;
      res.value = std::numeric_limits<double>::infinity();
      return res;
    }
  }
  return res;
}

double dyadic_gauge_sum(const ConcaveGauge& phi, unsigned N) {
  if (N == 0) throw std::invalid_argument("dyadic_gauge_sum: N must be >= 1");
  double sum = 0.0;
  for (unsigned k = 1; k <= N; ++k) sum += phi(std::ldexp(1.0, -static_cast<int>(k)));
  return sum;
}

double log_in_lorentz(const ConcaveGauge& phi, unsigned N) {
  if (N == 0) throw std::invalid_argument("log_in_lorentz: N must be >= 1");
  double sum = 0.0;
  for (unsigned k = 1; k <= N; ++k) {
    const double hi = phi(std::ldexp(1.0, 1 - static_cast<int>(k)));
    const double lo = phi(std::ldexp(1.0, -static_cast<int>(k)));
    sum += (k + 1) * (hi - lo);
  }
  return sum;
}

ConcaveGauge build_epsilon_gauge(const Rat& eps, unsigned n_max,
                                 const Rat& tail_tol, const Rat& prune_theta) {
  if (!(eps > 0 && eps < 1)) {
    throw std::invalid_argument("build_epsilon_gauge: eps must be in (0,1)");
  }
  if (n_max == 0) throw std::invalid_argument("build_epsilon_gauge: n_max must be >= 1");
  return build_epsilon_gauge(eps, n_max,
                             kruglov_iterates(n_max, tail_tol, prune_theta));
}

ConcaveGauge build_epsilon_gauge(
    const Rat& eps, unsigned n_max,
    const std::vector<DiscreteDistribution>& iterates) {
  if (!(eps > 0 && eps < 1)) {
    throw std::invalid_argument("build_epsilon_gauge: eps must be in (0,1)");
  }
  if (n_max == 0 || n_max > iterates.size()) {
    throw std::invalid_argument("build_epsilon_gauge: bad n_max");
  }

  StepFunction density = StepFunction::constant(Value(1));
  Rat power = 1;
  for (unsigned n = 1; n <= n_max; ++n) {
    power *= eps;
    StepFunction h = quantile(collapse_tail_to_zero(iterates[n - 1]));
    density = pointwise_sum(density, scale_function(h, Value(power)));
  }
  return ConcaveGauge::tabulated(std::move(density));
}

ConcaveGauge parse_gauge(const std::string& spec) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto colon = spec.find(':', start);
    parts.push_back(spec.substr(start, colon - start));
    if (colon == std::string::npos) break;
    start = colon + 1;
  }
  try {
    if (parts[0] == "power" && parts.size() == 2) {
      return ConcaveGauge::power(std::stod(parts[1]));
    }
    if (parts[0] == "paper-psi" && parts.size() <= 2) {
      return parts.size() == 2 ? ConcaveGauge::iter_log(std::stod(parts[1]))
                               : ConcaveGauge::iter_log();
    }
    if (parts[0] == "eps-family" && parts.size() == 3) {
      const Rat eps = rat_from_decimal(parts[1]);
      const unsigned n_max = static_cast<unsigned>(std::stoul(parts[2]));
      return build_epsilon_gauge(eps, n_max, Rat(Int(1), Int("1000000000000")),
                                 Rat(Int(1), Int("1000000000000000")));
    }
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception& e) {
    throw std::invalid_argument("bad gauge spec '" + spec + "': " + e.what());
  }
  throw std::invalid_argument(
      "bad gauge spec '" + spec +
      "' (expected power:alpha | paper-psi[:a] | eps-family:eps:n_max)");
}

}  // namespace kruglov
