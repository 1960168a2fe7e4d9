#include "kruglov/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace kruglov {

namespace {

// Double-precision view of x*: cumulative breakpoints, cumulative integrals,
// and piece values, so the partial integral at an arbitrary t is O(log n).
struct RearrangedView {
  std::vector<double> brk;    // brk[0] = 0, brk[n] = 1
  std::vector<double> cum;    // cum[i] = integral over [0, brk[i]]
  std::vector<double> val;    // val[i] = value on (brk[i], brk[i+1]]

  explicit RearrangedView(const StepFunction& star) {
    brk.push_back(0.0);
    cum.push_back(0.0);
    double t = 0.0, integral = 0.0;
    for (const auto& p : star.pieces()) {
      const double v = p.val.as_double();
      const double len = to_double(p.len);
      t += len;
      integral += len * v;
      brk.push_back(t);
      cum.push_back(integral);
      val.push_back(v);
    }
  }

  double integral_to(double t) const {
    const auto it = std::upper_bound(brk.begin(), brk.end(), t);
    const std::size_t i =
        std::min<std::size_t>(it - brk.begin(), brk.size() - 1) - 1;
    return cum[i] + (t - brk[i]) * val[i];
  }
};

}  // namespace

Value norm_l1(const StepFunction& x) {
  Value sum(0);
  for (const auto& p : x.pieces()) sum = sum + Value(p.len) * p.val.abs();
  return sum;
}

Value norm_linf(const StepFunction& x) {
  Value best(0);
  for (const auto& p : x.pieces()) {
    Value a = p.val.abs();
    if (best < a) best = a;
  }
  return best;
}

double norm_lorentz(const StepFunction& x, const ConcaveGauge& phi) {
  const StepFunction star = rearrange(x);
  double sum = 0.0;
  Rat t = 0;
  double phi_left = 0.0;
  for (const auto& p : star.pieces()) {
    t += p.len;
    const double phi_right = phi(std::min(to_double(t), 1.0));
    sum += p.val.as_double() * (phi_right - phi_left);
    phi_left = phi_right;
  }
  return sum;
}

double norm_marcinkiewicz(const StepFunction& x, const ConcaveGauge& psi,
                          double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("norm_marcinkiewicz: tol <= 0");
  const StepFunction star = rearrange(x);
  const RearrangedView view(star);
  if (*std::max_element(view.val.begin(), view.val.end()) == 0.0) return 0.0;

  const auto ratio = [&](double t) { return view.integral_to(t) / psi(t); };

  double best = ratio(1.0);
  constexpr int kGridPerPiece = 64;
  for (std::size_t i = 0; i + 1 < view.brk.size(); ++i) {
    const double a = view.brk[i];
    const double b = view.brk[i + 1];
    // Piece-interior grid (endpoints included via j = kGridPerPiece, except
    // t = 0 which is excluded by j >= 1).
    double grid_best = -1.0, grid_best_t = b;
    for (int j = 1; j <= kGridPerPiece; ++j) {
      const double t = a + (b - a) * j / kGridPerPiece;
      const double r = ratio(t);
      if (r > grid_best) {
        grid_best = r;
        grid_best_t = t;
      }
    }
    best = std::max(best, grid_best);
    // Golden-section around the grid argmax: the bracket is one grid cell on
    // either side (clipped away from t = 0).
    const double step = (b - a) / kGridPerPiece;
    double lo = std::max(grid_best_t - step, a + step * 1e-9);
    double hi = std::min(grid_best_t + step, b);
    constexpr double kInvGolden = 0.6180339887498949;
    double c = hi - (hi - lo) * kInvGolden;
    double d = lo + (hi - lo) * kInvGolden;
    double fc = ratio(c), fd = ratio(d);
    while (hi - lo > tol * std::max(hi, 1e-12)) {
      if (fc > fd) {
        hi = d;
        d = c;
        fd = fc;
        c = hi - (hi - lo) * kInvGolden;
        fc = ratio(c);
      } else {
        lo = c;
        c = d;
        fc = fd;
        d = lo + (hi - lo) * kInvGolden;
        fd = ratio(d);
      }
    }
    best = std::max({best, fc, fd});
  }
  return best;
}

double norm_orlicz(const StepFunction& x, const OrliczYoungFunction& M,
                   double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("norm_orlicz: tol <= 0");
  const StepFunction star = rearrange(x);
  double max_v = 0.0;
  for (const auto& p : star.pieces()) {
    max_v = std::max(max_v, p.val.as_double());
  }
  if (max_v == 0.0) return 0.0;

  // log_of handles lengths far below double range (e.g. 1/n! pieces of a
  // permutation-law quantile, whose huge values still matter here).
  std::vector<std::pair<double, double>> cells;  // (log length, value)
  for (const auto& p : star.pieces()) {
    const double v = p.val.as_double();
    if (v == 0.0) continue;
    cells.emplace_back(log_of(p.len), v);
  }

  // log of the modular integral M(|x|/lambda), via logsumexp over pieces,
  // skipping zero-value pieces (M(0) = 0 contributes nothing).
  const auto log_modular = [&](double lambda) {
    double max_term = -std::numeric_limits<double>::infinity();
    std::vector<double> terms;
    terms.reserve(cells.size());
    for (const auto& [log_len, v] : cells) {
      const double term = log_len + M.log_value(v / lambda);
      terms.push_back(term);
      max_term = std::max(max_term, term);
    }
    double s = 0.0;
    for (double term : terms) s += std::exp(term - max_term);
    return max_term + std::log(s);
  };

  // At lambda = max_v / (ln 2)^{1/p}, every argument u satisfies
  // u^p <= ln 2, so M(u) <= e^{ln 2} - 1 = 1 (the convex minorant only
  // lowers M) and the modular is <= 1: a guaranteed feasible upper end.
  double hi = max_v / std::pow(std::numbers::ln2, 1.0 / M.p());
  double lo = hi * 0x1p-60;
  while (log_modular(lo) <= 0.0) lo *= 0x1p-60;        // ensure infeasible end
  for (int i = 0; i < 300 && hi - lo > tol * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (log_modular(mid) <= 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

double norm_explog(const StepFunction& x) {
  const StepFunction star = rearrange(x);
  double best = 0.0;
  Rat t = 0;
  for (const auto& p : star.pieces()) {
    t += p.len;
    const double right = std::min(to_double(t), 1.0);
    best = std::max(best,
                    p.val.as_double() / std::log2(2.0 / right));
  }
  return best;
}

}  // namespace kruglov
