#include "kruglov/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace kruglov {

namespace {

void sort_and_merge(std::vector<Atom>& atoms) {
  std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) {
    return Value::compare(a.v, b.v) < 0;
  });
  std::vector<Atom> out;
  out.reserve(atoms.size());
  for (auto& a : atoms) {
    if (a.m == 0) continue;
    if (!out.empty() && out.back().v.same(a.v)) {
      out.back().m += a.m;
    } else {
      out.push_back(std::move(a));
    }
  }
  atoms = std::move(out);
}

Rat abs_as_rat(const Value& v) {
  if (v.is_exact()) {
    const Rat& r = v.rational();
    return r < 0 ? Rat(-r) : r;
  }
  return rat_from_double(std::fabs(v.as_double()));
}

void check_tail_fields(const Rat& tail, const Rat& tail_l1) {
  if (tail < 0 || tail_l1 < 0) {
    throw std::invalid_argument("DiscreteDistribution: tails must be >= 0");
  }
}

}  // namespace

DiscreteDistribution::DiscreteDistribution(std::vector<Atom> atoms, Rat tail,
                                           Rat tail_l1) {
  check_tail_fields(tail, tail_l1);
  for (const auto& a : atoms) {
    if (a.m < 0) throw std::invalid_argument("DiscreteDistribution: negative mass");
  }
  sort_and_merge(atoms);
  Rat total = 0;
  for (const auto& a : atoms) total += a.m;
  if (total > 1) throw std::invalid_argument("DiscreteDistribution: masses exceed 1");
  if (Rat(1) - total > tail) {
    throw std::invalid_argument(
        "DiscreteDistribution: tail does not cover the missing mass");
  }
  atoms_ = std::move(atoms);
  mass_sum_ = std::move(total);
  tail_ = std::move(tail);
  tail_l1_ = std::move(tail_l1);
}

DiscreteDistribution DiscreteDistribution::trusted(std::vector<Atom> sorted_atoms,
                                                   Rat mass_sum, Rat tail,
                                                   Rat tail_l1) {
  check_tail_fields(tail, tail_l1);
  for (std::size_t i = 0; i + 1 < sorted_atoms.size(); ++i) {
    if (Value::compare(sorted_atoms[i].v, sorted_atoms[i + 1].v) >= 0) {
      throw std::logic_error("trusted: atoms not strictly increasing");
    }
  }
  if (mass_sum > 1 || Rat(1) - mass_sum > tail) {
    throw std::logic_error("trusted: mass/tail invariant violated");
  }
  DiscreteDistribution d;
  d.atoms_ = std::move(sorted_atoms);
  d.mass_sum_ = std::move(mass_sum);
  d.tail_ = std::move(tail);
  d.tail_l1_ = std::move(tail_l1);
  return d;
}

DiscreteDistribution DiscreteDistribution::point_mass(Value v) {
  return DiscreteDistribution({{std::move(v), Rat(1)}});
}

bool DiscreteDistribution::all_values_exact() const {
  return std::all_of(atoms_.begin(), atoms_.end(),
                     [](const Atom& a) { return a.v.is_exact(); });
}

DiscreteDistribution DiscreteDistribution::with_extra_tail(const Rat& dp,
                                                           const Rat& dl1) const {
  if (dp < 0 || dl1 < 0) throw std::invalid_argument("with_extra_tail: negative increment");
  DiscreteDistribution d = *this;
  d.tail_ += dp;
  d.tail_l1_ += dl1;
  return d;
}

DiscreteDistribution law_of(const StepFunction& x) {
  std::vector<Atom> atoms;
  atoms.reserve(x.pieces().size());
  for (const auto& p : x.pieces()) atoms.push_back({p.val, p.len});
  return DiscreteDistribution(std::move(atoms));
}

StepFunction quantile(const DiscreteDistribution& mu) {
  if (!mu.is_exact_law()) {
    throw std::invalid_argument(
        "quantile: law has unrepresented tail mass; distribute it first");
  }
  std::vector<Atom> abs_atoms;
  abs_atoms.reserve(mu.atoms().size());
  for (const auto& a : mu.atoms()) abs_atoms.push_back({a.v.abs(), a.m});
  sort_and_merge(abs_atoms);
  std::vector<Piece> pieces;
  pieces.reserve(abs_atoms.size());
  for (auto it = abs_atoms.rbegin(); it != abs_atoms.rend(); ++it) {
    pieces.push_back({it->m, it->v});
  }
  return StepFunction(std::move(pieces));
}

namespace {

struct LatticeView {
  Int denom;                 // common denominator D of all values
  std::vector<Int> indices;  // v * D per atom
  Int min_idx, max_idx;
};

// Integer lattice view of an exact-valued distribution, or nullopt when the
// common denominator would be unreasonably large.
std::optional<LatticeView> lattice_of(const DiscreteDistribution& mu) {
  if (!mu.all_values_exact() || mu.atoms().empty()) return std::nullopt;
  Int d = 1;
  for (const auto& a : mu.atoms()) {
    d = boost::multiprecision::lcm(d, denominator(a.v.rational()));
    if (boost::multiprecision::msb(d) > 40) return std::nullopt;
  }
  LatticeView lv;
  lv.denom = d;
  lv.indices.reserve(mu.atoms().size());
  for (const auto& a : mu.atoms()) {
    const Rat& r = a.v.rational();
    lv.indices.push_back(numerator(r) * (d / denominator(r)));
  }
  lv.min_idx = lv.indices.front();
  lv.max_idx = lv.indices.back();
  return lv;
}

Rat convolve_tail_l1(const DiscreteDistribution& a, const DiscreteDistribution& b) {
  if (a.tail() == 0 && b.tail() == 0) return Rat(0);
  const Rat sa = abs_as_rat(abs_moment(a));
  const Rat sb = abs_as_rat(abs_moment(b));
  return a.tail_l1() + a.tail() * (sb + b.tail_l1()) + sa * b.tail() + b.tail_l1();
}

}  // namespace

DiscreteDistribution convolve(const DiscreteDistribution& a,
                              const DiscreteDistribution& b) {
  const Rat tail = std::min(Rat(a.tail() + b.tail()), Rat(1));
  const Rat tail_l1 = convolve_tail_l1(a, b);
  const Rat total = a.total_mass() * b.total_mass();

  // Dense lattice accumulation when both laws live on a shared integer grid.
  const auto la = lattice_of(a);
  const auto lb = lattice_of(b);
  if (la && lb && la->denom == lb->denom) {
    const Int base = la->min_idx + lb->min_idx;
    const Int span = (la->max_idx - la->min_idx) + (lb->max_idx - lb->min_idx);
    if (span <= 4'000'000) {
      std::vector<Rat> acc(span.convert_to<std::size_t>() + 1);
      for (std::size_t i = 0; i < a.atoms().size(); ++i) {
        const std::size_t oa = (la->indices[i] - la->min_idx).convert_to<std::size_t>();
        for (std::size_t j = 0; j < b.atoms().size(); ++j) {
          const std::size_t ob = (lb->indices[j] - lb->min_idx).convert_to<std::size_t>();
          acc[oa + ob] += a.atoms()[i].m * b.atoms()[j].m;
        }
      }
      std::vector<Atom> atoms;
      for (std::size_t k = 0; k < acc.size(); ++k) {
        if (acc[k] == 0) continue;
        atoms.push_back({Value(Rat(base + Int(k), la->denom)), std::move(acc[k])});
      }
      return DiscreteDistribution::trusted(std::move(atoms), total, tail, tail_l1);
    }
  }

  std::vector<Atom> atoms;
  atoms.reserve(a.atoms().size() * b.atoms().size());
  for (const auto& x : a.atoms()) {
    for (const auto& y : b.atoms()) {
      atoms.push_back({x.v + y.v, x.m * y.m});
    }
  }
  sort_and_merge(atoms);
  return DiscreteDistribution::trusted(std::move(atoms), total, tail, tail_l1);
}

DiscreteDistribution power_convolve(const DiscreteDistribution& mu, unsigned n) {
  DiscreteDistribution result = DiscreteDistribution::point_mass(Value(0));
  DiscreteDistribution base = mu;
  while (n > 0) {
    if (n & 1u) result = convolve(result, base);
    n >>= 1u;
    if (n > 0) base = convolve(base, base);
  }
  return result;
}

DiscreteDistribution mixture(const std::vector<Rat>& weights,
                             const std::vector<DiscreteDistribution>& dists) {
  if (weights.size() != dists.size()) {
    throw std::invalid_argument("mixture: weights/dists size mismatch");
  }
  Rat weight_sum = 0;
  for (const auto& w : weights) {
    if (w < 0) throw std::invalid_argument("mixture: negative weight");
    weight_sum += w;
  }
  if (weight_sum > 1) throw std::invalid_argument("mixture: weights exceed 1");

  std::vector<Atom> atoms;
  Rat total = 0, tail = Rat(1) - weight_sum, tail_l1 = 0;
  for (std::size_t i = 0; i < dists.size(); ++i) {
    if (weights[i] == 0) continue;
    for (const auto& a : dists[i].atoms()) {
      atoms.push_back({a.v, weights[i] * a.m});
    }
    total += weights[i] * dists[i].total_mass();
    tail += weights[i] * dists[i].tail();
    tail_l1 += weights[i] * dists[i].tail_l1();
  }
  sort_and_merge(atoms);
  return DiscreteDistribution::trusted(std::move(atoms), total, tail, tail_l1);
}

std::pair<Rat, Rat> ccdf(const DiscreteDistribution& mu, const Value& tau) {
  Rat lower = 0;
  for (auto it = mu.atoms().rbegin(); it != mu.atoms().rend(); ++it) {
    if (Value::compare(it->v, tau) <= 0) break;
    lower += it->m;
  }
  return {lower, Rat(lower + mu.tail())};
}

Value mean(const DiscreteDistribution& mu) {
  Value acc(0);
  for (const auto& a : mu.atoms()) acc = acc + Value(Rat(a.m)) * a.v;
  return acc;
}

Value abs_moment(const DiscreteDistribution& mu) {
  Value acc(0);
  for (const auto& a : mu.atoms()) acc = acc + Value(Rat(a.m)) * a.v.abs();
  return acc;
}

DiscreteDistribution prune(const DiscreteDistribution& mu, const Rat& theta) {
  std::vector<Atom> kept;
  kept.reserve(mu.atoms().size());
  Rat lost = 0, lost_l1 = 0;
  std::optional<std::pair<Value, Value>> interval = mu.pruned_interval();
  for (const auto& a : mu.atoms()) {
    if (a.m >= theta) {
      kept.push_back(a);
      continue;
    }
    lost += a.m;
    lost_l1 += abs_as_rat(a.v) * a.m;
    if (!interval) {
      interval = {a.v, a.v};
    } else {
      if (Value::compare(a.v, interval->first) < 0) interval->first = a.v;
      if (Value::compare(a.v, interval->second) > 0) interval->second = a.v;
    }
  }
  auto out = DiscreteDistribution::trusted(std::move(kept),
                                           Rat(mu.total_mass() - lost),
                                           std::min(Rat(mu.tail() + lost), Rat(1)),
                                           Rat(mu.tail_l1() + lost_l1));
  if (interval) out.set_pruned_interval(*interval);
  return out;
}

CharFnValue char_fn(const DiscreteDistribution& mu, double t) {
  std::complex<double> acc(0.0, 0.0);
  for (const auto& a : mu.atoms()) {
    const double v = a.v.as_double();
    acc += to_double(a.m) * std::polar(1.0, t * v);
  }
  return {acc, to_double(mu.tail())};
}

DiscreteDistribution quantize_masses(const DiscreteDistribution& mu,
                                     unsigned bits) {
  std::vector<Atom> kept;
  kept.reserve(mu.atoms().size());
  Rat lost = 0, lost_l1 = 0;
  for (const auto& a : mu.atoms()) {
    Rat q = floor_to_dyadic(a.m, bits);
    const Rat drop = a.m - q;
    if (drop != 0) {
      lost += drop;
      lost_l1 += abs_as_rat(a.v) * drop;
    }
    if (q != 0) kept.push_back({a.v, std::move(q)});
  }
  return DiscreteDistribution::trusted(std::move(kept),
                                       Rat(mu.total_mass() - lost),
                                       std::min(Rat(mu.tail() + lost), Rat(1)),
                                       Rat(mu.tail_l1() + lost_l1));
}

DiscreteDistribution round_values_up(const DiscreteDistribution& mu,
                                     unsigned bits) {
  std::vector<Atom> atoms;
  atoms.reserve(mu.atoms().size());
  for (const auto& a : mu.atoms()) {
    if (!a.v.is_exact()) {
      throw std::logic_error("round_values_up: exact values required");
    }
    Rat up = -floor_to_dyadic(-a.v.rational(), bits);
    if (!atoms.empty() && atoms.back().v.same(Value(up))) {
      atoms.back().m += a.m;
    } else {
      atoms.push_back({Value(up), a.m});
    }
  }
  return DiscreteDistribution::trusted(std::move(atoms), mu.total_mass(),
                                       mu.tail(), mu.tail_l1());
}

DiscreteDistribution merge_upward(const DiscreteDistribution& mu,
                                  std::size_t max_atoms) {
  if (max_atoms == 0) throw std::invalid_argument("merge_upward: max_atoms must be >= 1");
  std::vector<Atom> atoms = mu.atoms();
  while (atoms.size() > max_atoms) {
    // Cheapest merge = least mass moved over the shortest value gap; the
    // choice only affects tightness, not soundness, so doubles suffice.
    std::size_t best = 0;
    double best_cost = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < atoms.size(); ++i) {
      const double gap = atoms[i + 1].v.as_double() - atoms[i].v.as_double();
      const double cost = to_double(atoms[i].m) * gap;
      if (cost < best_cost) {
        best_cost = cost;
        best = i;
      }
    }
    atoms[best + 1].m += atoms[best].m;
    atoms.erase(atoms.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return DiscreteDistribution::trusted(std::move(atoms), mu.total_mass(),
                                       mu.tail(), mu.tail_l1());
}

DiscreteDistribution collapse_tail_to_zero(const DiscreteDistribution& mu) {
  const Rat missing = Rat(1) - mu.total_mass();
  std::vector<Atom> atoms = mu.atoms();
  if (missing > 0) {
    auto it = std::lower_bound(atoms.begin(), atoms.end(), Value(0),
                               [](const Atom& a, const Value& v) {
                                 return Value::compare(a.v, v) < 0;
                               });
    if (it != atoms.end() && it->v.same(Value(0))) {
      it->m += missing;
    } else {
      atoms.insert(it, {Value(0), missing});
    }
  }
  return DiscreteDistribution::trusted(std::move(atoms), Rat(1), Rat(0), Rat(0));
}

DiscreteDistribution scale_values(const DiscreteDistribution& mu,
                                  const Value& c) {
  if (!c.is_exact() && mu.tail_l1() != 0) {
    throw std::logic_error(
        "scale_values: inexact factor would invalidate the certified tail_l1");
  }
  std::vector<Atom> atoms;
  atoms.reserve(mu.atoms().size());
  for (const auto& a : mu.atoms()) atoms.push_back({a.v * c, a.m});
  const Rat scaled_l1 = c.is_exact() ? Rat(abs_as_rat(c) * mu.tail_l1()) : Rat(0);
  return DiscreteDistribution(std::move(atoms), mu.tail(), scaled_l1);
}

bool same_law(const DiscreteDistribution& a, const DiscreteDistribution& b) {
  if (a.atoms().size() != b.atoms().size()) return false;
  if (a.tail() != b.tail()) return false;
  for (std::size_t i = 0; i < a.atoms().size(); ++i) {
    if (!a.atoms()[i].v.same(b.atoms()[i].v)) return false;
    if (a.atoms()[i].m != b.atoms()[i].m) return false;
  }
  return true;
}

}  // namespace kruglov
