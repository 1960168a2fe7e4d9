#include "kruglov/operators.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

namespace kruglov {

namespace {

void require_nonnegative(const std::vector<Rat>& a, const char* who) {
  if (a.empty()) throw std::invalid_argument(std::string(who) + ": empty vector");
  for (const auto& v : a) {
    if (v < 0) throw std::invalid_argument(std::string(who) + ": negative entry");
  }
}

}  // namespace

SubsetSumTable subset_sum_table(const std::vector<Rat>& a) {
  require_nonnegative(a, "subset_sum_table");
  const unsigned n = static_cast<unsigned>(a.size());

  Int den = 1;
  for (const auto& v : a) den = boost::multiprecision::lcm(den, denominator(v));

  // Group equal lattice values; one grouped update handles a whole
  // multiplicity class via binomial factors, which collapses e.g. the
  // all-equal vector to a single O(n) pass.
  std::map<Int, unsigned> groups;
  for (const auto& v : a) ++groups[numerator(v) * (den / denominator(v))];

  std::vector<std::map<Int, Int>> rows(n + 1);
  rows[0][0] = 1;
  for (const auto& [value, count] : groups) {
    std::vector<std::map<Int, Int>> next(n + 1);
    for (unsigned k = 0; k <= n; ++k) {
      for (unsigned j = 0; j <= std::min(count, k); ++j) {
        if (rows[k - j].empty()) continue;  // skip the binomial on dead rows
        const Int coeff = binomial(count, j);
        const Int offset = Int(j) * value;
        for (const auto& [s, c] : rows[k - j]) {
          next[k][s + offset] += coeff * c;
        }
      }
    }
    rows = std::move(next);
  }

  SubsetSumTable table;
  table.lattice_den = den;
  table.rows.resize(n + 1);
  for (unsigned k = 0; k <= n; ++k) {
    table.rows[k].assign(rows[k].begin(), rows[k].end());
  }
  return table;
}

DiscreteDistribution t_n_dist(const std::vector<Rat>& a) {
  const unsigned n = static_cast<unsigned>(a.size());
  SubsetSumTable table = subset_sum_table(a);

  std::map<Int, Int> numerators;  // over the common denominator n!
  for (unsigned k = 0; k <= n; ++k) {
    const Int& weight = derangements(n - k);
    if (weight == 0) continue;  // k = n-1 contributes nothing
    for (const auto& [s, c] : table.rows[k]) numerators[s] += c * weight;
  }

  Int check = 0;
  for (const auto& [s, num] : numerators) check += num;
  if (check != factorial(n)) {
    throw std::logic_error("t_n_dist: fixed-point counting does not cover S_n");
  }

  std::vector<Atom> atoms;
  atoms.reserve(numerators.size());
  for (const auto& [s, num] : numerators) {
    atoms.push_back({Value(Rat(s, table.lattice_den)), Rat(num, factorial(n))});
  }
  return DiscreteDistribution::trusted(std::move(atoms), Rat(1), Rat(0), Rat(0));
}

DiscreteDistribution t_n_bruteforce(const std::vector<Rat>& a) {
  require_nonnegative(a, "t_n_bruteforce");
  const unsigned n = static_cast<unsigned>(a.size());
  if (n > 8) throw std::invalid_argument("t_n_bruteforce: n > 8");

  std::vector<unsigned> perm(n);
  std::iota(perm.begin(), perm.end(), 0u);
  std::map<Rat, Int> counts;
  do {
    Rat sum = 0;
    for (unsigned i = 0; i < n; ++i) {
      if (perm[i] == i) sum += a[i];
    }
    ++counts[sum];
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::vector<Atom> atoms;
  atoms.reserve(counts.size());
  for (const auto& [v, c] : counts) {
    atoms.push_back({Value(v), Rat(c, factorial(n))});
  }
  return DiscreteDistribution(std::move(atoms));
}

StepFunction t_n_stepfn(const StepFunction& x, unsigned n) {
  if (n == 0) throw std::invalid_argument("t_n_stepfn: n must be >= 1");
  if (n > 8) throw std::invalid_argument("t_n_stepfn: n > 8 materializes n! pieces");
  const std::vector<Value> a = average_vector(x, n);

  std::vector<unsigned> perm(n);
  std::iota(perm.begin(), perm.end(), 0u);
  std::vector<Piece> pieces;
  const Rat len(Int(1), factorial(n));
  do {
    Value sum(0);
    for (unsigned i = 0; i < n; ++i) {
      if (perm[i] == i) sum = sum + a[i];
    }
    pieces.push_back({len, sum});
  } while (std::next_permutation(perm.begin(), perm.end()));
  return StepFunction(std::move(pieces));
}

DiscreteDistribution h_m_dist(const std::vector<Rat>& a, unsigned m) {
  require_nonnegative(a, "h_m_dist");
  if (m == 0) throw std::invalid_argument("h_m_dist: m must be >= 1");
  const unsigned n = static_cast<unsigned>(a.size());

  std::vector<Atom> atoms;
  atoms.reserve(n + 1);
  atoms.push_back({Value(0), Rat(m - 1, m)});
  for (const auto& v : a) atoms.push_back({Value(v), Rat(Int(1), Int(n) * m)});
  DiscreteDistribution g(std::move(atoms));
  return power_convolve(g, m);
}

namespace {

DiscreteDistribution apply_power_hygiene(DiscreteDistribution d,
                                         const KruglovOptions& opt) {
  if (opt.inner_prune > 0) d = prune(d, opt.inner_prune);
  if (opt.inner_quantize_bits > 0) d = quantize_masses(d, opt.inner_quantize_bits);
  return d;
}

}  // namespace

DiscreteDistribution kruglov_dist(const DiscreteDistribution& mu,
                                  const KruglovOptions& opt) {
  if (opt.tail_tol <= 0) throw std::invalid_argument("kruglov_dist: tail_tol must be > 0");
  if (!mu.all_values_exact()) {
    throw std::invalid_argument("kruglov_dist: exact values required");
  }
  for (const auto& a : mu.atoms()) {
    if (a.v.rational() < 0) {
      throw std::invalid_argument("kruglov_dist: values must be >= 0");
    }
  }

  const auto& [e_lo, e_hi] = inv_e_bracket();

  // Smallest N with (certified bound on) remaining weight below tail_tol.
  unsigned N = 0;
  {
    Rat partial = 0;  // sum_{n<=N} 1/n!
    for (N = 0; N < opt.max_terms; ++N) {
      partial += Rat(Int(1), factorial(N));
      if (Rat(1) - e_lo * partial < opt.tail_tol) break;
    }
    if (N == opt.max_terms) {
      throw std::invalid_argument("kruglov_dist: tail_tol needs too many terms");
    }
  }

  std::vector<DiscreteDistribution> powers;
  std::vector<Rat> weights;
  powers.reserve(N + 1);
  weights.reserve(N + 1);
  powers.push_back(DiscreteDistribution::point_mass(Value(0)));
  weights.push_back(e_lo);
  for (unsigned n = 1; n <= N; ++n) {
    powers.push_back(apply_power_hygiene(convolve(powers.back(), mu), opt));
    weights.push_back(Rat(e_lo / Rat(factorial(n))));
  }
  DiscreteDistribution out = mixture(weights, powers);

  // First-moment bound on the truncated terms: each n-fold sum has mean
  // n * E|mu|, and sum_{n>N} n/(e n!) <= (1/e) * 2/N!.
  const Rat mean_upper = Rat(abs_moment(mu).rational() + mu.tail_l1());
  const Rat trunc_l1 = Rat(mean_upper * e_hi * Rat(Int(2), factorial(N)));
  return out.with_extra_tail(Rat(0), trunc_l1);
}

DiscreteDistribution kruglov_dist(const DiscreteDistribution& mu,
                                  const Rat& tail_tol) {
  KruglovOptions opt;
  opt.tail_tol = tail_tol;
  return kruglov_dist(mu, opt);
}

std::vector<DiscreteDistribution> kruglov_iterates(unsigned n, const Rat& tail_tol,
                                                   const Rat& prune_theta) {
  if (n == 0) throw std::invalid_argument("kruglov_iterates: n must be >= 1");
  KruglovOptions opt;
  opt.tail_tol = tail_tol;
  opt.inner_prune = Rat(Int(1), boost::multiprecision::pow(Int(10), 20));
  opt.inner_quantize_bits = 160;

  std::vector<DiscreteDistribution> out;
  out.reserve(n);
  DiscreteDistribution d = DiscreteDistribution::point_mass(Value(1));
  for (unsigned k = 0; k < n; ++k) {
    d = kruglov_dist(d, opt);
    d = prune(d, prune_theta);
    d = quantize_masses(d, 128);
    out.push_back(d);
  }
  return out;
}

DiscreteDistribution kruglov_iterate(unsigned n, const Rat& tail_tol,
                                     const Rat& prune_theta) {
  return kruglov_iterates(n, tail_tol, prune_theta).back();
}

DiscreteDistribution a_n_matrix_dist(const std::vector<std::vector<Rat>>& x) {
  const unsigned n = static_cast<unsigned>(x.size());
  if (n == 0) throw std::invalid_argument("a_n_matrix_dist: empty matrix");
  if (n > 8) throw std::invalid_argument("a_n_matrix_dist: n > 8");
  for (const auto& row : x) {
    if (row.size() != n) throw std::invalid_argument("a_n_matrix_dist: not square");
    for (const auto& v : row) {
      if (v < 0) throw std::invalid_argument("a_n_matrix_dist: negative entry");
    }
  }

  std::vector<unsigned> perm(n);
  std::iota(perm.begin(), perm.end(), 0u);
  std::map<Rat, Int> counts;
  do {
    Rat sum = 0;
    for (unsigned i = 0; i < n; ++i) sum += x[i][perm[i]];
    ++counts[sum];
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::vector<Atom> atoms;
  atoms.reserve(counts.size());
  for (const auto& [v, c] : counts) {
    atoms.push_back({Value(v), Rat(c, factorial(n))});
  }
  return DiscreteDistribution(std::move(atoms));
}

std::vector<double> support_iteration(unsigned n) {
  if (n == 0) throw std::invalid_argument("support_iteration: n must be >= 1");
  std::vector<double> a;
  a.reserve(n);
  a.push_back(std::exp(-1.0));
  for (unsigned k = 1; k < n; ++k) a.push_back(std::exp(a.back() - 1.0));
  return a;
}

std::vector<Rat> repeat_vector(const std::vector<Rat>& a, unsigned m) {
  if (m == 0) throw std::invalid_argument("repeat_vector: m must be >= 1");
  std::vector<Rat> out;
  out.reserve(a.size() * m);
  for (const auto& v : a) {
    for (unsigned i = 0; i < m; ++i) out.push_back(v);
  }
  return out;
}

}  // namespace kruglov
