#pragma once

#include "kruglov/distribution.hpp"
#include "kruglov/exact.hpp"
#include "kruglov/step_function.hpp"

#include <vector>

namespace kruglov {

// counts[k] lists (lattice sum, #subsets): the number of k-element subsets of
// the input multiset whose members add to that lattice point.  Lattice index
// = value * lattice_den.
struct SubsetSumTable {
  Int lattice_den;
  std::vector<std::vector<std::pair<Int, Int>>> rows;
};

SubsetSumTable subset_sum_table(const std::vector<Rat>& a);

// Law of the fixed-point sum of a random uniform permutation acting on the
// coordinates of a: P(sum = s) = sum_k counts[k][s] * derangements(n-k) / n!.
DiscreteDistribution t_n_dist(const std::vector<Rat>& a);

// Independent oracle: enumerate all n! permutations (n <= 8).
DiscreteDistribution t_n_bruteforce(const std::vector<Rat>& a);

// Functional form: n! equal pieces in lexicographic one-line enumeration
// order, values = fixed-point sums of the n-block averages of x (n <= 8).
StepFunction t_n_stepfn(const StepFunction& x, unsigned n);

// m-fold convolution power of the law {0: 1-1/m, a_k: 1/(nm) each}.
DiscreteDistribution h_m_dist(const std::vector<Rat>& a, unsigned m);

struct KruglovOptions {
  // Truncate the Poisson-weight series once the certified remaining weight
  // drops below this.
  Rat tail_tol = Rat(Int(1), Int("1000000000000"));
  // Optional per-power hygiene: prune tiny atoms / floor masses onto a dyadic
  // lattice.  Both losses land in the certified tail ledgers.
  Rat inner_prune = Rat(0);
  unsigned inner_quantize_bits = 0;
  unsigned max_terms = 64;
};

// Law of the compound sum: mixture over n of mu^{*n} with weights 1/(e n!).
// The weights use a certified rational lower bound of 1/e, so every emitted
// mass under-approximates the true mass and 1 - total is a certified tail.
DiscreteDistribution kruglov_dist(const DiscreteDistribution& mu,
                                  const KruglovOptions& opt = {});
DiscreteDistribution kruglov_dist(const DiscreteDistribution& mu,
                                  const Rat& tail_tol);

// n-fold application of the compound-sum map starting from the point mass at
// 1, pruning and mass-quantizing between steps.
DiscreteDistribution kruglov_iterate(unsigned n,
                                     const Rat& tail_tol = Rat(Int(1), Int("1000000000000")),
                                     const Rat& prune_theta = Rat(Int(1), Int("1000000000000000")));

// All iterates 1..n of the same loop (iterate k is the k-fold application).
std::vector<DiscreteDistribution> kruglov_iterates(
    unsigned n,
    const Rat& tail_tol = Rat(Int(1), Int("1000000000000")),
    const Rat& prune_theta = Rat(Int(1), Int("1000000000000000")));

// Law of sum_i x[i][pi(i)] over uniform permutations pi (n <= 8).
DiscreteDistribution a_n_matrix_dist(const std::vector<std::vector<Rat>>& x);

// The scalar fixed-point iteration a_1 = 1/e, a_{k+1} = exp(a_k - 1):
// strictly increasing in (0,1), converging to 1.  Returns a_1..a_n.
std::vector<double> support_iteration(unsigned n);

// Each coordinate repeated m times, blockwise.
std::vector<Rat> repeat_vector(const std::vector<Rat>& a, unsigned m);

}  // namespace kruglov
