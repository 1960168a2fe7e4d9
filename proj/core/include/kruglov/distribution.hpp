#pragma once

#include "kruglov/exact.hpp"
#include "kruglov/step_function.hpp"

#include <complex>
#include <optional>
#include <utility>
#include <vector>

namespace kruglov {

struct Atom {
  Value v;
  Rat m;
};

// A finite sub-probability law with exact masses.  `tail` is a certified upper
// bound on the probability that is not represented by the atoms; `tail_l1` is
// a certified upper bound on the first absolute moment carried by that
// unrepresented mass.  tail = 0 marks an exact law.
class DiscreteDistribution {
 public:
  // Aggregates duplicates, sorts by value, validates mass bounds.
  explicit DiscreteDistribution(std::vector<Atom> atoms, Rat tail = Rat(0),
                                Rat tail_l1 = Rat(0));

  // Fast path for internal constructions that already know the mass sum and
  // guarantee sortedness/strict monotonicity; skips the O(n) rational fold.
  static DiscreteDistribution trusted(std::vector<Atom> sorted_atoms,
                                      Rat mass_sum, Rat tail, Rat tail_l1);

  static DiscreteDistribution point_mass(Value v);

  const std::vector<Atom>& atoms() const { return atoms_; }
  const Rat& total_mass() const { return mass_sum_; }
  const Rat& tail() const { return tail_; }
  const Rat& tail_l1() const { return tail_l1_; }
  const std::optional<std::pair<Value, Value>>& pruned_interval() const {
    return pruned_;
  }
  bool is_exact_law() const { return tail_ == 0; }
  bool all_values_exact() const;

  // Returns a copy with enlarged tail ledgers (used when a caller accounts
  // for losses the distribution itself cannot see, e.g. series truncation).
  DiscreteDistribution with_extra_tail(const Rat& dp, const Rat& dl1) const;

  void set_pruned_interval(std::pair<Value, Value> iv) { pruned_ = std::move(iv); }

 private:
  DiscreteDistribution() = default;
  std::vector<Atom> atoms_;
  Rat mass_sum_ = 0;
  Rat tail_ = 0;
  Rat tail_l1_ = 0;
  std::optional<std::pair<Value, Value>> pruned_;
};

// Pushforward of Lebesgue measure: mass of each value is the total length
// where x attains it.
DiscreteDistribution law_of(const StepFunction& x);

// Non-increasing step function equimeasurable with |mu|.  Requires an exact
// law (tail = 0); distribute the tail first (collapse_tail_to_zero).
StepFunction quantile(const DiscreteDistribution& mu);

// Law of the sum of independent draws.  Tails add (conservative); the first
// moment of lost mass is bounded using means of the represented parts.
DiscreteDistribution convolve(const DiscreteDistribution& a,
                              const DiscreteDistribution& b);

// n-fold convolution power; n = 0 is the point mass at 0.
DiscreteDistribution power_convolve(const DiscreteDistribution& mu, unsigned n);

// Weighted union of laws.  sum(weights) <= 1; the deficiency 1 - sum(weights)
// goes to the tail (its first-moment contribution is the caller's to add).
DiscreteDistribution mixture(const std::vector<Rat>& weights,
                             const std::vector<DiscreteDistribution>& dists);

// (lower, upper) bounds on P(value > tau): lower counts atoms only, upper
// adds the tail.
std::pair<Rat, Rat> ccdf(const DiscreteDistribution& mu, const Value& tau);

// Mean of the represented part (exact on exact-valued laws).
Value mean(const DiscreteDistribution& mu);

// First absolute moment of the represented part.
Value abs_moment(const DiscreteDistribution& mu);

// Moves every atom of mass < theta into the tail; remembers the value range
// that was pruned.
DiscreteDistribution prune(const DiscreteDistribution& mu, const Rat& theta);

// sum m * exp(i t v) with an uncertainty disc of radius `radius` (the tail).
struct CharFnValue {
  std::complex<double> value;
  double radius;
};
CharFnValue char_fn(const DiscreteDistribution& mu, double t);

// --- soundness helpers -------------------------------------------------

// Floors every mass onto the 2^-bits lattice; the shaved mass (and its first
// moment) moves into the tail ledgers.  Caps denominator growth in iterated
// convolutions.
DiscreteDistribution quantize_masses(const DiscreteDistribution& mu,
                                     unsigned bits);

// Rounds every value up onto the 2^-bits lattice and merges collisions.  The
// result stochastically dominates mu, which is the sound direction when the
// result is used on the larger side of a submajorization check.
DiscreteDistribution round_values_up(const DiscreteDistribution& mu,
                                     unsigned bits);

// Merges atoms upward (mass moves to the next larger value) until at most
// max_atoms remain, preferring merges that move the least mass the shortest
// distance.  Also stochastically dominates mu.  Requires exact values.
DiscreteDistribution merge_upward(const DiscreteDistribution& mu,
                                  std::size_t max_atoms);

// Places the true missing mass (1 - sum of atom masses, which is <= tail) at
// value 0 and clears the tail, yielding an exact law.  For nonnegative laws
// this understates the rearrangement, the sound direction for lower bounds;
// tail_l1 is cleared with it, so callers needing the moment must read it
// before collapsing.
DiscreteDistribution collapse_tail_to_zero(const DiscreteDistribution& mu);

// Values multiplied by c (exactness follows the operands).
DiscreteDistribution scale_values(const DiscreteDistribution& mu,
                                  const Value& c);

// Exact structural equality of the represented parts and tails.
bool same_law(const DiscreteDistribution& a, const DiscreteDistribution& b);

}  // namespace kruglov
