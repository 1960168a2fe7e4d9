#pragma once

#include "kruglov/exact.hpp"

#include <vector>

namespace kruglov {

struct Piece {
  Rat len;
  Value val;
};

// A step function on [0,1]: ordered pieces with exact rational lengths that
// sum to exactly 1.  Zero regions are represented explicitly.  Canonical form
// merges adjacent pieces with identical values.
class StepFunction {
 public:
  explicit StepFunction(std::vector<Piece> pieces);
  static StepFunction constant(Value v);

  const std::vector<Piece>& pieces() const { return pieces_; }
  bool all_exact() const;

 private:
  std::vector<Piece> pieces_;
};

// Non-increasing rearrangement of |x| (left continuous; ties merge).
StepFunction rearrange(const StepFunction& x);

// Dilation: t -> x(t/tau) on [0,1].  tau <= 1 squeezes and pads with a zero
// piece; tau > 1 stretches and truncates at 1.
StepFunction dilate(const StepFunction& x, const Rat& tau);

// Exact integral of x over [0, tau].
Value partial_integral(const StepFunction& x, const Rat& tau);

// Minimum over the breakpoints of either rearrangement of
// int_0^tau y* - int_0^tau x* (negative when y fails to submajorize x;
// checking breakpoints suffices because both sides are piecewise linear).
Value submajorization_margin(const StepFunction& y, const StepFunction& x);

// True iff the partial integrals of the rearrangements satisfy
// int_0^tau x* <= int_0^tau y* + slack at every breakpoint of either
// rearrangement (sufficient for all tau: both sides are piecewise linear).
bool submajorizes(const StepFunction& y, const StepFunction& x,
                  const Value& slack);

// True iff the rearrangements coincide piece by piece.  Exact values only:
// refuses (throws) when either side carries inexact values.
bool equimeasurable(const StepFunction& x, const StepFunction& y);

// Coordinate i is the mean of x over [(i-1)/n, i/n].
std::vector<Value> average_vector(const StepFunction& x, unsigned n);

// n equal-length pieces carrying the coordinates in order.
StepFunction from_vector(const std::vector<Value>& a);

// Pointwise sum/scaling on the common refinement of the breakpoints.
StepFunction pointwise_sum(const StepFunction& x, const StepFunction& y);
StepFunction scale_function(const StepFunction& x, const Value& c);

}  // namespace kruglov
