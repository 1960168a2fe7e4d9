#pragma once

#include "kruglov/gauge.hpp"
#include "kruglov/step_function.hpp"

namespace kruglov {

// Integral of |x| over [0,1]; exact when x carries exact values.
Value norm_l1(const StepFunction& x);

// Essential supremum of |x|.
Value norm_linf(const StepFunction& x);

// Lorentz functional: integral of the decreasing rearrangement against dphi,
// i.e. sum over pieces of x* of value * (phi(right) - phi(left)).
double norm_lorentz(const StepFunction& x, const ConcaveGauge& phi);

// Marcinkiewicz functional: sup over t in (0,1] of the ratio
// (integral of x* over [0,t]) / psi(t), located to within a relative
// tolerance by a per-piece grid plus golden-section refinement.
double norm_marcinkiewicz(const StepFunction& x, const ConcaveGauge& psi,
                          double tol = 1e-9);

// Luxemburg functional: the least lambda with modular
// integral M(|x|/lambda) <= 1, found by bisection to relative width tol.
// The modular is evaluated in log space so huge arguments of M cannot
// overflow.  Returns 0 for x identically zero.
double norm_orlicz(const StepFunction& x, const OrliczYoungFunction& M,
                   double tol = 1e-9);

// sup over t in (0,1] of x*(t) / log2(2/t).  Within each piece of x* the
// divisor decreases in t, so the per-piece supremum sits at the right
// endpoint; the result is the max of those finitely many candidates.
double norm_explog(const StepFunction& x);

}  // namespace kruglov
