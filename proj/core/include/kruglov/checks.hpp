#pragma once

#include "kruglov/exact.hpp"
#include "kruglov/report.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace kruglov {

class ConcaveGauge;

// Each check_* runs one claim verification end to end and returns a finalized
// report: parameters echoed, evidence rows sorted at serialization time, and
// the verdict derived from the rows (fail iff any violation; inconclusive
// only where a check cannot certify a conclusion within its budget).
//
// Shared conventions:
//  - Exact quantities enter evidence rows as "p/q" strings; floats as
//    shortest round-trip decimals.
//  - Certified tail mass is always charged to the side that makes the claim
//    harder to satisfy, so a pass can not be a truncation artifact.
//  - Randomized checks are deterministic given the seed, which is echoed in
//    the report parameters.

// Scalar fixed-point iteration a1 = 1/e, a_{k+1} = exp(a_k - 1) versus the
// atom at 0 of the k-fold compound-sum iterate, for k <= min(n_steps, 6).
VerificationReport check_lemma2(unsigned n_steps = 6,
                                const Rat& tail_tol = Rat(Int(1),
                                                          Int("1000000000000")));

// ccdf(h_m_dist(a, m), tau) <= 3 ccdf(t_n_dist(repeat_vector(a, m)), tau)
// exactly, for seeded random integer vectors and every separating tau.
VerificationReport check_lemma5(unsigned n_max = 4, unsigned m_max = 4,
                                unsigned trials = 100, unsigned value_cap = 8,
                                std::uint64_t seed = 1);

// (n-k)!/n! <= 2 (k-1)!/n^k for all 4 <= n <= n_max, 1 <= k <= n, exact.
VerificationReport check_lemma6(unsigned n_max = 200);

// Minimal m <= m_max with ccdf(t_n_dist(a), tau) <= 12 ccdf(2 h_m_dist(a, m),
// tau) for every separating tau; witness table per input vector, plus
// reported (never asserted) consistency re-checks at m, 2m, 4m.
// Empty `cases` selects the built-in battery.
VerificationReport check_lemma7(unsigned m_max = 64,
                                std::vector<std::vector<Rat>> cases = {});

// Spike masses of the all-ones vector: mass at n is exactly 1/n! under the
// permutation operator and 1/n^n under the approximant, with the ratio
// n!/n^n strictly decreasing.  Empty n_list selects 2..8.
VerificationReport check_remark(std::vector<unsigned> n_list = {});

// Epsilon-family gauges: geometric value identity, exact termwise density
// domination across eps < delta, decreasing leading-density ratios, and the
// keystone submajorization K g <= (1/eps) g within the certified budget
// eps^{n_max+1}/(1-eps) + accumulated tail ledgers.
// Empty eps_list selects {1/10, 1/5, 3/10}.
VerificationReport check_theorem1(std::vector<Rat> eps_list = {},
                                  unsigned n_max = 6,
                                  const Rat& tail_tol = Rat(Int(1),
                                                            Int("10000000000")),
                                  const Rat& prune_theta =
                                      Rat(Int(1), Int("1000000000000000")));

// sup over t of (1/phi(t)) sum_k phi(t^k/k!): finiteness report, the
// closed-form pin at phi(t) = t, and dyadic partial-sum side checks.
VerificationReport check_criterion(const std::string& gauge_spec = "power:1",
                                   unsigned grid = 1024,
                                   double series_tol = 1e-9,
                                   double value_cap = 1e6);
VerificationReport check_criterion(const ConcaveGauge& gauge,
                                   const std::string& gauge_label,
                                   unsigned grid, double series_tol,
                                   double value_cap);

// Distribution-level boundedness evidence on a fixed vector battery:
// L1 isometries (exact), compound-sum lower bound r_K >= 1/e - slack,
// the factor-3 approximant route, the factor-12 tail-comparison route, and
// empirical sup ratios per norm.
VerificationReport check_theorem8(unsigned n_max = 6,
                                  const Rat& tail_tol = Rat(Int(1),
                                                            Int("1000000000000")));

// Matrix-operator ratio diagnostics (no universal constant to test against;
// the verdict is always inconclusive by design).  matrix_spec is one of
// "diag", "ones", "zero", "random", or "all".
VerificationReport check_corollary10(unsigned n = 4,
                                     const std::string& matrix_spec = "all",
                                     std::uint64_t seed = 1);

// Orlicz-norm growth dichotomy for the all-ones permutation laws:
// rho_p(n) strictly increasing for p = 2, running max stable for p = 1.
// Empty lists select p in {1, 2} and dyadic n in {64, ..., 2048}.
VerificationReport check_corollary12(std::vector<double> p_list = {},
                                     std::vector<unsigned> n_list = {});

// (sum_{i in U} z_i)^p >= sum_{i in U} z_i^p exactly, exhaustive over
// subsets U of seeded random nonnegative rational vectors.
VerificationReport check_corollary13(std::vector<unsigned> p_list = {},
                                     unsigned n_max = 12, unsigned trials = 20,
                                     std::uint64_t seed = 1);

}  // namespace kruglov
