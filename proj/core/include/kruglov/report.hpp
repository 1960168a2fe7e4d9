#pragma once

#include "kruglov/distribution.hpp"
#include "kruglov/step_function.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace kruglov {

// One checked data point: an input label, the two compared quantities, and
// the slack the comparison allowed.  `violation` marks rows whose inequality
// failed beyond the slack.
struct EvidenceRow {
  std::string input;
  std::string lhs;
  std::string rhs;
  std::string slack;
  bool violation = false;
};

// Outcome of one claim check.  `anchor` states the inequality or identity the
// run checked, in formula form.  The verdict invariant: "fail" iff at least
// one evidence row is a violation; "inconclusive" only when no row violates
// but the check could not reach a conclusion within its budget.
struct VerificationReport {
  std::string claim_id;
  std::string anchor;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::string verdict;  // "pass" | "fail" | "inconclusive"
  std::vector<EvidenceRow> evidence;
  std::int64_t runtime_ms = 0;

  void add_param(const std::string& key, const std::string& value);
  void add_row(std::string input, std::string lhs, std::string rhs,
               std::string slack, bool violation);

  // Sets the verdict from the evidence rows: fail if any violation, else
  // inconclusive if the flag asks for it, else pass.
  void finalize(bool inconclusive = false);

  bool any_violation() const;
  int exit_code() const;  // pass -> 0, fail -> 1, inconclusive -> 2

  // JSON document.  Evidence is sorted by input label; at most max_evidence
  // rows are embedded, with violations always retained first.
  std::string to_json(std::size_t max_evidence = 200) const;

  // Complete evidence table as CSV (sorted, never truncated).
  std::string to_csv() const;
};

// Several reports as one JSON array (the `all` subcommand output).
std::string reports_to_json(const std::vector<VerificationReport>& reports,
                            std::size_t max_evidence = 200);
// Concatenated CSV with a leading claim_id column.
std::string reports_to_csv(const std::vector<VerificationReport>& reports);
// Worst exit code across reports: 1 beats 2 beats 0.
int combined_exit_code(const std::vector<VerificationReport>& reports);

// --- shared JSON forms --------------------------------------------------

std::string step_function_to_json(const StepFunction& x);
StepFunction step_function_from_json(const std::string& text);

std::string distribution_to_json(const DiscreteDistribution& d);
DiscreteDistribution distribution_from_json(const std::string& text);

// Evidence-cell formatting: exact values as "p/q", inexact as shortest
// round-trip decimal.
std::string cell(const Value& v);
std::string cell(const Rat& r);
std::string cell(double d);

}  // namespace kruglov
