#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <kruglov/report.hpp>

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

using namespace kruglov;
using nlohmann::json;

namespace {

VerificationReport sample_report() {
  VerificationReport rep;
  rep.claim_id = "demo";
  rep.anchor = "lhs <= rhs";
  rep.add_param("n", "4");
  rep.add_param("seed", "1");
  rep.add_row("b-case", "1/2", "2/3", "0", false);
  rep.add_row("a-case", "1", "1", "0", false);
  rep.runtime_ms = 7;
  return rep;
}

}  // namespace

// ---------------------------------------------------------------------------
// Verdict and exit-code rules
// ---------------------------------------------------------------------------

TEST_CASE("finalize sets pass when no row violates") {
  VerificationReport rep = sample_report();
  rep.finalize();
  CHECK(rep.verdict == "pass");
  CHECK(rep.exit_code() == 0);
  CHECK_FALSE(rep.any_violation());
}

TEST_CASE("finalize sets fail when any row violates, even if asked for "
          "inconclusive") {
  VerificationReport rep = sample_report();
  rep.add_row("c-case", "2", "1", "0", true);
  rep.finalize(/*inconclusive=*/true);
  CHECK(rep.verdict == "fail");
  CHECK(rep.exit_code() == 1);
  CHECK(rep.any_violation());
}

TEST_CASE("finalize sets inconclusive only without violations") {
  VerificationReport rep = sample_report();
  rep.finalize(/*inconclusive=*/true);
  CHECK(rep.verdict == "inconclusive");
  CHECK(rep.exit_code() == 2);
}

TEST_CASE("combined exit code: fail beats inconclusive beats pass") {
  VerificationReport pass = sample_report();
  pass.finalize();
  VerificationReport inconclusive = sample_report();
  inconclusive.finalize(true);
  VerificationReport fail = sample_report();
  fail.add_row("bad", "2", "1", "0", true);
  fail.finalize();

  CHECK(combined_exit_code({}) == 0);
  CHECK(combined_exit_code({pass, pass}) == 0);
  CHECK(combined_exit_code({pass, inconclusive}) == 2);
  CHECK(combined_exit_code({inconclusive, fail, pass}) == 1);
}

// ---------------------------------------------------------------------------
// JSON document shape
// ---------------------------------------------------------------------------

TEST_CASE("report JSON carries all fields and sorts evidence by input") {
  VerificationReport rep = sample_report();
  rep.finalize();
  const json j = json::parse(rep.to_json());

  CHECK(j["claim_id"] == "demo");
  CHECK(j["anchor"] == "lhs <= rhs");
  CHECK(j["parameters"]["n"] == "4");
  CHECK(j["parameters"]["seed"] == "1");
  CHECK(j["verdict"] == "pass");
  CHECK(j["runtime_ms"] == 7);
  CHECK(j["evidence_total"] == 2);
  REQUIRE(j["evidence"].size() == 2);
  CHECK(j["evidence"][0]["input"] == "a-case");
  CHECK(j["evidence"][1]["input"] == "b-case");
  CHECK(j["evidence"][0]["violation"] == false);
}

TEST_CASE("evidence cap keeps violations and reports the true total") {
  VerificationReport rep;
  rep.claim_id = "capped";
  rep.anchor = "x <= y";
  for (int i = 0; i < 50; ++i) {
    rep.add_row("row-" + std::to_string(100 + i), "0", "1", "0", false);
  }
  // Violations sort last by input label but must survive a tiny cap.
  rep.add_row("row-995", "2", "1", "0", true);
  rep.add_row("row-996", "3", "1", "0", true);
  rep.finalize();

  const json j = json::parse(rep.to_json(/*max_evidence=*/5));
  CHECK(j["evidence_total"] == 52);
  int violations = 0;
  for (const auto& row : j["evidence"]) {
    if (row["violation"].get<bool>()) ++violations;
  }
  CHECK(violations == 2);
  CHECK(j["evidence"].size() >= 5);
  CHECK(j["evidence"].size() <= 7);
  // Emitted rows stay sorted even after the violation-first selection.
  std::string prev;
  for (const auto& row : j["evidence"]) {
    const auto cur = row["input"].get<std::string>();
    CHECK(prev <= cur);
    prev = cur;
  }
}

TEST_CASE("reports_to_json emits one array entry per report") {
  VerificationReport a = sample_report();
  a.finalize();
  VerificationReport b = sample_report();
  b.claim_id = "other";
  b.finalize(true);
  const json j = json::parse(reports_to_json({a, b}));
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 2);
  CHECK(j[0]["claim_id"] == "demo");
  CHECK(j[1]["claim_id"] == "other");
  CHECK(j[1]["verdict"] == "inconclusive");
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

TEST_CASE("CSV has a header, full evidence, and escapes commas/quotes") {
  VerificationReport rep;
  rep.claim_id = "csv";
  rep.add_row("pair (1,2)", "say \"hi\"", "3", "0", true);
  rep.finalize();

  const std::string csv = rep.to_csv();
  CHECK(csv.find("input,lhs,rhs,slack,violation\n") == 0);
  CHECK(csv.find("\"pair (1,2)\"") != std::string::npos);
  CHECK(csv.find("\"say \"\"hi\"\"\"") != std::string::npos);
  CHECK(csv.find(",1\n") != std::string::npos);
}

TEST_CASE("reports_to_csv prefixes each row with its claim id") {
  VerificationReport a = sample_report();
  a.finalize();
  const std::string csv = reports_to_csv({a});
  CHECK(csv.find("claim_id,input,lhs,rhs,slack,violation\n") == 0);
  CHECK(csv.find("demo,a-case,") != std::string::npos);
  CHECK(csv.find("demo,b-case,") != std::string::npos);
}

// ---------------------------------------------------------------------------
// Cell formatting
// ---------------------------------------------------------------------------

TEST_CASE("cells print exact values as p/q and doubles round-trip") {
  CHECK(cell(Rat(1, 3)) == "1/3");
  CHECK(cell(Rat(4, 2)) == "2");
  CHECK(cell(Value(Rat(-5, 7))) == "-5/7");
  const double x = 0.1;
  CHECK(std::stod(cell(x)) == x);
  CHECK(cell(Value::inexact(0.5)) == "0.5");
}

// ---------------------------------------------------------------------------
// Shared JSON forms: step functions and distributions
// ---------------------------------------------------------------------------

TEST_CASE("step function JSON round-trips exact and inexact pieces") {
  const StepFunction x({{Rat(1, 3), Value(2)},
                        {Rat(1, 6), Value(Rat(7, 5))},
                        {Rat(1, 2), Value::inexact(0.25)}});
  const StepFunction y = step_function_from_json(step_function_to_json(x));
  REQUIRE(y.pieces().size() == x.pieces().size());
  for (std::size_t i = 0; i < x.pieces().size(); ++i) {
    CHECK(y.pieces()[i].len == x.pieces()[i].len);
    CHECK(y.pieces()[i].val.same(x.pieces()[i].val));
    CHECK(y.pieces()[i].val.is_exact() == x.pieces()[i].val.is_exact());
  }
}

TEST_CASE("step function JSON rejects malformed documents") {
  CHECK_THROWS_AS(step_function_from_json("{}"), std::invalid_argument);
  CHECK_THROWS(step_function_from_json("{\"pieces\": [{\"len\": \"1\"}]}"));
}

TEST_CASE("distribution JSON round-trips atoms and keeps ledgers") {
  DiscreteDistribution d({{Value(0), Rat(1, 2)},
                          {Value(Rat(3, 2)), Rat(1, 4)},
                          {Value(2), Rat(1, 8)}},
                         Rat(1, 8), Rat(1, 4));
  const DiscreteDistribution e =
      distribution_from_json(distribution_to_json(d));
  REQUIRE(e.atoms().size() == d.atoms().size());
  for (std::size_t i = 0; i < d.atoms().size(); ++i) {
    CHECK(e.atoms()[i].v.same(d.atoms()[i].v));
    CHECK(e.atoms()[i].m == d.atoms()[i].m);
  }
  // The ledgers pass through a double, so demand closeness, not equality.
  CHECK(to_double(e.tail()) == doctest::Approx(0.125).epsilon(1e-12));
  CHECK(to_double(e.tail_l1()) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("distribution JSON rejects malformed documents") {
  CHECK_THROWS_AS(distribution_from_json("{\"tail\": 0}"),
                  std::invalid_argument);
}
