#include "kruglov/report.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace kruglov {

using ordered_json = nlohmann::ordered_json;

namespace {

std::vector<const EvidenceRow*> sorted_rows(
    const std::vector<EvidenceRow>& evidence) {
  std::vector<const EvidenceRow*> rows;
  rows.reserve(evidence.size());
  for (const auto& r : evidence) rows.push_back(&r);
  std::stable_sort(rows.begin(), rows.end(),
                   [](const EvidenceRow* a, const EvidenceRow* b) {
                     return a->input < b->input;
                   });
  return rows;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

void csv_rows(std::string& out, const std::string& prefix,
              const std::vector<EvidenceRow>& evidence) {
  for (const EvidenceRow* r : sorted_rows(evidence)) {
    out += prefix;
    out += csv_escape(r->input);
    out += ',';
    out += csv_escape(r->lhs);
    out += ',';
    out += csv_escape(r->rhs);
    out += ',';
    out += csv_escape(r->slack);
    out += ',';
    out += r->violation ? "1" : "0";
    out += '\n';
  }
}

ordered_json report_to_json_value(const VerificationReport& rep,
                                  std::size_t max_evidence) {
  ordered_json j;
  j["claim_id"] = rep.claim_id;
  j["anchor"] = rep.anchor;
  ordered_json params = ordered_json::object();
  for (const auto& [k, v] : rep.parameters) params[k] = v;
  j["parameters"] = params;
  j["verdict"] = rep.verdict;

  // Violations always make the document; the rest fills up to the cap.
  auto rows = sorted_rows(rep.evidence);
  std::stable_partition(rows.begin(), rows.end(),
                        [](const EvidenceRow* r) { return r->violation; });
  ordered_json ev = ordered_json::array();
  std::size_t emitted = 0;
  for (const EvidenceRow* r : rows) {
    if (emitted >= max_evidence && !r->violation) continue;
    ordered_json row;
    row["input"] = r->input;
    row["lhs"] = r->lhs;
    row["rhs"] = r->rhs;
    row["slack"] = r->slack;
    row["violation"] = r->violation;
    ev.push_back(std::move(row));
    ++emitted;
  }
  // Re-sort the emitted rows by input for stable output.
  std::sort(ev.begin(), ev.end(),
            [](const ordered_json& a, const ordered_json& b) {
              return a["input"].get_ref<const std::string&>() <
                     b["input"].get_ref<const std::string&>();
            });
  j["evidence"] = std::move(ev);
  j["evidence_total"] = rep.evidence.size();
  j["runtime_ms"] = rep.runtime_ms;
  return j;
}

}  // namespace

void VerificationReport::add_param(const std::string& key,
                                   const std::string& value) {
  parameters.emplace_back(key, value);
}

void VerificationReport::add_row(std::string input, std::string lhs,
                                 std::string rhs, std::string slack,
                                 bool violation) {
  evidence.push_back({std::move(input), std::move(lhs), std::move(rhs),
                      std::move(slack), violation});
}

bool VerificationReport::any_violation() const {
  return std::any_of(evidence.begin(), evidence.end(),
                     [](const EvidenceRow& r) { return r.violation; });
}

void VerificationReport::finalize(bool inconclusive) {
  if (any_violation()) {
    verdict = "fail";
  } else if (inconclusive) {
    verdict = "inconclusive";
  } else {
    verdict = "pass";
  }
}

int VerificationReport::exit_code() const {
  if (verdict == "pass") return 0;
  if (verdict == "fail") return 1;
  return 2;
}

std::string VerificationReport::to_json(std::size_t max_evidence) const {
  return report_to_json_value(*this, max_evidence).dump(2);
}

std::string VerificationReport::to_csv() const {
  std::string out = "input,lhs,rhs,slack,violation\n";
  csv_rows(out, "", evidence);
  return out;
}

std::string reports_to_json(const std::vector<VerificationReport>& reports,
                            std::size_t max_evidence) {
  ordered_json arr = ordered_json::array();
  for (const auto& r : reports) {
    arr.push_back(report_to_json_value(r, max_evidence));
  }
  return arr.dump(2);
}

std::string reports_to_csv(const std::vector<VerificationReport>& reports) {
  std::string out = "claim_id,input,lhs,rhs,slack,violation\n";
  for (const auto& r : reports) {
    csv_rows(out, csv_escape(r.claim_id) + ",", r.evidence);
  }
  return out;
}

int combined_exit_code(const std::vector<VerificationReport>& reports) {
  int code = 0;
  for (const auto& r : reports) {
    const int c = r.exit_code();
    if (c == 1) return 1;
    if (c == 2) code = 2;
  }
  return code;
}

// --- shared JSON forms ----------------------------------------------------

namespace {

ordered_json value_to_json(const Value& v) {
  if (v.is_exact()) return ordered_json(rat_to_string(v.rational()));
  return ordered_json(v.as_double());
}

Value value_from_json(const ordered_json& j) {
  if (j.is_string()) return Value(rat_from_string(j.get<std::string>()));
  if (j.is_number()) return Value::inexact(j.get<double>());
  throw std::invalid_argument("value: expected \"p/q\" string or number");
}

}  // namespace

std::string cell(const Value& v) {
  return v.is_exact() ? rat_to_string(v.rational()) : cell(v.as_double());
}

std::string cell(const Rat& r) { return rat_to_string(r); }

std::string cell(double d) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), d);
  return std::string(buf, res.ptr);
}

std::string step_function_to_json(const StepFunction& x) {
  ordered_json j;
  ordered_json pieces = ordered_json::array();
  for (const auto& p : x.pieces()) {
    ordered_json piece;
    piece["len"] = rat_to_string(p.len);
    piece["val"] = value_to_json(p.val);
    pieces.push_back(std::move(piece));
  }
  j["pieces"] = std::move(pieces);
  return j.dump();
}

StepFunction step_function_from_json(const std::string& text) {
  const auto j = ordered_json::parse(text);
  if (!j.contains("pieces") || !j["pieces"].is_array()) {
    throw std::invalid_argument("step function: missing \"pieces\" array");
  }
  std::vector<Piece> pieces;
  for (const auto& pj : j["pieces"]) {
    pieces.push_back({rat_from_string(pj.at("len").get<std::string>()),
                      value_from_json(pj.at("val"))});
  }
  return StepFunction(std::move(pieces));
}

std::string distribution_to_json(const DiscreteDistribution& d) {
  ordered_json j;
  ordered_json atoms = ordered_json::array();
  for (const auto& a : d.atoms()) {
    ordered_json atom;
    atom["v"] = value_to_json(a.v);
    atom["m"] = rat_to_string(a.m);
    atoms.push_back(std::move(atom));
  }
  j["atoms"] = std::move(atoms);
  j["tail"] = to_double(d.tail());
  j["tail_l1"] = to_double(d.tail_l1());
  return j.dump();
}

DiscreteDistribution distribution_from_json(const std::string& text) {
  const auto j = ordered_json::parse(text);
  if (!j.contains("atoms") || !j["atoms"].is_array()) {
    throw std::invalid_argument("distribution: missing \"atoms\" array");
  }
  std::vector<Atom> atoms;
  for (const auto& aj : j["atoms"]) {
    atoms.push_back({value_from_json(aj.at("v")),
                     rat_from_string(aj.at("m").get<std::string>())});
  }
  Rat tail(0), tail_l1(0);
  if (j.contains("tail")) tail = rat_from_double(j["tail"].get<double>());
  if (j.contains("tail_l1")) {
    tail_l1 = rat_from_double(j["tail_l1"].get<double>());
  }
  return DiscreteDistribution(std::move(atoms), tail, tail_l1);
}

}  // namespace kruglov
