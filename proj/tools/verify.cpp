// verify: command-line front end for the claim checks.
//
//   verify <claim-id> [flags]      run one check, print its JSON report
//   verify all [flags]             run every check, print a JSON array
//
// Exit code 0 when every requested verdict is "pass", 1 when any is "fail",
// 2 when any is "inconclusive" and none fail.  Usage and parameter errors
// exit with other nonzero codes.

#include <CLI11.hpp>

#include <kruglov/checks.hpp>
#include <kruglov/gauge.hpp>
#include <kruglov/report.hpp>

#include <cstdint>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace {

using namespace kruglov;

struct Options {
  std::string claim;
  std::vector<unsigned> n;                 // size budget(s); meaning per claim
  std::optional<unsigned> m_max;
  std::vector<std::string> eps;            // rational or decimal literals
  std::optional<std::string> gauge;
  std::vector<double> p;
  std::optional<unsigned> trials;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> tail_tol;     // rational or decimal literal
  std::optional<std::string> prune_theta;  // rational or decimal literal
  std::optional<unsigned> grid;
  std::optional<double> series_tol;
  std::optional<double> value_cap;
  std::vector<std::string> vectors;        // comma-separated rational entries
  std::optional<std::string> matrix;
  std::size_t max_evidence = 200;
  std::string out_path;
  std::string csv_path;
};

unsigned first_n(const Options& o, unsigned fallback) {
  return o.n.empty() ? fallback : o.n.front();
}

Rat rat_flag(const std::optional<std::string>& s, const Rat& fallback) {
  return s ? rat_from_decimal(*s) : fallback;
}

std::vector<Rat> parse_rat_list(const std::vector<std::string>& items) {
  std::vector<Rat> out;
  out.reserve(items.size());
  for (const auto& s : items) out.push_back(rat_from_decimal(s));
  return out;
}

// "--a 1,2,3" (repeatable) -> one vector of rationals per occurrence.
std::vector<std::vector<Rat>> parse_vector_list(
    const std::vector<std::string>& items) {
  std::vector<std::vector<Rat>> out;
  for (const auto& spec : items) {
    std::vector<Rat> v;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (!tok.empty()) v.push_back(rat_from_decimal(tok));
    }
    if (v.empty()) {
      throw std::invalid_argument("empty vector literal '" + spec + "'");
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<unsigned> parse_unsigned_list(const std::vector<double>& items,
                                          const char* what) {
  std::vector<unsigned> out;
  out.reserve(items.size());
  for (double d : items) {
    if (!(d >= 0.0) || d != std::floor(d) || d > 1e9) {
      throw std::invalid_argument(std::string(what) +
                                  " must be a nonnegative integer");
    }
    out.push_back(static_cast<unsigned>(d));
  }
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

VerificationReport run_criterion(const Options& o) {
  const std::string spec = o.gauge.value_or("power:1");
  const unsigned grid = o.grid.value_or(1024);
  const double tol = o.series_tol.value_or(1e-9);
  const double cap = o.value_cap.value_or(1e6);
  constexpr const char* kPrefix = "tabulated:";
  if (spec.rfind(kPrefix, 0) == 0) {
    const std::string path = spec.substr(std::string(kPrefix).size());
    const ConcaveGauge gauge =
        ConcaveGauge::tabulated(step_function_from_json(slurp(path)));
    return check_criterion(gauge, spec, grid, tol, cap);
  }
  return check_criterion(spec, grid, tol, cap);
}

VerificationReport run_claim(const std::string& claim, const Options& o) {
  if (claim == "lemma2") {
    return check_lemma2(first_n(o, 6),
                        rat_flag(o.tail_tol, Rat(Int(1), Int("1000000000000"))));
  }
  if (claim == "lemma5") {
    const unsigned cap = o.value_cap
                             ? parse_unsigned_list({*o.value_cap},
                                                   "--value-cap")[0]
                             : 8u;
    return check_lemma5(first_n(o, 4), o.m_max.value_or(4),
                        o.trials.value_or(100), cap, o.seed.value_or(1));
  }
  if (claim == "lemma6") return check_lemma6(first_n(o, 200));
  if (claim == "lemma7") {
    return check_lemma7(o.m_max.value_or(64), parse_vector_list(o.vectors));
  }
  if (claim == "remark-counterexample") return check_remark(o.n);
  if (claim == "theorem1") {
    return check_theorem1(
        parse_rat_list(o.eps), first_n(o, 6),
        rat_flag(o.tail_tol, Rat(Int(1), Int("10000000000"))),
        rat_flag(o.prune_theta, Rat(Int(1), Int("1000000000000000"))));
  }
  if (claim == "criterion") return run_criterion(o);
  if (claim == "theorem8") {
    return check_theorem8(first_n(o, 6),
                          rat_flag(o.tail_tol,
                                   Rat(Int(1), Int("1000000000000"))));
  }
  if (claim == "corollary10") {
    return check_corollary10(first_n(o, 4), o.matrix.value_or("all"),
                             o.seed.value_or(1));
  }
  if (claim == "corollary12") return check_corollary12(o.p, o.n);
  if (claim == "corollary13") {
    return check_corollary13(parse_unsigned_list(o.p, "--p"), first_n(o, 12),
                             o.trials.value_or(20), o.seed.value_or(1));
  }
  throw std::invalid_argument("unknown claim id '" + claim + "'");
}

const std::vector<std::string>& claim_ids() {
  static const std::vector<std::string> ids = {
      "lemma2",      "lemma5",      "lemma6",      "lemma7",
      "remark-counterexample",      "theorem1",    "criterion",
      "theorem8",    "corollary10", "corollary12", "corollary13"};
  return ids;
}

void write_or_print(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write '" + path + "'");
  out << text << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Runs exact distribution-level claim checks and emits JSON verdict "
      "reports.\nExit codes: 0 all pass, 1 any fail, 2 any inconclusive "
      "(and none fail)."};
  app.get_formatter()->column_width(26);

  Options o;
  std::vector<std::string> ids = claim_ids();
  ids.push_back("all");
  app.add_option("claim", o.claim,
                 "claim id to check, or `all` for every check")
      ->required()
      ->check(CLI::IsMember(ids));
  app.add_option("--n", o.n,
                 "size budget(s): step/iterate count (lemma2), max vector "
                 "length (lemma5, corollary13), max table row (lemma6), "
                 "series depth (theorem1, theorem8), matrix side "
                 "(corollary10), or explicit sweep list (remark, "
                 "corollary12)");
  app.add_option("--m-max", o.m_max,
                 "largest approximant index to search (lemma5, lemma7)");
  app.add_option("--eps", o.eps,
                 "gauge family parameters in (0,1), rational or decimal "
                 "(theorem1)");
  app.add_option("--gauge", o.gauge,
                 "gauge spec: power:alpha, paper-psi[:a], "
                 "eps-family:eps:n_max, or tabulated:<density.json> "
                 "(criterion)");
  app.add_option("--p", o.p,
                 "exponent sweep (corollary12 decimals, corollary13 "
                 "integers)");
  app.add_option("--trials", o.trials,
                 "number of seeded random vectors (lemma5, corollary13)");
  app.add_option("--seed", o.seed,
                 "RNG seed, echoed in the report (lemma5, corollary10, "
                 "corollary13)");
  app.add_option("--tail-tol", o.tail_tol,
                 "certified series-truncation budget, rational or decimal "
                 "(lemma2, theorem1, theorem8)");
  app.add_option("--prune-theta", o.prune_theta,
                 "per-step mass-pruning threshold with ledger charge "
                 "(theorem1)");
  app.add_option("--grid", o.grid, "sup-search grid size (criterion)");
  app.add_option("--tol", o.series_tol,
                 "relative series-tail stopping tolerance (criterion)");
  app.add_option("--value-cap", o.value_cap,
                 "random entry cap (lemma5) or divergence sentinel "
                 "(criterion)");
  app.add_option("--a", o.vectors,
                 "explicit input vector as comma-separated rationals, "
                 "repeatable (lemma7)");
  app.add_option("--matrix", o.matrix,
                 "matrix battery: diag, ones, zero, random, or all "
                 "(corollary10)");
  app.add_option("--max-evidence", o.max_evidence,
                 "cap on embedded JSON evidence rows; violations always kept")
      ->capture_default_str();
  app.add_option("--out", o.out_path, "write the JSON report here instead of "
                                      "stdout");
  app.add_option("--csv", o.csv_path, "also write the full evidence table as "
                                      "CSV");
  app.set_config("--config", "",
                 "key=value file preloading any of the flags above; "
                 "command-line values win");

  CLI11_PARSE(app, argc, argv);

  try {
    if (o.claim == "all") {
      std::vector<VerificationReport> reports;
      reports.reserve(claim_ids().size());
      for (const auto& id : claim_ids()) {
        Options defaults;  // `all` runs the documented default budgets
        defaults.seed = o.seed;
        reports.push_back(run_claim(id, defaults));
      }
      write_or_print(reports_to_json(reports, o.max_evidence), o.out_path);
      if (!o.csv_path.empty()) {
        write_or_print(reports_to_csv(reports), o.csv_path);
      }
      return combined_exit_code(reports);
    }

    const VerificationReport rep = run_claim(o.claim, o);
    write_or_print(rep.to_json(o.max_evidence), o.out_path);
    if (!o.csv_path.empty()) write_or_print(rep.to_csv(), o.csv_path);
    return rep.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "verify: error: " << e.what() << '\n';
    return 64;
  }
}
