// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <iostream>
#include <sstream>

#include "../tools/cli.hpp"
#include "quantscope/logic.hpp"
#include "support.hpp"

using namespace quantscope;
using namespace qs_test;

namespace {

using Clock = std::chrono::steady_clock;

// Pinned tolerances.
constexpr double kDensitySeconds = 5.0;
constexpr double kOracleSeconds = 10.0;
constexpr double kEstimateTolerance = 0.01;
constexpr std::uint64_t kEstimateBound = 100'000;
constexpr int kRandomFormulas = 200;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

struct CliRun {
  int code;
  std::string out;
};

CliRun cli(std::vector<std::string> args) {
  for (auto& a : args) {
    if (a.starts_with("data/")) a = source_path(a);
  }
  std::istringstream in;
  std::ostringstream out, err;
  const int code = cli::run(args, in, out, err);
  return {code, out.str()};
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(3);
  s << x;
  return s.str();
}

Outcome prime_density() {
  Outcome o;
  const auto start = Clock::now();
  const auto r = cli({"density", "prime"});
  const double elapsed = seconds_since(start);
  o.require(r.code == 0, "exit code " + std::to_string(r.code));

  const std::uint64_t bounds[] = {1'000, 10'000, 100'000, 1'000'000};
  std::istringstream lines(r.out);
  std::string line;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> rows;
  while (std::getline(lines, line)) {
    std::istringstream fields(line);
    std::uint64_t n = 0, count = 0;
    if (fields >> n >> count) rows.emplace_back(n, count);
  }
  o.require(rows.size() == 4, "expected 4 table rows");
  double last_ratio = 2.0;
  for (std::size_t i = 0; i < rows.size() && i < 4; ++i) {
    const auto expected = trial_division_count(bounds[i]);
    o.require(rows[i].first == bounds[i], "unexpected bound " + std::to_string(rows[i].first));
    o.require(rows[i].second == expected,
              "count at " + std::to_string(bounds[i]) + " is " + std::to_string(rows[i].second) + ", oracle " +
                  std::to_string(expected));
    const double ratio = static_cast<double>(rows[i].second) / static_cast<double>(rows[i].first);
    o.require(ratio < last_ratio, "ratios not strictly decreasing");
    last_ratio = ratio;
  }
  o.require(elapsed < kDensitySeconds, "took " + fmt(elapsed) + " s");
  if (o.pass) o.detail = "counts 168/1229/9592/78498 match trial division in " + fmt(elapsed) + " s";
  return o;
}

Outcome sentence_pair() {
  Outcome o;
  const int expected[] = {1, 0, 3, 3};
  const std::vector<std::string> runs[] = {
      {"eval", "-", "majority Nat prime"},
      {"eval", "-", "majority Nat !prime"},
      {"eval", "--semantics", "cardinality", "-", "majority Nat prime"},
      {"eval", "--semantics", "cardinality", "-", "majority Nat !prime"},
  };
  std::string codes;
  for (int i = 0; i < 4; ++i) {
    const auto r = cli(runs[i]);
    codes += (i ? "/" : "") + std::to_string(r.code);
    o.require(r.code == expected[i], "exit codes " + codes);
    if (i >= 2) o.require(r.out.find("equal infinite cardinality") != std::string::npos, "missing degenerate note");
  }
  if (o.pass) o.detail = "exit codes " + codes;
  return o;
}

Outcome dog_dialogue() {
  Outcome o;
  const auto kb = load_kb("data/dogs.qkb");
  const auto every = evaluate(parse_statement("every Dog may_bite"), kb);
  o.require(every.verdict == Verdict::Refuted, "every: not Refuted");
  const auto* conceptual = std::get_if<evidence::ConceptualCounterexample>(&every.evidence);
  o.require(conceptual && conceptual->concept_id == ConceptId("BassetHound"), "every: primary evidence");
  bool rex = false;
  for (const auto& e : every.context) {
    if (const auto* ind = std::get_if<evidence::IndividualCounterexample>(&e)) rex = rex || ind->subject == "Rex";
  }
  o.require(rex, "every: Rex not reported");

  const auto each = evaluate(parse_statement("each Dog may_bite"), kb);
  const auto* ind = std::get_if<evidence::IndividualCounterexample>(&each.evidence);
  o.require(each.verdict == Verdict::Refuted && ind && ind->subject == "Rex", "each: not refuted by Rex");

  const std::pair<const char*, const char*> goldens[] = {{"every Dog may_bite", "dog_every.txt"},
                                                         {"each Dog may_bite", "dog_each.txt"}};
  for (const auto& [text, file] : goldens) {
    for (int repeat = 0; repeat < 2; ++repeat) {
      o.require(cli({"eval", "data/dogs.qkb", text}).out == read_file(source_path(std::string("tests/golden/") + file)),
                std::string(file) + " differs");
    }
  }
  if (o.pass) o.detail = "BassetHound primary, Rex in context, goldens byte-identical";
  return o;
}

const QuantifierKind kFinite[] = {QuantifierKind::EachDistributive, QuantifierKind::Exists, QuantifierKind::NoNeg,
                                  QuantifierKind::NotAll, QuantifierKind::Majority};

bool truth(QuantifierKind q, const std::vector<bool>& v) {
  switch (q) {
  case QuantifierKind::EachDistributive: return each_truth(v);
  case QuantifierKind::Exists: return some_truth(v);
  case QuantifierKind::NoNeg: return no_truth(v);
  case QuantifierKind::NotAll: return not_all_truth(v);
  default: return majority_truth(v);
  }
}

template <class Fn>
void for_each_total_model(Fn&& fn) {
  for (int n = 0; n <= 4; ++n) {
    for (unsigned mask = 0; mask < (1U << n); ++mask) fn(n, mask);
  }
}

Outcome oracle_equivalence() {
  Outcome o;
  EvalConfig cfg;
  cfg.majority_semantics = MajoritySemantics::Cardinality;
  int checked = 0, mismatches = 0;
  const auto start = Clock::now();
  for_each_total_model([&](int n, unsigned mask) {
    const auto facts = total_assignment(n, mask);
    const auto kb = small_kb(facts);
    std::vector<bool> v;
    for (int f : facts) v.push_back(f > 0);
    for (auto q : kFinite) {
      for (bool positive : {true, false}) {
        std::vector<bool> body = v;
        if (!positive) body.flip();
        const auto j = evaluate(stmt(q, positive), kb, cfg);
        ++checked;
        if (j.verdict != (truth(q, body) ? Verdict::Asserted : Verdict::Refuted)) ++mismatches;
      }
    }
  });
  const double elapsed = seconds_since(start);
  o.require(mismatches == 0, std::to_string(mismatches) + " mismatches");
  o.require(elapsed < kOracleSeconds, "took " + fmt(elapsed) + " s");
  if (o.pass) o.detail = std::to_string(checked) + " verdicts, 0 mismatches, " + fmt(elapsed) + " s";
  return o;
}

Outcome opposition_coherence() {
  Outcome o;
  int pairs = 0, violations = 0;
  for_each_total_model([&](int n, unsigned mask) {
    const auto kb = small_kb(total_assignment(n, mask));
    for (auto q : {QuantifierKind::EachDistributive, QuantifierKind::Exists}) {
      for (bool positive : {true, false}) {
        const Statement s = stmt(q, positive);
        const auto a = evaluate(s, kb).verdict;
        const auto b = evaluate(contradictory(s), kb).verdict;
        ++pairs;
        if (a == b) ++violations;
      }
    }
  });
  o.require(violations == 0, std::to_string(violations) + " violations");
  if (o.pass) o.detail = std::to_string(pairs) + " contradictory pairs, 0 violations";
  return o;
}

Outcome exact_density_laws() {
  Outcome o;
  std::mt19937_64 rng(2024);
  double worst = 0.0;
  for (int i = 0; i < kRandomFormulas; ++i) {
    const auto f = random_formula(rng, {3, false, 12, 50});
    const auto d = exact_density(f).exact().value;
    const auto c = exact_density(ArithFormula::negation(f)).exact().value;
    o.require(d + c == Rational(1), "complement law fails for " + render(f));
    const auto est = estimate_density(f, {kEstimateBound}).estimated().checkpoints.back().ratio;
    const double gap = std::abs(est - boost::rational_cast<double>(d));
    worst = std::max(worst, gap);
    o.require(gap <= kEstimateTolerance, "estimate off by " + fmt(gap) + " for " + render(f));
  }
  if (o.pass) o.detail = std::to_string(kRandomFormulas) + " formulas, worst estimate gap " + fmt(worst);
  return o;
}

Outcome strict_majority() {
  Outcome o;
  const auto evens = evaluate(parse_statement("majority Nat 2 | n"), KnowledgeBase());
  const auto* ev = std::get_if<evidence::DensityEvidence>(&evens.evidence);
  o.require(evens.verdict == Verdict::Refuted && ev && ev->exact_relative == Rational(1, 2), "majority Nat 2 | n");
  const auto split = evaluate(stmt(QuantifierKind::Majority), small_kb({1, 1, 1, 1, 1, -1, -1, -1, -1, -1}));
  o.require(split.verdict == Verdict::Refuted, "5/5 split");

  // Every exact-half finite split and every random formula of density 1/2.
  int boundary = 0;
  for (int n = 2; n <= 10; n += 2) {
    for (unsigned mask = 0; mask < (1U << n); ++mask) {
      if (std::popcount(mask) != n / 2) continue;
      ++boundary;
      o.require(evaluate(stmt(QuantifierKind::Majority), small_kb(total_assignment(n, mask))).verdict ==
                    Verdict::Refuted,
                "half split asserted");
    }
  }
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2'000; ++i) {
    const auto f = random_formula(rng, {3, false, 12, 50});
    const auto j = majority_by_density(nat_statement(QuantifierKind::Majority, f, true));
    const auto& de = std::get<evidence::DensityEvidence>(j.evidence);
    if (de.exact_relative && *de.exact_relative == Rational(1, 2)) {
      ++boundary;
      o.require(j.verdict != Verdict::Asserted, "density 1/2 asserted for " + render(f));
    }
  }
  if (o.pass) o.detail = std::to_string(boundary) + " boundary cases, none asserted";
  return o;
}

Outcome divergence() {
  Outcome o;
  const auto kb = load_kb("data/divergence.qkb");
  const auto s = parse_statement("each Dog may_bite");
  o.require(evaluate_distributive(s, kb).verdict == Verdict::Asserted, "distributive not Asserted");
  o.require(evaluate_generic(s, kb).verdict == Verdict::Refuted, "generic not Refuted");

  int models = 0, reverse = 0;
  for (int n = 0; n <= 4; ++n) {
    for (unsigned placement = 0; placement < (1U << n); ++placement) {
      for (unsigned mask = 0; mask < (1U << n); ++mask) {
        for (int e_axiom = -1; e_axiom <= 1; ++e_axiom) {
          KnowledgeBase::Builder b;
          b.add_concept(ConceptId("C"));
          b.add_concept(ConceptId("E"), {ConceptId("C")});
          b.add_axiom(ConceptId("C"), Literal{PredicateId("p"), true});
          if (e_axiom != 0) b.add_axiom(ConceptId("E"), Literal{PredicateId("p"), e_axiom > 0});
          for (int i = 0; i < n; ++i) {
            const IndividualId x("x" + std::to_string(i));
            b.add_individual(x, ConceptId((placement >> i) & 1U ? "E" : "C"));
            b.add_fact(x, Literal{PredicateId("p"), ((mask >> i) & 1U) != 0});
          }
          const auto family = b.build();
          ++models;
          if (evaluate_distributive(stmt(QuantifierKind::EachDistributive), family).verdict == Verdict::Refuted &&
              evaluate_generic(stmt(QuantifierKind::EveryGeneric), family).verdict == Verdict::Asserted)
            ++reverse;
        }
      }
    }
  }
  o.require(reverse == 0, std::to_string(reverse) + " reverse divergences");
  if (o.pass) o.detail = "witness KB diverges; 0 reverse divergences in " + std::to_string(models) + " models";
  return o;
}

Outcome proof_theoretic() {
  Outcome o;
  EvalConfig cfg;
  cfg.majority_semantics = MajoritySemantics::ProofTheoretic;
  const auto encounter = evaluate(parse_statement("majority Bird flies"), load_kb("data/majority_encounter.qkb"), cfg);
  o.require(encounter.verdict == Verdict::Asserted, "encounter KB not Asserted");
  const auto disjoint = evaluate(parse_statement("majority Animal aquatic"), load_kb("data/majority_disjoint.qkb"), cfg);
  o.require(disjoint.verdict == Verdict::Refuted, "disjoint KB not Refuted");
  const auto none =
      evaluate(parse_statement("majority Guest vegetarian"), load_kb("data/majority_no_knowledge.qkb"), cfg);
  o.require(none.verdict == Verdict::Undetermined, "empty list KB not Undetermined");
  o.require(explain(none).find("some knowledge is required") != std::string::npos, "missing note");
  if (o.pass) o.detail = "Asserted / Refuted / Undetermined";
  return o;
}

} // namespace

int main() {
  const std::pair<const char*, Outcome (*)()> criteria[] = {
      {"prime density reproduction", prime_density},
      {"sentence pair", sentence_pair},
      {"dog dialogue golden trace", dog_dialogue},
      {"oracle equivalence", oracle_equivalence},
      {"opposition coherence", opposition_coherence},
      {"exact density laws", exact_density_laws},
      {"strict-majority boundary", strict_majority},
      {"generic/distributive divergence", divergence},
      {"proof-theoretic majority", proof_theoretic},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, fn] : criteria) {
    ++index;
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << index << "  " << name << ": " << o.detail << "\n";
  }
  return failures == 0 ? 0 : 1;
}
