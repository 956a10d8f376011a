// Oracles and generators shared by the test binaries. Everything here is
// deliberately naive: trial division, truth tables, completion enumeration.

#ifndef QUANTSCOPE_TESTS_SUPPORT_HPP
#define QUANTSCOPE_TESTS_SUPPORT_HPP

#include <cstdint>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "quantscope/arith.hpp"
#include "quantscope/judgment.hpp"
#include "quantscope/kb.hpp"
#include "quantscope/parser.hpp"

namespace qs_test {

using namespace quantscope;

inline bool trial_division_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

inline std::uint64_t trial_division_count(std::uint64_t limit) {
  std::uint64_t count = 0;
  for (std::uint64_t n = 1; n <= limit; ++n) count += trial_division_prime(n) ? 1 : 0;
  return count;
}

// Direct recursive semantics over the AST, primes by trial division.
inline bool oracle_eval(const ArithFormula& f, std::uint64_t n) {
  const auto& node = f.node();
  if (std::holds_alternative<formula::Prime>(node)) return trial_division_prime(n);
  if (auto* d = std::get_if<formula::Divides>(&node)) return n % d->divisor == 0;
  if (auto* c = std::get_if<formula::Congruence>(&node)) return n % c->modulus == c->residue;
  if (auto* c = std::get_if<formula::Compare>(&node)) {
    switch (c->op) {
    case Comparison::Less: return n < c->bound;
    case Comparison::LessEq: return n <= c->bound;
    case Comparison::Greater: return n > c->bound;
    case Comparison::GreaterEq: return n >= c->bound;
    }
  }
  if (auto* x = std::get_if<formula::Not>(&node)) return !oracle_eval(x->operand, n);
  if (auto* x = std::get_if<formula::And>(&node)) return oracle_eval(x->lhs, n) && oracle_eval(x->rhs, n);
  auto& x = std::get<formula::Or>(node);
  return oracle_eval(x.lhs, n) || oracle_eval(x.rhs, n);
}

inline std::uint64_t oracle_count(const ArithFormula& f, std::uint64_t limit) {
  std::uint64_t count = 0;
  for (std::uint64_t n = 1; n <= limit; ++n) count += oracle_eval(f, n) ? 1 : 0;
  return count;
}

struct FormulaShape {
  int depth = 3;
  bool allow_prime = false;
  std::uint64_t max_modulus = 12;
  std::uint64_t max_constant = 50;
};

inline ArithFormula random_formula(std::mt19937_64& rng, const FormulaShape& shape, int depth = -1) {
  if (depth < 0) depth = shape.depth;
  auto pick = [&](std::uint64_t lo, std::uint64_t hi) { return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng); };
  const std::uint64_t kinds = shape.allow_prime ? 4 : 3;
  if (depth == 0 || pick(0, 2) == 0) {
    switch (pick(shape.allow_prime ? 0 : 1, kinds)) {
    case 0: return ArithFormula::prime();
    case 1: return ArithFormula::divides(pick(1, shape.max_modulus));
    case 2: {
      const std::uint64_t m = pick(1, shape.max_modulus);
      return ArithFormula::congruence(m, pick(0, m - 1));
    }
    default: return ArithFormula::compare(static_cast<Comparison>(pick(0, 3)), pick(0, shape.max_constant));
    }
  }
  switch (pick(0, 2)) {
  case 0: return ArithFormula::negation(random_formula(rng, shape, depth - 1));
  case 1: return ArithFormula::conjunction(random_formula(rng, shape, depth - 1), random_formula(rng, shape, depth - 1));
  default: return ArithFormula::disjunction(random_formula(rng, shape, depth - 1), random_formula(rng, shape, depth - 1));
  }
}

// One concept C, individuals x0..x{n-1} of C, facts on p: +1 known true,
// -1 known false, 0 unknown.
inline KnowledgeBase small_kb(const std::vector<int>& facts) {
  KnowledgeBase::Builder b;
  b.add_concept(ConceptId("C"));
  for (std::size_t i = 0; i < facts.size(); ++i) {
    const IndividualId x("x" + std::to_string(i));
    b.add_individual(x, ConceptId("C"));
    if (facts[i] != 0) b.add_fact(x, Literal{PredicateId("p"), facts[i] > 0});
  }
  return b.build();
}

inline std::vector<int> total_assignment(int n, unsigned mask) {
  std::vector<int> facts(n);
  for (int i = 0; i < n; ++i) facts[i] = (mask >> i) & 1U ? 1 : -1;
  return facts;
}

// Base-3 digit i of code selects -1, 0 or +1.
inline std::vector<int> partial_assignment(int n, unsigned code) {
  std::vector<int> facts(n);
  for (int i = 0; i < n; ++i, code /= 3) facts[i] = static_cast<int>(code % 3) - 1;
  return facts;
}

using TruthTable = std::function<bool(const std::vector<bool>&)>;

inline bool each_truth(const std::vector<bool>& v) {
  for (bool b : v) if (!b) return false;
  return true;
}
inline bool some_truth(const std::vector<bool>& v) {
  for (bool b : v) if (b) return true;
  return false;
}
inline bool no_truth(const std::vector<bool>& v) { return !some_truth(v); }
inline bool not_all_truth(const std::vector<bool>& v) { return !each_truth(v); }
inline bool majority_truth(const std::vector<bool>& v) {
  std::size_t yes = 0;
  for (bool b : v) yes += b ? 1 : 0;
  return 2 * yes > v.size();
}

// Asserted when true in every completion of the unknown facts, Refuted when
// false in every completion.
inline Verdict supervaluate(const std::vector<int>& facts, const TruthTable& truth) {
  std::vector<std::size_t> unknown;
  for (std::size_t i = 0; i < facts.size(); ++i) if (facts[i] == 0) unknown.push_back(i);
  bool seen_true = false, seen_false = false;
  for (unsigned mask = 0; mask < (1U << unknown.size()); ++mask) {
    std::vector<bool> v(facts.size());
    for (std::size_t i = 0; i < facts.size(); ++i) v[i] = facts[i] > 0;
    for (std::size_t k = 0; k < unknown.size(); ++k) v[unknown[k]] = (mask >> k) & 1U;
    (truth(v) ? seen_true : seen_false) = true;
  }
  if (!seen_false) return Verdict::Asserted;
  if (!seen_true) return Verdict::Refuted;
  return Verdict::Undetermined;
}

inline Statement stmt(QuantifierKind q, bool positive = true) {
  return concept_statement(q, "C", "p", positive);
}

inline std::string source_path(const std::string& relative) {
  return std::string(QUANTSCOPE_SOURCE_DIR) + "/" + relative;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline KnowledgeBase load_kb(const std::string& relative) {
  auto parsed = parse_kb(read_file(source_path(relative)));
  return std::get<KnowledgeBase>(std::move(parsed));
}

inline KnowledgeBase kb_from(const std::string& text) { return std::get<KnowledgeBase>(parse_kb(text)); }

} // namespace qs_test

#endif // QUANTSCOPE_TESTS_SUPPORT_HPP
