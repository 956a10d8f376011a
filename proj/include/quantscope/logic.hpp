// Statement AST, quantifier taxonomy and the square of opposition.

#ifndef QUANTSCOPE_LOGIC_HPP
#define QUANTSCOPE_LOGIC_HPP

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

#include "quantscope/arith.hpp"
#include "quantscope/symbols.hpp"

namespace quantscope {

// "each" ranges over the elements of a collection, "every" over the generic
// element. NotAll has no English determiner; it is the unlexicalised fourth
// corner.
enum class QuantifierKind { EachDistributive, EveryGeneric, Exists, NoNeg, NotAll, Majority };

enum class Corner { A, E, I, O };

std::string_view keyword(QuantifierKind q) noexcept;
std::string_view to_string(Corner c) noexcept;

// The positive integers, optionally cut down by a formula (the M of "the
// majority of M's").
struct NatDomain {
  std::optional<ArithFormula> filter;
  friend bool operator==(const NatDomain&, const NatDomain&) = default;
};

using Restriction = std::variant<ConceptId, NatDomain>;
using Body = std::variant<PredicateId, ArithFormula>;

struct Statement {
  QuantifierKind quantifier = QuantifierKind::EachDistributive;
  Restriction restriction;
  Body body;
  // false for a negated body: "some Laureate !deserves_award".
  bool positive = true;

  bool over_nat() const noexcept { return std::holds_alternative<NatDomain>(restriction); }

  friend bool operator==(const Statement&, const Statement&) = default;
};

// Shorthand constructors.
Statement concept_statement(QuantifierKind q, std::string concept_name, std::string predicate, bool positive = true);
Statement nat_statement(QuantifierKind q, ArithFormula body, bool positive = true,
                        std::optional<ArithFormula> filter = std::nullopt);

// Canonical surface form, e.g. "not_all Laureate deserves_award" or "majority Nat !prime".
std::string render(const Statement& s);

// Majority has no corner.
std::optional<Corner> opposition_corner(const Statement& s) noexcept;

// Same restriction and body at the contradictory corner: A<->O, E<->I. Both
// universal kinds map to NotAll, whose contradictory is EachDistributive.
// Throws Error(MajorityHasNoContradictoryCorner).
Statement contradictory(const Statement& s);

// The two equivalent surface forms of an O-corner statement: the "not all" form
// and the "some ... not" form. Throws Error(NotOCorner).
std::pair<Statement, Statement> o_corner_paraphrases(const Statement& s);

} // namespace quantscope

#endif // QUANTSCOPE_LOGIC_HPP
