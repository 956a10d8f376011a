#include "quantscope/logic.hpp"

#include "quantscope/error.hpp"

namespace quantscope {

std::string_view keyword(QuantifierKind q) noexcept {
  switch (q) {
  case QuantifierKind::EachDistributive: return "each";
  case QuantifierKind::EveryGeneric: return "every";
  case QuantifierKind::Exists: return "some";
  case QuantifierKind::NoNeg: return "no";
  case QuantifierKind::NotAll: return "not_all";
  case QuantifierKind::Majority: return "majority";
  }
  return "?";
}

std::string_view to_string(Corner c) noexcept {
  switch (c) {
  case Corner::A: return "A";
  case Corner::E: return "E";
  case Corner::I: return "I";
  case Corner::O: return "O";
  }
  return "?";
}

Statement concept_statement(QuantifierKind q, std::string concept_name, std::string predicate, bool positive) {
  return Statement{q, ConceptId(std::move(concept_name)), PredicateId(std::move(predicate)), positive};
}

Statement nat_statement(QuantifierKind q, ArithFormula body, bool positive, std::optional<ArithFormula> filter) {
  return Statement{q, NatDomain{std::move(filter)}, std::move(body), positive};
}

std::string render(const Statement& s) {
  std::string out(keyword(s.quantifier));
  out += ' ';
  if (const auto* c = std::get_if<ConceptId>(&s.restriction)) {
    out += c->str();
  } else {
    const auto& nat = std::get<NatDomain>(s.restriction);
    out += "Nat";
    if (nat.filter) out += "[" + render(*nat.filter) + "]";
  }
  out += ' ';
  if (const auto* p = std::get_if<PredicateId>(&s.body)) {
    out += (s.positive ? "" : "!") + p->str();
  } else {
    const auto& f = std::get<ArithFormula>(s.body);
    out += render(s.positive ? f : ArithFormula::negation(f));
  }
  return out;
}

std::optional<Corner> opposition_corner(const Statement& s) noexcept {
  switch (s.quantifier) {
  case QuantifierKind::EachDistributive:
  case QuantifierKind::EveryGeneric: return Corner::A;
  case QuantifierKind::NoNeg: return Corner::E;
  case QuantifierKind::Exists: return Corner::I;
  case QuantifierKind::NotAll: return Corner::O;
  case QuantifierKind::Majority: return std::nullopt;
  }
  return std::nullopt;
}

Statement contradictory(const Statement& s) {
  Statement out = s;
  switch (s.quantifier) {
  case QuantifierKind::EachDistributive:
  case QuantifierKind::EveryGeneric: out.quantifier = QuantifierKind::NotAll; break;
  case QuantifierKind::NotAll: out.quantifier = QuantifierKind::EachDistributive; break;
  case QuantifierKind::NoNeg: out.quantifier = QuantifierKind::Exists; break;
  case QuantifierKind::Exists: out.quantifier = QuantifierKind::NoNeg; break;
  case QuantifierKind::Majority:
    throw Error(ErrorCode::MajorityHasNoContradictoryCorner,
                "'" + render(s) + "' sits outside the square; its dual is handled by the majority rules");
  }
  return out;
}

std::pair<Statement, Statement> o_corner_paraphrases(const Statement& s) {
  if (s.quantifier != QuantifierKind::NotAll) {
    throw Error(ErrorCode::NotOCorner, "'" + render(s) + "' is not at the O corner");
  }
  Statement some_not = s;
  some_not.quantifier = QuantifierKind::Exists;
  some_not.positive = !s.positive;
  return {s, some_not};
}

} // namespace quantscope
