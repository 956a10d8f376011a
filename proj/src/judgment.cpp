#include "quantscope/judgment.hpp"

#include <algorithm>

#include "quantscope/error.hpp"

namespace quantscope {

namespace {

using namespace evidence;

struct ConceptTarget {
  ConceptId concept_id;
  Literal literal;
};

struct NatTarget {
  ArithFormula body;  // polarity applied
  std::optional<ArithFormula> filter;

  ArithFormula members(const ArithFormula& f) const {
    return filter ? ArithFormula::conjunction(*filter, f) : f;
  }
};

void require_valid(const KnowledgeBase& kb) {
  const auto& report = kb.validation();
  if (report.ok()) return;
  for (const auto& issue : report.issues) {
    if (issue.severity == Severity::Error) {
      throw Error(ErrorCode::InvalidKnowledgeBase, to_string(issue.kind) + ": " + issue.message);
    }
  }
}

ConceptTarget concept_target(const Statement& s, const KnowledgeBase& kb) {
  require_valid(kb);
  const auto* c = std::get_if<ConceptId>(&s.restriction);
  if (!c) throw Error(ErrorCode::InfiniteRestriction, "'" + render(s) + "' ranges over Nat");
  if (!kb.has_concept(*c)) throw Error(ErrorCode::UnresolvableSymbol, "unknown concept '" + c->str() + "'");
  const auto* p = std::get_if<PredicateId>(&s.body);
  if (!p) throw Error(ErrorCode::UnresolvableSymbol, "an arithmetic body needs the Nat restriction");
  return {*c, Literal{*p, s.positive}};
}

NatTarget nat_target(const Statement& s) {
  const auto* nat = std::get_if<NatDomain>(&s.restriction);
  if (!nat) throw Error(ErrorCode::UnresolvableSymbol, "'" + render(s) + "' does not range over Nat");
  const auto* f = std::get_if<ArithFormula>(&s.body);
  if (!f) throw Error(ErrorCode::UnresolvableSymbol, "a Nat restriction needs an arithmetic body");
  return {s.positive ? *f : ArithFormula::negation(*f), nat->filter};
}

Judgment make(const Statement& s, Verdict v, Evidence e, std::string semantics) {
  return Judgment{s, v, std::move(e), {}, std::move(semantics), {}};
}

void note_unmentioned(Judgment& j, const KnowledgeBase& kb, const Literal& l) {
  if (!kb.has_predicate(l.predicate)) {
    j.notes.push_back("predicate '" + l.predicate.str() +
                      "' is not mentioned in the knowledge base; every fact about it is unknown");
  }
}

std::string fact_text(const IndividualId& x, const PredicateId& p, Sign s) {
  return "fact " + x.str() + " : " + (s == Sign::Positive ? "" : "!") + p.str();
}

std::string join(const std::vector<IndividualId>& xs) {
  std::string out;
  for (const auto& x : xs) out += (out.empty() ? "" : ", ") + x.str();
  return out;
}

// Instances split by what their facts say about a literal, in declaration order.
struct Tally {
  std::vector<IndividualId> satisfying;
  std::vector<IndividualId> falsifying;
  std::vector<IndividualId> unknown;
};

Tally tally(const KnowledgeBase& kb, const std::vector<IndividualId>& instances, const Literal& l) {
  Tally t;
  for (const auto& x : instances) {
    auto s = kb.fact(x, l.predicate);
    if (!s) {
      t.unknown.push_back(x);
    } else if (l.satisfied_by(*s)) {
      t.satisfying.push_back(x);
    } else {
      t.falsifying.push_back(x);
    }
  }
  return t;
}

OmegaProof fact_omega(const Literal& l, const std::vector<IndividualId>& xs) {
  OmegaProof proof{l, {}};
  for (const auto& x : xs) proof.checked.push_back({x, SignSource::Fact, std::nullopt});
  return proof;
}

std::string vacuous_note(const ConceptId& c) {
  return "vacuous: " + c.str() + " has no instances";
}

// Bounded search over Nat shared by every non-majority quantifier.
Judgment nat_bounded(const Statement& s, const EvalConfig& cfg) {
  const NatTarget t = nat_target(s);
  const std::string bound = std::to_string(cfg.search_bound);
  auto search = [&](const ArithFormula& f) { return first_satisfying(t.members(f), cfg.search_bound, cfg.limits); };
  auto holds = [](const ArithFormula& f) { return render(f) + " holds"; };
  auto fails = [](const ArithFormula& f) { return render(f) + " fails"; };

  switch (s.quantifier) {
  case QuantifierKind::Exists:
    if (auto n = search(t.body)) {
      return make(s, Verdict::Asserted, ExistentialWitness{std::to_string(*n), holds(t.body)}, "bounded-search");
    }
    return make(s, Verdict::Undetermined,
                Unsettled{"no witness up to " + bound + "; a bounded search never refutes an existential"},
                "bounded-search");
  case QuantifierKind::NoNeg:
    if (auto n = search(t.body)) {
      return make(s, Verdict::Refuted, IndividualCounterexample{std::to_string(*n), holds(t.body)},
                  "bounded-search");
    }
    return make(s, Verdict::Undetermined,
                Unsettled{"no counterexample up to " + bound + "; absence over Nat needs more than a bounded search"},
                "bounded-search");
  case QuantifierKind::NotAll:
    if (auto n = search(ArithFormula::negation(t.body))) {
      return make(s, Verdict::Asserted, ExistentialWitness{std::to_string(*n), fails(t.body)}, "bounded-search");
    }
    return make(s, Verdict::Undetermined,
                Unsettled{"every number up to " + bound + " satisfies the body; a bounded search never refutes"},
                "bounded-search");
  case QuantifierKind::EachDistributive:
  case QuantifierKind::EveryGeneric: {
    if (auto n = search(ArithFormula::negation(t.body))) {
      return make(s, Verdict::Refuted, IndividualCounterexample{std::to_string(*n), fails(t.body)},
                  "bounded-search");
    }
    Judgment j = make(s, Verdict::Undetermined,
                      Unsettled{"no counterexample up to " + bound +
                                "; the omega rule over Nat is not executable"},
                      "bounded-search");
    j.notes.push_back("use density semantics or a bounded check for claims over Nat");
    return j;
  }
  case QuantifierKind::Majority: break;
  }
  throw Error(ErrorCode::UnresolvableSymbol, "majority statements are not decided by bounded search");
}

bool non_decreasing(const std::vector<double>& r) { return std::is_sorted(r.begin(), r.end()); }
bool non_increasing(const std::vector<double>& r) { return std::is_sorted(r.rbegin(), r.rend()); }

bool last_three_close(const std::vector<double>& r, double epsilon) {
  if (r.size() < 3) return false;
  const double a = r[r.size() - 3], b = r[r.size() - 2], c = r[r.size() - 1];
  return std::abs(a - b) <= epsilon && std::abs(b - c) <= epsilon && std::abs(a - c) <= epsilon;
}

} // namespace

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
  case Verdict::Asserted: return "Asserted";
  case Verdict::Refuted: return "Refuted";
  case Verdict::Undetermined: return "Undetermined";
  case Verdict::Degenerate: return "Degenerate";
  }
  return "?";
}

std::string_view to_string(MajoritySemantics s) noexcept {
  switch (s) {
  case MajoritySemantics::Cardinality: return "cardinality";
  case MajoritySemantics::Density: return "density";
  case MajoritySemantics::ProofTheoretic: return "proof_theoretic";
  }
  return "?";
}

std::optional<MajoritySemantics> parse_majority_semantics(std::string_view text) noexcept {
  if (text == "cardinality") return MajoritySemantics::Cardinality;
  if (text == "density") return MajoritySemantics::Density;
  if (text == "proof_theoretic") return MajoritySemantics::ProofTheoretic;
  return std::nullopt;
}

std::string_view evidence_kind(const Evidence& e) noexcept {
  constexpr std::string_view names[] = {
      "OmegaProof",          "GenericProof",          "GenericClaim",         "ExistentialWitness",
      "IndividualCounterexample", "ConceptualCounterexample", "CardinalityComparison", "DensityEvidence",
      "EncounterProof",      "DualRefutation",        "IncompatibilityRefutation", "DegenerateCardinality",
      "Unsettled"};
  static_assert(std::size(names) == std::variant_size_v<Evidence>);
  return names[e.index()];
}

Judgment evaluate_distributive(const Statement& s, const KnowledgeBase& kb) {
  if (s.over_nat()) {
    throw Error(ErrorCode::InfiniteRestriction,
                "the omega rule over Nat is not executable; use density semantics or a bounded check");
  }
  const auto [c, lit] = concept_target(s, kb);
  const auto instances = kb.instances_of(c);

  if (instances.empty()) {
    Judgment j = make(s, Verdict::Asserted, OmegaProof{lit, {}}, "distributive");
    j.notes.push_back(vacuous_note(c));
    note_unmentioned(j, kb, lit);
    return j;
  }

  OmegaProof proof{lit, {}};
  std::vector<IndividualId> unknown;
  std::vector<std::string> notes;
  for (const auto& x : instances) {
    if (auto f = kb.fact(x, lit.predicate)) {
      if (!lit.satisfied_by(*f)) {
        Judgment j = make(s, Verdict::Refuted, IndividualCounterexample{x.str(), fact_text(x, lit.predicate, *f)},
                          "distributive");
        return j;
      }
      proof.checked.push_back({x, SignSource::Fact, std::nullopt});
      continue;
    }
    auto inherited = kb.entails_generic(*kb.concept_of(x), lit.predicate);
    if (inherited.sign() == lit.sign()) {
      proof.checked.push_back({x, SignSource::InheritedAxiom, inherited.derivation});
      notes.push_back(x.str() + " has no fact; its sign comes from the axiom on " +
                      inherited.derivation->source().str());
    } else {
      unknown.push_back(x);
      if (inherited.sign()) {
        notes.push_back(x.str() + " inherits the opposite sign from " + inherited.derivation->source().str() +
                        ", but only a fact refutes");
      }
    }
  }

  Judgment j = unknown.empty()
                   ? make(s, Verdict::Asserted, std::move(proof), "distributive")
                   : make(s, Verdict::Undetermined,
                          Unsettled{"no counterexample, but unknown for: " + join(unknown)}, "distributive");
  j.notes.insert(j.notes.end(), notes.begin(), notes.end());
  note_unmentioned(j, kb, lit);
  return j;
}

Judgment evaluate_generic(const Statement& s, const KnowledgeBase& kb) {
  if (s.over_nat()) {
    throw Error(ErrorCode::InfiniteRestriction, "generic evaluation needs a concept restriction");
  }
  const auto [c, lit] = concept_target(s, kb);
  const auto entailment = kb.entails_generic(c, lit.predicate);

  if (entailment.status == EntailmentStatus::Ambiguous) {
    std::string sources;
    for (const auto& d : entailment.conflicting) {
      sources += (sources.empty() ? "" : ", ") + d.source().str() + ":" + sign_char(d.sign) + lit.predicate.str();
    }
    Judgment j = make(s, Verdict::Undetermined,
                      Unsettled{"ambiguous inheritance for " + lit.predicate.str() + " on " + c.str() + ": " + sources},
                      "generic");
    j.notes.push_back("warning: AmbiguousInheritance treated as unknown");
    return j;
  }
  if (entailment.status == EntailmentStatus::Unknown) {
    Judgment j = make(s, Verdict::Undetermined,
                      Unsettled{"no axiom for " + lit.predicate.str() + " on " + c.str() + " or its ancestors"},
                      "generic");
    note_unmentioned(j, kb, lit);
    return j;
  }

  const GenericDerivation& derivation = *entailment.derivation;
  const Tally t = tally(kb, kb.instances_of(c), lit);
  std::optional<IndividualCounterexample> individual;
  if (!t.falsifying.empty()) {
    const auto& x = t.falsifying.front();
    individual = IndividualCounterexample{x.str(), fact_text(x, lit.predicate, flip(lit.sign()))};
  }

  if (derivation.sign != lit.sign()) {
    Judgment j = make(s, Verdict::Refuted, ConceptualCounterexample{c, derivation, !kb.instances_of(c).empty()},
                      "generic");
    j.notes.push_back("the generic sign of " + c.str() + " itself contradicts the claim");
    if (individual) j.notes.push_back("individual refutation also applies: " + individual->subject);
    return j;
  }

  const auto exceptions = kb.exception_subconcepts(c, lit.predicate, lit.sign());
  if (!exceptions.empty()) {
    const auto& first = exceptions.front();
    const bool populated = !kb.instances_of(first.concept_id).empty();
    Judgment j = make(s, Verdict::Refuted, ConceptualCounterexample{first.concept_id, first.derivation, populated},
                      "generic");
    j.context.push_back(GenericClaim{derivation});
    if (individual) {
      j.context.push_back(*individual);
      j.notes.push_back("individual refutation also applies: " + individual->subject);
      j.notes.push_back("conceptual refutation is ranked ahead of individual refutation");
    }
    if (!populated) {
      j.notes.push_back("exception concept " + first.concept_id.str() +
                        " has no instances; conceptual refutation does not require any");
    }
    for (std::size_t i = 1; i < exceptions.size(); ++i) {
      j.notes.push_back("further exception concept: " + exceptions[i].concept_id.str());
    }
    return j;
  }

  if (individual) {
    Judgment j = make(s, Verdict::Refuted, *individual, "generic");
    j.context.push_back(GenericClaim{derivation});
    return j;
  }
  return make(s, Verdict::Asserted, GenericProof{derivation, true}, "generic");
}

Judgment evaluate_exists(const Statement& s, const KnowledgeBase& kb, const EvalConfig& cfg) {
  if (s.over_nat()) return nat_bounded(s, cfg);
  const auto [c, lit] = concept_target(s, kb);
  const Tally t = tally(kb, kb.instances_of(c), lit);
  Judgment j;
  if (!t.satisfying.empty()) {
    const auto& x = t.satisfying.front();
    j = make(s, Verdict::Asserted, ExistentialWitness{x.str(), fact_text(x, lit.predicate, lit.sign())},
             "existential");
  } else if (t.unknown.empty()) {
    j = make(s, Verdict::Refuted, fact_omega(lit.negated(), t.falsifying), "existential");
    if (t.falsifying.empty()) j.notes.push_back(vacuous_note(c) + "; no witness exists");
  } else {
    j = make(s, Verdict::Undetermined, Unsettled{"no known witness; unknown for: " + join(t.unknown)}, "existential");
  }
  note_unmentioned(j, kb, lit);
  return j;
}

Judgment evaluate_no(const Statement& s, const KnowledgeBase& kb, const EvalConfig& cfg) {
  if (s.over_nat()) return nat_bounded(s, cfg);
  const auto [c, lit] = concept_target(s, kb);
  const Tally t = tally(kb, kb.instances_of(c), lit);
  Judgment j;
  if (!t.satisfying.empty()) {
    const auto& x = t.satisfying.front();
    j = make(s, Verdict::Refuted, IndividualCounterexample{x.str(), fact_text(x, lit.predicate, lit.sign())},
             "negative-existential");
  } else if (t.unknown.empty()) {
    j = make(s, Verdict::Asserted, fact_omega(lit.negated(), t.falsifying), "negative-existential");
    if (t.falsifying.empty()) j.notes.push_back(vacuous_note(c));
  } else {
    j = make(s, Verdict::Undetermined, Unsettled{"no known witness; unknown for: " + join(t.unknown)},
             "negative-existential");
  }
  note_unmentioned(j, kb, lit);
  return j;
}

Judgment evaluate_not_all(const Statement& s, const KnowledgeBase& kb, const EvalConfig& cfg) {
  if (s.over_nat()) return nat_bounded(s, cfg);
  const auto [c, lit] = concept_target(s, kb);
  const Tally t = tally(kb, kb.instances_of(c), lit);
  Judgment j;
  if (!t.falsifying.empty()) {
    const auto& x = t.falsifying.front();
    j = make(s, Verdict::Asserted, ExistentialWitness{x.str(), fact_text(x, lit.predicate, flip(lit.sign()))},
             "not-all");
  } else if (t.unknown.empty()) {
    j = make(s, Verdict::Refuted, fact_omega(lit, t.satisfying), "not-all");
    if (t.satisfying.empty()) j.notes.push_back(vacuous_note(c) + "; no counterexample exists");
  } else {
    j = make(s, Verdict::Undetermined, Unsettled{"no known counterexample; unknown for: " + join(t.unknown)},
             "not-all");
  }
  j.notes.push_back("the O corner is not lexicalised; 'some ... not' states the same with a different focus");
  note_unmentioned(j, kb, lit);
  return j;
}

Judgment majority_by_cardinality(const Statement& s, const KnowledgeBase& kb, const EvalConfig& cfg) {
  if (s.over_nat()) {
    const NatTarget t = nat_target(s);
    const auto with_body = cardinality_class(t.members(t.body), cfg.search_bound, cfg.limits);
    const auto without_body = cardinality_class(t.members(ArithFormula::negation(t.body)), cfg.search_bound, cfg.limits);
    const auto* a_fin = std::get_if<FiniteSet>(&with_body);
    const auto* b_fin = std::get_if<FiniteSet>(&without_body);
    const bool a_inf = std::holds_alternative<CountablyInfinite>(with_body);
    const bool b_inf = std::holds_alternative<CountablyInfinite>(without_body);

    if (a_inf && b_inf) {
      Judgment j = make(s, Verdict::Degenerate, DegenerateCardinality{with_body, without_body}, "cardinality");
      j.notes.push_back("equal infinite cardinality: cardinality semantics cannot decide");
      return j;
    }
    const CardinalityComparison cmp{with_body, without_body, 0};
    if (a_inf && b_fin) return make(s, Verdict::Asserted, cmp, "cardinality");
    if (a_fin && b_inf) return make(s, Verdict::Refuted, cmp, "cardinality");
    if (a_fin && b_fin) return make(s, a_fin->count > b_fin->count ? Verdict::Asserted : Verdict::Refuted, cmp,
                                    "cardinality");
    Judgment j = make(s, Verdict::Undetermined,
                      Unsettled{"a cardinality is unknown beyond the probe bound"}, "cardinality");
    j.context.push_back(cmp);
    return j;
  }

  const auto [c, lit] = concept_target(s, kb);
  const Tally t = tally(kb, kb.instances_of(c), lit);
  const std::uint64_t a = t.satisfying.size(), b = t.falsifying.size(), u = t.unknown.size();
  const CardinalityComparison cmp{FiniteSet{a}, FiniteSet{b}, u};
  Judgment j;
  if (a > b + u) {
    j = make(s, Verdict::Asserted, cmp, "cardinality");
  } else if (b >= a + u) {
    j = make(s, Verdict::Refuted, cmp, "cardinality");
    if (a == b) j.notes.push_back("exactly half is not a majority");
  } else {
    j = make(s, Verdict::Undetermined,
             Unsettled{std::to_string(u) + " unknown instance(s) could swing " + std::to_string(a) + " against " +
                       std::to_string(b)},
             "cardinality");
    j.context.push_back(cmp);
  }
  note_unmentioned(j, kb, lit);
  return j;
}

Judgment majority_by_density(const Statement& s, const EvalConfig& cfg) {
  const NatTarget t = nat_target(s);
  const ArithFormula body = t.members(t.body);
  const Rational half(1, 2);

  if (!body.contains_prime() && !(t.filter && t.filter->contains_prime())) {
    DensityEvidence ev{exact_density(body, cfg.limits), std::nullopt, std::nullopt, {}, half};
    Rational restriction_measure(1);
    if (t.filter) {
      ev.restriction = exact_density(*t.filter, cfg.limits);
      restriction_measure = ev.restriction->exact().value;
    }
    if (restriction_measure.numerator() == 0) {
      Judgment j = make(s, Verdict::Degenerate, std::move(ev), "density");
      j.notes.push_back("relative density undefined: the restriction has density 0");
      return j;
    }
    const Rational relative = ev.body.exact().value / restriction_measure;
    ev.exact_relative = relative;
    Judgment j = make(s, relative > half ? Verdict::Asserted : Verdict::Refuted, std::move(ev), "density");
    if (relative == half) j.notes.push_back("exactly half is not a majority");
    j.notes.push_back("measure: natural density (exact, eventually periodic set)");
    return j;
  }

  const EstimateOptions opts{cfg.epsilon, cfg.limits};
  DensityEvidence ev{estimate_density(body, cfg.schedule, opts), std::nullopt, std::nullopt, {}, half};
  std::vector<std::uint64_t> denominators = cfg.schedule;
  if (t.filter) {
    if (!t.filter->contains_prime() && exact_density(*t.filter, cfg.limits).exact().value.numerator() == 0) {
      ev.restriction = exact_density(*t.filter, cfg.limits);
      Judgment j = make(s, Verdict::Degenerate, std::move(ev), "density");
      j.notes.push_back("relative density undefined: the restriction has density 0");
      return j;
    }
    ev.restriction = estimate_density(*t.filter, cfg.schedule, opts);
    denominators.clear();
    for (const auto& cp : ev.restriction->estimated().checkpoints) denominators.push_back(cp.count);
  }
  if (denominators.back() == 0) {
    Judgment j = make(s, Verdict::Degenerate, std::move(ev), "density");
    j.notes.push_back("relative density undefined: the restriction is empty at every checkpoint");
    return j;
  }
  const auto& cps = ev.body.estimated().checkpoints;
  for (std::size_t i = 0; i < cps.size(); ++i) {
    if (denominators[i] == 0) continue;
    ev.relative_ratios.push_back(static_cast<double>(cps[i].count) / static_cast<double>(denominators[i]));
  }
  const auto& r = ev.relative_ratios;
  const double last = r.back();
  const bool converged = last_three_close(r, cfg.epsilon);

  Verdict v = Verdict::Undetermined;
  std::string trend;
  if (last >= 0.5 + cfg.margin && (converged || non_decreasing(r))) {
    v = Verdict::Asserted;
    trend = converged ? "converged" : "non-decreasing";
  } else if (last <= 0.5 - cfg.margin && (converged || non_increasing(r))) {
    v = Verdict::Refuted;
    trend = converged ? "converged" : "non-increasing";
  }

  Judgment j;
  if (v == Verdict::Undetermined) {
    j = make(s, v, Unsettled{"estimated ratios do not settle on one side of 1/2 by the margin"}, "density");
    j.context.push_back(std::move(ev));
  } else {
    j = make(s, v, std::move(ev), "density");
    if (!converged) {
      j.notes.push_back("ratios have not converged within epsilon; the verdict rests on the " + trend +
                        " trend away from 1/2");
    }
  }
  j.notes.push_back("measure: natural density (estimated from prefix ratios)");
  return j;
}

Judgment majority_proof_theoretic(const Statement& s, const KnowledgeBase& kb) {
  const auto [c, lit] = concept_target(s, kb);
  const auto properties = kb.majority_properties(c);
  const std::string semantics = "proof-theoretic";

  if (kb.has_predicate(lit.predicate)) {
    for (const auto& b : properties) {
      if (!kb.entailed_disjoint(Literal{b, true}, lit)) continue;
      std::string source;
      if (b == lit.predicate) {
        source = "complementary literals " + b.str() + " and " + to_string(lit);
      } else {
        auto line = kb.disjointness_line(b, lit.predicate);
        source = "declared disjoint " + b.str() + " " + lit.predicate.str() +
                 (line ? " (line " + std::to_string(*line) + ")" : "");
      }
      return make(s, Verdict::Refuted, IncompatibilityRefutation{b, lit, source}, semantics);
    }
  }

  const auto instances = kb.instances_of(c);
  const Tally t = tally(kb, instances, lit);
  const std::uint64_t a = t.satisfying.size(), b = t.falsifying.size(), u = t.unknown.size();
  if (!instances.empty() && b >= a + u) {
    Judgment j = make(s, Verdict::Refuted, DualRefutation{a, b, u}, semantics);
    if (a == b) j.notes.push_back("exactly half is not a majority");
    return j;
  }

  if (properties.empty()) {
    Judgment j = make(s, Verdict::Undetermined,
                      Unsettled{"some knowledge is required: no majority properties are declared for " + c.str()},
                      semantics);
    note_unmentioned(j, kb, lit);
    return j;
  }

  std::vector<ConceptId> subconcepts;
  for (const auto& decl : kb.concepts()) {
    if (kb.subsumes(c, decl.id)) subconcepts.push_back(decl.id);
  }
  EncounterProof proof{lit, {}};
  for (const auto& prop : properties) {
    std::optional<Encounter> found;
    for (const auto& x : instances) {
      if (kb.fact(x, prop) == Sign::Positive && kb.fact(x, lit.predicate) == lit.sign()) {
        found = Encounter{prop, x.str(), false};
        break;
      }
    }
    for (std::size_t i = 0; !found && i < subconcepts.size(); ++i) {
      if (kb.entails_generic(subconcepts[i], prop).sign() == Sign::Positive &&
          kb.entails_generic(subconcepts[i], lit.predicate).sign() == lit.sign()) {
        found = Encounter{prop, subconcepts[i].str(), true};
      }
    }
    if (!found) {
      Judgment j = make(s, Verdict::Undetermined,
                        Unsettled{"majority property " + prop.str() + " has no known witness that is also " +
                                  to_string(lit)},
                        semantics);
      note_unmentioned(j, kb, lit);
      return j;
    }
    proof.encounters.push_back(*found);
  }
  Judgment j = make(s, Verdict::Asserted, std::move(proof), semantics);
  j.notes.push_back("the majority properties are not checked to jointly cover " + c.str());
  return j;
}

Judgment evaluate(const Statement& s, const KnowledgeBase& kb, const EvalConfig& cfg) {
  if (s.over_nat()) {
    nat_target(s);
    if (s.quantifier != QuantifierKind::Majority) return nat_bounded(s, cfg);
    switch (cfg.majority_semantics.value_or(MajoritySemantics::Density)) {
    case MajoritySemantics::Cardinality: return majority_by_cardinality(s, kb, cfg);
    case MajoritySemantics::Density: return majority_by_density(s, cfg);
    case MajoritySemantics::ProofTheoretic: {
      Judgment j = majority_by_density(s, cfg);
      j.notes.insert(j.notes.begin(), "proof-theoretic rules need a concept with majority properties; "
                                      "remapped to density");
      return j;
    }
    }
  }

  concept_target(s, kb);
  switch (s.quantifier) {
  case QuantifierKind::EachDistributive: return evaluate_distributive(s, kb);
  case QuantifierKind::EveryGeneric: return evaluate_generic(s, kb);
  case QuantifierKind::Exists: return evaluate_exists(s, kb, cfg);
  case QuantifierKind::NoNeg: return evaluate_no(s, kb, cfg);
  case QuantifierKind::NotAll: return evaluate_not_all(s, kb, cfg);
  case QuantifierKind::Majority: break;
  }
  switch (cfg.majority_semantics.value_or(MajoritySemantics::Cardinality)) {
  case MajoritySemantics::Cardinality: return majority_by_cardinality(s, kb, cfg);
  case MajoritySemantics::ProofTheoretic: return majority_proof_theoretic(s, kb);
  case MajoritySemantics::Density: {
    Judgment j = majority_by_cardinality(s, kb, cfg);
    j.notes.insert(j.notes.begin(), "density semantics needs the Nat domain; remapped to cardinality");
    return j;
  }
  }
  throw Error(ErrorCode::UnresolvableSymbol, "unsupported statement");
}

} // namespace quantscope
