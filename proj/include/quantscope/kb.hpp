// Knowledge bases: a concept taxonomy carrying generic axioms, individuals
// with (partial) facts, per-concept majority properties and predicate
// disjointness.

#ifndef QUANTSCOPE_KB_HPP
#define QUANTSCOPE_KB_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "quantscope/symbols.hpp"

namespace quantscope {

// Why a concept has a sign for a predicate: the axiom sits on chain.front()
// and is inherited down the subsumption path to chain.back() == target.
struct GenericDerivation {
  ConceptId target;
  PredicateId predicate;
  Sign sign = Sign::Positive;
  std::vector<ConceptId> chain;

  const ConceptId& source() const { return chain.front(); }
  friend bool operator==(const GenericDerivation&, const GenericDerivation&) = default;
};

enum class EntailmentStatus { Entailed, Unknown, Ambiguous };

struct GenericEntailment {
  EntailmentStatus status = EntailmentStatus::Unknown;
  std::optional<GenericDerivation> derivation;  // set when Entailed
  std::vector<GenericDerivation> conflicting;   // set when Ambiguous

  std::optional<Sign> sign() const {
    if (status != EntailmentStatus::Entailed) return std::nullopt;
    return derivation->sign;
  }
};

struct ExceptionConcept {
  ConceptId concept_id;
  GenericDerivation derivation;
};

enum class IssueKind {
  SubsumptionCycle,
  DanglingReference,
  SameConceptContradiction,
  UnknownIndividual,
  ContradictoryFacts,
  DuplicateIndividual,
  ReservedName,
  AmbiguousInheritance,
};

enum class Severity { Error, Warning };

std::string to_string(IssueKind kind);

struct ValidationIssue {
  IssueKind kind;
  Severity severity;
  std::string message;
  std::optional<int> line;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;

  bool ok() const;
  bool has(IssueKind kind) const;
};

class KnowledgeBase {
public:
  class Builder;

  struct ConceptDecl {
    ConceptId id;
    std::vector<ConceptId> parents;
    std::optional<int> line;
  };
  struct AxiomDecl {
    ConceptId concept_id;
    Literal literal;
    std::optional<int> line;
  };
  struct IndividualDecl {
    IndividualId id;
    ConceptId concept_id;
    std::optional<int> line;
  };
  struct FactDecl {
    IndividualId individual;
    Literal literal;
    std::optional<int> line;
  };
  struct MajorityDecl {
    ConceptId concept_id;
    std::vector<PredicateId> properties;
    std::optional<int> line;
  };
  struct DisjointDecl {
    PredicateId first;
    PredicateId second;
    std::optional<int> line;
  };

  // The empty knowledge base; valid.
  KnowledgeBase();

  const std::vector<ConceptDecl>& concepts() const noexcept { return concepts_; }
  const std::vector<IndividualDecl>& individuals() const noexcept { return individuals_; }
  const std::vector<AxiomDecl>& axioms() const noexcept { return axioms_; }
  const std::vector<FactDecl>& facts() const noexcept { return facts_; }
  const std::set<PredicateId>& predicates() const noexcept { return predicates_; }

  bool has_concept(const ConceptId& c) const { return concept_index_.count(c) != 0; }
  bool has_predicate(const PredicateId& p) const { return predicates_.count(p) != 0; }

  // Computed once when the knowledge base is built.
  const ValidationReport& validation() const noexcept { return report_; }

  // Reflexive-transitive closure of the declared subsumptions.
  // Throws Error(UnknownConcept).
  bool subsumes(const ConceptId& ancestor, const ConceptId& descendant) const;

  // Individuals whose declared concept is subsumed by c, in declaration order.
  std::vector<IndividualId> instances_of(const ConceptId& c) const;

  // Known sign of p for x; nullopt means unknown, never false.
  std::optional<Sign> fact(const IndividualId& x, const PredicateId& p) const;
  std::optional<ConceptId> concept_of(const IndividualId& x) const;

  // Axiom declared directly on c, if any.
  std::optional<Sign> own_axiom(const ConceptId& c, const PredicateId& p) const;

  // Most specific axiom for p on c or its ancestors, specificity being the
  // number of subsumption steps from c. Opposite signs on incomparable
  // ancestors at the same minimal distance make the result Ambiguous.
  GenericEntailment entails_generic(const ConceptId& c, const PredicateId& p) const;

  // Strict subconcepts of c whose most specific sign for p is the opposite of
  // `expected`, in concept declaration order.
  std::vector<ExceptionConcept> exception_subconcepts(const ConceptId& c, const PredicateId& p,
                                                      Sign expected = Sign::Positive) const;

  // True iff the literals are complementary or both positive and declared
  // disjoint. Throws Error(UnknownPredicate) for predicates the knowledge base
  // never mentions.
  bool entailed_disjoint(const Literal& a, const Literal& b) const;
  bool entailed_disjoint(const PredicateId& p, const PredicateId& q) const {
    return entailed_disjoint(Literal{p, true}, Literal{q, true});
  }

  // c's own declared list, not merged from ancestors.
  std::vector<PredicateId> majority_properties(const ConceptId& c) const;

  // Where a disjointness between the two positive predicates was declared.
  std::optional<int> disjointness_line(const PredicateId& p, const PredicateId& q) const;

private:
  std::size_t index_of(const ConceptId& c) const;
  // Distance from `from` to each of its ancestors (itself at 0) and the BFS
  // predecessor used to rebuild the path.
  void upward_bfs(std::size_t from, std::vector<int>& dist, std::vector<std::size_t>& pred) const;
  GenericDerivation derivation_from(std::size_t target, std::size_t source, const PredicateId& p, Sign sign,
                                    const std::vector<std::size_t>& pred) const;
  ValidationReport compute_validation() const;

  std::vector<ConceptDecl> concepts_;
  std::map<ConceptId, std::size_t> concept_index_;
  std::vector<std::vector<std::size_t>> parent_index_;
  std::vector<AxiomDecl> axioms_;
  std::map<std::pair<std::size_t, PredicateId>, Sign> own_axioms_;
  std::vector<IndividualDecl> individuals_;
  std::vector<IndividualDecl> individual_decls_;
  std::map<IndividualId, std::size_t> individual_index_;
  std::vector<FactDecl> facts_;
  std::map<std::pair<IndividualId, PredicateId>, Sign> fact_map_;
  std::vector<MajorityDecl> majority_;
  std::vector<DisjointDecl> disjoint_;
  std::map<std::pair<PredicateId, PredicateId>, std::optional<int>> disjoint_pairs_;
  std::set<PredicateId> predicates_;
  ValidationReport report_;
};

class KnowledgeBase::Builder {
public:
  // Repeated declarations of a concept merge their parent lists.
  Builder& add_concept(ConceptId c, std::vector<ConceptId> parents = {}, std::optional<int> line = {});
  Builder& add_axiom(ConceptId c, Literal literal, std::optional<int> line = {});
  Builder& add_individual(IndividualId x, ConceptId c, std::optional<int> line = {});
  Builder& add_fact(IndividualId x, Literal literal, std::optional<int> line = {});
  Builder& add_majority_props(ConceptId c, std::vector<PredicateId> properties, std::optional<int> line = {});
  Builder& add_disjoint(PredicateId p, PredicateId q, std::optional<int> line = {});

  // Always succeeds; problems land in the validation report.
  KnowledgeBase build() const;

private:
  std::vector<KnowledgeBase::ConceptDecl> concepts_;
  std::vector<KnowledgeBase::AxiomDecl> axioms_;
  std::vector<KnowledgeBase::IndividualDecl> individuals_;
  std::vector<KnowledgeBase::FactDecl> facts_;
  std::vector<KnowledgeBase::MajorityDecl> majority_;
  std::vector<KnowledgeBase::DisjointDecl> disjoint_;
};

ValidationReport validate(const KnowledgeBase& kb);

} // namespace quantscope

#endif // QUANTSCOPE_KB_HPP
