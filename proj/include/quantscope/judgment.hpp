// Judgments on quantified statements: when a statement can be asserted, how
// it is refuted, and the evidence for either.

#ifndef QUANTSCOPE_JUDGMENT_HPP
#define QUANTSCOPE_JUDGMENT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "quantscope/arith.hpp"
#include "quantscope/kb.hpp"
#include "quantscope/logic.hpp"

namespace quantscope {

enum class Verdict { Asserted, Refuted, Undetermined, Degenerate };

std::string_view to_string(Verdict v) noexcept;

enum class MajoritySemantics { Cardinality, Density, ProofTheoretic };

std::string_view to_string(MajoritySemantics s) noexcept;
std::optional<MajoritySemantics> parse_majority_semantics(std::string_view text) noexcept;

struct EvalConfig {
  // Unset: density over Nat, cardinality over concepts.
  std::optional<MajoritySemantics> majority_semantics;
  std::uint64_t search_bound = 1'000'000;
  std::vector<std::uint64_t> schedule = default_schedule();
  double epsilon = 0.005;
  double margin = 0.02;
  ArithLimits limits;
};

namespace evidence {

enum class SignSource { Fact, InheritedAxiom };

struct InstanceCheck {
  IndividualId individual;
  SignSource source = SignSource::Fact;
  std::optional<GenericDerivation> derivation;  // for InheritedAxiom
};

// One premise per instance.
struct OmegaProof {
  Literal literal;
  std::vector<InstanceCheck> checked;
};

// Concept-level derivation with the refutation search exhausted.
struct GenericProof {
  GenericDerivation derivation;
  bool exceptions_checked = true;
};

// The derivation a generic claim rests on, reported alongside its refutation.
struct GenericClaim {
  GenericDerivation derivation;
};

// `subject` is an individual name or, over Nat, a number.
struct ExistentialWitness {
  std::string subject;
  std::string source;
};

struct IndividualCounterexample {
  std::string subject;
  std::string source;
};

struct ConceptualCounterexample {
  ConceptId concept_id;
  GenericDerivation derivation;
  bool has_instances = false;
};

// |A & M| against |M - A|; `unknown` counts instances with no known fact.
struct CardinalityComparison {
  CardinalityResult with_body;
  CardinalityResult without_body;
  std::uint64_t unknown = 0;
};

struct DensityEvidence {
  // Measure of A & M and, when a restriction formula is present, of M.
  DensityResult body;
  std::optional<DensityResult> restriction;
  std::optional<Rational> exact_relative;
  std::vector<double> relative_ratios;
  Rational threshold{1, 2};
};

struct Encounter {
  PredicateId property;
  std::string witness;
  bool witness_is_concept = false;
};

struct EncounterProof {
  Literal claim;
  std::vector<Encounter> encounters;
};

struct DualRefutation {
  std::uint64_t positive = 0;
  std::uint64_t negative = 0;
  std::uint64_t unknown = 0;
};

struct IncompatibilityRefutation {
  PredicateId property;
  Literal claim;
  std::string source;
};

struct DegenerateCardinality {
  CardinalityResult with_body;
  CardinalityResult without_body;
};

// Undetermined verdicts: what blocked both assertion and refutation.
struct Unsettled {
  std::string reason;
};

} // namespace evidence

using Evidence = std::variant<evidence::OmegaProof, evidence::GenericProof, evidence::GenericClaim,
                              evidence::ExistentialWitness, evidence::IndividualCounterexample,
                              evidence::ConceptualCounterexample, evidence::CardinalityComparison,
                              evidence::DensityEvidence, evidence::EncounterProof, evidence::DualRefutation,
                              evidence::IncompatibilityRefutation, evidence::DegenerateCardinality,
                              evidence::Unsettled>;

std::string_view evidence_kind(const Evidence& e) noexcept;

struct Judgment {
  Statement statement;
  Verdict verdict = Verdict::Undetermined;
  // The evidence the verdict rests on.
  Evidence evidence;
  // Further evidence in presentation order, rendered before `evidence`.
  std::vector<Evidence> context;
  std::string semantics;
  std::vector<std::string> notes;
};

// Dispatches on the quantifier, and for majority on the configured semantics.
// Throws Error(InvalidKnowledgeBase) for a knowledge base that failed
// validation and Error(UnresolvableSymbol) for unknown concepts or a body that
// does not fit the restriction.
Judgment evaluate(const Statement& s, const KnowledgeBase& kb, const EvalConfig& cfg = {});

// Omega rule over the finite instance list. Throws Error(InfiniteRestriction)
// for Nat.
Judgment evaluate_distributive(const Statement& s, const KnowledgeBase& kb);

// Concept-level derivation, then conceptual and individual refutation search.
Judgment evaluate_generic(const Statement& s, const KnowledgeBase& kb);

Judgment evaluate_exists(const Statement& s, const KnowledgeBase& kb, const EvalConfig& cfg = {});
Judgment evaluate_no(const Statement& s, const KnowledgeBase& kb, const EvalConfig& cfg = {});
Judgment evaluate_not_all(const Statement& s, const KnowledgeBase& kb, const EvalConfig& cfg = {});

Judgment majority_by_cardinality(const Statement& s, const KnowledgeBase& kb, const EvalConfig& cfg = {});
Judgment majority_by_density(const Statement& s, const EvalConfig& cfg = {});
Judgment majority_proof_theoretic(const Statement& s, const KnowledgeBase& kb);

// Deterministic text rendering, one line per step.
std::string explain(const Judgment& j);

} // namespace quantscope

#endif // QUANTSCOPE_JUDGMENT_HPP
