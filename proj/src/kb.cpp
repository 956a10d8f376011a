#include "quantscope/kb.hpp"

#include <algorithm>
#include <deque>
#include <limits>

#include "quantscope/error.hpp"

namespace quantscope {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

std::string line_suffix(const std::optional<int>& line) {
  return line ? " (line " + std::to_string(*line) + ")" : "";
}

std::pair<PredicateId, PredicateId> ordered(const PredicateId& p, const PredicateId& q) {
  return p < q ? std::pair{p, q} : std::pair{q, p};
}

} // namespace

std::string to_string(IssueKind kind) {
  switch (kind) {
  case IssueKind::SubsumptionCycle: return "SubsumptionCycle";
  case IssueKind::DanglingReference: return "DanglingReference";
  case IssueKind::SameConceptContradiction: return "SameConceptContradiction";
  case IssueKind::UnknownIndividual: return "UnknownIndividual";
  case IssueKind::ContradictoryFacts: return "ContradictoryFacts";
  case IssueKind::DuplicateIndividual: return "DuplicateIndividual";
  case IssueKind::ReservedName: return "ReservedName";
  case IssueKind::AmbiguousInheritance: return "AmbiguousInheritance";
  }
  return "Unknown";
}

bool ValidationReport::ok() const {
  return std::none_of(issues.begin(), issues.end(),
                      [](const ValidationIssue& i) { return i.severity == Severity::Error; });
}

bool ValidationReport::has(IssueKind kind) const {
  return std::any_of(issues.begin(), issues.end(), [&](const ValidationIssue& i) { return i.kind == kind; });
}

KnowledgeBase::KnowledgeBase() = default;

KnowledgeBase::Builder& KnowledgeBase::Builder::add_concept(ConceptId c, std::vector<ConceptId> parents,
                                                            std::optional<int> line) {
  concepts_.push_back({std::move(c), std::move(parents), line});
  return *this;
}

KnowledgeBase::Builder& KnowledgeBase::Builder::add_axiom(ConceptId c, Literal literal, std::optional<int> line) {
  axioms_.push_back({std::move(c), std::move(literal), line});
  return *this;
}

KnowledgeBase::Builder& KnowledgeBase::Builder::add_individual(IndividualId x, ConceptId c, std::optional<int> line) {
  individuals_.push_back({std::move(x), std::move(c), line});
  return *this;
}

KnowledgeBase::Builder& KnowledgeBase::Builder::add_fact(IndividualId x, Literal literal, std::optional<int> line) {
  facts_.push_back({std::move(x), std::move(literal), line});
  return *this;
}

KnowledgeBase::Builder& KnowledgeBase::Builder::add_majority_props(ConceptId c, std::vector<PredicateId> properties,
                                                                   std::optional<int> line) {
  majority_.push_back({std::move(c), std::move(properties), line});
  return *this;
}

KnowledgeBase::Builder& KnowledgeBase::Builder::add_disjoint(PredicateId p, PredicateId q, std::optional<int> line) {
  disjoint_.push_back({std::move(p), std::move(q), line});
  return *this;
}

KnowledgeBase KnowledgeBase::Builder::build() const {
  KnowledgeBase kb;

  for (const auto& decl : concepts_) {
    auto [it, inserted] = kb.concept_index_.emplace(decl.id, kb.concepts_.size());
    if (inserted) {
      kb.concepts_.push_back({decl.id, {}, decl.line});
    }
    auto& merged = kb.concepts_[it->second].parents;
    for (const auto& parent : decl.parents) {
      if (std::find(merged.begin(), merged.end(), parent) == merged.end()) merged.push_back(parent);
    }
  }
  kb.parent_index_.resize(kb.concepts_.size());
  for (std::size_t i = 0; i < kb.concepts_.size(); ++i) {
    for (const auto& parent : kb.concepts_[i].parents) {
      if (auto it = kb.concept_index_.find(parent); it != kb.concept_index_.end()) {
        kb.parent_index_[i].push_back(it->second);
      }
    }
  }

  kb.axioms_ = axioms_;
  for (const auto& ax : axioms_) {
    kb.predicates_.insert(ax.literal.predicate);
    if (auto it = kb.concept_index_.find(ax.concept_id); it != kb.concept_index_.end()) {
      // The first axiom wins; a contradicting one is reported by validation.
      kb.own_axioms_.emplace(std::pair{it->second, ax.literal.predicate}, ax.literal.sign());
    }
  }

  kb.individual_decls_ = individuals_;
  for (const auto& ind : individuals_) {
    if (kb.individual_index_.emplace(ind.id, kb.individuals_.size()).second) kb.individuals_.push_back(ind);
  }

  kb.facts_ = facts_;
  for (const auto& f : facts_) {
    kb.predicates_.insert(f.literal.predicate);
    kb.fact_map_.emplace(std::pair{f.individual, f.literal.predicate}, f.literal.sign());
  }

  kb.majority_ = majority_;
  for (const auto& m : majority_) kb.predicates_.insert(m.properties.begin(), m.properties.end());

  kb.disjoint_ = disjoint_;
  for (const auto& d : disjoint_) {
    kb.predicates_.insert(d.first);
    kb.predicates_.insert(d.second);
    kb.disjoint_pairs_.emplace(ordered(d.first, d.second), d.line);
  }

  kb.report_ = kb.compute_validation();
  return kb;
}

std::size_t KnowledgeBase::index_of(const ConceptId& c) const {
  auto it = concept_index_.find(c);
  if (it == concept_index_.end()) throw Error(ErrorCode::UnknownConcept, "unknown concept '" + c.str() + "'");
  return it->second;
}

void KnowledgeBase::upward_bfs(std::size_t from, std::vector<int>& dist, std::vector<std::size_t>& pred) const {
  dist.assign(concepts_.size(), -1);
  pred.assign(concepts_.size(), kNone);
  std::deque<std::size_t> queue{from};
  dist[from] = 0;
  while (!queue.empty()) {
    const std::size_t cur = queue.front();
    queue.pop_front();
    for (std::size_t parent : parent_index_[cur]) {
      if (dist[parent] >= 0) continue;
      dist[parent] = dist[cur] + 1;
      pred[parent] = cur;
      queue.push_back(parent);
    }
  }
}

bool KnowledgeBase::subsumes(const ConceptId& ancestor, const ConceptId& descendant) const {
  const std::size_t a = index_of(ancestor);
  const std::size_t d = index_of(descendant);
  std::vector<int> dist;
  std::vector<std::size_t> pred;
  upward_bfs(d, dist, pred);
  return dist[a] >= 0;
}

std::vector<IndividualId> KnowledgeBase::instances_of(const ConceptId& c) const {
  const std::size_t target = index_of(c);
  std::vector<IndividualId> out;
  std::vector<int> dist;
  std::vector<std::size_t> pred;
  for (const auto& ind : individuals_) {
    auto it = concept_index_.find(ind.concept_id);
    if (it == concept_index_.end()) continue;
    upward_bfs(it->second, dist, pred);
    if (dist[target] >= 0) out.push_back(ind.id);
  }
  return out;
}

std::optional<Sign> KnowledgeBase::fact(const IndividualId& x, const PredicateId& p) const {
  auto it = fact_map_.find({x, p});
  if (it == fact_map_.end()) return std::nullopt;
  return it->second;
}

std::optional<ConceptId> KnowledgeBase::concept_of(const IndividualId& x) const {
  auto it = individual_index_.find(x);
  if (it == individual_index_.end()) return std::nullopt;
  return individuals_[it->second].concept_id;
}

std::optional<Sign> KnowledgeBase::own_axiom(const ConceptId& c, const PredicateId& p) const {
  auto it = own_axioms_.find({index_of(c), p});
  if (it == own_axioms_.end()) return std::nullopt;
  return it->second;
}

GenericDerivation KnowledgeBase::derivation_from(std::size_t target, std::size_t source, const PredicateId& p,
                                                 Sign sign, const std::vector<std::size_t>& pred) const {
  GenericDerivation d{concepts_[target].id, p, sign, {}};
  for (std::size_t cur = source; cur != kNone; cur = pred[cur]) {
    d.chain.push_back(concepts_[cur].id);
    if (cur == target) break;
  }
  return d;
}

GenericEntailment KnowledgeBase::entails_generic(const ConceptId& c, const PredicateId& p) const {
  const std::size_t target = index_of(c);
  std::vector<int> dist;
  std::vector<std::size_t> pred;
  upward_bfs(target, dist, pred);

  int best = -1;
  std::vector<std::size_t> carriers;
  for (std::size_t i = 0; i < concepts_.size(); ++i) {
    if (dist[i] < 0 || !own_axioms_.count({i, p})) continue;
    if (best < 0 || dist[i] < best) {
      best = dist[i];
      carriers.clear();
    }
    if (dist[i] == best) carriers.push_back(i);
  }
  if (carriers.empty()) return {};

  // At equal distance a carrier that is itself subsumed by another carrier is
  // the more specific one.
  std::vector<std::size_t> specific;
  std::vector<int> d2;
  std::vector<std::size_t> p2;
  for (std::size_t i : carriers) {
    bool dominated = false;
    for (std::size_t j : carriers) {
      if (i == j) continue;
      upward_bfs(j, d2, p2);
      if (d2[i] >= 0) dominated = true;
    }
    if (!dominated) specific.push_back(i);
  }
  if (specific.empty()) specific = carriers;  // only possible on cyclic input

  GenericEntailment result;
  const Sign first = own_axioms_.at({specific.front(), p});
  const bool agree = std::all_of(specific.begin(), specific.end(),
                                 [&](std::size_t i) { return own_axioms_.at({i, p}) == first; });
  if (agree) {
    result.status = EntailmentStatus::Entailed;
    result.derivation = derivation_from(target, specific.front(), p, first, pred);
  } else {
    result.status = EntailmentStatus::Ambiguous;
    for (std::size_t i : specific) {
      result.conflicting.push_back(derivation_from(target, i, p, own_axioms_.at({i, p}), pred));
    }
  }
  return result;
}

std::vector<ExceptionConcept> KnowledgeBase::exception_subconcepts(const ConceptId& c, const PredicateId& p,
                                                                   Sign expected) const {
  const std::size_t root = index_of(c);
  std::vector<ExceptionConcept> out;
  std::vector<int> dist;
  std::vector<std::size_t> pred;
  for (std::size_t i = 0; i < concepts_.size(); ++i) {
    if (i == root) continue;
    upward_bfs(i, dist, pred);
    if (dist[root] < 0) continue;
    auto e = entails_generic(concepts_[i].id, p);
    if (e.sign() == flip(expected)) out.push_back({concepts_[i].id, *e.derivation});
  }
  return out;
}

bool KnowledgeBase::entailed_disjoint(const Literal& a, const Literal& b) const {
  for (const auto& p : {a.predicate, b.predicate}) {
    if (!has_predicate(p)) throw Error(ErrorCode::UnknownPredicate, "unknown predicate '" + p.str() + "'");
  }
  if (a.predicate == b.predicate) return a.positive != b.positive;
  return a.positive && b.positive && disjoint_pairs_.count(ordered(a.predicate, b.predicate)) != 0;
}

std::optional<int> KnowledgeBase::disjointness_line(const PredicateId& p, const PredicateId& q) const {
  auto it = disjoint_pairs_.find(ordered(p, q));
  if (it == disjoint_pairs_.end()) return std::nullopt;
  return it->second;
}

std::vector<PredicateId> KnowledgeBase::majority_properties(const ConceptId& c) const {
  index_of(c);
  std::vector<PredicateId> out;
  for (const auto& m : majority_) {
    if (m.concept_id == c) out.insert(out.end(), m.properties.begin(), m.properties.end());
  }
  return out;
}

ValidationReport KnowledgeBase::compute_validation() const {
  ValidationReport report;
  auto error = [&](IssueKind kind, std::string message, std::optional<int> line) {
    report.issues.push_back({kind, Severity::Error, std::move(message) + line_suffix(line), line});
  };

  for (const auto& c : concepts_) {
    if (c.id.str() == "Nat") {
      error(IssueKind::ReservedName, "concept name 'Nat' is reserved for the built-in number domain", c.line);
    }
    for (const auto& parent : c.parents) {
      if (!has_concept(parent)) {
        error(IssueKind::DanglingReference,
              "concept '" + c.id.str() + "' refers to undeclared parent '" + parent.str() + "'", c.line);
      }
    }
  }

  // Cycles: iterative colouring DFS over parent edges, one report per cycle.
  {
    enum Colour { White, Grey, Black };
    std::vector<Colour> colour(concepts_.size(), White);
    std::set<std::set<std::size_t>> seen;
    for (std::size_t root = 0; root < concepts_.size(); ++root) {
      if (colour[root] != White) continue;
      std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
      colour[root] = Grey;
      while (!stack.empty()) {
        auto& [node, next] = stack.back();
        if (next == parent_index_[node].size()) {
          colour[node] = Black;
          stack.pop_back();
          continue;
        }
        const std::size_t parent = parent_index_[node][next++];
        if (colour[parent] == White) {
          colour[parent] = Grey;
          stack.push_back({parent, 0});
        } else if (colour[parent] == Grey) {
          auto start = std::find_if(stack.begin(), stack.end(), [&](const auto& e) { return e.first == parent; });
          std::set<std::size_t> members;
          std::string path;
          for (auto it = start; it != stack.end(); ++it) {
            members.insert(it->first);
            path += concepts_[it->first].id.str() + " <: ";
          }
          path += concepts_[parent].id.str();
          if (seen.insert(members).second) {
            error(IssueKind::SubsumptionCycle, "subsumption cycle " + path, concepts_[parent].line);
          }
        }
      }
    }
  }

  std::map<std::pair<std::size_t, PredicateId>, std::pair<Sign, std::optional<int>>> first_axiom;
  for (const auto& ax : axioms_) {
    auto it = concept_index_.find(ax.concept_id);
    if (it == concept_index_.end()) {
      error(IssueKind::DanglingReference,
            "axiom on undeclared concept '" + ax.concept_id.str() + "'", ax.line);
      continue;
    }
    auto [pos, inserted] = first_axiom.emplace(std::pair{it->second, ax.literal.predicate},
                                               std::pair{ax.literal.sign(), ax.line});
    if (!inserted && pos->second.first != ax.literal.sign()) {
      error(IssueKind::SameConceptContradiction,
            "concept '" + ax.concept_id.str() + "' carries both +" + ax.literal.predicate.str() + " and -" +
                ax.literal.predicate.str(),
            ax.line);
    }
  }

  for (const auto& ind : individual_decls_) {
    const auto& first = individuals_[individual_index_.at(ind.id)];
    if (first.concept_id != ind.concept_id) {
      error(IssueKind::DuplicateIndividual,
            "individual '" + ind.id.str() + "' declared in both '" + first.concept_id.str() + "' and '" +
                ind.concept_id.str() + "'",
            ind.line);
    }
  }
  for (const auto& ind : individuals_) {
    if (!has_concept(ind.concept_id)) {
      error(IssueKind::DanglingReference,
            "individual '" + ind.id.str() + "' belongs to undeclared concept '" + ind.concept_id.str() + "'",
            ind.line);
    }
  }

  for (const auto& m : majority_) {
    if (!has_concept(m.concept_id)) {
      error(IssueKind::DanglingReference,
            "majority properties for undeclared concept '" + m.concept_id.str() + "'", m.line);
    }
  }

  std::map<std::pair<IndividualId, PredicateId>, Sign> first_fact;
  for (const auto& f : facts_) {
    if (!individual_index_.count(f.individual)) {
      error(IssueKind::UnknownIndividual, "fact about undeclared individual '" + f.individual.str() + "'", f.line);
      continue;
    }
    auto [pos, inserted] = first_fact.emplace(std::pair{f.individual, f.literal.predicate}, f.literal.sign());
    if (!inserted && pos->second != f.literal.sign()) {
      error(IssueKind::ContradictoryFacts,
            "individual '" + f.individual.str() + "' has both +" + f.literal.predicate.str() + " and -" +
                f.literal.predicate.str(),
            f.line);
    }
  }

  if (!report.has(IssueKind::SubsumptionCycle)) {
    std::set<PredicateId> axiom_predicates;
    for (const auto& ax : axioms_) axiom_predicates.insert(ax.literal.predicate);
    for (const auto& c : concepts_) {
      for (const auto& p : axiom_predicates) {
        auto e = entails_generic(c.id, p);
        if (e.status != EntailmentStatus::Ambiguous) continue;
        std::string sources;
        for (const auto& d : e.conflicting) {
          sources += (sources.empty() ? "" : ", ") + d.source().str() + ":" + sign_char(d.sign) + p.str();
        }
        report.issues.push_back({IssueKind::AmbiguousInheritance, Severity::Warning,
                                 "concept '" + c.id.str() + "' inherits conflicting axioms " + sources +
                                     line_suffix(c.line),
                                 c.line});
      }
    }
  }
  return report;
}

ValidationReport validate(const KnowledgeBase& kb) { return kb.validation(); }

} // namespace quantscope
