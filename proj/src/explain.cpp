#include <iomanip>
#include <sstream>

#include "quantscope/judgment.hpp"

namespace quantscope {

namespace {

using namespace evidence;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string derivation_text(const GenericDerivation& d) {
  std::string out = "axiom " + d.source().str() + ":" + sign_char(d.sign) + d.predicate.str();
  if (d.chain.size() > 1) {
    out += " inherited along ";
    for (std::size_t i = 0; i < d.chain.size(); ++i) out += (i ? " > " : "") + d.chain[i].str();
  }
  return out;
}

std::string ratio_text(double r) {
  std::ostringstream os;
  os << std::setprecision(10) << r;
  return os.str();
}

void density_lines(std::vector<std::string>& out, const std::string& label, const DensityResult& d) {
  std::visit(overloaded{
      [&](const ExactDensity& e) {
        out.push_back("density of " + label + ": " + to_string(e.value) + " (exact; periodic with period " +
                      std::to_string(e.certificate.period) + " beyond " + std::to_string(e.certificate.threshold) +
                      ")");
      },
      [&](const EstimatedDensity& e) {
        out.push_back("density of " + label + ": estimated from prefix ratios");
        for (const auto& cp : e.checkpoints) {
          out.push_back("  N = " + std::to_string(cp.bound) + "  count = " + std::to_string(cp.count) +
                        "  ratio = " + ratio_text(cp.ratio));
        }
        out.push_back("  converged: " + std::string(e.converged ? "yes" : "no"));
      },
      [&](const UnknownDensity&) { out.push_back("density of " + label + ": unknown"); },
  }, d.value);
}

std::vector<std::string> evidence_lines(const Evidence& e) {
  std::vector<std::string> out;
  std::visit(overloaded{
      [&](const OmegaProof& p) {
        out.push_back("omega rule for " + to_string(p.literal) + " over " + std::to_string(p.checked.size()) +
                      " instance(s)");
        for (const auto& c : p.checked) {
          if (c.source == SignSource::Fact) {
            out.push_back("  " + c.individual.str() + ": fact");
          } else {
            out.push_back("  " + c.individual.str() + ": no fact, " + derivation_text(*c.derivation));
          }
        }
      },
      [&](const GenericProof& p) {
        out.push_back("generic proof: " + derivation_text(p.derivation) +
                      (p.exceptions_checked ? "; no exception subconcept, no individual counterexample" : ""));
      },
      [&](const GenericClaim& c) { out.push_back("assertion: " + derivation_text(c.derivation)); },
      [&](const ExistentialWitness& w) { out.push_back("witness: " + w.subject + " (" + w.source + ")"); },
      [&](const IndividualCounterexample& c) {
        out.push_back("individual refutation: " + c.subject + " (" + c.source + ")");
      },
      [&](const ConceptualCounterexample& c) {
        out.push_back("conceptual refutation: " + c.concept_id.str() + " (" + derivation_text(c.derivation) + ")" +
                      (c.has_instances ? "" : " [no instances]"));
      },
      [&](const CardinalityComparison& c) {
        out.push_back("cardinality: |A & M| = " + to_string(c.with_body) + ", |M - A| = " + to_string(c.without_body) +
                      ", unknown = " + std::to_string(c.unknown));
      },
      [&](const DensityEvidence& d) {
        density_lines(out, "A & M", d.body);
        if (d.restriction) density_lines(out, "M", *d.restriction);
        if (d.exact_relative) {
          out.push_back("relative density: " + to_string(*d.exact_relative) + " against threshold " +
                        to_string(d.threshold));
        } else if (!d.relative_ratios.empty() && d.restriction) {
          std::string ratios;
          for (double r : d.relative_ratios) ratios += (ratios.empty() ? "" : ", ") + ratio_text(r);
          out.push_back("relative ratios: " + ratios + " against threshold " + to_string(d.threshold));
        } else if (!d.relative_ratios.empty()) {
          out.push_back("last ratio " + ratio_text(d.relative_ratios.back()) + " against threshold " +
                        to_string(d.threshold));
        }
      },
      [&](const EncounterProof& p) {
        out.push_back("every majority property meets " + to_string(p.claim));
        for (const auto& enc : p.encounters) {
          out.push_back("  " + enc.property.str() + " meets " + to_string(p.claim) + " at " +
                        (enc.witness_is_concept ? "concept " : "individual ") + enc.witness);
        }
      },
      [&](const DualRefutation& d) {
        out.push_back("dual refutation: at most half satisfy the body (" + std::to_string(d.positive) + " for, " +
                      std::to_string(d.negative) + " against, " + std::to_string(d.unknown) + " unknown)");
      },
      [&](const IncompatibilityRefutation& r) {
        out.push_back("incompatibility: majority property " + r.property.str() + " does not meet " +
                      to_string(r.claim) + " (" + r.source + ")");
      },
      [&](const DegenerateCardinality& d) {
        out.push_back("cardinality: |A & M| = " + to_string(d.with_body) + ", |M - A| = " + to_string(d.without_body));
      },
      [&](const Unsettled& u) { out.push_back("unsettled: " + u.reason); },
  }, e);
  return out;
}

} // namespace

std::string explain(const Judgment& j) {
  std::string out = render(j.statement) + ": " + std::string(to_string(j.verdict)) + " [" + j.semantics + "]\n";
  auto emit = [&](const Evidence& e) {
    for (const auto& line : evidence_lines(e)) out += "  " + line + "\n";
  };
  for (const auto& e : j.context) emit(e);
  emit(j.evidence);
  for (const auto& n : j.notes) out += "  note: " + n + "\n";
  return out;
}

} // namespace quantscope
