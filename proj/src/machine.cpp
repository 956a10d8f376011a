#include "quantscope/machine.hpp"

#include <iomanip>
#include <sstream>

namespace quantscope {

namespace {

using namespace evidence;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string ratio_text(double r) {
  std::ostringstream os;
  os << std::setprecision(10) << r;
  return os.str();
}

std::string idx(const std::string& prefix, std::size_t i) { return prefix + "." + std::to_string(i); }

void write_derivation(MachineRecord& out, const std::string& p, const GenericDerivation& d) {
  out.put(p + ".concept", d.target.str());
  out.put(p + ".predicate", d.predicate.str());
  out.put(p + ".sign", std::string(1, sign_char(d.sign)));
  std::string chain;
  for (const auto& c : d.chain) chain += (chain.empty() ? "" : " > ") + c.str();
  out.put(p + ".chain", chain);
}

void write_cardinality(MachineRecord& out, const std::string& p, const CardinalityResult& c) {
  std::visit(overloaded{
      [&](const FiniteSet& s) {
        out.put(p + ".class", "finite");
        out.put(p + ".count", s.count);
      },
      [&](const CountablyInfinite& s) {
        out.put(p + ".class", "countably_infinite");
        out.put(p + ".reason", s.reason);
      },
      [&](const UnknownBeyondProbe& s) {
        out.put(p + ".class", "unknown_beyond_probe");
        out.put(p + ".count", s.count);
        out.put(p + ".probe_bound", s.probe_bound);
      },
  }, c);
}

const char* source_name(SignSource s) { return s == SignSource::Fact ? "fact" : "inherited_axiom"; }

} // namespace

void MachineRecord::put(std::string key, std::string value) { entries_.emplace_back(std::move(key), std::move(value)); }

std::string MachineRecord::str() const {
  std::string out;
  for (const auto& [k, v] : entries_) out += k + " = " + escape_value(v) + "\n";
  return out;
}

std::string escape_value(std::string_view value) {
  std::string out;
  for (char c : value) {
    if (c == '\\') {
      out += "\\\\";
    } else if (c == '\n') {
      out += "\\n";
    } else {
      out += c;
    }
  }
  return out;
}

void write_density(MachineRecord& out, const std::string& p, const DensityResult& d) {
  out.put(p + ".sample_bound", d.sample_bound);
  std::visit(overloaded{
      [&](const ExactDensity& e) {
        out.put(p + ".kind", "exact");
        out.put(p + ".value", to_string(e.value));
        out.put(p + ".threshold", e.certificate.threshold);
        out.put(p + ".period", e.certificate.period);
      },
      [&](const EstimatedDensity& e) {
        out.put(p + ".kind", "estimated");
        out.put(p + ".converged", e.converged);
        for (std::size_t i = 0; i < e.checkpoints.size(); ++i) {
          const auto& cp = e.checkpoints[i];
          const std::string q = idx(p + ".checkpoints", i);
          out.put(q + ".n", cp.bound);
          out.put(q + ".count", cp.count);
          out.put(q + ".ratio", ratio_text(cp.ratio));
        }
      },
      [&](const UnknownDensity&) { out.put(p + ".kind", "unknown"); },
  }, d.value);
}

void write_evidence(MachineRecord& out, const std::string& p, const Evidence& e) {
  out.put(p + ".kind", std::string(evidence_kind(e)));
  std::visit(overloaded{
      [&](const OmegaProof& x) {
        out.put(p + ".literal", to_string(x.literal));
        out.put(p + ".checked.count", static_cast<std::uint64_t>(x.checked.size()));
        for (std::size_t i = 0; i < x.checked.size(); ++i) {
          const std::string q = idx(p + ".checked", i);
          out.put(q + ".individual", x.checked[i].individual.str());
          out.put(q + ".source", source_name(x.checked[i].source));
          if (x.checked[i].derivation) write_derivation(out, q + ".derivation", *x.checked[i].derivation);
        }
      },
      [&](const GenericProof& x) {
        write_derivation(out, p + ".derivation", x.derivation);
        out.put(p + ".exceptions_checked", x.exceptions_checked);
      },
      [&](const GenericClaim& x) { write_derivation(out, p + ".derivation", x.derivation); },
      [&](const ExistentialWitness& x) {
        out.put(p + ".subject", x.subject);
        out.put(p + ".source", x.source);
      },
      [&](const IndividualCounterexample& x) {
        out.put(p + ".subject", x.subject);
        out.put(p + ".source", x.source);
      },
      [&](const ConceptualCounterexample& x) {
        out.put(p + ".concept", x.concept_id.str());
        write_derivation(out, p + ".derivation", x.derivation);
        out.put(p + ".has_instances", x.has_instances);
      },
      [&](const CardinalityComparison& x) {
        write_cardinality(out, p + ".with_body", x.with_body);
        write_cardinality(out, p + ".without_body", x.without_body);
        out.put(p + ".unknown", x.unknown);
      },
      [&](const DensityEvidence& x) {
        write_density(out, p + ".body", x.body);
        if (x.restriction) write_density(out, p + ".restriction", *x.restriction);
        if (x.exact_relative) out.put(p + ".relative", to_string(*x.exact_relative));
        for (std::size_t i = 0; i < x.relative_ratios.size(); ++i) {
          out.put(idx(p + ".relative_ratios", i), ratio_text(x.relative_ratios[i]));
        }
        out.put(p + ".threshold", to_string(x.threshold));
      },
      [&](const EncounterProof& x) {
        out.put(p + ".claim", to_string(x.claim));
        for (std::size_t i = 0; i < x.encounters.size(); ++i) {
          const std::string q = idx(p + ".encounters", i);
          out.put(q + ".property", x.encounters[i].property.str());
          out.put(q + ".witness", x.encounters[i].witness);
          out.put(q + ".witness_kind", x.encounters[i].witness_is_concept ? "concept" : "individual");
        }
      },
      [&](const DualRefutation& x) {
        out.put(p + ".positive", x.positive);
        out.put(p + ".negative", x.negative);
        out.put(p + ".unknown", x.unknown);
      },
      [&](const IncompatibilityRefutation& x) {
        out.put(p + ".property", x.property.str());
        out.put(p + ".claim", to_string(x.claim));
        out.put(p + ".source", x.source);
      },
      [&](const DegenerateCardinality& x) {
        write_cardinality(out, p + ".with_body", x.with_body);
        write_cardinality(out, p + ".without_body", x.without_body);
      },
      [&](const Unsettled& x) { out.put(p + ".reason", x.reason); },
  }, e);
}

void write_validation(MachineRecord& out, const std::string& p, const ValidationReport& report) {
  out.put(p + ".ok", report.ok());
  for (std::size_t i = 0; i < report.issues.size(); ++i) {
    const auto& issue = report.issues[i];
    const std::string q = idx(p + ".issues", i);
    out.put(q + ".kind", to_string(issue.kind));
    out.put(q + ".severity", issue.severity == Severity::Error ? "error" : "warning");
    if (issue.line) out.put(q + ".line", static_cast<std::uint64_t>(*issue.line));
    out.put(q + ".message", issue.message);
  }
}

MachineRecord machine_record(const Judgment& j) {
  MachineRecord out;
  out.put("statement", render(j.statement));
  out.put("verdict", std::string(to_string(j.verdict)));
  out.put("semantics", j.semantics);
  write_evidence(out, "evidence", j.evidence);
  for (std::size_t i = 0; i < j.context.size(); ++i) write_evidence(out, idx("context", i), j.context[i]);
  for (std::size_t i = 0; i < j.notes.size(); ++i) out.put(idx("notes", i), j.notes[i]);
  return out;
}

} // namespace quantscope
