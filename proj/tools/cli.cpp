#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "quantscope/error.hpp"
#include "quantscope/judgment.hpp"
#include "quantscope/machine.hpp"
#include "quantscope/parser.hpp"

namespace quantscope::cli {

namespace {

enum class Format { Text, Machine };

struct Options {
  std::string semantics;
  std::string schedule;
  double epsilon = 0.005;
  double margin = 0.02;
  std::uint64_t search_bound = 1'000'000;
  std::string format = "text";
  bool exact = false;
};

// Failure with an exit code; the message has already been printed.
struct Exit {
  int code;
};

int verdict_code(Verdict v) {
  switch (v) {
  case Verdict::Asserted: return 0;
  case Verdict::Refuted: return 1;
  case Verdict::Undetermined: return 2;
  case Verdict::Degenerate: return 3;
  }
  return 2;
}

std::optional<std::uint64_t> parse_u64(std::string_view text) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) return std::nullopt;
  return value;
}

std::string ratio_text(double r) {
  std::ostringstream os;
  os << std::setprecision(10) << r;
  return os.str();
}

class Runner {
public:
  Runner(const Options& opts, std::istream& in, std::ostream& out, std::ostream& err)
      : opts_(opts), in_(in), out_(out), err_(err) {}

  EvalConfig config() const {
    EvalConfig cfg;
    if (!opts_.semantics.empty()) {
      cfg.majority_semantics = parse_majority_semantics(opts_.semantics);
      if (!cfg.majority_semantics) usage("unknown semantics '" + opts_.semantics + "'");
    }
    if (!opts_.schedule.empty()) cfg.schedule = schedule();
    if (opts_.epsilon < 0) usage("--epsilon must be non-negative");
    if (opts_.margin < 0 || opts_.margin >= 0.5) usage("--margin must lie in [0, 0.5)");
    cfg.epsilon = opts_.epsilon;
    cfg.margin = opts_.margin;
    cfg.search_bound = opts_.search_bound;
    cfg.limits = limits();
    return cfg;
  }

  Format format() const { return opts_.format == "machine" ? Format::Machine : Format::Text; }

  int eval(const std::string& kb_path, const std::string& statement_text) {
    const KnowledgeBase kb = load_kb(kb_path, true);
    const EvalConfig cfg = config();

    std::vector<std::string> lines;
    if (statement_text == "-") {
      for (std::string line; std::getline(in_, line);) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        lines.push_back(line);
      }
    } else {
      lines.push_back(statement_text);
    }

    int worst = 0;
    bool first = true;
    for (const auto& line : lines) {
      int code = 0;
      try {
        const Judgment j = evaluate(parse_statement(line), kb, cfg);
        if (!first) out_ << "\n";
        first = false;
        out_ << (format() == Format::Machine ? machine_record(j).str() : explain(j));
        code = verdict_code(j.verdict);
      } catch (const ParseFailure& e) {
        err_ << "statement: " << e.error().message() << "\n";
        code = kDataError;
      } catch (const Error& e) {
        err_ << e.what() << "\n";
        code = kDataError;
      }
      worst = std::max(worst, code);
    }
    return worst;
  }

  int density(const std::string& formula_text) {
    const ArithFormula f = parse_formula(formula_text);
    const ArithLimits lim = limits();
    std::vector<std::uint64_t> sched = opts_.schedule.empty() ? default_schedule() : schedule();

    std::optional<DensityResult> result;
    if (!f.contains_prime()) {
      result = exact_density(f, lim);
    } else {
      if (opts_.exact) {
        err_ << to_string(ErrorCode::NotEventuallyPeriodic)
             << ": the formula mentions prime, so no exact density is available; estimating instead\n";
      }
      result = estimate_density(f, sched, EstimateOptions{opts_.epsilon, lim});
    }

    if (format() == Format::Machine) {
      MachineRecord rec;
      rec.put("formula", render(f));
      write_density(rec, "density", *result);
      out_ << rec.str();
      return 0;
    }
    if (result->is_exact()) {
      const auto& e = result->exact();
      out_ << "density " << render(f) << ": " << to_string(e.value) << " (exact; period " << e.certificate.period
           << " beyond " << e.certificate.threshold << ")\n";
      return 0;
    }
    const auto& est = result->estimated();
    out_ << "density " << render(f) << ": estimated\n";
    out_ << "  " << std::setw(12) << "N" << "  " << std::setw(12) << "count" << "  ratio\n";
    for (const auto& cp : est.checkpoints) {
      out_ << "  " << std::setw(12) << cp.bound << "  " << std::setw(12) << cp.count << "  " << ratio_text(cp.ratio)
           << "\n";
    }
    out_ << "  converged: " << (est.converged ? "yes" : "no") << " (epsilon " << ratio_text(opts_.epsilon) << ")\n";
    return 0;
  }

  int square(const std::string& kb_path, const std::string& restriction, const std::string& predicate) {
    const KnowledgeBase kb = load_kb(kb_path, true);
    const EvalConfig cfg = config();
    const std::string tail = " " + restriction + " " + predicate;

    struct Row {
      const char* corner;
      const char* keyword;
      std::optional<Judgment> judgment;
    };
    Row rows[] = {{"A", "each", {}}, {"E", "no", {}}, {"I", "some", {}}, {"O", "not_all", {}}, {"A", "every", {}}};
    for (auto& row : rows) {
      const std::string text = row.keyword + tail;
      try {
        row.judgment = evaluate(parse_statement(text), kb, cfg);
      } catch (const ParseFailure& e) {
        err_ << "statement '" << text << "': " << e.error().message() << "\n";
        return kDataError;
      } catch (const Error& e) {
        // Generic reading is undefined over Nat; keep the grid.
        if (std::string_view(row.keyword) == "every") continue;
        err_ << e.what() << "\n";
        return kDataError;
      }
    }

    auto verdict = [](const Row& r) { return r.judgment ? std::string(to_string(r.judgment->verdict)) : "n/a"; };
    std::vector<std::string> violations;
    auto check_pair = [&](const Row& x, const Row& y) {
      const Verdict a = x.judgment->verdict, b = y.judgment->verdict;
      if (a == b && (a == Verdict::Asserted || a == Verdict::Refuted)) {
        violations.push_back(std::string(x.corner) + " and " + y.corner + " are both " + std::string(to_string(a)));
      }
    };
    check_pair(rows[0], rows[3]);
    check_pair(rows[1], rows[2]);

    if (format() == Format::Machine) {
      MachineRecord rec;
      rec.put("restriction", restriction);
      rec.put("predicate", predicate);
      for (const auto& row : rows) {
        const std::string key = std::string(row.keyword == std::string_view("every") ? "generic" : row.corner);
        rec.put(key + ".statement", row.keyword + tail);
        rec.put(key + ".verdict", verdict(row));
      }
      rec.put("coherent", violations.empty());
      for (std::size_t i = 0; i < violations.size(); ++i) rec.put("violations." + std::to_string(i), violations[i]);
      out_ << rec.str();
    } else {
      std::size_t width = 0;
      for (const auto& row : rows) width = std::max(width, std::string(row.keyword).size() + tail.size());
      auto cell = [&](const Row& r, bool pad) {
        std::ostringstream os;
        os << r.corner << "  " << std::left << std::setw(static_cast<int>(width)) << (r.keyword + tail) << "  "
           << std::setw(pad ? 12 : 0) << verdict(r);
        return os.str();
      };
      out_ << "square of opposition for" << tail << "\n";
      out_ << "  " << cell(rows[0], true) << " | " << cell(rows[1], false) << "\n";
      out_ << "  " << cell(rows[2], true) << " | " << cell(rows[3], false) << "\n";
      out_ << "  generic " << (rows[4].keyword + tail) << ": " << verdict(rows[4]) << "\n";
      if (violations.empty()) {
        out_ << "  coherent: no contradictory pair shares a verdict\n";
      } else {
        for (const auto& v : violations) out_ << "  violation: " << v << "\n";
      }
    }
    return violations.empty() ? 0 : kIncoherent;
  }

  int check(const std::string& kb_path) {
    const KnowledgeBase kb = load_kb(kb_path, false);
    const auto& report = kb.validation();
    if (format() == Format::Machine) {
      MachineRecord rec;
      rec.put("kb", kb_path);
      write_validation(rec, "validation", report);
      out_ << rec.str();
    } else {
      for (const auto& issue : report.issues) {
        out_ << (issue.severity == Severity::Error ? "error " : "warning ") << to_string(issue.kind) << ": "
             << issue.message << "\n";
      }
      out_ << kb_path << ": " << (report.ok() ? "valid" : "invalid") << " (" << kb.concepts().size()
           << " concepts, " << kb.individuals().size() << " individuals, " << kb.axioms().size() << " axioms, "
           << kb.facts().size() << " facts)\n";
    }
    return report.ok() ? 0 : kDataError;
  }

private:
  [[noreturn]] void usage(const std::string& message) const {
    err_ << "usage error: " << message << "\n";
    throw Exit{kUsage};
  }

  std::vector<std::uint64_t> schedule() const {
    std::vector<std::uint64_t> out;
    std::stringstream ss(opts_.schedule);
    for (std::string item; std::getline(ss, item, ',');) {
      auto v = parse_u64(item);
      if (!v || *v == 0) usage("--schedule expects positive integers separated by commas, got '" + item + "'");
      if (!out.empty() && *v <= out.back()) usage("--schedule must be strictly increasing");
      out.push_back(*v);
    }
    if (out.empty()) usage("--schedule is empty");
    return out;
  }

  ArithLimits limits() const {
    ArithLimits lim;
    if (const char* env = std::getenv("QUANTSCOPE_MAX_SIEVE")) {
      auto v = parse_u64(env);
      if (!v || *v == 0) usage(std::string("QUANTSCOPE_MAX_SIEVE must be a positive integer, got '") + env + "'");
      lim.max_sieve = *v;
    }
    return lim;
  }

  ArithFormula parse_formula(const std::string& text) const {
    try {
      return parse_arith_formula(text);
    } catch (const ParseFailure& e) {
      err_ << "formula: " << e.error().message() << "\n";
      throw Exit{kDataError};
    }
  }

  KnowledgeBase load_kb(const std::string& path, bool require_valid) const {
    if (path == "-") return KnowledgeBase();
    std::ifstream file(path, std::ios::binary);
    if (!file) {
      err_ << path << ": cannot open knowledge base\n";
      throw Exit{kNoInput};
    }
    std::stringstream buffer;
    buffer << file.rdbuf();
    auto parsed = parse_kb(buffer.str());
    if (auto* errors = std::get_if<std::vector<ParseError>>(&parsed)) {
      for (const auto& e : *errors) err_ << path << ":" << e.message() << "\n";
      throw Exit{kDataError};
    }
    KnowledgeBase kb = std::get<KnowledgeBase>(std::move(parsed));
    if (require_valid && !kb.validation().ok()) {
      for (const auto& issue : kb.validation().issues) {
        if (issue.severity == Severity::Error) err_ << path << ": " << to_string(issue.kind) << ": " << issue.message << "\n";
      }
      throw Exit{kDataError};
    }
    return kb;
  }

  const Options& opts_;
  std::istream& in_;
  std::ostream& out_;
  std::ostream& err_;
};

void add_eval_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--semantics", o.semantics, "majority semantics")
      ->check(CLI::IsMember({"cardinality", "density", "proof_theoretic"}));
  cmd->add_option("--schedule", o.schedule, "density checkpoints N1,N2,...");
  cmd->add_option("--epsilon", o.epsilon, "convergence tolerance")->capture_default_str();
  cmd->add_option("--margin", o.margin, "density margin around 1/2")->capture_default_str();
  cmd->add_option("--search-bound", o.search_bound, "bound for searches over Nat")->capture_default_str();
}

void add_format(CLI::App* cmd, Options& o) {
  cmd->add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "machine"}))
      ->capture_default_str();
}

} // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"quantscope: judgments on quantified statements"};
  app.name("quantscope");
  app.require_subcommand(1);
  Options o;
  std::string kb_path, statement, formula, restriction, predicate;

  auto* eval = app.add_subcommand("eval", "judge a statement against a knowledge base ('-' for none)");
  eval->add_option("kb", kb_path, "knowledge base file, or - for the empty one")->required();
  eval->add_option("statement", statement, "statement, or - to read one per line from stdin")->required();
  add_eval_flags(eval, o);
  add_format(eval, o);

  auto* density = app.add_subcommand("density", "natural density of an arithmetic formula");
  density->add_option("formula", formula)->required();
  density->add_flag("--exact", o.exact, "require an exact density");
  density->add_option("--schedule", o.schedule, "checkpoints N1,N2,...");
  density->add_option("--epsilon", o.epsilon, "convergence tolerance")->capture_default_str();
  add_format(density, o);

  auto* square = app.add_subcommand("square", "evaluate the four corners of the square of opposition");
  square->add_option("kb", kb_path)->required();
  square->add_option("restriction", restriction)->required();
  square->add_option("predicate", predicate)->required();
  add_eval_flags(square, o);
  add_format(square, o);

  auto* check = app.add_subcommand("check", "validate a knowledge base");
  check->add_option("kb", kb_path)->required();
  add_format(check, o);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "usage error: " << e.what() << "\n" << "run 'quantscope --help' for usage\n";
    return kUsage;
  }

  Runner runner(o, in, out, err);
  try {
    if (eval->parsed()) return runner.eval(kb_path, statement);
    if (density->parsed()) return runner.density(formula);
    if (square->parsed()) return runner.square(kb_path, restriction, predicate);
    return runner.check(kb_path);
  } catch (const Exit& e) {
    return e.code;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return kDataError;
  }
}

} // namespace quantscope::cli
