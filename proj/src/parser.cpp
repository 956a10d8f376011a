#include "quantscope/parser.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <optional>

namespace quantscope {

namespace {

enum class Tok {
  Ident,
  Number,
  Bang,
  Amp,
  Pipe,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Lt,
  Le,
  Gt,
  Ge,
  EqEq,
  Colon,
  SubsumedBy,
  Comma,
  End,
  Invalid,
};

struct Token {
  Tok kind;
  std::string_view text;
  SourceSpan span;
};

std::string describe(const Token& t) {
  if (t.kind == Tok::End) return "end of input";
  return "'" + std::string(t.text) + "'";
}

// Splits one logical line into tokens; never fails, unknown characters become
// Invalid tokens for the parser to report.
std::vector<Token> lex(std::string_view text, int line) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto at = [&](std::size_t start, std::size_t len, Tok kind) {
    out.push_back({kind, text.substr(start, len), {line, static_cast<int>(start) + 1, static_cast<int>(len)}});
  };
  while (i < text.size()) {
    const unsigned char c = static_cast<unsigned char>(text[i]);
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    if (std::isalpha(c) || c == '_') {
      std::size_t j = i + 1;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
      at(i, j - i, Tok::Ident);
      i = j;
      continue;
    }
    if (std::isdigit(c)) {
      std::size_t j = i + 1;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      at(i, j - i, Tok::Number);
      i = j;
      continue;
    }
    auto next_is = [&](char n) { return i + 1 < text.size() && text[i + 1] == n; };
    switch (c) {
    case '!': at(i, 1, Tok::Bang); break;
    case '&': at(i, 1, Tok::Amp); break;
    case '|': at(i, 1, Tok::Pipe); break;
    case '(': at(i, 1, Tok::LParen); break;
    case ')': at(i, 1, Tok::RParen); break;
    case '[': at(i, 1, Tok::LBracket); break;
    case ']': at(i, 1, Tok::RBracket); break;
    case ',': at(i, 1, Tok::Comma); break;
    case ':': at(i, 1, Tok::Colon); break;
    case '<':
      if (next_is('=')) {
        at(i, 2, Tok::Le);
        ++i;
      } else if (next_is(':')) {
        at(i, 2, Tok::SubsumedBy);
        ++i;
      } else {
        at(i, 1, Tok::Lt);
      }
      break;
    case '>':
      if (next_is('=')) {
        at(i, 2, Tok::Ge);
        ++i;
      } else {
        at(i, 1, Tok::Gt);
      }
      break;
    case '=':
      if (next_is('=')) {
        at(i, 2, Tok::EqEq);
        ++i;
      } else {
        at(i, 1, Tok::Invalid);
      }
      break;
    default: {
      // Keep multi-byte UTF-8 sequences together in the error message.
      std::size_t len = 1;
      while (i + len < text.size() && (static_cast<unsigned char>(text[i + len]) & 0xC0) == 0x80) ++len;
      at(i, len, Tok::Invalid);
      i += len - 1;
      break;
    }
    }
    ++i;
  }
  out.push_back({Tok::End, {}, {line, static_cast<int>(text.size()) + 1, 1}});
  return out;
}

constexpr std::array<std::string_view, 6> kQuantifiers = {"each", "every", "some", "no", "not_all", "majority"};

class TokenParser {
public:
  explicit TokenParser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  const Token& peek() const { return tokens_[pos_]; }
  bool at(Tok kind) const { return peek().kind == kind; }
  bool at_word(std::string_view word) const { return at(Tok::Ident) && peek().text == word; }
  const Token& advance() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void fail(std::vector<std::string> expected) const { fail_at(peek(), std::move(expected)); }

  [[noreturn]] static void fail_at(const Token& t, std::vector<std::string> expected,
                                   ParseErrorKind kind = ParseErrorKind::Syntax) {
    throw ParseFailure(ParseError{t.span, std::move(expected), describe(t), kind});
  }

  const Token& expect(Tok kind, std::string description) {
    if (!at(kind)) fail({std::move(description)});
    return advance();
  }

  void expect_word(std::string_view word) {
    if (!at_word(word)) fail({"'" + std::string(word) + "'"});
    advance();
  }

  std::uint64_t number(std::string description) {
    const Token& t = expect(Tok::Number, description);
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
    if (ec != std::errc() || ptr != t.text.data() + t.text.size()) fail_at(t, {"number below 2^64"});
    return value;
  }

  void expect_end() { expect(Tok::End, "end of input"); }

  ArithFormula formula() {
    ArithFormula lhs = conjunction();
    while (at(Tok::Pipe)) {
      advance();
      lhs = ArithFormula::disjunction(std::move(lhs), conjunction());
    }
    return lhs;
  }

private:
  ArithFormula conjunction() {
    ArithFormula lhs = unary();
    while (at(Tok::Amp)) {
      advance();
      lhs = ArithFormula::conjunction(std::move(lhs), unary());
    }
    return lhs;
  }

  ArithFormula unary() {
    if (at(Tok::Bang)) {
      advance();
      return ArithFormula::negation(unary());
    }
    if (at(Tok::LParen)) {
      advance();
      ArithFormula inner = formula();
      expect(Tok::RParen, "')'");
      return inner;
    }
    return atom();
  }

  ArithFormula atom() {
    if (at_word("prime")) {
      advance();
      return ArithFormula::prime();
    }
    if (at(Tok::Number)) {
      const Token& k_tok = peek();
      const std::uint64_t k = number("divisor");
      expect(Tok::Pipe, "'|'");
      expect_word("n");
      if (k == 0) fail_at(k_tok, {"divisor >= 1"}, ParseErrorKind::Domain);
      return ArithFormula::divides(k);
    }
    if (at_word("n")) {
      advance();
      if (at_word("mod")) {
        advance();
        const Token& m_tok = peek();
        const std::uint64_t m = number("modulus");
        expect(Tok::EqEq, "'=='");
        const Token& r_tok = peek();
        const std::uint64_t r = number("residue");
        if (m == 0) fail_at(m_tok, {"modulus >= 1"}, ParseErrorKind::Domain);
        if (r >= m) fail_at(r_tok, {"residue below " + std::to_string(m)}, ParseErrorKind::Domain);
        return ArithFormula::congruence(m, r);
      }
      std::optional<Comparison> op;
      switch (peek().kind) {
      case Tok::Lt: op = Comparison::Less; break;
      case Tok::Le: op = Comparison::LessEq; break;
      case Tok::Gt: op = Comparison::Greater; break;
      case Tok::Ge: op = Comparison::GreaterEq; break;
      default: fail({"'mod'", "'<'", "'<='", "'>'", "'>='"});
      }
      advance();
      return ArithFormula::compare(*op, number("comparison constant"));
    }
    fail({"'prime'", "'n'", "divisor literal", "'('", "'!'"});
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

Statement statement(TokenParser& p) {
  const Token& q = p.peek();
  std::optional<QuantifierKind> kind;
  for (std::size_t i = 0; i < kQuantifiers.size(); ++i) {
    if (p.at_word(kQuantifiers[i])) kind = static_cast<QuantifierKind>(i);
  }
  if (!kind) {
    std::vector<std::string> expected;
    for (auto k : kQuantifiers) expected.push_back("'" + std::string(k) + "'");
    TokenParser::fail_at(q, expected);
  }
  p.advance();

  Statement s;
  s.quantifier = *kind;
  const Token& r = p.expect(Tok::Ident, "concept name or 'Nat'");
  if (r.text == "Nat") {
    NatDomain nat;
    if (p.at(Tok::LBracket)) {
      p.advance();
      nat.filter = p.formula();
      p.expect(Tok::RBracket, "']'");
    }
    s.restriction = std::move(nat);
    ArithFormula body = p.formula();
    while (const auto* neg = std::get_if<formula::Not>(&body.node())) {
      s.positive = !s.positive;
      ArithFormula inner = neg->operand;
      body = std::move(inner);
    }
    s.body = std::move(body);
  } else {
    s.restriction = ConceptId(std::string(r.text));
    if (p.at(Tok::Bang)) {
      p.advance();
      s.positive = false;
    }
    s.body = PredicateId(std::string(p.expect(Tok::Ident, "predicate name").text));
  }
  p.expect_end();
  return s;
}

// quantifier order in kQuantifiers mirrors QuantifierKind
static_assert(static_cast<int>(QuantifierKind::Majority) == 5);

Literal literal(TokenParser& p) {
  bool positive = true;
  if (p.at(Tok::Bang)) {
    p.advance();
    positive = false;
  }
  return Literal{PredicateId(std::string(p.expect(Tok::Ident, "predicate name").text)), positive};
}

void kb_line(TokenParser& p, KnowledgeBase::Builder& kb, int line) {
  const Token& directive = p.peek();
  auto ident = [&](const char* what) { return std::string(p.expect(Tok::Ident, what).text); };

  if (p.at_word("concept")) {
    p.advance();
    ConceptId c(ident("concept name"));
    std::vector<ConceptId> parents;
    if (p.at(Tok::SubsumedBy)) {
      p.advance();
      parents.emplace_back(ident("parent concept name"));
      while (p.at(Tok::Comma)) {
        p.advance();
        parents.emplace_back(ident("parent concept name"));
      }
    } else if (!p.at(Tok::End)) {
      p.fail({"'<:'", "end of line"});
    }
    p.expect_end();
    kb.add_concept(std::move(c), std::move(parents), line);
  } else if (p.at_word("axiom")) {
    p.advance();
    ConceptId c(ident("concept name"));
    p.expect(Tok::Colon, "':'");
    Literal l = literal(p);
    p.expect_end();
    kb.add_axiom(std::move(c), std::move(l), line);
  } else if (p.at_word("individual")) {
    p.advance();
    IndividualId x(ident("individual name"));
    p.expect(Tok::Colon, "':'");
    ConceptId c(ident("concept name"));
    p.expect_end();
    kb.add_individual(std::move(x), std::move(c), line);
  } else if (p.at_word("fact")) {
    p.advance();
    IndividualId x(ident("individual name"));
    p.expect(Tok::Colon, "':'");
    Literal l = literal(p);
    p.expect_end();
    kb.add_fact(std::move(x), std::move(l), line);
  } else if (p.at_word("majority_props")) {
    p.advance();
    ConceptId c(ident("concept name"));
    p.expect(Tok::Colon, "':'");
    std::vector<PredicateId> props;
    if (!p.at(Tok::End)) {
      props.emplace_back(ident("predicate name"));
      while (p.at(Tok::Comma)) {
        p.advance();
        props.emplace_back(ident("predicate name"));
      }
    }
    p.expect_end();
    kb.add_majority_props(std::move(c), std::move(props), line);
  } else if (p.at_word("disjoint")) {
    p.advance();
    PredicateId a(ident("predicate name"));
    PredicateId b(ident("predicate name"));
    p.expect_end();
    kb.add_disjoint(std::move(a), std::move(b), line);
  } else {
    TokenParser::fail_at(directive, {"'concept'", "'axiom'", "'individual'", "'fact'", "'majority_props'",
                                     "'disjoint'"});
  }
}

} // namespace

std::string ParseError::message() const {
  std::string out = std::to_string(span.line) + ":" + std::to_string(span.column) + ": expected ";
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (i > 0) out += i + 1 == expected.size() ? " or " : ", ";
    out += expected[i];
  }
  return out + ", found " + found;
}

ParseFailure::ParseFailure(ParseError error) : std::runtime_error(error.message()), error_(std::move(error)) {}

Statement parse_statement(std::string_view text) {
  TokenParser p(lex(text, 1));
  return statement(p);
}

ArithFormula parse_arith_formula(std::string_view text) {
  TokenParser p(lex(text, 1));
  ArithFormula f = p.formula();
  p.expect_end();
  return f;
}

std::variant<KnowledgeBase, std::vector<ParseError>> parse_kb(std::string_view text) {
  KnowledgeBase::Builder builder;
  std::vector<ParseError> errors;
  int line = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line;
    std::string_view raw = text.substr(start, end - start);
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);

    auto tokens = lex(raw, line);
    if (tokens.size() > 1) {
      try {
        TokenParser p(std::move(tokens));
        kb_line(p, builder, line);
      } catch (const ParseFailure& e) {
        errors.push_back(e.error());
      }
    }
    if (end == text.size()) break;
    start = end + 1;
  }
  if (!errors.empty()) return errors;
  return builder.build();
}

} // namespace quantscope
