// Parsers for the statement language, arithmetic formulas and the line-based
// knowledge base format. All three are deterministic and report positioned
// errors.
//
//   stmt        := quant restriction body
//   quant       := "each" | "every" | "some" | "no" | "not_all" | "majority"
//   restriction := IDENT | "Nat" [ "[" formula "]" ]
//   body        := [ "!" ] IDENT            (concept restriction)
//                | formula                  (Nat restriction)
//
//   formula := conj { "|" conj }
//   conj    := unary { "&" unary }
//   unary   := "!" unary | atom | "(" formula ")"
//   atom    := "prime" | NUMBER "|" "n" | "n" "mod" NUMBER "==" NUMBER
//            | "n" ("<" | "<=" | ">" | ">=") NUMBER

#ifndef QUANTSCOPE_PARSER_HPP
#define QUANTSCOPE_PARSER_HPP

#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "quantscope/arith.hpp"
#include "quantscope/kb.hpp"
#include "quantscope/logic.hpp"

namespace quantscope {

// 1-based; length counts bytes and is at least 1.
struct SourceSpan {
  int line = 1;
  int column = 1;
  int length = 1;
  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

enum class ParseErrorKind { Syntax, Domain };

struct ParseError {
  SourceSpan span;
  std::vector<std::string> expected;  // never empty
  std::string found;
  ParseErrorKind kind = ParseErrorKind::Syntax;

  // "line:column: expected A or B, found C"
  std::string message() const;
};

class ParseFailure : public std::runtime_error {
public:
  explicit ParseFailure(ParseError error);
  const ParseError& error() const noexcept { return error_; }

private:
  ParseError error_;
};

// A leading chain of "!" on a Nat body is folded into Statement::positive.
// Throws ParseFailure.
Statement parse_statement(std::string_view text);

// Throws ParseFailure; kind Domain for a zero modulus or divisor, or a
// residue not below its modulus.
ArithFormula parse_arith_formula(std::string_view text);

// Directives, one per line, '#' to end of line is a comment:
//   concept C [<: D {, D}]
//   axiom C : [!]p
//   individual x : C
//   fact x : [!]p
//   majority_props C : [p {, p}]
//   disjoint p q
// Every malformed line yields exactly one error; on success the knowledge
// base carries its validation report.
std::variant<KnowledgeBase, std::vector<ParseError>> parse_kb(std::string_view text);

} // namespace quantscope

#endif // QUANTSCOPE_PARSER_HPP
