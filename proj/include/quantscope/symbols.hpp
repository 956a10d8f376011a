// Names used across the engine: concepts, predicates, individuals, literals.

#ifndef QUANTSCOPE_SYMBOLS_HPP
#define QUANTSCOPE_SYMBOLS_HPP

#include <compare>
#include <ostream>
#include <string>
#include <utility>

namespace quantscope {

// A name tagged with the kind of entity it denotes, so a concept name cannot be
// passed where a predicate is expected.
template <class Tag>
class Symbol {
public:
  Symbol() = default;
  explicit Symbol(std::string name) : name_(std::move(name)) {}

  const std::string& str() const noexcept { return name_; }

  friend auto operator<=>(const Symbol&, const Symbol&) = default;
  friend std::ostream& operator<<(std::ostream& os, const Symbol& s) { return os << s.name_; }

private:
  std::string name_;
};

struct ConceptTag;
struct PredicateTag;
struct IndividualTag;

using ConceptId = Symbol<ConceptTag>;
using PredicateId = Symbol<PredicateTag>;
using IndividualId = Symbol<IndividualTag>;

enum class Sign { Positive, Negative };

constexpr Sign flip(Sign s) noexcept { return s == Sign::Positive ? Sign::Negative : Sign::Positive; }
constexpr Sign sign_of(bool positive) noexcept { return positive ? Sign::Positive : Sign::Negative; }
constexpr char sign_char(Sign s) noexcept { return s == Sign::Positive ? '+' : '-'; }

// A predicate, possibly negated: `p` or `!p`.
struct Literal {
  PredicateId predicate;
  bool positive = true;

  Sign sign() const noexcept { return sign_of(positive); }
  Literal negated() const { return {predicate, !positive}; }
  // Whether a known sign for the predicate makes this literal true.
  bool satisfied_by(Sign s) const noexcept { return s == sign(); }

  friend auto operator<=>(const Literal&, const Literal&) = default;
};

inline std::string to_string(const Literal& l) { return (l.positive ? "" : "!") + l.predicate.str(); }

} // namespace quantscope

#endif // QUANTSCOPE_SYMBOLS_HPP
