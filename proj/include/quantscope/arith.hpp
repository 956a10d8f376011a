// The built-in domain of positive integers {1, 2, 3, ...} and its definable
// subsets: pointwise evaluation, prime sieving, natural density (exact for
// eventually periodic sets, estimated from prefix ratios otherwise) and
// cardinality classification.

#ifndef QUANTSCOPE_ARITH_HPP
#define QUANTSCOPE_ARITH_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <boost/rational.hpp>

namespace quantscope {

using Rational = boost::rational<std::int64_t>;

std::string to_string(const Rational& r);

enum class Comparison { Less, LessEq, Greater, GreaterEq };

class ArithFormula;

namespace formula {
struct Prime {
  friend bool operator==(const Prime&, const Prime&) = default;
};
// k | n
struct Divides {
  std::uint64_t divisor;
  friend bool operator==(const Divides&, const Divides&) = default;
};
// n mod m == r
struct Congruence {
  std::uint64_t modulus;
  std::uint64_t residue;
  friend bool operator==(const Congruence&, const Congruence&) = default;
};
// n <op> c
struct Compare {
  Comparison op;
  std::uint64_t bound;
  friend bool operator==(const Compare&, const Compare&) = default;
};
struct Not;
struct And;
struct Or;
} // namespace formula

// Immutable formula over one free variable n ranging over the positive integers.
// Copies share structure.
class ArithFormula {
public:
  using Node = std::variant<formula::Prime, formula::Divides, formula::Congruence, formula::Compare,
                            formula::Not, formula::And, formula::Or>;

  // Factories check the atom invariants (divisor >= 1, modulus >= 1,
  // residue < modulus) and throw Error(InvalidFormula) otherwise.
  static ArithFormula prime();
  static ArithFormula divides(std::uint64_t k);
  static ArithFormula congruence(std::uint64_t modulus, std::uint64_t residue);
  static ArithFormula compare(Comparison op, std::uint64_t bound);
  static ArithFormula negation(ArithFormula operand);
  static ArithFormula conjunction(ArithFormula lhs, ArithFormula rhs);
  static ArithFormula disjunction(ArithFormula lhs, ArithFormula rhs);

  const Node& node() const noexcept;

  bool contains_prime() const;

  friend bool operator==(const ArithFormula& a, const ArithFormula& b);

private:
  explicit ArithFormula(Node node);

  std::shared_ptr<const Node> node_;
};

namespace formula {
struct Not {
  ArithFormula operand;
  friend bool operator==(const Not&, const Not&) = default;
};
struct And {
  ArithFormula lhs;
  ArithFormula rhs;
  friend bool operator==(const And&, const And&) = default;
};
struct Or {
  ArithFormula lhs;
  ArithFormula rhs;
  friend bool operator==(const Or&, const Or&) = default;
};
} // namespace formula

inline const ArithFormula::Node& ArithFormula::node() const noexcept { return *node_; }

// Canonical text form, accepted back by parse_arith_formula.
std::string render(const ArithFormula& f);

// Trial-division primality; 1 is not prime.
bool is_prime(std::uint64_t n);

// Pointwise semantics. Requires n >= 1.
bool eval_formula(const ArithFormula& f, std::uint64_t n);

struct ArithLimits {
  // Largest N any sieve or prefix count may reach.
  std::uint64_t max_sieve = 100'000'000;
};

// Sieve of Eratosthenes over [1, limit], one bit per integer.
class PrimeSieve {
public:
  explicit PrimeSieve(std::uint64_t limit);

  std::uint64_t limit() const noexcept { return limit_; }
  bool is_prime(std::uint64_t n) const;

private:
  std::uint64_t limit_;
  std::vector<bool> composite_;
};

// Number of primes in [1, n]. Throws Error(BoundTooLarge) above limits.max_sieve.
std::uint64_t sieve_count(std::uint64_t n, const ArithLimits& limits = {});

// Beyond `threshold`, membership depends only on n mod `period`.
struct PeriodicCertificate {
  std::uint64_t threshold;
  std::uint64_t period;
};

// Threshold = largest comparison constant + 1 (0 without comparisons), period =
// lcm of all moduli and divisors (1 without any). Prime atoms are ignored.
// Throws Error(BoundTooLarge) when the period exceeds limits.max_sieve.
PeriodicCertificate periodic_certificate(const ArithFormula& f, const ArithLimits& limits = {});

struct DensityCheckpoint {
  std::uint64_t bound;
  std::uint64_t count;
  double ratio;
  friend bool operator==(const DensityCheckpoint&, const DensityCheckpoint&) = default;
};

struct ExactDensity {
  Rational value;
  PeriodicCertificate certificate;
};

struct EstimatedDensity {
  std::vector<DensityCheckpoint> checkpoints;
  bool converged = false;
};

struct UnknownDensity {};

struct DensityResult {
  std::variant<ExactDensity, EstimatedDensity, UnknownDensity> value;
  // Largest N examined (the period end for exact results).
  std::uint64_t sample_bound = 0;

  bool is_exact() const noexcept { return std::holds_alternative<ExactDensity>(value); }
  const ExactDensity& exact() const { return std::get<ExactDensity>(value); }
  const EstimatedDensity& estimated() const { return std::get<EstimatedDensity>(value); }
};

// Natural density of a Prime-free formula, in lowest terms.
// Throws Error(NotEventuallyPeriodic) when f mentions prime.
DensityResult exact_density(const ArithFormula& f, const ArithLimits& limits = {});

struct EstimateOptions {
  double epsilon = 0.005;
  ArithLimits limits;
};

std::vector<std::uint64_t> default_schedule();

// Exact prefix counts |{n <= N : f(n)}| at every N of the schedule.
// Converged iff the last three ratios pairwise differ by at most epsilon.
// Throws Error(InvalidSchedule) for an empty or non-increasing schedule and
// Error(BoundTooLarge) when the schedule exceeds limits.max_sieve.
DensityResult estimate_density(const ArithFormula& f, const std::vector<std::uint64_t>& schedule,
                               const EstimateOptions& options = {});

// Prefix counts of f at each bound, with one shared sieve. Same errors as
// estimate_density.
std::vector<std::uint64_t> prefix_counts(const ArithFormula& f, const std::vector<std::uint64_t>& schedule,
                                         const ArithLimits& limits = {});

// Smallest n in [1, bound] satisfying f. Throws Error(BoundTooLarge) when f
// needs primality and bound exceeds limits.max_sieve.
std::optional<std::uint64_t> first_satisfying(const ArithFormula& f, std::uint64_t bound,
                                              const ArithLimits& limits = {});

struct FiniteSet {
  std::uint64_t count;
  friend bool operator==(const FiniteSet&, const FiniteSet&) = default;
};
struct CountablyInfinite {
  std::string reason;
  friend bool operator==(const CountablyInfinite&, const CountablyInfinite&) = default;
};
struct UnknownBeyondProbe {
  std::uint64_t count;
  std::uint64_t probe_bound;
  friend bool operator==(const UnknownBeyondProbe&, const UnknownBeyondProbe&) = default;
};

using CardinalityResult = std::variant<FiniteSet, CountablyInfinite, UnknownBeyondProbe>;

std::string to_string(const CardinalityResult& c);

// Classifies |{n >= 1 : f(n)}|. Every formula of the language is decided when
// its periodic certificate fits under the limits; UnknownBeyondProbe carries the
// count up to probe_bound otherwise.
CardinalityResult cardinality_class(const ArithFormula& f, std::uint64_t probe_bound,
                                    const ArithLimits& limits = {});

} // namespace quantscope

#endif // QUANTSCOPE_ARITH_HPP
