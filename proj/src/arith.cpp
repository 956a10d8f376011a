#include "quantscope/arith.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "quantscope/error.hpp"

namespace quantscope {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Evaluates f at n, asking `prime_at` for the Prime atom.
template <class PrimeFn>
bool eval_with(const ArithFormula& f, std::uint64_t n, const PrimeFn& prime_at) {
  return std::visit(overloaded{
      [&](const formula::Prime&) { return prime_at(n); },
      [&](const formula::Divides& d) { return n % d.divisor == 0; },
      [&](const formula::Congruence& c) { return n % c.modulus == c.residue; },
      [&](const formula::Compare& c) {
        switch (c.op) {
        case Comparison::Less: return n < c.bound;
        case Comparison::LessEq: return n <= c.bound;
        case Comparison::Greater: return n > c.bound;
        case Comparison::GreaterEq: return n >= c.bound;
        }
        return false;
      },
      [&](const formula::Not& x) { return !eval_with(x.operand, n, prime_at); },
      [&](const formula::And& x) { return eval_with(x.lhs, n, prime_at) && eval_with(x.rhs, n, prime_at); },
      [&](const formula::Or& x) { return eval_with(x.lhs, n, prime_at) || eval_with(x.rhs, n, prime_at); },
  }, f.node());
}

// Largest n that can satisfy f (or !f when `positive` is false), if the
// formula is bounded by an upper comparison.
std::optional<std::uint64_t> upper_bound(const ArithFormula& f, bool positive) {
  auto combine_min = [](std::optional<std::uint64_t> a, std::optional<std::uint64_t> b) -> std::optional<std::uint64_t> {
    if (a && b) return std::min(*a, *b);
    return a ? a : b;
  };
  auto combine_max = [](std::optional<std::uint64_t> a, std::optional<std::uint64_t> b) -> std::optional<std::uint64_t> {
    if (a && b) return std::max(*a, *b);
    return std::nullopt;
  };
  auto below = [](std::uint64_t c) -> std::uint64_t { return c == 0 ? 0 : c - 1; };
  return std::visit(overloaded{
      [&](const formula::Compare& c) -> std::optional<std::uint64_t> {
        switch (c.op) {
        case Comparison::Less: return positive ? std::optional(below(c.bound)) : std::nullopt;
        case Comparison::LessEq: return positive ? std::optional(c.bound) : std::nullopt;
        case Comparison::Greater: return positive ? std::nullopt : std::optional(c.bound);
        case Comparison::GreaterEq: return positive ? std::nullopt : std::optional(below(c.bound));
        }
        return std::nullopt;
      },
      [&](const formula::Not& x) { return upper_bound(x.operand, !positive); },
      [&](const formula::And& x) {
        auto l = upper_bound(x.lhs, positive);
        auto r = upper_bound(x.rhs, positive);
        return positive ? combine_min(l, r) : combine_max(l, r);
      },
      [&](const formula::Or& x) {
        auto l = upper_bound(x.lhs, positive);
        auto r = upper_bound(x.rhs, positive);
        return positive ? combine_max(l, r) : combine_min(l, r);
      },
      [](const auto&) -> std::optional<std::uint64_t> { return std::nullopt; },
  }, f.node());
}

void collect_certificate(const ArithFormula& f, std::uint64_t& period, std::optional<std::uint64_t>& max_bound,
                         const ArithLimits& limits) {
  auto fold_lcm = [&](std::uint64_t m) {
    std::uint64_t l = std::lcm(period, m);
    if (l > limits.max_sieve) {
      throw Error(ErrorCode::BoundTooLarge, "period " + std::to_string(l) + " exceeds the limit of " +
                                                std::to_string(limits.max_sieve));
    }
    period = l;
  };
  std::visit(overloaded{
      [&](const formula::Prime&) {},
      [&](const formula::Divides& d) { fold_lcm(d.divisor); },
      [&](const formula::Congruence& c) { fold_lcm(c.modulus); },
      [&](const formula::Compare& c) { max_bound = std::max(max_bound.value_or(0), c.bound); },
      [&](const formula::Not& x) { collect_certificate(x.operand, period, max_bound, limits); },
      [&](const formula::And& x) {
        collect_certificate(x.lhs, period, max_bound, limits);
        collect_certificate(x.rhs, period, max_bound, limits);
      },
      [&](const formula::Or& x) {
        collect_certificate(x.lhs, period, max_bound, limits);
        collect_certificate(x.rhs, period, max_bound, limits);
      },
  }, f.node());
}

// |{n in [1, bound] : f(n)}|, sieving only when f needs primality.
std::uint64_t count_up_to(const ArithFormula& f, std::uint64_t bound) {
  std::uint64_t count = 0;
  if (f.contains_prime()) {
    PrimeSieve sieve(bound);
    auto prime_at = [&](std::uint64_t n) { return sieve.is_prime(n); };
    for (std::uint64_t n = 1; n <= bound; ++n) count += eval_with(f, n, prime_at) ? 1 : 0;
  } else {
    auto never = [](std::uint64_t) { return false; };
    for (std::uint64_t n = 1; n <= bound; ++n) count += eval_with(f, n, never) ? 1 : 0;
  }
  return count;
}

std::string render_at(const ArithFormula& f, int level) {
  auto wrap = [](bool needed, std::string s) { return needed ? "(" + s + ")" : s; };
  return std::visit(overloaded{
      [&](const formula::Prime&) { return std::string("prime"); },
      [&](const formula::Divides& d) { return wrap(level >= 0, std::to_string(d.divisor) + " | n"); },
      [&](const formula::Congruence& c) {
        return wrap(level > 2, "n mod " + std::to_string(c.modulus) + " == " + std::to_string(c.residue));
      },
      [&](const formula::Compare& c) {
        const char* op = c.op == Comparison::Less      ? "<"
                         : c.op == Comparison::LessEq  ? "<="
                         : c.op == Comparison::Greater ? ">"
                                                       : ">=";
        return wrap(level > 2, std::string("n ") + op + " " + std::to_string(c.bound));
      },
      // Operands of ! sit at level 3 so that compound atoms get parentheses.
      [&](const formula::Not& x) { return "!" + render_at(x.operand, 3); },
      [&](const formula::And& x) { return wrap(level > 1, render_at(x.lhs, 1) + " & " + render_at(x.rhs, 2)); },
      [&](const formula::Or& x) { return wrap(level > 0, render_at(x.lhs, 0) + " | " + render_at(x.rhs, 1)); },
  }, f.node());
}

} // namespace

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

ArithFormula::ArithFormula(Node node) : node_(std::make_shared<const Node>(std::move(node))) {}

ArithFormula ArithFormula::prime() { return ArithFormula(formula::Prime{}); }

ArithFormula ArithFormula::divides(std::uint64_t k) {
  if (k == 0) throw Error(ErrorCode::InvalidFormula, "divisor must be at least 1");
  return ArithFormula(formula::Divides{k});
}

ArithFormula ArithFormula::congruence(std::uint64_t modulus, std::uint64_t residue) {
  if (modulus == 0) throw Error(ErrorCode::InvalidFormula, "modulus must be at least 1");
  if (residue >= modulus) {
    throw Error(ErrorCode::InvalidFormula, "residue " + std::to_string(residue) + " is not below modulus " +
                                               std::to_string(modulus));
  }
  return ArithFormula(formula::Congruence{modulus, residue});
}

ArithFormula ArithFormula::compare(Comparison op, std::uint64_t bound) {
  return ArithFormula(formula::Compare{op, bound});
}

ArithFormula ArithFormula::negation(ArithFormula operand) { return ArithFormula(formula::Not{std::move(operand)}); }

ArithFormula ArithFormula::conjunction(ArithFormula lhs, ArithFormula rhs) {
  return ArithFormula(formula::And{std::move(lhs), std::move(rhs)});
}

ArithFormula ArithFormula::disjunction(ArithFormula lhs, ArithFormula rhs) {
  return ArithFormula(formula::Or{std::move(lhs), std::move(rhs)});
}

bool ArithFormula::contains_prime() const {
  return std::visit(overloaded{
      [](const formula::Prime&) { return true; },
      [](const formula::Not& x) { return x.operand.contains_prime(); },
      [](const formula::And& x) { return x.lhs.contains_prime() || x.rhs.contains_prime(); },
      [](const formula::Or& x) { return x.lhs.contains_prime() || x.rhs.contains_prime(); },
      [](const auto&) { return false; },
  }, node());
}

bool operator==(const ArithFormula& a, const ArithFormula& b) {
  return a.node_ == b.node_ || *a.node_ == *b.node_;
}

// Level -1 is the top level: only there may "k | n" stand bare.
std::string render(const ArithFormula& f) { return render_at(f, -1); }

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d <= n / d; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

bool eval_formula(const ArithFormula& f, std::uint64_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidFormula, "the domain starts at 1");
  return eval_with(f, n, [](std::uint64_t m) { return is_prime(m); });
}

PrimeSieve::PrimeSieve(std::uint64_t limit) : limit_(limit), composite_(limit + 1, false) {
  composite_[0] = true;
  if (limit >= 1) composite_[1] = true;
  for (std::uint64_t p = 2; p <= limit / p; ++p) {
    if (composite_[p]) continue;
    for (std::uint64_t m = p * p; m <= limit; m += p) composite_[m] = true;
  }
}

bool PrimeSieve::is_prime(std::uint64_t n) const {
  if (n > limit_) return quantscope::is_prime(n);
  return !composite_[n];
}

std::uint64_t sieve_count(std::uint64_t n, const ArithLimits& limits) {
  if (n > limits.max_sieve) {
    throw Error(ErrorCode::BoundTooLarge,
                "sieve bound " + std::to_string(n) + " exceeds the limit of " + std::to_string(limits.max_sieve));
  }
  PrimeSieve sieve(n);
  std::uint64_t count = 0;
  for (std::uint64_t k = 2; k <= n; ++k) count += sieve.is_prime(k) ? 1 : 0;
  return count;
}

PeriodicCertificate periodic_certificate(const ArithFormula& f, const ArithLimits& limits) {
  std::uint64_t period = 1;
  std::optional<std::uint64_t> max_bound;
  collect_certificate(f, period, max_bound, limits);
  std::uint64_t threshold = 0;
  if (max_bound) {
    if (*max_bound == std::numeric_limits<std::uint64_t>::max()) {
      throw Error(ErrorCode::BoundTooLarge, "comparison constant too large");
    }
    threshold = *max_bound + 1;
  }
  return {threshold, period};
}

DensityResult exact_density(const ArithFormula& f, const ArithLimits& limits) {
  if (f.contains_prime()) {
    throw Error(ErrorCode::NotEventuallyPeriodic, "formula mentions prime; only an estimate is available");
  }
  const auto cert = periodic_certificate(f, limits);
  auto never = [](std::uint64_t) { return false; };
  std::uint64_t hits = 0;
  for (std::uint64_t n = cert.threshold + 1; n <= cert.threshold + cert.period; ++n) {
    hits += eval_with(f, n, never) ? 1 : 0;
  }
  DensityResult result;
  result.value = ExactDensity{Rational(static_cast<std::int64_t>(hits), static_cast<std::int64_t>(cert.period)), cert};
  result.sample_bound = cert.threshold + cert.period;
  return result;
}

std::vector<std::uint64_t> default_schedule() { return {1'000, 10'000, 100'000, 1'000'000}; }

std::vector<std::uint64_t> prefix_counts(const ArithFormula& f, const std::vector<std::uint64_t>& schedule,
                                         const ArithLimits& limits) {
  if (schedule.empty()) throw Error(ErrorCode::InvalidSchedule, "schedule is empty");
  if (schedule.front() == 0) throw Error(ErrorCode::InvalidSchedule, "schedule bounds start at 1");
  if (std::adjacent_find(schedule.begin(), schedule.end(), std::greater_equal<>()) != schedule.end()) {
    throw Error(ErrorCode::InvalidSchedule, "schedule must be strictly increasing");
  }
  const std::uint64_t top = schedule.back();
  if (top > limits.max_sieve) {
    throw Error(ErrorCode::BoundTooLarge,
                "schedule bound " + std::to_string(top) + " exceeds the limit of " + std::to_string(limits.max_sieve));
  }

  std::optional<PrimeSieve> sieve;
  if (f.contains_prime()) sieve.emplace(top);
  auto prime_at = [&](std::uint64_t n) { return sieve->is_prime(n); };

  std::vector<std::uint64_t> counts;
  counts.reserve(schedule.size());
  std::uint64_t count = 0;
  auto next = schedule.begin();
  for (std::uint64_t n = 1; n <= top; ++n) {
    count += eval_with(f, n, prime_at) ? 1 : 0;
    if (n == *next) {
      counts.push_back(count);
      ++next;
    }
  }
  return counts;
}

DensityResult estimate_density(const ArithFormula& f, const std::vector<std::uint64_t>& schedule,
                               const EstimateOptions& options) {
  const auto counts = prefix_counts(f, schedule, options.limits);
  EstimatedDensity est;
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    est.checkpoints.push_back(
        {schedule[i], counts[i], static_cast<double>(counts[i]) / static_cast<double>(schedule[i])});
  }
  const auto& cps = est.checkpoints;
  if (cps.size() >= 3) {
    const double a = cps[cps.size() - 3].ratio;
    const double b = cps[cps.size() - 2].ratio;
    const double c = cps[cps.size() - 1].ratio;
    est.converged = std::abs(a - b) <= options.epsilon && std::abs(b - c) <= options.epsilon &&
                    std::abs(a - c) <= options.epsilon;
  }
  DensityResult result;
  result.value = std::move(est);
  result.sample_bound = schedule.back();
  return result;
}

std::optional<std::uint64_t> first_satisfying(const ArithFormula& f, std::uint64_t bound,
                                              const ArithLimits& limits) {
  std::optional<PrimeSieve> sieve;
  if (f.contains_prime()) {
    if (bound > limits.max_sieve) {
      throw Error(ErrorCode::BoundTooLarge,
                  "search bound " + std::to_string(bound) + " exceeds the limit of " + std::to_string(limits.max_sieve));
    }
    sieve.emplace(bound);
  }
  auto prime_at = [&](std::uint64_t n) { return sieve->is_prime(n); };
  for (std::uint64_t n = 1; n <= bound; ++n) {
    if (eval_with(f, n, prime_at)) return n;
  }
  return std::nullopt;
}

std::string to_string(const CardinalityResult& c) {
  return std::visit(overloaded{
      [](const FiniteSet& s) { return "finite(" + std::to_string(s.count) + ")"; },
      [](const CountablyInfinite& s) { return "countably infinite (" + s.reason + ")"; },
      [](const UnknownBeyondProbe& s) {
        return "unknown beyond probe (" + std::to_string(s.count) + " up to " + std::to_string(s.probe_bound) + ")";
      },
  }, c);
}

CardinalityResult cardinality_class(const ArithFormula& f, std::uint64_t probe_bound, const ArithLimits& limits) {
  auto probe = [&]() -> CardinalityResult {
    const std::uint64_t bound = std::min(probe_bound, limits.max_sieve);
    return UnknownBeyondProbe{bound == 0 ? 0 : count_up_to(f, bound), bound};
  };

  if (auto bound = upper_bound(f, true)) {
    if (*bound <= limits.max_sieve) return FiniteSet{count_up_to(f, *bound)};
    return probe();
  }

  PeriodicCertificate cert{};
  try {
    cert = periodic_certificate(f, limits);
  } catch (const Error&) {
    return probe();
  }
  const std::uint64_t L = cert.period;
  const std::uint64_t T = cert.threshold;

  if (!f.contains_prime()) {
    const Rational d = exact_density(f, limits).exact().value;
    if (d.numerator() > 0) return CountablyInfinite{"positive natural density " + to_string(d)};
    // Density zero for a periodic set means no residue survives past T.
    if (T > limits.max_sieve) return probe();
    return FiniteSet{count_up_to(f, T)};
  }

  // Split on the truth value of the prime atom. Past T the remaining atoms only
  // see n mod L, so each residue class decides membership for primes and for
  // composites separately.
  auto as_prime = [](std::uint64_t) { return true; };
  auto as_composite = [](std::uint64_t) { return false; };
  if (T > std::numeric_limits<std::uint64_t>::max() - L) return probe();
  for (std::uint64_t n = T + 1; n <= T + L; ++n) {
    if (std::gcd(n % L, L) == 1 && eval_with(f, n, as_prime)) {
      if (L == 1) return CountablyInfinite{"all sufficiently large primes"};
      return CountablyInfinite{"primes n = " + std::to_string(n % L) + " mod " + std::to_string(L) +
                               ", infinitely many by Dirichlet's theorem"};
    }
  }
  for (std::uint64_t n = T + 1; n <= T + L; ++n) {
    if (eval_with(f, n, as_composite)) {
      if (L == 1) return CountablyInfinite{"all sufficiently large non-primes"};
      return CountablyInfinite{"non-primes n = " + std::to_string(n % L) + " mod " + std::to_string(L)};
    }
  }
  // Remaining members past T are primes sharing a factor with L, hence divide L.
  const std::uint64_t last = T + L;
  if (last > limits.max_sieve) return probe();
  return FiniteSet{count_up_to(f, last)};
}

} // namespace quantscope
