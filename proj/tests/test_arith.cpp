#include <doctest.h>

#include <random>

#include "quantscope/arith.hpp"
#include "quantscope/error.hpp"
#include "quantscope/parser.hpp"
#include "support.hpp"

using namespace quantscope;
using qs_test::oracle_count;
using qs_test::oracle_eval;

namespace {

ArithFormula F(const char* text) { return parse_arith_formula(text); }

std::vector<double> ratios(const DensityResult& d) {
  std::vector<double> out;
  for (const auto& cp : d.estimated().checkpoints) out.push_back(cp.ratio);
  return out;
}

} // namespace

TEST_CASE("pointwise evaluation") {
  CHECK(eval_formula(F("prime"), 2));
  CHECK_FALSE(eval_formula(F("prime"), 1));
  CHECK(eval_formula(F("n mod 3 == 1"), 7));
  CHECK(eval_formula(F("!prime"), 9));
  CHECK(eval_formula(F("n <= 4 & n >= 4"), 4));
  CHECK_THROWS_AS(eval_formula(F("prime"), 0), Error);
}

TEST_CASE("atom invariants are enforced by the factories") {
  CHECK_THROWS_AS(ArithFormula::divides(0), Error);
  CHECK_THROWS_AS(ArithFormula::congruence(0, 0), Error);
  CHECK_THROWS_AS(ArithFormula::congruence(3, 3), Error);
  CHECK_NOTHROW(ArithFormula::congruence(1, 0));
}

TEST_CASE("prime counting against trial division") {
  CHECK(sieve_count(10) == 4);
  CHECK(sieve_count(1) == 0);
  CHECK(sieve_count(2) == 1);
  // Frozen from an independent oracle run.
  CHECK(sieve_count(1'000) == 168);
  CHECK(sieve_count(10'000) == 1'229);
  CHECK(sieve_count(100'000) == 9'592);
  CHECK(sieve_count(1'000'000) == 78'498);
  CHECK(qs_test::trial_division_count(100'000) == 9'592);
  for (std::uint64_t n : {3u, 97u, 100u, 7919u, 65'536u}) {
    CHECK(sieve_count(n) == qs_test::trial_division_count(n));
  }
}

TEST_CASE("sieve cap") {
  CHECK_THROWS_AS(sieve_count(1'001, ArithLimits{1'000}), Error);
  try {
    sieve_count(1'001, ArithLimits{1'000});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BoundTooLarge);
  }
  PrimeSieve sieve(30);
  CHECK(sieve.is_prime(29));
  CHECK_FALSE(sieve.is_prime(1));
  CHECK_FALSE(sieve.is_prime(0));
}

TEST_CASE("exact density examples") {
  CHECK(exact_density(F("n mod 3 == 1")).exact().value == Rational(1, 3));
  CHECK(exact_density(F("2 | n")).exact().value == Rational(1, 2));
  CHECK(exact_density(F("(2 | n) | n mod 4 == 1")).exact().value == Rational(3, 4));
  CHECK(exact_density(F("n < 100")).exact().value == Rational(0));
  CHECK(exact_density(F("n > 100")).exact().value == Rational(1));

  const auto cert = exact_density(F("n mod 4 == 1 & n > 20 & 6 | n")).exact().certificate;
  CHECK(cert.period == 12);
  CHECK(cert.threshold == 21);

  try {
    exact_density(F("prime | 2 | n"));
    FAIL("expected NotEventuallyPeriodic");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotEventuallyPeriodic);
  }
}

TEST_CASE("estimated density examples") {
  const auto primes = estimate_density(F("prime"), default_schedule());
  const auto& cps = primes.estimated().checkpoints;
  REQUIRE(cps.size() == 4);
  CHECK(cps[0].count == 168);
  CHECK(cps[1].count == 1'229);
  CHECK(cps[2].count == 9'592);
  CHECK(cps[3].count == 78'498);
  CHECK(cps[3].ratio == doctest::Approx(0.078498));
  CHECK_FALSE(primes.estimated().converged);
  CHECK(primes.sample_bound == 1'000'000);

  const auto evens = estimate_density(F("2 | n"), {10, 100, 1000});
  CHECK(ratios(evens) == std::vector<double>{0.5, 0.5, 0.5});
  CHECK(evens.estimated().converged);

  const auto composite = estimate_density(F("!prime"), {1'000'000});
  CHECK(composite.estimated().checkpoints[0].ratio == doctest::Approx(0.921502));
  CHECK_FALSE(composite.estimated().converged);  // one checkpoint never converges
}

TEST_CASE("schedule validation") {
  auto code_of = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::UnresolvableSymbol;
  };
  CHECK(code_of([] { estimate_density(F("prime"), {}); }) == ErrorCode::InvalidSchedule);
  CHECK(code_of([] { estimate_density(F("prime"), {100, 100}); }) == ErrorCode::InvalidSchedule);
  CHECK(code_of([] { estimate_density(F("prime"), {0, 10}); }) == ErrorCode::InvalidSchedule);
  CHECK(code_of([] { estimate_density(F("prime"), {10, 2'000}, {0.005, ArithLimits{1'000}}); }) ==
        ErrorCode::BoundTooLarge);
}

TEST_CASE("cardinality classes") {
  CHECK(std::holds_alternative<CountablyInfinite>(cardinality_class(F("prime"), 1'000)));
  CHECK(cardinality_class(F("n < 100"), 1'000) == CardinalityResult{FiniteSet{99}});
  CHECK(std::holds_alternative<CountablyInfinite>(cardinality_class(F("2 | n"), 1'000)));
  CHECK(std::holds_alternative<CountablyInfinite>(cardinality_class(F("!prime"), 1'000)));
  // Derived by enumeration below 10^4: only 2, only 3, and {1, 4}.
  CHECK(cardinality_class(F("prime & n mod 4 == 2"), 1'000) == CardinalityResult{FiniteSet{1}});
  CHECK(cardinality_class(F("prime & n mod 6 == 3"), 1'000) == CardinalityResult{FiniteSet{1}});
  CHECK(cardinality_class(F("!prime & n < 5"), 1'000) == CardinalityResult{FiniteSet{2}});
  CHECK(cardinality_class(F("n mod 4 == 1 & 2 | n"), 1'000) == CardinalityResult{FiniteSet{0}});
  CHECK(std::holds_alternative<CountablyInfinite>(cardinality_class(F("prime & n mod 10 == 7"), 1'000)));
  CHECK(std::holds_alternative<CountablyInfinite>(cardinality_class(F("!prime & n mod 7 == 3"), 1'000)));

  // A period beyond the limits falls back to probing.
  const auto probed = cardinality_class(F("prime & n mod 1000 == 7"), 100, ArithLimits{500});
  REQUIRE(std::holds_alternative<UnknownBeyondProbe>(probed));
  CHECK(std::get<UnknownBeyondProbe>(probed).count == 1);
}

TEST_CASE("rendering parenthesizes just enough to reparse") {
  CHECK(render(F("(2 | n) | n mod 4 == 1")) == "(2 | n) | n mod 4 == 1");
  CHECK(render(F("2 | n")) == "2 | n");
  CHECK(render(F("!(n < 3 | prime) & n mod 3 == 1")) == "!(n < 3 | prime) & n mod 3 == 1");
  CHECK(render(F("n mod 3 == 1 & !(2 | n)")) == "n mod 3 == 1 & !(2 | n)");
  CHECK(render(F("prime & (n < 3 | n > 5)")) == "prime & (n < 3 | n > 5)");
}

TEST_CASE("property: eval_formula agrees with the recursive oracle") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    const auto f = qs_test::random_formula(rng, {3, true, 12, 50});
    for (std::uint64_t n = 1; n <= 200; ++n) {
      REQUIRE_MESSAGE(eval_formula(f, n) == oracle_eval(f, n), render(f) << " at " << n);
    }
  }
}

TEST_CASE("property: complement law for exact density") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    const auto f = qs_test::random_formula(rng, {3, false, 12, 50});
    const Rational d = exact_density(f).exact().value;
    const Rational dc = exact_density(ArithFormula::negation(f)).exact().value;
    REQUIRE_MESSAGE(d + dc == Rational(1), render(f));
    CHECK(d >= Rational(0));
    CHECK(d <= Rational(1));
  }
}

TEST_CASE("property: exact density matches brute-force counting over a long window") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 100; ++i) {
    const auto f = qs_test::random_formula(rng, {3, false, 12, 50});
    const auto cert = periodic_certificate(f);
    const std::uint64_t start = cert.threshold + 1;
    const std::uint64_t length = 60 * cert.period;
    std::uint64_t hits = 0;
    for (std::uint64_t n = start; n < start + length; ++n) hits += oracle_eval(f, n) ? 1 : 0;
    REQUIRE_MESSAGE(exact_density(f).exact().value == Rational(static_cast<std::int64_t>(hits),
                                                             static_cast<std::int64_t>(length)),
                    render(f));
  }
}

TEST_CASE("property: prefix counts of f and !f partition every prefix") {
  std::mt19937_64 rng(17);
  const std::vector<std::uint64_t> schedule{10, 97, 1'000, 5'000};
  for (int i = 0; i < 100; ++i) {
    const auto f = qs_test::random_formula(rng, {3, true, 12, 50});
    const auto a = prefix_counts(f, schedule);
    const auto b = prefix_counts(ArithFormula::negation(f), schedule);
    for (std::size_t k = 0; k < schedule.size(); ++k) REQUIRE(a[k] + b[k] == schedule[k]);
    CHECK(a.back() == oracle_count(f, schedule.back()));
  }
}

TEST_CASE("property: estimate agrees with the exact density past 1000 periods") {
  std::mt19937_64 rng(19);
  for (int i = 0; i < 60; ++i) {
    const auto f = qs_test::random_formula(rng, {3, false, 12, 50});
    const auto cert = periodic_certificate(f);
    const std::uint64_t n = std::max<std::uint64_t>(1'000 * cert.period, 1'000);
    if (n > 2'000'000) continue;
    const double exact = boost::rational_cast<double>(exact_density(f).exact().value);
    const auto est = estimate_density(f, {n});
    const double tolerance = 1.0 / static_cast<double>(cert.period) + 0.005;
    REQUIRE_MESSAGE(std::abs(est.estimated().checkpoints.back().ratio - exact) <= tolerance, render(f));
  }
}

TEST_CASE("property: prime ratios thin out along the default schedule") {
  const auto counts = prefix_counts(F("prime"), default_schedule());
  const auto schedule = default_schedule();
  for (std::size_t k = 1; k < counts.size(); ++k) {
    CHECK(counts[k] >= counts[k - 1]);
    CHECK(static_cast<double>(counts[k]) / schedule[k] <= static_cast<double>(counts[k - 1]) / schedule[k - 1]);
  }
}

TEST_CASE("property: estimates are reproducible") {
  const auto a = estimate_density(F("prime | n mod 7 == 3"), {1'000, 50'000, 200'000});
  const auto b = estimate_density(F("prime | n mod 7 == 3"), {1'000, 50'000, 200'000});
  CHECK(a.estimated().checkpoints == b.estimated().checkpoints);
}

TEST_CASE("property: cardinality classes agree with enumeration") {
  std::mt19937_64 rng(23);
  int finite = 0, infinite = 0;
  for (int i = 0; i < 300; ++i) {
    const auto f = qs_test::random_formula(rng, {3, true, 12, 50});
    const auto c = cardinality_class(f, 10'000);
    if (auto* fin = std::get_if<FiniteSet>(&c)) {
      ++finite;
      REQUIRE_MESSAGE(oracle_count(f, 20'000) == fin->count, render(f));
    } else if (std::holds_alternative<CountablyInfinite>(c)) {
      ++infinite;
      REQUIRE_MESSAGE(oracle_count(f, 20'000) > oracle_count(f, 10'000), render(f));
    } else {
      FAIL("small formulas are always decided: " << render(f));
    }
  }
  CHECK(finite > 10);
  CHECK(infinite > 10);
}

TEST_CASE("first_satisfying") {
  CHECK(first_satisfying(F("prime"), 10) == 2u);
  CHECK(first_satisfying(F("prime & n > 90"), 100) == 97u);
  CHECK_FALSE(first_satisfying(F("prime & n > 97"), 100).has_value());
  CHECK(first_satisfying(F("n mod 7 == 3 & n > 100"), 1'000) == 101u);
  CHECK_THROWS_AS(first_satisfying(F("prime"), 2'000, ArithLimits{1'000}), Error);
}
