#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "entrolab/entropy.hpp"
#include "entrolab/oracle.hpp"

using namespace entrolab;

namespace {

const Alpha kTwo = Alpha::of(2);

// Independent evaluation straight from the definitions, in long double.
long double naive_power_sum(const Distribution& p, long double alpha) {
  long double s = 0;
  for (const auto& a : p.support()) s += std::pow(static_cast<long double>(to_double(a.p)), alpha);
  return s;
}

std::vector<Distribution> sample_suite() {
  std::vector<Distribution> out;
  out.push_back(point_mass(BitString("0110")));
  out.push_back(two_point(BitString("1"), BitString("0"), BitString("1")));
  out.push_back(two_point(BitString("1101001"), BitString("000"), BitString("111")));
  for (unsigned n = 2; n <= 8; ++n) out.push_back(half_uniform(n));
  out.push_back(uniform_over_length(3));
  out.push_back(mt_truncated(enumerate({16, 4096, 64}), TimeBound::constant(4096)));
  return out;
}

}  // namespace

TEST_CASE("shannon examples") {
  CHECK(shannon(two_point(BitString("1"), BitString("0"), BitString("1"))) == doctest::Approx(1.0));
  CHECK(shannon(half_uniform(3)) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(shannon(point_mass(BitString("01"))) == 0.0);
  for (unsigned n = 2; n <= 16; ++n) {
    CHECK(std::fabs(shannon(half_uniform(n)) - (n + 1) / 2.0) <= 1e-9);
  }
}

TEST_CASE("renyi examples") {
  const auto u2 = uniform_over_length(2);
  for (auto a : {Alpha::zero(), Alpha::of(0.5), kTwo, Alpha::of(7.5), Alpha::infinity()}) {
    CHECK(renyi(u2, a) == doctest::Approx(2.0).epsilon(1e-12));
  }
  CHECK(renyi(half_uniform(3), kTwo) == doctest::Approx(std::log2(16.0 / 5.0)).epsilon(1e-12));
  for (double h : {1e-4, -1e-4}) {
    CHECK(std::fabs(renyi(half_uniform(5), Alpha::of(1 + h)) - 3.0) < 1e-3);
  }
  CHECK(renyi(half_uniform(3), Alpha::zero()) == doctest::Approx(std::log2(5.0)));
  CHECK(renyi(half_uniform(3), Alpha::infinity()) == 1.0);
}

TEST_CASE("min_entropy examples") {
  for (unsigned n = 2; n <= 10; ++n) CHECK(min_entropy(half_uniform(n)) == 1.0);
  CHECK(min_entropy(point_mass(BitString())) == 0.0);
  CHECK(min_entropy(uniform_over_length(3)) == 3.0);
}

TEST_CASE("tsallis examples") {
  CHECK(tsallis(two_point(BitString("1"), BitString("0"), BitString("1")), kTwo) ==
        doctest::Approx(0.5));
  CHECK(tsallis(half_uniform(3), kTwo) == doctest::Approx(0.6875));
  for (double a : {0.3, 2.0, 5.0}) CHECK(tsallis(point_mass(BitString("1")), Alpha::of(a)) == 0.0);
  CHECK_THROWS_AS(tsallis(half_uniform(3), Alpha::zero()), std::domain_error);
  CHECK_THROWS_AS(tsallis(half_uniform(3), Alpha::infinity()), std::domain_error);
}

TEST_CASE("definitions agree with a naive long-double evaluation") {
  for (const auto& p : sample_suite()) {
    long double h = 0;
    for (const auto& a : p.support()) {
      const long double q = to_double(a.p);
      h -= q * std::log2(q);
    }
    CHECK(std::fabs(shannon(p) - static_cast<double>(h)) < 1e-9);
    for (double alpha : {0.3, 0.5, 2.0, 3.0}) {
      const long double s = naive_power_sum(p, alpha);
      CHECK(std::fabs(renyi(p, Alpha::of(alpha)) -
                      static_cast<double>(std::log2(s) / (1 - alpha))) < 1e-9);
      CHECK(std::fabs(tsallis(p, Alpha::of(alpha)) - static_cast<double>((1 - s) / (alpha - 1))) <
            1e-9);
    }
  }
}

TEST_CASE("alpha guard band") {
  CHECK_THROWS_AS(renyi(half_uniform(3), Alpha::of(1.0)), std::domain_error);
  CHECK_THROWS_AS(renyi(half_uniform(3), Alpha::of(1 + 5e-7)), std::domain_error);
  CHECK_THROWS_AS(tsallis(half_uniform(3), Alpha::of(1 - 5e-7)), std::domain_error);
  CHECK_THROWS_AS(renyi_half_uniform_closed(4, 1.0), std::domain_error);
  CHECK_NOTHROW(renyi(half_uniform(3), Alpha::of(1 + 2e-6)));
  CHECK_THROWS_AS(Alpha::of(-1), std::domain_error);
  CHECK(Alpha::parse("inf").is_infinite());
  CHECK(Alpha::parse("0").is_zero());
  CHECK(Alpha::parse("1.5").value() == 1.5);
  CHECK_THROWS_AS(Alpha::parse("1.5x"), std::invalid_argument);
}

TEST_CASE("expected complexity and coding gap examples") {
  const auto t6 = enumerate({6, 4096, 64});
  const ComplexitySource k6{&t6};
  const auto coin = two_point(BitString("1"), BitString("0"), BitString("1"));
  CHECK(expected_complexity(coin, k6).exact == 6);
  CHECK_FALSE(expected_complexity(coin, k6).used_fallback());

  const auto t14 = enumerate({14, 4096, 64});
  const auto bf = oracle::brute_force({14, 4096, 64}).table;
  const ComplexitySource k14{&t14};
  const auto hu2 = half_uniform(2);
  const Rational expected = Rational(bf.find(BitString("00"))->k, 2) +
                            Rational(bf.find(BitString("10"))->k, 4) +
                            Rational(bf.find(BitString("11"))->k, 4);
  CHECK(expected_complexity(hu2, k14).exact == expected);

  const auto x0 = BitString("000");
  const auto g = coding_gap(point_mass(x0), k14);
  CHECK(g.gap == bf.find(x0)->k);
  CHECK(g.entropy == 0.0);

  // Outside the table: the literal bound stands in and is flagged.
  const auto far = point_mass(BitString("0110100110"));
  const auto e = expected_complexity(far, k14);
  CHECK(e.used_fallback());
  CHECK(e.exact == literal_upper_bound(BitString("0110100110")));
  CHECK_THROWS_AS(expected_complexity(far, ComplexitySource{&t14, std::nullopt, false}),
                  std::invalid_argument);
}

TEST_CASE("Gibbs positivity for random distributions over table outputs") {
  const auto table = enumerate({20, 4096, 64});
  std::vector<BitString> outputs;
  for (const auto& [x, e] : table.entries()) outputs.push_back(x);
  const ComplexitySource k{&table};
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    std::shuffle(outputs.begin(), outputs.end(), rng);
    const std::size_t size = 2 + rng() % 40;
    std::vector<Atom> atoms;
    BigInt total = 0;
    std::vector<BigInt> weights;
    for (std::size_t i = 0; i < size; ++i) {
      weights.push_back(1 + rng() % 1000);
      total += weights.back();
    }
    for (std::size_t i = 0; i < size; ++i) atoms.push_back({outputs[i], Rational(weights[i], total)});
    const auto p = Distribution::general(atoms);
    CHECK(coding_gap(p, k).gap >= -1e-9);
  }
}

TEST_CASE("Renyi monotonicity and continuity at 1") {
  const std::vector<Alpha> grid = {Alpha::zero(),   Alpha::of(0.3), Alpha::of(0.5),
                                   Alpha::of(0.9),  Alpha::of(0.99), Alpha::of(1.01),
                                   Alpha::of(1.1),  kTwo,           Alpha::of(3),
                                   Alpha::infinity()};
  for (const auto& p : sample_suite()) {
    const auto r = renyi_monotonicity(p, grid);
    CHECK(r.monotone);
    CHECK(r.chain.size() == grid.size() + 1);
    CHECK(r.chain[5].label == "1");
    const double h = shannon(p);
    double previous = INFINITY;
    for (double step : {1e-2, 1e-3, 1e-4}) {
      const double err = std::max(std::fabs(renyi(p, Alpha::of(1 + step)) - h),
                                  std::fabs(renyi(p, Alpha::of(1 - step)) - h));
      // Uniform laws have every order equal; only rounding noise remains.
      if (previous > 1e-9) CHECK(err < previous);
      else CHECK(err <= 1e-9);
      previous = err;
    }
    CHECK(previous < 1e-2);
  }
}

TEST_CASE("Tsallis-Renyi bridging identity and ordering") {
  for (const auto& p : sample_suite()) {
    for (double a : {0.5, 2.0, 3.0}) {
      const double bridged = (1 - std::exp2((1 - a) * renyi(p, Alpha::of(a)))) / (a - 1);
      CHECK(std::fabs(tsallis(p, Alpha::of(a)) - bridged) < 1e-9);
    }
    for (double a : {0.3, 0.5, 0.9, 1.5, 2.0, 3.0}) CHECK(ordering_check(p, Alpha::of(a)).holds);
  }
  const auto r2 = ordering_check(half_uniform(3), kTwo);
  CHECK(r2.tsallis == doctest::Approx(0.6875));
  CHECK(r2.bound == doctest::Approx(1 + std::log2(16.0 / 5.0)));
  const auto rh = ordering_check(half_uniform(3), Alpha::of(0.5));
  CHECK(rh.bound == doctest::Approx(-2 + renyi(half_uniform(3), Alpha::of(0.5))));
  CHECK(rh.holds);
}

TEST_CASE("half-uniform closed form") {
  CHECK(renyi_half_uniform_closed(3, 2) == doctest::Approx(6 - std::log2(20.0)).epsilon(1e-12));
  CHECK(renyi_half_uniform_closed(5, 2) == doctest::Approx(10 - std::log2(272.0)).epsilon(1e-12));
  for (unsigned n = 2; n <= 16; ++n) {
    for (double a : {0.5, 2.0, 3.0}) {
      CHECK(std::fabs(renyi_half_uniform_closed(n, a) - renyi(half_uniform(n), Alpha::of(a))) <=
            1e-9);
    }
  }
  // Large n stays finite where 2^{(n-1) alpha} would overflow.
  CHECK(std::isfinite(renyi_half_uniform_closed(2000, 3)));
}

TEST_CASE("expansion approximation") {
  for (unsigned n = 2; n <= 12; ++n) CHECK(renyi_expansion_approx(n, 1.0) == (n + 1) / 2.0);
  const double a = 1 + std::pow(4.0, -1.8);
  const double approx = renyi_expansion_approx(5, a);
  CHECK(approx == doctest::Approx(3 - std::numbers::ln2 / 8 * 16 * std::pow(4.0, -1.8)));
  CHECK(approx == doctest::Approx(2.8857).epsilon(1e-4));
  CHECK(std::fabs(renyi_half_uniform_closed(5, a) - approx) < 0.01);

  // Error of the first-order term shrinks like the next term, (n-1)^{-0.6}.
  double worst = 0;
  for (unsigned n = 4; n <= 14; ++n) {
    const double alpha = 1 + std::pow(n - 1.0, -1.8);
    const double e = std::fabs(renyi_half_uniform_closed(n, alpha) - renyi_expansion_approx(n, alpha));
    worst = std::max(worst, e / std::pow(n - 1.0, -0.6));
  }
  CHECK(worst < 1.0);
}

TEST_CASE("geometric series closed form") {
  CHECK(geometric_series_closed(0, 1) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(geometric_series_closed(1, 1) == doctest::Approx(8.0).epsilon(1e-15));
  CHECK_THROWS_AS(geometric_series_closed(0, 0), std::domain_error);
  for (int c : {-2, 0, 1, 3}) {
    for (double eps : {0.5, 1.0, 2.0}) {
      long double partial = 0;
      for (int n = 0; n <= 60; ++n) {
        partial += std::pow(2.0L, n) * std::pow(std::pow(2.0L, -n + c), 1 + eps);
      }
      // Remainder past n = 60 is 2^{c(1+eps)} 2^{-61 eps} / (1 - 2^{-eps}).
      const long double tail = std::pow(2.0L, c * (1 + eps) - 61 * eps) / (1 - std::pow(2.0L, -eps));
      const double closed = geometric_series_closed(c, eps);
      CHECK(std::fabs(static_cast<double>(closed - partial - tail)) <= 1e-12 * closed);
      if (eps >= 1.0) CHECK(std::fabs(static_cast<double>(closed - partial)) <= 1e-9);
    }
  }
}
