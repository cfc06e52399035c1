#pragma once

#include <optional>
#include <string>
#include <vector>

#include "entrolab/distributions.hpp"
#include "entrolab/enumerator.hpp"
#include "entrolab/time_bound.hpp"

namespace entrolab {

// All entropies are in bits.

// Order of a Rényi or Tsallis entropy: a positive real, or one of the limit
// orders 0 and infinity.
class Alpha {
 public:
  static Alpha zero() { return Alpha(Kind::kZero, 0.0); }
  static Alpha infinity() { return Alpha(Kind::kInfinity, 0.0); }
  // 0 maps to zero(); negative or non-finite values throw.
  static Alpha of(double value);
  // "0", "inf", or a decimal.
  static Alpha parse(const std::string& text);

  bool is_zero() const { return kind_ == Kind::kZero; }
  bool is_infinite() const { return kind_ == Kind::kInfinity; }
  bool is_finite_positive() const { return kind_ == Kind::kFinite; }
  double value() const;  // throws for infinity

  std::string to_string() const;

 private:
  enum class Kind { kZero, kFinite, kInfinity };
  Alpha(Kind kind, double value) : kind_(kind), value_(value) {}
  Kind kind_;
  double value_;
};

// Orders closer to 1 than this are rejected; use shannon() instead.
inline constexpr double kAlphaGuard = 1e-6;

double shannon(const Distribution& p);
double renyi(const Distribution& p, Alpha alpha);
double min_entropy(const Distribution& p);
double tsallis(const Distribution& p, Alpha alpha);

// Σ P(x)^alpha with compensated summation.
double power_sum(const Distribution& p, double alpha);

// Where k(x) comes from: a table, optionally filtered by a time bound, with
// an optional literal-program fallback for strings the table lacks.
struct ComplexitySource {
  const KTable* table = nullptr;
  std::optional<TimeBound> bound;
  bool allow_fallback = true;

  // Table value, or nullopt if the table (under the bound) has none.
  std::optional<int> lookup(const BitString& x) const;
};

struct ExpectedComplexity {
  Rational exact;  // Σ P(x) k(x)
  double value = 0.0;
  std::vector<BitString> fallback_points;  // k taken from literal_upper_bound

  bool used_fallback() const { return !fallback_points.empty(); }
};

ExpectedComplexity expected_complexity(const Distribution& p, const ComplexitySource& k);

struct CodingGap {
  ExpectedComplexity expected;
  double entropy = 0.0;
  double gap = 0.0;  // expected - entropy
};

CodingGap coding_gap(const Distribution& p, const ComplexitySource& k);

// Rényi entropy of the half-uniform distribution from its closed form.
double renyi_half_uniform_closed(unsigned n, double alpha);
// First-order expansion around alpha = 1: (n+1)/2 - (ln 2 / 8)(n-1)^2 (alpha-1).
double renyi_expansion_approx(unsigned n, double alpha);
// 2^{c(1+eps)} 2^eps / (2^eps - 1) = Σ_{n>=0} 2^n (2^{-n+c})^{1+eps}.
double geometric_series_closed(int c, double eps);

struct OrderingReport {
  double alpha = 0.0;
  double tsallis = 0.0;
  double renyi = 0.0;
  double bound = 0.0;  // 1/(alpha-1) + H_alpha
  bool holds = false;  // T <= bound for alpha > 1, T >= bound for alpha < 1
};

OrderingReport ordering_check(const Distribution& p, Alpha alpha, double slack = 1e-9);

struct ChainPoint {
  std::string label;
  double value = 0.0;
};

struct MonotonicityReport {
  std::vector<ChainPoint> chain;  // H_alpha along increasing alpha; Shannon at alpha = 1
  bool monotone = false;
  double worst_violation = 0.0;
};

// Evaluates H_alpha on the grid (Shannon stands in for alpha = 1) and checks
// it is non-increasing within `slack`.
MonotonicityReport renyi_monotonicity(const Distribution& p, const std::vector<Alpha>& grid,
                                      double slack = 1e-9);

}  // namespace entrolab
