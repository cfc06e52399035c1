#include "entrolab/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace entrolab {

namespace {

// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::fabs(sum_) >= std::fabs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

void guard(double alpha) {
  if (std::fabs(alpha - 1.0) < kAlphaGuard) {
    throw std::domain_error("alpha within " + std::to_string(kAlphaGuard) +
                            " of 1; use the Shannon entropy");
  }
}

// log2 Σ 2^{alpha log2 p}, arranged so the largest term is factored out.
double log2_power_sum(const Distribution& p, double alpha) {
  double top = -std::numeric_limits<double>::infinity();
  std::vector<double> exps;
  exps.reserve(p.support().size());
  for (const auto& a : p.support()) {
    exps.push_back(alpha * log2_of(a.p));
    top = std::max(top, exps.back());
  }
  CompensatedSum s;
  for (double e : exps) s.add(std::exp2(e - top));
  return top + std::log2(s.value());
}

// log2(2^a + 2^b) without overflow.
double log2_add(double a, double b) {
  const double hi = std::max(a, b);
  const double lo = std::min(a, b);
  return hi + std::log1p(std::exp2(lo - hi)) / std::numbers::ln2;
}

}  // namespace

Alpha Alpha::of(double value) {
  if (!std::isfinite(value) || value < 0) {
    throw std::domain_error("alpha must be a non-negative finite number");
  }
  if (value == 0.0) return zero();
  return Alpha(Kind::kFinite, value);
}

Alpha Alpha::parse(const std::string& text) {
  if (text == "inf" || text == "infinity") return infinity();
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad alpha '" + text + "'");
  }
  if (used != text.size()) throw std::invalid_argument("bad alpha '" + text + "'");
  return of(v);
}

double Alpha::value() const {
  if (kind_ == Kind::kInfinity) throw std::domain_error("alpha is infinite");
  return value_;
}

std::string Alpha::to_string() const {
  if (kind_ == Kind::kInfinity) return "inf";
  if (kind_ == Kind::kZero) return "0";
  std::ostringstream os;
  os.precision(17);
  os << value_;
  return os.str();
}

double shannon(const Distribution& p) {
  CompensatedSum s;
  for (const auto& a : p.support()) {
    if (a.p == 0) continue;  // 0 log 0 = 0
    s.add(-to_double(a.p) * log2_of(a.p));
  }
  return s.value();
}

double power_sum(const Distribution& p, double alpha) {
  CompensatedSum s;
  for (const auto& a : p.support()) s.add(std::exp2(alpha * log2_of(a.p)));
  return s.value();
}

double min_entropy(const Distribution& p) { return -log2_of(p.max_probability()); }

double renyi(const Distribution& p, Alpha alpha) {
  if (alpha.is_zero()) return std::log2(static_cast<double>(p.support().size()));
  if (alpha.is_infinite()) return min_entropy(p);
  const double a = alpha.value();
  guard(a);
  return log2_power_sum(p, a) / (1.0 - a);
}

double tsallis(const Distribution& p, Alpha alpha) {
  if (!alpha.is_finite_positive()) throw std::domain_error("Tsallis entropy needs a finite alpha > 0");
  const double a = alpha.value();
  guard(a);
  return (1.0 - power_sum(p, a)) / (a - 1.0);
}

std::optional<int> ComplexitySource::lookup(const BitString& x) const {
  if (table == nullptr) return std::nullopt;
  if (bound) return kt_lookup(*table, x, *bound);
  const KEntry* e = table->find(x);
  if (e == nullptr) return std::nullopt;
  return e->k;
}

ExpectedComplexity expected_complexity(const Distribution& p, const ComplexitySource& k) {
  ExpectedComplexity out;
  out.exact = 0;
  for (const auto& a : p.support()) {
    auto value = k.lookup(a.x);
    if (!value) {
      if (!k.allow_fallback) {
        throw std::invalid_argument("expected_complexity: no k for '" + a.x.to_string() +
                                    "' and fallback disabled");
      }
      value = literal_upper_bound(a.x);
      out.fallback_points.push_back(a.x);
    }
    out.exact += a.p * *value;
  }
  out.value = to_double(out.exact);
  return out;
}

CodingGap coding_gap(const Distribution& p, const ComplexitySource& k) {
  CodingGap g;
  g.expected = expected_complexity(p, k);
  g.entropy = shannon(p);
  g.gap = g.expected.value - g.entropy;
  return g;
}

double renyi_half_uniform_closed(unsigned n, double alpha) {
  if (n < 2) throw std::invalid_argument("renyi_half_uniform_closed: n must be >= 2");
  guard(alpha);
  const double x = n - 1.0;
  return (log2_add(x * alpha, x) - n * alpha) / (1.0 - alpha);
}

double renyi_expansion_approx(unsigned n, double alpha) {
  if (n < 2) throw std::invalid_argument("renyi_expansion_approx: n must be >= 2");
  const double x = n - 1.0;
  return (n + 1.0) / 2.0 - std::numbers::ln2 / 8.0 * x * x * (alpha - 1.0);
}

double geometric_series_closed(int c, double eps) {
  if (!(eps > 0)) throw std::domain_error("geometric_series_closed: eps must be > 0");
  return std::exp2(c * (1.0 + eps)) * std::exp2(eps) / std::expm1(eps * std::numbers::ln2);
}

OrderingReport ordering_check(const Distribution& p, Alpha alpha, double slack) {
  OrderingReport r;
  r.alpha = alpha.value();
  guard(r.alpha);
  r.tsallis = tsallis(p, alpha);
  r.renyi = renyi(p, alpha);
  r.bound = 1.0 / (r.alpha - 1.0) + r.renyi;
  r.holds = r.alpha > 1.0 ? r.tsallis <= r.bound + slack : r.tsallis >= r.bound - slack;
  return r;
}

MonotonicityReport renyi_monotonicity(const Distribution& p, const std::vector<Alpha>& grid,
                                      double slack) {
  MonotonicityReport r;
  bool shannon_added = false;
  auto order = [](const Alpha& a) {
    return a.is_infinite() ? std::numeric_limits<double>::infinity() : a.value();
  };
  for (const auto& a : grid) {
    if (!shannon_added && order(a) > 1.0) {
      r.chain.push_back({"1", shannon(p)});
      shannon_added = true;
    }
    r.chain.push_back({a.to_string(), renyi(p, a)});
  }
  if (!shannon_added) r.chain.push_back({"1", shannon(p)});
  r.monotone = true;
  for (std::size_t i = 1; i < r.chain.size(); ++i) {
    const double rise = r.chain[i].value - r.chain[i - 1].value;
    r.worst_violation = std::max(r.worst_violation, rise);
    if (rise > slack) r.monotone = false;
  }
  return r;
}

}  // namespace entrolab
