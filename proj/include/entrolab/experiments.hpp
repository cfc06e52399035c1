#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "entrolab/distributions.hpp"
#include "entrolab/enumerator.hpp"
#include "entrolab/entropy.hpp"

namespace entrolab {

struct Measurement {
  double value = 0.0;
  std::optional<double> tolerance;  // the bound the value was judged against; none if report-only
};

enum class Verdict : std::uint8_t { kPass, kFail, kReport };

std::string_view to_string(Verdict verdict);

struct VerificationReport {
  std::string claim;
  std::vector<std::pair<std::string, std::string>> inputs;
  std::vector<std::pair<std::string, Measurement>> measurements;
  std::vector<std::string> notes;
  Verdict status = Verdict::kPass;

  void input(std::string name, std::string value);
  void measure(std::string name, double value, std::optional<double> tolerance = std::nullopt);
  // Downgrades a passing report to a failing one when `ok` is false.
  void require(bool ok, const std::string& what);
  // Throws std::out_of_range if absent.
  const Measurement& at(std::string_view name) const;
  bool passed() const { return status == Verdict::kPass; }
};

// Short, stable description of a distribution, e.g. "half_uniform:4".
std::string describe(const Distribution& p);

// K(P) stand-in: k of encode(P) from the table under t (default: the table
// budget), else the literal-program bound.
struct ComplexityProxy {
  std::size_t encoding_bits = 0;
  int value = 0;
  bool from_table = false;
};

ComplexityProxy k_proxy(const Distribution& p, const KTable& table,
                        const std::optional<TimeBound>& t = std::nullopt);

// Largest-k string of length n other than 0^n (which would give the first
// point probability 0), lexicographically smallest on ties.
BitString max_complexity_weight(const KTable& table, unsigned n);

inline constexpr double kNumericSlack = 1e-9;

VerificationReport verify_coding_gap(const Distribution& p, const KTable& table);

struct TightnessOptions {
  double header_overhead = 8.0;  // item 1: |gap - K(P) proxy|
  double c_gap = 12.0;           // item 2: gap ceiling
  double spread = 2.0;           // item 2: variation of the gap across n
};

// Item 1 (point mass at the max-complexity string) and item 2 (two-point
// law whose weight is that string) for a single length n.
VerificationReport verify_tightness(unsigned n, const KTable& table, const TightnessOptions& options = {});
// Item 2 across lengths: bounded spread of the gap, growing encodings.
VerificationReport verify_tightness_sweep(const std::vector<unsigned>& ns, const KTable& table,
                                          const TightnessOptions& options = {});

inline constexpr double kCorollaryExponent = 1.8;

VerificationReport verify_corollary(unsigned n, const KTable& table, double exponent = kCorollaryExponent);
// (H - H_{alpha+}) / (n-1)^{2-exponent} approaches ln2/8; judged at n_hi.
VerificationReport verify_corollary_sweep(unsigned n_lo, unsigned n_hi, const KTable& table,
                                          double exponent = kCorollaryExponent,
                                          double ratio_tolerance = 0.2);

// Without `alpha`, each n uses alpha+ = 1 + (n-1)^{-exponent}.
VerificationReport verify_gap_growth(unsigned n_lo, unsigned n_hi, const KTable& table,
                                     std::optional<double> alpha = std::nullopt,
                                     double exponent = kCorollaryExponent);

inline constexpr double kDominationSlack = 16.0;

VerificationReport verify_domination(const Distribution& p, const KTable& table, const TimeBound& t,
                                     double slack = kDominationSlack);

VerificationReport verify_promise(const Distribution& p, const KTable& table, const TimeBound& t);

enum class ProbeKind : std::uint8_t { kShannonCore, kRenyiSum, kTsallisSum, kEntropyOfTruncation };

std::string_view to_string(ProbeKind kind);
ProbeKind parse_probe_kind(std::string_view text);

struct ProbePoint {
  int depth = 0;
  double value = 0.0;
};

struct ProbeSeries {
  ProbeKind kind = ProbeKind::kShannonCore;
  std::optional<double> alpha;
  std::vector<ProbePoint> points;

  std::vector<double> increments() const;
};

// shannon_core: Σ k 2^-k; renyi_sum and tsallis_sum: Σ 2^{-k alpha};
// entropy_of_truncation: shannon(m^t) with t the table budget. Tables must
// share budget and output cap and have strictly increasing depth.
ProbeSeries probe_divergence(const std::vector<const KTable*>& tables, ProbeKind kind,
                             std::optional<double> alpha = std::nullopt);

// Exact sums behind the probes.
Rational shannon_core_exact(const KTable& table);
Rational power_sum_exact(const KTable& table, unsigned alpha);

// CSV "kind,alpha,depth,value"; JSON array of
// {claim, inputs, measurements{name: {value, tolerance}}, notes, status}.
void write_probes_csv(std::ostream& out, const std::vector<ProbeSeries>& series);
void write_reports_json(std::ostream& out, const std::vector<VerificationReport>& reports);
// Writes <prefix>probes.csv and <prefix>reports.json.
void emit_report(const std::vector<VerificationReport>& reports, const std::vector<ProbeSeries>& series,
                 const std::string& path_prefix);

// Tables keyed by (L, T, cap), optionally persisted under a directory using
// table_file_name().
class TableCache {
 public:
  explicit TableCache(std::optional<std::filesystem::path> dir = std::nullopt, unsigned threads = 1);

  const KTable& get(const TableParams& params);
  const KTable& get(int max_len) { return get(TableParams{max_len, kDefaultStepBudget, kDefaultOutputCap}); }

 private:
  std::optional<std::filesystem::path> dir_;
  unsigned threads_;
  std::map<std::tuple<int, std::uint64_t, std::size_t>, KTable> tables_;
};

}  // namespace entrolab
