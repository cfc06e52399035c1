#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "entrolab/bitstring.hpp"
#include "entrolab/machine.hpp"
#include "entrolab/rational.hpp"
#include "entrolab/time_bound.hpp"

namespace entrolab {

inline constexpr int kMinTableLength = 4;
inline constexpr int kMaxTableLength = 28;

struct TableParams {
  int max_len = 20;                               // L: longest program enumerated
  std::uint64_t budget = kDefaultStepBudget;      // T
  std::size_t output_cap = kDefaultOutputCap;     // outputs longer than this are dropped

  bool operator==(const TableParams&) const = default;
};

struct KEntry {
  int k = 0;                // minimal program length
  std::uint64_t steps = 0;  // fewest steps among programs of length k
  BitString witness;        // canonical minimal program

  bool operator==(const KEntry&) const = default;
};

// Canonical order for competing programs of one output: shorter, then fewer
// steps, then smaller as a binary numeral.
bool precedes(const KEntry& a, const KEntry& b);

// Exact K^T table of the reference machine up to a program length cap.
class KTable {
 public:
  KTable() = default;
  explicit KTable(TableParams params) : params_(params) {}

  const TableParams& params() const { return params_; }
  const std::map<BitString, KEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  const KEntry* find(const BitString& x) const;
  // Keeps whichever of the existing and offered entries precedes the other.
  void offer(const BitString& x, KEntry entry);

  bool operator==(const KTable&) const = default;

 private:
  TableParams params_;
  std::map<BitString, KEntry> entries_;
};

struct KraftReport {
  Rational total;           // Σ 2^-|p| over halting programs of length <= L
  std::uint64_t count = 0;  // number of such programs
  std::vector<std::uint64_t> count_by_length;  // index = program length
};

struct Enumeration {
  KTable table;
  std::vector<std::uint64_t> halting_by_length;
};

class EnumerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Walks the instruction decode tree for every program of length <= L.
// `threads` only affects speed; the result is identical for any value.
Enumeration enumerate_programs(const TableParams& params, unsigned threads = 1);
KTable enumerate(const TableParams& params, unsigned threads = 1);

KraftReport kraft_report(const Enumeration& enumeration);
KraftReport kraft_check(int max_len, std::uint64_t budget, unsigned threads = 1);

// Canonical shortest program for x among programs of length <= max_len that
// halt within `budget` steps. Searches only branches whose output stays a
// prefix of x, so it is cheap even for deep caps. Requires |x| <= 64.
std::optional<KEntry> shortest_program(const BitString& x, int max_len, std::uint64_t budget);

// K^t(x) on the table's machine, with t applied to |x| and clamped to the
// table budget. Falls back to a targeted re-search when the stored witness is
// too slow for t.
std::optional<int> kt_lookup(const KTable& table, const BitString& x, const TimeBound& t);

// Length of BLOCK(|x|, x) HALT: |x| + 2 floor(log2 |x|) + 9, or 4 for "".
int literal_upper_bound(const BitString& x);

// Entries with k <= max_len. Equal to enumerating directly at that cap.
KTable restrict_to_length(const KTable& table, int max_len);

// Outputs in the table whose length is exactly n, in lexicographic order.
std::vector<std::pair<BitString, KEntry>> entries_of_length(const KTable& table, std::size_t n);

class TableFormatError : public std::runtime_error {
 public:
  TableFormatError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

void write_table(std::ostream& out, const KTable& table);
KTable read_table(std::istream& in);
void save_table(const KTable& table, const std::filesystem::path& path);
KTable load_table(const std::filesystem::path& path);

// File name used to cache a table in a work directory: ktable_L<L>_T<T>_cap<C>.txt
std::string table_file_name(const TableParams& params);

}  // namespace entrolab
