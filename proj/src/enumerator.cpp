#include "entrolab/enumerator.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <new>
#include <thread>
#include <unordered_map>

namespace entrolab {

bool precedes(const KEntry& a, const KEntry& b) {
  if (a.k != b.k) return a.k < b.k;
  if (a.steps != b.steps) return a.steps < b.steps;
  return a.witness < b.witness;
}

const KEntry* KTable::find(const BitString& x) const {
  auto it = entries_.find(x);
  return it == entries_.end() ? nullptr : &it->second;
}

void KTable::offer(const BitString& x, KEntry entry) {
  auto [it, inserted] = entries_.try_emplace(x, entry);
  if (!inserted && precedes(entry, it->second)) it->second = std::move(entry);
}

namespace {

constexpr std::uint64_t shl(std::uint64_t v, unsigned s) { return s >= 64 ? 0 : v << s; }
constexpr std::uint64_t low_mask(unsigned n) { return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }

constexpr unsigned kHaltBits = 4;
constexpr std::uint64_t kHaltCode = 0b1111;

// A partial program: `prog` holds `plen` bits, `out` holds the last `olen`
// output bits (all of them, since olen <= 64).
struct Node {
  std::uint64_t prog = 0;
  unsigned plen = 0;
  std::uint64_t out = 0;
  unsigned olen = 0;
  std::uint64_t steps = 0;
};

struct Limits {
  unsigned max_len;
  std::uint64_t budget;
  unsigned output_cap;
};

// Depth-first walk of the decode tree. `keep(out, olen)` prunes subtrees whose
// output can no longer matter; `sink(node)` receives every halting program
// (node already includes the HALT instruction and its step).
template <class Keep, class Sink>
class Walker {
 public:
  Walker(Limits limits, Keep keep, Sink sink) : lim_(limits), keep_(keep), sink_(sink) {}

  void walk(const Node& n) {
    for_each_child(n, [this](const Node& child) { walk(child); });
  }

  // Calls visit(child) for every non-halting child; halting ones go to sink.
  template <class Visit>
  void for_each_child(const Node& n, Visit&& visit) {
    const unsigned room = lim_.max_len - n.plen;  // bits left, including the final HALT
    if (room < kHaltBits) return;
    const unsigned free_bits = room - kHaltBits;  // for instructions before HALT

    if (n.steps + 1 <= lim_.budget) {
      Node h = n;
      h.prog = shl(n.prog, kHaltBits) | kHaltCode;
      h.plen += kHaltBits;
      h.steps += 1;
      sink_(h);
    }

    // EMIT0 / EMIT1
    if (free_bits >= 2 && n.steps + 1 <= lim_.budget && n.olen + 1 <= lim_.output_cap) {
      for (unsigned bit = 0; bit < 2; ++bit) {
        Node c = n;
        c.prog = shl(n.prog, 2) | bit;
        c.plen += 2;
        c.out = shl(n.out, 1) | bit;
        c.olen += 1;
        c.steps += 1;
        if (keep_(c.out, c.olen)) visit(c);
      }
    }

    // RUN: "10" gamma(m) bit
    for (unsigned width = 1;; ++width) {
      const unsigned ilen = 2 + (2 * width - 1) + 1;
      if (ilen > free_bits) break;
      const std::uint64_t lo = std::uint64_t{1} << (width - 1);
      if (n.steps + lo > lim_.budget || n.olen + lo > lim_.output_cap) break;
      for (std::uint64_t m = lo; m < 2 * lo; ++m) {
        if (n.steps + m > lim_.budget || n.olen + m > lim_.output_cap) break;
        for (unsigned bit = 0; bit < 2; ++bit) {
          Node c = n;
          c.prog = shl(n.prog, ilen) | (std::uint64_t{0b10} << (2 * width)) | (m << 1) | bit;
          c.plen += ilen;
          c.out = shl(n.out, static_cast<unsigned>(m)) | (bit ? low_mask(static_cast<unsigned>(m)) : 0);
          c.olen += static_cast<unsigned>(m);
          c.steps += m;
          if (keep_(c.out, c.olen)) visit(c);
        }
      }
    }

    // COPY: "110" gamma(d) gamma(m), 1 <= d <= olen
    for (unsigned dwidth = 1; n.olen >= (1U << (dwidth - 1)); ++dwidth) {
      const unsigned head = 3 + (2 * dwidth - 1);
      if (head + 1 > free_bits) break;
      const std::uint64_t dlo = std::uint64_t{1} << (dwidth - 1);
      const std::uint64_t dhi = std::min<std::uint64_t>(2 * dlo - 1, n.olen);
      for (unsigned mwidth = 1;; ++mwidth) {
        const unsigned ilen = head + (2 * mwidth - 1);
        if (ilen > free_bits) break;
        const std::uint64_t mlo = std::uint64_t{1} << (mwidth - 1);
        if (n.steps + mlo > lim_.budget || n.olen + mlo > lim_.output_cap) break;
        for (std::uint64_t d = dlo; d <= dhi; ++d) {
          for (std::uint64_t m = mlo; m < 2 * mlo; ++m) {
            if (n.steps + m > lim_.budget || n.olen + m > lim_.output_cap) break;
            Node c = n;
            const unsigned mbits = 2 * mwidth - 1;
            c.prog = shl(n.prog, ilen) | (std::uint64_t{0b110} << (ilen - 3)) | (d << mbits) | m;
            c.plen += ilen;
            for (std::uint64_t i = 0; i < m; ++i) {
              const std::uint64_t bit = (c.out >> (d - 1)) & 1U;
              c.out = shl(c.out, 1) | bit;
            }
            c.olen += static_cast<unsigned>(m);
            c.steps += m;
            if (keep_(c.out, c.olen)) visit(c);
          }
        }
      }
    }

    // BLOCK: "1110" gamma(l) raw[l]
    for (unsigned width = 1;; ++width) {
      const std::uint64_t lo = std::uint64_t{1} << (width - 1);
      const unsigned head = 4 + (2 * width - 1);
      if (head + lo > free_bits) break;
      if (n.steps + lo > lim_.budget || n.olen + lo > lim_.output_cap) break;
      for (std::uint64_t l = lo; l < 2 * lo; ++l) {
        const unsigned ilen = head + static_cast<unsigned>(l);
        if (ilen > free_bits) break;
        if (n.steps + l > lim_.budget || n.olen + l > lim_.output_cap) break;
        const unsigned lb = static_cast<unsigned>(l);
        const std::uint64_t prefix =
            shl(n.prog, ilen) | (std::uint64_t{0b1110} << (ilen - 4)) | (l << lb);
        for (std::uint64_t raw = 0; raw <= low_mask(lb); ++raw) {
          Node c = n;
          c.prog = prefix | raw;
          c.plen += ilen;
          c.out = shl(n.out, lb) | raw;
          c.olen += lb;
          c.steps += l;
          if (keep_(c.out, c.olen)) visit(c);
          if (raw == low_mask(lb)) break;
        }
      }
    }
  }

 private:
  Limits lim_;
  Keep keep_;
  Sink sink_;
};

template <class Keep, class Sink>
Walker<Keep, Sink> make_walker(Limits limits, Keep keep, Sink sink) {
  return Walker<Keep, Sink>(limits, keep, sink);
}

struct CompactEntry {
  std::uint64_t prog = 0;
  std::uint64_t steps = 0;
  unsigned k = 0;
};

bool compact_precedes(const CompactEntry& a, const CompactEntry& b) {
  if (a.k != b.k) return a.k < b.k;
  if (a.steps != b.steps) return a.steps < b.steps;
  return a.prog < b.prog;  // same length, so numeric order is lexicographic order
}

// Per-worker partial table, indexed by output length then output bits.
struct PartialTable {
  std::vector<std::unordered_map<std::uint64_t, CompactEntry>> by_length;
  std::vector<std::uint64_t> halting_by_length;

  PartialTable(unsigned cap, unsigned max_len) : by_length(cap + 1), halting_by_length(max_len + 1) {}

  void record(const Node& h) {
    ++halting_by_length[h.plen];
    CompactEntry e{h.prog, h.steps, h.plen};
    auto [it, inserted] = by_length[h.olen].try_emplace(h.out, e);
    if (!inserted && compact_precedes(e, it->second)) it->second = e;
  }

  void merge_from(const PartialTable& other) {
    for (std::size_t len = 0; len < by_length.size(); ++len) {
      for (const auto& [out, e] : other.by_length[len]) {
        auto [it, inserted] = by_length[len].try_emplace(out, e);
        if (!inserted && compact_precedes(e, it->second)) it->second = e;
      }
    }
    for (std::size_t i = 0; i < halting_by_length.size(); ++i) {
      halting_by_length[i] += other.halting_by_length[i];
    }
  }
};

void validate(const TableParams& p) {
  if (p.max_len < kMinTableLength || p.max_len > kMaxTableLength) {
    throw std::invalid_argument("enumerate: max length must be in [" +
                                std::to_string(kMinTableLength) + ", " +
                                std::to_string(kMaxTableLength) + "]");
  }
  if (p.budget < 1) throw std::invalid_argument("enumerate: step budget must be >= 1");
  if (p.output_cap > 64) throw std::invalid_argument("enumerate: output cap must be <= 64");
}

}  // namespace

Enumeration enumerate_programs(const TableParams& params, unsigned threads) {
  validate(params);
  threads = std::max(1U, threads);
  const Limits lim{static_cast<unsigned>(params.max_len), params.budget,
                   static_cast<unsigned>(params.output_cap)};
  const auto keep_all = [](std::uint64_t, unsigned) { return true; };

  try {
    // Split the tree two instructions deep; each frontier node is one task.
    PartialTable shallow(lim.output_cap, lim.max_len);
    std::vector<Node> level1, tasks;
    {
      auto w = make_walker(lim, keep_all, [&shallow](const Node& h) { shallow.record(h); });
      w.for_each_child(Node{}, [&level1](const Node& c) { level1.push_back(c); });
      for (const auto& n : level1) {
        w.for_each_child(n, [&tasks](const Node& c) { tasks.push_back(c); });
      }
    }

    std::vector<PartialTable> partials(threads, PartialTable(lim.output_cap, lim.max_len));
    std::atomic<std::size_t> next{0};
    auto worker = [&](unsigned id) {
      PartialTable& mine = partials[id];
      auto w = make_walker(lim, keep_all, [&mine](const Node& h) { mine.record(h); });
      for (std::size_t i = next++; i < tasks.size(); i = next++) w.walk(tasks[i]);
    };
    if (threads == 1) {
      worker(0);
    } else {
      std::vector<std::jthread> pool;
      for (unsigned id = 0; id < threads; ++id) pool.emplace_back(worker, id);
    }

    for (const auto& p : partials) shallow.merge_from(p);

    Enumeration result{KTable(params), std::move(shallow.halting_by_length)};
    for (std::size_t len = 0; len < shallow.by_length.size(); ++len) {
      for (const auto& [out, e] : shallow.by_length[len]) {
        result.table.offer(BitString::from_word(out, len),
                           KEntry{static_cast<int>(e.k), e.steps, BitString::from_word(e.prog, e.k)});
      }
    }
    return result;
  } catch (const std::bad_alloc&) {
    throw EnumerationError("enumerate: out of memory at L=" + std::to_string(params.max_len));
  }
}

KTable enumerate(const TableParams& params, unsigned threads) {
  return enumerate_programs(params, threads).table;
}

KraftReport kraft_report(const Enumeration& enumeration) {
  KraftReport report;
  report.count_by_length = enumeration.halting_by_length;
  const auto max_len = static_cast<unsigned>(enumeration.table.params().max_len);
  BigInt units = 0;  // in multiples of 2^-L
  for (unsigned len = 0; len < report.count_by_length.size(); ++len) {
    const auto c = report.count_by_length[len];
    report.count += c;
    units += BigInt(c) << (max_len - len);
  }
  report.total = Rational(units, pow2(max_len));
  return report;
}

KraftReport kraft_check(int max_len, std::uint64_t budget, unsigned threads) {
  return kraft_report(enumerate_programs(TableParams{max_len, budget, kDefaultOutputCap}, threads));
}

std::optional<KEntry> shortest_program(const BitString& x, int max_len, std::uint64_t budget) {
  if (x.size() > 64) throw std::invalid_argument("shortest_program: |x| must be <= 64");
  if (max_len < 0 || max_len > 64) throw std::invalid_argument("shortest_program: bad max length");
  if (budget == 0) return std::nullopt;
  const auto xlen = static_cast<unsigned>(x.size());
  const std::uint64_t xw = x.to_word();
  const Limits lim{static_cast<unsigned>(max_len), budget, xlen};

  std::optional<CompactEntry> best;
  auto keep_prefix = [xw, xlen](std::uint64_t out, unsigned olen) {
    return olen <= xlen && (olen == 0 || out == (xlen - olen >= 64 ? 0 : xw >> (xlen - olen)));
  };
  auto sink = [&best, xw, xlen](const Node& h) {
    if (h.olen != xlen || h.out != xw) return;
    CompactEntry e{h.prog, h.steps, h.plen};
    if (!best || compact_precedes(e, *best)) best = e;
  };
  auto w = make_walker(lim, keep_prefix, sink);
  w.walk(Node{});
  if (!best) return std::nullopt;
  return KEntry{static_cast<int>(best->k), best->steps, BitString::from_word(best->prog, best->k)};
}

std::optional<int> kt_lookup(const KTable& table, const BitString& x, const TimeBound& t) {
  const KEntry* entry = table.find(x);
  if (entry == nullptr) return std::nullopt;  // a stricter bound cannot add programs
  const std::uint64_t allowance = std::min(t(x.size()), table.params().budget);
  if (entry->steps <= allowance) return entry->k;
  auto found = shortest_program(x, table.params().max_len, allowance);
  if (!found) return std::nullopt;
  return found->k;
}

int literal_upper_bound(const BitString& x) {
  if (x.empty()) return 4;
  const auto n = x.size();
  return static_cast<int>(n) + 2 * (static_cast<int>(std::bit_width(n)) - 1) + 9;
}

KTable restrict_to_length(const KTable& table, int max_len) {
  TableParams p = table.params();
  p.max_len = max_len;
  KTable out(p);
  for (const auto& [x, e] : table.entries()) {
    if (e.k <= max_len) out.offer(x, e);
  }
  return out;
}

std::vector<std::pair<BitString, KEntry>> entries_of_length(const KTable& table, std::size_t n) {
  std::vector<std::pair<BitString, KEntry>> out;
  auto it = table.entries().lower_bound(BitString::repeat(n, false));
  for (; it != table.entries().end() && it->first.size() == n; ++it) out.emplace_back(*it);
  return out;
}

}  // namespace entrolab
