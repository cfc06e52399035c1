#include "entrolab/oracle.hpp"

#include <stdexcept>

namespace entrolab::oracle {

BruteForce brute_force(const TableParams& params) {
  if (params.max_len < 0 || params.max_len > 22) {
    throw std::invalid_argument("brute_force: L must be in [0, 22]");
  }
  BruteForce out{KTable(params), std::vector<std::uint64_t>(params.max_len + 1), {}};
  for (int len = 0; len <= params.max_len; ++len) {
    for (std::uint64_t w = 0; w < (std::uint64_t{1} << len); ++w) {
      BitString program = BitString::from_word(w, static_cast<std::size_t>(len));
      const auto run = execute(program, params.budget, params.output_cap);
      if (!run.halted()) continue;
      ++out.halting_by_length[len];
      out.table.offer(run.output, KEntry{len, run.steps, program});
      out.halting_programs.push_back(std::move(program));
    }
  }
  return out;
}

}  // namespace entrolab::oracle
