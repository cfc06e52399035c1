#pragma once

#include <cstdint>
#include <vector>

#include "entrolab/enumerator.hpp"

namespace entrolab::oracle {

// Reference K table built by running every raw bit string of length <= L
// through execute(). Exponential in L; meant for L <= 16.
struct BruteForce {
  KTable table;
  std::vector<std::uint64_t> halting_by_length;
  std::vector<BitString> halting_programs;
};

BruteForce brute_force(const TableParams& params);

}  // namespace entrolab::oracle
