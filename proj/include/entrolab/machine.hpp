#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "entrolab/bitstring.hpp"

namespace entrolab {

// Self-delimiting instruction set of the reference prefix machine.
//
//   EMIT0  "00"                          append 0            cost 1
//   EMIT1  "01"                          append 1            cost 1
//   RUN    "10"   gamma(m) bit           append m copies     cost m
//   COPY   "110"  gamma(d) gamma(m)      LZ-style copy       cost m
//   BLOCK  "1110" gamma(l) raw[l]        append raw bits     cost l
//   HALT   "1111"                        stop                cost 1
//
// A program halts only if HALT is reached with every program bit consumed,
// which makes the set of halting programs prefix-free.
enum class Opcode : std::uint8_t { kEmit0, kEmit1, kRun, kCopy, kBlock, kHalt };

struct Instruction {
  Opcode op = Opcode::kHalt;
  std::uint64_t first = 0;   // RUN: m; COPY: d; BLOCK: l
  std::uint64_t second = 0;  // RUN: repeated bit; COPY: m
  BitString raw;             // BLOCK payload

  static Instruction emit(bool bit) { return {bit ? Opcode::kEmit1 : Opcode::kEmit0, 0, 0, {}}; }
  static Instruction run(std::uint64_t m, bool bit) { return {Opcode::kRun, m, bit ? 1U : 0U, {}}; }
  static Instruction copy(std::uint64_t d, std::uint64_t m) { return {Opcode::kCopy, d, m, {}}; }
  static Instruction block(BitString raw) {
    const auto n = raw.size();
    return {Opcode::kBlock, n, 0, std::move(raw)};
  }
  static Instruction halt() { return {}; }
};

enum class Status : std::uint8_t {
  kHalted,
  kOutOfBits,
  kOutOfSteps,
  kCopyRangeError,
  kOutputCapExceeded,
};

std::string_view to_string(Status status);

struct MachineResult {
  BitString output;
  std::uint64_t steps = 0;
  std::size_t consumed = 0;
  Status status = Status::kOutOfBits;

  bool halted() const { return status == Status::kHalted; }
};

inline constexpr std::uint64_t kDefaultStepBudget = 4096;
inline constexpr std::size_t kDefaultOutputCap = 64;

// Elias gamma code: (b-1) zeros then the b-bit binary of m, b = floor(log2 m) + 1.
BitString gamma_encode(std::uint64_t m);
std::size_t gamma_length(std::uint64_t m);

// One gamma codeword decoded at a cursor. `ok` is false when the stream ends
// mid-code. Values wider than 64 bits saturate to UINT64_MAX.
struct GammaDecoded {
  std::uint64_t value = 0;
  std::size_t next = 0;
  bool ok = false;
};
GammaDecoded gamma_decode(const BitString& bits, std::size_t cursor);

BitString encode_instruction(const Instruction& instruction);
BitString assemble(std::span<const Instruction> program);

MachineResult execute(const BitString& program, std::uint64_t step_budget = kDefaultStepBudget,
                      std::size_t output_cap = kDefaultOutputCap);

// BLOCK(|x|, x) HALT, or HALT alone for the empty string.
BitString literal_program(const BitString& x);

}  // namespace entrolab
