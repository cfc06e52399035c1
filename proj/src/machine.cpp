#include "entrolab/machine.hpp"

#include <bit>
#include <limits>
#include <stdexcept>

namespace entrolab {

std::string_view to_string(Status status) {
  switch (status) {
    case Status::kHalted: return "Halted";
    case Status::kOutOfBits: return "OutOfBits";
    case Status::kOutOfSteps: return "OutOfSteps";
    case Status::kCopyRangeError: return "CopyRangeError";
    case Status::kOutputCapExceeded: return "OutputCapExceeded";
  }
  return "?";
}

std::size_t gamma_length(std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("gamma code requires m >= 1");
  return 2 * static_cast<std::size_t>(std::bit_width(m)) - 1;
}

BitString gamma_encode(std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("gamma code requires m >= 1");
  const auto width = static_cast<std::size_t>(std::bit_width(m));
  BitString out = BitString::repeat(width - 1, false);
  out.append(BitString::from_word(m, width));
  return out;
}

GammaDecoded gamma_decode(const BitString& bits, std::size_t cursor) {
  std::size_t zeros = 0;
  while (cursor < bits.size() && !bits[cursor]) {
    ++zeros;
    ++cursor;
  }
  // The leading 1 plus `zeros` more bits must be present.
  if (cursor + zeros + 1 > bits.size()) return {};
  std::uint64_t value = 0;
  const bool saturated = zeros >= 64;
  for (std::size_t i = 0; i <= zeros; ++i) {
    if (!saturated) value = (value << 1) | (bits[cursor + i] ? 1U : 0U);
  }
  if (saturated) value = std::numeric_limits<std::uint64_t>::max();
  return {value, cursor + zeros + 1, true};
}

BitString encode_instruction(const Instruction& ins) {
  BitString out;
  switch (ins.op) {
    case Opcode::kEmit0: return BitString("00");
    case Opcode::kEmit1: return BitString("01");
    case Opcode::kRun:
      out = BitString("10");
      out.append(gamma_encode(ins.first));
      out.push_back(ins.second != 0);
      return out;
    case Opcode::kCopy:
      out = BitString("110");
      out.append(gamma_encode(ins.first));
      out.append(gamma_encode(ins.second));
      return out;
    case Opcode::kBlock:
      if (ins.raw.size() != ins.first || ins.first == 0) {
        throw std::invalid_argument("BLOCK needs a nonempty payload matching its length");
      }
      out = BitString("1110");
      out.append(gamma_encode(ins.first));
      out.append(ins.raw);
      return out;
    case Opcode::kHalt: return BitString("1111");
  }
  return out;
}

BitString assemble(std::span<const Instruction> program) {
  BitString out;
  for (const auto& ins : program) out.append(encode_instruction(ins));
  return out;
}

namespace {

struct Decoder {
  const BitString& bits;
  std::size_t cursor = 0;

  bool read_bit(bool& bit) {
    if (cursor >= bits.size()) return false;
    bit = bits[cursor++];
    return true;
  }
  bool read_gamma(std::uint64_t& value) {
    auto g = gamma_decode(bits, cursor);
    if (!g.ok) return false;
    value = g.value;
    cursor = g.next;
    return true;
  }
  // Decodes the next instruction; false on premature end of stream.
  bool next(Instruction& ins) {
    bool b0 = false, b1 = false;
    if (!read_bit(b0) || !read_bit(b1)) return false;
    if (!b0) {
      ins.op = b1 ? Opcode::kEmit1 : Opcode::kEmit0;
      return true;
    }
    if (!b1) {
      ins.op = Opcode::kRun;
      bool bit = false;
      if (!read_gamma(ins.first) || !read_bit(bit)) return false;
      ins.second = bit ? 1 : 0;
      return true;
    }
    bool b2 = false;
    if (!read_bit(b2)) return false;
    if (!b2) {
      ins.op = Opcode::kCopy;
      return read_gamma(ins.first) && read_gamma(ins.second);
    }
    bool b3 = false;
    if (!read_bit(b3)) return false;
    if (b3) {
      ins.op = Opcode::kHalt;
      return true;
    }
    ins.op = Opcode::kBlock;
    if (!read_gamma(ins.first)) return false;
    if (ins.first > bits.size() - cursor) return false;
    ins.raw = bits.substr(cursor, ins.first);
    cursor += ins.first;
    return true;
  }
};

}  // namespace

MachineResult execute(const BitString& program, std::uint64_t step_budget,
                      std::size_t output_cap) {
  if (step_budget < 1) throw std::invalid_argument("execute: step budget must be >= 1");
  MachineResult result;
  Decoder decoder{program};
  Instruction ins;
  auto fail = [&](Status status) {
    result.status = status;
    result.consumed = decoder.cursor;
    return result;
  };

  for (;;) {
    if (!decoder.next(ins)) return fail(Status::kOutOfBits);

    std::uint64_t cost = 0;
    switch (ins.op) {
      case Opcode::kEmit0:
      case Opcode::kEmit1:
      case Opcode::kHalt: cost = 1; break;
      case Opcode::kRun: cost = ins.first; break;
      case Opcode::kCopy:
        if (ins.first > result.output.size()) return fail(Status::kCopyRangeError);
        cost = ins.second;
        break;
      case Opcode::kBlock: cost = ins.first; break;
    }
    if (ins.op == Opcode::kHalt && decoder.cursor != program.size()) {
      return fail(Status::kOutOfBits);  // trailing bits
    }
    if (cost > step_budget - result.steps) return fail(Status::kOutOfSteps);
    const std::uint64_t grows = ins.op == Opcode::kHalt ? 0 : cost;
    if (grows > output_cap - result.output.size()) return fail(Status::kOutputCapExceeded);
    result.steps += cost;

    switch (ins.op) {
      case Opcode::kEmit0: result.output.push_back(false); break;
      case Opcode::kEmit1: result.output.push_back(true); break;
      case Opcode::kRun:
        for (std::uint64_t i = 0; i < ins.first; ++i) result.output.push_back(ins.second != 0);
        break;
      case Opcode::kCopy:
        for (std::uint64_t i = 0; i < ins.second; ++i) {
          result.output.push_back(result.output[result.output.size() - ins.first]);
        }
        break;
      case Opcode::kBlock: result.output.append(ins.raw); break;
      case Opcode::kHalt:
        result.status = Status::kHalted;
        result.consumed = decoder.cursor;
        return result;
    }
  }
}

BitString literal_program(const BitString& x) {
  if (x.empty()) return encode_instruction(Instruction::halt());
  const Instruction program[] = {Instruction::block(x), Instruction::halt()};
  return assemble(program);
}

}  // namespace entrolab
