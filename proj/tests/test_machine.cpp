#include <doctest.h>

#include <algorithm>
#include <bit>
#include <random>
#include <string>

#include "entrolab/machine.hpp"
#include "entrolab/oracle.hpp"

using namespace entrolab;

TEST_CASE("gamma_encode examples") {
  CHECK(gamma_encode(1).to_string() == "1");
  CHECK(gamma_encode(2).to_string() == "010");
  CHECK(gamma_encode(5).to_string() == "00101");
  CHECK(gamma_length(5) == 5);
  CHECK_THROWS_AS(gamma_encode(0), std::invalid_argument);
}

TEST_CASE("gamma_decode examples") {
  auto a = gamma_decode(BitString("1"), 0);
  CHECK(a.ok);
  CHECK(a.value == 1);
  CHECK(a.next == 1);

  auto b = gamma_decode(BitString("010"), 0);
  CHECK(b.value == 2);
  CHECK(b.next == 3);

  auto c = gamma_decode(BitString("0010111"), 0);  // "00101" followed by junk
  CHECK(c.value == 5);
  CHECK(c.next == 5);

  CHECK_FALSE(gamma_decode(BitString("001"), 0).ok);
  CHECK_FALSE(gamma_decode(BitString("000"), 0).ok);
  CHECK_FALSE(gamma_decode(BitString(""), 0).ok);
}

TEST_CASE("gamma round-trip for m in [1, 10^6]") {
  for (std::uint64_t m = 1; m <= 1'000'000; ++m) {
    const auto bits = gamma_encode(m);
    const auto d = gamma_decode(bits, 0);
    if (!d.ok || d.value != m || d.next != bits.size()) {
      FAIL("round-trip failed at m=" << m);
    }
  }
}

TEST_CASE("execute hand-traced programs") {
  SUBCASE("halt only") {
    auto r = execute(BitString("1111"), 10);
    CHECK(r.status == Status::kHalted);
    CHECK(r.output.empty());
    CHECK(r.steps == 1);
    CHECK(r.consumed == 4);
  }
  SUBCASE("emit1 halt") {
    auto r = execute(BitString("011111"), 10);
    CHECK(r.halted());
    CHECK(r.output.to_string() == "1");
    CHECK(r.steps == 2);
  }
  SUBCASE("run of three zeros") {
    auto r = execute(BitString("1001101111"), 10);
    CHECK(r.halted());
    CHECK(r.output.to_string() == "000");
    CHECK(r.steps == 4);
  }
  SUBCASE("overlapping copy") {
    auto r = execute(BitString("0001110010001001111"), 10);
    CHECK(r.halted());
    CHECK(r.output.to_string() == "010101");
    CHECK(r.steps == 7);
  }
  SUBCASE("assembler agrees with the hand encoding") {
    const Instruction prog[] = {Instruction::emit(false), Instruction::emit(true),
                                Instruction::copy(2, 4), Instruction::halt()};
    CHECK(assemble(prog).to_string() == "0001110010001001111");
  }
}

TEST_CASE("execute error statuses") {
  CHECK(execute(BitString(""), 10).status == Status::kOutOfBits);
  CHECK(execute(BitString("111"), 10).status == Status::kOutOfBits);
  // trailing bit after HALT
  CHECK(execute(BitString("11110"), 10).status == Status::kOutOfBits);
  // RUN of 3 with budget 3: needs 3 + 1 steps
  CHECK(execute(BitString("1001101111"), 3).status == Status::kOutOfSteps);
  // COPY d=1 on empty output
  CHECK(execute(BitString("110111111"), 10).status == Status::kCopyRangeError);
  // RUN of 3 with cap 2
  CHECK(execute(BitString("1001101111"), 10, 2).status == Status::kOutputCapExceeded);
  // BLOCK length 4 but only two raw bits follow
  CHECK(execute(BitString("111000100" "01"), 10).status == Status::kOutOfBits);
  CHECK_THROWS_AS(execute(BitString("1111"), 0), std::invalid_argument);
}

TEST_CASE("literal program reproduces x within the log-corrected bound") {
  std::mt19937_64 rng(7);
  for (std::size_t len = 0; len <= 64; ++len) {
    BitString x;
    for (std::size_t i = 0; i < len; ++i) x.push_back((rng() & 1U) != 0);
    const auto program = literal_program(x);
    const auto r = execute(program, 4096, 64);
    REQUIRE(r.halted());
    CHECK(r.output == x);
    const std::size_t expected =
        len == 0 ? 4 : len + 2 * (static_cast<std::size_t>(std::bit_width(len)) - 1) + 9;
    CHECK(program.size() == expected);
  }
}

TEST_CASE("random programs: exact consumption, step lower bound, determinism") {
  std::mt19937_64 rng(12345);
  std::size_t halted = 0;
  for (int trial = 0; trial < 20000; ++trial) {
    // Assemble a random instruction list so that many programs actually halt.
    std::vector<Instruction> prog;
    const int n = static_cast<int>(rng() % 6);
    for (int i = 0; i < n; ++i) {
      switch (rng() % 4) {
        case 0: prog.push_back(Instruction::emit((rng() & 1U) != 0)); break;
        case 1: prog.push_back(Instruction::run(1 + rng() % 9, (rng() & 1U) != 0)); break;
        case 2: prog.push_back(Instruction::copy(1 + rng() % 4, 1 + rng() % 9)); break;
        default: {
          BitString raw;
          const auto l = 1 + rng() % 6;
          for (std::uint64_t j = 0; j < l; ++j) raw.push_back((rng() & 1U) != 0);
          prog.push_back(Instruction::block(raw));
        }
      }
    }
    prog.push_back(Instruction::halt());
    BitString bits = assemble(prog);
    if (rng() % 4 == 0) bits.push_back(true);  // sometimes add a trailing bit
    const auto a = execute(bits, 64, 64);
    const auto b = execute(bits, 64, 64);
    CHECK(a.output == b.output);
    CHECK(a.steps == b.steps);
    CHECK(a.status == b.status);
    if (a.halted()) {
      ++halted;
      CHECK(a.consumed == bits.size());
      CHECK(a.steps >= a.output.size() + 1);
    }
  }
  CHECK(halted > 1000);
}

TEST_CASE("halting programs up to 14 bits form a prefix-free set") {
  auto bf = oracle::brute_force({14, 4096, 64});
  std::vector<std::string> programs;
  for (const auto& p : bf.halting_programs) programs.push_back(p.to_string());
  std::sort(programs.begin(), programs.end());
  // In plain lexicographic order a prefix sorts directly before some extension
  // of itself, so adjacent pairs suffice.
  for (std::size_t i = 1; i < programs.size(); ++i) {
    const auto& a = programs[i - 1];
    const auto& b = programs[i];
    CHECK_FALSE(b.compare(0, a.size(), a) == 0);
  }
}
