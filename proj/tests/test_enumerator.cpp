#include <doctest.h>

#include <filesystem>
#include <map>
#include <sstream>

#include "entrolab/enumerator.hpp"
#include "entrolab/oracle.hpp"

using namespace entrolab;

namespace {

KTable table_at(int L, std::uint64_t T = 4096, std::size_t cap = 64) {
  return enumerate(TableParams{L, T, cap});
}

}  // namespace

TEST_CASE("L=4: HALT is the only program") {
  const auto t = table_at(4, 10);
  REQUIRE(t.size() == 1);
  const KEntry* e = t.find(BitString());
  REQUIRE(e != nullptr);
  CHECK(e->k == 4);
  CHECK(e->steps == 1);
  CHECK(e->witness.to_string() == "1111");
}

TEST_CASE("L=6: the two one-bit outputs") {
  const auto t = table_at(6, 10);
  CHECK(t.size() == 3);
  const KEntry* zero = t.find(BitString("0"));
  const KEntry* one = t.find(BitString("1"));
  REQUIRE(zero != nullptr);
  REQUIRE(one != nullptr);
  CHECK(*zero == KEntry{6, 2, BitString("001111")});
  CHECK(*one == KEntry{6, 2, BitString("011111")});
}

TEST_CASE("L=10: K(000) = 10, confirmed by raw enumeration") {
  const auto t = table_at(10, 10);
  const KEntry* e = t.find(BitString("000"));
  REQUIRE(e != nullptr);
  CHECK(e->k == 10);
  // No program of at most nine bits prints 000.
  const auto bf = oracle::brute_force({9, 10, 64});
  CHECK(bf.table.find(BitString("000")) == nullptr);
}

TEST_CASE("decode-tree enumeration equals raw enumeration for L <= 14") {
  for (int L = 4; L <= 14; ++L) {
    for (auto [T, cap] : {std::pair<std::uint64_t, std::size_t>{4096, 64}, {6, 64}, {4096, 3}}) {
      CAPTURE(L);
      CAPTURE(T);
      CAPTURE(cap);
      const TableParams p{L, T, cap};
      const auto fast = enumerate_programs(p);
      const auto slow = oracle::brute_force(p);
      CHECK(fast.table == slow.table);
      CHECK(fast.halting_by_length == slow.halting_by_length);
    }
  }
}

TEST_CASE("thread count does not change the table") {
  const TableParams p{20, 4096, 64};
  const auto one = enumerate_programs(p, 1);
  const auto four = enumerate_programs(p, 4);
  CHECK(one.table == four.table);
  CHECK(one.halting_by_length == four.halting_by_length);
}

TEST_CASE("budget monotonicity: a tighter budget never shortens a program") {
  const auto loose = table_at(16, 4096);
  for (std::uint64_t T : {2, 5, 9, 17}) {
    const auto tight = table_at(16, T);
    for (const auto& [x, e] : tight.entries()) {
      const KEntry* l = loose.find(x);
      REQUIRE(l != nullptr);
      CHECK(e.k >= l->k);
    }
  }
}

TEST_CASE("cap monotonicity and restriction") {
  const auto deep = table_at(20);
  for (int L = 4; L < 20; L += 2) {
    const auto shallow = table_at(L);
    for (const auto& [x, e] : shallow.entries()) {
      const KEntry* d = deep.find(x);
      REQUIRE(d != nullptr);
      CHECK(d->k <= e.k);
    }
    CHECK(restrict_to_length(deep, L) == shallow);
  }
}

TEST_CASE("table invariants: witnesses replay and k respects the literal bound") {
  const auto t = table_at(22);
  const auto& p = t.params();
  for (const auto& [x, e] : t.entries()) {
    const auto r = execute(e.witness, p.budget, p.output_cap);
    REQUIRE(r.halted());
    CHECK(r.output == x);
    CHECK(r.steps == e.steps);
    CHECK(static_cast<int>(e.witness.size()) == e.k);
    if (literal_upper_bound(x) <= p.max_len) CHECK(e.k <= literal_upper_bound(x));
  }
  // Every string whose literal program fits is present.
  for (std::size_t n = 0; n <= 8; ++n) {
    for (const auto& x : all_strings_of_length(n)) {
      if (literal_upper_bound(x) <= p.max_len) CHECK(t.find(x) != nullptr);
    }
  }
}

TEST_CASE("literal_upper_bound examples") {
  CHECK(literal_upper_bound(BitString()) == 4);
  CHECK(literal_upper_bound(BitString("1")) == 10);
  CHECK(literal_upper_bound(BitString::repeat(12, true)) == 27);
}

TEST_CASE("kt_lookup examples") {
  const auto t6 = table_at(6);
  CHECK(kt_lookup(t6, BitString("0"), TimeBound::constant(4096)) == 6);
  CHECK_FALSE(kt_lookup(t6, BitString("00"), TimeBound::constant(4096)).has_value());
  CHECK_FALSE(kt_lookup(t6, BitString("00"), TimeBound::poly(1, 1)).has_value());
  CHECK(kt_lookup(t6, BitString(), TimeBound::constant(1)) == 4);
  // HALT costs one step, so a zero allowance excludes everything.
  CHECK_FALSE(kt_lookup(t6, BitString(), TimeBound::poly(4, 2)).has_value());
}

TEST_CASE("kt_lookup under strict bounds matches a raw-enumeration oracle") {
  const int L = 14;
  const auto table = table_at(L);
  std::map<std::uint64_t, KTable> oracle_tables;
  for (auto bound : {TimeBound::constant(3), TimeBound::constant(6), TimeBound::poly(1, 1),
                     TimeBound::poly(2, 1)}) {
    CAPTURE(bound.to_string());
    for (const auto& [x, e] : table.entries()) {
      const auto allowance = std::min<std::uint64_t>(bound(x.size()), 4096);
      std::optional<int> expected;
      if (allowance >= 1) {
        auto it = oracle_tables.find(allowance);
        if (it == oracle_tables.end()) {
          it = oracle_tables.emplace(allowance, oracle::brute_force({L, allowance, 64}).table).first;
        }
        if (const KEntry* o = it->second.find(x)) expected = o->k;
      }
      CHECK(kt_lookup(table, x, bound) == expected);
    }
  }
}

TEST_CASE("shortest_program finds deep minima without a full table") {
  const auto t = table_at(24);
  for (std::size_t n = 0; n <= 9; ++n) {
    for (const auto& x : all_strings_of_length(n)) {
      const KEntry* e = t.find(x);
      REQUIRE(e != nullptr);
      const auto s = shortest_program(x, 24, 4096);
      REQUIRE(s.has_value());
      CHECK(*s == *e);
    }
  }
}

TEST_CASE("Kraft sums") {
  auto r4 = kraft_check(4, 10);
  CHECK(r4.total == Rational(1, 16));
  CHECK(r4.count == 1);
  auto r6 = kraft_check(6, 10);
  CHECK(r6.total == Rational(3, 32));
  CHECK(r6.count == 3);
  for (int L : {10, 14, 20}) {
    auto r = kraft_check(L, 4096);
    CHECK(r.total <= 1);
    for (std::size_t len = 0; len < r.count_by_length.size(); ++len) {
      CHECK(BigInt(r.count_by_length[len]) <= pow2(static_cast<unsigned>(len)));
    }
  }
}

TEST_CASE("enumerate rejects out-of-range parameters") {
  CHECK_THROWS_AS(enumerate({3, 10, 64}), std::invalid_argument);
  CHECK_THROWS_AS(enumerate({29, 10, 64}), std::invalid_argument);
  CHECK_THROWS_AS(enumerate({10, 0, 64}), std::invalid_argument);
  CHECK_THROWS_AS(enumerate({10, 10, 65}), std::invalid_argument);
}

TEST_CASE("table file round-trip") {
  const auto t = table_at(16);
  std::stringstream ss;
  write_table(ss, t);
  const auto text = ss.str();
  CHECK(text.starts_with("entrolab-ktable v1 L=16 T=4096 cap=64\n-,4,1,1111\n0,6,2,001111\n"));
  CHECK(read_table(ss) == t);

  const auto path = std::filesystem::temp_directory_path() / "entrolab_table_roundtrip.txt";
  save_table(t, path);
  CHECK(load_table(path) == t);
  std::filesystem::remove(path);
  CHECK(table_file_name(t.params()) == "ktable_L16_T4096_cap64.txt");
}

TEST_CASE("table file errors carry line numbers") {
  auto fails_at = [](const std::string& text, std::size_t line) {
    std::istringstream in(text);
    try {
      read_table(in);
    } catch (const TableFormatError& e) {
      return e.line() == line;
    }
    return false;
  };
  CHECK(fails_at("entrolab-ktable v2 L=6 T=10 cap=64\n", 1));
  CHECK(fails_at("something else\n", 1));
  CHECK(fails_at("entrolab-ktable v1 L=6 T=10 cap=64\n-,4,1,1111\n0,5,2,001111\n", 3));
  CHECK(fails_at("entrolab-ktable v1 L=6 T=10 cap=64\n-,4,1,1111\n1,6,2,001111\n", 3));
  CHECK(fails_at("entrolab-ktable v1 L=6 T=10 cap=64\n0,6,2,001111\n-,4,1,1111\n", 3));
  CHECK(fails_at("entrolab-ktable v1 L=6 T=10 cap=64\n-,4,1\n", 2));
}
