#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "entrolab/bitstring.hpp"
#include "entrolab/enumerator.hpp"
#include "entrolab/rational.hpp"
#include "entrolab/time_bound.hpp"

namespace entrolab {

enum class Family : std::uint8_t { kPoint, kTwoPoint, kHalfUniform, kMtTruncated, kGeneral };

std::string_view to_string(Family family);
Family parse_family(std::string_view text);

struct Atom {
  BitString x;
  Rational p;

  bool operator==(const Atom&) const = default;
};

// Parameters that regenerate a family member. Which fields are meaningful
// depends on the family.
struct FamilyParams {
  BitString x0, x1, y;              // point: x0; two_point: y, x0, x1
  unsigned n = 0;                   // half_uniform
  int max_len = 0;                  // mt_truncated: table L
  std::uint64_t budget = 0;         // mt_truncated: table T
  std::optional<TimeBound> bound;   // mt_truncated: filter t
  Rational normalizer;              // mt_truncated: c

  bool operator==(const FamilyParams&) const = default;
};

// Finite-support distribution with exact rational probabilities. The support
// is sorted by (length, lexicographic), atoms are strictly positive and the
// total is exactly 1.
class Distribution {
 public:
  // Validates and sorts; throws std::invalid_argument on bad input.
  static Distribution general(std::vector<Atom> atoms);

  const std::vector<Atom>& support() const { return support_; }
  Family family() const { return family_; }
  const FamilyParams& params() const { return params_; }

  Rational probability(const BitString& x) const;
  Rational max_probability() const;

  bool operator==(const Distribution&) const = default;

 private:
  friend Distribution make_family(Family, FamilyParams, std::vector<Atom>);
  std::vector<Atom> support_;
  Family family_ = Family::kGeneral;
  FamilyParams params_;
};

Distribution point_mass(const BitString& x0);
Distribution two_point(const BitString& y, const BitString& x0, const BitString& x1);
Distribution half_uniform(unsigned n);
// m^t over the table's outputs: weights 2^-K^t(x) (outputs with no program
// inside t are dropped), scaled by c = 1 / Σ weights.
Distribution mt_truncated(const KTable& table, const TimeBound& t);
Distribution uniform_over_length(unsigned n);

// Σ_{z <= x} P(z) in (length, lexicographic) order.
Rational cumulative(const Distribution& p, const BitString& x);

// Encoding: two header bits (00 point, 01 two_point, 10 half_uniform,
// 11 general) followed by gamma-coded parameters. A truncated m^t is encoded
// by the parameters of its table as 11 gamma(1) gamma(L) gamma(T); general
// distributions therefore need at least two atoms.
BitString encode_distribution(const Distribution& p);

struct MtDescriptor {
  int max_len = 0;
  std::uint64_t budget = 0;
  bool operator==(const MtDescriptor&) const = default;
};
using DecodedDistribution = std::variant<Distribution, MtDescriptor>;
DecodedDistribution decode_distribution(const BitString& bits);

// The length-n output with the largest stored k, lexicographically smallest
// on ties. Throws if the table does not hold every string of length n.
BitString max_complexity_string(const KTable& table, unsigned n);

// Parses "point:BITS", "two-point:Y,X0,X1", "half-uniform:N" and
// "uniform:N". Bits use '-' for the empty string.
Distribution parse_distribution_spec(std::string_view spec);

// "entrolab-dist v1 family=<tag>" then "<x>,<numerator>,<denominator>".
void write_distribution(std::ostream& out, const Distribution& p);
Distribution read_distribution(std::istream& in);
void save_distribution(const Distribution& p, const std::filesystem::path& path);
Distribution load_distribution(const std::filesystem::path& path);

}  // namespace entrolab
