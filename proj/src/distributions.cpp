#include "entrolab/distributions.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace entrolab {

std::string_view to_string(Family family) {
  switch (family) {
    case Family::kPoint: return "point";
    case Family::kTwoPoint: return "two_point";
    case Family::kHalfUniform: return "half_uniform";
    case Family::kMtTruncated: return "mt_truncated";
    case Family::kGeneral: return "general";
  }
  return "general";
}

Family parse_family(std::string_view text) {
  for (auto f : {Family::kPoint, Family::kTwoPoint, Family::kHalfUniform, Family::kMtTruncated,
                 Family::kGeneral}) {
    if (to_string(f) == text) return f;
  }
  throw std::invalid_argument("unknown distribution family '" + std::string(text) + "'");
}

namespace {

void check_and_sort(std::vector<Atom>& atoms) {
  if (atoms.empty()) throw std::invalid_argument("distribution: empty support");
  std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.x < b.x; });
  Rational total = 0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (atoms[i].p <= 0) {
      throw std::invalid_argument("distribution: non-positive probability at '" +
                                  atoms[i].x.to_string() + "'");
    }
    if (i > 0 && atoms[i - 1].x == atoms[i].x) {
      throw std::invalid_argument("distribution: duplicate support point '" +
                                  atoms[i].x.to_string() + "'");
    }
    total += atoms[i].p;
  }
  if (total != 1) throw std::invalid_argument("distribution: probabilities sum to " + to_string(total));
}

}  // namespace

Distribution make_family(Family family, FamilyParams params, std::vector<Atom> atoms) {
  check_and_sort(atoms);
  Distribution d;
  d.support_ = std::move(atoms);
  d.family_ = family;
  d.params_ = std::move(params);
  return d;
}

Distribution Distribution::general(std::vector<Atom> atoms) {
  return make_family(Family::kGeneral, {}, std::move(atoms));
}

Rational Distribution::probability(const BitString& x) const {
  auto it = std::lower_bound(support_.begin(), support_.end(), x,
                             [](const Atom& a, const BitString& v) { return a.x < v; });
  if (it == support_.end() || it->x != x) return 0;
  return it->p;
}

Rational Distribution::max_probability() const {
  Rational best = 0;
  for (const auto& a : support_) best = std::max(best, a.p);
  return best;
}

Distribution point_mass(const BitString& x0) {
  FamilyParams params;
  params.x0 = x0;
  return make_family(Family::kPoint, std::move(params), {{x0, 1}});
}

Distribution two_point(const BitString& y, const BitString& x0, const BitString& x1) {
  if (y.empty()) throw std::invalid_argument("two_point: y must be nonempty");
  if (y.size() > 64) throw std::invalid_argument("two_point: y longer than 64 bits");
  if (y.all(false)) throw std::invalid_argument("two_point: y is all zeros (probability 0)");
  if (x0 == x1) throw std::invalid_argument("two_point: x0 and x1 must differ");
  const Rational p0 = dyadic(y.to_word(), static_cast<unsigned>(y.size()));
  FamilyParams params;
  params.y = y;
  params.x0 = x0;
  params.x1 = x1;
  return make_family(Family::kTwoPoint, std::move(params), {{x0, p0}, {x1, 1 - p0}});
}

Distribution half_uniform(unsigned n) {
  if (n < 2) throw std::invalid_argument("half_uniform: n must be >= 2");
  if (n > 24) throw std::invalid_argument("half_uniform: n too large for explicit support");
  std::vector<Atom> atoms;
  atoms.reserve((std::size_t{1} << (n - 1)) + 1);
  atoms.push_back({BitString::repeat(n, false), Rational(1, 2)});
  const Rational tail = dyadic(1, n);
  for (std::uint64_t w = 0; w < (std::uint64_t{1} << (n - 1)); ++w) {
    atoms.push_back({BitString::from_word(w | (std::uint64_t{1} << (n - 1)), n), tail});
  }
  FamilyParams params;
  params.n = n;
  return make_family(Family::kHalfUniform, std::move(params), std::move(atoms));
}

Distribution mt_truncated(const KTable& table, const TimeBound& t) {
  const auto max_len = static_cast<unsigned>(table.params().max_len);
  // Work in units of 2^-L so every weight is an integer.
  std::vector<std::pair<BitString, BigInt>> weights;
  BigInt total = 0;
  for (const auto& [x, e] : table.entries()) {
    const auto k = kt_lookup(table, x, t);
    if (!k) continue;
    BigInt w = pow2(max_len - static_cast<unsigned>(*k));
    total += w;
    weights.emplace_back(x, std::move(w));
  }
  if (weights.empty()) throw std::invalid_argument("mt_truncated: no table entry satisfies the time bound");
  std::vector<Atom> atoms;
  atoms.reserve(weights.size());
  for (auto& [x, w] : weights) atoms.push_back({x, Rational(w, total)});
  FamilyParams params;
  params.max_len = table.params().max_len;
  params.budget = table.params().budget;
  params.bound = t;
  params.normalizer = Rational(pow2(max_len), total);
  return make_family(Family::kMtTruncated, std::move(params), std::move(atoms));
}

Distribution uniform_over_length(unsigned n) {
  if (n > 24) throw std::invalid_argument("uniform_over_length: n too large");
  std::vector<Atom> atoms;
  const Rational p = dyadic(1, n);
  for (auto& x : all_strings_of_length(n)) atoms.push_back({std::move(x), p});
  return make_family(Family::kGeneral, {}, std::move(atoms));
}

Rational cumulative(const Distribution& p, const BitString& x) {
  Rational sum = 0;
  for (const auto& a : p.support()) {
    if (x < a.x) break;
    sum += a.p;
  }
  return sum;
}

BitString max_complexity_string(const KTable& table, unsigned n) {
  if (n >= 32) throw std::invalid_argument("max_complexity_string: n too large");
  const auto entries = entries_of_length(table, n);
  if (entries.size() != (std::size_t{1} << n)) {
    throw std::invalid_argument("max_complexity_string: table (L=" +
                                std::to_string(table.params().max_len) + ") covers only " +
                                std::to_string(entries.size()) + " of the " +
                                std::to_string(std::size_t{1} << n) + " strings of length " +
                                std::to_string(n));
  }
  // Entries come in lexicographic order, so strict > keeps the smallest on ties.
  const auto* best = &entries.front();
  for (const auto& e : entries) {
    if (e.second.k > best->second.k) best = &e;
  }
  return best->first;
}

namespace {

unsigned parse_unsigned(std::string_view text, std::string_view what) {
  unsigned value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw std::invalid_argument("bad " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

BitString parse_bits_arg(std::string_view text) {
  if (text == "-") return {};
  return BitString(text);
}

}  // namespace

Distribution parse_distribution_spec(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) {
    throw std::invalid_argument("distribution spec must look like FAMILY:PARAMS, got '" +
                                std::string(spec) + "'");
  }
  const auto name = spec.substr(0, colon);
  const auto args = spec.substr(colon + 1);
  if (name == "point") return point_mass(parse_bits_arg(args));
  if (name == "half-uniform") return half_uniform(parse_unsigned(args, "n"));
  if (name == "uniform") return uniform_over_length(parse_unsigned(args, "n"));
  if (name == "two-point") {
    const auto c1 = args.find(',');
    const auto c2 = c1 == std::string_view::npos ? c1 : args.find(',', c1 + 1);
    if (c2 == std::string_view::npos) throw std::invalid_argument("two-point needs Y,X0,X1");
    return two_point(parse_bits_arg(args.substr(0, c1)),
                     parse_bits_arg(args.substr(c1 + 1, c2 - c1 - 1)),
                     parse_bits_arg(args.substr(c2 + 1)));
  }
  throw std::invalid_argument("unknown distribution family '" + std::string(name) + "'");
}

}  // namespace entrolab
