#include <bit>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "entrolab/distributions.hpp"
#include "entrolab/machine.hpp"

namespace entrolab {

// String lengths are written as gamma(|x| + 1) so the empty string is
// representable; counts and n are always >= 1 and use plain gamma.
namespace {

void put_string(BitString& out, const BitString& x) {
  out.append(gamma_encode(x.size() + 1));
  out.append(x);
}

void put_gamma(BitString& out, std::uint64_t v) { out.append(gamma_encode(v)); }

std::uint64_t to_u64(const BigInt& v, const char* what) {
  if (v < 0 || boost::multiprecision::msb(v) >= 64) {
    throw std::invalid_argument(std::string("encode_distribution: ") + what + " does not fit in 64 bits");
  }
  return v.convert_to<std::uint64_t>();
}

class Reader {
 public:
  explicit Reader(const BitString& bits) : bits_(bits) {}

  bool bit() {
    if (cursor_ >= bits_.size()) throw std::invalid_argument("decode_distribution: truncated");
    return bits_[cursor_++];
  }
  std::uint64_t gamma() {
    auto g = gamma_decode(bits_, cursor_);
    if (!g.ok) throw std::invalid_argument("decode_distribution: truncated gamma code");
    cursor_ = g.next;
    return g.value;
  }
  BitString string() {
    const auto len = gamma() - 1;
    if (len > bits_.size() - cursor_) throw std::invalid_argument("decode_distribution: truncated string");
    auto s = bits_.substr(cursor_, len);
    cursor_ += len;
    return s;
  }
  void expect_end() const {
    if (cursor_ != bits_.size()) throw std::invalid_argument("decode_distribution: trailing bits");
  }

 private:
  const BitString& bits_;
  std::size_t cursor_ = 0;
};

}  // namespace

BitString encode_distribution(const Distribution& p) {
  BitString out;
  const auto& params = p.params();
  switch (p.family()) {
    case Family::kPoint:
      out = BitString("00");
      put_string(out, p.support().front().x);
      return out;
    case Family::kTwoPoint:
      out = BitString("01");
      put_string(out, params.y);
      put_string(out, params.x0);
      put_string(out, params.x1);
      return out;
    case Family::kHalfUniform:
      out = BitString("10");
      put_gamma(out, params.n);
      return out;
    case Family::kMtTruncated:
      if (params.max_len < 1 || params.budget < 1) {
        throw std::invalid_argument("encode_distribution: m^t without table parameters");
      }
      out = BitString("11");
      put_gamma(out, 1);
      put_gamma(out, static_cast<std::uint64_t>(params.max_len));
      put_gamma(out, params.budget);
      return out;
    case Family::kGeneral:
      break;
  }
  if (p.support().size() < 2) {
    throw std::invalid_argument("encode_distribution: a one-atom distribution is a point mass");
  }
  out = BitString("11");
  put_gamma(out, p.support().size());
  for (const auto& a : p.support()) {
    const auto& den = boost::multiprecision::denominator(a.p);
    const auto log_den = boost::multiprecision::msb(den);
    if (den != pow2(static_cast<unsigned>(log_den))) {
      throw std::invalid_argument("encode_distribution: non-dyadic probability " + to_string(a.p));
    }
    put_string(out, a.x);
    put_gamma(out, to_u64(boost::multiprecision::numerator(a.p), "numerator"));
    put_gamma(out, static_cast<std::uint64_t>(log_den));
  }
  return out;
}

DecodedDistribution decode_distribution(const BitString& bits) {
  Reader in(bits);
  const bool h0 = in.bit();
  const bool h1 = in.bit();
  if (!h0 && !h1) {
    auto x0 = in.string();
    in.expect_end();
    return point_mass(x0);
  }
  if (!h0 && h1) {
    auto y = in.string();
    auto x0 = in.string();
    auto x1 = in.string();
    in.expect_end();
    return two_point(y, x0, x1);
  }
  if (h0 && !h1) {
    const auto n = in.gamma();
    in.expect_end();
    if (n > 24) throw std::invalid_argument("decode_distribution: half_uniform n too large");
    return half_uniform(static_cast<unsigned>(n));
  }
  const auto count = in.gamma();
  if (count == 1) {
    MtDescriptor mt;
    mt.max_len = static_cast<int>(in.gamma());
    mt.budget = in.gamma();
    in.expect_end();
    return mt;
  }
  std::vector<Atom> atoms;
  for (std::uint64_t i = 0; i < count; ++i) {
    auto x = in.string();
    const auto num = in.gamma();
    const auto log_den = in.gamma();
    if (log_den > 4096) throw std::invalid_argument("decode_distribution: denominator too large");
    atoms.push_back({std::move(x), Rational(BigInt(num), pow2(static_cast<unsigned>(log_den)))});
  }
  in.expect_end();
  return Distribution::general(std::move(atoms));
}

void write_distribution(std::ostream& out, const Distribution& p) {
  out << "entrolab-dist v1 family=" << to_string(p.family()) << '\n';
  for (const auto& a : p.support()) {
    out << (a.x.empty() ? std::string("-") : a.x.to_string()) << ','
        << boost::multiprecision::numerator(a.p) << ','
        << boost::multiprecision::denominator(a.p) << '\n';
  }
}

Distribution read_distribution(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("distribution file: missing header");
  constexpr std::string_view kPrefix = "entrolab-dist v1 family=";
  if (!line.starts_with(kPrefix)) {
    throw std::invalid_argument("distribution file line 1: bad header '" + line + "'");
  }
  const Family family = parse_family(std::string_view(line).substr(kPrefix.size()));
  std::vector<Atom> atoms;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto c1 = line.find(',');
    const auto c2 = c1 == std::string::npos ? c1 : line.find(',', c1 + 1);
    if (c2 == std::string::npos) {
      throw std::invalid_argument("distribution file line " + std::to_string(lineno) +
                                  ": expected x,numerator,denominator");
    }
    try {
      const auto xs = line.substr(0, c1);
      BitString x = xs == "-" ? BitString() : BitString(xs);
      BigInt num(line.substr(c1 + 1, c2 - c1 - 1).c_str());
      BigInt den(line.substr(c2 + 1).c_str());
      if (den <= 0) throw std::invalid_argument("zero denominator");
      atoms.push_back({std::move(x), Rational(num, den)});
    } catch (const std::exception& e) {
      throw std::invalid_argument("distribution file line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (family == Family::kPoint && atoms.size() == 1) return point_mass(atoms.front().x);
  if (family == Family::kHalfUniform && !atoms.empty()) {
    auto d = half_uniform(static_cast<unsigned>(atoms.front().x.size()));
    if (d.support() != Distribution::general(atoms).support()) {
      throw std::invalid_argument("distribution file: support is not half_uniform");
    }
    return d;
  }
  // Other families keep only their support; their generating parameters are
  // not part of the dump.
  return Distribution::general(std::move(atoms));
}

void save_distribution(const Distribution& p, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_distribution(out, p);
}

Distribution load_distribution(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  return read_distribution(in);
}

}  // namespace entrolab
