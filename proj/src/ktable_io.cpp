#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "entrolab/enumerator.hpp"

namespace entrolab {

namespace {

constexpr std::string_view kMagic = "entrolab-ktable";
constexpr std::string_view kVersion = "v1";

std::string bits_field(const BitString& s) { return s.empty() ? "-" : s.to_string(); }

template <class Int>
Int parse_int(std::string_view text, std::size_t line, std::string_view what) {
  Int value{};
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw TableFormatError(line, "bad " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

BitString parse_bits(std::string_view text, std::size_t line) {
  if (text == "-") return {};
  if (text.empty()) throw TableFormatError(line, "empty bit field (use '-' for the empty string)");
  try {
    return BitString(text);
  } catch (const std::invalid_argument& e) {
    throw TableFormatError(line, e.what());
  }
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) return parts;
    start = pos + 1;
  }
}

}  // namespace

TableFormatError::TableFormatError(std::size_t line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

std::string table_file_name(const TableParams& p) {
  return "ktable_L" + std::to_string(p.max_len) + "_T" + std::to_string(p.budget) + "_cap" +
         std::to_string(p.output_cap) + ".txt";
}

void write_table(std::ostream& out, const KTable& table) {
  const auto& p = table.params();
  out << kMagic << ' ' << kVersion << " L=" << p.max_len << " T=" << p.budget
      << " cap=" << p.output_cap << '\n';
  for (const auto& [x, e] : table.entries()) {
    out << bits_field(x) << ',' << e.k << ',' << e.steps << ',' << bits_field(e.witness) << '\n';
  }
}

KTable read_table(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw TableFormatError(1, "missing header");
  std::istringstream header(line);
  std::string magic, version, lfield, tfield, capfield, extra;
  header >> magic >> version >> lfield >> tfield >> capfield;
  if (magic != kMagic) throw TableFormatError(1, "not a K table (bad magic)");
  if (version != kVersion) throw TableFormatError(1, "unsupported version '" + version + "'");
  if (!lfield.starts_with("L=") || !tfield.starts_with("T=") || !capfield.starts_with("cap=") ||
      (header >> extra)) {
    throw TableFormatError(1, "malformed header");
  }
  TableParams params;
  params.max_len = parse_int<int>(std::string_view(lfield).substr(2), 1, "L");
  params.budget = parse_int<std::uint64_t>(std::string_view(tfield).substr(2), 1, "T");
  params.output_cap = parse_int<std::size_t>(std::string_view(capfield).substr(4), 1, "cap");

  KTable table(params);
  std::size_t lineno = 1;
  const BitString* previous = nullptr;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != 4) throw TableFormatError(lineno, "expected 4 comma-separated fields");
    BitString x = parse_bits(fields[0], lineno);
    KEntry e{parse_int<int>(fields[1], lineno, "k"),
             parse_int<std::uint64_t>(fields[2], lineno, "steps"), parse_bits(fields[3], lineno)};
    if (static_cast<std::size_t>(e.k) != e.witness.size()) {
      throw TableFormatError(lineno, "k does not match witness length");
    }
    if (e.k > params.max_len) throw TableFormatError(lineno, "k exceeds the table length cap");
    if (x.size() > params.output_cap) throw TableFormatError(lineno, "output exceeds the cap");
    const auto run = execute(e.witness, params.budget, params.output_cap);
    if (!run.halted() || run.output != x || run.steps != e.steps) {
      throw TableFormatError(lineno, "witness does not reproduce the entry");
    }
    if (previous != nullptr && !(*previous < x)) {
      throw TableFormatError(lineno, "entries not sorted or duplicated");
    }
    table.offer(x, std::move(e));
    previous = &table.entries().find(x)->first;
  }
  return table;
}

void save_table(const KTable& table, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_table(out, table);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

KTable load_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  return read_table(in);
}

}  // namespace entrolab
