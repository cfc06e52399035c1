#include "entrolab/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "entrolab/acceptance.hpp"
#include "entrolab/experiments.hpp"

namespace entrolab {

namespace {

namespace fs = std::filesystem;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// A distribution spec, or a path to a saved distribution.
Distribution resolve_distribution(const std::string& text) {
  try {
    return parse_distribution_spec(text);
  } catch (const std::invalid_argument&) {
    if (fs::exists(text)) return load_distribution(text);
    throw;
  }
}

// Writes to `path`, or to `fallback` when no path was given.
template <typename Writer>
void write_output(const std::string& path, std::ostream& fallback, Writer&& write) {
  if (path.empty()) {
    write(fallback);
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + path + "'");
  write(f);
  if (!f) throw std::runtime_error("write failed for '" + path + "'");
}

std::vector<int> parse_depths(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw UsageError("bad depth '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw UsageError("--depths needs at least one value");
  return out;
}

struct Options {
  // enumerate, kraft, probe
  int max_len = 20;
  std::uint64_t budget = kDefaultStepBudget;
  std::size_t output_cap = kDefaultOutputCap;
  unsigned threads = 1;
  std::string out;
  // dist
  std::string spec;
  // entropy
  std::string dist;
  std::string measure;
  std::string alpha;
  // verify
  std::string claim;
  std::string table;
  std::string time_bound;
  unsigned n = 0;
  // probe
  std::string kind;
  std::string depths;
  std::string tables;
  // all
  std::string workdir;
};

int cmd_enumerate(const Options& o, std::ostream& out) {
  const auto e = enumerate_programs({o.max_len, o.budget, o.output_cap}, o.threads);
  save_table(e.table, o.out);
  out << "wrote " << e.table.size() << " entries to " << o.out << '\n';
  return kExitOk;
}

int cmd_kraft(const Options& o, std::ostream& out) {
  const auto r = kraft_check(o.max_len, o.budget, o.threads);
  out << "total " << to_string(r.total) << " = " << num(to_double(r.total)) << '\n';
  out << "halting programs " << r.count << '\n';
  for (std::size_t len = 0; len < r.count_by_length.size(); ++len) {
    if (r.count_by_length[len] != 0) out << "  length " << len << ": " << r.count_by_length[len] << '\n';
  }
  return r.total <= 1 ? kExitOk : kExitAssertion;
}

int cmd_dist_build(const Options& o, std::ostream& out) {
  const auto p = parse_distribution_spec(o.spec);
  save_distribution(p, o.out);
  out << "wrote " << describe(p) << " (" << p.support().size() << " atoms) to " << o.out << '\n';
  return kExitOk;
}

int cmd_entropy(const Options& o, std::ostream& out) {
  const auto p = resolve_distribution(o.dist);
  double value = 0;
  if (o.measure == "shannon") {
    value = shannon(p);
  } else if (o.measure == "min") {
    value = min_entropy(p);
  } else {
    if (o.alpha.empty()) throw UsageError("--measure " + o.measure + " needs --alpha");
    const auto a = Alpha::parse(o.alpha);
    value = o.measure == "renyi" ? renyi(p, a) : tsallis(p, a);
  }
  out << num(value) << '\n';
  return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  if (o.table.empty()) throw UsageError("verify needs --table");
  const KTable table = load_table(o.table);
  const auto bound = o.time_bound.empty() ? TimeBound::constant(table.params().budget)
                                          : TimeBound::parse(o.time_bound);
  auto need_dist = [&] {
    if (o.dist.empty()) throw UsageError("verify " + o.claim + " needs --dist");
    return resolve_distribution(o.dist);
  };
  // Claims over the half-uniform family take n from --n or a half-uniform spec.
  auto need_n = [&](unsigned fallback) {
    if (o.n != 0) return o.n;
    if (!o.dist.empty()) {
      const auto p = resolve_distribution(o.dist);
      if (p.family() == Family::kHalfUniform) return p.params().n;
      if (p.family() == Family::kPoint) return static_cast<unsigned>(p.params().x0.size());
    }
    return fallback;
  };

  VerificationReport report;
  if (o.claim == "coding-gap") {
    report = verify_coding_gap(need_dist(), table);
  } else if (o.claim == "tightness") {
    report = verify_tightness(need_n(6), table);
  } else if (o.claim == "corollary") {
    report = verify_corollary(need_n(10), table);
  } else if (o.claim == "gap-growth") {
    report = verify_gap_growth(4, need_n(12), table);
  } else if (o.claim == "domination") {
    report = verify_domination(need_dist(), table, bound);
  } else if (o.claim == "promise") {
    report = verify_promise(need_dist(), table, bound);
  } else {
    throw UsageError("unknown claim '" + o.claim + "'");
  }
  write_output(o.out, out, [&](std::ostream& s) { write_reports_json(s, {report}); });
  return report.status == Verdict::kFail ? kExitAssertion : kExitOk;
}

int cmd_probe(const Options& o, std::ostream& out) {
  const auto kind = parse_probe_kind(o.kind);
  std::optional<double> alpha;
  if (!o.alpha.empty()) {
    const auto a = Alpha::parse(o.alpha);
    if (!a.is_finite_positive()) throw UsageError("--alpha must be a positive number");
    alpha = a.value();
  }
  TableCache cache(o.tables.empty() ? std::nullopt : std::optional<fs::path>(o.tables), o.threads);
  std::vector<const KTable*> tables;
  for (int L : parse_depths(o.depths)) tables.push_back(&cache.get({L, o.budget, o.output_cap}));
  const auto series = probe_divergence(tables, kind, alpha);
  write_output(o.out, out, [&](std::ostream& s) { write_probes_csv(s, {series}); });
  return kExitOk;
}

int cmd_all(const Options& o, std::ostream& out) {
  const fs::path dir = o.workdir;
  fs::create_directories(dir);
  AcceptanceOptions options;
  options.workdir = dir / "tables";
  options.threads = o.threads;
  std::ofstream summary(dir / "acceptance.txt", std::ios::binary);
  const auto run = run_acceptance(options, [&](const CriterionResult& r) {
    out << format_result(r) << std::endl;
    summary << format_result(r) << '\n';
  });
  emit_report(run.reports, run.probes, (dir / "").string());
  std::size_t passed = 0;
  for (const auto& c : run.criteria) passed += c.passed ? 1 : 0;
  out << passed << "/" << run.criteria.size() << " criteria passed; reports in " << dir.string() << '\n';
  return run.all_passed() ? kExitOk : kExitAssertion;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Kolmogorov complexity and entropy laboratory", "entrolab"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);
  Options o;

  auto add_threads = [&](CLI::App* cmd) {
    cmd->add_option("--threads", o.threads, "Enumeration worker threads")->check(CLI::Range(1u, 256u));
  };

  auto* enumerate_cmd = app.add_subcommand("enumerate", "Enumerate programs and write a K table");
  enumerate_cmd->add_option("--max-len", o.max_len, "Longest program length L")
      ->required()
      ->check(CLI::Range(kMinTableLength, kMaxTableLength));
  enumerate_cmd->add_option("--budget", o.budget, "Step budget T")->check(CLI::PositiveNumber);
  enumerate_cmd->add_option("--output-cap", o.output_cap, "Longest output kept")->check(CLI::Range(0, 64));
  enumerate_cmd->add_option("--out", o.out, "Table file")->required();
  add_threads(enumerate_cmd);

  auto* kraft_cmd = app.add_subcommand("kraft", "Sum 2^-|p| over halting programs");
  kraft_cmd->add_option("--max-len", o.max_len, "Longest program length L")
      ->required()
      ->check(CLI::Range(kMinTableLength, kMaxTableLength));
  kraft_cmd->add_option("--budget", o.budget, "Step budget T")->check(CLI::PositiveNumber);
  add_threads(kraft_cmd);

  auto* dist_cmd = app.add_subcommand("dist", "Distribution files");
  dist_cmd->require_subcommand(1);
  auto* build_cmd = dist_cmd->add_subcommand("build", "Write a distribution from a spec");
  build_cmd->add_option("spec", o.spec, "point:BITS | two-point:Y,X0,X1 | half-uniform:N | uniform:N")
      ->required();
  build_cmd->add_option("--out", o.out, "Distribution file")->required();

  auto* entropy_cmd = app.add_subcommand("entropy", "Entropy of a distribution");
  entropy_cmd->add_option("--dist", o.dist, "Distribution file or spec")->required();
  entropy_cmd->add_option("--measure", o.measure, "Entropy measure")
      ->required()
      ->check(CLI::IsMember({"shannon", "renyi", "tsallis", "min"}));
  entropy_cmd->add_option("--alpha", o.alpha, "Order: a number, 0 or inf");

  auto* verify_cmd = app.add_subcommand("verify", "Check one claim and print a JSON report");
  verify_cmd->add_option("claim", o.claim, "Claim")
      ->required()
      ->check(CLI::IsMember({"coding-gap", "tightness", "corollary", "gap-growth", "domination", "promise"}));
  verify_cmd->add_option("--dist", o.dist, "Distribution spec or file");
  verify_cmd->add_option("--table", o.table, "Table file")->required();
  verify_cmd->add_option("--time-bound", o.time_bound, "poly:c,k or const:T");
  verify_cmd->add_option("--n", o.n, "String length for tightness, corollary and gap-growth")
      ->check(CLI::Range(1u, 24u));
  verify_cmd->add_option("--out", o.out, "Report file (default stdout)");

  auto* probe_cmd = app.add_subcommand("probe", "Partial sums of an entropy series over table depths");
  probe_cmd->add_option("--kind", o.kind, "shannon_core | renyi_sum | tsallis_sum | entropy_of_truncation")
      ->required();
  probe_cmd->add_option("--alpha", o.alpha, "Order for renyi_sum and tsallis_sum");
  probe_cmd->add_option("--depths", o.depths, "Comma-separated table lengths")->required();
  probe_cmd->add_option("--tables", o.tables, "Table cache directory");
  probe_cmd->add_option("--budget", o.budget, "Step budget T")->check(CLI::PositiveNumber);
  probe_cmd->add_option("--output-cap", o.output_cap, "Longest output kept")->check(CLI::Range(0, 64));
  probe_cmd->add_option("--out", o.out, "CSV file (default stdout)");
  add_threads(probe_cmd);

  auto* all_cmd = app.add_subcommand("all", "Run the acceptance suite and write its reports");
  all_cmd->add_option("--workdir", o.workdir, "Output and table cache directory")->required();
  add_threads(all_cmd);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*enumerate_cmd) return cmd_enumerate(o, out);
    if (*kraft_cmd) return cmd_kraft(o, out);
    if (*build_cmd) return cmd_dist_build(o, out);
    if (*entropy_cmd) return cmd_entropy(o, out);
    if (*verify_cmd) return cmd_verify(o, out);
    if (*probe_cmd) return cmd_probe(o, out);
    if (*all_cmd) return cmd_all(o, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace entrolab
