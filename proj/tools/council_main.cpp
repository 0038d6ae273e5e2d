#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "council/audit.hpp"
#include "council/council_form.hpp"
#include "council/election.hpp"
#include "council/errors.hpp"
#include "council/scenario.hpp"
#include "council/shamir.hpp"
#include "council/simulator.hpp"
#include "council/state_dump.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kInputError = 2;

std::string join(const council::NodeSet& s) {
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (auto u : s) {
    out << (first ? "" : ",") << u;
    first = false;
  }
  out << '}';
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw council::Error(council::Errc::parse_error, "cannot open " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

council::Scenario load(const std::string& path, std::optional<std::uint64_t> seed,
                       std::optional<std::uint64_t> prime) {
  auto s = council::load_scenario(path);
  if (seed) s.seed = *seed;
  if (prime) s.field_prime = *prime;
  council::validate(s);
  return s;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw council::Error(council::Errc::validation_error, "cannot write " + path);
  out << text;
}

int cmd_form(const council::Scenario& s, const std::string& out_path) {
  const auto t = council::initial_topology(s);
  const auto phase1 = council::run_phase1(t);
  const auto partition = council::cluster_form(t, phase1.dominating);

  std::ostringstream out;
  out << "phase1 heads " << join(phase1.roles.heads()) << " gateways "
      << join(phase1.roles.gateways()) << " dominating " << join(phase1.dominating.as_set())
      << '\n';
  for (const auto& c : partition.clusters) {
    out << "cluster " << c.id() << " council " << join(c.council.heads) << " members "
        << join(c.members) << " gateways " << join(c.gateways) << " n " << c.n() << " k " << c.k
        << '\n';
  }
  const auto violations = council::verify_partition(t, partition);
  for (const auto& v : violations) out << "violation " << council::to_string(v) << '\n';
  write_text(out_path, out.str());
  return violations.empty() ? kOk : kViolation;
}

int cmd_simulate(const council::Scenario& s, const std::string& out_path,
                 const std::string& dump_path, const std::string& log_path) {
  auto state = council::initialize(s);
  while (state.round < s.rounds && !state.report.halted) state = council::step(std::move(state));
  const auto& report = state.report;

  write_text(out_path, report.to_csv());
  if (!dump_path.empty()) write_text(dump_path, council::dump_state(state));
  if (!log_path.empty()) write_text(log_path, report.decisions_csv());
  if (report.halted) std::cerr << "halted: " << report.halt_reason << '\n';
  if (report.anomaly) std::cerr << "secrecy anomaly: sub-threshold holdings were not hidden\n";
  return council::exit_status(report);
}

int cmd_audit(const std::string& state_path) {
  const auto input = council::audit_input_from_dump(read_file(state_path));
  const auto result = council::audit_holdings(input);
  std::cout << "cluster_id,compromised_head_count,k,breached,consistent_secrets\n";
  for (const auto& c : result.clusters) {
    std::cout << c.cluster_id << ',' << c.compromised_head_count << ',' << c.k << ','
              << (c.breached ? 1 : 0) << ','
              << (c.consistent_secrets ? std::to_string(*c.consistent_secrets) : "") << '\n';
  }
  return result.any_anomaly() ? kViolation : kOk;
}

int cmd_split(std::uint64_t secret, std::size_t n, std::optional<std::size_t> k,
              std::vector<std::uint64_t> xs, std::uint64_t prime, std::uint64_t seed) {
  const council::PrimeField field(prime);
  council::ThresholdPolicy policy = council::choose_threshold(n);
  if (k) policy.k = *k;
  if (policy.k < 1 || policy.k > n) {
    throw council::Error(council::Errc::invalid_council_size, "need 1 <= k <= n");
  }
  if (xs.empty()) {
    for (std::size_t i = 1; i <= n; ++i) xs.push_back(i);
  }
  if (xs.size() != n) {
    throw council::Error(council::Errc::validation_error, "--xs must list exactly n abscissae");
  }
  if (secret >= prime) {
    throw council::Error(council::Errc::invalid_field, "secret must be below the prime");
  }
  for (const auto& share : council::split_secret(secret, policy, xs, field, seed)) {
    std::cout << council::to_string(share) << '\n';
  }
  return kOk;
}

int cmd_reconstruct(std::vector<std::string> texts) {
  if (texts.empty()) {
    std::string line;
    while (std::getline(std::cin, line)) {
      if (line.find_first_not_of(" \t\r") != std::string::npos) texts.push_back(line);
    }
  }
  std::vector<council::Share> shares;
  for (const auto& t : texts) shares.push_back(council::parse_share(t));
  if (shares.empty()) {
    throw council::Error(council::Errc::insufficient_shares, "no shares given");
  }
  const council::PrimeField field(shares.front().p);
  std::cout << council::reconstruct(shares, shares.front().k, field) << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"COUNCIL clustering and threshold-sharing simulator"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_path;
  std::string dump_path;
  std::string log_path;
  std::string state_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> prime;

  auto* form = app.add_subcommand("form", "Run both clustering phases once and print the partition");
  form->add_option("--scenario", scenario_path, "Scenario JSON")->required();
  form->add_option("--out", out_path, "Output file (default stdout)");

  auto* simulate = app.add_subcommand("simulate", "Run a scenario and write per-round metrics CSV");
  simulate->add_option("--scenario", scenario_path, "Scenario JSON")->required();
  simulate->add_option("--out", out_path, "Metrics CSV (default stdout)");
  simulate->add_option("--seed", seed, "Override the scenario seed");
  simulate->add_option("--prime", prime, "Override the field prime");
  simulate->add_option("--dump", dump_path, "Write the final state as JSON");
  simulate->add_option("--log", log_path, "Write the maintenance decision log as CSV");

  auto* audit = app.add_subcommand("audit", "Check adversary holdings in a state dump");
  audit->add_option("--state", state_path, "State dump JSON")->required();

  auto* shares = app.add_subcommand("shares", "Field-level secret sharing utilities");
  shares->require_subcommand(1);
  std::uint64_t secret = 0;
  std::size_t n = 1;
  std::optional<std::size_t> k;
  std::vector<std::uint64_t> xs;
  std::uint64_t split_prime = council::PrimeField::kMersenne61;
  std::uint64_t split_seed = 0;
  auto* split = shares->add_subcommand("split", "Split a secret into (x, y, k, epoch, p) shares");
  split->add_option("--secret", secret, "Secret field element")->required();
  split->add_option("--n", n, "Number of shares")->required();
  split->add_option("--k", k, "Threshold (default: majority of n)");
  split->add_option("--xs", xs, "Share abscissae (default 1..n)")->delimiter(',');
  split->add_option("--prime", split_prime, "Field prime");
  split->add_option("--seed", split_seed, "RNG seed for the coefficients");
  std::vector<std::string> share_texts;
  auto* rebuild = shares->add_subcommand("reconstruct", "Recover the secret from shares");
  rebuild->add_option("share", share_texts, "Shares as \"(x, y, k, epoch, p)\" (default stdin)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*form) return cmd_form(load(scenario_path, std::nullopt, std::nullopt), out_path);
    if (*simulate) return cmd_simulate(load(scenario_path, seed, prime), out_path, dump_path, log_path);
    if (*audit) return cmd_audit(state_path);
    if (*split) return cmd_split(secret, n, k, xs, split_prime, split_seed);
    if (*rebuild) return cmd_reconstruct(share_texts);
  } catch (const council::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}
