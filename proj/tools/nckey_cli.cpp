#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "nckey/experiments.hpp"

namespace {

struct Flags {
  std::uint64_t q = 0;
  std::size_t ell = 0, na = 0, ne = 0, slots = 0, trials = 0;
  std::vector<std::size_t> n;
  std::string sweep, format, out, config, theta;
  std::uint64_t seed = 0;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--q", f.q, "field size (prime)");
  cmd->add_option("--ell", f.ell, "packet length");
  cmd->add_option("--na", f.na, "packets Alice injects per slot");
  cmd->add_option("--n", f.n, "packets received per legitimate terminal")->delimiter(',');
  cmd->add_option("--ne", f.ne, "packets Eve receives per slot");
  cmd->add_option("--sweep", f.sweep, "var:lo:hi with var in q, ell, na, ne, n, n1..n16");
  cmd->add_option("--seed", f.seed, "RNG seed");
  cmd->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", f.out, "output file (stdout when absent)");
  cmd->add_option("--config", f.config, "JSON config; flags given on the command line win");
}

nckey::ExperimentConfig resolve(CLI::App* cmd, const Flags& f, std::string& out_path) {
  nckey::ExperimentConfig cfg;
  if (!f.config.empty()) {
    std::ifstream in(f.config);
    if (!in) throw nckey::UsageError("cannot open config file " + f.config);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw nckey::UsageError(std::string("config is not valid JSON: ") + e.what());
    }
    cfg = nckey::ExperimentConfig::from_json(j);
    if (j.contains("out")) out_path = j["out"].get<std::string>();
  }
  auto given = [&](const char* name) { return cmd->get_option_no_throw(name) && cmd->count(name) > 0; };
  if (given("--q")) cfg.q = f.q;
  if (given("--ell")) cfg.ell = f.ell;
  if (given("--na")) cfg.n_A = f.na;
  if (given("--n")) cfg.n = f.n;
  if (given("--ne")) cfg.n_E = f.ne;
  if (given("--sweep")) cfg.sweep = nckey::SweepSpec::parse(f.sweep);
  if (given("--seed")) cfg.seed = f.seed;
  if (given("--format")) cfg.format = f.format;
  if (given("--slots")) cfg.slots = f.slots;
  if (given("--trials")) cfg.trials = f.trials;
  if (given("--theta")) cfg.theta = f.theta;
  if (given("--out")) out_path = f.out;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Secret key agreement over non-coherent network coding broadcast channels"};
  app.require_subcommand(1);
  Flags flags;

  auto* bounds = app.add_subcommand("bounds", "upper bound and achievable rate per sweep point");
  add_common(bounds, flags);
  auto* simulate = app.add_subcommand("simulate", "run seeded key-agreement sessions");
  add_common(simulate, flags);
  simulate->add_option("--slots", flags.slots, "channel uses per session (N)");
  simulate->add_option("--trials", flags.trials, "number of sessions");
  simulate->add_option("--theta", flags.theta, "allocation such as 1=1,2=1,12=2 (default: LP optimum)");
  auto* oracle = app.add_subcommand("oracle", "exact conditional mutual information on a tiny channel");
  add_common(oracle, flags);

  CLI11_PARSE(app, argc, argv);

  CLI::App* cmd = app.get_subcommands().front();
  try {
    std::string out_path;
    const auto cfg = resolve(cmd, flags, out_path);
    const std::string text = nckey::run_command(cmd->get_name(), cfg);
    if (out_path.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(out_path, std::ios::binary);
      if (!out) throw nckey::UsageError("cannot write " + out_path);
      out << text;
    }
  } catch (const nckey::ContractViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
