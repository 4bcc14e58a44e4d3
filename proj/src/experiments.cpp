#include "nckey/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cinttypes>
#include <cstdio>
#include <future>
#include <random>
#include <sstream>
#include <thread>

#include "nckey/key_agreement.hpp"
#include "nckey/transcript_json.hpp"

namespace nckey {

using nlohmann::json;

namespace {

std::int64_t parse_int(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw UsageError("invalid integer '" + s + "' in " + what);
  return v;
}

std::string hex64(std::uint64_t v) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, v);
  return buf;
}

std::string fixed(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string general(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string join_sizes(const std::vector<std::size_t>& v, char sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? std::string(1, sep) : "") + std::to_string(v[i]);
  return out;
}

std::string optional_rational(const std::optional<Rational>& r) { return r ? to_string(*r) : ""; }

ChannelParams checked(ChannelParams p) {
  try {
    p.validate();
  } catch (const UsageError&) {
    throw;
  } catch (const ContractViolation& e) {
    throw UsageError(e.what());
  }
  return p;
}

json envelope(const std::string& command, const ExperimentConfig& cfg) {
  return {{"schema_version", 1},
          {"command", command},
          {"seed", cfg.seed},
          {"config_hash", hex64(cfg.hash())},
          {"config", cfg.to_json()}};
}

std::string csv_header(const std::string& command, const ExperimentConfig& cfg) {
  return "# command=" + command + " seed=" + std::to_string(cfg.seed) + " config_hash=" + hex64(cfg.hash()) +
         "\n";
}

std::string sweep_var(const ExperimentConfig& cfg) { return cfg.sweep ? cfg.sweep->var : "none"; }

}  // namespace

SweepSpec SweepSpec::parse(const std::string& text) {
  const auto a = text.find(':');
  const auto b = a == std::string::npos ? std::string::npos : text.find(':', a + 1);
  if (b == std::string::npos) throw UsageError("sweep must look like var:lo:hi, got '" + text + "'");
  SweepSpec s{text.substr(0, a), parse_int(text.substr(a + 1, b - a - 1), "sweep"),
              parse_int(text.substr(b + 1), "sweep")};
  static const std::vector<std::string> fixed_vars{"q", "ell", "na", "ne", "n"};
  bool known = std::find(fixed_vars.begin(), fixed_vars.end(), s.var) != fixed_vars.end();
  if (!known && s.var.size() > 1 && s.var[0] == 'n') {
    const auto idx = parse_int(s.var.substr(1), "sweep variable");
    known = idx >= 1 && idx <= static_cast<std::int64_t>(kMaxTerminals);
  }
  if (!known) throw UsageError("unknown sweep variable '" + s.var + "' (use q, ell, na, ne, n or n1..n16)");
  if (s.lo < 0 || s.hi < s.lo) throw UsageError("sweep range must satisfy 0 <= lo <= hi");
  return s;
}

std::string SweepSpec::to_string() const { return var + ":" + std::to_string(lo) + ":" + std::to_string(hi); }

json ExperimentConfig::to_json() const {
  return {{"q", q},         {"ell", ell},       {"na", n_A},     {"n", n},
          {"ne", n_E},      {"sweep", sweep ? sweep->to_string() : ""},
          {"slots", slots}, {"trials", trials}, {"seed", seed},  {"format", format},
          {"theta", theta}};
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
  if (!j.is_object()) throw UsageError("config must be a JSON object");
  ExperimentConfig c;
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "q") c.q = v.get<std::uint64_t>();
      else if (key == "ell") c.ell = v.get<std::size_t>();
      else if (key == "na") c.n_A = v.get<std::size_t>();
      else if (key == "n") c.n = v.get<std::vector<std::size_t>>();
      else if (key == "ne") c.n_E = v.get<std::size_t>();
      else if (key == "sweep") {
        const auto s = v.get<std::string>();
        if (!s.empty()) c.sweep = SweepSpec::parse(s);
      } else if (key == "slots") c.slots = v.get<std::size_t>();
      else if (key == "trials") c.trials = v.get<std::size_t>();
      else if (key == "seed") c.seed = v.get<std::uint64_t>();
      else if (key == "format") c.format = v.get<std::string>();
      else if (key == "theta") c.theta = v.get<std::string>();
      else if (key == "out") continue;  // output path belongs to the CLI, not the experiment
      else throw UsageError("unknown config key '" + key + "'");
    }
  } catch (const json::exception& e) {
    throw UsageError(std::string("bad config value: ") + e.what());
  }
  return c;
}

std::uint64_t ExperimentConfig::hash() const {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : to_json().dump()) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

std::vector<SweepPoint> sweep_points(const ExperimentConfig& cfg) {
  if (cfg.format != "csv" && cfg.format != "json") throw UsageError("format must be csv or json");
  auto make = [&](std::uint64_t q, std::size_t ell, std::size_t n_A, std::vector<std::size_t> n, std::size_t n_E) {
    if (q < 2 || q >= (1ull << 31) || !is_prime(q)) throw UsageError("q must be a prime below 2^31, got " + std::to_string(q));
    ChannelParams p;
    p.ctx = FieldCtx(q);
    p.ell = ell;
    p.n_A = n_A;
    p.n = std::move(n);
    p.n_E = n_E;
    return checked(std::move(p));
  };
  if (!cfg.sweep) return {{0, make(cfg.q, cfg.ell, cfg.n_A, cfg.n, cfg.n_E)}};

  const auto& s = *cfg.sweep;
  std::vector<SweepPoint> out;
  for (std::int64_t v = s.lo; v <= s.hi; ++v) {
    const auto u = static_cast<std::size_t>(v);
    std::uint64_t q = cfg.q;
    std::size_t ell = cfg.ell, n_A = cfg.n_A, n_E = cfg.n_E;
    auto n = cfg.n;
    if (s.var == "q") {
      if (v < 2 || !is_prime(static_cast<std::uint64_t>(v))) continue;
      q = static_cast<std::uint64_t>(v);
    } else if (s.var == "ell") {
      ell = u;
    } else if (s.var == "na") {
      n_A = u;
    } else if (s.var == "ne") {
      n_E = u;
    } else if (s.var == "n") {
      std::fill(n.begin(), n.end(), u);
    } else {
      const auto idx = static_cast<std::size_t>(parse_int(s.var.substr(1), "sweep variable"));
      if (idx > n.size()) throw UsageError("sweep variable " + s.var + " names a missing terminal");
      n[idx - 1] = u;
    }
    out.push_back({v, make(q, ell, n_A, std::move(n), n_E)});
  }
  return out;
}

ThetaAllocation parse_theta(const std::string& text, std::size_t m) {
  ThetaAllocation theta(m);
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("theta entries look like 12=1/2, got '" + item + "'");
    SubsetMask J = 0;
    for (char ch : item.substr(0, eq)) {
      const int r = ch - '0';
      if (r < 1 || static_cast<std::size_t>(r) > m) throw UsageError("theta subset '" + item.substr(0, eq) + "' names a terminal outside [1:m]");
      J |= 1u << (r - 1);
    }
    Rational value;
    try {
      value = parse_rational(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw UsageError("invalid rational in theta entry '" + item + "'");
    }
    if (value < 0) throw UsageError("theta entries must be nonnegative");
    theta.set(J, value);
  }
  return theta;
}

BoundsRow bounds_row(const SweepPoint& point) {
  const auto& p = point.params;
  BoundsRow row;
  row.point = point;
  row.upper = upper_bound(p).coefficient;
  const bool symmetric_pair = p.m() == 2 && p.n[0] == p.n[1] && p.n[0] <= p.n_A && p.n_E <= p.n_A;
  if (p.m() == 1) {
    row.lower = two_terminal_rate(p).coefficient;
    row.lower_method = "two_terminal";
  } else if (symmetric_pair) {
    row.lower = three_terminal_rate(p).absolute(p).coefficient;
    row.lower_method = "three_terminal";
  } else {
    if (p.m() > 3) throw UsageError("bounds for m > 3 need the LP, which supports m <= 3");
    const auto lp = solve_theta_lp(planned_constraints(p));
    row.lower = RateExpression{lp.value, Normalization::per_dof}.absolute(p).coefficient;
    row.lower_method = "lp";
  }
  if (p.ell > p.n_A) {
    const Rational dof(static_cast<std::int64_t>(p.ell - p.n_A));
    row.upper_per_dof = row.upper / dof;
    row.lower_per_dof = row.lower / dof;
  }
  for (auto n_i : p.n) row.normalization_mismatch = row.normalization_mismatch || std::min(p.n_A, n_i + p.n_E) != p.n_A;
  return row;
}

std::vector<BoundsRow> cmd_bounds(const ExperimentConfig& cfg) {
  std::vector<BoundsRow> rows;
  for (const auto& pt : sweep_points(cfg)) rows.push_back(bounds_row(pt));
  return rows;
}

std::vector<SimulationSummary> cmd_simulate(const ExperimentConfig& cfg) {
  const auto points = sweep_points(cfg);
  std::vector<SimulationSummary> out;
  for (std::size_t idx = 0; idx < points.size(); ++idx) {
    const auto& p = points[idx].params;
    if (p.m() > 3) throw UsageError("simulate supports m <= 3");
    try {
      p.validate_for_achievability();
    } catch (const ContractViolation& e) {
      throw UsageError(e.what());
    }
    SimulationSummary s;
    s.point = points[idx];
    s.theta = cfg.theta.empty() ? solve_theta_lp(planned_constraints(p)).theta : parse_theta(cfg.theta, p.m());
    {
      Rng probe(cfg.seed);
      auto verdict = check_theta_feasible(s.theta, planned_constraints(p), &probe);
      if (!verdict.feasible) throw InfeasibleAllocation("theta is infeasible: " + verdict.describe(), verdict);
    }
    s.target_coefficient =
        cfg.slots == 0 ? Rational(0) : s.theta.scaled_floor(cfg.slots).min_cut() / Rational(static_cast<std::int64_t>(cfg.slots));

    s.trials.resize(cfg.trials);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t t = next++; t < cfg.trials; t = next++) {
        std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                          static_cast<std::uint32_t>(t), static_cast<std::uint32_t>(t >> 32),
                          static_cast<std::uint32_t>(idx)};
        Rng rng(seq);
        const auto res = run_session(p, cfg.slots, s.theta, rng);
        auto& o = s.trials[t];
        o.trial = t;
        o.degenerate = res.audit.degenerate;
        o.degeneracy_reason = res.audit.degeneracy_reason;
        o.agreement = res.audit.agreement;
        o.leakage_certified = res.audit.leakage_certified;
        o.time_extension_inherited = !res.audit.slotwise_feasible || res.audit.time_extended_feasible;
        o.plan_mismatch_slots = res.audit.plan_mismatch_slots;
        o.key_rows = res.audit.key_rows;
        o.achieved_coefficient = res.audit.achieved_coefficient;
      }
    };
    const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(cfg.trials, std::thread::hardware_concurrency()));
    std::vector<std::thread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    for (const auto& o : s.trials) {
      s.time_extension_violations += o.time_extension_inherited ? 0 : 1;
      if (o.degenerate) {
        ++s.degenerate;
        continue;
      }
      s.agreed += o.agreement;
      s.certified += o.leakage_certified;
      s.at_target += o.achieved_coefficient == s.target_coefficient;
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<OracleRow> cmd_oracle(const ExperimentConfig& cfg) {
  const auto points = sweep_points(cfg);
  std::vector<std::future<OracleRow>> jobs;
  for (const auto& pt : points) {
    if (pt.params.m() != 1) throw UsageError("oracle takes a single receiver: pass --n with one value");
    jobs.push_back(std::async(std::launch::async, [pt] {
      const auto& p = pt.params;
      CmiInstance inst{p.ctx, p.ell, p.n_A, p.n[0], p.n_E};
      return OracleRow{pt, exact_cmi_oracle(inst)};
    }));
  }
  std::vector<OracleRow> out;
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

std::string render_bounds(const ExperimentConfig& cfg, const std::vector<BoundsRow>& rows) {
  if (cfg.format == "json") {
    json doc = envelope("bounds", cfg);
    doc["rows"] = json::array();
    for (const auto& r : rows) {
      doc["rows"].push_back({{"sweep_var", sweep_var(cfg)},
                             {"sweep_value", r.point.value},
                             {"upper_coeff", to_string(r.upper)},
                             {"lower_coeff", to_string(r.lower)},
                             {"ell", r.point.params.ell},
                             {"q", r.point.params.ctx.q()},
                             {"normalization", "absolute"},
                             {"upper_per_dof", optional_rational(r.upper_per_dof)},
                             {"lower_per_dof", optional_rational(r.lower_per_dof)},
                             {"normalization_mismatch", r.normalization_mismatch},
                             {"lower_method", r.lower_method}});
    }
    return doc.dump(2) + "\n";
  }
  std::string out = csv_header("bounds", cfg);
  out += "sweep_var,sweep_value,upper_coeff,lower_coeff,ell,q,normalization,upper_per_dof,lower_per_dof,"
         "normalization_mismatch,lower_method\n";
  for (const auto& r : rows) {
    out += sweep_var(cfg) + "," + std::to_string(r.point.value) + "," + to_string(r.upper) + "," + to_string(r.lower) +
           "," + std::to_string(r.point.params.ell) + "," + std::to_string(r.point.params.ctx.q()) + ",absolute," +
           optional_rational(r.upper_per_dof) + "," + optional_rational(r.lower_per_dof) + "," +
           (r.normalization_mismatch ? "1" : "0") + "," + r.lower_method + "\n";
  }
  return out;
}

std::string render_simulate(const ExperimentConfig& cfg, const std::vector<SimulationSummary>& rows) {
  auto rate = [](std::size_t num, std::size_t den) { return den == 0 ? std::string() : fixed(double(num) / double(den)); };
  if (cfg.format == "json") {
    json doc = envelope("simulate", cfg);
    doc["rows"] = json::array();
    for (const auto& s : rows) {
      json trials = json::array();
      for (const auto& o : s.trials) {
        trials.push_back({{"trial", o.trial},
                          {"degenerate", o.degenerate},
                          {"degeneracy_reason", o.degeneracy_reason},
                          {"agreement", o.agreement},
                          {"leakage_certified", o.leakage_certified},
                          {"time_extension_inherited", o.time_extension_inherited},
                          {"plan_mismatch_slots", o.plan_mismatch_slots},
                          {"key_rows", o.key_rows},
                          {"achieved_coefficient", to_string(o.achieved_coefficient)}});
      }
      const auto non_degenerate = s.trials.size() - s.degenerate;
      doc["rows"].push_back({{"sweep_var", sweep_var(cfg)},
                             {"sweep_value", s.point.value},
                             {"params", {{"q", s.point.params.ctx.q()}, {"ell", s.point.params.ell},
                                         {"n_A", s.point.params.n_A}, {"n", s.point.params.n},
                                         {"n_E", s.point.params.n_E}}},
                             {"theta", theta_to_json(s.theta)},
                             {"target_coefficient", to_string(s.target_coefficient)},
                             {"trials", s.trials.size()},
                             {"degenerate", s.degenerate},
                             {"non_degenerate", non_degenerate},
                             {"agreed", s.agreed},
                             {"certified", s.certified},
                             {"at_target", s.at_target},
                             {"time_extension_violations", s.time_extension_violations},
                             {"per_trial", trials}});
    }
    return doc.dump(2) + "\n";
  }
  std::string out = csv_header("simulate", cfg);
  out += "sweep_var,sweep_value,q,ell,n_A,n,n_E,slots,trials,degenerate,non_degenerate_rate,agreement_rate,"
         "certified_rate,at_target_rate,time_extension_violations,target_coeff\n";
  for (const auto& s : rows) {
    const auto& p = s.point.params;
    const auto non_degenerate = s.trials.size() - s.degenerate;
    out += sweep_var(cfg) + "," + std::to_string(s.point.value) + "," + std::to_string(p.ctx.q()) + "," +
           std::to_string(p.ell) + "," + std::to_string(p.n_A) + "," + join_sizes(p.n, ';') + "," +
           std::to_string(p.n_E) + "," + std::to_string(cfg.slots) + "," + std::to_string(s.trials.size()) + "," +
           std::to_string(s.degenerate) + "," + rate(non_degenerate, s.trials.size()) + "," +
           rate(s.agreed, non_degenerate) + "," + rate(s.certified, non_degenerate) + "," +
           rate(s.at_target, non_degenerate) + "," + std::to_string(s.time_extension_violations) + "," +
           to_string(s.target_coefficient) + "\n";
  }
  return out;
}

std::string render_oracle(const ExperimentConfig& cfg, const std::vector<OracleRow>& rows) {
  if (cfg.format == "json") {
    json doc = envelope("oracle", cfg);
    doc["rows"] = json::array();
    for (const auto& r : rows) {
      json entries = json::array();
      for (const auto& e : r.report.entries) {
        entries.push_back({{"distribution", e.label},
                           {"fixed_dimension_uniform", e.fixed_dimension_uniform},
                           {"cmi_nats", e.nats},
                           {"cmi_normalized", e.normalized}});
      }
      const auto& inst = r.report.instance;
      doc["rows"].push_back({{"sweep_var", sweep_var(cfg)},
                             {"sweep_value", r.point.value},
                             {"q", inst.ctx.q()},
                             {"ell", inst.ell},
                             {"n_A", inst.n_A},
                             {"n_i", inst.n_i},
                             {"n_E", inst.n_E},
                             {"bound_coefficient", to_string(r.report.asymptotic_coefficient)},
                             {"best_fixed_dimension", r.report.best_fixed_dimension},
                             {"best_overall", r.report.best_overall},
                             {"entries", entries}});
    }
    return doc.dump(2) + "\n";
  }
  std::string out = csv_header("oracle", cfg);
  out += "sweep_var,sweep_value,q,ell,n_A,n_i,n_E,distribution,fixed_dimension_uniform,cmi_nats,cmi_normalized,"
         "bound_coeff\n";
  for (const auto& r : rows) {
    const auto& inst = r.report.instance;
    const std::string prefix = sweep_var(cfg) + "," + std::to_string(r.point.value) + "," + std::to_string(inst.ctx.q()) +
                               "," + std::to_string(inst.ell) + "," + std::to_string(inst.n_A) + "," +
                               std::to_string(inst.n_i) + "," + std::to_string(inst.n_E) + ",";
    const std::string bound = to_string(r.report.asymptotic_coefficient);
    for (const auto& e : r.report.entries) {
      out += prefix + e.label + "," + (e.fixed_dimension_uniform ? "1" : "0") + "," + general(e.nats) + "," +
             general(e.normalized) + "," + bound + "\n";
    }
    out += prefix + "best_fixed_dimension,1,," + general(r.report.best_fixed_dimension) + "," + bound + "\n";
    out += prefix + "best_overall,0,," + general(r.report.best_overall) + "," + bound + "\n";
  }
  return out;
}

std::string run_command(const std::string& command, const ExperimentConfig& cfg) {
  if (command == "bounds") return render_bounds(cfg, cmd_bounds(cfg));
  if (command == "simulate") return render_simulate(cfg, cmd_simulate(cfg));
  if (command == "oracle") return render_oracle(cfg, cmd_oracle(cfg));
  throw UsageError("unknown command '" + command + "' (use bounds, simulate or oracle)");
}

}  // namespace nckey
