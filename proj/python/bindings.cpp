#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nckey/bounds.hpp"
#include "nckey/cmi_oracle.hpp"
#include "nckey/experiments.hpp"
#include "nckey/key_agreement.hpp"
#include "nckey/session.hpp"
#include "nckey/transcript_json.hpp"

namespace py = pybind11;
using namespace nckey;

namespace {

using Nested = std::vector<std::vector<std::int64_t>>;

MatrixFq from_nested(const Nested& rows, std::uint64_t q) {
  FieldCtx ctx(q);
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  MatrixFq m(ctx, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw ContractViolation("ragged matrix");
    for (std::size_t c = 0; c < cols; ++c) {
      const auto v = rows[r][c] % static_cast<std::int64_t>(q);
      m.set(r, c, static_cast<Scalar>(v < 0 ? v + static_cast<std::int64_t>(q) : v));
    }
  }
  return m;
}

ChannelParams make_params(std::uint64_t q, std::size_t ell, std::size_t n_A, std::vector<std::size_t> n,
                          std::size_t n_E) {
  ChannelParams p;
  p.ctx = FieldCtx(q);
  p.ell = ell;
  p.n_A = n_A;
  p.n = std::move(n);
  p.n_E = n_E;
  p.validate();
  return p;
}

std::string bigint(const BigInt& v) { return v.str(); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Finite-field linear algebra, rate bounds and key agreement over non-coherent broadcast channels";
  py::register_exception<ContractViolation>(m, "ContractViolation", PyExc_ValueError);

  m.def("rank", [](const Nested& a, std::uint64_t q) { return rank(from_nested(a, q)); }, py::arg("matrix"),
        py::arg("q"));
  m.def("rref", [](const Nested& a, std::uint64_t q) {
        auto r = rref(from_nested(a, q));
        return py::make_tuple(r.rref.to_nested(), r.rank, r.pivot_cols);
      }, py::arg("matrix"), py::arg("q"));
  m.def("xi", [](std::size_t n, std::size_t d, std::uint64_t q) { return bigint(xi(n, d, FieldCtx(q))); },
        py::arg("n"), py::arg("d"), py::arg("q"), "Number of ordered bases, as a decimal string.");
  m.def("gaussian_binomial",
        [](std::size_t n, std::size_t k, std::uint64_t q) { return bigint(gaussian_binomial(n, k, FieldCtx(q))); },
        py::arg("n"), py::arg("k"), py::arg("q"));

  m.def("upper_bound", [](std::uint64_t q, std::size_t ell, std::size_t n_A, std::vector<std::size_t> n, std::size_t n_E) {
        return to_string(upper_bound(make_params(q, ell, n_A, std::move(n), n_E)).coefficient);
      }, py::arg("q"), py::arg("ell"), py::arg("n_A"), py::arg("n"), py::arg("n_E"));
  m.def("two_terminal_rate", [](std::uint64_t q, std::size_t ell, std::size_t n_A, std::size_t n_B, std::size_t n_E) {
        return to_string(two_terminal_rate(make_params(q, ell, n_A, {n_B}, n_E)).coefficient);
      }, py::arg("q"), py::arg("ell"), py::arg("n_A"), py::arg("n_B"), py::arg("n_E"));
  m.def("three_terminal_rate", [](std::uint64_t q, std::size_t ell, std::size_t n_A, std::size_t n_B, std::size_t n_E) {
        return to_string(three_terminal_rate(make_params(q, ell, n_A, {n_B, n_B}, n_E)).coefficient);
      }, py::arg("q"), py::arg("ell"), py::arg("n_A"), py::arg("n_B"), py::arg("n_E"),
      "Coefficient of (ell - n_A) log q.");

  m.def("plan_dimensions", [](std::size_t n_A, std::vector<std::size_t> n, std::size_t n_E) {
        const auto plan = plan_dimensions(make_params(2, n_A + 1, n_A, n, n_E));
        py::dict out;
        for (SubsetMask J = 1; J <= full_mask(plan.m); ++J) out[py::str(subset_label(J))] = plan.u[J];
        return out;
      }, py::arg("n_A"), py::arg("n"), py::arg("n_E"), "Planned dim U_J keyed by subset label.");
  m.def("solve_theta_lp", [](std::size_t n_A, std::vector<std::size_t> n, std::size_t n_E) {
        const auto sol = solve_theta_lp(planned_constraints(make_params(2, n_A + 1, n_A, n, n_E)));
        py::dict theta;
        for (SubsetMask J = 1; J <= full_mask(sol.theta.m()); ++J) theta[py::str(subset_label(J))] = to_string(sol.theta.at(J));
        return py::make_tuple(to_string(sol.value), theta);
      }, py::arg("n_A"), py::arg("n"), py::arg("n_E"), "(value, theta) with rationals as strings.");

  m.def("cmi_oracle", [](std::uint64_t q, std::size_t ell, std::size_t n_A, std::size_t n_i, std::size_t n_E) {
        const auto rep = exact_cmi_oracle(CmiInstance{FieldCtx(q), ell, n_A, n_i, n_E});
        py::list entries;
        for (const auto& e : rep.entries) {
          py::dict d;
          d["distribution"] = e.label;
          d["fixed_dimension_uniform"] = e.fixed_dimension_uniform;
          d["nats"] = e.nats;
          d["normalized"] = e.normalized;
          entries.append(d);
        }
        py::dict out;
        out["entries"] = entries;
        out["best_fixed_dimension"] = rep.best_fixed_dimension;
        out["best_overall"] = rep.best_overall;
        out["bound_coefficient"] = to_string(rep.asymptotic_coefficient);
        return out;
      }, py::arg("q"), py::arg("ell"), py::arg("n_A"), py::arg("n_i"), py::arg("n_E"));

  m.def("run_session_json", [](std::uint64_t q, std::size_t ell, std::size_t n_A, std::vector<std::size_t> n,
                               std::size_t n_E, std::size_t slots, std::uint64_t seed, const std::string& theta) {
        const auto p = make_params(q, ell, n_A, std::move(n), n_E);
        const auto alloc = theta.empty() ? solve_theta_lp(planned_constraints(p)).theta : parse_theta(theta, p.m());
        Rng rng(seed);
        return session_to_json(run_session(p, slots, alloc, rng)).dump();
      }, py::arg("q"), py::arg("ell"), py::arg("n_A"), py::arg("n"), py::arg("n_E"), py::arg("slots"),
      py::arg("seed") = 0, py::arg("theta") = "", "Serialized transcript of one seeded session.");
  m.def("replay_terminal_keys", [](const std::string& transcript) {
        std::vector<std::vector<std::vector<Scalar>>> out;
        for (const auto& k : replay_terminal_keys(nlohmann::json::parse(transcript))) out.push_back(k.to_nested());
        return out;
      }, py::arg("transcript"));

  m.def("run_command", [](const std::string& command, const std::string& config_json) {
        return run_command(command, ExperimentConfig::from_json(nlohmann::json::parse(config_json)));
      }, py::arg("command"), py::arg("config_json"), "Runs a CLI subcommand from a JSON config.");
}
