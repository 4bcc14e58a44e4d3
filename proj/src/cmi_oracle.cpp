#include "nckey/cmi_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace nckey {

namespace {

constexpr std::size_t kMaxEll = 4;
constexpr std::uint64_t kMaxQ = 5;

using Key = std::vector<Scalar>;

Key key_of(const Subspace& s) {
  Key k{static_cast<Scalar>(s.dim())};
  k.insert(k.end(), s.basis().entries().begin(), s.basis().entries().end());
  return k;
}

void gate(const CmiInstance& inst) {
  if (inst.ell > kMaxEll || inst.ctx.q() > kMaxQ) {
    BigInt count = 0;
    for (std::size_t d = 0; d <= inst.ell; ++d) count += gaussian_binomial(inst.ell, d, inst.ctx);
    throw InstanceTooLarge("exact CMI enumeration refused: q=" + std::to_string(inst.ctx.q()) +
                           ", ell=" + std::to_string(inst.ell) + " has " + count.str() +
                           " subspaces (limits: ell <= 4, q <= 5)");
  }
  if (inst.n_A > inst.ell) throw ContractViolation("exact CMI: n_A must not exceed ell");
}

}  // namespace

Rational CmiInstance::asymptotic_coefficient() const {
  const auto reach = std::min<std::int64_t>(n_A, n_i + n_E);
  const auto gain = std::max<std::int64_t>(reach - static_cast<std::int64_t>(n_E), 0);
  const auto room = std::max<std::int64_t>(static_cast<std::int64_t>(ell) - reach, 0);
  return Rational(gain * room);
}

InputDistribution uniform_over_dimension(const CmiInstance& inst, std::size_t dim) {
  InputDistribution out{"uniform(dim=" + std::to_string(dim) + ")", {}, true};
  std::vector<Subspace> members;
  for_each_subspace(inst.ell, dim, inst.ctx, [&](const Subspace& s) { members.push_back(s); });
  const Rational w(BigInt(1), BigInt(members.size()));
  for (auto& s : members) out.mass.emplace_back(std::move(s), w);
  return out;
}

InputDistribution symmetrize(const CmiInstance& inst, const InputDistribution& dist) {
  std::map<std::size_t, Rational> per_dim;
  for (const auto& [s, p] : dist.mass) per_dim[s.dim()] += p;
  InputDistribution out{"symmetrized(" + dist.label + ")", {}, per_dim.size() == 1};
  for (const auto& [d, total] : per_dim) {
    auto u = uniform_over_dimension(inst, d);
    for (auto& [s, p] : u.mass) out.mass.emplace_back(std::move(s), p * total);
  }
  return out;
}

std::vector<InputDistribution> standard_input_family(const CmiInstance& inst) {
  gate(inst);
  const std::size_t top = std::min(inst.n_A, inst.ell);
  std::vector<InputDistribution> family;
  std::vector<InputDistribution> uniform;
  for (std::size_t d = 0; d <= top; ++d) uniform.push_back(uniform_over_dimension(inst, d));

  for (const auto& u : uniform) family.push_back(u);
  for (std::size_t d = 0; d <= top; ++d) {
    family.push_back({"point(dim=" + std::to_string(d) + ")", {{uniform[d].mass.front().first, Rational(1)}}});
  }
  for (std::size_t d = 0; d + 1 <= top; ++d) {
    InputDistribution mix{"mix(dim=" + std::to_string(d) + "," + std::to_string(d + 1) + ")", {}};
    for (const auto* u : {&uniform[d], &uniform[d + 1]}) {
      for (const auto& [s, p] : u->mass) mix.mass.emplace_back(s, p / 2);
    }
    family.push_back(std::move(mix));
  }
  {
    InputDistribution all{"uniform(dim<=" + std::to_string(top) + ")", {}};
    std::size_t count = 0;
    for (const auto& u : uniform) count += u.mass.size();
    for (const auto& u : uniform) {
      for (const auto& [s, p] : u.mass) all.mass.emplace_back(s, Rational(BigInt(1), BigInt(count)));
    }
    family.push_back(std::move(all));
  }
  for (std::size_t d = 1; d <= top; ++d) {
    if (uniform[d].mass.size() < 2) continue;
    InputDistribution tilted{"tilted(dim=" + std::to_string(d) + ")", {}};
    for (std::size_t k = 0; k < uniform[d].mass.size(); ++k) {
      Rational p = uniform[d].mass[k].second / 2;
      if (k == 0) p += Rational(1, 2);
      tilted.mass.emplace_back(uniform[d].mass[k].first, p);
    }
    family.push_back(std::move(tilted));
  }
  return family;
}

double exact_cmi(const CmiInstance& inst, const InputDistribution& input) {
  gate(inst);
  const auto& f = inst.ctx;
  const double q = static_cast<double>(f.q());

  std::vector<Subspace> universe = all_subspaces(inst.ell, inst.ell, f);
  std::map<Key, std::size_t> index;
  for (std::size_t k = 0; k < universe.size(); ++k) index.emplace(key_of(universe[k]), k);

  // trans[n][ds][da] = xi(n, ds) q^{-n da}, zero when ds > n.
  auto trans = [&](std::size_t n) {
    std::vector<std::vector<double>> t(inst.ell + 1, std::vector<double>(inst.ell + 1, 0.0));
    for (std::size_t ds = 0; ds <= std::min(n, inst.ell); ++ds)
      for (std::size_t da = ds; da <= inst.ell; ++da)
        t[ds][da] = xi(n, ds, f).convert_to<double>() * std::pow(q, -static_cast<double>(n * da));
    return t;
  };
  const auto t_i = trans(inst.n_i);
  const auto t_e = trans(inst.n_E);

  struct Support {
    double p;
    std::size_t dim;
    std::vector<std::size_t> subs;
  };
  std::map<std::size_t, double> merged;
  for (const auto& [s, p] : input.mass) {
    if (s.ambient_dim() != inst.ell) throw ContractViolation("exact CMI: input subspace has wrong ambient");
    if (s.dim() > inst.n_A) throw ContractViolation("exact CMI: input subspace exceeds n_A");
    merged[index.at(key_of(s))] += to_double(p);
  }
  std::vector<Support> support;
  for (const auto& [a, p] : merged) {
    if (p == 0.0) continue;
    const Subspace& sa = universe[a];
    Support sup{p, sa.dim(), {}};
    for (std::size_t d = 0; d <= sa.dim(); ++d) {
      for_each_subspace(sa.dim(), d, f, [&](const Subspace& c) {
        sup.subs.push_back(index.at(key_of(span_of(mat_mul(c.basis(), sa.basis())))));
      });
    }
    support.push_back(std::move(sup));
  }

  const std::size_t n = universe.size();
  std::vector<double> p_e(n, 0.0);
  std::vector<double> p_ie(n * n, 0.0);
  for (const auto& a : support) {
    for (auto e : a.subs) {
      const double pe = t_e[universe[e].dim()][a.dim];
      if (pe == 0.0) continue;
      p_e[e] += a.p * pe;
      for (auto i : a.subs) {
        const double pi = t_i[universe[i].dim()][a.dim];
        if (pi != 0.0) p_ie[i * n + e] += a.p * pe * pi;
      }
    }
  }
  long double total = 0.0L;
  for (const auto& a : support) {
    for (auto e : a.subs) {
      const double pe = t_e[universe[e].dim()][a.dim];
      if (pe == 0.0) continue;
      for (auto i : a.subs) {
        const double pi = t_i[universe[i].dim()][a.dim];
        if (pi == 0.0) continue;
        const long double ratio = static_cast<long double>(pi) * p_e[e] / p_ie[i * n + e];
        total += static_cast<long double>(a.p * pe * pi) * std::log(ratio);
      }
    }
  }
  return static_cast<double>(std::max<long double>(total, 0.0L));
}

CmiReport exact_cmi_oracle(const CmiInstance& inst) {
  CmiReport report{inst, {}, 0.0, 0.0, inst.asymptotic_coefficient()};
  const double log_q = std::log(static_cast<double>(inst.ctx.q()));
  for (const auto& dist : standard_input_family(inst)) {
    const double nats = exact_cmi(inst, dist);
    CmiEntry e{dist.label, dist.fixed_dimension_uniform, nats, nats / log_q};
    if (e.fixed_dimension_uniform) report.best_fixed_dimension = std::max(report.best_fixed_dimension, e.normalized);
    report.best_overall = std::max(report.best_overall, e.normalized);
    report.entries.push_back(std::move(e));
  }
  return report;
}

}  // namespace nckey
