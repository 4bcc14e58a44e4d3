#include "nckey/transcript_json.hpp"

#include <map>

namespace nckey {

using nlohmann::json;

namespace {

const char* kind_name(PublicMessage::Kind k) {
  switch (k) {
    case PublicMessage::Kind::transfer_matrix: return "transfer_matrix";
    case PublicMessage::Kind::key_coefficients: return "key_coefficients";
    case PublicMessage::Kind::multicast: return "multicast";
  }
  return "unknown";
}

json observation_to_json(const ReceiverObservation& o) {
  return {{"transfer", matrix_to_json(o.transfer)}, {"received", matrix_to_json(o.received)}};
}

json certificate_to_json(const LeakageCertificate& c) {
  return {{"certified", c.certified}, {"rank_keys", c.rank_keys}, {"rank_eve", c.rank_eve},
          {"rank_joint", c.rank_joint}};
}

}  // namespace

json matrix_to_json(const MatrixFq& m) {
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", m.entries()}};
}

MatrixFq matrix_from_json(const json& j, const FieldCtx& ctx) {
  return MatrixFq(ctx, j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>(),
                  j.at("entries").get<std::vector<Scalar>>());
}

json params_to_json(const ChannelParams& p) {
  return {{"q", p.ctx.q()}, {"ell", p.ell}, {"n_A", p.n_A}, {"n", p.n}, {"n_E", p.n_E}};
}

ChannelParams params_from_json(const json& j) {
  ChannelParams p;
  p.ctx = FieldCtx(j.at("q").get<Scalar>());
  p.ell = j.at("ell").get<std::size_t>();
  p.n_A = j.at("n_A").get<std::size_t>();
  p.n = j.at("n").get<std::vector<std::size_t>>();
  p.n_E = j.at("n_E").get<std::size_t>();
  return p;
}

json theta_to_json(const ThetaAllocation& theta) {
  json out = json::object();
  for (SubsetMask J = 1; J <= full_mask(theta.m()); ++J) out[subset_label(J)] = to_string(theta.at(J));
  return out;
}

json session_to_json(const SessionResult& res) {
  const auto& tr = res.transcript;
  json doc;
  doc["schema_version"] = kTranscriptSchemaVersion;
  doc["params"] = params_to_json(tr.params);
  doc["N"] = tr.slots;
  doc["theta"] = theta_to_json(tr.theta);

  json slots = json::array();
  for (std::size_t t = 0; t < tr.slot_records.size(); ++t) {
    const auto& rec = tr.slot_records[t];
    json receivers = json::array();
    for (const auto& o : rec.observation.receivers) receivers.push_back(observation_to_json(o));
    slots.push_back({{"t", t},
                     {"message", matrix_to_json(rec.message)},
                     {"receivers", receivers},
                     {"eve", observation_to_json(rec.observation.eve)}});
  }
  doc["slots"] = slots;

  json msgs = json::array();
  for (const auto& m : tr.public_messages) {
    json j = {{"kind", kind_name(m.kind)}, {"payload", matrix_to_json(m.payload)}};
    if (m.kind == PublicMessage::Kind::transfer_matrix) j["slot"] = m.slot;
    if (m.kind != PublicMessage::Kind::multicast) j["terminal"] = m.terminal;
    if (m.kind != PublicMessage::Kind::transfer_matrix) j["subset"] = m.subset;
    if (m.encoding) j["encoding"] = matrix_to_json(*m.encoding);
    msgs.push_back(std::move(j));
  }
  doc["public_messages"] = msgs;

  const auto& k = res.keys;
  json subset_keys = json::object();
  for (SubsetMask J = 1; J < k.subset_keys.size(); ++J) {
    if (k.subset_keys[J].rows() > 0) subset_keys[std::to_string(J)] = matrix_to_json(k.subset_keys[J]);
  }
  json terminal_keys = json::array();
  for (const auto& key : k.terminal_keys) terminal_keys.push_back(matrix_to_json(key));
  doc["keys"] = {{"theta_hat", theta_to_json(k.theta_hat)},
                 {"subset_keys", subset_keys},
                 {"alice_key", matrix_to_json(k.alice_key)},
                 {"terminal_keys", terminal_keys}};

  const auto& a = res.audit;
  doc["audit"] = {{"degenerate", a.degenerate},
                  {"degeneracy_reason", a.degeneracy_reason},
                  {"subset_keys_agree", a.subset_keys_agree},
                  {"agreement", a.agreement},
                  {"subset_certificate", certificate_to_json(a.subset_certificate)},
                  {"final_certificate", certificate_to_json(a.final_certificate)},
                  {"leakage_certified", a.leakage_certified},
                  {"slotwise_feasible", a.slotwise_feasible},
                  {"time_extended_feasible", a.time_extended_feasible},
                  {"plan_mismatch_slots", a.plan_mismatch_slots},
                  {"key_rows", a.key_rows},
                  {"achieved_coefficient", to_string(a.achieved_coefficient)},
                  {"extraction_attempts", a.extraction_attempts},
                  {"multicast_attempts", a.multicast_attempts}};
  return doc;
}

std::vector<MatrixFq> replay_terminal_keys(const json& doc) {
  if (doc.at("schema_version").get<int>() != kTranscriptSchemaVersion) {
    throw ContractViolation("replay_terminal_keys: unsupported transcript schema version");
  }
  const ChannelParams params = params_from_json(doc.at("params"));
  const auto& f = params.ctx;
  const std::size_t m = params.m();
  const std::size_t width = params.ell - params.n_A;

  std::map<std::pair<SubsetMask, std::size_t>, MatrixFq> coefficients;
  std::map<SubsetMask, std::pair<MatrixFq, MatrixFq>> multicast;  // payload, encoding
  for (const auto& msg : doc.at("public_messages")) {
    const auto kind = msg.at("kind").get<std::string>();
    if (kind == "key_coefficients") {
      coefficients[{msg.at("subset").get<SubsetMask>(), msg.at("terminal").get<std::size_t>() - 1}] =
          matrix_from_json(msg.at("payload"), f);
    } else if (kind == "multicast") {
      multicast[msg.at("subset").get<SubsetMask>()] = {matrix_from_json(msg.at("payload"), f),
                                                       matrix_from_json(msg.at("encoding"), f)};
    }
  }
  if (multicast.empty() && doc.at("audit").at("degenerate").get<bool>()) return {};
  const std::size_t L = doc.at("audit").at("key_rows").get<std::size_t>();

  std::vector<MatrixFq> keys;
  for (std::size_t r = 0; r < m; ++r) {
    MatrixFq own(f, 0, width);
    for (const auto& slot : doc.at("slots")) {
      own = vstack(own, matrix_from_json(slot.at("receivers").at(r).at("received"), f).col_range(params.n_A, width));
    }
    MatrixFq coded(f, 0, width), encoding(f, 0, L);
    for (const auto& [J, pe] : multicast) {
      if (!contains_terminal(J, r)) continue;
      const MatrixFq subset_key = mat_mul(coefficients.at({J, r}), own);
      coded = vstack(coded, mat_sub(pe.first, subset_key));
      encoding = vstack(encoding, pe.second);
    }
    auto decoder = solve_in_rowspan(MatrixFq::identity(f, L), encoding);
    if (!decoder) throw ContractViolation("replay_terminal_keys: terminal " + std::to_string(r + 1) + " cannot decode");
    keys.push_back(mat_mul(*decoder, coded));
  }
  return keys;
}

}  // namespace nckey
