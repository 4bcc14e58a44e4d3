#pragma once

#include <json.hpp>
#include <vector>

#include "nckey/session.hpp"

namespace nckey {

inline constexpr int kTranscriptSchemaVersion = 1;

/// Matrices serialize as {"rows", "cols", "entries"} with entries row-major.
nlohmann::json matrix_to_json(const MatrixFq& m);
MatrixFq matrix_from_json(const nlohmann::json& j, const FieldCtx& ctx);

nlohmann::json params_to_json(const ChannelParams& params);
ChannelParams params_from_json(const nlohmann::json& j);

/// Theta maps subset labels such as "{1,2}" to rational strings.
nlohmann::json theta_to_json(const ThetaAllocation& theta);

/// Versioned document with top-level fields schema_version, params, N, theta, slots,
/// public_messages, keys and audit.
nlohmann::json session_to_json(const SessionResult& result);

/// Recomputes each terminal's final key from nothing but that terminal's own received
/// packets and the public messages in a serialized transcript. Returns one matrix per
/// terminal; an empty vector for degenerate sessions (no multicast was published).
std::vector<MatrixFq> replay_terminal_keys(const nlohmann::json& transcript);

}  // namespace nckey
