#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "touchvis/engine.hpp"
#include "touchvis/io.hpp"

namespace touchvis {

enum class SnapshotPolicy { EachEvent, EachChange, Final };

inline std::optional<SnapshotPolicy> parse_snapshot_policy(std::string_view s) {
  if (s == "event") return SnapshotPolicy::EachEvent;
  if (s == "change") return SnapshotPolicy::EachChange;
  if (s == "final") return SnapshotPolicy::Final;
  return std::nullopt;
}

struct IndexedUpdate {
  long event_index = 0;
  ViewUpdate update;
};

struct ReplayFailure {
  long event_index = 0;
  std::string message;
};

struct ReplayResult {
  io::SnapshotLog log;
  std::vector<IndexedUpdate> updates;
  std::optional<ReplayFailure> failure;  // set when a protocol error halted the replay
};

inline bool is_protocol_error(const ViewUpdate& u) {
  return u.kind == UpdateKind::Error && u.payload.value("code", "") == to_string(ErrorCode::ProtocolError);
}

/// Feeds `events` to a fresh engine in order and records snapshots per
/// `policy`. Event/change policies start with the initial state at index -1.
inline ReplayResult replay(const ChartSpec& spec, const Dataset& data, const EngineConfig& config,
                           const std::vector<RawInputEvent>& events, SnapshotPolicy policy) {
  ReplayResult result;
  EngineState st = make_engine(spec, data, config);
  std::string last = snapshot(st);
  if (policy != SnapshotPolicy::Final) result.log.push_back({-1, last});
  long index = -1;
  for (const auto& e : events) {
    ++index;
    auto step = process_raw(std::move(st), e);
    st = std::move(step.state);
    for (auto& u : step.updates) {
      if (is_protocol_error(u)) {
        result.failure = ReplayFailure{index, u.payload.value("message", "")};
      }
      result.updates.push_back({index, std::move(u)});
    }
    if (result.failure) break;
    std::string snap = snapshot(st);
    if (policy == SnapshotPolicy::EachEvent || (policy == SnapshotPolicy::EachChange && snap != last)) {
      result.log.push_back({index, snap});
    }
    last = std::move(snap);
  }
  if (policy == SnapshotPolicy::Final) {
    result.log.push_back({result.failure ? result.failure->event_index - 1 : index, last});
  }
  return result;
}

inline ReplayResult replay(const ChartSpec& spec, const Dataset& data, EngineConfig config, const io::InputTrace& trace,
                           SnapshotPolicy policy) {
  return replay(spec, data, io::apply_overrides(std::move(config), trace.header.config_overrides), trace.events, policy);
}

}  // namespace touchvis
