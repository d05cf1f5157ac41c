#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "touchvis/data.hpp"
#include "touchvis/error.hpp"

namespace touchvis {

using Millis = std::int64_t;

enum class RawKind { TouchDown, TouchMove, TouchUp, MotionSample, MenuCommand, JoystickToggle, Flush };

constexpr std::string_view to_string(RawKind k) {
  switch (k) {
    case RawKind::TouchDown: return "touchDown";
    case RawKind::TouchMove: return "touchMove";
    case RawKind::TouchUp: return "touchUp";
    case RawKind::MotionSample: return "motionSample";
    case RawKind::MenuCommand: return "menuCommand";
    case RawKind::JoystickToggle: return "joystickToggle";
    case RawKind::Flush: return "flush";
  }
  return "flush";
}

inline std::optional<RawKind> parse_raw_kind(std::string_view s) {
  for (auto k : {RawKind::TouchDown, RawKind::TouchMove, RawKind::TouchUp, RawKind::MotionSample,
                 RawKind::MenuCommand, RawKind::JoystickToggle, RawKind::Flush}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

struct Accel {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double norm() const { return std::sqrt(x * x + y * y + z * z); }
  friend bool operator==(const Accel&, const Accel&) = default;
};

/// One timestamped input record. Only the fields relevant to `kind` are
/// meaningful: pointer/pos for touches, accel for motion, command for menus.
struct RawInputEvent {
  Millis t = 0;
  RawKind kind = RawKind::Flush;
  int pointer = 0;
  Point pos;
  Accel accel;
  std::string command;

  static RawInputEvent down(Millis t, int pointer, Point p) { return {t, RawKind::TouchDown, pointer, p, {}, {}}; }
  static RawInputEvent move(Millis t, int pointer, Point p) { return {t, RawKind::TouchMove, pointer, p, {}, {}}; }
  static RawInputEvent up(Millis t, int pointer, Point p) { return {t, RawKind::TouchUp, pointer, p, {}, {}}; }
  static RawInputEvent motion(Millis t, Accel a) { return {t, RawKind::MotionSample, 0, {}, a, {}}; }
  static RawInputEvent menu(Millis t, std::string cmd) { return {t, RawKind::MenuCommand, 0, {}, {}, std::move(cmd)}; }
  static RawInputEvent joystick(Millis t) { return {t, RawKind::JoystickToggle, 0, {}, {}, {}}; }
  static RawInputEvent flush(Millis t) { return {t, RawKind::Flush, 0, {}, {}, {}}; }

  friend bool operator==(const RawInputEvent&, const RawInputEvent&) = default;
};

/// Recognizer thresholds. Durations in ms, distances in dip, accelerations in m/s^2.
struct GestureConfig {
  Millis tap_max_ms = 300;
  double tap_slop_dip = 10.0;
  Millis double_tap_gap_ms = 300;
  double double_tap_radius_dip = 24.0;
  double swipe_min_velocity_dip_per_s = 800.0;
  Millis swipe_max_duration_ms = 250;
  double swipe_min_distance_dip = 60.0;
  double shake_threshold_mps2 = 20.0;
  int shake_min_samples = 3;
  Millis shake_window_ms = 500;
  Millis shake_debounce_ms = 1000;
  double gravity_alpha = 0.8;
  friend bool operator==(const GestureConfig&, const GestureConfig&) = default;
};

struct Tap {
  Point pos;
  friend bool operator==(const Tap&, const Tap&) = default;
};
struct DoubleTap {
  Point pos;
  friend bool operator==(const DoubleTap&, const DoubleTap&) = default;
};
struct DragStart {
  int pointer = 0;
  Point pos;
  friend bool operator==(const DragStart&, const DragStart&) = default;
};
struct DragMove {
  int pointer = 0;
  Point pos;
  std::vector<Point> path;
  friend bool operator==(const DragMove&, const DragMove&) = default;
};

enum class DragClass { Lasso, Swipe };

constexpr std::string_view to_string(DragClass c) { return c == DragClass::Swipe ? "swipe" : "lasso"; }

struct DragEnd {
  int pointer = 0;
  std::vector<Point> path;
  double mean_velocity = 0.0;  // dip/s
  DragClass classification = DragClass::Lasso;
  friend bool operator==(const DragEnd&, const DragEnd&) = default;
};
struct Shake {
  friend bool operator==(const Shake&, const Shake&) = default;
};
struct MenuCommand {
  std::string command;
  friend bool operator==(const MenuCommand&, const MenuCommand&) = default;
};
struct JoystickToggle {
  friend bool operator==(const JoystickToggle&, const JoystickToggle&) = default;
};

using GestureEvent = std::variant<Tap, DoubleTap, DragStart, DragMove, DragEnd, Shake, MenuCommand, JoystickToggle>;

struct PointerTrack {
  int id = 0;
  Millis down_t = 0;
  Point down_pos;
  Point last_pos;
  double max_displacement = 0.0;
  double path_length = 0.0;
  std::vector<Point> path;
  bool dragging = false;
  bool ignored = false;         // beyond the two tracked pointers
  bool double_tap_candidate = false;
  friend bool operator==(const PointerTrack&, const PointerTrack&) = default;
};

struct PendingTap {
  Point pos;
  Millis deadline = 0;
  friend bool operator==(const PendingTap&, const PendingTap&) = default;
};

struct MotionState {
  Accel gravity;
  std::vector<Millis> hits;  // samples over threshold inside the window
  std::optional<Millis> last_shake;
  friend bool operator==(const MotionState&, const MotionState&) = default;
};

/// Complete recognizer state. Time only advances through event timestamps.
struct RecognizerState {
  GestureConfig config;
  std::optional<Millis> clock;
  std::vector<PointerTrack> pointers;
  std::optional<PendingTap> pending_tap;
  MotionState motion;
  friend bool operator==(const RecognizerState&, const RecognizerState&) = default;
};

struct FeedResult {
  RecognizerState state;
  std::vector<GestureEvent> gestures;
};

inline constexpr std::size_t kMaxTrackedPointers = 2;

namespace detail {

class Recognizer {
 public:
  explicit Recognizer(RecognizerState s) : s_(std::move(s)) {}

  FeedResult run(const RawInputEvent& e) && {
    if (s_.clock && e.t < *s_.clock) {
      throw Error(ErrorCode::ProtocolError, "timestamp regression: " + std::to_string(e.t) + " < " +
                                                std::to_string(*s_.clock));
    }
    s_.clock = e.t;
    expire(e.t);
    switch (e.kind) {
      case RawKind::TouchDown: on_down(e); break;
      case RawKind::TouchMove: on_move(track_for(e), e.pos); break;
      case RawKind::TouchUp: on_up(e); break;
      case RawKind::MotionSample: on_motion(e); break;
      case RawKind::MenuCommand: out_.emplace_back(MenuCommand{e.command}); break;
      case RawKind::JoystickToggle: out_.emplace_back(JoystickToggle{}); break;
      case RawKind::Flush: break;
    }
    return {std::move(s_), std::move(out_)};
  }

 private:
  const GestureConfig& cfg() const { return s_.config; }

  bool candidate_active() const {
    return std::any_of(s_.pointers.begin(), s_.pointers.end(),
                       [](const PointerTrack& p) { return p.double_tap_candidate; });
  }

  void emit_pending() {
    if (!s_.pending_tap) return;
    out_.emplace_back(Tap{s_.pending_tap->pos});
    s_.pending_tap.reset();
    for (auto& p : s_.pointers) p.double_tap_candidate = false;
  }

  void expire(Millis t) {
    if (s_.pending_tap && t >= s_.pending_tap->deadline && !candidate_active()) emit_pending();
  }

  PointerTrack& track_for(const RawInputEvent& e) {
    auto it = std::find_if(s_.pointers.begin(), s_.pointers.end(),
                           [&](const PointerTrack& p) { return p.id == e.pointer; });
    if (it == s_.pointers.end()) {
      throw Error(ErrorCode::ProtocolError, std::string(to_string(e.kind)) + " for pointer " +
                                                std::to_string(e.pointer) + " without a prior touchDown");
    }
    return *it;
  }

  void on_down(const RawInputEvent& e) {
    const bool exists = std::any_of(s_.pointers.begin(), s_.pointers.end(),
                                    [&](const PointerTrack& p) { return p.id == e.pointer; });
    if (exists) throw Error(ErrorCode::ProtocolError, "duplicate touchDown for pointer " + std::to_string(e.pointer));
    PointerTrack track;
    track.id = e.pointer;
    track.down_t = e.t;
    track.down_pos = e.pos;
    track.last_pos = e.pos;
    track.path.push_back(e.pos);
    const auto live = std::count_if(s_.pointers.begin(), s_.pointers.end(),
                                    [](const PointerTrack& p) { return !p.ignored; });
    track.ignored = static_cast<std::size_t>(live) >= kMaxTrackedPointers;
    if (!track.ignored && s_.pending_tap) {
      if (distance(s_.pending_tap->pos, e.pos) <= cfg().double_tap_radius_dip && !candidate_active()) {
        track.double_tap_candidate = true;
      } else {
        emit_pending();
      }
    }
    s_.pointers.push_back(std::move(track));
  }

  void on_move(PointerTrack& track, Point pos) {
    if (track.ignored || pos == track.last_pos) return;
    track.path_length += distance(track.last_pos, pos);
    track.path.push_back(pos);
    track.last_pos = pos;
    track.max_displacement = std::max(track.max_displacement, distance(track.down_pos, pos));
    if (!track.dragging && track.max_displacement > cfg().tap_slop_dip) {
      track.dragging = true;
      if (track.double_tap_candidate) emit_pending();
      out_.emplace_back(DragStart{track.id, track.down_pos});
    }
    if (track.dragging) out_.emplace_back(DragMove{track.id, pos, track.path});
  }

  void on_up(const RawInputEvent& e) {
    auto& track = track_for(e);
    on_move(track, e.pos);
    const PointerTrack done = track;
    s_.pointers.erase(std::find_if(s_.pointers.begin(), s_.pointers.end(),
                                   [&](const PointerTrack& p) { return p.id == e.pointer; }));
    if (done.ignored) return;
    const Millis duration = e.t - done.down_t;
    if (done.dragging) {
      const double seconds = static_cast<double>(std::max<Millis>(duration, 1)) / 1000.0;
      const double velocity = done.path_length / seconds;
      const bool swipe = duration <= cfg().swipe_max_duration_ms && done.path_length >= cfg().swipe_min_distance_dip &&
                         velocity >= cfg().swipe_min_velocity_dip_per_s;
      out_.emplace_back(DragEnd{done.id, done.path, velocity, swipe ? DragClass::Swipe : DragClass::Lasso});
      return;
    }
    const bool tap = duration <= cfg().tap_max_ms && done.max_displacement <= cfg().tap_slop_dip;
    if (done.double_tap_candidate) {
      if (tap) {
        out_.emplace_back(DoubleTap{s_.pending_tap->pos});
        s_.pending_tap.reset();
        return;
      }
      emit_pending();
      return;
    }
    if (!tap) return;
    emit_pending();
    s_.pending_tap = PendingTap{done.down_pos, e.t + cfg().double_tap_gap_ms};
  }

  void on_motion(const RawInputEvent& e) {
    auto& m = s_.motion;
    const double a = cfg().gravity_alpha;
    m.gravity = {a * m.gravity.x + (1 - a) * e.accel.x, a * m.gravity.y + (1 - a) * e.accel.y,
                 a * m.gravity.z + (1 - a) * e.accel.z};
    const Accel linear{e.accel.x - m.gravity.x, e.accel.y - m.gravity.y, e.accel.z - m.gravity.z};
    if (m.last_shake && e.t - *m.last_shake < cfg().shake_debounce_ms) {
      m.hits.clear();
      return;
    }
    if (linear.norm() >= cfg().shake_threshold_mps2) m.hits.push_back(e.t);
    std::erase_if(m.hits, [&](Millis h) { return e.t - h > cfg().shake_window_ms; });
    if (static_cast<int>(m.hits.size()) >= cfg().shake_min_samples) {
      out_.emplace_back(Shake{});
      m.last_shake = e.t;
      m.hits.clear();
    }
  }

  RecognizerState s_;
  std::vector<GestureEvent> out_;
};

}  // namespace detail

/// Pure transition: consumes one raw event and returns the next state with
/// the gestures it completed. Throws ProtocolError (the input state is
/// untouched) on orphan touches, duplicate downs and timestamp regressions.
inline FeedResult feed(RecognizerState state, const RawInputEvent& e) {
  return detail::Recognizer(std::move(state)).run(e);
}

/// Advances the recognizer clock to `t`, releasing any deferred tap whose
/// deadline has passed.
inline FeedResult flush(RecognizerState state, Millis t) { return feed(std::move(state), RawInputEvent::flush(t)); }

}  // namespace touchvis
