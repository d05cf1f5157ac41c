#pragma once

#include <charconv>
#include <cstddef>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <string_view>

#include "touchvis/error.hpp"
#include "touchvis/gesture.hpp"
#include "touchvis/history.hpp"
#include "touchvis/scene.hpp"

namespace touchvis {

struct EngineConfig {
  GestureConfig gesture;
  LayoutConfig layout;
  double thumb_range_fraction = 0.4;
  int target_bins = 10;
  std::size_t history_cap = kDefaultHistoryCap;
  friend bool operator==(const EngineConfig&, const EngineConfig&) = default;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline double parse_config_number(std::string_view key, std::string_view text) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw Error(ErrorCode::ConfigError, "'" + std::string(key) + "' expects a number, got '" + std::string(text) + "'");
  }
  return v;
}

}  // namespace detail

/// Sets one configuration key (the names used in config files and trace
/// headers). Throws ConfigError on unknown keys or out-of-range values.
inline void apply_setting(EngineConfig& cfg, std::string_view key, std::string_view text) {
  const double v = detail::parse_config_number(key, text);
  auto positive = [&] {
    if (!(v > 0.0)) throw Error(ErrorCode::ConfigError, "'" + std::string(key) + "' must be positive");
    return v;
  };
  auto integral = [&] {
    positive();
    if (v != static_cast<double>(static_cast<long long>(v))) {
      throw Error(ErrorCode::ConfigError, "'" + std::string(key) + "' must be an integer");
    }
    return static_cast<long long>(v);
  };
  GestureConfig& g = cfg.gesture;
  if (key == "tapMaxMs") g.tap_max_ms = integral();
  else if (key == "tapSlopDip") g.tap_slop_dip = positive();
  else if (key == "doubleTapGapMs") g.double_tap_gap_ms = integral();
  else if (key == "doubleTapRadiusDip") g.double_tap_radius_dip = positive();
  else if (key == "swipeMinVelocityDipPerS") g.swipe_min_velocity_dip_per_s = positive();
  else if (key == "swipeMaxDurationMs") g.swipe_max_duration_ms = integral();
  else if (key == "swipeMinDistanceDip") g.swipe_min_distance_dip = positive();
  else if (key == "shakeThresholdMps2") g.shake_threshold_mps2 = positive();
  else if (key == "shakeMinSamples") g.shake_min_samples = static_cast<int>(integral());
  else if (key == "shakeWindowMs") g.shake_window_ms = integral();
  else if (key == "shakeDebounceMs") g.shake_debounce_ms = integral();
  else if (key == "gravityAlpha") {
    if (!(v > 0.0 && v < 1.0)) throw Error(ErrorCode::ConfigError, "'gravityAlpha' must lie in (0, 1)");
    g.gravity_alpha = v;
  } else if (key == "fatFingerToleranceDip") cfg.layout.fat_finger_tolerance = positive();
  else if (key == "axisBandDip") cfg.layout.axis_band = positive();
  else if (key == "thumbRangeFraction") {
    if (!(v > 0.0 && v <= 1.0)) throw Error(ErrorCode::ConfigError, "'thumbRangeFraction' must lie in (0, 1]");
    cfg.thumb_range_fraction = v;
  } else if (key == "targetBins") cfg.target_bins = static_cast<int>(integral());
  else if (key == "historyCap") cfg.history_cap = static_cast<std::size_t>(integral());
  else throw Error(ErrorCode::ConfigError, "unknown key '" + std::string(key) + "'");
}

/// `key = value` lines; blank lines and `#` comments are skipped.
inline EngineConfig parse_config(std::string_view text, EngineConfig cfg = {}) {
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view sv = line;
    if (auto hash = sv.find('#'); hash != std::string_view::npos) sv = sv.substr(0, hash);
    sv = detail::trim(sv);
    if (sv.empty()) continue;
    const auto eq = sv.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::ConfigError, "line " + std::to_string(lineno) + ": expected 'key = value'");
    }
    try {
      apply_setting(cfg, detail::trim(sv.substr(0, eq)), detail::trim(sv.substr(eq + 1)));
    } catch (const Error& e) {
      throw Error(ErrorCode::ConfigError, "line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return cfg;
}

inline EngineConfig load_config(const std::string& path, EngineConfig cfg = {}) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), std::move(cfg));
}

}  // namespace touchvis
