#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "touchvis/data.hpp"
#include "touchvis/error.hpp"
#include "touchvis/scene.hpp"

namespace touchvis {

enum class Axis { X, Y };

constexpr std::string_view to_string(Axis a) { return a == Axis::X ? "x" : "y"; }

enum class InspectMode { TwoFinger, Joystick };

constexpr std::string_view to_string(InspectMode m) { return m == InspectMode::Joystick ? "joystick" : "twoFinger"; }

/// Screen distance under which marks count as the same inspection step.
inline constexpr double kStepMergeDip = 0.5;

struct InspectionLine {
  bool active = false;
  std::optional<int> owner;  // pointer currently dragging the line
  int step_count = 0;
  int step_index = 0;
  double snapped_value = 0.0;  // data units
  double screen_pos = 0.0;     // where the line is drawn (dip)
  double fraction = 0.0;       // last requested position along the range
  friend bool operator==(const InspectionLine&, const InspectionLine&) = default;
};

struct InspectionState {
  InspectMode mode = InspectMode::TwoFinger;
  bool joystick_enabled = false;
  InspectionLine x;
  InspectionLine y;
  std::optional<Axis> primary;
  std::vector<MarkId> active_marks;  // ascending
  std::optional<Point> joystick_origin;
  std::optional<Rect> thumb_range;

  InspectionLine& line(Axis a) { return a == Axis::X ? x : y; }
  const InspectionLine& line(Axis a) const { return a == Axis::X ? x : y; }
  bool any_active() const { return x.active || y.active; }
  friend bool operator==(const InspectionState&, const InspectionState&) = default;
};

/// Drops both lines and any joystick session; the joystick toggle survives.
inline InspectionState cleared(const InspectionState& s) {
  InspectionState out;
  out.joystick_enabled = s.joystick_enabled;
  out.mode = s.joystick_enabled ? InspectMode::Joystick : InspectMode::TwoFinger;
  return out;
}

inline int even_step_index(double fraction, int step_count) {
  if (step_count <= 0) throw Error(ErrorCode::EmptySteps, "inspection needs at least one step");
  const double scaled = std::floor(fraction * static_cast<double>(step_count));
  return static_cast<int>(std::clamp(scaled, 0.0, static_cast<double>(step_count - 1)));
}

struct StepGroup {
  double value = 0.0;
  double screen = 0.0;
  std::vector<MarkId> marks;  // ascending
};

/// Groups `candidates` by their value along `axis`, ascending in data space.
/// Marks whose screen positions lie within kStepMergeDip of a group's first
/// member join that group.
inline std::vector<StepGroup> step_groups(const MarkScene& scene, Axis axis, std::vector<MarkId> candidates) {
  auto value = [&](MarkId id) {
    const Mark& m = scene.marks[static_cast<std::size_t>(id)];
    return axis == Axis::X ? m.x_value : m.y_value;
  };
  auto screen = [&](MarkId id) {
    const Mark& m = scene.marks[static_cast<std::size_t>(id)];
    return axis == Axis::X ? m.center.x : m.center.y;
  };
  std::sort(candidates.begin(), candidates.end(), [&](MarkId a, MarkId b) {
    const double va = value(a);
    const double vb = value(b);
    return va != vb ? va < vb : a < b;
  });
  std::vector<StepGroup> groups;
  for (MarkId id : candidates) {
    if (groups.empty() || std::abs(screen(id) - groups.back().screen) > kStepMergeDip) {
      groups.push_back({value(id), screen(id), {}});
    }
    groups.back().marks.push_back(id);
  }
  for (auto& g : groups) std::sort(g.marks.begin(), g.marks.end());
  return groups;
}

/// Position along the two-finger inspection range: left-to-right for x,
/// bottom-to-top for y. Clamped to [0,1].
inline double axis_fraction(const MarkScene& scene, Axis axis, Point pos) {
  const Rect& p = scene.plot;
  const double f = axis == Axis::X ? (pos.x - p.left) / p.width : 1.0 - (pos.y - p.top) / p.height;
  return std::clamp(f, 0.0, 1.0);
}

inline bool axis_inspectable(const MarkScene& scene, Axis axis) {
  return !(axis == Axis::Y && scene.chart == ChartType::Bar);
}

namespace detail {

inline void place_line(InspectionLine& line, const StepGroup& g, int index, int count) {
  line.step_count = count;
  line.step_index = index;
  line.snapped_value = g.value;
  line.screen_pos = g.screen;
}

// Re-derives step counts, snapped values and the active marks from each
// line's stored fraction. The secondary line only steps over the primary
// line's current group, so the intersection is never empty.
inline void resolve(const MarkScene& scene, InspectionState& s) {
  const Axis primary = *s.primary;
  const Axis secondary = primary == Axis::X ? Axis::Y : Axis::X;
  std::vector<MarkId> all(scene.marks.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<MarkId>(i);
  const auto groups = step_groups(scene, primary, std::move(all));
  auto& pline = s.line(primary);
  const int pi = even_step_index(pline.fraction, static_cast<int>(groups.size()));
  place_line(pline, groups[static_cast<std::size_t>(pi)], pi, static_cast<int>(groups.size()));
  s.active_marks = groups[static_cast<std::size_t>(pi)].marks;
  auto& sline = s.line(secondary);
  if (!sline.active) return;
  const auto refined = step_groups(scene, secondary, s.active_marks);
  const int si = even_step_index(sline.fraction, static_cast<int>(refined.size()));
  place_line(sline, refined[static_cast<std::size_t>(si)], si, static_cast<int>(refined.size()));
  s.active_marks = refined[static_cast<std::size_t>(si)].marks;
}

}  // namespace detail

/// Moves the `axis` line to `fraction` of its inspection range and recomputes
/// which marks are under inspection. Throws InspectionUnavailable (state
/// untouched) when nothing is drawn or the axis cannot be inspected.
inline InspectionState update_inspection_fraction(const MarkScene& scene, InspectionState state, Axis axis,
                                                  double fraction) {
  if (scene.marks.empty()) throw Error(ErrorCode::InspectionUnavailable, "no visible marks to inspect");
  if (!axis_inspectable(scene, axis)) {
    throw Error(ErrorCode::InspectionUnavailable, "bar charts are inspected along x only");
  }
  auto& line = state.line(axis);
  line.active = true;
  line.fraction = std::clamp(fraction, 0.0, 1.0);
  if (!state.primary || !state.line(*state.primary).active) state.primary = axis;
  detail::resolve(scene, state);
  return state;
}

inline InspectionState update_inspection(const MarkScene& scene, InspectionState state, Axis axis, Point pos) {
  return update_inspection_fraction(scene, std::move(state), axis, axis_fraction(scene, axis, pos));
}

/// Thumb box of `fraction` x the plot size centred on `origin`, shifted to
/// stay inside `bounds`.
inline Rect thumb_box(Point origin, const Rect& plot, double fraction, const Rect& bounds) {
  const double w = std::min(plot.width * fraction, bounds.width);
  const double h = std::min(plot.height * fraction, bounds.height);
  const double left = std::clamp(origin.x - w / 2.0, bounds.left, bounds.right() - w);
  const double top = std::clamp(origin.y - h / 2.0, bounds.top, bounds.bottom() - h);
  return {left, top, w, h};
}

/// Maps a thumb position inside the joystick box to plot fractions. Screen y
/// grows downward, data y upward, hence the flip.
inline std::pair<double, double> joystick_map(Point pos, const Rect& box) {
  const double fx = std::clamp((pos.x - box.left) / box.width, 0.0, 1.0);
  const double fy = std::clamp(1.0 - (pos.y - box.top) / box.height, 0.0, 1.0);
  return {fx, fy};
}

struct TooltipField {
  std::string name;
  std::string value;
  friend bool operator==(const TooltipField&, const TooltipField&) = default;
};

struct TooltipRow {
  MarkId mark = 0;
  RowId row = 0;  // first row of the mark
  std::string category;
  std::vector<TooltipField> fields;
  friend bool operator==(const TooltipRow&, const TooltipRow&) = default;
};

using TooltipPayload = std::vector<TooltipRow>;

/// One row per active mark listing every encoded field, ordered by legend
/// category then row id.
inline TooltipPayload tooltip_for(const MarkScene& scene, const ChartSpec& spec, const Dataset& data,
                                  const std::vector<MarkId>& active) {
  TooltipPayload rows;
  for (MarkId id : active) {
    const Mark* m = scene.mark(id);
    if (!m) throw Error(ErrorCode::NoTarget, "mark " + std::to_string(id) + " is not in the scene");
    TooltipRow row{m->id, m->rows.front(), m->category, {}};
    if (m->shape == MarkShape::Rect) {
      const auto& cats = scene.x_scale.domain().categories;
      row.fields.push_back({spec.x.field, cats[static_cast<std::size_t>(m->x_value)]});
      row.fields.push_back({spec.y.field, format_number(m->y_value)});
    } else {
      const RowId r = m->rows.front();
      row.fields.push_back({spec.x.field, format_value(data.at(r, data.column(spec.x.field)), spec.x.type)});
      row.fields.push_back({spec.y.field, format_value(data.at(r, data.column(spec.y.field)), spec.y.type)});
      if (spec.color) {
        row.fields.push_back({spec.color->field, format_value(data.at(r, data.column(spec.color->field)),
                                                              spec.color->type)});
      }
    }
    rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end(), [&](const TooltipRow& a, const TooltipRow& b) {
    const auto ca = scene.legend_index(a.category);
    const auto cb = scene.legend_index(b.category);
    return ca != cb ? ca < cb : a.row < b.row;
  });
  return rows;
}

}  // namespace touchvis
