#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "touchvis/aggregate.hpp"
#include "touchvis/config.hpp"
#include "touchvis/data.hpp"
#include "touchvis/error.hpp"
#include "touchvis/gesture.hpp"
#include "touchvis/history.hpp"
#include "touchvis/inspect.hpp"
#include "touchvis/scene.hpp"
#include "touchvis/select.hpp"
#include "touchvis/view_state.hpp"
#include "touchvis/wire.hpp"

namespace touchvis {

enum class UpdateKind { SceneChanged, InspectionChanged, SelectionChanged, Tooltip, MenuStateChanged, Error };

constexpr std::string_view to_string(UpdateKind k) {
  switch (k) {
    case UpdateKind::SceneChanged: return "sceneChanged";
    case UpdateKind::InspectionChanged: return "inspectionChanged";
    case UpdateKind::SelectionChanged: return "selectionChanged";
    case UpdateKind::Tooltip: return "tooltip";
    case UpdateKind::MenuStateChanged: return "menuStateChanged";
    case UpdateKind::Error: return "error";
  }
  return "error";
}

inline constexpr int kWireVersion = 1;

/// Renderer-facing message. `interaction` names the routed interaction that
/// produced it (empty for bookkeeping updates).
struct ViewUpdate {
  UpdateKind kind = UpdateKind::Error;
  std::string interaction;
  nlohmann::json payload;
};

inline nlohmann::json to_json(const ViewUpdate& u) {
  nlohmann::json j{{"v", kWireVersion}, {"kind", std::string(to_string(u.kind))}, {"payload", u.payload}};
  if (!u.interaction.empty()) j["interaction"] = u.interaction;
  return j;
}

/// Interaction tags carried by view updates.
namespace interaction {
inline constexpr const char* kInspectTwoFinger = "inspect.twoFinger";
inline constexpr const char* kInspectJoystick = "inspect.joystick";
inline constexpr const char* kSelectLasso = "select.lasso";
inline constexpr const char* kSelectTap = "select.tap";
inline constexpr const char* kSelectLegend = "select.legend";
inline constexpr const char* kSelectAxis = "select.axis";
inline constexpr const char* kSelectClear = "select.clear";
inline constexpr const char* kFocus = "focus";
inline constexpr const char* kRemove = "remove";
inline constexpr const char* kAggregateMerge = "aggregate.merge";
inline constexpr const char* kAggregateBy = "aggregate.by";
inline constexpr const char* kAggregateOp = "aggregate.op";
inline constexpr const char* kReset = "reset";
inline constexpr const char* kUndo = "undo";
inline constexpr const char* kRedo = "redo";
inline constexpr const char* kJoystickToggle = "joystick.toggle";
inline constexpr const char* kLassoPreview = "lasso.preview";
}  // namespace interaction

enum class DragMode { None, InspectX, InspectY, Joystick, Lasso };

struct DragContext {
  DragMode mode = DragMode::None;
  std::vector<Point> path;
};

/// Whole session. `scene`, `shown_spec` and `shown_data` are caches derived
/// from (spec, data, history.current) and are rebuilt whenever the view changes.
struct EngineState {
  ChartSpec spec;
  std::shared_ptr<const Dataset> data;
  EngineConfig config;
  History history;
  InspectionState inspection;
  RecognizerState recognizer;
  std::map<int, DragContext> drags;

  ChartSpec shown_spec;
  std::shared_ptr<const Dataset> shown_data;
  MarkScene scene;

  const ViewState& view() const { return history.current; }
};

struct StepResult {
  EngineState state;
  std::vector<ViewUpdate> updates;
};

namespace detail {

inline void rebuild(EngineState& st) {
  const ViewState& v = st.view();
  if (v.aggregate) {
    auto derived = derive_aggregate(*st.data, st.spec, v.aggregate->spec, v.aggregate->base_selection);
    st.shown_spec = std::move(derived.spec);
    st.shown_data = std::make_shared<const Dataset>(std::move(derived.data));
  } else {
    st.shown_spec = st.spec;
    st.shown_data = st.data;
  }
  st.scene = layout(st.shown_spec, *st.shown_data, v, st.config.layout);
}

inline nlohmann::json menu_state(const EngineState& st) {
  const ViewState& v = st.view();
  const bool has_selection = !v.selection.empty();
  return {{"undo", st.history.can_undo()},
          {"redo", st.history.can_redo()},
          {"merge", has_selection && !v.aggregate},
          {"aggregateBy", has_selection || v.aggregate.has_value()},
          {"aggregateOp", has_selection || v.aggregate.has_value()},
          {"joystick", st.inspection.joystick_enabled}};
}

class Dispatcher {
 public:
  explicit Dispatcher(EngineState st) : st_(std::move(st)), menu_before_(menu_state(st_)) {}

  StepResult run(const GestureEvent& g) && {
    std::visit([this](const auto& e) { on(e); }, g);
    auto menu = menu_state(st_);
    if (menu != menu_before_) emit(UpdateKind::MenuStateChanged, std::move(menu));
    return {std::move(st_), std::move(out_)};
  }

 private:
  void emit(UpdateKind kind, nlohmann::json payload) { out_.push_back({kind, tag_, std::move(payload)}); }

  void emit_inspection(const std::vector<Point>* lasso = nullptr) {
    emit(UpdateKind::InspectionChanged, wire::inspection(st_.inspection, lasso));
    emit(UpdateKind::Tooltip,
         wire::tooltip(tooltip_for(st_.scene, st_.shown_spec, *st_.shown_data, st_.inspection.active_marks)));
  }

  // Pushes `next` as one history entry unless it equals the current view.
  void commit(ViewState next, const char* tag) {
    if (next == st_.view()) return;
    tag_ = tag;
    const ViewState& before = st_.view();
    const bool scene_changed = next.visible != before.visible || next.x_domain != before.x_domain ||
                               next.y_domain != before.y_domain || next.aggregate != before.aggregate;
    st_.history = push_state(std::move(st_.history), std::move(next));
    after_view_change(scene_changed);
  }

  void after_view_change(bool scene_changed) {
    if (scene_changed) {
      rebuild(st_);
      const bool had_lines = st_.inspection.any_active();
      st_.inspection = cleared(st_.inspection);
      st_.drags.clear();
      emit(UpdateKind::SceneChanged, wire::scene(st_.scene));
      if (had_lines) emit_inspection();
    }
    emit(UpdateKind::SelectionChanged, wire::selection(st_.view().selection));
  }

  void history_step(History next, const char* tag) {
    if (next == st_.history) return;
    tag_ = tag;
    const ViewState before = st_.view();
    st_.history = std::move(next);
    const ViewState& v = st_.view();
    after_view_change(v.visible != before.visible || v.x_domain != before.x_domain || v.y_domain != before.y_domain ||
                      v.aggregate != before.aggregate);
  }

  void commit_selection(Selection sel, const char* tag) {
    ViewState next = st_.view();
    next.selection = std::move(sel);
    commit(std::move(next), tag);
  }

  void on(const Tap& e) {
    const HitTarget hit = hit_test(st_.scene, e.pos, st_.config.layout.fat_finger_tolerance);
    const Selection& current = st_.view().selection;
    switch (hit.kind) {
      case HitKind::Mark:
        commit_selection(toggle_rows(current, st_.scene.marks[static_cast<std::size_t>(hit.mark)].rows,
                                     Provenance::Tap),
                         interaction::kSelectTap);
        break;
      case HitKind::Legend:
        commit_selection(legend_select(st_.scene, st_.shown_spec, *st_.shown_data, current, hit.category),
                         interaction::kSelectLegend);
        break;
      case HitKind::AxisX:
      case HitKind::AxisY:
        commit_selection(axis_tap_select(st_.scene, st_.inspection, current), interaction::kSelectAxis);
        break;
      case HitKind::Background:
        if (st_.inspection.any_active()) {
          tag_ = interaction::kSelectClear;
          st_.inspection = cleared(st_.inspection);
          emit_inspection();
        }
        commit_selection({}, interaction::kSelectClear);
        break;
    }
  }

  void on(const DoubleTap&) {
    commit(focus(st_.view(), st_.view().selection, st_.shown_spec, *st_.shown_data), interaction::kFocus);
  }

  DragMode mode_at(Point pos) const {
    const HitTarget hit = hit_test(st_.scene, pos, st_.config.layout.fat_finger_tolerance);
    switch (hit.kind) {
      case HitKind::AxisX: return DragMode::InspectX;
      case HitKind::AxisY: return DragMode::InspectY;
      case HitKind::Legend: return DragMode::None;
      case HitKind::Mark: break;
      case HitKind::Background:
        if (!st_.scene.plot.contains(pos)) return DragMode::None;
        break;
    }
    return st_.inspection.joystick_enabled ? DragMode::Joystick : DragMode::Lasso;
  }

  void inspect_axis(Axis axis, int pointer, Point pos) {
    tag_ = interaction::kInspectTwoFinger;
    InspectionState next = update_inspection(st_.scene, st_.inspection, axis, pos);
    next.line(axis).owner = pointer;
    next.mode = InspectMode::TwoFinger;
    st_.inspection = std::move(next);
    emit_inspection();
  }

  void inspect_joystick(int pointer, Point pos) {
    tag_ = interaction::kInspectJoystick;
    InspectionState next = st_.inspection;
    next.mode = InspectMode::Joystick;
    const auto [fx, fy] = joystick_map(pos, *next.thumb_range);
    next = update_inspection_fraction(st_.scene, std::move(next), Axis::X, fx);
    next.x.owner = pointer;
    if (axis_inspectable(st_.scene, Axis::Y)) {
      next = update_inspection_fraction(st_.scene, std::move(next), Axis::Y, fy);
      next.y.owner = pointer;
    }
    st_.inspection = std::move(next);
    emit_inspection();
  }

  void on(const DragStart& e) {
    DragContext ctx{mode_at(e.pos), {e.pos}};
    st_.drags[e.pointer] = ctx;
    switch (ctx.mode) {
      case DragMode::InspectX: inspect_axis(Axis::X, e.pointer, e.pos); break;
      case DragMode::InspectY: inspect_axis(Axis::Y, e.pointer, e.pos); break;
      case DragMode::Joystick: {
        InspectionState next = st_.inspection;
        next.joystick_origin = e.pos;
        next.thumb_range = thumb_box(e.pos, st_.scene.plot, st_.config.thumb_range_fraction, st_.scene.plot);
        st_.inspection = std::move(next);
        inspect_joystick(e.pointer, e.pos);
        break;
      }
      case DragMode::Lasso:
      case DragMode::None: break;
    }
  }

  void on(const DragMove& e) {
    auto it = st_.drags.find(e.pointer);
    if (it == st_.drags.end()) return;
    switch (it->second.mode) {
      case DragMode::InspectX: inspect_axis(Axis::X, e.pointer, e.pos); break;
      case DragMode::InspectY: inspect_axis(Axis::Y, e.pointer, e.pos); break;
      case DragMode::Joystick: inspect_joystick(e.pointer, e.pos); break;
      case DragMode::Lasso:
        it->second.path = e.path;
        tag_ = interaction::kLassoPreview;
        emit(UpdateKind::InspectionChanged, wire::inspection(st_.inspection, &it->second.path));
        break;
      case DragMode::None: break;
    }
  }

  void release_lines(int pointer) {
    for (Axis a : {Axis::X, Axis::Y}) {
      auto& line = st_.inspection.line(a);
      if (line.owner == pointer) line.owner.reset();
    }
    if (st_.inspection.mode == InspectMode::Joystick) {
      st_.inspection.joystick_origin.reset();
      st_.inspection.thumb_range.reset();
    }
  }

  void on(const DragEnd& e) {
    auto it = st_.drags.find(e.pointer);
    const DragMode mode = it == st_.drags.end() ? DragMode::None : it->second.mode;
    if (it != st_.drags.end()) st_.drags.erase(it);
    if (e.classification == DragClass::Swipe) {
      if (st_.inspection.any_active() && mode != DragMode::Lasso && mode != DragMode::None) {
        st_.inspection = cleared(st_.inspection);
        tag_ = interaction::kRemove;
        emit_inspection();
      }
      const Selection& sel = st_.view().selection;
      if (sel.empty()) return;
      commit(remove_selection(st_.view(), sel), interaction::kRemove);
      return;
    }
    switch (mode) {
      case DragMode::Lasso:
        tag_ = interaction::kSelectLasso;
        emit(UpdateKind::InspectionChanged, wire::inspection(st_.inspection));
        commit_selection(lasso_select(st_.scene, e.path), interaction::kSelectLasso);
        break;
      case DragMode::InspectX:
      case DragMode::InspectY:
      case DragMode::Joystick: release_lines(e.pointer); break;
      case DragMode::None: break;
    }
  }

  void on(const Shake&) { history_step(reset_view(st_.history), interaction::kReset); }

  void on(const JoystickToggle&) {
    tag_ = interaction::kJoystickToggle;
    st_.inspection.joystick_enabled = !st_.inspection.joystick_enabled;
    st_.inspection = cleared(st_.inspection);
    st_.drags.clear();
    emit_inspection();
  }

  void aggregate(AggregateSpec spec, const RowSet& base_rows, const char* tag) {
    auto result = aggregate_selection(*st_.data, st_.spec, Selection{base_rows, Provenance::None}, spec);
    commit(std::move(result.view), tag);
  }

  // Spec to start from and rows to aggregate for encoding/operator changes:
  // the remembered base selection inside an aggregate view, the current
  // selection otherwise.
  std::pair<AggregateSpec, RowSet> aggregate_basis() const {
    const ViewState& v = st_.view();
    if (v.aggregate) return {v.aggregate->spec, v.aggregate->base_selection};
    if (v.selection.empty()) throw Error(ErrorCode::AggregateRequiresSelection, "aggregation needs a selection");
    AggregateSpec spec = default_aggregate_spec(st_.spec);
    spec.target_bins = st_.config.target_bins;
    return {spec, v.selection.rows};
  }

  void on(const MenuCommand& e) {
    const std::string& cmd = e.command;
    if (cmd == "history.undo") return history_step(undo(st_.history), interaction::kUndo);
    if (cmd == "history.redo") return history_step(redo(st_.history), interaction::kRedo);
    if (cmd == "view.reset") return history_step(reset_view(st_.history), interaction::kReset);
    if (cmd == "aggregate.merge") {
      if (st_.view().aggregate) throw Error(ErrorCode::AlreadyAggregated, "the view is already an aggregate");
      auto [spec, rows] = aggregate_basis();
      return aggregate(std::move(spec), rows, interaction::kAggregateMerge);
    }
    constexpr std::string_view by = "aggregate.by:";
    constexpr std::string_view op = "aggregate.op:";
    if (cmd.starts_with(by)) {
      auto [spec, rows] = aggregate_basis();
      spec.group_by = cmd.substr(by.size());
      return aggregate(std::move(spec), rows, interaction::kAggregateBy);
    }
    if (cmd.starts_with(op)) {
      const auto parsed = parse_aggregate_op(std::string_view(cmd).substr(op.size()));
      if (!parsed) throw Error(ErrorCode::UnknownCommand, "unknown aggregate operator in '" + cmd + "'");
      auto [spec, rows] = aggregate_basis();
      spec.op = *parsed;
      return aggregate(std::move(spec), rows, interaction::kAggregateOp);
    }
    throw Error(ErrorCode::UnknownCommand, "unknown menu command '" + cmd + "'");
  }

  EngineState st_;
  nlohmann::json menu_before_;
  std::vector<ViewUpdate> out_;
  std::string tag_;
};

inline ViewUpdate error_update(const Error& e) {
  return {UpdateKind::Error, {}, {{"code", std::string(to_string(e.code()))}, {"message", e.what()}}};
}

}  // namespace detail

/// Fresh session over `data` drawn as `spec`.
inline EngineState make_engine(ChartSpec spec, Dataset data, EngineConfig config = {}) {
  validate(spec, data, config.layout.axis_band);
  if (data.empty()) throw Error(ErrorCode::EmptyDataset, "dataset has no rows");
  EngineState st;
  st.spec = std::move(spec);
  st.data = std::make_shared<const Dataset>(std::move(data));
  st.config = config;
  st.history = History::start(initial_view(*st.data), config.history_cap);
  st.recognizer.config = config.gesture;
  st.inspection = InspectionState{};
  detail::rebuild(st);
  return st;
}

/// Routes one gesture. A failing guard yields a single error update and
/// leaves the state exactly as it was.
inline StepResult dispatch(EngineState st, const GestureEvent& g) {
  EngineState before = st;
  try {
    return detail::Dispatcher(std::move(st)).run(g);
  } catch (const Error& e) {
    return {std::move(before), {detail::error_update(e)}};
  }
}

/// Feeds the recognizer and dispatches every gesture it emits, in order.
inline StepResult process_raw(EngineState st, const RawInputEvent& e) {
  FeedResult fed;
  try {
    fed = feed(st.recognizer, e);
  } catch (const Error& err) {
    return {std::move(st), {detail::error_update(err)}};
  }
  st.recognizer = std::move(fed.state);
  StepResult result{std::move(st), {}};
  for (const auto& g : fed.gestures) {
    auto step = dispatch(std::move(result.state), g);
    result.state = std::move(step.state);
    for (auto& u : step.updates) result.updates.push_back(std::move(u));
  }
  return result;
}

/// Canonical, byte-stable description of the undoable state plus derived
/// scene statistics. Inspection, recognizer and history stacks are excluded.
inline std::string snapshot(const EngineState& st) {
  using nlohmann::json;
  const ViewState& v = st.view();
  json legend_filtered = json::array();
  for (const auto& e : st.scene.legend) {
    if (e.filtered) legend_filtered.push_back(e.category);
  }
  json aggregate = nullptr;
  if (v.aggregate) {
    aggregate = wire::aggregate_spec(v.aggregate->spec);
    aggregate["baseSelection"] = wire::rows(v.aggregate->base_selection);
  }
  const json j{
      {"visible", wire::rows(v.visible)},
      {"selection", wire::selection(v.selection)},
      {"domains", {{"x", wire::optional_domain(v.x_domain)}, {"y", wire::optional_domain(v.y_domain)}}},
      {"aggregate", aggregate},
      {"scene",
       {{"chart", std::string(to_string(st.scene.chart))},
        {"markCount", st.scene.marks.size()},
        {"visibleRowCount", v.visible.size()},
        {"legendFiltered", legend_filtered},
        {"x", wire::domain(st.scene.x_scale.domain())},
        {"y", wire::domain(st.scene.y_scale.domain())}}},
  };
  return j.dump();
}

}  // namespace touchvis
