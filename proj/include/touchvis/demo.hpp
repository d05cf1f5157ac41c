#pragma once

#include <algorithm>
#include <array>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "touchvis/bundled_data.hpp"
#include "touchvis/engine.hpp"
#include "touchvis/io.hpp"
#include "touchvis/replay.hpp"

namespace touchvis::demo {

/// One row of the interaction catalogue and the update tags that count as
/// exercising it.
struct Candidate {
  std::string_view task;
  std::string_view mechanism;
  std::array<std::string_view, 2> tags;
};

inline constexpr std::array<Candidate, 13> kCandidates{{
    {"inspect", "drag fingers along axes", {interaction::kInspectTwoFinger, ""}},
    {"inspect", "drag finger with joystick", {interaction::kInspectJoystick, ""}},
    {"select", "drag with lasso", {interaction::kSelectLasso, ""}},
    {"select", "tap mark or legend", {interaction::kSelectTap, interaction::kSelectLegend}},
    {"select", "tap axis", {interaction::kSelectAxis, ""}},
    {"focus", "double tap", {interaction::kFocus, ""}},
    {"remove", "quickly swipe", {interaction::kRemove, ""}},
    {"aggregate", "merge from menu", {interaction::kAggregateMerge, ""}},
    {"aggregate", "encoding from menu", {interaction::kAggregateBy, ""}},
    {"aggregate", "operator from menu", {interaction::kAggregateOp, ""}},
    {"reset", "shake or tilt", {interaction::kReset, ""}},
    {"undo", "undo from menu", {interaction::kUndo, ""}},
    {"redo", "redo from menu", {interaction::kRedo, ""}},
}};

/// Tags of updates that actually changed something: a scene or selection
/// change, or an inspection that highlights at least one mark.
inline std::set<std::string> exercised(const ReplayResult& r) {
  std::set<std::string> tags;
  for (const auto& [_, u] : r.updates) {
    if (u.interaction.empty()) continue;
    const bool effective =
        u.kind == UpdateKind::SceneChanged || u.kind == UpdateKind::SelectionChanged ||
        (u.kind == UpdateKind::InspectionChanged && !u.payload.value("activeMarks", nlohmann::json::array()).empty());
    if (effective) tags.insert(u.interaction);
  }
  return tags;
}

inline bool covers(const std::set<std::string>& tags, const Candidate& c) {
  return std::any_of(c.tags.begin(), c.tags.end(),
                     [&](std::string_view t) { return !t.empty() && tags.count(std::string(t)) != 0; });
}

struct Chart {
  std::string name;
  io::ChartFile file;
  std::string_view csv;

  Dataset dataset() const { return io::parse_csv(csv, file.schema); }
};

inline Chart iris() {
  Chart c{"iris", {}, bundled::kIrisCsv};
  c.file.spec.type = ChartType::Scatter;
  c.file.spec.x = {"sepalLength", FieldType::Quantitative};
  c.file.spec.y = {"sepalWidth", FieldType::Quantitative};
  c.file.spec.color = Encoding{"species", FieldType::Nominal};
  c.file.spec.width = 320;
  c.file.spec.height = 400;
  c.file.schema = {{"sepalLength", FieldType::Quantitative},
                   {"sepalWidth", FieldType::Quantitative},
                   {"petalLength", FieldType::Quantitative},
                   {"petalWidth", FieldType::Quantitative},
                   {"species", FieldType::Nominal}};
  return c;
}

inline Chart population() {
  Chart c{"population", {}, bundled::kPopulationCsv};
  c.file.spec.type = ChartType::Bar;
  c.file.spec.x = {"age", FieldType::Nominal};
  c.file.spec.y = {"people", FieldType::Quantitative};
  c.file.spec.width = 320;
  c.file.spec.height = 400;
  c.file.spec.margins.right = 56;
  c.file.schema = {{"age", FieldType::Nominal}, {"sex", FieldType::Nominal}, {"people", FieldType::Quantitative}};
  return c;
}

inline Chart unemployment() {
  Chart c{"unemployment", {}, bundled::kUnemploymentCsv};
  c.file.spec.type = ChartType::Multiline;
  c.file.spec.x = {"date", FieldType::Temporal};
  c.file.spec.y = {"count", FieldType::Quantitative};
  c.file.spec.color = Encoding{"series", FieldType::Nominal};
  c.file.spec.width = 320;
  c.file.spec.height = 400;
  c.file.spec.margins.right = 128;
  c.file.schema = {{"date", FieldType::Temporal}, {"series", FieldType::Nominal}, {"count", FieldType::Quantitative}};
  return c;
}

inline std::optional<Chart> chart_named(std::string_view name) {
  if (name == "iris") return iris();
  if (name == "population") return population();
  if (name == "unemployment") return unemployment();
  return std::nullopt;
}

/// Accumulates raw events with a running clock. Gestures are spaced far
/// enough apart that taps never pair up into double taps by accident.
class TraceBuilder {
 public:
  Millis now() const { return t_; }
  std::vector<RawInputEvent>& events() { return events_; }

  TraceBuilder& pause(Millis ms) {
    t_ += ms;
    return *this;
  }
  TraceBuilder& add(RawInputEvent e) {
    t_ = std::max(t_, e.t);
    events_.push_back(std::move(e));
    return *this;
  }
  TraceBuilder& flush() { return add(RawInputEvent::flush(t_)); }

  TraceBuilder& tap(Point p, int pointer = 1) {
    add(RawInputEvent::down(t_, pointer, p));
    add(RawInputEvent::up(t_ + 80, pointer, p));
    pause(400);
    return flush().pause(100);
  }

  TraceBuilder& double_tap(Point p) {
    add(RawInputEvent::down(t_, 1, p));
    add(RawInputEvent::up(t_ + 80, 1, p));
    add(RawInputEvent::down(t_ + 100, 1, p));
    add(RawInputEvent::up(t_ + 80, 1, p));
    pause(400);
    return flush().pause(100);
  }

  /// Drag through `points` with moves spread evenly over `duration`.
  TraceBuilder& drag(const std::vector<Point>& points, Millis duration, int pointer = 1) {
    const Millis start = t_;
    add(RawInputEvent::down(start, pointer, points.front()));
    const auto n = static_cast<Millis>(points.size() - 1);
    for (Millis i = 1; i < n; ++i) add(RawInputEvent::move(start + duration * i / n, pointer, points[static_cast<std::size_t>(i)]));
    add(RawInputEvent::up(start + duration, pointer, points.back()));
    return pause(200);
  }

  /// Settles the gravity filter, then three strong lateral samples.
  TraceBuilder& shake() {
    for (int i = 0; i < 10; ++i) add(RawInputEvent::motion(t_ + 20, {0.0, 0.0, 9.81}));
    for (int i = 0; i < 3; ++i) add(RawInputEvent::motion(t_ + 20, {50.0, 0.0, 9.81}));
    return pause(1200);
  }

  TraceBuilder& menu(std::string cmd) {
    add(RawInputEvent::menu(t_, std::move(cmd)));
    return pause(200);
  }

  TraceBuilder& joystick() {
    add(RawInputEvent::joystick(t_));
    return pause(200);
  }

 private:
  Millis t_ = 0;
  std::vector<RawInputEvent> events_;
};

struct SampleTrace {
  std::string name;  // file stem
  io::InputTrace trace;
};

namespace detail {

inline Point legend_center(const MarkScene& s, std::string_view category) {
  return s.legend.at(s.legend_index(category)).bounds.center();
}

inline SampleTrace sample(const Chart& c, std::string stem, TraceBuilder& b) {
  io::InputTrace t;
  t.header.chart_spec_ref = c.name + ".spec.json";
  t.header.dataset_ref = c.name + ".csv";
  t.events = std::move(b.events());
  return {c.name + "_" + std::move(stem), std::move(t)};
}

// Two fingers: x axis first (primary), then y axis, both held, then released.
inline void two_finger_inspection(TraceBuilder& b, const ChartSpec& s, double fx, double fy) {
  const double bx = s.height + 24;
  const Millis t = b.now();
  b.add(RawInputEvent::down(t, 1, {8, bx}));
  b.add(RawInputEvent::move(t + 100, 1, {s.width * fx / 2, bx}));
  b.add(RawInputEvent::move(t + 200, 1, {s.width * fx, bx}));
  b.add(RawInputEvent::down(t + 300, 2, {-24, s.height - 8}));
  b.add(RawInputEvent::move(t + 400, 2, {-24, s.height * (1 - fy / 2)}));
  b.add(RawInputEvent::move(t + 500, 2, {-24, s.height * (1 - fy)}));
  b.add(RawInputEvent::up(t + 700, 2, {-24, s.height * (1 - fy)}));
  b.add(RawInputEvent::up(t + 800, 1, {s.width * fx, bx}));
  b.pause(200);
}

inline void x_inspection(TraceBuilder& b, const ChartSpec& s, double fx) {
  const double bx = s.height + 24;
  b.drag({{8, bx}, {s.width * fx / 2, bx}, {s.width * fx, bx}}, 600);
}

inline void swipe(TraceBuilder& b, const ChartSpec& s) {
  b.drag({{s.width * 0.2, s.height * 0.5}, {s.width * 0.5, s.height * 0.5}, {s.width * 0.8, s.height * 0.5}}, 150);
}

}  // namespace detail

/// Sample traces for a bundled chart. The iris set holds one trace per
/// interaction candidate.
inline std::vector<SampleTrace> sample_traces(const Chart& c) {
  const EngineState st = make_engine(c.file.spec, c.dataset());
  const MarkScene& scene = st.scene;
  const ChartSpec& s = c.file.spec;
  const Point mid{s.width * 0.5, s.height * 0.5};
  std::vector<SampleTrace> out;
  auto trace = [&](std::string stem, auto&& build) {
    TraceBuilder b;
    build(b);
    out.push_back(detail::sample(c, std::move(stem), b));
  };

  if (c.name == "iris") {
    const Point setosa = detail::legend_center(scene, "setosa");
    const Point versicolor = detail::legend_center(scene, "versicolor");
    trace("inspect_two_finger", [&](TraceBuilder& b) { detail::two_finger_inspection(b, s, 0.5, 0.5); });
    trace("inspect_joystick", [&](TraceBuilder& b) {
      b.joystick();
      b.drag({mid, {mid.x + 20, mid.y - 10}, {mid.x + 40, mid.y - 30}}, 600);
    });
    trace("select_lasso", [&](TraceBuilder& b) {
      b.drag({{12, s.height * 0.4}, {s.width * 0.45, s.height * 0.4}, {s.width * 0.45, s.height * 0.95},
              {12, s.height * 0.95}, {12, s.height * 0.42}},
             900);
    });
    trace("select_tap_mark", [&](TraceBuilder& b) {
      b.tap(scene.marks[0].center);
      b.tap(versicolor);
    });
    trace("select_tap_axis", [&](TraceBuilder& b) {
      detail::two_finger_inspection(b, s, 0.3, 0.6);
      b.tap({s.width * 0.5, s.height + 30});
    });
    trace("focus", [&](TraceBuilder& b) { b.tap(setosa).double_tap(mid); });
    trace("remove", [&](TraceBuilder& b) {
      b.tap(setosa);
      detail::swipe(b, s);
    });
    trace("aggregate_merge", [&](TraceBuilder& b) { b.tap(versicolor).menu("aggregate.merge"); });
    trace("aggregate_by", [&](TraceBuilder& b) { b.tap(versicolor).menu("aggregate.by:petalLength"); });
    trace("aggregate_op", [&](TraceBuilder& b) { b.tap(versicolor).menu("aggregate.merge").menu("aggregate.op:max"); });
    trace("reset_shake", [&](TraceBuilder& b) { b.tap(setosa).double_tap(mid).shake(); });
    trace("undo", [&](TraceBuilder& b) { b.tap(setosa).double_tap(mid).menu("history.undo"); });
    trace("redo", [&](TraceBuilder& b) { b.tap(setosa).double_tap(mid).menu("history.undo").menu("history.redo"); });
  } else if (c.name == "population") {
    trace("tap_bar", [&](TraceBuilder& b) { b.tap(scene.marks[3].center); });
    trace("inspect_x", [&](TraceBuilder& b) { detail::x_inspection(b, s, 0.4); });
    trace("focus", [&](TraceBuilder& b) {
      b.tap(scene.marks[2].center).tap(scene.marks[3].center).tap(scene.marks[4].center).double_tap(mid);
    });
    trace("remove", [&](TraceBuilder& b) {
      b.tap(scene.marks[0].center);
      detail::swipe(b, s);
    });
    trace("aggregate", [&](TraceBuilder& b) {
      b.tap(scene.marks[5].center).tap(scene.marks[6].center).menu("aggregate.by:sex").menu("aggregate.op:sum");
    });
  } else {
    const Point finance = detail::legend_center(scene, "Finance");
    trace("legend", [&](TraceBuilder& b) { b.tap(finance); });
    trace("inspect_x", [&](TraceBuilder& b) {
      detail::x_inspection(b, s, 0.7);
      b.tap({s.width * 0.5, s.height + 30});
    });
    trace("lasso", [&](TraceBuilder& b) {
      b.drag({{s.width * 0.5, 12}, {s.width * 0.95, 12}, {s.width * 0.95, s.height * 0.6}, {s.width * 0.5, s.height * 0.6},
              {s.width * 0.5, 16}},
             900);
    });
    trace("focus", [&](TraceBuilder& b) { b.tap(finance).double_tap(mid).menu("history.undo"); });
    trace("shake", [&](TraceBuilder& b) {
      b.tap(finance);
      detail::swipe(b, s);
      b.shake();
    });
  }
  return out;
}

}  // namespace touchvis::demo
