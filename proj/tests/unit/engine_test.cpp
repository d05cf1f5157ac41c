#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace touchvis;

namespace {

std::vector<UpdateKind> kinds(const std::vector<ViewUpdate>& us) {
  std::vector<UpdateKind> out;
  for (const auto& u : us) out.push_back(u.kind);
  return out;
}

bool has_kind(const std::vector<ViewUpdate>& us, UpdateKind k) {
  return std::any_of(us.begin(), us.end(), [&](const ViewUpdate& u) { return u.kind == k; });
}

StepResult feed_all(EngineState st, const std::vector<RawInputEvent>& events) {
  StepResult r{std::move(st), {}};
  for (const auto& e : events) {
    auto step = process_raw(std::move(r.state), e);
    r.state = std::move(step.state);
    r.updates.insert(r.updates.end(), step.updates.begin(), step.updates.end());
  }
  return r;
}

EngineState with_selection(EngineState st, RowSet rows) {
  // Tap each row's mark (scatter mark id = row id).
  for (RowId r : rows) st = dispatch(std::move(st), Tap{st.scene.marks[static_cast<std::size_t>(r)].center}).state;
  return st;
}

class ScatterEngine : public ::testing::Test {
 protected:
  // Points spread widely enough that each tap hits exactly one mark.
  EngineState st = make_engine(
      fixtures::xy_scatter(), fixtures::xy_data({{0, 0}, {10, 10}, {20, 5}, {30, 15}, {40, 2}, {50, 12}}));
};

}  // namespace

TEST_F(ScatterEngine, TapOnMarkSelects) {
  const Point c = st.scene.marks[2].center;
  const auto r = feed_all(st, {RawInputEvent::down(0, 1, c), RawInputEvent::up(50, 1, c), RawInputEvent::flush(400)});
  ASSERT_EQ(kinds(r.updates), (std::vector<UpdateKind>{UpdateKind::SelectionChanged, UpdateKind::MenuStateChanged}));
  EXPECT_EQ(r.updates[0].interaction, interaction::kSelectTap);
  EXPECT_EQ(r.updates[0].payload["rows"], nlohmann::json::array({2}));
  EXPECT_EQ(r.state.view().selection.rows, RowSet{2});
  EXPECT_TRUE(r.state.history.can_undo());
}

TEST_F(ScatterEngine, BackgroundTapClearsSelection) {
  EngineState s = with_selection(st, {1});
  const auto r = dispatch(s, Tap{{-200, -200}});
  EXPECT_TRUE(r.state.view().selection.empty());
  EXPECT_EQ(r.updates.front().interaction, interaction::kSelectClear);
}

TEST_F(ScatterEngine, DoubleTapFocuses) {
  EngineState s = with_selection(st, {3, 4});
  const auto r = dispatch(s, DoubleTap{{1, 1}});
  EXPECT_EQ(r.state.view().visible, (RowSet{3, 4}));
  EXPECT_DOUBLE_EQ(r.state.scene.x_scale.domain().lo, 29.5);
  EXPECT_DOUBLE_EQ(r.state.scene.x_scale.domain().hi, 40.5);
  EXPECT_EQ(r.updates.front().kind, UpdateKind::SceneChanged);
  EXPECT_EQ(r.updates.front().interaction, interaction::kFocus);
}

TEST_F(ScatterEngine, FocusWithoutSelectionIsError) {
  const std::string before = snapshot(st);
  const auto r = dispatch(st, DoubleTap{{1, 1}});
  ASSERT_EQ(r.updates.size(), 1u);
  EXPECT_EQ(r.updates[0].kind, UpdateKind::Error);
  EXPECT_EQ(r.updates[0].payload["code"], "FocusRequiresSelection");
  EXPECT_EQ(snapshot(r.state), before);
}

TEST_F(ScatterEngine, OrphanTouchUpIsErrorAndStateUnchanged) {
  const auto r = process_raw(st, RawInputEvent::up(0, 4, {1, 1}));
  ASSERT_EQ(r.updates.size(), 1u);
  EXPECT_EQ(r.updates[0].kind, UpdateKind::Error);
  EXPECT_EQ(r.updates[0].payload["code"], "ProtocolError");
  EXPECT_EQ(r.state.recognizer, st.recognizer);
  EXPECT_EQ(r.state.history, st.history);
}

TEST_F(ScatterEngine, SwipeWithoutSelectionIsInert) {
  const auto r = dispatch(st, DragEnd{1, {{0, 0}, {200, 0}}, 1333, DragClass::Swipe});
  EXPECT_TRUE(r.updates.empty());
  EXPECT_FALSE(r.state.history.can_undo());
}

TEST_F(ScatterEngine, SwipeRemovesSelection) {
  EngineState s = with_selection(st, {0, 5});
  const auto r = dispatch(s, DragEnd{1, {{0, 0}, {200, 0}}, 1333, DragClass::Swipe});
  EXPECT_EQ(r.state.view().visible, (RowSet{1, 2, 3, 4}));
  EXPECT_EQ(r.updates.front().interaction, interaction::kRemove);
  EXPECT_EQ(r.state.scene.x_scale.domain(), s.scene.x_scale.domain());
}

TEST_F(ScatterEngine, ShakeRestoresInitialView) {
  const std::string initial = snapshot(st);
  EngineState s = dispatch(with_selection(st, {1, 2}), DoubleTap{{0, 0}}).state;
  ASSERT_NE(snapshot(s), initial);
  std::vector<RawInputEvent> burst;
  for (int i = 0; i < 10; ++i) burst.push_back(RawInputEvent::motion(i * 20, {0, 0, 9.81}));
  for (int i = 10; i < 13; ++i) burst.push_back(RawInputEvent::motion(i * 20, {50, 0, 9.81}));
  const auto r = feed_all(s, burst);
  EXPECT_EQ(snapshot(r.state), initial);
  EXPECT_TRUE(has_kind(r.updates, UpdateKind::SceneChanged));
  EXPECT_EQ(r.updates.front().interaction, interaction::kReset);
  EXPECT_EQ(snapshot(dispatch(r.state, MenuCommand{"history.undo"}).state), snapshot(s));
}

TEST_F(ScatterEngine, MenuResetFallback) {
  EngineState s = dispatch(with_selection(st, {1, 2}), DoubleTap{{0, 0}}).state;
  EXPECT_EQ(snapshot(dispatch(s, MenuCommand{"view.reset"}).state), snapshot(st));
  EXPECT_TRUE(dispatch(st, MenuCommand{"view.reset"}).updates.empty());
}

TEST_F(ScatterEngine, FocusThenUndoIsByteIdentical) {
  EngineState s = dispatch(with_selection(st, {1, 2}), DoubleTap{{0, 0}}).state;
  while (s.history.can_undo()) s = dispatch(s, MenuCommand{"history.undo"}).state;
  EXPECT_EQ(snapshot(s), snapshot(st));
  const auto redone = dispatch(s, MenuCommand{"history.redo"});
  EXPECT_EQ(redone.updates.front().interaction, interaction::kRedo);
}

TEST_F(ScatterEngine, UndoOnEmptyHistoryIsError) {
  const auto r = dispatch(st, MenuCommand{"history.undo"});
  ASSERT_EQ(r.updates.size(), 1u);
  EXPECT_EQ(r.updates[0].payload["code"], "NothingToUndo");
  EXPECT_EQ(dispatch(st, MenuCommand{"make.coffee"}).updates[0].payload["code"], "UnknownCommand");
}

TEST_F(ScatterEngine, SnapshotIgnoresInspection) {
  EXPECT_EQ(snapshot(st), snapshot(st));
  EngineState s = st;
  s.inspection = update_inspection_fraction(s.scene, s.inspection, Axis::X, 0.5);
  EXPECT_EQ(snapshot(s), snapshot(st));
}

TEST_F(ScatterEngine, TwoFingerInspectionEmitsLinesAndTooltip) {
  const double axis_y = 300 + 24;
  const auto r = feed_all(st, {RawInputEvent::down(0, 1, {5, axis_y}), RawInputEvent::move(200, 1, {150, axis_y})});
  ASSERT_TRUE(has_kind(r.updates, UpdateKind::InspectionChanged));
  EXPECT_TRUE(has_kind(r.updates, UpdateKind::Tooltip));
  EXPECT_TRUE(r.state.inspection.x.active);
  EXPECT_EQ(r.state.inspection.active_marks, std::vector<MarkId>{3});  // floor(0.5 * 6)
  EXPECT_EQ(r.updates.back().interaction, interaction::kInspectTwoFinger);

  // Lines persist after lift, so an axis tap selects the inspected mark.
  auto lifted = feed_all(r.state, {RawInputEvent::up(400, 1, {150, axis_y}), RawInputEvent::down(1000, 1, {150, axis_y}),
                                   RawInputEvent::up(1050, 1, {150, axis_y}), RawInputEvent::flush(1500)});
  EXPECT_EQ(lifted.state.view().selection.rows, RowSet{3});
  EXPECT_EQ(lifted.state.view().selection.provenance, Provenance::AxisTap);
}

TEST_F(ScatterEngine, JoystickInspection) {
  EngineState s = dispatch(st, JoystickToggle{}).state;
  EXPECT_TRUE(s.inspection.joystick_enabled);
  const auto r = feed_all(s, {RawInputEvent::down(0, 1, {150, 150}), RawInputEvent::move(100, 1, {200, 150}),
                              RawInputEvent::move(200, 1, {210, 150})});
  EXPECT_TRUE(r.state.inspection.x.active);
  EXPECT_TRUE(r.state.inspection.y.active);
  EXPECT_TRUE(r.state.inspection.thumb_range);
  EXPECT_EQ(r.updates.back().interaction, interaction::kInspectJoystick);
  EXPECT_FALSE(r.state.inspection.active_marks.empty());
}

TEST_F(ScatterEngine, LassoSelectsEnclosedMarks) {
  const Point a = st.scene.marks[0].center;  // lowest
  const Point b = st.scene.marks[1].center;  // highest of the three
  const Point c = st.scene.marks[2].center;  // rightmost
  const std::vector<Point> box{{a.x - 10, b.y - 10}, {c.x + 10, b.y - 10}, {c.x + 10, a.y + 5}, {a.x - 10, a.y + 5}};
  EngineState s = dispatch(st, DragStart{1, box[0]}).state;
  const auto r = dispatch(s, DragEnd{1, box, 100, DragClass::Lasso});
  EXPECT_EQ(r.state.view().selection.rows, (RowSet{0, 1, 2}));
  EXPECT_EQ(r.updates.front().interaction, interaction::kSelectLasso);
}

TEST(EngineAggregate, MergeByOpAndUndo) {
  const auto chart = demo::iris();
  EngineState st = make_engine(chart.file.spec, chart.dataset());
  const std::string initial = snapshot(st);
  st = dispatch(st, Tap{st.scene.legend[1].bounds.center()}).state;  // versicolor
  ASSERT_EQ(st.view().selection.rows.size(), 50u);

  auto r = dispatch(st, MenuCommand{"aggregate.merge"});
  EXPECT_EQ(r.updates.front().interaction, interaction::kAggregateMerge);
  EXPECT_EQ(r.state.scene.chart, ChartType::Bar);
  EXPECT_EQ(r.state.shown_spec.y.field, "mean(sepalWidth)");
  EXPECT_EQ(dispatch(r.state, MenuCommand{"aggregate.merge"}).updates[0].payload["code"], "AlreadyAggregated");

  r = dispatch(r.state, MenuCommand{"aggregate.op:count"});
  EXPECT_EQ(r.state.shown_spec.y.field, "count");
  double total = 0;
  for (const auto& m : r.state.scene.marks) total += m.y_value;
  EXPECT_EQ(total, 50.0);  // count conservation

  r = dispatch(r.state, MenuCommand{"aggregate.by:species"});
  ASSERT_EQ(r.state.scene.marks.size(), 1u);
  EXPECT_EQ(r.state.scene.marks[0].y_value, 50.0);
  EXPECT_EQ(dispatch(r.state, MenuCommand{"aggregate.op:mode"}).updates[0].payload["code"], "UnknownCommand");
  EXPECT_EQ(dispatch(r.state, MenuCommand{"aggregate.by:nope"}).updates[0].payload["code"], "SpecError");

  EngineState s = r.state;
  while (s.history.can_undo()) s = dispatch(s, MenuCommand{"history.undo"}).state;
  EXPECT_EQ(snapshot(s), initial);
}

TEST(EngineAggregate, RequiresSelection) {
  const auto chart = demo::iris();
  const EngineState st = make_engine(chart.file.spec, chart.dataset());
  EXPECT_EQ(dispatch(st, MenuCommand{"aggregate.merge"}).updates[0].payload["code"], "AggregateRequiresSelection");
}

TEST(Engine, MakeEngineValidates) {
  ChartSpec bad = fixtures::xy_scatter();
  bad.x.field = "zz";
  EXPECT_THROW(make_engine(bad, fixtures::three_column_data()), Error);
  EXPECT_THROW(make_engine(fixtures::xy_scatter(), fixtures::xy_data({})), Error);
}

TEST(Engine, WireFormatIsVersioned) {
  const ViewUpdate u{UpdateKind::SelectionChanged, interaction::kSelectTap, {{"rows", {1}}}};
  const auto j = to_json(u);
  EXPECT_EQ(j["v"], 1);
  EXPECT_EQ(j["kind"], "selectionChanged");
  EXPECT_EQ(j["interaction"], "select.tap");
  EXPECT_FALSE(to_json(ViewUpdate{UpdateKind::Error, {}, {}}).contains("interaction"));
}

TEST(Replay, EmptyTraceIsInitialSnapshot) {
  const auto chart = demo::iris();
  const Dataset data = chart.dataset();
  const auto r = replay(chart.file.spec, data, {}, std::vector<RawInputEvent>{}, SnapshotPolicy::EachChange);
  ASSERT_EQ(r.log.size(), 1u);
  EXPECT_EQ(r.log[0].event_index, -1);
  EXPECT_EQ(r.log[0].snapshot, snapshot(make_engine(chart.file.spec, data)));
}

TEST(Replay, FocusThenUndoFinalIsInitial) {
  const auto chart = demo::iris();
  const Dataset data = chart.dataset();
  const EngineState st = make_engine(chart.file.spec, data);
  demo::TraceBuilder b;
  b.tap(st.scene.legend[0].bounds.center()).double_tap({100, 100}).menu("history.undo").menu("history.undo");
  const auto r = replay(chart.file.spec, data, {}, b.events(), SnapshotPolicy::Final);
  ASSERT_EQ(r.log.size(), 1u);
  EXPECT_EQ(r.log[0].snapshot, snapshot(st));
  EXPECT_FALSE(r.failure);
}

TEST(Replay, ProtocolErrorHalts) {
  const auto chart = demo::iris();
  const std::vector<RawInputEvent> events{RawInputEvent::flush(0), RawInputEvent::up(5, 1, {0, 0}),
                                          RawInputEvent::flush(10)};
  const auto r = replay(chart.file.spec, chart.dataset(), {}, events, SnapshotPolicy::EachEvent);
  ASSERT_TRUE(r.failure);
  EXPECT_EQ(r.failure->event_index, 1);
  EXPECT_EQ(r.log.back().event_index, 0);
}

TEST(Replay, PoliciesAgreeOnFinalState) {
  const auto chart = demo::iris();
  const Dataset data = chart.dataset();
  for (const auto& t : demo::sample_traces(chart)) {
    const auto every = replay(chart.file.spec, data, {}, t.trace, SnapshotPolicy::EachEvent);
    const auto change = replay(chart.file.spec, data, {}, t.trace, SnapshotPolicy::EachChange);
    const auto last = replay(chart.file.spec, data, {}, t.trace, SnapshotPolicy::Final);
    EXPECT_EQ(every.log.size(), t.trace.events.size() + 1) << t.name;
    EXPECT_EQ(every.log.back().snapshot, change.log.back().snapshot) << t.name;
    EXPECT_EQ(last.log.back().snapshot, change.log.back().snapshot) << t.name;
    EXPECT_LE(change.log.size(), every.log.size());
  }
}
