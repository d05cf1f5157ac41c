#pragma once

#include <string>
#include <utility>
#include <vector>

#include "touchvis/demo.hpp"
#include "touchvis/touchvis.hpp"

namespace fixtures {

using namespace touchvis;

inline Dataset xy_data(const std::vector<std::pair<double, double>>& pts) {
  std::vector<std::vector<Value>> rows;
  for (auto [x, y] : pts) rows.push_back({x, y});
  return Dataset({{"x", FieldType::Quantitative}, {"y", FieldType::Quantitative}}, std::move(rows));
}

inline ChartSpec xy_scatter(double w = 300, double h = 300) {
  ChartSpec s;
  s.type = ChartType::Scatter;
  s.x = {"x", FieldType::Quantitative};
  s.y = {"y", FieldType::Quantitative};
  s.width = w;
  s.height = h;
  return s;
}

// Fifteen rows over x in {1,2,3}. Rows 12..14 sit at x = 2 with y = 7, 5, 9.
inline Dataset three_column_data() {
  std::vector<std::pair<double, double>> pts;
  for (int i = 0; i < 6; ++i) pts.push_back({1.0, 1.0 + i});
  for (int i = 0; i < 6; ++i) pts.push_back({3.0, 2.0 + i});
  pts.push_back({2.0, 7.0});
  pts.push_back({2.0, 5.0});
  pts.push_back({2.0, 9.0});
  return xy_data(pts);
}

// Grouped rows: category g, subgroup s, numeric v and w.
inline Dataset grouped_data() {
  Dataset::Rows rows{{std::string("A"), std::string("m"), 3.0, 10.0}, {std::string("A"), std::string("f"), 4.0, 20.0},
                     {std::string("B"), std::string("m"), 5.0, 30.0}, {std::string("B"), std::string("f"), 1.0, 40.0},
                     {std::string("C"), std::string("m"), 2.0, 50.0}, {std::string("C"), std::string("f"), 6.0, 60.0}};
  return Dataset({{"g", FieldType::Nominal},
                  {"s", FieldType::Nominal},
                  {"v", FieldType::Quantitative},
                  {"w", FieldType::Quantitative}},
                 std::move(rows));
}

inline ChartSpec grouped_bar() {
  ChartSpec s;
  s.type = ChartType::Bar;
  s.x = {"g", FieldType::Nominal};
  s.y = {"v", FieldType::Quantitative};
  return s;
}

inline ChartSpec grouped_scatter() {
  ChartSpec s;
  s.type = ChartType::Scatter;
  s.x = {"v", FieldType::Quantitative};
  s.y = {"w", FieldType::Quantitative};
  s.color = Encoding{"g", FieldType::Nominal};
  return s;
}

// Three series over four dates.
inline Dataset series_data() {
  Dataset::Rows rows;
  const char* dates[] = {"2020-01-01", "2020-02-01", "2020-03-01", "2020-04-01"};
  const char* series[] = {"a", "b", "c"};
  for (int s = 0; s < 3; ++s) {
    for (int d = 0; d < 4; ++d) {
      rows.push_back({*parse_iso8601(dates[d]), std::string(series[s]), 10.0 * (s + 1) + d});
    }
  }
  return Dataset({{"date", FieldType::Temporal}, {"series", FieldType::Nominal}, {"count", FieldType::Quantitative}},
                 std::move(rows));
}

inline ChartSpec series_chart() {
  ChartSpec s;
  s.type = ChartType::Multiline;
  s.x = {"date", FieldType::Temporal};
  s.y = {"count", FieldType::Quantitative};
  s.color = Encoding{"series", FieldType::Nominal};
  return s;
}

inline RawInputEvent down(Millis t, Point p, int id = 1) { return RawInputEvent::down(t, id, p); }
inline RawInputEvent move(Millis t, Point p, int id = 1) { return RawInputEvent::move(t, id, p); }
inline RawInputEvent up(Millis t, Point p, int id = 1) { return RawInputEvent::up(t, id, p); }

// Feeds events in order, collecting every gesture.
inline std::vector<GestureEvent> recognize(const std::vector<RawInputEvent>& events, GestureConfig cfg = {}) {
  RecognizerState st;
  st.config = cfg;
  std::vector<GestureEvent> out;
  for (const auto& e : events) {
    auto r = feed(std::move(st), e);
    st = std::move(r.state);
    out.insert(out.end(), r.gestures.begin(), r.gestures.end());
  }
  return out;
}

inline EngineState run(EngineState st, const std::vector<GestureEvent>& gestures) {
  for (const auto& g : gestures) st = dispatch(std::move(st), g).state;
  return st;
}

}  // namespace fixtures
