#pragma once

#include <cstdlib>
#include <string>
#include <vector>

#include <json.hpp>

#include "touchvis/data.hpp"
#include "touchvis/inspect.hpp"
#include "touchvis/scale.hpp"
#include "touchvis/scene.hpp"
#include "touchvis/view_state.hpp"

namespace touchvis::wire {

using nlohmann::json;

/// Rounds to 9 significant digits so serialized numbers are portable.
inline double canonical(double v) {
  const double r = std::strtod(format_number(v).c_str(), nullptr);
  return r == 0.0 ? 0.0 : r;
}

inline json point(Point p) { return json::array({canonical(p.x), canonical(p.y)}); }

inline json rect(const Rect& r) {
  return json::array({canonical(r.left), canonical(r.top), canonical(r.width), canonical(r.height)});
}

inline json rows(const RowSet& s) { return json(std::vector<RowId>(s.begin(), s.end())); }

inline json domain(const Domain& d) {
  json j{{"kind", std::string(to_string(d.kind))}};
  if (d.is_band()) {
    j["categories"] = d.categories;
  } else {
    j["lo"] = canonical(d.lo);
    j["hi"] = canonical(d.hi);
  }
  return j;
}

inline json optional_domain(const std::optional<Domain>& d) { return d ? domain(*d) : json(nullptr); }

inline json selection(const Selection& s) {
  return {{"provenance", std::string(to_string(s.provenance))}, {"rows", rows(s.rows)}};
}

inline json aggregate_spec(const AggregateSpec& a) {
  return {{"groupBy", a.group_by},
          {"op", std::string(to_string(a.op))},
          {"measure", a.measure},
          {"targetBins", a.target_bins}};
}

inline json scene(const MarkScene& s) {
  json marks = json::array();
  for (const auto& m : s.marks) {
    marks.push_back({{"id", m.id},
                     {"rows", m.rows},
                     {"shape", std::string(to_string(m.shape))},
                     {"center", point(m.center)},
                     {"bounds", rect(m.bounds)},
                     {"category", m.category},
                     {"clipped", m.clipped}});
  }
  json legend = json::array();
  for (const auto& e : s.legend) {
    legend.push_back({{"category", e.category}, {"bounds", rect(e.bounds)}, {"filtered", e.filtered}});
  }
  auto scale = [](const Scale& sc) {
    json j = domain(sc.domain());
    j["range"] = json::array({canonical(sc.range_start()), canonical(sc.range_end())});
    return j;
  };
  return {{"chart", std::string(to_string(s.chart))},
          {"plot", rect(s.plot)},
          {"x", scale(s.x_scale)},
          {"y", scale(s.y_scale)},
          {"axisBands", {{"x", rect(s.x_axis_band)}, {"y", rect(s.y_axis_band)}}},
          {"legend", std::move(legend)},
          {"marks", std::move(marks)}};
}

inline json line(const InspectionLine& l) {
  if (!l.active) return {{"active", false}};
  return {{"active", true},
          {"stepCount", l.step_count},
          {"stepIndex", l.step_index},
          {"value", canonical(l.snapped_value)},
          {"screen", canonical(l.screen_pos)}};
}

inline json inspection(const InspectionState& s, const std::vector<Point>* lasso = nullptr) {
  json j{{"mode", std::string(to_string(s.mode))},
         {"joystickEnabled", s.joystick_enabled},
         {"lines", {{"x", line(s.x)}, {"y", line(s.y)}}},
         {"activeMarks", s.active_marks},
         {"thumbRange", s.thumb_range ? rect(*s.thumb_range) : json(nullptr)}};
  if (lasso) {
    json path = json::array();
    for (Point p : *lasso) path.push_back(point(p));
    j["lasso"] = std::move(path);
  }
  return j;
}

inline json tooltip(const TooltipPayload& rows) {
  json out = json::array();
  for (const auto& r : rows) {
    json fields = json::array();
    for (const auto& f : r.fields) fields.push_back({{"name", f.name}, {"value", f.value}});
    out.push_back({{"mark", r.mark}, {"row", r.row}, {"category", r.category}, {"fields", std::move(fields)}});
  }
  return out;
}

}  // namespace touchvis::wire
