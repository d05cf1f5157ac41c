#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "touchvis/data.hpp"
#include "touchvis/scale.hpp"
#include "touchvis/view_state.hpp"

namespace touchvis {

struct LayoutConfig {
  double fat_finger_tolerance = 24.0;
  double axis_band = 48.0;
  double point_radius = 4.0;
  double legend_row_height = 24.0;
  double legend_gap = 8.0;
  friend bool operator==(const LayoutConfig&, const LayoutConfig&) = default;
};

enum class MarkShape { Point, Rect, LineVertex };

constexpr std::string_view to_string(MarkShape s) {
  switch (s) {
    case MarkShape::Point: return "point";
    case MarkShape::Rect: return "rect";
    case MarkShape::LineVertex: return "lineVertex";
  }
  return "point";
}

using MarkId = int;

struct Mark {
  MarkId id = 0;
  std::vector<RowId> rows;  // ascending, never empty
  MarkShape shape = MarkShape::Point;
  Point center;
  Rect bounds;
  std::string category;  // color/series value, empty without a color encoding
  double x_value = 0.0;  // data units; band index on band axes
  double y_value = 0.0;  // data units; summed value for bars
  bool clipped = false;
};

struct LegendEntry {
  std::string category;
  Rect bounds;
  bool filtered = false;  // no visible row carries this category
};

/// Laid-out marks plus the geometry needed to hit-test them. Everything is in
/// plot-relative dip: the plot area is [0,width] x [0,height].
struct MarkScene {
  ChartType chart = ChartType::Scatter;
  Rect plot;
  Scale x_scale;
  Scale y_scale;
  std::vector<Mark> marks;
  Rect x_axis_band;
  Rect y_axis_band;
  std::vector<LegendEntry> legend;

  const Mark* mark(MarkId id) const {
    if (id < 0 || static_cast<std::size_t>(id) >= marks.size()) return nullptr;
    return &marks[static_cast<std::size_t>(id)];
  }

  std::size_t legend_index(std::string_view category) const {
    for (std::size_t i = 0; i < legend.size(); ++i) {
      if (legend[i].category == category) return i;
    }
    return legend.size();
  }

  RowSet visible_rows() const {
    RowSet rows;
    for (const auto& m : marks) rows.insert(m.rows.begin(), m.rows.end());
    return rows;
  }
};

namespace detail {

inline std::vector<std::string> band_categories(const Dataset& data, std::size_t col, FieldType type,
                                                const std::vector<RowId>& rows) {
  std::vector<std::string> cats;
  if (type == FieldType::Temporal) {
    std::vector<double> values;
    for (RowId r : rows) values.push_back(data.number(r, col));
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    for (double v : values) cats.push_back(format_iso8601(v));
    return cats;
  }
  for (RowId r : rows) {
    const auto& s = data.text(r, col);
    if (std::find(cats.begin(), cats.end(), s) == cats.end()) cats.push_back(s);
  }
  return cats;
}

inline std::string band_key(const Dataset& data, RowId row, std::size_t col, FieldType type) {
  return type == FieldType::Temporal ? format_iso8601(data.number(row, col)) : data.text(row, col);
}

inline Domain numeric_fit(FieldType type, const std::vector<double>& values) {
  if (values.empty()) throw Error(ErrorCode::EmptyDomain, "cannot fit a scale to no values");
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  return padded_numeric_domain(scale_kind_for(type), *lo, *hi);
}

}  // namespace detail

/// Per-category y totals for a bar chart over `rows`, keyed by band category.
inline std::map<std::string, double> bar_totals(const ChartSpec& spec, const Dataset& data,
                                                const std::vector<RowId>& rows) {
  const auto xc = data.column(spec.x.field);
  const auto yc = data.column(spec.y.field);
  std::map<std::string, double> totals;
  for (RowId r : rows) totals[detail::band_key(data, r, xc, spec.x.type)] += data.number(r, yc);
  return totals;
}

/// Domains used when the view carries no override: fitted to `rows` of the
/// data (all rows for the base view, the selection when focusing).
inline Domain fitted_x_domain(const ChartSpec& spec, const Dataset& data, const std::vector<RowId>& rows) {
  const auto xc = data.column(spec.x.field);
  if (spec.type == ChartType::Bar) return {ScaleKind::Band, 0.0, 0.0, detail::band_categories(data, xc, spec.x.type, rows)};
  std::vector<double> xs;
  for (RowId r : rows) xs.push_back(data.number(r, xc));
  return detail::numeric_fit(spec.x.type, xs);
}

inline Domain fitted_y_domain(const ChartSpec& spec, const Dataset& data, const std::vector<RowId>& rows) {
  std::vector<double> ys;
  if (spec.type == ChartType::Bar) {
    // Bars grow from a zero baseline, so zero is always part of the fit.
    ys.push_back(0.0);
    for (const auto& [_, total] : bar_totals(spec, data, rows)) ys.push_back(total);
    Domain d = detail::numeric_fit(spec.y.type, ys);
    const auto [lo, hi] = std::minmax_element(ys.begin(), ys.end());
    if (*lo == 0.0 && *hi > 0.0) d.lo = 0.0;  // padding only above the baseline
    if (*hi == 0.0 && *lo < 0.0) d.hi = 0.0;
    return d;
  } else {
    const auto yc = data.column(spec.y.field);
    for (RowId r : rows) ys.push_back(data.number(r, yc));
  }
  return detail::numeric_fit(spec.y.type, ys);
}

inline std::vector<std::string> color_categories(const ChartSpec& spec, const Dataset& data) {
  if (!spec.color) return {};
  return detail::band_categories(data, data.column(spec.color->field), FieldType::Nominal, data.row_ids());
}

/// Lays out the visible rows of `view`. Scale domains come from the view's
/// overrides when present and are otherwise fitted to the whole dataset.
inline MarkScene layout(const ChartSpec& spec, const Dataset& data, const ViewState& view,
                        const LayoutConfig& cfg = {}) {
  validate(spec, data, cfg.axis_band);
  for (RowId r : view.visible) {
    if (r < 0 || static_cast<std::size_t>(r) >= data.size()) {
      throw Error(ErrorCode::SpecError, "visible row " + std::to_string(r) + " out of range");
    }
  }
  const auto all = data.row_ids();
  MarkScene scene;
  scene.chart = spec.type;
  scene.plot = spec.plot();
  if (data.empty()) throw Error(ErrorCode::EmptyDomain, "dataset has no rows");
  Domain xd = view.x_domain ? *view.x_domain : fitted_x_domain(spec, data, all);
  Domain yd = view.y_domain ? *view.y_domain : fitted_y_domain(spec, data, all);
  if (xd.is_band() != (spec.type == ChartType::Bar) || yd.is_band()) {
    throw Error(ErrorCode::SpecError, "domain override does not fit the chart's scale kinds");
  }
  scene.x_scale = Scale(std::move(xd), 0.0, spec.width);
  scene.y_scale = Scale(std::move(yd), spec.height, 0.0);
  scene.x_axis_band = {0.0, spec.height, spec.width, cfg.axis_band};
  scene.y_axis_band = {-cfg.axis_band, 0.0, cfg.axis_band, spec.height};

  const auto xc = data.column(spec.x.field);
  const auto yc = data.column(spec.y.field);
  const std::optional<std::size_t> cc = spec.color ? std::optional(data.column(spec.color->field)) : std::nullopt;
  auto category_of = [&](RowId r) { return cc ? data.text(r, *cc) : std::string(); };
  auto push_point = [&](std::vector<RowId> rows, MarkShape shape, double xv, double yv, std::string cat) {
    Mark m;
    m.id = static_cast<MarkId>(scene.marks.size());
    m.rows = std::move(rows);
    m.shape = shape;
    m.x_value = xv;
    m.y_value = yv;
    m.center = {scene.x_scale.apply(xv), scene.y_scale.apply(yv)};
    m.bounds = {m.center.x - cfg.point_radius, m.center.y - cfg.point_radius, 2 * cfg.point_radius,
                2 * cfg.point_radius};
    m.category = std::move(cat);
    m.clipped = !scene.plot.contains(m.center);
    scene.marks.push_back(std::move(m));
  };

  const auto categories = color_categories(spec, data);
  switch (spec.type) {
    case ChartType::Scatter:
      for (RowId r : view.visible) push_point({r}, MarkShape::Point, data.number(r, xc), data.number(r, yc), category_of(r));
      break;
    case ChartType::Multiline: {
      std::vector<RowId> ordered(view.visible.begin(), view.visible.end());
      std::stable_sort(ordered.begin(), ordered.end(), [&](RowId a, RowId b) {
        const auto ia = std::find(categories.begin(), categories.end(), data.text(a, *cc)) - categories.begin();
        const auto ib = std::find(categories.begin(), categories.end(), data.text(b, *cc)) - categories.begin();
        if (ia != ib) return ia < ib;
        return data.number(a, xc) < data.number(b, xc);
      });
      for (RowId r : ordered) push_point({r}, MarkShape::LineVertex, data.number(r, xc), data.number(r, yc), category_of(r));
      break;
    }
    case ChartType::Bar: {
      const auto& cats = scene.x_scale.domain().categories;
      std::vector<std::vector<RowId>> by_band(cats.size());
      for (RowId r : view.visible) {
        const auto idx = scene.x_scale.band_index(detail::band_key(data, r, xc, spec.x.type));
        if (!idx) throw Error(ErrorCode::SpecError, "visible row " + std::to_string(r) + " has no band in the x domain");
        by_band[*idx].push_back(r);
      }
      const double bw = scene.x_scale.bandwidth();
      for (std::size_t i = 0; i < cats.size(); ++i) {
        if (by_band[i].empty()) continue;
        double total = 0.0;
        for (RowId r : by_band[i]) total += data.number(r, yc);
        const double top = scene.y_scale.apply(std::max(total, 0.0));
        const double base = scene.y_scale.apply(std::min(total, 0.0));
        Mark m;
        m.id = static_cast<MarkId>(scene.marks.size());
        m.rows = std::move(by_band[i]);
        m.shape = MarkShape::Rect;
        m.bounds = {scene.x_scale.band_start(i) + 0.1 * bw, top, 0.8 * bw, base - top};
        m.center = m.bounds.center();
        m.x_value = static_cast<double>(i);
        m.y_value = total;
        m.clipped = !scene.plot.contains(m.center);
        scene.marks.push_back(std::move(m));
      }
      break;
    }
  }

  if (spec.color) {
    const double left = spec.width + cfg.legend_gap;
    const double width = std::max(spec.margins.right - cfg.legend_gap, 1.0);
    RowSet shown;
    std::vector<bool> present(categories.size(), false);
    for (RowId r : view.visible) {
      const auto it = std::find(categories.begin(), categories.end(), data.text(r, *cc));
      present[static_cast<std::size_t>(it - categories.begin())] = true;
    }
    for (std::size_t i = 0; i < categories.size(); ++i) {
      scene.legend.push_back({categories[i],
                              {left, static_cast<double>(i) * cfg.legend_row_height, width, cfg.legend_row_height},
                              !present[i]});
    }
  }
  return scene;
}

enum class HitKind { Mark, Legend, AxisX, AxisY, Background };

constexpr std::string_view to_string(HitKind k) {
  switch (k) {
    case HitKind::Mark: return "mark";
    case HitKind::Legend: return "legend";
    case HitKind::AxisX: return "axisX";
    case HitKind::AxisY: return "axisY";
    case HitKind::Background: return "background";
  }
  return "background";
}

struct HitTarget {
  HitKind kind = HitKind::Background;
  MarkId mark = -1;
  std::string category;
  friend bool operator==(const HitTarget&, const HitTarget&) = default;
};

/// Total: always returns something. Marks beat legend beats axis bands beats
/// background; among marks the nearest center wins, ties to the lower id.
inline HitTarget hit_test(const MarkScene& scene, Point pos, double tolerance) {
  const Mark* best = nullptr;
  double best_dist = std::numeric_limits<double>::infinity();
  for (const auto& m : scene.marks) {
    const double d = distance(m.center, pos);
    if (d > tolerance && !m.bounds.contains(pos)) continue;
    if (d < best_dist) {
      best = &m;
      best_dist = d;
    }
  }
  if (best) return {HitKind::Mark, best->id, best->category};
  for (const auto& e : scene.legend) {
    if (e.bounds.contains(pos)) return {HitKind::Legend, -1, e.category};
  }
  if (scene.x_axis_band.contains(pos)) return {HitKind::AxisX, -1, {}};
  if (scene.y_axis_band.contains(pos)) return {HitKind::AxisY, -1, {}};
  return {};
}

}  // namespace touchvis
