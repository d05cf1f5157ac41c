#pragma once

#include <algorithm>
#include <span>
#include <string>
#include <vector>

#include "touchvis/data.hpp"
#include "touchvis/error.hpp"
#include "touchvis/inspect.hpp"
#include "touchvis/scene.hpp"
#include "touchvis/view_state.hpp"

namespace touchvis {

/// Adds `rows` unless every one of them is already selected, in which case
/// they are removed.
inline Selection toggle_rows(const Selection& current, const std::vector<RowId>& rows, Provenance provenance) {
  Selection out = current;
  const bool all_selected =
      std::all_of(rows.begin(), rows.end(), [&](RowId r) { return current.rows.count(r) != 0; });
  if (all_selected) {
    for (RowId r : rows) out.rows.erase(r);
  } else {
    out.rows.insert(rows.begin(), rows.end());
  }
  out.provenance = out.rows.empty() ? Provenance::None : provenance;
  return out;
}

inline Selection tap_select(const MarkScene& scene, const Selection& current, Point pos, double tolerance) {
  const HitTarget hit = hit_test(scene, pos, tolerance);
  if (hit.kind != HitKind::Mark) throw Error(ErrorCode::NoTarget, "tap did not hit a mark");
  return toggle_rows(current, scene.marks[static_cast<std::size_t>(hit.mark)].rows, Provenance::Tap);
}

/// Toggles every visible row whose color value is `category`.
inline Selection legend_select(const MarkScene& scene, const ChartSpec& spec, const Dataset& data,
                               const Selection& current, std::string_view category) {
  if (!spec.color || scene.legend_index(category) == scene.legend.size()) {
    throw Error(ErrorCode::NoTarget, "no legend entry '" + std::string(category) + "'");
  }
  const auto col = data.column(spec.color->field);
  std::vector<RowId> rows;
  for (RowId r : scene.visible_rows()) {
    if (data.text(r, col) == category) rows.push_back(r);
  }
  return toggle_rows(current, rows, Provenance::Legend);
}

namespace detail {

inline double cross(Point o, Point a, Point b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); }

inline bool on_segment(Point p, Point a, Point b) {
  return cross(a, b, p) == 0.0 && p.x >= std::min(a.x, b.x) && p.x <= std::max(a.x, b.x) &&
         p.y >= std::min(a.y, b.y) && p.y <= std::max(a.y, b.y);
}

}  // namespace detail

/// Even-odd containment, closed boundary. The polygon is implicitly closed.
inline bool polygon_contains(std::span<const Point> poly, Point p) {
  bool inside = false;
  for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
    const Point a = poly[j];
    const Point b = poly[i];
    if (detail::on_segment(p, a, b)) return true;
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x_at = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x_at) inside = !inside;
    }
  }
  return inside;
}

inline bool degenerate_polygon(std::span<const Point> poly) {
  std::vector<Point> distinct;
  for (Point p : poly) {
    if (std::find(distinct.begin(), distinct.end(), p) == distinct.end()) distinct.push_back(p);
  }
  if (distinct.size() < 3) return true;
  // A self-intersecting lasso can have zero net area and still enclose
  // something, so only an all-collinear path counts as degenerate.
  return std::all_of(distinct.begin() + 2, distinct.end(),
                     [&](Point p) { return detail::cross(distinct[0], distinct[1], p) == 0.0; });
}

/// Replaces the selection with the rows of every mark whose center lies in
/// the lasso. A degenerate lasso clears the selection.
inline Selection lasso_select(const MarkScene& scene, std::span<const Point> polygon) {
  Selection out;
  if (degenerate_polygon(polygon)) return out;
  for (const auto& m : scene.marks) {
    if (polygon_contains(polygon, m.center)) out.rows.insert(m.rows.begin(), m.rows.end());
  }
  out.provenance = out.rows.empty() ? Provenance::None : Provenance::Lasso;
  return out;
}

/// Selects what the inspection lines currently highlight; without an active
/// inspection the selection is returned unchanged.
inline Selection axis_tap_select(const MarkScene& scene, const InspectionState& inspection, const Selection& current) {
  if (!inspection.any_active() || inspection.active_marks.empty()) return current;
  Selection out;
  for (MarkId id : inspection.active_marks) {
    const auto& rows = scene.marks[static_cast<std::size_t>(id)].rows;
    out.rows.insert(rows.begin(), rows.end());
  }
  out.provenance = Provenance::AxisTap;
  return out;
}

/// Inclusive filter plus zoom: keeps only the selected rows and refits the
/// scales to them.
inline ViewState focus(const ViewState& view, const Selection& selection, const ChartSpec& spec, const Dataset& data) {
  if (selection.empty()) throw Error(ErrorCode::FocusRequiresSelection, "focus needs a selection");
  const std::vector<RowId> rows(selection.rows.begin(), selection.rows.end());
  ViewState out = view;
  out.visible = selection.rows;
  if (spec.type == ChartType::Bar) {
    const Domain current = view.x_domain ? *view.x_domain : fitted_x_domain(spec, data, data.row_ids());
    const Domain represented = fitted_x_domain(spec, data, rows);
    Domain restricted{ScaleKind::Band, 0.0, 0.0, {}};
    for (const auto& c : current.categories) {
      if (std::find(represented.categories.begin(), represented.categories.end(), c) != represented.categories.end()) {
        restricted.categories.push_back(c);
      }
    }
    out.x_domain = std::move(restricted);
  } else {
    out.x_domain = fitted_x_domain(spec, data, rows);
  }
  out.y_domain = fitted_y_domain(spec, data, rows);
  out.selection = {};
  return out;
}

/// Exclusive filter: hides the selected rows and keeps the scales as they are.
inline ViewState remove_selection(const ViewState& view, const Selection& selection) {
  if (selection.empty()) throw Error(ErrorCode::NoTarget, "nothing selected to remove");
  ViewState out = view;
  for (RowId r : selection.rows) out.visible.erase(r);
  if (out.visible.empty()) throw Error(ErrorCode::RemoveWouldEmptyView, "removing the selection would empty the view");
  out.selection = {};
  return out;
}

}  // namespace touchvis
