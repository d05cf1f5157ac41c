#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "touchvis/data.hpp"
#include "touchvis/scale.hpp"

namespace touchvis {

using RowSet = std::set<RowId>;

enum class Provenance { None, Tap, Legend, Lasso, AxisTap };

constexpr std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::None: return "none";
    case Provenance::Tap: return "tap";
    case Provenance::Legend: return "legend";
    case Provenance::Lasso: return "lasso";
    case Provenance::AxisTap: return "axisTap";
  }
  return "none";
}

/// Selected rows. `provenance` is None exactly when `rows` is empty.
struct Selection {
  RowSet rows;
  Provenance provenance = Provenance::None;

  bool empty() const { return rows.empty(); }
  friend bool operator==(const Selection&, const Selection&) = default;
};

enum class AggregateOp { Count, Sum, Mean, Min, Max, Median };

constexpr std::string_view to_string(AggregateOp op) {
  switch (op) {
    case AggregateOp::Count: return "count";
    case AggregateOp::Sum: return "sum";
    case AggregateOp::Mean: return "mean";
    case AggregateOp::Min: return "min";
    case AggregateOp::Max: return "max";
    case AggregateOp::Median: return "median";
  }
  return "count";
}

inline std::optional<AggregateOp> parse_aggregate_op(std::string_view s) {
  for (auto op : {AggregateOp::Count, AggregateOp::Sum, AggregateOp::Mean, AggregateOp::Min, AggregateOp::Max,
                  AggregateOp::Median}) {
    if (to_string(op) == s) return op;
  }
  return std::nullopt;
}

struct AggregateSpec {
  std::string group_by;
  AggregateOp op = AggregateOp::Count;
  std::string measure;  // ignored for count
  int target_bins = 10;
  friend bool operator==(const AggregateSpec&, const AggregateSpec&) = default;
};

/// Marks a view as showing an aggregate of `base_selection` (row ids of the
/// base dataset) rather than the base chart.
struct AggregateView {
  AggregateSpec spec;
  RowSet base_selection;
  friend bool operator==(const AggregateView&, const AggregateView&) = default;
};

/// The discrete, undoable part of a session. Row ids refer to the dataset
/// currently displayed (the derived one while `aggregate` is set).
struct ViewState {
  RowSet visible;
  std::optional<Domain> x_domain;
  std::optional<Domain> y_domain;
  Selection selection;
  std::optional<AggregateView> aggregate;

  friend bool operator==(const ViewState&, const ViewState&) = default;
};

inline ViewState initial_view(const Dataset& data) {
  ViewState v;
  for (RowId id : data.row_ids()) v.visible.insert(id);
  return v;
}

}  // namespace touchvis
