#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "touchvis/data.hpp"
#include "touchvis/error.hpp"
#include "touchvis/view_state.hpp"

namespace touchvis {

/// Merge defaults follow the x encoding: group by x, summarise y.
inline AggregateSpec default_aggregate_spec(const ChartSpec& spec) {
  AggregateSpec agg;
  agg.group_by = spec.x.field;
  agg.measure = spec.y.field;
  agg.op = spec.y.type == FieldType::Quantitative ? AggregateOp::Mean : AggregateOp::Count;
  return agg;
}

struct Bin {
  double lo = 0.0;
  double hi = 0.0;
  bool closed = false;  // only the last bin includes hi
  friend bool operator==(const Bin&, const Bin&) = default;
};

namespace detail {

// m * 10^k, computed so that negative exponents divide by an exact power of ten.
inline double scaled_decimal(double m, int k) {
  return k >= 0 ? m * std::pow(10.0, k) : m / std::pow(10.0, -k);
}

}  // namespace detail

/// Smallest value of the form {1,2,5} x 10^k that is >= raw_step.
inline double nice_step(double raw_step) {
  const int e = static_cast<int>(std::floor(std::log10(raw_step)));
  for (int k = e - 1; k <= e + 1; ++k) {
    for (double m : {1.0, 2.0, 5.0}) {
      const double c = detail::scaled_decimal(m, k);
      if (c >= raw_step) return c;
    }
  }
  return detail::scaled_decimal(1.0, e + 2);
}

/// Bins at multiples of a nice step covering [min, max]; the last bin is closed.
inline std::vector<Bin> nice_bins(std::span<const double> values, int target_bins) {
  if (values.empty()) throw Error(ErrorCode::EmptyDomain, "cannot bin no values");
  if (target_bins < 1) throw Error(ErrorCode::SpecError, "target bin count must be positive");
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double min = *lo_it;
  const double max = *hi_it;
  if (min == max) return {{min, max, true}};

  double step = nice_step((max - min) / target_bins);
  for (;;) {
    // Recover the (m, k) decomposition so edges are k-multiples of an exact decimal.
    const int e = static_cast<int>(std::floor(std::log10(step) + 1e-9));
    const double m = std::round(step / detail::scaled_decimal(1.0, e));
    auto edge = [&](double i) { return detail::scaled_decimal(i * m, e); };
    double k0 = std::floor(min / step);
    double k1 = std::ceil(max / step);
    while (edge(k0) > min) k0 -= 1.0;
    while (edge(k0 + 1.0) <= min) k0 += 1.0;
    while (edge(k1) < max) k1 += 1.0;
    while (k1 - 1.0 > k0 && edge(k1 - 1.0) >= max) k1 -= 1.0;
    const int count = static_cast<int>(k1 - k0);
    if (count <= target_bins + 1) {
      std::vector<Bin> bins;
      for (int i = 0; i < count; ++i) bins.push_back({edge(k0 + i), edge(k0 + i + 1), i == count - 1});
      return bins;
    }
    step = nice_step(step * 1.5);
  }
}

/// Index of the bin holding v (half-open bins, closed last bin).
inline std::size_t bin_index(const std::vector<Bin>& bins, double v) {
  auto it = std::upper_bound(bins.begin(), bins.end(), v, [](double x, const Bin& b) { return x < b.lo; });
  const auto idx = static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - bins.begin() - 1, 0));
  return std::min(idx, bins.size() - 1);
}

inline std::string bin_label(const Bin& b, FieldType type) {
  if (b.lo == b.hi) return "[" + format_value(b.lo, type) + ", " + format_value(b.hi, type) + "]";
  return "[" + format_value(b.lo, type) + ", " + format_value(b.hi, type) + (b.closed ? "]" : ")");
}

/// Applies `op` to a non-empty group. Median of an even group averages the two middle values.
inline double apply_aggregate(AggregateOp op, std::vector<double> values) {
  switch (op) {
    case AggregateOp::Count: return static_cast<double>(values.size());
    case AggregateOp::Sum: {
      double s = 0.0;
      for (double v : values) s += v;
      return s;
    }
    case AggregateOp::Mean: {
      double s = 0.0;
      for (double v : values) s += v;
      return s / static_cast<double>(values.size());
    }
    case AggregateOp::Min: return *std::min_element(values.begin(), values.end());
    case AggregateOp::Max: return *std::max_element(values.begin(), values.end());
    case AggregateOp::Median: {
      std::sort(values.begin(), values.end());
      const std::size_t n = values.size();
      return n % 2 == 1 ? values[n / 2] : (values[n / 2 - 1] + values[n / 2]) / 2.0;
    }
  }
  return 0.0;
}

inline std::string aggregate_field_name(const AggregateSpec& agg) {
  if (agg.op == AggregateOp::Count) return "count";
  return std::string(to_string(agg.op)) + "(" + agg.measure + ")";
}

inline void validate(const AggregateSpec& agg, const Dataset& data) {
  const auto gcol = data.find(agg.group_by);
  if (!gcol) throw Error(ErrorCode::SpecError, "group-by field '" + agg.group_by + "' not in schema");
  if (agg.target_bins < 1) throw Error(ErrorCode::SpecError, "target bin count must be positive");
  if (agg.op == AggregateOp::Count) return;
  const auto mcol = data.find(agg.measure);
  if (!mcol) throw Error(ErrorCode::SpecError, "measure field '" + agg.measure + "' not in schema");
  if (data.schema()[*mcol].type != FieldType::Quantitative) {
    throw Error(ErrorCode::SpecError, "measure '" + agg.measure + "' must be quantitative for " +
                                          std::string(to_string(agg.op)));
  }
}

struct DerivedChart {
  Dataset data;
  ChartSpec spec;
};

/// The bar chart summarising `rows` of the base data under `agg`: one row
/// per non-empty group, groups ordered by bin (numeric) or first appearance.
inline DerivedChart derive_aggregate(const Dataset& data, const ChartSpec& base, const AggregateSpec& agg,
                                     const RowSet& rows) {
  validate(agg, data);
  if (rows.empty()) throw Error(ErrorCode::AggregateRequiresSelection, "aggregation needs a selection");
  const auto gcol = data.column(agg.group_by);
  const FieldType gtype = data.schema()[gcol].type;
  const bool counting = agg.op == AggregateOp::Count;
  const std::size_t mcol = counting ? gcol : data.column(agg.measure);
  auto measure = [&](RowId r) { return counting ? 0.0 : data.number(r, mcol); };

  std::vector<std::string> labels;
  std::vector<std::vector<double>> members;
  if (is_numeric(gtype)) {
    std::vector<double> keys;
    for (RowId r : rows) keys.push_back(data.number(r, gcol));
    const auto bins = nice_bins(keys, agg.target_bins);
    std::vector<std::vector<double>> per_bin(bins.size());
    for (RowId r : rows) per_bin[bin_index(bins, data.number(r, gcol))].push_back(measure(r));
    for (std::size_t i = 0; i < bins.size(); ++i) {
      if (per_bin[i].empty()) continue;
      labels.push_back(bin_label(bins[i], gtype));
      members.push_back(std::move(per_bin[i]));
    }
  } else {
    for (RowId r : rows) {
      const auto& key = data.text(r, gcol);
      auto it = std::find(labels.begin(), labels.end(), key);
      if (it == labels.end()) {
        labels.push_back(key);
        members.emplace_back();
        it = labels.end() - 1;
      }
      members[static_cast<std::size_t>(it - labels.begin())].push_back(measure(r));
    }
  }

  std::string value_name = aggregate_field_name(agg);
  if (value_name == agg.group_by) value_name += "_value";
  std::vector<std::vector<Value>> out_rows;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out_rows.push_back({labels[i], apply_aggregate(agg.op, std::move(members[i]))});
  }
  DerivedChart out{Dataset({{agg.group_by, FieldType::Nominal}, {value_name, FieldType::Quantitative}},
                           std::move(out_rows)),
                   base};
  out.spec.type = ChartType::Bar;
  out.spec.x = {agg.group_by, FieldType::Nominal};
  out.spec.y = {value_name, FieldType::Quantitative};
  out.spec.color.reset();
  return out;
}

struct AggregateResult {
  Dataset data;
  ChartSpec spec;
  ViewState view;
};

/// Aggregates the selected base rows into a bar chart view that remembers
/// its base selection (so operator/encoding changes re-aggregate the same rows).
inline AggregateResult aggregate_selection(const Dataset& data, const ChartSpec& spec, const Selection& selection,
                                           const AggregateSpec& agg) {
  if (selection.empty()) throw Error(ErrorCode::AggregateRequiresSelection, "aggregation needs a selection");
  auto derived = derive_aggregate(data, spec, agg, selection.rows);
  ViewState view = initial_view(derived.data);
  view.aggregate = AggregateView{agg, selection.rows};
  return {std::move(derived.data), std::move(derived.spec), std::move(view)};
}

}  // namespace touchvis
