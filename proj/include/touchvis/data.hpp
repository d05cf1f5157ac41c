#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "touchvis/error.hpp"

namespace touchvis {

using RowId = int;

struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

inline double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

struct Rect {
  double left = 0.0;
  double top = 0.0;
  double width = 0.0;
  double height = 0.0;

  double right() const { return left + width; }
  double bottom() const { return top + height; }
  Point center() const { return {left + width / 2.0, top + height / 2.0}; }
  // Closed on all sides.
  bool contains(Point p) const {
    return p.x >= left && p.x <= right() && p.y >= top && p.y <= bottom();
  }
  friend bool operator==(const Rect&, const Rect&) = default;
};

enum class FieldType { Nominal, Quantitative, Temporal };

constexpr std::string_view to_string(FieldType t) {
  switch (t) {
    case FieldType::Nominal: return "nominal";
    case FieldType::Quantitative: return "quantitative";
    case FieldType::Temporal: return "temporal";
  }
  return "nominal";
}

inline FieldType parse_field_type(std::string_view s) {
  if (s == "nominal") return FieldType::Nominal;
  if (s == "quantitative") return FieldType::Quantitative;
  if (s == "temporal") return FieldType::Temporal;
  throw Error(ErrorCode::SpecError, "unknown field type '" + std::string(s) + "'");
}

inline bool is_numeric(FieldType t) { return t != FieldType::Nominal; }

/// Quantitative and temporal values are doubles (temporal = epoch milliseconds),
/// nominal values are strings.
using Value = std::variant<double, std::string>;

/// Renders a number with 9 significant digits; -0 prints as 0.
inline std::string format_number(double v) {
  if (v == 0.0) v = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

/// Parses `YYYY-MM-DD`, optionally followed by `THH:MM[:SS[.fff]][Z]`, as UTC.
inline std::optional<double> parse_iso8601(std::string_view s) {
  auto digits = [&](std::size_t pos, std::size_t n) -> std::optional<int> {
    if (pos + n > s.size()) return std::nullopt;
    int v = 0;
    for (std::size_t i = pos; i < pos + n; ++i) {
      if (s[i] < '0' || s[i] > '9') return std::nullopt;
      v = v * 10 + (s[i] - '0');
    }
    return v;
  };
  auto y = digits(0, 4);
  auto mo = digits(5, 2);
  auto d = digits(8, 2);
  if (!y || !mo || !d || s.size() < 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
  using namespace std::chrono;
  const year_month_day ymd{year{*y}, month{static_cast<unsigned>(*mo)}, day{static_cast<unsigned>(*d)}};
  if (!ymd.ok()) return std::nullopt;
  double ms = static_cast<double>(sys_days{ymd}.time_since_epoch().count()) * 86'400'000.0;
  if (s.size() == 10) return ms;
  if (s[10] != 'T' && s[10] != ' ') return std::nullopt;
  auto hh = digits(11, 2);
  auto mm = digits(14, 2);
  if (!hh || !mm || s.size() < 16 || s[13] != ':' || *hh > 23 || *mm > 59) return std::nullopt;
  std::size_t pos = 16;
  int ss = 0;
  int frac = 0;
  if (pos < s.size() && s[pos] == ':') {
    auto sec = digits(pos + 1, 2);
    if (!sec || *sec > 59) return std::nullopt;
    ss = *sec;
    pos += 3;
    if (pos < s.size() && s[pos] == '.') {
      auto f = digits(pos + 1, 3);
      if (!f) return std::nullopt;
      frac = *f;
      pos += 4;
    }
  }
  if (pos < s.size() && s[pos] == 'Z') ++pos;
  if (pos != s.size()) return std::nullopt;
  return ms + ((*hh * 60.0 + *mm) * 60.0 + ss) * 1000.0 + frac;
}

/// Dates at UTC midnight render as `YYYY-MM-DD`, anything else as a full timestamp.
inline std::string format_iso8601(double epoch_ms) {
  using namespace std::chrono;
  const auto total = static_cast<std::int64_t>(std::llround(epoch_ms));
  std::int64_t day_count = total / 86'400'000;
  std::int64_t rem = total % 86'400'000;
  if (rem < 0) {
    rem += 86'400'000;
    --day_count;
  }
  const year_month_day ymd{sys_days{days{day_count}}};
  char buf[40];
  if (rem == 0) {
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  } else {
    const auto secs = rem / 1000;
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02d.%03dZ", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                  static_cast<int>(secs / 3600), static_cast<int>(secs / 60 % 60),
                  static_cast<int>(secs % 60), static_cast<int>(rem % 1000));
  }
  return buf;
}

inline std::string format_value(const Value& v, FieldType type) {
  if (const auto* s = std::get_if<std::string>(&v)) return *s;
  const double d = std::get<double>(v);
  return type == FieldType::Temporal ? format_iso8601(d) : format_number(d);
}

struct Field {
  std::string name;
  FieldType type = FieldType::Nominal;
  friend bool operator==(const Field&, const Field&) = default;
};

/// Typed table. Row ids are the dense indices 0..size()-1.
class Dataset {
 public:
  using Rows = std::vector<std::vector<Value>>;

  Dataset() = default;

  Dataset(std::vector<Field> schema, std::vector<std::vector<Value>> rows)
      : schema_(std::move(schema)), rows_(std::move(rows)) {
    for (std::size_t i = 0; i < schema_.size(); ++i) {
      if (!index_.emplace(schema_[i].name, i).second) {
        throw Error(ErrorCode::SpecError, "duplicate field '" + schema_[i].name + "'");
      }
    }
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (rows_[r].size() != schema_.size()) {
        throw Error(ErrorCode::SpecError, "row " + std::to_string(r) + " has " +
                                              std::to_string(rows_[r].size()) + " values, schema has " +
                                              std::to_string(schema_.size()));
      }
      for (std::size_t c = 0; c < schema_.size(); ++c) {
        const bool numeric = std::holds_alternative<double>(rows_[r][c]);
        if (numeric != is_numeric(schema_[c].type)) {
          throw Error(ErrorCode::SpecError, "row " + std::to_string(r) + " field '" + schema_[c].name +
                                                "' does not match its declared type");
        }
        if (numeric && !std::isfinite(std::get<double>(rows_[r][c]))) {
          throw Error(ErrorCode::SpecError, "row " + std::to_string(r) + " field '" + schema_[c].name +
                                                "' is not finite");
        }
      }
    }
  }

  std::size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }
  const std::vector<Field>& schema() const { return schema_; }

  std::optional<std::size_t> find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t column(std::string_view name) const {
    if (auto c = find(name)) return *c;
    throw Error(ErrorCode::SpecError, "unknown field '" + std::string(name) + "'");
  }

  const Field& field(std::string_view name) const { return schema_[column(name)]; }

  const Value& at(RowId row, std::size_t col) const { return rows_.at(static_cast<std::size_t>(row)).at(col); }
  double number(RowId row, std::size_t col) const { return std::get<double>(at(row, col)); }
  const std::string& text(RowId row, std::size_t col) const { return std::get<std::string>(at(row, col)); }

  std::vector<RowId> row_ids() const {
    std::vector<RowId> ids(rows_.size());
    for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<RowId>(i);
    return ids;
  }

  friend bool operator==(const Dataset& a, const Dataset& b) {
    return a.schema_ == b.schema_ && a.rows_ == b.rows_;
  }

 private:
  std::vector<Field> schema_;
  std::vector<std::vector<Value>> rows_;
  std::unordered_map<std::string, std::size_t> index_;
};

enum class ChartType { Scatter, Bar, Multiline };

constexpr std::string_view to_string(ChartType t) {
  switch (t) {
    case ChartType::Scatter: return "scatter";
    case ChartType::Bar: return "bar";
    case ChartType::Multiline: return "multiline";
  }
  return "scatter";
}

inline ChartType parse_chart_type(std::string_view s) {
  if (s == "scatter") return ChartType::Scatter;
  if (s == "bar") return ChartType::Bar;
  if (s == "multiline") return ChartType::Multiline;
  throw Error(ErrorCode::SpecError, "unknown chart type '" + std::string(s) + "'");
}

struct Encoding {
  std::string field;
  FieldType type = FieldType::Quantitative;
  friend bool operator==(const Encoding&, const Encoding&) = default;
};

struct Margins {
  double left = 56.0;
  double right = 120.0;
  double top = 16.0;
  double bottom = 56.0;
  friend bool operator==(const Margins&, const Margins&) = default;
};

/// Declarative chart description. Geometry is in device-independent pixels;
/// the plot area spans [0,width] x [0,height] and the margins surround it.
struct ChartSpec {
  ChartType type = ChartType::Scatter;
  Encoding x;
  Encoding y;
  std::optional<Encoding> color;
  double width = 320.0;
  double height = 320.0;
  Margins margins;

  Rect plot() const { return {0.0, 0.0, width, height}; }
  Rect viewport() const {
    return {-margins.left, -margins.top, width + margins.left + margins.right,
            height + margins.top + margins.bottom};
  }
  friend bool operator==(const ChartSpec&, const ChartSpec&) = default;
};

/// Throws SpecError when the chart cannot be drawn from `data`.
inline void validate(const ChartSpec& spec, const Dataset& data, double axis_band = 48.0) {
  auto check_encoding = [&](const Encoding& e, const char* channel) {
    const auto col = data.find(e.field);
    if (!col) throw Error(ErrorCode::SpecError, std::string(channel) + " field '" + e.field + "' not in schema");
    if (data.schema()[*col].type != e.type) {
      throw Error(ErrorCode::SpecError, std::string(channel) + " field '" + e.field + "' is " +
                                            std::string(to_string(data.schema()[*col].type)) + ", encoding says " +
                                            std::string(to_string(e.type)));
    }
  };
  check_encoding(spec.x, "x");
  check_encoding(spec.y, "y");
  if (spec.color) check_encoding(*spec.color, "color");
  if (!(spec.width > 0.0) || !(spec.height > 0.0)) throw Error(ErrorCode::SpecError, "plot size must be positive");
  const Margins& m = spec.margins;
  if (m.left < axis_band || m.right < axis_band || m.top < 0.0 || m.bottom < axis_band) {
    throw Error(ErrorCode::SpecError, "left/right/bottom margins must be at least the axis band width");
  }
  switch (spec.type) {
    case ChartType::Scatter:
      if (spec.x.type != FieldType::Quantitative || spec.y.type != FieldType::Quantitative) {
        throw Error(ErrorCode::SpecError, "scatter needs quantitative x and y");
      }
      break;
    case ChartType::Bar:
      if (spec.x.type == FieldType::Quantitative || spec.y.type != FieldType::Quantitative) {
        throw Error(ErrorCode::SpecError, "bar needs nominal or temporal x and quantitative y");
      }
      break;
    case ChartType::Multiline:
      if (!spec.color) throw Error(ErrorCode::SpecError, "multiline needs a color (series) encoding");
      if (spec.color->type != FieldType::Nominal) throw Error(ErrorCode::SpecError, "series field must be nominal");
      if (spec.x.type == FieldType::Nominal || spec.y.type != FieldType::Quantitative) {
        throw Error(ErrorCode::SpecError, "multiline needs numeric x and quantitative y");
      }
      break;
  }
  if (spec.color && spec.color->type != FieldType::Nominal) {
    throw Error(ErrorCode::SpecError, "color field must be nominal");
  }
}

}  // namespace touchvis
