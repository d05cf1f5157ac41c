#pragma once

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "touchvis/config.hpp"
#include "touchvis/data.hpp"
#include "touchvis/error.hpp"
#include "touchvis/gesture.hpp"

namespace touchvis::io {

using nlohmann::json;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path + "'");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error(ErrorCode::IoError, "short write to '" + path + "'");
}

// ---------------------------------------------------------------------------
// Chart specs

/// A chart spec file also declares the data schema the chart expects.
struct ChartFile {
  ChartSpec spec;
  std::vector<Field> schema;
};

inline json to_json(const ChartFile& f) {
  auto enc = [](const Encoding& e) { return json{{"field", e.field}, {"type", std::string(to_string(e.type))}}; };
  json schema = json::array();
  for (const auto& field : f.schema) schema.push_back({{"name", field.name}, {"type", std::string(to_string(field.type))}});
  json j{{"chartType", std::string(to_string(f.spec.type))},
         {"x", enc(f.spec.x)},
         {"y", enc(f.spec.y)},
         {"width", f.spec.width},
         {"height", f.spec.height},
         {"margins",
          {{"left", f.spec.margins.left},
           {"right", f.spec.margins.right},
           {"top", f.spec.margins.top},
           {"bottom", f.spec.margins.bottom}}},
         {"schema", std::move(schema)}};
  if (f.spec.color) j["color"] = enc(*f.spec.color);
  return j;
}

inline ChartFile parse_chart_file(std::string_view text) {
  try {
    const json j = json::parse(text);
    auto enc = [](const json& e) { return Encoding{e.at("field").get<std::string>(), parse_field_type(e.at("type").get<std::string>())}; };
    ChartFile f;
    f.spec.type = parse_chart_type(j.at("chartType").get<std::string>());
    f.spec.x = enc(j.at("x"));
    f.spec.y = enc(j.at("y"));
    if (j.contains("color") && !j["color"].is_null()) f.spec.color = enc(j["color"]);
    f.spec.width = j.value("width", f.spec.width);
    f.spec.height = j.value("height", f.spec.height);
    if (j.contains("margins")) {
      const auto& m = j["margins"];
      f.spec.margins = {m.value("left", f.spec.margins.left), m.value("right", f.spec.margins.right),
                        m.value("top", f.spec.margins.top), m.value("bottom", f.spec.margins.bottom)};
    }
    for (const auto& field : j.at("schema")) {
      f.schema.push_back({field.at("name").get<std::string>(), parse_field_type(field.at("type").get<std::string>())});
    }
    return f;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("chart spec: ") + e.what());
  }
}

inline ChartFile load_chart_file(const std::string& path) { return parse_chart_file(read_file(path)); }

// ---------------------------------------------------------------------------
// Datasets

namespace detail {

// RFC 4180 records: quoted fields may contain commas, newlines and "" escapes.
inline std::vector<std::vector<std::string>> split_csv(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      record.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      if (any || !field.empty()) {
        record.push_back(std::move(field));
        records.push_back(std::move(record));
      }
      record.clear();
      field.clear();
      any = false;
    } else {
      field += c;
      any = true;
    }
  }
  if (quoted) throw Error(ErrorCode::ParseError, "unterminated quoted field");
  if (any || !field.empty()) {
    record.push_back(std::move(field));
    records.push_back(std::move(record));
  }
  return records;
}

inline Value parse_cell(std::string_view text, FieldType type, std::size_t row, const std::string& column) {
  auto fail = [&](const char* what) -> Error {
    return Error(ErrorCode::ParseError, "row " + std::to_string(row) + ", column '" + column + "': '" +
                                            std::string(text) + "' is not " + what);
  };
  switch (type) {
    case FieldType::Nominal: return std::string(text);
    case FieldType::Quantitative: {
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
      if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
        throw fail("a number");
      }
      return v;
    }
    case FieldType::Temporal: {
      if (auto ms = parse_iso8601(text)) return *ms;
      throw fail("an ISO-8601 date");
    }
  }
  return std::string(text);
}

}  // namespace detail

/// Comma-separated text with a header row. Columns are matched to `schema`
/// by name; extra columns are ignored. Rows are numbered from 1 in errors.
inline Dataset parse_csv(std::string_view text, const std::vector<Field>& schema) {
  const auto records = detail::split_csv(text);
  if (records.size() < 2) throw Error(ErrorCode::EmptyDataset, "no data rows");
  const auto& header = records.front();
  std::vector<std::size_t> source;
  for (const auto& f : schema) {
    auto it = std::find(header.begin(), header.end(), f.name);
    if (it == header.end()) throw Error(ErrorCode::ParseError, "missing column '" + f.name + "'");
    source.push_back(static_cast<std::size_t>(it - header.begin()));
  }
  std::vector<std::vector<Value>> rows;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.size() != header.size()) {
      throw Error(ErrorCode::ParseError, "row " + std::to_string(r) + " has " + std::to_string(rec.size()) +
                                             " fields, header has " + std::to_string(header.size()));
    }
    std::vector<Value> row;
    for (std::size_t c = 0; c < schema.size(); ++c) {
      row.push_back(detail::parse_cell(rec[source[c]], schema[c].type, r, schema[c].name));
    }
    rows.push_back(std::move(row));
  }
  return Dataset(schema, std::move(rows));
}

/// A JSON array of records. Numbers are accepted for numeric fields, strings
/// for nominal and temporal fields.
inline Dataset parse_json_records(std::string_view text, const std::vector<Field>& schema) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  if (!j.is_array()) throw Error(ErrorCode::ParseError, "records file must hold a JSON array");
  if (j.empty()) throw Error(ErrorCode::EmptyDataset, "no data rows");
  std::vector<std::vector<Value>> rows;
  std::size_t r = 0;
  for (const auto& rec : j) {
    ++r;
    std::vector<Value> row;
    for (const auto& f : schema) {
      if (!rec.contains(f.name)) {
        throw Error(ErrorCode::ParseError, "row " + std::to_string(r) + " lacks column '" + f.name + "'");
      }
      const auto& cell = rec[f.name];
      if (cell.is_number() && is_numeric(f.type)) {
        row.emplace_back(cell.get<double>());
      } else if (cell.is_string()) {
        row.push_back(detail::parse_cell(cell.get<std::string>(), f.type, r, f.name));
      } else {
        throw Error(ErrorCode::ParseError, "row " + std::to_string(r) + ", column '" + f.name + "': unexpected " +
                                               std::string(cell.type_name()));
      }
    }
    rows.push_back(std::move(row));
  }
  return Dataset(schema, std::move(rows));
}

inline Dataset load_dataset(const std::string& path, const std::vector<Field>& schema) {
  const std::string text = read_file(path);
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") return parse_json_records(text, schema);
  return parse_csv(text, schema);
}

// ---------------------------------------------------------------------------
// Input traces: JSON lines, a header record then one record per event.

inline constexpr int kTraceVersion = 1;

struct TraceHeader {
  int version = kTraceVersion;
  std::string chart_spec_ref;
  std::string dataset_ref;
  std::map<std::string, double> config_overrides;
  friend bool operator==(const TraceHeader&, const TraceHeader&) = default;
};

struct InputTrace {
  TraceHeader header;
  std::vector<RawInputEvent> events;
  friend bool operator==(const InputTrace&, const InputTrace&) = default;
};

inline json to_json(const RawInputEvent& e) {
  json j{{"t", e.t}, {"kind", std::string(to_string(e.kind))}};
  switch (e.kind) {
    case RawKind::TouchDown:
    case RawKind::TouchMove:
    case RawKind::TouchUp:
      j["pointer"] = e.pointer;
      j["x"] = e.pos.x;
      j["y"] = e.pos.y;
      break;
    case RawKind::MotionSample:
      j["ax"] = e.accel.x;
      j["ay"] = e.accel.y;
      j["az"] = e.accel.z;
      break;
    case RawKind::MenuCommand: j["command"] = e.command; break;
    case RawKind::JoystickToggle:
    case RawKind::Flush: break;
  }
  return j;
}

inline RawInputEvent event_from_json(const json& j) {
  RawInputEvent e;
  e.t = j.at("t").get<Millis>();
  const auto kind = parse_raw_kind(j.at("kind").get<std::string>());
  if (!kind) throw Error(ErrorCode::ParseError, "unknown event kind '" + j.at("kind").get<std::string>() + "'");
  e.kind = *kind;
  switch (e.kind) {
    case RawKind::TouchDown:
    case RawKind::TouchMove:
    case RawKind::TouchUp:
      e.pointer = j.at("pointer").get<int>();
      e.pos = {j.at("x").get<double>(), j.at("y").get<double>()};
      break;
    case RawKind::MotionSample:
      e.accel = {j.at("ax").get<double>(), j.at("ay").get<double>(), j.at("az").get<double>()};
      break;
    case RawKind::MenuCommand: e.command = j.at("command").get<std::string>(); break;
    case RawKind::JoystickToggle:
    case RawKind::Flush: break;
  }
  return e;
}

inline std::string serialize_trace(const InputTrace& trace) {
  json header{{"type", "header"},
              {"version", trace.header.version},
              {"chartSpecRef", trace.header.chart_spec_ref},
              {"datasetRef", trace.header.dataset_ref},
              {"configOverrides", trace.header.config_overrides}};
  std::string out = header.dump() + "\n";
  for (const auto& e : trace.events) out += to_json(e).dump() + "\n";
  return out;
}

inline InputTrace parse_trace(std::string_view text) {
  InputTrace trace;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json j = json::parse(line);
      if (!have_header) {
        if (j.value("type", "") != "header") throw Error(ErrorCode::ParseError, "first record must be the header");
        trace.header.version = j.at("version").get<int>();
        if (trace.header.version != kTraceVersion) {
          throw Error(ErrorCode::ParseError, "unsupported trace version " + std::to_string(trace.header.version));
        }
        trace.header.chart_spec_ref = j.value("chartSpecRef", "");
        trace.header.dataset_ref = j.value("datasetRef", "");
        if (j.contains("configOverrides")) {
          trace.header.config_overrides = j["configOverrides"].get<std::map<std::string, double>>();
        }
        have_header = true;
        continue;
      }
      RawInputEvent e = event_from_json(j);
      if (!trace.events.empty() && e.t < trace.events.back().t) {
        throw Error(ErrorCode::ParseError, "timestamps decrease");
      }
      trace.events.push_back(std::move(e));
    } catch (const json::exception& e) {
      throw Error(ErrorCode::ParseError, "trace line " + std::to_string(lineno) + ": " + e.what());
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ParseError) throw;
      throw Error(ErrorCode::ParseError, "trace line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (!have_header) throw Error(ErrorCode::ParseError, "trace has no header");
  return trace;
}

inline EngineConfig apply_overrides(EngineConfig cfg, const std::map<std::string, double>& overrides) {
  for (const auto& [key, value] : overrides) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    apply_setting(cfg, key, buf);
  }
  return cfg;
}

// ---------------------------------------------------------------------------
// Snapshot logs: one `{"eventIndex":i,"snapshot":{...}}` line per entry.
// eventIndex -1 denotes the state before any event.

struct SnapshotEntry {
  long event_index = -1;
  std::string snapshot;
  friend bool operator==(const SnapshotEntry&, const SnapshotEntry&) = default;
};

using SnapshotLog = std::vector<SnapshotEntry>;

inline std::string serialize_log(const SnapshotLog& log) {
  std::string out;
  for (const auto& e : log) {
    out += "{\"eventIndex\":" + std::to_string(e.event_index) + ",\"snapshot\":" + e.snapshot + "}\n";
  }
  return out;
}

inline SnapshotLog parse_log(std::string_view text) {
  SnapshotLog log;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      const json j = json::parse(line);
      SnapshotEntry e{j.at("eventIndex").get<long>(), j.at("snapshot").dump()};
      if (!log.empty() && e.event_index <= log.back().event_index) {
        throw Error(ErrorCode::ParseError, "eventIndex must increase");
      }
      log.push_back(std::move(e));
    } catch (const json::exception& e) {
      throw Error(ErrorCode::ParseError, "snapshot line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return log;
}

}  // namespace touchvis::io
