#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "touchvis/demo.hpp"
#include "touchvis/touchvis.hpp"

namespace fs = std::filesystem;
using namespace touchvis;

namespace {

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct ReplayArgs {
  std::string spec, data, trace, out, config;
  std::string every = "change";
};

int run_replay(const ReplayArgs& a) {
  const auto policy = parse_snapshot_policy(a.every);
  if (!policy) {
    std::cerr << "--snapshot-every must be one of change, event, final\n";
    return kUsage;
  }
  try {
    const io::ChartFile chart = io::load_chart_file(a.spec);
    const Dataset data = io::load_dataset(a.data, chart.schema);
    const io::InputTrace trace = io::parse_trace(io::read_file(a.trace));
    const EngineConfig cfg = a.config.empty() ? EngineConfig{} : load_config(a.config);
    const ReplayResult r = replay(chart.spec, data, cfg, trace, *policy);
    io::write_file(a.out, io::serialize_log(r.log));
    if (r.failure) {
      std::cerr << "replay halted at event " << r.failure->event_index << ": " << r.failure->message << "\n";
      return kFail;
    }
    return kOk;
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
    return kFail;
  }
}

std::string event_index_of(const std::string& line) {
  try {
    return std::to_string(nlohmann::json::parse(line).at("eventIndex").get<long>());
  } catch (const nlohmann::json::exception&) {
    return "?";
  }
}

int run_verify(const std::string& out, const std::string& golden) {
  std::string a, b;
  try {
    a = io::read_file(out);
    b = io::read_file(golden);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  if (a == b) {
    std::cout << "identical\n";
    return kOk;
  }
  std::istringstream sa(a), sb(b);
  std::string la, lb;
  for (std::size_t line = 1;; ++line) {
    const bool ha = static_cast<bool>(std::getline(sa, la));
    const bool hb = static_cast<bool>(std::getline(sb, lb));
    if (ha && hb && la == lb) continue;
    const std::string where = ha ? event_index_of(la) : hb ? event_index_of(lb) : "?";
    std::cout << "first difference at eventIndex " << where << " (line " << line << ")\n";
    if (!ha) std::cout << "  " << out << " ends early\n";
    if (!hb) std::cout << "  " << golden << " ends early\n";
    return kFail;
  }
}

int run_demo(const std::string& name, const std::string& dir) {
  const auto chart = demo::chart_named(name);
  if (!chart) {
    std::cerr << "unknown chart '" << name << "'\n";
    return kUsage;
  }
  try {
    fs::create_directories(dir);
    const fs::path root(dir);
    io::write_file((root / (chart->name + ".spec.json")).string(), io::to_json(chart->file).dump(2) + "\n");
    io::write_file((root / (chart->name + ".csv")).string(), chart->csv);
    const auto traces = demo::sample_traces(*chart);
    for (const auto& t : traces) {
      io::write_file((root / (t.name + ".trace.jsonl")).string(), io::serialize_trace(t.trace));
    }
    std::cout << "wrote " << traces.size() << " traces for " << chart->name << " to " << dir << "\n";
    return kOk;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Touch visualization engine: trace replay and golden verification"};
  app.require_subcommand(1);

  ReplayArgs ra;
  auto* replay_cmd = app.add_subcommand("replay", "Replay an input trace and write a snapshot log");
  replay_cmd->add_option("--spec", ra.spec, "Chart spec file")->required();
  replay_cmd->add_option("--data", ra.data, "Dataset file (.csv or .json records)")->required();
  replay_cmd->add_option("--trace", ra.trace, "Input trace file")->required();
  replay_cmd->add_option("--out", ra.out, "Snapshot log to write")->required();
  replay_cmd->add_option("--snapshot-every", ra.every, "change | event | final")->capture_default_str();
  replay_cmd->add_option("--config", ra.config, "Engine config file");

  std::string out, golden;
  auto* verify_cmd = app.add_subcommand("verify", "Compare a snapshot log to a golden log");
  verify_cmd->add_option("--out", out, "Snapshot log")->required();
  verify_cmd->add_option("--golden", golden, "Golden log")->required();

  std::string chart, dir;
  auto* demo_cmd = app.add_subcommand("demo", "Write a bundled chart, its data and sample traces");
  demo_cmd->add_option("--chart", chart, "iris | population | unemployment")->required();
  demo_cmd->add_option("--out", dir, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return kUsage;
  }

  if (*replay_cmd) return run_replay(ra);
  if (*verify_cmd) return run_verify(out, golden);
  return run_demo(chart, dir);
}
