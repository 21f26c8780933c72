#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qasdyn/degdyn.hpp"
#include "qasdyn/mapspec.hpp"
#include "qasdyn/pipeline.hpp"
#include "qasdyn/registry.hpp"
#include "qasdyn/report.hpp"

namespace {

using namespace qasdyn;

constexpr int kInputError = 2;

struct MapArgs {
  std::string map_file;
  std::string example;
  std::optional<std::size_t> horizon;
  std::string tolerance;
  std::string format = "text";
  std::string out_dir;
  bool no_timings = false;
};

void add_map_flags(CLI::App* cmd, MapArgs& a) {
  auto* map = cmd->add_option("--map", a.map_file, "map document");
  auto* ex = cmd->add_option("--example", a.example, "built-in example key");
  map->excludes(ex);
  cmd->add_option("--horizon", a.horizon, "number of iterates to compute");
  cmd->add_option("--tolerance", a.tolerance, "width of the lambda_1 enclosure, e.g. 1e-12 or 1/1000");
  cmd->add_option("--format", a.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("--out", a.out_dir, "also write the report to DIR/<map hash>.<format>");
  cmd->add_flag("--no-timings", a.no_timings, "omit stage timings (byte-identical reports)");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

ParsedMap load(const MapArgs& a) {
  std::string text;
  if (!a.example.empty()) {
    const auto* e = find_example(a.example);
    if (!e) throw std::runtime_error("unknown example '" + a.example + "'; see `qasdyn examples`");
    text = e->document;
  } else if (!a.map_file.empty()) {
    text = read_file(a.map_file);
  } else {
    throw std::runtime_error("one of --map or --example is required");
  }
  MapSpec spec = parse_map_document(text);
  if (a.horizon) spec.horizon = *a.horizon;
  if (!a.tolerance.empty()) {
    spec.tolerance = parse_rational(a.tolerance);
    if (spec.tolerance <= 0) throw std::invalid_argument("--tolerance must be positive");
  }
  return build_map(spec);
}

int run_map_verb(const MapArgs& a, const PipelineOptions& options) {
  std::optional<ParsedMap> input;
  try {
    input = load(a);
  } catch (const ParseError& e) {
    std::cerr << "qasdyn: " << (a.map_file.empty() ? a.example : a.map_file) << ": " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "qasdyn: " << e.what() << "\n";
    return kInputError;
  }
  const AnalysisReport report = run_pipeline(*input, options);
  const EmitOptions emit{!a.no_timings};
  const std::string doc = a.format == "json" ? emit_json(report, emit) : emit_text(report, emit);
  std::cout << doc;
  if (!a.out_dir.empty()) {
    std::filesystem::create_directories(a.out_dir);
    const auto path = std::filesystem::path(a.out_dir) / (content_hash(input->canonical_document) + "." + a.format);
    std::ofstream(path, std::ios::binary) << doc;
  }
  return exit_code(report);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qasdyn: exact degree growth and QAS structure of rational maps of P^k"};
  app.require_subcommand(1);

  MapArgs analyze_args;
  auto* analyze = app.add_subcommand("analyze", "full pipeline: iterate, structure, degree dynamics");
  add_map_flags(analyze, analyze_args);

  MapArgs iterate_args;
  auto* iterate = app.add_subcommand("iterate", "degree ledger and h0 only");
  add_map_flags(iterate, iterate_args);

  std::vector<std::string> sequence;
  std::string rec_tolerance;
  std::string rec_format = "text";
  auto* recurrence = app.add_subcommand("recurrence", "analyse a degree sequence d_0 d_1 ...");
  recurrence->add_option("degrees", sequence, "degrees, starting with d_0 = 1")->required();
  recurrence->add_option("--tolerance", rec_tolerance, "width of the lambda_1 enclosure");
  recurrence->add_option("--format", rec_format, "text or json")->check(CLI::IsMember({"text", "json"}));

  std::string example_key;
  auto* examples = app.add_subcommand("examples", "list built-in examples, or print one as a map document");
  examples->add_option("key", example_key, "example to print");

  CLI11_PARSE(app, argc, argv);

  if (*analyze) return run_map_verb(analyze_args, {});
  if (*iterate) return run_map_verb(iterate_args, {.structure = false, .dynamics = false});

  if (*recurrence) {
    std::vector<std::uint64_t> degrees;
    Rational tol = default_tolerance();
    try {
      for (const auto& s : sequence) {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(s, &used);
        if (used != s.size() || s.front() == '-') throw std::invalid_argument(s);
        degrees.push_back(v);
      }
      if (!rec_tolerance.empty()) tol = parse_rational(rec_tolerance);
      if (tol <= 0) throw std::invalid_argument("--tolerance must be positive");
    } catch (const std::exception& e) {
      std::cerr << "qasdyn: invalid input: " << e.what() << "\n";
      return kInputError;
    }
    const auto d = degree_dynamics(degrees, std::nullopt, LambdaBasis::observational, tol);
    std::cout << (rec_format == "json" ? dynamics_json(d).dump(2) + "\n" : dynamics_text(d));
    return 0;
  }

  if (*examples) {
    if (example_key.empty()) {
      for (const auto& e : registry()) std::cout << e.key << "  " << e.summary << "\n";
      return 0;
    }
    const auto* e = find_example(example_key);
    if (!e) {
      std::cerr << "qasdyn: unknown example '" << example_key << "'\n";
      return kInputError;
    }
    std::cout << e->document;
    return 0;
  }
  return 0;
}
