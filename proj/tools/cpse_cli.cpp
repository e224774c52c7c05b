// Copyright 2026 The cpse Authors
// SPDX-License-Identifier: Apache-2.0

// cpse: cascading periodic spectral ergodicity of network weights.
//
//   cpse analyze <file.lmec> [--graph g.json] [--out report.json] ...
//   cpse surrogate --sizes 32x32,64x64,... [--seed S] [--out stack.lmec]
//   cpse correlate <records.csv> [--group prefix|all]
//   cpse inspect <file.lmec>
//
// Exit codes: 0 success, 1 input error, 2 computation error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "cpse/archgraph.hpp"
#include "cpse/container.hpp"
#include "cpse/ensemble.hpp"
#include "cpse/error.hpp"
#include "cpse/kernels.hpp"
#include "cpse/pipeline.hpp"
#include "cpse/report.hpp"
#include "cpse/stats.hpp"
#include "cpse/surrogate.hpp"

namespace {

using namespace cpse;

void write_text(const std::string& path, const std::string& text)
{
  if (path.empty() || path == "-")
  {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw InputError("cannot write '" + path + "'");
  out << text;
}

nlohmann::json read_json_file(const std::string& path)
{
  std::ifstream in(path);
  if (!in)
    throw InputError("cannot open '" + path + "'");
  try
  {
    return nlohmann::json::parse(in);
  }
  catch (const nlohmann::json::exception& e)
  {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void add_run_config(CLI::App* cmd, RunConfig& config, std::string& include)
{
  cmd->add_option("--bins", config.bins, "Histogram bin count")->capture_default_str();
  cmd->add_option("--epsilon", config.epsilon, "Smoothing added to every Omega bin before KL")->capture_default_str();
  cmd->add_option("--log-floor", config.log_floor, "Floor applied to D_pse before log10")->capture_default_str();
  cmd->add_option("--include", include, "Eligible weight kinds: conv,linear")->capture_default_str();
  cmd->add_flag("--log-eigs", config.log_eigs, "Histogram log10(eigenvalue + 1e-12)");
  cmd->add_flag("--skip-first", config.skip_first, "Leave the l = 1 term out of the cPSE sum");
}

void apply_include(RunConfig& config, const std::string& include)
{
  config.eligibility.include_conv = false;
  config.eligibility.include_linear = false;
  std::istringstream is(include);
  std::string item;
  while (std::getline(is, item, ','))
  {
    if (item == "conv")
      config.eligibility.include_conv = true;
    else if (item == "linear")
      config.eligibility.include_linear = true;
    else
      throw InputError("unknown --include kind '" + item + "'");
  }
  config.validate();
}

struct AnalyzeArgs
{
  std::string container;
  std::string graph;
  std::string linearize;
  std::string out;
  std::string series_out;
  std::string dump_omega;
  std::string dump_spectra;
  bool no_gram_2d = false;
  std::string include = "conv,linear";
  RunConfig config;
};

void write_dumps(const AnalyzeArgs& args, const OmegaSequence& seq)
{
  if (!args.dump_omega.empty())
  {
    std::ostringstream os;
    write_omega_tsv(os, seq);
    write_text(args.dump_omega, os.str());
  }
  if (!args.dump_spectra.empty())
  {
    std::ostringstream os;
    write_density_tsv(os, seq);
    write_text(args.dump_spectra, os.str());
  }
}

std::string series_path(const AnalyzeArgs& args)
{
  if (!args.series_out.empty())
    return args.series_out;
  if (!args.out.empty() && args.out != "-")
    return args.out + ".series.csv";
  return {};
}

int run_analyze(AnalyzeArgs& args)
{
  apply_include(args.config, args.include);
  args.config.eligibility.gram_2d = !args.no_gram_2d;
  if (!args.linearize.empty() && args.linearize != "topological")
    throw InputError("unknown linearization '" + args.linearize + "' (expected topological)");

  const Container container = load_container(args.container);
  const LayerMatrixEnsemble ensemble = build_ensemble(container, args.config.eligibility);
  for (const SkipRecord& s : ensemble.skipped)
    std::cerr << s.line() << '\n';

  std::optional<nlohmann::json> graph_doc;
  if (!args.graph.empty())
    graph_doc = read_json_file(args.graph);
  else if (container.graph)
    graph_doc = container.graph;

  if (graph_doc && args.linearize.empty())
  {
    const ArchGraph g = parse_graph(*graph_doc);
    const BranchedReport report = branched_cpse(g, ensemble, args.config);
    write_text(args.out, to_json(report, args.config, ensemble.skipped).dump(2) + "\n");
    if (const std::string p = series_path(args); !p.empty())
    {
      std::string text = "term,coefficient,l,D_pse,log10_D_pse\n";
      for (std::size_t t = 0; t < report.terms.size(); ++t)
        for (const PsePair& pair : report.terms[t].report.series.pairs)
          text += std::to_string(t) + "," + format_double(report.terms[t].coefficient) + "," +
                  std::to_string(pair.l) + "," + format_double(pair.d_pse) + "," +
                  format_double(std::log10(std::max(pair.d_pse, args.config.log_floor))) + "\n";
      write_text(p, text);
    }
    return 0;
  }

  std::vector<LayerMatrix> layers = ensemble.layers;
  nlohmann::ordered_json order;
  if (graph_doc)
  {
    const ArchGraph g = parse_graph(*graph_doc, true);
    check_layers(g, ensemble);
    layers.clear();
    for (const std::string& name : linearize_topological(g))
      layers.push_back(*ensemble.find(name));
    for (const LayerMatrix& x : layers)
      order.push_back(x.source_name);
  }

  const Analysis analysis = analyze_sequence(layers, args.config);
  nlohmann::ordered_json j = to_json(analysis.report, args.config, ensemble.skipped);
  if (!order.is_null())
    j["linearized_order"] = order;
  write_text(args.out, j.dump(2) + "\n");
  if (const std::string p = series_path(args); !p.empty())
    write_text(p, emit(analysis.report.series, args.config.log_floor, Format::csv));
  write_dumps(args, analysis.omegas);
  return 0;
}

struct SurrogateArgs
{
  std::string sizes;
  std::uint64_t seed = 0;
  std::string out;
  std::string report;
  std::string include = "conv,linear";
  RunConfig config;
};

int run_surrogate(SurrogateArgs& args)
{
  apply_include(args.config, args.include);
  SurrogateSpec spec;
  spec.sizes = parse_sizes(args.sizes);
  spec.seed = args.seed;
  const Container stack = generate_stack(spec);
  if (!args.out.empty())
    save_container(args.out, stack);
  const TrendReport trend = ergodicity_trend(stack, args.config);
  write_text(args.report, to_json(trend, spec, args.config).dump(2) + "\n");
  return 0;
}

struct CorrelateArgs
{
  std::string records;
  std::string group = "prefix";
  std::string format = "csv";
  std::string out;
};

int run_correlate(const CorrelateArgs& args)
{
  const Grouping grouping = parse_grouping(args.group);
  const Format format = parse_format(args.format);
  const std::vector<PerformanceRecord> records = load_records_csv(args.records);
  write_text(args.out, emit(correlate(records, grouping), format));
  return 0;
}

int run_inspect(const std::string& path, bool as_json)
{
  const Container c = load_container(path);
  if (as_json)
  {
    nlohmann::ordered_json j;
    j["version"] = c.version;
    j["layers"] = nlohmann::ordered_json::array();
    for (const WeightTensor& t : c.layers)
      j["layers"].push_back({{"name", t.name}, {"shape", t.shape}, {"dtype", to_string(t.dtype())},
                             {"nbytes", t.nbytes()}});
    j["graph"] = c.graph ? nlohmann::ordered_json::parse(c.graph->dump()) : nlohmann::ordered_json();
    std::cout << j.dump(2) << '\n';
    return 0;
  }
  std::cout << "LMEC v" << c.version << ", " << c.layers.size() << " layers"
            << (c.graph ? ", with graph" : "") << '\n';
  std::size_t index = 1;
  for (const WeightTensor& t : c.layers)
    std::cout << index++ << '\t' << t.name << '\t' << shape_string(t.shape) << '\t' << to_string(t.dtype())
              << '\t' << t.nbytes() << '\n';
  return 0;
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{"cpse: cascading periodic spectral ergodicity of network weights"};
  app.require_subcommand(1);
  app.set_version_flag("--version", cpse::tool_version());
  std::string simd;
  app.add_option("--simd", simd, "Kernel variant: auto, scalar, avx2, neon");

  AnalyzeArgs analyze;
  auto* analyze_cmd = app.add_subcommand("analyze", "Compute cPSE of a weight container");
  analyze_cmd->add_option("container", analyze.container, "LMEC file")->required();
  analyze_cmd->add_option("--graph", analyze.graph, "Architecture graph JSON (overrides the embedded one)");
  analyze_cmd->add_option("--linearize", analyze.linearize, "Flatten the graph instead of branching: topological");
  analyze_cmd->add_option("--out", analyze.out, "Report JSON (stdout if omitted)");
  analyze_cmd->add_option("--series-out", analyze.series_out, "D_pse series CSV (default <out>.series.csv)");
  analyze_cmd->add_option("--dump-omega", analyze.dump_omega, "Omega sequence TSV");
  analyze_cmd->add_option("--dump-spectra", analyze.dump_spectra, "Per-layer spectral density TSV");
  analyze_cmd->add_flag("--no-gram-2d", analyze.no_gram_2d, "Experimental: use square 2-D weights directly");
  add_run_config(analyze_cmd, analyze.config, analyze.include);

  SurrogateArgs surrogate;
  auto* surrogate_cmd = app.add_subcommand("surrogate", "Gaussian surrogate stack and its ergodicity trend");
  surrogate_cmd->add_option("--sizes", surrogate.sizes, "Layer sizes, e.g. 32x32,64x64")->required();
  surrogate_cmd->add_option("--seed", surrogate.seed, "RNG seed")->capture_default_str();
  surrogate_cmd->add_option("--out", surrogate.out, "Write the generated stack as LMEC");
  surrogate_cmd->add_option("--report", surrogate.report, "Trend report JSON (stdout if omitted)");
  add_run_config(surrogate_cmd, surrogate.config, surrogate.include);

  CorrelateArgs corr;
  auto* correlate_cmd = app.add_subcommand("correlate", "Correlate cPSE with classification error");
  correlate_cmd->add_option("records", corr.records, "CSV with architecture,top1,top5,cpse")->required();
  correlate_cmd->add_option("--group", corr.group, "Grouping: prefix or all")->capture_default_str();
  correlate_cmd->add_option("--format", corr.format, "csv or json")->capture_default_str();
  correlate_cmd->add_option("--out", corr.out, "Output file (stdout if omitted)");

  std::string inspect_path;
  bool inspect_json = false;
  auto* inspect_cmd = app.add_subcommand("inspect", "Print a container manifest");
  inspect_cmd->add_option("container", inspect_path, "LMEC file")->required();
  inspect_cmd->add_flag("--json", inspect_json, "Print as JSON");

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError& e)
  {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try
  {
    if (!simd.empty() && !cpse::simd::select_kernels(simd))
      throw InputError("kernel variant '" + simd + "' is not available");
    if (*analyze_cmd)
      return run_analyze(analyze);
    if (*surrogate_cmd)
      return run_surrogate(surrogate);
    if (*correlate_cmd)
      return run_correlate(corr);
    if (*inspect_cmd)
      return run_inspect(inspect_path, inspect_json);
  }
  catch (const cpse::InputError& e)
  {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  catch (const std::exception& e)
  {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
