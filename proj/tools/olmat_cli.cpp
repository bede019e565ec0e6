// Command-line front end: pipeline, overlap, reduce, costmodel, synth.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "olmat/gridsim.hpp"
#include "olmat/pipeline.hpp"
#include "olmat/seqio.hpp"
#include "olmat/synth.hpp"
#include "olmat/trred.hpp"

namespace {

using namespace olmat;

struct PathArgs {
  std::string input;
  std::string prefix;
};

void add_pipeline_flags(CLI::App& cmd, PipelineConfig& cfg, PathArgs& paths) {
  cmd.add_option("-i,--input", paths.input, "input FASTA")->required();
  cmd.add_option("-o,--output", paths.prefix, "output prefix")->required();
  cmd.add_option("-k", cfg.k, "k-mer length")->capture_default_str();
  cmd.add_option("--lower", cfg.lower, "lowest reliable k-mer count")->capture_default_str();
  cmd.add_option("--upper", cfg.upper, "highest reliable k-mer count")->capture_default_str();
  cmd.add_option("-t,--threshold", cfg.threshold, "minimum alignment score")
      ->capture_default_str();
  cmd.add_option("-x,--fuzz", cfg.fuzz, "transitive reduction fuzz (bases)")
      ->capture_default_str();
  cmd.add_option("--grid", cfg.grid, "process grid side q (P = q*q)")->capture_default_str();
  cmd.add_option("--seed", cfg.seed, "seed for the optional relabeling")->capture_default_str();
  cmd.add_flag("--permute", cfg.permute, "randomly relabel reads and k-mers before partitioning");
  cmd.add_option("--xdrop", cfg.align.xdrop, "alignment x-drop")->capture_default_str();
  cmd.add_option("--match", cfg.align.match, "match score")->capture_default_str();
  cmd.add_option("--mismatch", cfg.align.mismatch, "mismatch score")->capture_default_str();
  cmd.add_option("--end-slack", cfg.align.end_slack,
                 "bases an alignment may stop short of a read end")
      ->capture_default_str();
  cmd.add_option("--bloom-bits", cfg.bloom_bits, "Bloom filter size (0 = automatic)")
      ->capture_default_str();
  cmd.add_option("--max-iterations", cfg.max_iterations, "transitive reduction iteration cap")
      ->capture_default_str();
  cmd.add_option("--depth", cfg.depth, "sequencing depth, reported in the cost model");
  cmd.add_option("--genome-size", cfg.genome_size, "genome size, reported in the cost model");
}

int run_pipeline_command(const PipelineConfig& cfg, const PathArgs& paths) {
  std::vector<Read> reads;
  try {
    reads = parse_fasta(paths.input);
  } catch (const std::exception& e) {
    throw StageError("parse", e.what());
  }
  const PipelineResult result = run_pipeline(std::move(reads), cfg);
  for (const auto& path : write_outputs(paths.prefix, result, cfg)) {
    std::cerr << "wrote " << path.string() << '\n';
  }
  const Densities& d = result.densities;
  std::cerr << "reads " << d.n << ", reliable k-mers " << d.m << ", nnz(C) " << d.nnz_c
            << ", nnz(R) " << d.nnz_r;
  if (result.reduction) {
    std::cerr << ", nnz(S) " << d.nnz_s << " after " << result.reduction->stats.iterations
              << " iterations";
  }
  std::cerr << '\n';
  return 0;
}

struct ReduceArgs {
  std::string input;
  std::string prefix;
  Length fuzz = 10;
  std::size_t grid = 1;
  std::size_t max_iterations = 100;
};

int run_reduce_command(const ReduceArgs& args) {
  std::ifstream in(args.input);
  if (!in) throw std::runtime_error("cannot open " + args.input);
  std::vector<std::string> names;
  const OverlapMatrix r = read_string_graph_tsv(in, names);

  const ProcessGrid grid(args.grid);
  CommLedger ledger(grid.size());
  ReductionOptions options;
  options.fuzz = args.fuzz;
  options.max_iterations = args.max_iterations;
  if (grid.side() > 1) {
    options.square = [&](const OverlapMatrix& m) {
      const auto blocks = partition_2d(m, grid);
      auto sq = summa_spgemm(blocks, blocks, BidirectedMinPlus{}, grid, "transitive_reduction");
      ledger.merge(sq.ledger);
      return reassemble(sq.c);
    };
  }
  const ReductionResult result = transitive_reduction(r, options);

  auto open = [&](const std::string& suffix) {
    std::ofstream out(args.prefix + suffix);
    if (!out) throw std::runtime_error("cannot write " + args.prefix + suffix);
    return out;
  };
  {
    auto out = open(".string_graph.tsv");
    write_string_graph_tsv(out, result.s, names);
  }
  {
    auto out = open(".tr_stats.tsv");
    write_reduction_stats(out, result.stats, result.s.nnz());
  }
  if (grid.side() > 1) {
    auto out = open(".ledger.tsv");
    ledger.write_tsv(out);
  }
  std::cerr << "edges " << r.nnz() << " -> " << result.s.nnz() << " in "
            << result.stats.iterations << " iterations\n";
  return 0;
}

struct Preset {
  std::map<std::string, double> values;
};

// Values printed in the dataset tables; m and a are not published and must
// be supplied.
const std::map<std::string, Preset>& presets() {
  static const std::map<std::string, Preset> table = {
      {"ecoli", {{{"d", 30}, {"c", 145.9}, {"r", 6.4}, {"k", 17}}}},
      {"celegans",
       {{{"n", 420700}, {"l", 11241}, {"d", 40}, {"G", 100e6}, {"c", 1579.7}, {"r", 8.1},
         {"k", 17}}}},
      {"hsapiens",
       {{{"n", 4421600}, {"l", 7401}, {"d", 10}, {"G", 3e9}, {"c", 1207.7}, {"r", 1.3},
         {"k", 17}}}},
  };
  return table;
}

struct CostArgs {
  std::string preset;
  std::string prefix;
  std::map<std::string, std::optional<double>> values;
};

int run_costmodel_command(CostArgs& args) {
  std::map<std::string, double> v = {{"b", 1}, {"t", 1}};
  if (!args.preset.empty()) {
    for (const auto& [key, value] : presets().at(args.preset).values) v[key] = value;
  }
  for (const auto& [key, value] : args.values) {
    if (value) v[key] = *value;
  }
  auto get = [&](const char* key) {
    const auto it = v.find(key);
    if (it == v.end()) {
      throw std::invalid_argument(std::string("cost model input ") + key + " is required");
    }
    return it->second;
  };
  CostModelInputs in;
  in.n = get("n");
  in.m = get("m");
  in.l = get("l");
  in.k = get("k");
  in.d = get("d");
  in.G = get("G");
  in.a = get("a");
  in.c = get("c");
  in.r = get("r");
  in.P = get("P");
  in.b = get("b");
  in.t = get("t");
  const auto costs = analytic_costs(in);

  if (args.prefix.empty()) {
    write_cost_tsv(std::cout, costs);
  } else {
    std::ofstream out(args.prefix + ".costs.tsv");
    if (!out) throw std::runtime_error("cannot write " + args.prefix + ".costs.tsv");
    write_cost_tsv(out, costs);
  }
  std::cerr << "inefficiency c/2d = " << inefficiency(in.c, in.d) << '\n';
  if (!in.consistent()) {
    std::cerr << "warning: G*d / (n*l) = " << in.coverage_ratio()
              << " is more than 20% away from 1\n";
  }
  return 0;
}

struct SynthArgs {
  SynthParams params;
  std::string prefix;
  std::optional<std::size_t> min_overlap;
};

int run_synth_command(const SynthArgs& args) {
  const Dataset ds = generate_dataset(args.params);
  auto open = [&](const std::string& suffix) {
    std::ofstream out(args.prefix + suffix);
    if (!out) throw std::runtime_error("cannot write " + args.prefix + suffix);
    return out;
  };
  {
    auto out = open(".fasta");
    write_fasta(out, ds.reads);
  }
  {
    auto out = open(".truth.tsv");
    write_truth_tsv(out, ds.reads, ds.truth);
  }
  if (args.min_overlap) {
    std::vector<std::string> names;
    for (const Read& r : ds.reads) names.push_back(r.name);
    auto out = open(".truth_graph.tsv");
    write_string_graph_tsv(out, expected_string_graph(ds.truth, *args.min_overlap), names);
  }
  std::cerr << "wrote " << ds.reads.size() << " reads\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Overlap detection and transitive reduction as sparse matrix operations"};
  app.require_subcommand(1);

  PipelineConfig pipeline_cfg;
  PathArgs pipeline_paths;
  auto* pipeline = app.add_subcommand("pipeline", "reads to string graph");
  add_pipeline_flags(*pipeline, pipeline_cfg, pipeline_paths);

  PipelineConfig overlap_cfg;
  overlap_cfg.stop_after_overlap = true;
  PathArgs overlap_paths;
  auto* overlap = app.add_subcommand("overlap", "reads to overlap matrix R");
  add_pipeline_flags(*overlap, overlap_cfg, overlap_paths);

  ReduceArgs reduce_args;
  auto* reduce = app.add_subcommand("reduce", "transitive reduction of an overlap graph TSV");
  reduce->add_option("-i,--input", reduce_args.input, "overlap graph TSV")->required();
  reduce->add_option("-o,--output", reduce_args.prefix, "output prefix")->required();
  reduce->add_option("-x,--fuzz", reduce_args.fuzz, "fuzz (bases)")->capture_default_str();
  reduce->add_option("--grid", reduce_args.grid, "process grid side")->capture_default_str();
  reduce->add_option("--max-iterations", reduce_args.max_iterations, "iteration cap")
      ->capture_default_str();

  CostArgs cost_args;
  auto* cost = app.add_subcommand("costmodel", "per-process communication cost report");
  cost->add_option("--preset", cost_args.preset, "dataset preset")
      ->check(CLI::IsMember({"ecoli", "celegans", "hsapiens"}));
  cost->add_option("-o,--output", cost_args.prefix, "output prefix (default stdout)");
  const std::pair<const char*, const char*> cost_flags[] = {
      {"n", "--reads"},         {"m", "--kmers"},     {"l", "--read-length"},
      {"k", "-k"},              {"d", "--depth"},     {"G", "--genome-size"},
      {"a", "--a-density"},     {"c", "--c-density"}, {"r", "--r-density"},
      {"P", "-P,--processes"},  {"b", "--batches"},   {"t", "--iterations"}};
  for (auto [key, flag] : cost_flags) cost_args.values[key];
  for (auto [key, flag] : cost_flags) {
    cost->add_option(flag, cost_args.values.at(key), std::string("symbol ") + key);
  }

  SynthArgs synth_args;
  auto* synth = app.add_subcommand("synth", "random genome and reads with ground truth");
  synth->add_option("-o,--output", synth_args.prefix, "output prefix")->required();
  synth->add_option("--genome-size", synth_args.params.genome_size)->capture_default_str();
  synth->add_option("--depth", synth_args.params.depth)->capture_default_str();
  synth->add_option("--read-length", synth_args.params.read_length)->capture_default_str();
  synth->add_option("--error-rate", synth_args.params.error_rate)->capture_default_str();
  synth->add_option("--seed", synth_args.params.seed)->capture_default_str();
  synth->add_flag("!--allow-repeated-starts", synth_args.params.distinct_starts,
                  "let two reads start at the same offset");
  synth->add_option("--truth-graph", synth_args.min_overlap,
                    "also write the expected overlap graph for this minimum overlap");

  CLI11_PARSE(app, argc, argv);

  try {
    if (pipeline->parsed()) return run_pipeline_command(pipeline_cfg, pipeline_paths);
    if (overlap->parsed()) return run_pipeline_command(overlap_cfg, overlap_paths);
    if (reduce->parsed()) return run_reduce_command(reduce_args);
    if (cost->parsed()) return run_costmodel_command(cost_args);
    if (synth->parsed()) return run_synth_command(synth_args);
  } catch (const StageError& e) {
    std::cerr << "error in stage " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
