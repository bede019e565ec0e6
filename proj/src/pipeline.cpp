#include "olmat/pipeline.hpp"

#include <fstream>
#include <iomanip>
#include <numeric>
#include <utility>

namespace olmat {

namespace {

template <typename Fn>
auto run_stage(const char* name, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(name, e.what());
  }
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

}  // namespace

void PipelineConfig::validate() const {
  if (k < 3 || k > kMaxK) {
    throw std::invalid_argument("k must lie in [3, " + std::to_string(kMaxK) + "]");
  }
  if (lower < 2 || upper < lower) throw std::invalid_argument("need 2 <= lower <= upper");
  if (grid == 0) throw std::invalid_argument("grid side must be positive");
  if (max_iterations == 0) throw std::invalid_argument("iteration cap must be positive");
  align.validate();
}

SparseMatrix<OverlapValue> candidate_overlaps_on_grid(const SparseMatrix<KmerOccurrence>& a,
                                                      const ProcessGrid& grid,
                                                      CommLedger& ledger) {
  const auto at = transpose(a);
  auto result = summa_spgemm(partition_2d(a, grid), partition_2d(at, grid), OverlapSemiring{},
                             grid, "overlap");
  ledger.merge(result.ledger);
  return remove_diagonal(reassemble(result.c));
}

PipelineResult run_pipeline(std::vector<Read> reads, const PipelineConfig& config) {
  run_stage("configuration", [&] {
    config.validate();
    return 0;
  });
  PipelineResult res;
  res.reads = std::move(reads);
  const ProcessGrid grid(config.grid);
  res.ledger = CommLedger(grid.size());

  res.reliable = run_stage("kmer counting", [&] {
    std::size_t windows = 0;
    for (const Read& r : res.reads) windows += r.len() >= config.k ? r.len() - config.k + 1 : 0;
    const std::size_t bits =
        config.bloom_bits ? config.bloom_bits : std::max<std::size_t>(1024, 8 * windows);
    const KmerTable counted = count_kmers(res.reads, config.k, bits, config.bloom_hashes);
    return select_reliable(counted, config.lower, config.upper);
  });

  res.a = run_stage("matrix A", [&] { return build_matrix_A(res.reads, res.reliable); });

  res.c = run_stage("overlap detection", [&] {
    if (grid.side() == 1) return compute_candidate_overlaps(res.a);
    if (!config.permute) return candidate_overlaps_on_grid(res.a, grid, res.ledger);
    const auto row_perm = random_permutation(res.a.nrows(), config.seed);
    const auto col_perm = random_permutation(res.a.ncols(), config.seed + 1);
    const auto c_perm =
        candidate_overlaps_on_grid(permute(res.a, row_perm, col_perm), grid, res.ledger);
    const auto back = inverse_permutation(row_perm);
    return permute(c_perm, back, back);
  });

  run_stage("alignment", [&] {
    AlignParams params = config.align;
    params.seed_length = config.k;
    res.pairs = align_candidates(res.c, res.reads, params, config.threshold);
    res.r = assemble_R(res.reads.size(), res.pairs);
    return 0;
  });

  if (!config.stop_after_overlap) {
    res.reduction = run_stage("transitive reduction", [&] {
      ReductionOptions options;
      options.fuzz = config.fuzz;
      options.max_iterations = config.max_iterations;
      if (grid.side() > 1) {
        options.square = [&](const OverlapMatrix& r) {
          const auto blocks = partition_2d(r, grid);
          auto sq = summa_spgemm(blocks, blocks, BidirectedMinPlus{}, grid,
                                 "transitive_reduction");
          res.ledger.merge(sq.ledger);
          return reassemble(sq.c);
        };
      }
      return transitive_reduction(res.r, options);
    });
  }

  Densities& d = res.densities;
  d.n = res.reads.size();
  d.m = res.a.ncols();
  d.nnz_a = res.a.nnz();
  d.nnz_c = res.c.nnz();
  d.nnz_r = res.r.nnz();
  d.nnz_s = res.reduction ? res.reduction->s.nnz() : 0;
  return res;
}

CostModelInputs measured_cost_inputs(const PipelineResult& result, const PipelineConfig& config) {
  const Densities& d = result.densities;
  CostModelInputs in;
  in.n = static_cast<double>(d.n);
  in.m = static_cast<double>(d.m);
  const std::size_t bases = std::accumulate(
      result.reads.begin(), result.reads.end(), std::size_t{0},
      [](std::size_t acc, const Read& r) { return acc + r.len(); });
  in.l = d.n ? static_cast<double>(bases) / static_cast<double>(d.n) : 0.0;
  in.k = config.k;
  in.d = config.depth.value_or(1.0);
  in.G = config.genome_size.value_or(in.n * in.l / in.d);
  in.a = d.a();
  in.c = d.c();
  in.r = d.r();
  in.P = static_cast<double>(config.grid * config.grid);
  in.b = 1;
  in.t = result.reduction ? static_cast<double>(result.reduction->stats.iterations) : 1.0;
  return in;
}

std::vector<std::filesystem::path> write_outputs(const std::string& prefix,
                                                 const PipelineResult& result,
                                                 const PipelineConfig& config) {
  std::vector<std::filesystem::path> written;
  std::vector<std::string> names;
  names.reserve(result.reads.size());
  for (const Read& r : result.reads) names.push_back(r.name);

  auto emit = [&](const std::string& suffix, auto&& body) {
    const std::filesystem::path path = prefix + suffix;
    auto out = open_output(path);
    body(out);
    written.push_back(path);
  };

  emit(".overlaps.tsv", [&](std::ostream& out) { write_overlap_tsv(out, result.reads, result.pairs); });
  emit(".r.tsv", [&](std::ostream& out) { write_string_graph_tsv(out, result.r, names); });

  emit(".density.tsv", [&](std::ostream& out) {
    const Densities& d = result.densities;
    out << "#metric\tvalue\n";
    out << "n\t" << d.n << "\nm\t" << d.m << "\nnnz_A\t" << d.nnz_a << "\nnnz_C\t" << d.nnz_c
        << "\nnnz_R\t" << d.nnz_r << "\nnnz_S\t" << d.nnz_s << '\n';
    out << std::fixed << std::setprecision(4);
    out << "a\t" << d.a() << "\nc\t" << d.c() << "\nr\t" << d.r() << "\ns\t" << d.s() << '\n';
  });

  if (result.reduction) {
    emit(".string_graph.tsv", [&](std::ostream& out) {
      write_string_graph_tsv(out, result.reduction->s, names);
    });
    emit(".tr_stats.tsv", [&](std::ostream& out) {
      write_reduction_stats(out, result.reduction->stats, result.reduction->s.nnz());
    });
  }

  if (config.grid > 1) {
    emit(".ledger.tsv", [&](std::ostream& out) { result.ledger.write_tsv(out); });
    const CostModelInputs in = measured_cost_inputs(result, config);
    bool positive = true;
    try {
      in.validate();
    } catch (const std::invalid_argument&) {
      positive = false;
    }
    if (positive) {
      emit(".costs.tsv", [&](std::ostream& out) { write_cost_tsv(out, analytic_costs(in)); });
    }
  }
  return written;
}

}  // namespace olmat
