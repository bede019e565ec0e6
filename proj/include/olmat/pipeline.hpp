#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "olmat/align.hpp"
#include "olmat/gridsim.hpp"
#include "olmat/kmers.hpp"
#include "olmat/overlap.hpp"
#include "olmat/seqio.hpp"
#include "olmat/trred.hpp"

namespace olmat {

struct PipelineConfig {
  unsigned k = 17;
  std::uint32_t lower = 2;
  std::uint32_t upper = 4;
  int threshold = 50;
  Length fuzz = 10;
  std::size_t grid = 1;
  std::uint64_t seed = 1;
  /// Randomly relabel reads and k-mers (seeded) before the 2D partition.
  bool permute = false;
  /// 0 picks 8 bits per k-mer window.
  std::size_t bloom_bits = 0;
  unsigned bloom_hashes = 3;
  std::size_t max_iterations = 100;
  AlignParams align;
  /// Only used to fill the cost model; they do not enter any cost formula.
  std::optional<double> depth;
  std::optional<double> genome_size;
  /// Stop once R is built.
  bool stop_after_overlap = false;

  void validate() const;
};

class StageError : public std::runtime_error {
 public:
  StageError(const std::string& stage, const std::string& what)
      : std::runtime_error(stage + ": " + what), stage_(stage) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

/// Average nonzeros per k-mer (a) and per read (c, r, s).
struct Densities {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t nnz_a = 0;
  std::size_t nnz_c = 0;
  std::size_t nnz_r = 0;
  std::size_t nnz_s = 0;

  double a() const { return m ? static_cast<double>(nnz_a) / static_cast<double>(m) : 0.0; }
  double c() const { return n ? static_cast<double>(nnz_c) / static_cast<double>(n) : 0.0; }
  double r() const { return n ? static_cast<double>(nnz_r) / static_cast<double>(n) : 0.0; }
  double s() const { return n ? static_cast<double>(nnz_s) / static_cast<double>(n) : 0.0; }
};

struct PipelineResult {
  std::vector<Read> reads;
  KmerTable reliable;
  SparseMatrix<KmerOccurrence> a;
  SparseMatrix<OverlapValue> c;
  std::vector<PairAlignment> pairs;
  OverlapMatrix r;
  std::optional<ReductionResult> reduction;
  CommLedger ledger;
  Densities densities;
};

PipelineResult run_pipeline(std::vector<Read> reads, const PipelineConfig& config);

/// C = A A^T on the simulated grid; diagonal removed. Ledger stage "overlap".
SparseMatrix<OverlapValue> candidate_overlaps_on_grid(const SparseMatrix<KmerOccurrence>& a,
                                                      const ProcessGrid& grid,
                                                      CommLedger& ledger);

/// Cost model inputs measured from a finished run on `grid_side`^2 ranks.
CostModelInputs measured_cost_inputs(const PipelineResult& result, const PipelineConfig& config);

/// Writes PREFIX.overlaps.tsv, PREFIX.r.tsv and PREFIX.density.tsv, plus,
/// when reduction ran, PREFIX.string_graph.tsv and PREFIX.tr_stats.tsv, and,
/// on a grid larger than one rank, PREFIX.ledger.tsv and PREFIX.costs.tsv.
/// Returns the paths written.
std::vector<std::filesystem::path> write_outputs(const std::string& prefix,
                                                 const PipelineResult& result,
                                                 const PipelineConfig& config);

}  // namespace olmat
