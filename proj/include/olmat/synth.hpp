#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "olmat/bidirected.hpp"
#include "olmat/seqio.hpp"
#include "olmat/spmat.hpp"

namespace olmat {

struct SynthParams {
  std::size_t genome_size = 10000;
  double depth = 20;
  std::size_t read_length = 500;
  double error_rate = 0.0;
  std::uint64_t seed = 1;
  /// Draw start offsets without replacement while enough offsets exist, so
  /// no two reads cover the identical interval.
  bool distinct_starts = true;

  void validate() const;
  std::size_t read_count() const;
};

struct TruthRecord {
  std::size_t read = 0;
  std::size_t start = 0;  // genome interval, half-open
  std::size_t end = 0;
  Strand strand = Strand::Forward;
};

struct Dataset {
  std::string genome;
  std::vector<Read> reads;
  std::vector<TruthRecord> truth;  // truth[i] describes reads[i]
};

/// Uniform random genome and ceil(G * d / len) reads at uniform offsets, each
/// reverse-complemented with probability 1/2, with i.i.d. substitutions at
/// `error_rate`. Deterministic in `seed`.
Dataset generate_dataset(const SynthParams& params);

std::size_t truth_overlap(const TruthRecord& a, const TruthRecord& b);

/// Directed overhang edges implied by genome coordinates for every pair whose
/// intervals overlap by at least `min_overlap` and neither contains the other.
SparseMatrix<OverhangEdge> expected_string_graph(const std::vector<TruthRecord>& truth,
                                                 std::size_t min_overlap);

/// `read<TAB>start<TAB>end<TAB>strand` with strand '+' or '-'.
void write_truth_tsv(std::ostream& out, const std::vector<Read>& reads,
                     const std::vector<TruthRecord>& truth);

}  // namespace olmat
