#pragma once

// Single-process simulation of a sqrt(P) x sqrt(P) process grid running
// Sparse SUMMA, with a ledger of the words and messages each rank would move,
// and the closed-form communication costs the simulation is checked against.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "olmat/spmat.hpp"

namespace olmat {

/// Start of block `i` when `n` indices are cut into `q` contiguous blocks
/// whose sizes differ by at most one.
inline std::size_t block_start(std::size_t n, std::size_t q, std::size_t i) {
  return i * n / q;
}

class ProcessGrid {
 public:
  explicit ProcessGrid(std::size_t side);

  std::size_t side() const { return q_; }
  std::size_t size() const { return q_ * q_; }
  std::size_t rank(std::size_t i, std::size_t j) const { return i * q_ + j; }

 private:
  std::size_t q_;
};

/// A matrix cut into side x side blocks with local (re-based) coordinates.
template <typename V>
struct BlockMatrix {
  std::size_t side = 1;
  std::size_t nrows = 0;
  std::size_t ncols = 0;
  std::vector<SparseMatrix<V>> blocks;  // row-major over the grid

  const SparseMatrix<V>& at(std::size_t i, std::size_t j) const { return blocks[i * side + j]; }
  SparseMatrix<V>& at(std::size_t i, std::size_t j) { return blocks[i * side + j]; }
  std::size_t row_start(std::size_t i) const { return block_start(nrows, side, i); }
  std::size_t col_start(std::size_t j) const { return block_start(ncols, side, j); }
};

template <typename V>
BlockMatrix<V> partition_2d(const SparseMatrix<V>& a, const ProcessGrid& grid) {
  const std::size_t q = grid.side();
  if (q > a.nrows() || q > a.ncols()) {
    throw std::invalid_argument("grid side " + std::to_string(q) + " exceeds matrix dimensions " +
                                std::to_string(a.nrows()) + "x" + std::to_string(a.ncols()));
  }
  BlockMatrix<V> out;
  out.side = q;
  out.nrows = a.nrows();
  out.ncols = a.ncols();
  std::vector<std::vector<Entry<V>>> parts(q * q);

  std::vector<std::size_t> row_block(a.nrows());
  std::vector<std::size_t> col_block(a.ncols());
  for (std::size_t b = 0; b < q; ++b) {
    for (std::size_t r = out.row_start(b); r < out.row_start(b + 1); ++r) row_block[r] = b;
    for (std::size_t c = out.col_start(b); c < out.col_start(b + 1); ++c) col_block[c] = b;
  }
  for (const auto& e : a.entries()) {
    const std::size_t bi = row_block[e.row];
    const std::size_t bj = col_block[e.col];
    parts[bi * q + bj].push_back({e.row - out.row_start(bi), e.col - out.col_start(bj), e.value});
  }
  out.blocks.reserve(q * q);
  for (std::size_t bi = 0; bi < q; ++bi) {
    for (std::size_t bj = 0; bj < q; ++bj) {
      out.blocks.push_back(SparseMatrix<V>::from_sorted(
          out.row_start(bi + 1) - out.row_start(bi), out.col_start(bj + 1) - out.col_start(bj),
          std::move(parts[bi * q + bj])));
    }
  }
  return out;
}

template <typename V>
SparseMatrix<V> reassemble(const BlockMatrix<V>& b) {
  std::vector<Entry<V>> triples;
  for (std::size_t bi = 0; bi < b.side; ++bi) {
    for (std::size_t bj = 0; bj < b.side; ++bj) {
      for (const auto& e : b.at(bi, bj).entries()) {
        triples.push_back({e.row + b.row_start(bi), e.col + b.col_start(bj), e.value});
      }
    }
  }
  return SparseMatrix<V>::from_triples(b.nrows, b.ncols, std::move(triples));
}

struct CommCounters {
  std::uint64_t words_sent = 0;
  std::uint64_t messages_sent = 0;
  std::uint64_t words_received = 0;
  std::uint64_t messages_received = 0;

  CommCounters& operator+=(const CommCounters& o) {
    words_sent += o.words_sent;
    messages_sent += o.messages_sent;
    words_received += o.words_received;
    messages_received += o.messages_received;
    return *this;
  }
  bool operator==(const CommCounters&) const = default;
};

/// Per-rank, per-stage communication tallies.
class CommLedger {
 public:
  CommLedger() = default;
  explicit CommLedger(std::size_t ranks) : ranks_(ranks) {}

  std::size_t ranks() const { return ranks_; }

  /// One point-to-point delivery of `words` values from `from` to `to`.
  void deliver(const std::string& stage, std::size_t from, std::size_t to, std::uint64_t words);

  const CommCounters& at(std::size_t rank, const std::string& stage) const;
  CommCounters rank_total(std::size_t rank) const;
  CommCounters stage_total(const std::string& stage) const;
  CommCounters total() const;
  std::vector<std::string> stages() const;

  void merge(const CommLedger& other);

  /// `rank<TAB>stage<TAB>words<TAB>messages`, received counts, sorted by
  /// rank then stage.
  void write_tsv(std::ostream& out) const;

 private:
  std::size_t ranks_ = 0;
  std::map<std::pair<std::size_t, std::string>, CommCounters> cells_;
};

template <typename V>
struct SummaResult {
  BlockMatrix<V> c;
  CommLedger ledger;
};

/// Sparse SUMMA over a q x q grid. In round k, rank (i, k) broadcasts its A
/// block along grid row i and rank (k, j) broadcasts its B block along grid
/// column j; each broadcast is tallied as q - 1 point-to-point deliveries.
/// Local products are accumulated in round order.
template <typename Lhs, typename Rhs, typename S>
  requires Semiring<S, Lhs, Rhs>
SummaResult<typename S::value_type> summa_spgemm(const BlockMatrix<Lhs>& a,
                                                 const BlockMatrix<Rhs>& b, const S& sr,
                                                 const ProcessGrid& grid,
                                                 const std::string& stage = "overlap") {
  using Out = typename S::value_type;
  const std::size_t q = grid.side();
  if (a.side != q || b.side != q) throw DimensionMismatch("summa: block grids do not match grid");
  if (a.ncols != b.nrows) {
    throw DimensionMismatch("summa: inner dimensions " + std::to_string(a.ncols) + " vs " +
                            std::to_string(b.nrows));
  }

  SummaResult<Out> result;
  result.ledger = CommLedger(grid.size());
  result.c.side = q;
  result.c.nrows = a.nrows;
  result.c.ncols = b.ncols;

  // Local products per rank, in round order; folded after the last round.
  std::vector<std::vector<Entry<Out>>> partial(q * q);

  for (std::size_t k = 0; k < q; ++k) {
    for (std::size_t i = 0; i < q; ++i) {
      const auto& blk = a.at(i, k);
      for (std::size_t j = 0; j < q; ++j) {
        if (j != k) result.ledger.deliver(stage, grid.rank(i, k), grid.rank(i, j), blk.nnz());
      }
    }
    for (std::size_t j = 0; j < q; ++j) {
      const auto& blk = b.at(k, j);
      for (std::size_t i = 0; i < q; ++i) {
        if (i != k) result.ledger.deliver(stage, grid.rank(k, j), grid.rank(i, j), blk.nnz());
      }
    }
    // Barrier, then every rank multiplies what it now holds.
    for (std::size_t i = 0; i < q; ++i) {
      for (std::size_t j = 0; j < q; ++j) {
        auto local = spgemm(a.at(i, k), b.at(k, j), sr);
        auto& acc = partial[i * q + j];
        for (auto& e : std::move(local).release()) acc.push_back(std::move(e));
      }
    }
  }

  for (std::size_t i = 0; i < q; ++i) {
    for (std::size_t j = 0; j < q; ++j) {
      const std::size_t rows = result.c.row_start(i + 1) - result.c.row_start(i);
      const std::size_t cols = result.c.col_start(j + 1) - result.c.col_start(j);
      auto& acc = partial[i * q + j];
      std::stable_sort(acc.begin(), acc.end(), SparseMatrix<Out>::coord_less);
      std::vector<Entry<Out>> triples;
      for (std::size_t p = 0; p < acc.size();) {
        Entry<Out> folded = std::move(acc[p]);
        for (++p; p < acc.size() && acc[p].row == folded.row && acc[p].col == folded.col; ++p) {
          folded.value = sr.add(folded.value, acc[p].value);
        }
        if (!is_semiring_zero(sr, folded.value)) triples.push_back(std::move(folded));
      }
      result.c.blocks.push_back(SparseMatrix<Out>::from_sorted(rows, cols, std::move(triples)));
    }
  }
  return result;
}

/// Deterministic Fisher-Yates permutation of 0..n-1.
std::vector<std::size_t> random_permutation(std::size_t n, std::uint64_t seed);

/// Relabels rows and columns: entry (i, j) moves to (row_perm[i], col_perm[j]).
template <typename V>
SparseMatrix<V> permute(const SparseMatrix<V>& a, const std::vector<std::size_t>& row_perm,
                        const std::vector<std::size_t>& col_perm) {
  if (row_perm.size() != a.nrows() || col_perm.size() != a.ncols()) {
    throw DimensionMismatch("permute: permutation length mismatch");
  }
  std::vector<Entry<V>> triples;
  triples.reserve(a.nnz());
  for (const auto& e : a.entries()) triples.push_back({row_perm[e.row], col_perm[e.col], e.value});
  return SparseMatrix<V>::from_triples(a.nrows(), a.ncols(), std::move(triples));
}

std::vector<std::size_t> inverse_permutation(const std::vector<std::size_t>& perm);

struct CostModelInputs {
  double n = 0;  // reads
  double m = 0;  // reliable k-mers
  double l = 0;  // read length
  double k = 0;  // k-mer length
  double d = 0;  // depth
  double G = 0;  // genome size
  double a = 0;  // nnz(A) / m
  double c = 0;  // nnz(C) / n
  double r = 0;  // nnz(R) / n
  double P = 0;  // processes
  double b = 0;  // k-mer exchange batches
  double t = 0;  // transitive reduction iterations

  void validate() const;
  /// (G * d) / (n * l); close to 1 for a consistent dataset description.
  double coverage_ratio() const { return (G * d) / (n * l); }
  bool consistent(double tolerance = 0.2) const {
    return std::abs(coverage_ratio() - 1.0) <= tolerance;
  }
};

struct StageCost {
  std::string stage;
  std::optional<double> w_1d;
  std::optional<double> w_2d;
  std::optional<double> y_1d;
  std::optional<double> y_2d;
};

/// Per-process bandwidth (words) and latency (messages) for each stage, in
/// the order kmer, overlap, read_exchange, transitive_reduction. 1D has no
/// transitive reduction stage.
std::vector<StageCost> analytic_costs(const CostModelInputs& in);

/// `stage<TAB>layout<TAB>W<TAB>Y`, NA where a layout does not apply.
void write_cost_tsv(std::ostream& out, const std::vector<StageCost>& costs);

/// Overlapper inefficiency c / 2d; 1 for a perfect overlapper.
double inefficiency(double c, double d);

}  // namespace olmat
