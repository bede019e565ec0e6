#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "olmat/bidirected.hpp"
#include "olmat/spmat.hpp"

namespace olmat {

using Length = std::uint32_t;
inline constexpr Length kInfinite = std::numeric_limits<Length>::max();

/// Shortest two-hop suffix sum per endpoint head pair (src head at the
/// departure read, dst head at the destination read).
struct TwoHopValue {
  std::array<Length, 4> slots{kInfinite, kInfinite, kInfinite, kInfinite};

  static constexpr std::size_t index(HeadPair h) {
    return static_cast<std::size_t>(h.src) * 2 + static_cast<std::size_t>(h.dst);
  }
  Length at(HeadPair h) const { return slots[index(h)]; }
  bool empty() const {
    for (Length s : slots) {
      if (s != kInfinite) return false;
    }
    return true;
  }
  bool operator==(const TwoHopValue&) const = default;
};

/// Min-plus over bidirected edges. A product i->k->j survives only when the
/// two heads at k differ, i.e. the walk enters k one way and leaves the other.
struct BidirectedMinPlus {
  using value_type = TwoHopValue;

  TwoHopValue zero() const { return {}; }
  bool is_zero(const TwoHopValue& v) const { return v.empty(); }
  std::optional<TwoHopValue> multiply(const OverhangEdge& ik, const OverhangEdge& kj) const {
    const HeadPair first = ik.heads();
    const HeadPair second = kj.heads();
    if (first.dst == second.src) return std::nullopt;
    TwoHopValue v;
    v.slots[TwoHopValue::index({first.src, second.dst})] = ik.suffix + kj.suffix;
    return v;
  }
  TwoHopValue add(const TwoHopValue& a, const TwoHopValue& b) const {
    TwoHopValue out;
    for (std::size_t s = 0; s < 4; ++s) out.slots[s] = std::min(a.slots[s], b.slots[s]);
    return out;
  }
};

/// Row maximum (plus fuzz) carried onto each edge of the row, with that
/// edge's own heads.
struct MaxSuffix {
  Length length = 0;
  HeadPair heads;

  bool operator==(const MaxSuffix&) const = default;
};

using OverlapMatrix = SparseMatrix<OverhangEdge>;

SparseMatrix<TwoHopValue> tr_square(const OverlapMatrix& r);

/// Per-row longest suffix: reduce, add `fuzz` to non-empty rows, spread back
/// over the row's support.
SparseMatrix<MaxSuffix> build_max_suffix(const OverlapMatrix& r, Length fuzz);

/// True where some two-hop walk with the direct edge's endpoint heads is no
/// longer than the row's fuzzed maximum.
SparseMatrix<bool> mark_transitive(const SparseMatrix<MaxSuffix>& m,
                                   const SparseMatrix<TwoHopValue>& n);

OverlapMatrix prune_transitive(const OverlapMatrix& r, const SparseMatrix<bool>& marked);

struct ReductionStats {
  std::size_t iterations = 0;
  std::size_t initial_nnz = 0;
  /// nnz after each iteration.
  std::vector<std::size_t> nnz_trajectory;
  std::size_t removed = 0;
};

struct ReductionOptions {
  Length fuzz = 10;
  std::size_t max_iterations = 100;
  /// Replaces the serial squaring, e.g. with the simulated 2D grid.
  std::function<SparseMatrix<TwoHopValue>(const OverlapMatrix&)> square;
};

class IterationLimitReached : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ReductionResult {
  OverlapMatrix s;
  ReductionStats stats;
};

/// Repeats square -> max suffix -> mark -> prune until nnz stops changing.
/// Throws IterationLimitReached past options.max_iterations.
ReductionResult transitive_reduction(const OverlapMatrix& r, const ReductionOptions& options);
ReductionResult transitive_reduction(const OverlapMatrix& r, Length fuzz);

/// Sequential reference: for each read, walk its out-edges and their
/// out-edges directly and mark head-consistent transitive edges; remove the
/// marks after all reads are visited; repeat to a fixed point.
OverlapMatrix myers_oracle(const OverlapMatrix& r, Length fuzz);

/// `src dst head_src head_dst suffix` per directed edge in matrix order.
/// `names[i]` labels read i.
void write_string_graph_tsv(std::ostream& out, const OverlapMatrix& s,
                            const std::vector<std::string>& names);

/// Parses the edge TSV. Read names are numbered in order of first
/// appearance; `names` receives them.
OverlapMatrix read_string_graph_tsv(std::istream& in, std::vector<std::string>& names);

void write_reduction_stats(std::ostream& out, const ReductionStats& stats, std::size_t nnz_final);

}  // namespace olmat
