#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <vector>

#include "olmat/bidirected.hpp"
#include "olmat/overlap.hpp"
#include "olmat/seqio.hpp"
#include "olmat/spmat.hpp"

namespace olmat {

struct AlignParams {
  int match = 1;
  int mismatch = -1;
  int xdrop = 7;
  /// Length of the shared k-mer a seed refers to.
  unsigned seed_length = 17;
  /// Bases an alignment may stop short of a read end and still count as
  /// reaching it when testing containment.
  unsigned end_slack = 0;

  void validate() const;
};

/// Half-open spans on both reads. B coordinates are on B's forward strand
/// even when B was aligned reverse-complemented.
struct AlignmentResult {
  int score = 0;
  std::uint32_t begin_a = 0;
  std::uint32_t end_a = 0;
  std::uint32_t begin_b = 0;
  std::uint32_t end_b = 0;
  bool rc = false;

  bool operator==(const AlignmentResult&) const = default;
};

/// Gapless x-drop extension in both directions from the seed diagonal. When
/// the seed occurrences disagree in strand, B is reverse-complemented first.
/// Throws std::out_of_range if the seed window does not fit either read.
AlignmentResult xdrop_extend(const Read& a, const Read& b, const Seed& seed,
                             const AlignParams& params);

struct OverhangPair {
  OverhangEdge a_to_b;
  OverhangEdge b_to_a;

  bool operator==(const OverhangPair&) const = default;
};

/// Overhang edges for a dovetail overlap, or nullopt when one read is
/// contained in the other (within `end_slack`), including the degenerate case
/// where a read extends past the overlap by zero bases. Throws
/// std::invalid_argument on an empty alignment.
std::optional<OverhangPair> derive_overhangs(const AlignmentResult& r, std::uint32_t len_a,
                                             std::uint32_t len_b, unsigned end_slack = 0);

enum class PairOutcome : std::uint8_t { Accepted, BelowThreshold, Contained };

struct PairAlignment {
  std::size_t a = 0;
  std::size_t b = 0;
  std::uint32_t shared_kmers = 0;
  AlignmentResult alignment;
  PairOutcome outcome = PairOutcome::BelowThreshold;
  OverhangPair edges;
};

/// Aligns every stored (i, j), i < j, of C with each of its seeds and keeps
/// the best score (first seed on ties), then classifies the pair.
std::vector<PairAlignment> align_candidates(const SparseMatrix<OverlapValue>& c,
                                            const std::vector<Read>& reads,
                                            const AlignParams& params, int threshold);

/// Overlap matrix from classified pairs: accepted pairs contribute (a, b) and
/// (b, a); the rest contribute nothing.
SparseMatrix<OverhangEdge> assemble_R(std::size_t n, const std::vector<PairAlignment>& pairs);

SparseMatrix<OverhangEdge> build_R(const SparseMatrix<OverlapValue>& c,
                                   const std::vector<Read>& reads, const AlignParams& params,
                                   int threshold);

inline constexpr int kRejectAll = std::numeric_limits<int>::max();

/// One row per accepted pair:
/// nameA nameB count score rc beginA endA lenA beginB endB lenB category suffixAB suffixBA
void write_overlap_tsv(std::ostream& out, const std::vector<Read>& reads,
                       const std::vector<PairAlignment>& pairs);

}  // namespace olmat
