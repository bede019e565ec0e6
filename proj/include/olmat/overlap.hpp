#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "olmat/kmers.hpp"
#include "olmat/seqio.hpp"
#include "olmat/spmat.hpp"

namespace olmat {

/// Nonzero of the reads-by-kmers matrix: first window of the k-mer in the
/// read and whether that window is the reverse complement of the canonical
/// k-mer.
struct KmerOccurrence {
  std::uint32_t pos = 0;
  bool rc = false;

  bool operator==(const KmerOccurrence&) const = default;
};

/// A shared k-mer between reads a and b.
struct Seed {
  std::uint32_t pos_a = 0;
  std::uint32_t pos_b = 0;
  bool rc_a = false;
  bool rc_b = false;

  bool operator==(const Seed&) const = default;
};

inline constexpr std::size_t kMaxSeeds = 2;

struct OverlapValue {
  std::uint32_t count = 0;
  std::uint8_t num_seeds = 0;
  std::array<Seed, kMaxSeeds> seeds{};

  std::span<const Seed> stored_seeds() const { return {seeds.data(), num_seeds}; }
  bool operator==(const OverlapValue&) const = default;
};

/// Multiplication pairs the two occurrences into a one-seed value; addition
/// sums counts and keeps seeds in accumulation order until kMaxSeeds are held.
struct OverlapSemiring {
  using value_type = OverlapValue;

  OverlapValue zero() const { return {}; }
  bool is_zero(const OverlapValue& v) const { return v.count == 0; }
  std::optional<OverlapValue> multiply(const KmerOccurrence& a, const KmerOccurrence& b) const {
    OverlapValue v;
    v.count = 1;
    v.num_seeds = 1;
    v.seeds[0] = Seed{a.pos, b.pos, a.rc, b.rc};
    return v;
  }
  OverlapValue add(const OverlapValue& acc, const OverlapValue& x) const {
    OverlapValue out = acc;
    out.count += x.count;
    for (std::uint8_t s = 0; s < x.num_seeds && out.num_seeds < kMaxSeeds; ++s) {
      out.seeds[out.num_seeds++] = x.seeds[s];
    }
    return out;
  }
};

/// Reads-by-kmers matrix over the reliable columns of `table`. One nonzero
/// per (read, k-mer); repeated occurrences inside a read keep the first.
SparseMatrix<KmerOccurrence> build_matrix_A(const std::vector<Read>& reads,
                                            const KmerTable& table);

/// Drops (i, i) entries.
template <typename V>
SparseMatrix<V> remove_diagonal(const SparseMatrix<V>& m) {
  return select(m, [](std::size_t r, std::size_t c, const V&) { return r != c; });
}

/// C = A * A^T under OverlapSemiring, diagonal removed.
SparseMatrix<OverlapValue> compute_candidate_overlaps(const SparseMatrix<KmerOccurrence>& a);

}  // namespace olmat
