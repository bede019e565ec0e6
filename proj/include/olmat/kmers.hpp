#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "olmat/seqio.hpp"

namespace olmat {

/// 2-bit packed k-mer, A=0 C=1 G=2 T=3, first base in the most significant
/// position. Numeric order of packed values equals lexicographic order of
/// equal-length strings.
using PackedKmer = std::uint64_t;

inline constexpr unsigned kMaxK = 31;
inline constexpr std::size_t kNoColumn = std::numeric_limits<std::size_t>::max();

PackedKmer pack_kmer(std::string_view s);
std::string unpack_kmer(PackedKmer kmer, unsigned k);
PackedKmer reverse_complement_packed(PackedKmer kmer, unsigned k);

/// One k-mer window of a read. `rc` is set when the window is the reverse
/// complement of its canonical form.
struct KmerWindow {
  std::size_t pos;
  PackedKmer canonical;
  bool rc;
};

/// Calls `fn(KmerWindow)` for every window of length k in `seq`, left to
/// right. Windows spanning a non-ACGT symbol are skipped.
template <typename Fn>
void for_each_kmer(std::string_view seq, unsigned k, Fn&& fn) {
  if (k == 0 || seq.size() < k) return;
  const PackedKmer mask = (k == 32) ? ~PackedKmer{0} : ((PackedKmer{1} << (2 * k)) - 1);
  const unsigned shift = 2 * (k - 1);
  PackedKmer fwd = 0;
  PackedKmer rev = 0;
  std::size_t valid = 0;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    PackedKmer code;
    switch (seq[i]) {
      case 'A': code = 0; break;
      case 'C': code = 1; break;
      case 'G': code = 2; break;
      case 'T': code = 3; break;
      default:
        valid = 0;
        continue;
    }
    fwd = ((fwd << 2) | code) & mask;
    rev = (rev >> 2) | ((3 - code) << shift);
    if (++valid >= k) {
      const bool rc = rev < fwd;
      fn(KmerWindow{i + 1 - k, rc ? rev : fwd, rc});
    }
  }
}

class BloomFilter {
 public:
  BloomFilter(std::size_t bits, unsigned num_hashes);

  /// Returns true if the key was (possibly) present before insertion.
  bool insert(std::uint64_t key);
  bool contains(std::uint64_t key) const;

  std::size_t bit_count() const { return bits_; }
  unsigned hash_count() const { return num_hashes_; }
  std::size_t inserted() const { return inserted_; }

 private:
  std::size_t bit_index(std::uint64_t key, unsigned i) const;

  std::size_t bits_;
  unsigned num_hashes_;
  std::size_t inserted_ = 0;
  std::vector<std::uint64_t> words_;
};

struct KmerEntry {
  std::uint32_t count = 0;
  std::size_t col = kNoColumn;
};

struct KmerTable {
  unsigned k = 0;
  std::unordered_map<PackedKmer, KmerEntry> entries;

  std::size_t size() const { return entries.size(); }
  /// Column of a canonical k-mer, or kNoColumn.
  std::size_t column(PackedKmer canonical) const;
  /// Entries sorted by k-mer.
  std::vector<std::pair<PackedKmer, KmerEntry>> sorted() const;
};

/// Two-pass counting. The first pass routes every canonical k-mer through a
/// Bloom filter and only tables keys already seen; the second pass counts
/// exact occurrences of tabled keys. Bloom false positives can admit keys that
/// occur once, with count 1.
KmerTable count_kmers(const std::vector<Read>& reads, unsigned k,
                      std::size_t bloom_bits, unsigned num_hashes = 3);

/// Keeps entries with lower <= count <= upper and numbers them 0..m-1 in
/// ascending k-mer order.
KmerTable select_reliable(const KmerTable& table, std::uint32_t lower,
                          std::uint32_t upper);

/// `kmer<TAB>count<TAB>col` rows sorted by k-mer; col is -1 when unassigned.
void write_kmer_tsv(std::ostream& out, const KmerTable& table);

}  // namespace olmat
