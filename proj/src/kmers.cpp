#include "olmat/kmers.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace olmat {

namespace {

constexpr char kBases[4] = {'A', 'C', 'G', 'T'};

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

PackedKmer pack_kmer(std::string_view s) {
  if (s.size() > kMaxK) {
    throw std::invalid_argument("k-mer longer than " + std::to_string(kMaxK));
  }
  PackedKmer v = 0;
  for (char c : s) {
    PackedKmer code;
    switch (c) {
      case 'A': code = 0; break;
      case 'C': code = 1; break;
      case 'G': code = 2; break;
      case 'T': code = 3; break;
      default:
        throw std::invalid_argument(std::string("not a DNA base: '") + c + "'");
    }
    v = (v << 2) | code;
  }
  return v;
}

std::string unpack_kmer(PackedKmer kmer, unsigned k) {
  std::string s(k, 'A');
  for (unsigned i = 0; i < k; ++i) {
    s[k - 1 - i] = kBases[kmer & 3];
    kmer >>= 2;
  }
  return s;
}

PackedKmer reverse_complement_packed(PackedKmer kmer, unsigned k) {
  PackedKmer out = 0;
  for (unsigned i = 0; i < k; ++i) {
    out = (out << 2) | (3 - (kmer & 3));
    kmer >>= 2;
  }
  return out;
}

BloomFilter::BloomFilter(std::size_t bits, unsigned num_hashes)
    : bits_(bits), num_hashes_(num_hashes), words_((bits + 63) / 64, 0) {
  if (bits == 0) throw std::invalid_argument("Bloom filter needs at least one bit");
  if (num_hashes == 0) throw std::invalid_argument("Bloom filter needs at least one hash");
}

std::size_t BloomFilter::bit_index(std::uint64_t key, unsigned i) const {
  // Kirsch-Mitzenmacher double hashing.
  const std::uint64_t h1 = mix64(key);
  const std::uint64_t h2 = mix64(h1 ^ 0x5851f42d4c957f2dULL) | 1;
  return static_cast<std::size_t>((h1 + i * h2) % bits_);
}

bool BloomFilter::insert(std::uint64_t key) {
  bool present = true;
  for (unsigned i = 0; i < num_hashes_; ++i) {
    const std::size_t b = bit_index(key, i);
    std::uint64_t& w = words_[b / 64];
    const std::uint64_t m = std::uint64_t{1} << (b % 64);
    if ((w & m) == 0) {
      present = false;
      w |= m;
    }
  }
  ++inserted_;
  return present;
}

bool BloomFilter::contains(std::uint64_t key) const {
  for (unsigned i = 0; i < num_hashes_; ++i) {
    const std::size_t b = bit_index(key, i);
    if ((words_[b / 64] & (std::uint64_t{1} << (b % 64))) == 0) return false;
  }
  return true;
}

std::size_t KmerTable::column(PackedKmer canonical) const {
  auto it = entries.find(canonical);
  return it == entries.end() ? kNoColumn : it->second.col;
}

std::vector<std::pair<PackedKmer, KmerEntry>> KmerTable::sorted() const {
  std::vector<std::pair<PackedKmer, KmerEntry>> out(entries.begin(), entries.end());
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

KmerTable count_kmers(const std::vector<Read>& reads, unsigned k,
                      std::size_t bloom_bits, unsigned num_hashes) {
  if (k < 3) throw std::invalid_argument("k must be at least 3");
  if (k > kMaxK) {
    throw std::invalid_argument("k = " + std::to_string(k) +
                                " exceeds the packable maximum of " +
                                std::to_string(kMaxK));
  }
  BloomFilter bloom(bloom_bits, num_hashes);
  KmerTable table;
  table.k = k;

  for (const Read& r : reads) {
    for_each_kmer(r.seq, k, [&](const KmerWindow& w) {
      if (bloom.insert(w.canonical)) table.entries.try_emplace(w.canonical);
    });
  }
  // Second pass re-credits the occurrence the filter absorbed.
  for (const Read& r : reads) {
    for_each_kmer(r.seq, k, [&](const KmerWindow& w) {
      auto it = table.entries.find(w.canonical);
      if (it != table.entries.end()) ++it->second.count;
    });
  }
  return table;
}

KmerTable select_reliable(const KmerTable& table, std::uint32_t lower,
                          std::uint32_t upper) {
  if (lower < 2 || lower > upper) {
    throw std::invalid_argument("reliable range requires 2 <= lower <= upper");
  }
  KmerTable out;
  out.k = table.k;
  std::size_t col = 0;
  for (auto [kmer, entry] : table.sorted()) {
    if (entry.count < lower || entry.count > upper) continue;
    out.entries.emplace(kmer, KmerEntry{entry.count, col++});
  }
  return out;
}

void write_kmer_tsv(std::ostream& out, const KmerTable& table) {
  out << "#kmer\tcount\tcol\n";
  for (auto [kmer, entry] : table.sorted()) {
    out << unpack_kmer(kmer, table.k) << '\t' << entry.count << '\t';
    if (entry.col == kNoColumn) {
      out << -1;
    } else {
      out << entry.col;
    }
    out << '\n';
  }
}

}  // namespace olmat
