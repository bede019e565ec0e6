#include "olmat/overlap.hpp"

#include <algorithm>
#include <unordered_set>

namespace olmat {

SparseMatrix<KmerOccurrence> build_matrix_A(const std::vector<Read>& reads,
                                            const KmerTable& table) {
  std::size_t ncols = 0;
  for (const auto& [kmer, entry] : table.entries) {
    if (entry.col != kNoColumn) ncols = std::max(ncols, entry.col + 1);
  }

  std::vector<Entry<KmerOccurrence>> triples;
  std::vector<Entry<KmerOccurrence>> row;
  std::unordered_set<std::size_t> seen;
  for (const Read& r : reads) {
    row.clear();
    seen.clear();
    for_each_kmer(r.seq, table.k, [&](const KmerWindow& w) {
      const std::size_t col = table.column(w.canonical);
      if (col == kNoColumn || !seen.insert(col).second) return;
      row.push_back({r.id, col, KmerOccurrence{static_cast<std::uint32_t>(w.pos), w.rc}});
    });
    std::sort(row.begin(), row.end(),
              [](const auto& a, const auto& b) { return a.col < b.col; });
    triples.insert(triples.end(), row.begin(), row.end());
  }
  return SparseMatrix<KmerOccurrence>::from_triples(reads.size(), ncols, std::move(triples));
}

SparseMatrix<OverlapValue> compute_candidate_overlaps(const SparseMatrix<KmerOccurrence>& a) {
  return remove_diagonal(spgemm(a, transpose(a), OverlapSemiring{}));
}

}  // namespace olmat
