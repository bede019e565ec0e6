#include <doctest.h>

#include <map>
#include <set>

#include "olmat/overlap.hpp"
#include "support.hpp"

using namespace olmat;

namespace {

KmerTable table_of(unsigned k, std::initializer_list<const char*> kmers) {
  KmerTable t;
  t.k = k;
  std::size_t col = 0;
  for (const char* s : kmers) t.entries[pack_kmer(s)] = KmerEntry{2, col++};
  return t;
}

// Reads plus the band of k-mers seen at least twice and at most `upper` times.
struct Fixture {
  std::vector<Read> reads;
  KmerTable reliable;
};

Fixture random_fixture(testsupport::Gen& g, unsigned k, std::size_t n) {
  Fixture f;
  const std::string genome = g.dna(600);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t len = 60 + g.below(80);
    std::string s = genome.substr(g.below(genome.size() - len), len);
    if (g.chance(0.5)) s = reverse_complement(s);
    f.reads.push_back({i, "r" + std::to_string(i), s});
  }
  f.reliable = select_reliable(count_kmers(f.reads, k, 1 << 16), 2, 6);
  return f;
}

}  // namespace

TEST_CASE("build_matrix_A keeps the first occurrence of each k-mer") {
  const std::vector<Read> reads = {{0, "a", "ACGT"}, {1, "b", "TTTT"}};
  const auto a = build_matrix_A(reads, table_of(3, {"ACG"}));
  REQUIRE(a.nnz() == 1);
  CHECK(a.entries()[0].row == 0);
  CHECK(a.entries()[0].col == 0);
  CHECK(a.entries()[0].value == KmerOccurrence{0, false});
  CHECK(a.row(1).empty());
}

TEST_CASE("support of A equals a window scan") {
  testsupport::Gen g(17);
  for (int trial = 0; trial < 20; ++trial) {
    const unsigned k = 7;
    Fixture f = random_fixture(g, k, 12);
    const auto a = build_matrix_A(f.reads, f.reliable);
    CHECK(invariant_violation(a).empty());
    std::set<std::pair<std::size_t, std::size_t>> expected;
    std::map<std::pair<std::size_t, std::size_t>, KmerOccurrence> first;
    for (const Read& r : f.reads) {
      for (std::size_t p = 0; p + k <= r.len(); ++p) {
        const auto c = canonical(r.seq.substr(p, k));
        const std::size_t col = f.reliable.column(pack_kmer(c.seq));
        if (col == kNoColumn) continue;
        expected.insert({r.id, col});
        first.try_emplace({r.id, col},
                          KmerOccurrence{static_cast<std::uint32_t>(p), c.strand == Strand::Reverse});
      }
    }
    std::set<std::pair<std::size_t, std::size_t>> got;
    for (const auto& e : a.entries()) {
      got.insert({e.row, e.col});
      CHECK(first.at({e.row, e.col}) == e.value);
    }
    CHECK(got == expected);
  }
}

TEST_CASE("two reads sharing one k-mer") {
  const std::vector<Read> reads = {{0, "a", "AACGTT"}, {1, "b", "GGAACG"}};
  const auto c = compute_candidate_overlaps(build_matrix_A(reads, table_of(4, {"AACG"})));
  REQUIRE(c.nnz() == 2);
  const OverlapValue* ab = c.find(0, 1);
  const OverlapValue* ba = c.find(1, 0);
  REQUIRE(ab);
  REQUIRE(ba);
  CHECK(ab->count == 1);
  CHECK(ab->num_seeds == 1);
  CHECK(ab->seeds[0] == Seed{0, 2, false, false});
  CHECK(ba->seeds[0] == Seed{2, 0, false, false});
}

TEST_CASE("C counts equal shared k-mer set sizes") {
  testsupport::Gen g(23);
  for (int trial = 0; trial < 20; ++trial) {
    const unsigned k = 8;
    Fixture f = random_fixture(g, k, 14);
    const auto a = build_matrix_A(f.reads, f.reliable);
    const auto c = compute_candidate_overlaps(a);
    CHECK(invariant_violation(c, OverlapSemiring{}).empty());

    std::vector<std::map<std::size_t, KmerOccurrence>> cols(f.reads.size());
    for (const auto& e : a.entries()) cols[e.row][e.col] = e.value;

    for (std::size_t i = 0; i < f.reads.size(); ++i) {
      CHECK_FALSE(c.contains(i, i));
      for (std::size_t j = 0; j < f.reads.size(); ++j) {
        if (i == j) continue;
        std::vector<Seed> shared;
        for (const auto& [col, occ] : cols[i]) {
          auto it = cols[j].find(col);
          if (it != cols[j].end()) shared.push_back({occ.pos, it->second.pos, occ.rc, it->second.rc});
        }
        const OverlapValue* v = c.find(i, j);
        if (shared.empty()) {
          CHECK(v == nullptr);
          continue;
        }
        REQUIRE(v != nullptr);
        CHECK(v->count == shared.size());
        REQUIRE(v->num_seeds == std::min<std::size_t>(shared.size(), kMaxSeeds));
        // Seeds are the lowest-column shared k-mers.
        for (std::size_t s = 0; s < v->num_seeds; ++s) CHECK(v->seeds[s] == shared[s]);
      }
    }
  }
}
