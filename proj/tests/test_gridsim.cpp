#include <doctest.h>

#include <cmath>
#include <sstream>

#include "olmat/gridsim.hpp"
#include "olmat/overlap.hpp"
#include "olmat/trred.hpp"
#include "support.hpp"

using namespace olmat;
using testsupport::Gen;

TEST_CASE("block boundaries cover the index range evenly") {
  for (std::size_t n = 1; n < 40; ++n) {
    for (std::size_t q = 1; q <= n && q <= 8; ++q) {
      CHECK(block_start(n, q, 0) == 0);
      CHECK(block_start(n, q, q) == n);
      for (std::size_t i = 0; i < q; ++i) {
        const std::size_t size = block_start(n, q, i + 1) - block_start(n, q, i);
        CHECK(size >= n / q);
        CHECK(size <= n / q + 1);
      }
    }
  }
  CHECK_THROWS(ProcessGrid(0));
}

TEST_CASE("partition and reassembly") {
  Gen g(61);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t q = 1 + g.below(4);
    const auto a = testsupport::random_sparse<int>(g, q + g.below(20), q + g.below(20), 0.3, 1, 9);
    const ProcessGrid grid(q);
    const auto blocks = partition_2d(a, grid);
    std::size_t total = 0;
    for (const auto& b : blocks.blocks) {
      total += b.nnz();
      CHECK(invariant_violation(b).empty());
    }
    CHECK(total == a.nnz());
    CHECK(reassemble(blocks) == a);
  }
  const auto a4 = SparseMatrix<int>::from_triples(4, 4, {{0, 0, 1}, {1, 3, 2}, {3, 1, 3}});
  const auto b = partition_2d(a4, ProcessGrid(2));
  CHECK(b.at(0, 0).nnz() == 1);
  CHECK(*b.at(0, 1).find(1, 1) == 2);
  CHECK(*b.at(1, 0).find(1, 1) == 3);
  CHECK(b.at(1, 1).empty());
  CHECK(partition_2d(a4, ProcessGrid(1)).at(0, 0) == a4);
  CHECK_THROWS(partition_2d(a4, ProcessGrid(5)));
}

TEST_CASE("SUMMA equals serial multiplication and tallies broadcasts") {
  Gen g(67);
  for (int trial = 0; trial < 30; ++trial) {
    for (std::size_t q : {1, 2, 3, 4}) {
      const ProcessGrid grid(q);
      const std::size_t n = q + g.below(20), k = q + g.below(20), m = q + g.below(20);
      const auto a = testsupport::random_sparse<long long>(g, n, k, 0.3, -4, 4);
      const auto b = testsupport::random_sparse<long long>(g, k, m, 0.3, -4, 4);
      const auto ab = partition_2d(a, grid), bb = partition_2d(b, grid);

      const auto pt = summa_spgemm(ab, bb, PlusTimes<long long>{}, grid);
      CHECK(reassemble(pt.c) == spgemm(a, b, PlusTimes<long long>{}));
      const auto mp = summa_spgemm(ab, bb, MinPlus<long long>{}, grid);
      CHECK(reassemble(mp.c) == spgemm(a, b, MinPlus<long long>{}));

      std::uint64_t expected_words = 0;
      for (const auto& blk : ab.blocks) expected_words += blk.nnz() * (q - 1);
      for (const auto& blk : bb.blocks) expected_words += blk.nnz() * (q - 1);
      const CommCounters total = pt.ledger.total();
      CHECK(total.words_sent == expected_words);
      CHECK(total.words_received == expected_words);
      for (std::size_t r = 0; r < grid.size(); ++r) {
        CHECK(pt.ledger.rank_total(r).messages_received == 2 * (q - 1));
      }
    }
  }
}

TEST_CASE("SUMMA with the overlap and bidirected semirings") {
  Gen g(71);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Entry<KmerOccurrence>> t;
    for (std::size_t i = 0; i < 12; ++i) {
      for (std::size_t j = 0; j < 30; ++j) {
        if (g.chance(0.2)) {
          t.push_back({i, j, {static_cast<std::uint32_t>(g.below(100)), g.chance(0.5)}});
        }
      }
    }
    const auto a = SparseMatrix<KmerOccurrence>::from_triples(12, 30, t);
    const auto at = transpose(a);
    const auto r = testsupport::random_overlap_graph(g, 12, 0.3, 200);
    for (std::size_t q : {2, 4}) {
      const ProcessGrid grid(q);
      const auto c =
          summa_spgemm(partition_2d(a, grid), partition_2d(at, grid), OverlapSemiring{}, grid);
      CHECK(reassemble(c.c) == spgemm(a, at, OverlapSemiring{}));
      const auto rb = partition_2d(r, grid);
      const auto sq = summa_spgemm(rb, rb, BidirectedMinPlus{}, grid, "transitive_reduction");
      CHECK(reassemble(sq.c) == tr_square(r));
      CHECK(sq.ledger.stages() == std::vector<std::string>{"transitive_reduction"});
    }
  }
}

TEST_CASE("single rank moves nothing") {
  Gen g(73);
  const auto a = testsupport::random_sparse<long long>(g, 6, 6, 0.5, 1, 5);
  const ProcessGrid grid(1);
  const auto res = summa_spgemm(partition_2d(a, grid), partition_2d(a, grid),
                                PlusTimes<long long>{}, grid);
  CHECK(res.ledger.total() == CommCounters{});
}

TEST_CASE("ledger TSV lists received counts") {
  CommLedger ledger(2);
  ledger.deliver("overlap", 0, 1, 5);
  ledger.deliver("overlap", 1, 0, 3);
  ledger.deliver("overlap", 0, 1, 2);
  std::ostringstream out;
  ledger.write_tsv(out);
  CHECK(out.str() == "#rank\tstage\twords\tmessages\n0\toverlap\t3\t1\n1\toverlap\t7\t2\n");
  CHECK_THROWS(ledger.deliver("overlap", 0, 2, 1));
}

TEST_CASE("permutations") {
  const auto p = random_permutation(100, 5);
  CHECK(p == random_permutation(100, 5));
  CHECK(p != random_permutation(100, 6));
  std::vector<std::size_t> sorted = p;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < 100; ++i) CHECK(sorted[i] == i);
  const auto inv = inverse_permutation(p);
  for (std::size_t i = 0; i < 100; ++i) CHECK(inv[p[i]] == i);

  Gen g(79);
  const auto a = testsupport::random_sparse<int>(g, 10, 7, 0.4, 1, 9);
  const auto rp = random_permutation(10, 1), cp = random_permutation(7, 2);
  const auto pa = permute(a, rp, cp);
  for (const auto& e : a.entries()) CHECK(*pa.find(rp[e.row], cp[e.col]) == e.value);
  CHECK(permute(pa, inverse_permutation(rp), inverse_permutation(cp)) == a);
}

TEST_CASE("analytic costs") {
  CostModelInputs in;
  in.n = 420700;
  in.l = 11241;
  in.k = 17;
  in.d = 40;
  in.G = 100e6;
  in.m = 1e8;
  in.a = 3;
  in.c = 1579.7;
  in.r = 8.1;
  in.P = 1024;
  in.b = 1;
  in.t = 3;
  const auto costs = analytic_costs(in);
  REQUIRE(costs.size() == 4);
  CHECK(costs[0].stage == "kmer");
  const double kmer_w = 420700.0 * 11241.0 * 17.0 / 4096.0;
  CHECK(*costs[0].w_2d == doctest::Approx(kmer_w));
  CHECK(kmer_w == doctest::Approx(1.96e7).epsilon(0.005));
  CHECK(*costs[0].y_1d == 1024);
  CHECK(*costs[1].w_1d == doctest::Approx(9.0 * 1e8 / 1024));
  CHECK(*costs[1].w_2d == doctest::Approx(3e8 / 32));
  CHECK(*costs[1].y_2d == 32);
  CHECK(*costs[2].w_2d == doctest::Approx(2.0 * 420700 * 11241 / 32));
  CHECK(*costs[2].y_1d == 1024);
  CHECK(costs[3].stage == "transitive_reduction");
  CHECK_FALSE(costs[3].w_1d.has_value());
  CHECK(*costs[3].w_2d == doctest::Approx(8.1 * 420700 / 32));
  CHECK(*costs[3].y_2d == 96);
  CHECK(in.consistent());

  in.P = 1;
  CHECK(*analytic_costs(in)[1].y_2d == 1);

  double prev1 = 0, prev2 = 0;
  for (double P : {4.0, 16.0, 64.0}) {
    in.P = P;
    const auto c = analytic_costs(in);
    if (prev1 > 0) {
      CHECK(*c[1].w_1d == doctest::Approx(prev1 / 4));
      CHECK(*c[1].w_2d == doctest::Approx(prev2 / 2));
    }
    prev1 = *c[1].w_1d;
    prev2 = *c[1].w_2d;
  }
  in.m = 0;
  CHECK_THROWS(analytic_costs(in));
}

TEST_CASE("inefficiency") {
  CHECK(std::round(inefficiency(145.9, 30) * 10) / 10 == doctest::Approx(2.4));
  CHECK(std::round(inefficiency(1579.7, 40) * 10) / 10 == doctest::Approx(19.7));
  CHECK(std::round(inefficiency(1207.7, 10) * 10) / 10 == doctest::Approx(60.4));
  CHECK(inefficiency(80, 40) == 1.0);
  CHECK_THROWS(inefficiency(0, 10));
}
