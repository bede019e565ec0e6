#include <doctest.h>

#include <sstream>

#include "olmat/synth.hpp"
#include "olmat/trred.hpp"
#include "support.hpp"

using namespace olmat;

TEST_CASE("reads are exact genome substrings or their reverse complements") {
  SynthParams p;
  p.genome_size = 1000;
  p.depth = 20;
  p.read_length = 100;
  p.seed = 4;
  const Dataset ds = generate_dataset(p);
  REQUIRE(ds.reads.size() == 200);
  REQUIRE(ds.truth.size() == 200);
  std::size_t reversed = 0;
  for (std::size_t i = 0; i < ds.reads.size(); ++i) {
    const TruthRecord& t = ds.truth[i];
    CHECK(t.read == i);
    CHECK(t.end - t.start == 100);
    CHECK(t.end <= 1000);
    std::string expect = ds.genome.substr(t.start, 100);
    if (t.strand == Strand::Reverse) {
      expect = reverse_complement(expect);
      ++reversed;
    }
    CHECK(ds.reads[i].seq == expect);
  }
  CHECK(reversed > 60);
  CHECK(reversed < 140);
}

TEST_CASE("generation is deterministic in the seed") {
  SynthParams p;
  p.genome_size = 2000;
  p.read_length = 150;
  p.error_rate = 0.05;
  const Dataset a = generate_dataset(p), b = generate_dataset(p);
  CHECK(a.reads == b.reads);
  CHECK(a.genome == b.genome);
  p.seed = 2;
  CHECK(generate_dataset(p).genome != a.genome);
}

TEST_CASE("substitution rate is close to the requested one") {
  SynthParams p;
  p.genome_size = 20000;
  p.read_length = 1000;
  p.depth = 10;
  p.error_rate = 0.1;
  const Dataset ds = generate_dataset(p);
  std::size_t diffs = 0, bases = 0;
  for (std::size_t i = 0; i < ds.reads.size(); ++i) {
    const TruthRecord& t = ds.truth[i];
    std::string truth = ds.genome.substr(t.start, t.end - t.start);
    if (t.strand == Strand::Reverse) truth = reverse_complement(truth);
    for (std::size_t j = 0; j < truth.size(); ++j) diffs += truth[j] != ds.reads[i].seq[j];
    bases += truth.size();
  }
  CHECK(static_cast<double>(diffs) / static_cast<double>(bases) == doctest::Approx(0.1).epsilon(0.05));
}

TEST_CASE("invalid parameters are rejected") {
  SynthParams p;
  p.read_length = p.genome_size;
  CHECK_THROWS(generate_dataset(p));
  p = {};
  p.error_rate = 0.3;
  CHECK_THROWS(generate_dataset(p));
  p = {};
  p.depth = 0.5;
  CHECK_THROWS(generate_dataset(p));
}

TEST_CASE("truth overlaps and expected edges") {
  const std::vector<TruthRecord> t = {{0, 0, 100, Strand::Forward},
                                      {1, 50, 150, Strand::Forward},
                                      {2, 60, 90, Strand::Forward}};
  CHECK(truth_overlap(t[0], t[1]) == 50);
  CHECK(truth_overlap(t[0], t[2]) == 30);
  const auto g = expected_string_graph(t, 1);
  CHECK(*g.find(0, 1) == OverhangEdge{50, Category::Forward});
  CHECK(*g.find(1, 0) == OverhangEdge{50, Category::Reverse});
  // Read 2 lies inside both others.
  CHECK(g.nnz() == 2);
  CHECK(expected_string_graph(t, 51).empty());
}

TEST_CASE("mean truth-overlap degree matches the interval count") {
  SynthParams p;
  p.genome_size = 50000;
  p.depth = 20;
  p.read_length = 500;
  const Dataset ds = generate_dataset(p);
  const std::size_t min_overlap = 150;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < ds.truth.size(); ++i) {
    for (std::size_t j = 0; j < ds.truth.size(); ++j) {
      if (i != j && truth_overlap(ds.truth[i], ds.truth[j]) >= min_overlap) ++pairs;
    }
  }
  const double mean = static_cast<double>(pairs) / static_cast<double>(ds.truth.size());
  // Edge effects near the genome ends shave a little off 2d(1 - L/len).
  CHECK(mean == doctest::Approx(2.0 * 20 * (1.0 - 150.0 / 500.0)).epsilon(0.05));
}

TEST_CASE("reducing the truth graph leaves a path") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    SynthParams p;
    p.genome_size = 10000;
    p.depth = 20;
    p.read_length = 500;
    p.seed = seed;
    const Dataset ds = generate_dataset(p);
    const auto s = transitive_reduction(expected_string_graph(ds.truth, 100), 10).s;
    const auto pr = testsupport::path_recovery(s, ds.truth);
    CHECK(pr.one_each_side == pr.interior);
    CHECK(pr.adjacent == pr.interior);
  }
}

TEST_CASE("truth TSV") {
  const std::vector<Read> reads = {{0, "read_0", "ACGT"}};
  std::ostringstream out;
  write_truth_tsv(out, reads, {{0, 10, 14, Strand::Reverse}});
  CHECK(out.str() == "#read\tstart\tend\tstrand\nread_0\t10\t14\t-\n");
}
