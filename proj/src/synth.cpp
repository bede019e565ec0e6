#include "olmat/synth.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>
#include <stdexcept>
#include <unordered_set>

namespace olmat {

namespace {

constexpr char kBases[4] = {'A', 'C', 'G', 'T'};

// Bounded draws written out so output does not depend on the standard
// library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t limit = max - max % bound;
    std::uint64_t x;
    do {
      x = gen_();
    } while (x >= limit);
    return x % bound;
  }

  double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace

void SynthParams::validate() const {
  if (read_length == 0 || genome_size <= read_length) {
    throw std::invalid_argument("synth needs genome size > read length > 0");
  }
  if (!(depth >= 1)) throw std::invalid_argument("synth depth must be at least 1");
  if (!(error_rate >= 0 && error_rate < 0.3)) {
    throw std::invalid_argument("synth error rate must lie in [0, 0.3)");
  }
}

std::size_t SynthParams::read_count() const {
  return static_cast<std::size_t>(
      std::ceil(static_cast<double>(genome_size) * depth / static_cast<double>(read_length)));
}

Dataset generate_dataset(const SynthParams& params) {
  params.validate();
  Rng rng(params.seed);
  Dataset ds;
  ds.genome.resize(params.genome_size);
  for (char& c : ds.genome) c = kBases[rng.below(4)];

  const std::size_t n = params.read_count();
  const std::size_t offsets = params.genome_size - params.read_length + 1;
  const bool distinct = params.distinct_starts && n <= offsets;
  std::unordered_set<std::size_t> used;

  ds.reads.reserve(n);
  ds.truth.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t start;
    do {
      start = rng.below(offsets);
    } while (distinct && !used.insert(start).second);

    TruthRecord t{i, start, start + params.read_length,
                  rng.below(2) == 1 ? Strand::Reverse : Strand::Forward};
    std::string seq = ds.genome.substr(start, params.read_length);
    if (t.strand == Strand::Reverse) seq = reverse_complement(seq);
    if (params.error_rate > 0) {
      for (char& c : seq) {
        if (rng.unit() < params.error_rate) {
          const auto code = static_cast<std::size_t>(std::find(kBases, kBases + 4, c) - kBases);
          c = kBases[(code + 1 + rng.below(3)) % 4];
        }
      }
    }
    ds.reads.push_back(Read{i, "read_" + std::to_string(i), std::move(seq)});
    ds.truth.push_back(t);
  }
  return ds;
}

std::size_t truth_overlap(const TruthRecord& a, const TruthRecord& b) {
  const std::size_t lo = std::max(a.start, b.start);
  const std::size_t hi = std::min(a.end, b.end);
  return hi > lo ? hi - lo : 0;
}

SparseMatrix<OverhangEdge> expected_string_graph(const std::vector<TruthRecord>& truth,
                                                 std::size_t min_overlap) {
  std::vector<Entry<OverhangEdge>> triples;
  for (std::size_t x = 0; x < truth.size(); ++x) {
    for (std::size_t y = x + 1; y < truth.size(); ++y) {
      const TruthRecord& p = truth[x];
      const TruthRecord& q = truth[y];
      if (truth_overlap(p, q) < std::max<std::size_t>(min_overlap, 1)) continue;
      const bool p_contains_q = p.start <= q.start && q.end <= p.end;
      const bool q_contains_p = q.start <= p.start && p.end <= q.end;
      if (p_contains_q || q_contains_p) continue;

      const TruthRecord& left = p.start < q.start ? p : q;
      const TruthRecord& right = p.start < q.start ? q : p;
      const auto left_to_right = static_cast<std::uint32_t>(right.end - left.end);
      const auto right_to_left = static_cast<std::uint32_t>(right.start - left.start);

      // Orientation of the left read's edge, from which read end touches the
      // overlap: a forward read meets it with its end, a reversed one with
      // its start.
      Category lr;
      const bool lf = left.strand == Strand::Forward;
      const bool rf = right.strand == Strand::Forward;
      if (lf && rf) {
        lr = Category::Forward;
      } else if (lf && !rf) {
        lr = Category::Inner;
      } else if (!lf && rf) {
        lr = Category::Outer;
      } else {
        lr = Category::Reverse;
      }
      triples.push_back({left.read, right.read, OverhangEdge{left_to_right, lr}});
      triples.push_back({right.read, left.read, OverhangEdge{right_to_left, mirror(lr)}});
    }
  }
  return SparseMatrix<OverhangEdge>::from_triples(truth.size(), truth.size(), std::move(triples));
}

void write_truth_tsv(std::ostream& out, const std::vector<Read>& reads,
                     const std::vector<TruthRecord>& truth) {
  out << "#read\tstart\tend\tstrand\n";
  for (const TruthRecord& t : truth) {
    out << reads.at(t.read).name << '\t' << t.start << '\t' << t.end << '\t'
        << (t.strand == Strand::Forward ? '+' : '-') << '\n';
  }
}

}  // namespace olmat
