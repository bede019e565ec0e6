#include "olmat/align.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace olmat {

namespace {

struct Extension {
  int score = 0;
  std::size_t length = 0;
};

// Walks a[ia + step*t] against b[ib + step*t] while both stay in bounds and
// keeps the best prefix score, stopping once the running score falls more
// than xdrop below it.
Extension extend(std::string_view a, std::string_view b, std::ptrdiff_t ia, std::ptrdiff_t ib,
                 int step, const AlignParams& p) {
  Extension best;
  int score = 0;
  for (std::size_t t = 0;; ++t) {
    if (ia < 0 || ib < 0 || ia >= static_cast<std::ptrdiff_t>(a.size()) ||
        ib >= static_cast<std::ptrdiff_t>(b.size())) {
      break;
    }
    score += a[ia] == b[ib] ? p.match : p.mismatch;
    if (score > best.score) best = {score, t + 1};
    if (score < best.score - p.xdrop) break;
    ia += step;
    ib += step;
  }
  return best;
}

}  // namespace

void AlignParams::validate() const {
  if (match <= 0) throw std::invalid_argument("match score must be positive");
  if (mismatch >= 0) throw std::invalid_argument("mismatch score must be negative");
  if (xdrop < 0) throw std::invalid_argument("xdrop must be non-negative");
  if (seed_length == 0) throw std::invalid_argument("seed length must be positive");
}

AlignmentResult xdrop_extend(const Read& a, const Read& b, const Seed& seed,
                             const AlignParams& params) {
  params.validate();
  const std::size_t k = params.seed_length;
  if (seed.pos_a + k > a.len() || seed.pos_b + k > b.len()) {
    throw std::out_of_range("seed (" + std::to_string(seed.pos_a) + "," +
                            std::to_string(seed.pos_b) + ") does not fit reads " + a.name +
                            " and " + b.name);
  }

  AlignmentResult r;
  r.rc = seed.rc_a != seed.rc_b;
  std::string b_rc;
  std::string_view bview = b.seq;
  std::size_t pos_b = seed.pos_b;
  if (r.rc) {
    b_rc = reverse_complement(b.seq);
    bview = b_rc;
    pos_b = b.len() - seed.pos_b - k;
  }

  const auto ia = static_cast<std::ptrdiff_t>(seed.pos_a);
  const auto ib = static_cast<std::ptrdiff_t>(pos_b);
  const Extension right = extend(a.seq, bview, ia, ib, +1, params);
  const Extension left = extend(a.seq, bview, ia - 1, ib - 1, -1, params);

  r.score = right.score + left.score;
  r.begin_a = static_cast<std::uint32_t>(seed.pos_a - left.length);
  r.end_a = static_cast<std::uint32_t>(seed.pos_a + right.length);
  const auto begin_b = static_cast<std::uint32_t>(pos_b - left.length);
  const auto end_b = static_cast<std::uint32_t>(pos_b + right.length);
  if (r.rc) {
    const auto lb = static_cast<std::uint32_t>(b.len());
    r.begin_b = lb - end_b;
    r.end_b = lb - begin_b;
  } else {
    r.begin_b = begin_b;
    r.end_b = end_b;
  }
  return r;
}

std::optional<OverhangPair> derive_overhangs(const AlignmentResult& r, std::uint32_t len_a,
                                             std::uint32_t len_b, unsigned end_slack) {
  if (r.end_a <= r.begin_a || r.end_b <= r.begin_b) {
    throw std::invalid_argument("zero-length alignment");
  }
  if (r.end_a > len_a || r.end_b > len_b) {
    throw std::invalid_argument("alignment extends past read end");
  }
  // Work in the alignment frame: B flipped when the pair is rc.
  const std::uint32_t bb = r.rc ? len_b - r.end_b : r.begin_b;
  const std::uint32_t be = r.rc ? len_b - r.begin_b : r.end_b;
  const std::uint32_t ab = r.begin_a;
  const std::uint32_t ae = r.end_a;

  const bool covers_a = ab <= end_slack && ae + end_slack >= len_a;
  const bool covers_b = bb <= end_slack && be + end_slack >= len_b;
  if (covers_a || covers_b) return std::nullopt;

  // A before B in the frame: A's tail meets B's head.
  bool a_first;
  if (ab != bb) {
    a_first = ab > bb;
  } else if (len_a - ae != len_b - be) {
    a_first = len_a - ae < len_b - be;
  } else {
    return std::nullopt;
  }

  std::uint32_t suffix_ab;
  std::uint32_t suffix_ba;
  if (a_first) {
    suffix_ab = len_b - be;
    suffix_ba = ab;
  } else {
    suffix_ab = bb;
    suffix_ba = len_a - ae;
  }
  if (suffix_ab == 0 || suffix_ba == 0) return std::nullopt;

  Category cat;
  if (r.rc) {
    cat = a_first ? Category::Inner : Category::Outer;
  } else {
    cat = a_first ? Category::Forward : Category::Reverse;
  }
  return OverhangPair{{suffix_ab, cat}, {suffix_ba, mirror(cat)}};
}

std::vector<PairAlignment> align_candidates(const SparseMatrix<OverlapValue>& c,
                                            const std::vector<Read>& reads,
                                            const AlignParams& params, int threshold) {
  params.validate();
  std::vector<PairAlignment> out;
  for (const auto& e : c.entries()) {
    if (e.row >= e.col) continue;
    const Read& a = reads.at(e.row);
    const Read& b = reads.at(e.col);

    PairAlignment pa;
    pa.a = e.row;
    pa.b = e.col;
    pa.shared_kmers = e.value.count;
    bool first = true;
    for (const Seed& s : e.value.stored_seeds()) {
      AlignmentResult r = xdrop_extend(a, b, s, params);
      if (first || r.score > pa.alignment.score) pa.alignment = r;
      first = false;
    }
    if (first) continue;

    if (pa.alignment.score < threshold) {
      pa.outcome = PairOutcome::BelowThreshold;
    } else if (auto edges = derive_overhangs(pa.alignment, static_cast<std::uint32_t>(a.len()),
                                             static_cast<std::uint32_t>(b.len()),
                                             params.end_slack)) {
      pa.outcome = PairOutcome::Accepted;
      pa.edges = *edges;
    } else {
      pa.outcome = PairOutcome::Contained;
    }
    out.push_back(pa);
  }
  return out;
}

SparseMatrix<OverhangEdge> assemble_R(std::size_t n, const std::vector<PairAlignment>& pairs) {
  std::vector<Entry<OverhangEdge>> triples;
  for (const auto& p : pairs) {
    if (p.outcome != PairOutcome::Accepted) continue;
    triples.push_back({p.a, p.b, p.edges.a_to_b});
    triples.push_back({p.b, p.a, p.edges.b_to_a});
  }
  return SparseMatrix<OverhangEdge>::from_triples(n, n, std::move(triples));
}

SparseMatrix<OverhangEdge> build_R(const SparseMatrix<OverlapValue>& c,
                                   const std::vector<Read>& reads, const AlignParams& params,
                                   int threshold) {
  return assemble_R(reads.size(), align_candidates(c, reads, params, threshold));
}

void write_overlap_tsv(std::ostream& out, const std::vector<Read>& reads,
                       const std::vector<PairAlignment>& pairs) {
  out << "#nameA\tnameB\tcount\tscore\trc\tbeginA\tendA\tlenA\tbeginB\tendB\tlenB\tcategory"
         "\tsuffixAB\tsuffixBA\n";
  for (const auto& p : pairs) {
    if (p.outcome != PairOutcome::Accepted) continue;
    const Read& a = reads.at(p.a);
    const Read& b = reads.at(p.b);
    const auto& r = p.alignment;
    out << a.name << '\t' << b.name << '\t' << p.shared_kmers << '\t' << r.score << '\t'
        << (r.rc ? 1 : 0) << '\t' << r.begin_a << '\t' << r.end_a << '\t' << a.len() << '\t'
        << r.begin_b << '\t' << r.end_b << '\t' << b.len() << '\t'
        << to_string(p.edges.a_to_b.category) << '\t' << p.edges.a_to_b.suffix << '\t'
        << p.edges.b_to_a.suffix << '\n';
  }
}

}  // namespace olmat
