#pragma once

// Generators and independent reference implementations shared by the unit
// tests and the acceptance runner.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "olmat/bidirected.hpp"
#include "olmat/seqio.hpp"
#include "olmat/spmat.hpp"
#include "olmat/synth.hpp"
#include "olmat/trred.hpp"

namespace testsupport {

using namespace olmat;

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t below(std::uint64_t n) {
    return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(eng_);
  }
  long long range(long long lo, long long hi) {
    return std::uniform_int_distribution<long long>(lo, hi)(eng_);
  }
  bool chance(double p) { return std::uniform_real_distribution<double>(0, 1)(eng_) < p; }

  std::string dna(std::size_t len) {
    static constexpr char bases[] = "ACGT";
    std::string s(len, 'A');
    for (char& c : s) c = bases[below(4)];
    return s;
  }

 private:
  std::mt19937_64 eng_;
};

template <typename V>
using Dense = std::vector<std::vector<std::optional<V>>>;

template <typename V>
Dense<V> to_dense(const SparseMatrix<V>& a) {
  Dense<V> d(a.nrows(), std::vector<std::optional<V>>(a.ncols()));
  for (const auto& e : a.entries()) d[e.row][e.col] = e.value;
  return d;
}

template <typename V>
SparseMatrix<V> random_sparse(Gen& g, std::size_t rows, std::size_t cols, double density,
                              long long lo, long long hi) {
  std::vector<Entry<V>> t;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      if (g.chance(density)) t.push_back({i, j, static_cast<V>(g.range(lo, hi))});
    }
  }
  return SparseMatrix<V>::from_triples(rows, cols, std::move(t));
}

/// Triple loop over every (i, k, j); absent cells never contribute.
inline Dense<long long> dense_plus_times(const Dense<long long>& a, const Dense<long long>& b,
                                         std::size_t inner, std::size_t cols) {
  Dense<long long> c(a.size(), std::vector<std::optional<long long>>(cols));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      long long sum = 0;
      bool any = false;
      for (std::size_t k = 0; k < inner; ++k) {
        if (a[i][k] && b[k][j]) {
          sum += *a[i][k] * *b[k][j];
          any = true;
        }
      }
      if (any && sum != 0) c[i][j] = sum;
    }
  }
  return c;
}

inline Dense<long long> dense_min_plus(const Dense<long long>& a, const Dense<long long>& b,
                                       std::size_t inner, std::size_t cols) {
  Dense<long long> c(a.size(), std::vector<std::optional<long long>>(cols));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      for (std::size_t k = 0; k < inner; ++k) {
        if (a[i][k] && b[k][j]) {
          const long long v = *a[i][k] + *b[k][j];
          if (!c[i][j] || v < *c[i][j]) c[i][j] = v;
        }
      }
    }
  }
  return c;
}

/// Random overlap graph: each unordered pair becomes an edge in both
/// directions with mirrored categories and independent suffixes.
inline OverlapMatrix random_overlap_graph(Gen& g, std::size_t n, double density,
                                          Length max_suffix) {
  std::vector<Entry<OverhangEdge>> t;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!g.chance(density)) continue;
      const auto cat = static_cast<Category>(g.below(4));
      t.push_back({i, j, {static_cast<Length>(g.range(1, max_suffix)), cat}});
      t.push_back({j, i, {static_cast<Length>(g.range(1, max_suffix)), mirror(cat)}});
    }
  }
  return OverlapMatrix::from_triples(n, n, std::move(t));
}

/// Four reads in a forward chain: 1->0 (30), 2->0 (80), 2->1 (30), 3->1 (80),
/// 3->2 (30).
inline OverlapMatrix chain_of_four() {
  const Category f = Category::Forward;
  return OverlapMatrix::from_triples(4, 4, {{1, 0, {30, f}},
                                            {2, 0, {80, f}},
                                            {2, 1, {30, f}},
                                            {3, 1, {80, f}},
                                            {3, 2, {30, f}}});
}

using EdgeKey = std::tuple<std::size_t, std::size_t, Length, Category>;

inline std::set<EdgeKey> edge_set(const OverlapMatrix& m) {
  std::set<EdgeKey> s;
  for (const auto& e : m.entries()) s.insert({e.row, e.col, e.value.suffix, e.value.category});
  return s;
}

struct PathRecovery {
  std::size_t interior = 0;
  std::size_t one_each_side = 0;
  std::size_t adjacent = 0;  // neighbors are the reads next in start order

  double fraction() const {
    return interior ? static_cast<double>(one_each_side) / static_cast<double>(interior) : 0.0;
  }
};

/// For every read that is neither first nor last by genome start, counts S
/// neighbours starting before and after it.
inline PathRecovery path_recovery(const OverlapMatrix& s, const std::vector<TruthRecord>& truth) {
  std::vector<std::size_t> order(truth.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return truth[x].start < truth[y].start; });
  std::vector<std::set<std::size_t>> nb(truth.size());
  for (const auto& e : s.entries()) {
    nb[e.row].insert(e.col);
    nb[e.col].insert(e.row);
  }
  PathRecovery pr;
  for (std::size_t p = 1; p + 1 < order.size(); ++p) {
    const std::size_t v = order[p];
    ++pr.interior;
    std::vector<std::size_t> before, after;
    for (std::size_t u : nb[v]) {
      (truth[u].start < truth[v].start ? before : after).push_back(u);
    }
    if (before.size() == 1 && after.size() == 1) {
      ++pr.one_each_side;
      if (before[0] == order[p - 1] && after[0] == order[p + 1]) ++pr.adjacent;
    }
  }
  return pr;
}

/// Exact canonical k-mer counts using string comparisons only.
inline std::map<std::string, std::uint32_t> count_oracle(const std::vector<Read>& reads,
                                                         unsigned k) {
  std::map<std::string, std::uint32_t> counts;
  for (const Read& r : reads) {
    for (std::size_t i = 0; i + k <= r.seq.size(); ++i) {
      const std::string w = r.seq.substr(i, k);
      if (!std::all_of(w.begin(), w.end(), is_acgt)) continue;
      std::string rc(w.rbegin(), w.rend());
      for (char& c : rc) c = c == 'A' ? 'T' : c == 'C' ? 'G' : c == 'G' ? 'C' : 'A';
      ++counts[std::min(w, rc)];
    }
  }
  return counts;
}

}  // namespace testsupport
