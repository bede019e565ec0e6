#include "olmat/trred.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace olmat {

SparseMatrix<TwoHopValue> tr_square(const OverlapMatrix& r) {
  return spgemm(r, r, BidirectedMinPlus{});
}

SparseMatrix<MaxSuffix> build_max_suffix(const OverlapMatrix& r, Length fuzz) {
  const auto suffixes = map_values(r, [](const OverhangEdge& e) { return e.suffix; });
  auto row_max = reduce_rows(
      suffixes, [](Length a, Length b) { return std::max(a, b); }, Length{0});
  row_max = apply_vector(std::move(row_max), Length{0}, [fuzz](Length v) { return v + fuzz; });
  return dim_apply_rows(r, row_max, Length{0}, [](const OverhangEdge& e, Length v) {
    return MaxSuffix{v, e.heads()};
  });
}

SparseMatrix<bool> mark_transitive(const SparseMatrix<MaxSuffix>& m,
                                   const SparseMatrix<TwoHopValue>& n) {
  return ewise_intersect(m, n, [](const MaxSuffix& direct, const TwoHopValue& two_hop) {
    const Length best = two_hop.at(direct.heads);
    return best != kInfinite && best <= direct.length ? std::optional<bool>(true)
                                                      : std::nullopt;
  });
}

OverlapMatrix prune_transitive(const OverlapMatrix& r, const SparseMatrix<bool>& marked) {
  return prune_excluding(r, marked);
}

ReductionResult transitive_reduction(const OverlapMatrix& r, const ReductionOptions& options) {
  ReductionResult result{r, {}};
  result.stats.initial_nnz = r.nnz();
  OverlapMatrix& cur = result.s;
  while (true) {
    if (result.stats.iterations == options.max_iterations) {
      throw IterationLimitReached("transitive reduction did not converge in " +
                                  std::to_string(options.max_iterations) + " iterations");
    }
    const std::size_t prev = cur.nnz();
    const auto two_hop = options.square ? options.square(cur) : tr_square(cur);
    const auto max_suffix = build_max_suffix(cur, options.fuzz);
    const auto marked = mark_transitive(max_suffix, two_hop);
    cur = prune_transitive(cur, marked);

    ++result.stats.iterations;
    result.stats.nnz_trajectory.push_back(cur.nnz());
    if (cur.nnz() == prev) break;
  }
  result.stats.removed = result.stats.initial_nnz - cur.nnz();
  return result;
}

ReductionResult transitive_reduction(const OverlapMatrix& r, Length fuzz) {
  ReductionOptions options;
  options.fuzz = fuzz;
  return transitive_reduction(r, options);
}

OverlapMatrix myers_oracle(const OverlapMatrix& r, Length fuzz) {
  struct Arc {
    std::size_t to;
    OverhangEdge edge;
    bool removed = false;
  };
  const std::size_t n = r.nrows();
  std::vector<std::vector<Arc>> out(n);
  for (const auto& e : r.entries()) out[e.row].push_back({e.col, e.value});

  auto find_arc = [&](std::size_t from, std::size_t to) -> Arc* {
    for (Arc& a : out[from]) {
      if (a.to == to) return &a;
    }
    return nullptr;
  };

  bool changed = true;
  while (changed) {
    std::vector<std::pair<std::size_t, std::size_t>> marks;
    for (std::size_t v = 0; v < n; ++v) {
      if (out[v].empty()) continue;
      Length longest = 0;
      for (const Arc& a : out[v]) longest = std::max(longest, a.edge.suffix);
      longest += fuzz;

      for (const Arc& first : out[v]) {
        for (const Arc& second : out[first.to]) {
          if (first.edge.heads().dst == second.edge.heads().src) continue;
          if (first.edge.suffix + second.edge.suffix > longest) continue;
          const Arc* direct = find_arc(v, second.to);
          if (direct == nullptr) continue;
          if (direct->edge.heads().src == first.edge.heads().src &&
              direct->edge.heads().dst == second.edge.heads().dst) {
            marks.emplace_back(v, second.to);
          }
        }
      }
    }
    changed = false;
    for (auto [from, to] : marks) {
      Arc* a = find_arc(from, to);
      if (!a->removed) {
        a->removed = true;
        changed = true;
      }
    }
    for (auto& arcs : out) {
      std::erase_if(arcs, [](const Arc& a) { return a.removed; });
    }
  }

  std::vector<Entry<OverhangEdge>> triples;
  for (std::size_t v = 0; v < n; ++v) {
    for (const Arc& a : out[v]) triples.push_back({v, a.to, a.edge});
  }
  return OverlapMatrix::from_triples(n, r.ncols(), std::move(triples));
}

void write_string_graph_tsv(std::ostream& out, const OverlapMatrix& s,
                            const std::vector<std::string>& names) {
  out << "#src\tdst\thead_src\thead_dst\tsuffix\n";
  for (const auto& e : s.entries()) {
    const HeadPair h = e.value.heads();
    out << names.at(e.row) << '\t' << names.at(e.col) << '\t' << to_string(h.src) << '\t'
        << to_string(h.dst) << '\t' << e.value.suffix << '\n';
  }
}

OverlapMatrix read_string_graph_tsv(std::istream& in, std::vector<std::string>& names) {
  names.clear();
  std::unordered_map<std::string, std::size_t> ids;
  auto id_of = [&](const std::string& name) {
    auto [it, inserted] = ids.try_emplace(name, names.size());
    if (inserted) names.push_back(name);
    return it->second;
  };

  std::vector<Entry<OverhangEdge>> triples;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::string src, dst, hs, hd;
    long long suffix = 0;
    if (!(fields >> src >> dst >> hs >> hd >> suffix)) {
      throw std::runtime_error("edge TSV line " + std::to_string(line_no) + ": expected 5 fields");
    }
    const auto head_src = parse_head(hs);
    const auto head_dst = parse_head(hd);
    if (!head_src || !head_dst) {
      throw std::runtime_error("edge TSV line " + std::to_string(line_no) +
                               ": heads must be IN or OUT");
    }
    if (suffix <= 0 || suffix > std::numeric_limits<Length>::max()) {
      throw std::runtime_error("edge TSV line " + std::to_string(line_no) +
                               ": suffix must be positive");
    }
    const std::size_t a = id_of(src);
    const std::size_t b = id_of(dst);
    triples.push_back({a, b, OverhangEdge{static_cast<Length>(suffix),
                                          category_for({*head_src, *head_dst})}});
  }
  return OverlapMatrix::from_triples(names.size(), names.size(), std::move(triples));
}

void write_reduction_stats(std::ostream& out, const ReductionStats& stats, std::size_t nnz_final) {
  out << "#iterations\tremoved\tnnz_final\n"
      << stats.iterations << '\t' << stats.removed << '\t' << nnz_final << '\n';
}

}  // namespace olmat
