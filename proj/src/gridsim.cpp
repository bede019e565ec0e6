#include "olmat/gridsim.hpp"

#include <algorithm>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <random>
#include <set>
#include <stdexcept>

namespace olmat {

ProcessGrid::ProcessGrid(std::size_t side) : q_(side) {
  if (side == 0) throw std::invalid_argument("process grid side must be at least 1");
}

void CommLedger::deliver(const std::string& stage, std::size_t from, std::size_t to,
                         std::uint64_t words) {
  if (from >= ranks_ || to >= ranks_) throw std::out_of_range("ledger rank out of range");
  CommCounters& src = cells_[{from, stage}];
  src.words_sent += words;
  src.messages_sent += 1;
  CommCounters& dst = cells_[{to, stage}];
  dst.words_received += words;
  dst.messages_received += 1;
}

const CommCounters& CommLedger::at(std::size_t rank, const std::string& stage) const {
  static const CommCounters kEmpty{};
  auto it = cells_.find({rank, stage});
  return it == cells_.end() ? kEmpty : it->second;
}

CommCounters CommLedger::rank_total(std::size_t rank) const {
  CommCounters sum;
  for (const auto& [key, c] : cells_) {
    if (key.first == rank) sum += c;
  }
  return sum;
}

CommCounters CommLedger::stage_total(const std::string& stage) const {
  CommCounters sum;
  for (const auto& [key, c] : cells_) {
    if (key.second == stage) sum += c;
  }
  return sum;
}

CommCounters CommLedger::total() const {
  CommCounters sum;
  for (const auto& [key, c] : cells_) sum += c;
  return sum;
}

std::vector<std::string> CommLedger::stages() const {
  std::set<std::string> names;
  for (const auto& [key, c] : cells_) names.insert(key.second);
  return {names.begin(), names.end()};
}

void CommLedger::merge(const CommLedger& other) {
  if (ranks_ == 0) ranks_ = other.ranks_;
  if (other.ranks_ != ranks_) throw std::invalid_argument("ledger rank counts differ");
  for (const auto& [key, c] : other.cells_) cells_[key] += c;
}

void CommLedger::write_tsv(std::ostream& out) const {
  out << "#rank\tstage\twords\tmessages\n";
  const auto names = stages();
  for (std::size_t r = 0; r < ranks_; ++r) {
    for (const auto& s : names) {
      const CommCounters& c = at(r, s);
      out << r << '\t' << s << '\t' << c.words_received << '\t' << c.messages_received << '\n';
    }
  }
}

std::vector<std::size_t> random_permutation(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  for (std::size_t i = n; i > 1; --i) {
    // Rejection sampling keeps the draw uniform and library-independent.
    const std::uint64_t bound = i;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
      x = rng();
    } while (x >= limit);
    std::swap(perm[i - 1], perm[x % bound]);
  }
  return perm;
}

std::vector<std::size_t> inverse_permutation(const std::vector<std::size_t>& perm) {
  std::vector<std::size_t> inv(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) inv.at(perm[i]) = i;
  return inv;
}

void CostModelInputs::validate() const {
  const std::pair<const char*, double> fields[] = {
      {"n", n}, {"m", m}, {"l", l}, {"k", k}, {"d", d}, {"G", G},
      {"a", a}, {"c", c}, {"r", r}, {"P", P}, {"b", b}, {"t", t}};
  for (auto [name, v] : fields) {
    if (!(v > 0)) {
      throw std::invalid_argument(std::string("cost model input ") + name + " must be positive");
    }
  }
}

std::vector<StageCost> analytic_costs(const CostModelInputs& in) {
  in.validate();
  const double sqrt_p = std::sqrt(in.P);
  const double kmer_w = in.n * in.l * in.k / (4.0 * in.P);
  return {
      {"kmer", kmer_w, kmer_w, in.b * in.P, in.b * in.P},
      {"overlap", in.a * in.a * in.m / in.P, in.a * in.m / sqrt_p, in.P, sqrt_p},
      {"read_exchange", in.c * in.n * in.l / in.P, 2.0 * in.n * in.l / sqrt_p,
       std::min(in.c * in.n * in.l / in.P, in.P), sqrt_p},
      {"transitive_reduction", std::nullopt, in.r * in.n / sqrt_p, std::nullopt,
       in.t * sqrt_p},
  };
}

void write_cost_tsv(std::ostream& out, const std::vector<StageCost>& costs) {
  auto put = [&out](const std::optional<double>& v) {
    if (v) {
      out << std::setprecision(10) << *v;
    } else {
      out << "NA";
    }
  };
  out << "#stage\tlayout\tW\tY\n";
  for (const auto& c : costs) {
    out << c.stage << "\t1D\t";
    put(c.w_1d);
    out << '\t';
    put(c.y_1d);
    out << '\n' << c.stage << "\t2D\t";
    put(c.w_2d);
    out << '\t';
    put(c.y_2d);
    out << '\n';
  }
}

double inefficiency(double c, double d) {
  if (!(c > 0) || !(d > 0)) throw std::invalid_argument("inefficiency needs c, d > 0");
  return c / (2.0 * d);
}

}  // namespace olmat
