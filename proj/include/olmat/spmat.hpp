#pragma once

// Coordinate-list sparse matrices and the semiring algebra the overlap and
// layout stages are written in. Entries are kept sorted by (row, col) with no
// duplicate coordinates; every operation returns a matrix in that form.

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <functional>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace olmat {

template <typename V>
struct Entry {
  std::size_t row;
  std::size_t col;
  V value;

  bool operator==(const Entry&) const = default;
};

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

template <typename V>
class SparseMatrix {
 public:
  using value_type = V;

  SparseMatrix() = default;
  SparseMatrix(std::size_t nrows, std::size_t ncols) : nrows_(nrows), ncols_(ncols) {}

  /// Sorts the triples; throws on out-of-range or duplicate coordinates.
  static SparseMatrix from_triples(std::size_t nrows, std::size_t ncols,
                                   std::vector<Entry<V>> triples) {
    std::stable_sort(triples.begin(), triples.end(), coord_less);
    for (std::size_t i = 0; i < triples.size(); ++i) {
      const auto& e = triples[i];
      if (e.row >= nrows || e.col >= ncols) {
        throw std::out_of_range("entry (" + std::to_string(e.row) + "," +
                                std::to_string(e.col) + ") outside " +
                                std::to_string(nrows) + "x" + std::to_string(ncols));
      }
      if (i > 0 && triples[i - 1].row == e.row && triples[i - 1].col == e.col) {
        throw std::invalid_argument("duplicate entry (" + std::to_string(e.row) + "," +
                                    std::to_string(e.col) + ")");
      }
    }
    return from_sorted(nrows, ncols, std::move(triples));
  }

  /// Caller guarantees sorted, unique, in-range triples.
  static SparseMatrix from_sorted(std::size_t nrows, std::size_t ncols,
                                  std::vector<Entry<V>> triples) {
    SparseMatrix m(nrows, ncols);
    m.entries_ = std::move(triples);
    return m;
  }

  std::size_t nrows() const { return nrows_; }
  std::size_t ncols() const { return ncols_; }
  std::size_t nnz() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  std::span<const Entry<V>> entries() const { return entries_; }
  std::vector<Entry<V>> release() && { return std::move(entries_); }

  const V* find(std::size_t row, std::size_t col) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), std::pair{row, col},
                               [](const Entry<V>& e, const std::pair<std::size_t, std::size_t>& key) {
                                 return e.row < key.first ||
                                        (e.row == key.first && e.col < key.second);
                               });
    if (it == entries_.end() || it->row != row || it->col != col) return nullptr;
    return &it->value;
  }

  bool contains(std::size_t row, std::size_t col) const { return find(row, col) != nullptr; }

  /// Entries of one row, via binary search.
  std::span<const Entry<V>> row(std::size_t r) const {
    auto lo = std::lower_bound(entries_.begin(), entries_.end(), r,
                               [](const Entry<V>& e, std::size_t key) { return e.row < key; });
    auto hi = std::upper_bound(lo, entries_.end(), r,
                               [](std::size_t key, const Entry<V>& e) { return key < e.row; });
    return {lo, hi};
  }

  /// Offsets into entries() for each row start, length nrows + 1.
  std::vector<std::size_t> row_offsets() const {
    std::vector<std::size_t> off(nrows_ + 1, 0);
    for (const auto& e : entries_) ++off[e.row + 1];
    for (std::size_t i = 0; i < nrows_; ++i) off[i + 1] += off[i];
    return off;
  }

  bool operator==(const SparseMatrix&) const = default;

  static bool coord_less(const Entry<V>& a, const Entry<V>& b) {
    return a.row < b.row || (a.row == b.row && a.col < b.col);
  }

 private:
  std::size_t nrows_ = 0;
  std::size_t ncols_ = 0;
  std::vector<Entry<V>> entries_;
};

/// A semiring over (Lhs, Rhs) -> value_type. `multiply` returns nullopt to
/// annihilate a product so it never reaches accumulation.
template <typename S, typename Lhs, typename Rhs>
concept Semiring = requires(const S& sr, const Lhs& a, const Rhs& b,
                            const typename S::value_type& v) {
  typename S::value_type;
  { sr.zero() } -> std::convertible_to<typename S::value_type>;
  { sr.multiply(a, b) } -> std::same_as<std::optional<typename S::value_type>>;
  { sr.add(v, v) } -> std::convertible_to<typename S::value_type>;
};

template <typename S, typename V>
bool is_semiring_zero(const S& sr, const V& v) {
  if constexpr (requires { sr.is_zero(v); }) {
    return sr.is_zero(v);
  } else {
    return v == sr.zero();
  }
}

/// Ordinary (+, x) over an arithmetic type.
template <typename T>
struct PlusTimes {
  using value_type = T;
  T zero() const { return T{}; }
  T add(const T& a, const T& b) const { return a + b; }
  std::optional<T> multiply(const T& a, const T& b) const { return a * b; }
};

/// (min, +) over an arithmetic type; the additive identity is +infinity,
/// represented by the type's max().
template <typename T>
struct MinPlus {
  using value_type = T;
  T zero() const { return std::numeric_limits<T>::max(); }
  T add(const T& a, const T& b) const { return std::min(a, b); }
  std::optional<T> multiply(const T& a, const T& b) const { return a + b; }
};

template <typename Lhs, typename Rhs, typename S>
  requires Semiring<S, Lhs, Rhs>
SparseMatrix<typename S::value_type> spgemm(const SparseMatrix<Lhs>& a,
                                            const SparseMatrix<Rhs>& b, const S& sr) {
  using Out = typename S::value_type;
  if (a.ncols() != b.nrows()) {
    throw DimensionMismatch("spgemm: " + std::to_string(a.nrows()) + "x" +
                            std::to_string(a.ncols()) + " times " +
                            std::to_string(b.nrows()) + "x" + std::to_string(b.ncols()));
  }
  const auto b_off = b.row_offsets();
  const auto b_entries = b.entries();
  const auto a_entries = a.entries();

  std::vector<Entry<Out>> out;
  std::vector<std::optional<Out>> acc(b.ncols());
  std::vector<std::size_t> touched;

  std::size_t pos = 0;
  while (pos < a_entries.size()) {
    const std::size_t i = a_entries[pos].row;
    // Row i of A is visited in ascending k, which fixes the accumulation order.
    for (; pos < a_entries.size() && a_entries[pos].row == i; ++pos) {
      const auto& ae = a_entries[pos];
      for (std::size_t q = b_off[ae.col]; q < b_off[ae.col + 1]; ++q) {
        const auto& be = b_entries[q];
        std::optional<Out> p = sr.multiply(ae.value, be.value);
        if (!p) continue;
        auto& slot = acc[be.col];
        if (slot) {
          slot = sr.add(*slot, *p);
        } else {
          slot = std::move(*p);
          touched.push_back(be.col);
        }
      }
    }
    std::sort(touched.begin(), touched.end());
    for (std::size_t j : touched) {
      if (!is_semiring_zero(sr, *acc[j])) out.push_back({i, j, std::move(*acc[j])});
      acc[j].reset();
    }
    touched.clear();
  }
  return SparseMatrix<Out>::from_sorted(a.nrows(), b.ncols(), std::move(out));
}

template <typename V>
SparseMatrix<V> transpose(const SparseMatrix<V>& a) {
  std::vector<std::size_t> count(a.ncols() + 1, 0);
  for (const auto& e : a.entries()) ++count[e.col + 1];
  for (std::size_t j = 0; j < a.ncols(); ++j) count[j + 1] += count[j];
  // Counting sort by column keeps rows ascending within each column.
  std::vector<std::optional<Entry<V>>> slots(a.nnz());
  for (const auto& e : a.entries()) slots[count[e.col]++] = Entry<V>{e.col, e.row, e.value};
  std::vector<Entry<V>> out;
  out.reserve(a.nnz());
  for (auto& s : slots) out.push_back(std::move(*s));
  return SparseMatrix<V>::from_sorted(a.ncols(), a.nrows(), std::move(out));
}

template <typename V, typename F>
auto map_values(const SparseMatrix<V>& a, F&& f)
    -> SparseMatrix<std::decay_t<std::invoke_result_t<F, const V&>>> {
  using Out = std::decay_t<std::invoke_result_t<F, const V&>>;
  std::vector<Entry<Out>> out;
  out.reserve(a.nnz());
  for (const auto& e : a.entries()) out.push_back({e.row, e.col, f(e.value)});
  return SparseMatrix<Out>::from_sorted(a.nrows(), a.ncols(), std::move(out));
}

/// Keeps entries for which `keep(row, col, value)` holds.
template <typename V, typename Pred>
SparseMatrix<V> select(const SparseMatrix<V>& a, Pred&& keep) {
  std::vector<Entry<V>> out;
  for (const auto& e : a.entries()) {
    if (keep(e.row, e.col, e.value)) out.push_back(e);
  }
  return SparseMatrix<V>::from_sorted(a.nrows(), a.ncols(), std::move(out));
}

/// v[i] = fold of `combine` over the stored values of row i, or `dflt` for an
/// empty row.
template <typename V, typename Combine>
std::vector<V> reduce_rows(const SparseMatrix<V>& a, Combine&& combine, const V& dflt) {
  std::vector<V> v(a.nrows(), dflt);
  std::vector<bool> seen(a.nrows(), false);
  for (const auto& e : a.entries()) {
    if (seen[e.row]) {
      v[e.row] = combine(v[e.row], e.value);
    } else {
      v[e.row] = e.value;
      seen[e.row] = true;
    }
  }
  return v;
}

/// Applies f to every cell that differs from `dflt`.
template <typename T, typename F>
std::vector<T> apply_vector(std::vector<T> v, const T& dflt, F&& f) {
  for (auto& x : v) {
    if (!(x == dflt)) x = f(x);
  }
  return v;
}

/// Output (i, j, f(a_ij, v[i])) for every stored a_ij whose row has a
/// non-default v[i].
template <typename V, typename T, typename F>
auto dim_apply_rows(const SparseMatrix<V>& a, const std::vector<T>& v, const T& dflt, F&& f)
    -> SparseMatrix<std::decay_t<std::invoke_result_t<F, const V&, const T&>>> {
  using Out = std::decay_t<std::invoke_result_t<F, const V&, const T&>>;
  if (v.size() != a.nrows()) {
    throw DimensionMismatch("dim_apply_rows: vector length " + std::to_string(v.size()) +
                            " != rows " + std::to_string(a.nrows()));
  }
  std::vector<Entry<Out>> out;
  for (const auto& e : a.entries()) {
    if (v[e.row] == dflt) continue;
    out.push_back({e.row, e.col, f(e.value, v[e.row])});
  }
  return SparseMatrix<Out>::from_sorted(a.nrows(), a.ncols(), std::move(out));
}

template <typename A, typename B>
void require_same_shape(const SparseMatrix<A>& a, const SparseMatrix<B>& b, const char* op) {
  if (a.nrows() != b.nrows() || a.ncols() != b.ncols()) {
    throw DimensionMismatch(std::string(op) + ": " + std::to_string(a.nrows()) + "x" +
                            std::to_string(a.ncols()) + " vs " + std::to_string(b.nrows()) +
                            "x" + std::to_string(b.ncols()));
  }
}

/// Element-wise combination over the intersection of supports; `f` returns
/// nullopt to drop a coordinate.
template <typename A, typename B, typename F>
auto ewise_intersect(const SparseMatrix<A>& a, const SparseMatrix<B>& b, F&& f)
    -> SparseMatrix<typename std::invoke_result_t<F, const A&, const B&>::value_type> {
  using Out = typename std::invoke_result_t<F, const A&, const B&>::value_type;
  require_same_shape(a, b, "ewise_intersect");
  std::vector<Entry<Out>> out;
  auto ia = a.entries().begin();
  auto ib = b.entries().begin();
  while (ia != a.entries().end() && ib != b.entries().end()) {
    if (ia->row < ib->row || (ia->row == ib->row && ia->col < ib->col)) {
      ++ia;
    } else if (ib->row < ia->row || (ib->row == ia->row && ib->col < ia->col)) {
      ++ib;
    } else {
      if (auto v = f(ia->value, ib->value)) out.push_back({ia->row, ia->col, std::move(*v)});
      ++ia;
      ++ib;
    }
  }
  return SparseMatrix<Out>::from_sorted(a.nrows(), a.ncols(), std::move(out));
}

/// nonzeros(A) \ {coordinates set true in mask}.
template <typename V>
SparseMatrix<V> prune_excluding(const SparseMatrix<V>& a, const SparseMatrix<bool>& mask) {
  require_same_shape(a, mask, "prune_excluding");
  std::vector<Entry<V>> out;
  auto im = mask.entries().begin();
  for (const auto& e : a.entries()) {
    while (im != mask.entries().end() &&
           (im->row < e.row || (im->row == e.row && im->col < e.col))) {
      ++im;
    }
    const bool hit = im != mask.entries().end() && im->row == e.row && im->col == e.col &&
                     im->value;
    if (!hit) out.push_back(e);
  }
  return SparseMatrix<V>::from_sorted(a.nrows(), a.ncols(), std::move(out));
}

template <typename V>
SparseMatrix<V> identity(std::size_t n, const V& one) {
  std::vector<Entry<V>> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back({i, i, one});
  return SparseMatrix<V>::from_sorted(n, n, std::move(out));
}

/// Empty string when the sorted/unique/in-range invariants hold, otherwise a
/// description of the first violation.
template <typename V>
std::string invariant_violation(const SparseMatrix<V>& a) {
  const auto es = a.entries();
  for (std::size_t i = 0; i < es.size(); ++i) {
    const auto& e = es[i];
    if (e.row >= a.nrows() || e.col >= a.ncols()) {
      return "entry " + std::to_string(i) + " out of range";
    }
    if (i > 0 && !SparseMatrix<V>::coord_less(es[i - 1], e)) {
      return "entry " + std::to_string(i) + " out of order or duplicated";
    }
  }
  return {};
}

/// Also rejects stored additive identities of `sr`.
template <typename V, typename S>
std::string invariant_violation(const SparseMatrix<V>& a, const S& sr) {
  if (auto msg = invariant_violation(a); !msg.empty()) return msg;
  for (const auto& e : a.entries()) {
    if (is_semiring_zero(sr, e.value)) {
      return "explicit zero at (" + std::to_string(e.row) + "," + std::to_string(e.col) + ")";
    }
  }
  return {};
}

/// Matrix Market coordinate dump, 1-based indices. `fmt(os, value)` writes
/// one value.
template <typename V, typename Fmt>
void write_matrix_market(std::ostream& os, const SparseMatrix<V>& a, Fmt&& fmt,
                         const std::string& field = "integer") {
  os << "%%MatrixMarket matrix coordinate " << field << " general\n";
  os << a.nrows() << ' ' << a.ncols() << ' ' << a.nnz() << '\n';
  for (const auto& e : a.entries()) {
    os << e.row + 1 << ' ' << e.col + 1 << ' ';
    fmt(os, e.value);
    os << '\n';
  }
}

template <typename V>
  requires std::is_arithmetic_v<V>
void write_matrix_market(std::ostream& os, const SparseMatrix<V>& a) {
  write_matrix_market(os, a, [](std::ostream& o, const V& v) { o << v; });
}

inline SparseMatrix<long long> read_matrix_market(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("%%MatrixMarket", 0) != 0) {
    throw std::runtime_error("missing MatrixMarket banner");
  }
  while (std::getline(is, line) && !line.empty() && line[0] == '%') {
  }
  std::istringstream dims(line);
  std::size_t nrows = 0, ncols = 0, nnz = 0;
  if (!(dims >> nrows >> ncols >> nnz)) throw std::runtime_error("bad MatrixMarket size line");
  std::vector<Entry<long long>> triples;
  triples.reserve(nnz);
  for (std::size_t i = 0; i < nnz; ++i) {
    std::size_t r = 0, c = 0;
    long long v = 0;
    if (!(is >> r >> c >> v) || r == 0 || c == 0) {
      throw std::runtime_error("bad MatrixMarket entry " + std::to_string(i + 1));
    }
    triples.push_back({r - 1, c - 1, v});
  }
  return SparseMatrix<long long>::from_triples(nrows, ncols, std::move(triples));
}

}  // namespace olmat
