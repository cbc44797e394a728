#ifndef BETTILIN_SPARSE_HPP
#define BETTILIN_SPARSE_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

namespace bettilin {

/// Sparse vector: (index, value) pairs, strictly increasing indices, no
/// stored zeros.
template <class F>
using SparseVector = std::vector<std::pair<std::size_t, typename F::Element>>;

/// y + a*x
template <class F>
SparseVector<F> axpy(const F& field, const typename F::Element& a, const SparseVector<F>& x,
                     const SparseVector<F>& y) {
  SparseVector<F> out;
  if (field.is_zero(a)) return y;
  out.reserve(x.size() + y.size());
  auto ix = x.begin();
  auto iy = y.begin();
  while (ix != x.end() || iy != y.end()) {
    if (iy == y.end() || (ix != x.end() && ix->first < iy->first)) {
      out.emplace_back(ix->first, field.mul(a, ix->second));
      ++ix;
    } else if (ix == x.end() || iy->first < ix->first) {
      out.push_back(*iy);
      ++iy;
    } else {
      auto v = field.add(iy->second, field.mul(a, ix->second));
      if (!field.is_zero(v)) out.emplace_back(ix->first, std::move(v));
      ++ix;
      ++iy;
    }
  }
  return out;
}

template <class F>
SparseVector<F> scale(const F& field, const typename F::Element& a, const SparseVector<F>& x) {
  SparseVector<F> out;
  if (field.is_zero(a)) return out;
  out.reserve(x.size());
  for (const auto& [i, v] : x) out.emplace_back(i, field.mul(a, v));
  return out;
}

/// Builds a sparse vector from unsorted entries, summing duplicates.
template <class F>
SparseVector<F> make_sparse(const F& field, std::vector<std::pair<std::size_t, typename F::Element>> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseVector<F> out;
  for (auto& [i, v] : entries) {
    if (!out.empty() && out.back().first == i) {
      out.back().second = field.add(out.back().second, v);
      if (field.is_zero(out.back().second)) out.pop_back();
    } else if (!field.is_zero(v)) {
      out.emplace_back(i, std::move(v));
    }
  }
  return out;
}

/// Column-major sparse matrix over F.
template <class F>
class SparseMatrix {
 public:
  using Element = typename F::Element;
  using Column = SparseVector<F>;

  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

  static SparseMatrix from_dense(const F& field, const std::vector<std::vector<Element>>& dense) {
    std::size_t r = dense.size();
    std::size_t c = r == 0 ? 0 : dense.front().size();
    SparseMatrix m(r, c);
    for (std::size_t j = 0; j < c; ++j) {
      for (std::size_t i = 0; i < r; ++i) {
        if (!field.is_zero(dense[i][j])) m.cols_[j].emplace_back(i, dense[i][j]);
      }
    }
    return m;
  }

  static SparseMatrix identity(const F& field, std::size_t n) {
    SparseMatrix m(n, n);
    for (std::size_t j = 0; j < n; ++j) m.cols_[j].emplace_back(j, field.one());
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_.size(); }
  const Column& column(std::size_t j) const { return cols_.at(j); }
  void set_column(std::size_t j, Column c) { cols_.at(j) = std::move(c); }

  Element at(const F& field, std::size_t i, std::size_t j) const {
    for (const auto& [r, v] : cols_.at(j)) {
      if (r == i) return v;
    }
    return field.zero();
  }

  bool is_zero() const {
    for (const auto& c : cols_) {
      if (!c.empty()) return false;
    }
    return true;
  }

  /// Returns M x.
  Column apply(const F& field, const SparseVector<F>& x) const {
    Column out;
    for (const auto& [j, v] : x) out = axpy(field, v, cols_.at(j), out);
    return out;
  }

  /// Returns this * rhs.
  SparseMatrix multiply(const F& field, const SparseMatrix& rhs) const {
    if (cols() != rhs.rows()) throw std::invalid_argument("matrix shapes do not compose");
    SparseMatrix out(rows_, rhs.cols());
    for (std::size_t j = 0; j < rhs.cols(); ++j) out.cols_[j] = apply(field, rhs.cols_[j]);
    return out;
  }

  std::vector<std::vector<Element>> to_dense(const F& field) const {
    std::vector<std::vector<Element>> d(rows_, std::vector<Element>(cols(), field.zero()));
    for (std::size_t j = 0; j < cols(); ++j) {
      for (const auto& [i, v] : cols_[j]) d[i][j] = v;
    }
    return d;
  }

 private:
  std::size_t rows_ = 0;
  std::vector<Column> cols_;
};

/// Incremental column echelon form. Each stored column carries a "tag": a
/// sparse vector recording what the column stands for (e.g. the combination
/// of original columns it equals). Pivot of a column is its largest row index.
template <class F>
class ColumnEchelon {
 public:
  using Element = typename F::Element;
  using Vector = SparseVector<F>;

  struct Reduction {
    Vector remainder;    // v minus a combination of stored columns
    Vector combination;  // sum of f_k * tag_k over the stored columns used
  };

  explicit ColumnEchelon(F field) : field_(std::move(field)) {}

  /// v = remainder + sum f_k stored_k; combination = sum f_k tag_k.
  Reduction reduce(Vector v) const {
    Vector combination;
    while (!v.empty()) {
      auto it = pivot_slot_.find(v.back().first);
      if (it == pivot_slot_.end()) break;
      const Vector& col = columns_[it->second];
      Element f = field_.div(v.back().second, col.back().second);
      v = axpy(field_, field_.neg(f), col, v);
      combination = axpy(field_, f, tags_[it->second], combination);
    }
    return {std::move(v), std::move(combination)};
  }

  /// Stores an already-reduced nonzero column with its tag.
  void store(Vector reduced, Vector tag) {
    if (reduced.empty()) throw std::invalid_argument("cannot store a zero column");
    if (pivot_slot_.count(reduced.back().first)) throw std::logic_error("pivot already taken");
    pivot_slot_.emplace(reduced.back().first, columns_.size());
    columns_.push_back(std::move(reduced));
    tags_.push_back(std::move(tag));
  }

  /// Reduces v and stores it when independent. Returns true when stored.
  bool insert(Vector v, Vector tag) {
    auto red = reduce(std::move(v));
    if (red.remainder.empty()) return false;
    store(std::move(red.remainder), axpy(field_, field_.neg(field_.one()), red.combination, tag));
    return true;
  }

  std::size_t rank() const { return columns_.size(); }
  const std::vector<Vector>& columns() const { return columns_; }
  const std::vector<Vector>& tags() const { return tags_; }
  const F& field() const { return field_; }

 private:
  F field_;
  std::unordered_map<std::size_t, std::size_t> pivot_slot_;
  std::vector<Vector> columns_;
  std::vector<Vector> tags_;
};

template <class F>
std::size_t rank(const F& field, const SparseMatrix<F>& m) {
  ColumnEchelon<F> e(field);
  for (std::size_t j = 0; j < m.cols(); ++j) e.insert(m.column(j), {});
  return e.rank();
}

/// Echelon form of M; tag of each stored column = its expression in the
/// original columns (stored = M * tag).
template <class F>
ColumnEchelon<F> echelon_form(const F& field, const SparseMatrix<F>& m) {
  ColumnEchelon<F> e(field);
  for (std::size_t j = 0; j < m.cols(); ++j) {
    SparseVector<F> unit{{j, field.one()}};
    e.insert(m.column(j), unit);
  }
  return e;
}

/// Basis of ker M.
template <class F>
std::vector<SparseVector<F>> kernel_basis(const F& field, const SparseMatrix<F>& m) {
  ColumnEchelon<F> e(field);
  std::vector<SparseVector<F>> kernel;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    SparseVector<F> unit{{j, field.one()}};
    auto red = e.reduce(m.column(j));
    auto tag = axpy(field, field.neg(field.one()), red.combination, unit);
    if (red.remainder.empty()) {
      kernel.push_back(std::move(tag));
    } else {
      e.store(std::move(red.remainder), std::move(tag));
    }
  }
  return kernel;
}

/// Some x with M x = b, or nullopt when the system is inconsistent.
template <class F>
std::optional<SparseVector<F>> solve(const F& field, const SparseMatrix<F>& m, const SparseVector<F>& b) {
  if (!b.empty() && b.back().first >= m.rows()) throw std::invalid_argument("right-hand side too long");
  auto e = echelon_form(field, m);
  auto red = e.reduce(b);
  if (!red.remainder.empty()) return std::nullopt;
  return red.combination;
}

}  // namespace bettilin

#endif  // BETTILIN_SPARSE_HPP
