#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "crown/errors.hpp"
#include "crown/scalar.hpp"

namespace crown {

/// Sparse vector: (index, value) pairs, strictly increasing index, no zero values.
template <FieldScalar K>
using SparseVec = std::vector<std::pair<std::size_t, K>>;

/// Sort by index, sum duplicate indices and drop zeros.
template <FieldScalar K>
void canonicalize(SparseVec<K>& v) {
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < v.size();) {
    std::size_t j = i + 1;
    K acc = v[i].second;
    while (j < v.size() && v[j].first == v[i].first) acc += v[j++].second;
    if (!acc.is_zero()) v[out++] = {v[i].first, std::move(acc)};
    i = j;
  }
  v.resize(out);
}

/// x + c*y for sorted sparse vectors.
template <FieldScalar K>
SparseVec<K> axpy(const SparseVec<K>& x, const K& c, const SparseVec<K>& y) {
  SparseVec<K> out;
  out.reserve(x.size() + y.size());
  auto a = x.begin(), b = y.begin();
  while (a != x.end() || b != y.end()) {
    if (b == y.end() || (a != x.end() && a->first < b->first)) {
      out.push_back(*a++);
    } else if (a == x.end() || b->first < a->first) {
      K v = c * b->second;
      if (!v.is_zero()) out.emplace_back(b->first, std::move(v));
      ++b;
    } else {
      K v = a->second + c * b->second;
      if (!v.is_zero()) out.emplace_back(a->first, std::move(v));
      ++a, ++b;
    }
  }
  return out;
}

/// Index of a tuple in the lexicographic basis of the p-th tensor power of a
/// d-dimensional space: the first factor is the most significant digit.
inline std::size_t tensor_index(std::span<const std::size_t> digits, std::size_t d) {
  std::size_t idx = 0;
  for (auto k : digits) idx = idx * d + k;
  return idx;
}

inline std::vector<std::size_t> tensor_digits(std::size_t idx, std::size_t d, std::size_t p) {
  std::vector<std::size_t> digits(p);
  for (std::size_t i = p; i-- > 0;) {
    digits[i] = idx % d;
    idx /= d;
  }
  return digits;
}

/// Saturating d^p, used for cap checks.
inline std::size_t checked_power(std::size_t d, std::size_t p) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < p; ++i) {
    if (d != 0 && r > static_cast<std::size_t>(-1) / d) return static_cast<std::size_t>(-1);
    r *= d;
  }
  return r;
}

/// Tensor product of sparse vectors with dimensions dims, in lexicographic order.
template <FieldScalar K>
SparseVec<K> tensor_product(std::span<const SparseVec<K>> factors, std::span<const std::size_t> dims) {
  SparseVec<K> acc;
  if (factors.empty()) return acc;
  acc = factors[0];
  for (std::size_t f = 1; f < factors.size(); ++f) {
    SparseVec<K> next;
    next.reserve(acc.size() * factors[f].size());
    for (const auto& [i, a] : acc)
      for (const auto& [j, b] : factors[f]) next.emplace_back(i * dims[f] + j, a * b);
    acc = std::move(next);
  }
  return acc;
}

/// Sparse matrix stored by columns. Column j is the image of the j-th basis vector.
template <FieldScalar K>
class Matrix {
 public:
  using Column = SparseVec<K>;

  Matrix(FieldSpec field, std::size_t rows, std::size_t cols)
      : field_(field), rows_(rows), cols_(cols), columns_(cols) {}

  static Matrix zero(FieldSpec f, std::size_t rows, std::size_t cols) { return Matrix(f, rows, cols); }

  static Matrix identity(FieldSpec f, std::size_t n) {
    Matrix m(f, n, n);
    const K one = K::from_int(1, f);
    for (std::size_t i = 0; i < n; ++i) m.columns_[i].emplace_back(i, one);
    return m;
  }

  /// Row-major integer literal, reduced into the field.
  static Matrix from_rows(FieldSpec f, const std::vector<std::vector<long>>& rows) {
    const std::size_t r = rows.size(), c = r ? rows[0].size() : 0;
    Matrix m(f, r, c);
    for (std::size_t i = 0; i < r; ++i) {
      if (rows[i].size() != c) throw DimensionMismatch("ragged row literal");
      for (std::size_t j = 0; j < c; ++j) {
        K v = K::from_int(rows[i][j], f);
        if (!v.is_zero()) m.columns_[j].emplace_back(i, std::move(v));
      }
    }
    return m;
  }

  const FieldSpec& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const Column& column(std::size_t j) const { return columns_.at(j); }

  /// Replace column j. The column is canonicalized and range-checked.
  void set_column(std::size_t j, Column col) {
    canonicalize(col);
    if (!col.empty() && col.back().first >= rows_) throw DimensionMismatch("row index out of range");
    columns_.at(j) = std::move(col);
  }

  K at(std::size_t i, std::size_t j) const {
    const auto& col = columns_.at(j);
    auto it = std::lower_bound(col.begin(), col.end(), i, [](const auto& e, std::size_t r) { return e.first < r; });
    if (it != col.end() && it->first == i) return it->second;
    return K::from_int(0, field_);
  }

  std::size_t nnz() const noexcept {
    std::size_t n = 0;
    for (const auto& c : columns_) n += c.size();
    return n;
  }

  bool is_zero() const noexcept {
    return std::all_of(columns_.begin(), columns_.end(), [](const auto& c) { return c.empty(); });
  }

  /// First nonzero entry in column-major order, if any.
  std::optional<std::pair<std::size_t, std::size_t>> first_nonzero() const {
    for (std::size_t j = 0; j < cols_; ++j)
      if (!columns_[j].empty()) return std::pair{columns_[j].front().first, j};
    return std::nullopt;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.columns_ == b.columns_;
  }

 private:
  FieldSpec field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Column> columns_;
};

namespace detail {
template <FieldScalar K>
void require_same_field(const Matrix<K>& a, const Matrix<K>& b) {
  if (a.field() != b.field()) throw FieldMismatch(a.field().name() + " vs " + b.field().name());
}
}  // namespace detail

/// Matrix times sparse vector.
template <FieldScalar K>
SparseVec<K> matvec(const Matrix<K>& a, const SparseVec<K>& x) {
  SparseVec<K> out;
  for (const auto& [k, xk] : x) {
    if (k >= a.cols()) throw DimensionMismatch("vector index out of range");
    for (const auto& [i, aik] : a.column(k)) out.emplace_back(i, aik * xk);
  }
  canonicalize(out);
  return out;
}

/// The composite map "a after b", i.e. the product a*b.
template <FieldScalar K>
Matrix<K> compose(const Matrix<K>& a, const Matrix<K>& b) {
  detail::require_same_field(a, b);
  if (a.cols() != b.rows())
    throw DimensionMismatch("compose: " + std::to_string(a.cols()) + " cols vs " + std::to_string(b.rows()) + " rows");
  Matrix<K> out(a.field(), a.rows(), b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j) out.set_column(j, matvec(a, b.column(j)));
  return out;
}

template <FieldScalar K>
Matrix<K> add(const Matrix<K>& a, const Matrix<K>& b, const K& scale_b) {
  detail::require_same_field(a, b);
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("add: shape mismatch");
  Matrix<K> out(a.field(), a.rows(), a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) out.set_column(j, axpy(a.column(j), scale_b, b.column(j)));
  return out;
}

template <FieldScalar K>
Matrix<K> operator+(const Matrix<K>& a, const Matrix<K>& b) {
  return add(a, b, K::from_int(1, a.field()));
}

template <FieldScalar K>
Matrix<K> operator-(const Matrix<K>& a, const Matrix<K>& b) {
  return add(a, b, K::from_int(-1, a.field()));
}

template <FieldScalar K>
Matrix<K> scale(const Matrix<K>& a, const K& c) {
  Matrix<K> out(a.field(), a.rows(), a.cols());
  if (c.is_zero()) return out;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    SparseVec<K> col = a.column(j);
    for (auto& e : col) e.second = e.second * c;
    out.set_column(j, std::move(col));
  }
  return out;
}

/// Kronecker product; row (i1,i2) and column (j1,j2) are lexicographic.
template <FieldScalar K>
Matrix<K> kron(const Matrix<K>& a, const Matrix<K>& b) {
  detail::require_same_field(a, b);
  Matrix<K> out(a.field(), a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t j1 = 0; j1 < a.cols(); ++j1)
    for (std::size_t j2 = 0; j2 < b.cols(); ++j2) {
      SparseVec<K> col;
      col.reserve(a.column(j1).size() * b.column(j2).size());
      for (const auto& [i1, x] : a.column(j1))
        for (const auto& [i2, y] : b.column(j2)) col.emplace_back(i1 * b.rows() + i2, x * y);
      out.set_column(j1 * b.cols() + j2, std::move(col));
    }
  return out;
}

/// p-th Kronecker power; p = 0 gives the 1x1 identity.
template <FieldScalar K>
Matrix<K> kron_power(const Matrix<K>& a, std::size_t p) {
  Matrix<K> acc = Matrix<K>::identity(a.field(), 1);
  for (std::size_t i = 0; i < p; ++i) acc = kron(acc, a);
  return acc;
}

/// Block column [a_0; a_1; ...] (rows stacked in order).
template <FieldScalar K>
Matrix<K> vstack(std::span<const Matrix<K>> blocks) {
  if (blocks.empty()) throw DimensionMismatch("vstack of nothing");
  std::size_t rows = 0;
  for (const auto& b : blocks) {
    detail::require_same_field(b, blocks[0]);
    if (b.cols() != blocks[0].cols()) throw DimensionMismatch("vstack: column counts differ");
    rows += b.rows();
  }
  Matrix<K> out(blocks[0].field(), rows, blocks[0].cols());
  for (std::size_t j = 0; j < out.cols(); ++j) {
    SparseVec<K> col;
    std::size_t offset = 0;
    for (const auto& b : blocks) {
      for (const auto& [i, v] : b.column(j)) col.emplace_back(offset + i, v);
      offset += b.rows();
    }
    out.set_column(j, std::move(col));
  }
  return out;
}

/// Block diagonal matrix.
template <FieldScalar K>
Matrix<K> block_diagonal(std::span<const Matrix<K>> blocks) {
  if (blocks.empty()) throw DimensionMismatch("block_diagonal of nothing");
  std::size_t rows = 0, cols = 0;
  for (const auto& b : blocks) rows += b.rows(), cols += b.cols();
  Matrix<K> out(blocks[0].field(), rows, cols);
  std::size_t r0 = 0, c0 = 0;
  for (const auto& b : blocks) {
    detail::require_same_field(b, blocks[0]);
    for (std::size_t j = 0; j < b.cols(); ++j) {
      SparseVec<K> col;
      for (const auto& [i, v] : b.column(j)) col.emplace_back(r0 + i, v);
      out.set_column(c0 + j, std::move(col));
    }
    r0 += b.rows(), c0 += b.cols();
  }
  return out;
}

template <FieldScalar K>
Matrix<K> transpose(const Matrix<K>& a) {
  std::vector<SparseVec<K>> cols(a.rows());
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (const auto& [i, v] : a.column(j)) cols[i].emplace_back(j, v);
  Matrix<K> out(a.field(), a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) out.set_column(i, std::move(cols[i]));
  return out;
}

/// Permute rows: row i of the input becomes row perm[i].
template <FieldScalar K>
Matrix<K> permute_rows(const Matrix<K>& a, std::span<const std::size_t> perm) {
  if (perm.size() != a.rows()) throw DimensionMismatch("permutation length");
  Matrix<K> out(a.field(), a.rows(), a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    SparseVec<K> col;
    for (const auto& [i, v] : a.column(j)) col.emplace_back(perm[i], v);
    out.set_column(j, std::move(col));
  }
  return out;
}

/// Exact rank by sparse column elimination. Each column is reduced against
/// the stored pivots, keyed by their first nonzero row.
template <FieldScalar K>
std::size_t rank(const Matrix<K>& a) {
  std::unordered_map<std::size_t, SparseVec<K>> pivots;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    SparseVec<K> col = a.column(j);
    while (!col.empty()) {
      auto it = pivots.find(col.front().first);
      if (it == pivots.end()) break;
      col = axpy(col, -col.front().second, it->second);
    }
    if (col.empty()) continue;
    const K lead = col.front().second;
    for (auto& e : col) e.second = e.second / lead;
    const std::size_t key = col.front().first;
    pivots.emplace(key, std::move(col));
  }
  return pivots.size();
}

/// Kernel of a linear map, from the reduced row echelon form.
template <FieldScalar K>
struct KernelBasis {
  /// One vector per free column, with coordinate 1 at that column and 0 at the other free columns.
  std::vector<SparseVec<K>> vectors;
  std::vector<std::size_t> free_columns;
  std::vector<std::size_t> pivot_columns;
};

template <FieldScalar K>
KernelBasis<K> kernel(const Matrix<K>& a) {
  const FieldSpec f = a.field();
  const K zero = K::from_int(0, f);
  std::vector<std::vector<K>> rows(a.rows(), std::vector<K>(a.cols(), zero));
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (const auto& [i, v] : a.column(j)) rows[i][j] = v;

  KernelBasis<K> out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c].is_zero()) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    const K lead = rows[r][c];
    for (auto& v : rows[r]) v = v / lead;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c].is_zero()) continue;
      const K factor = rows[i][c];
      for (std::size_t k = c; k < a.cols(); ++k) rows[i][k] -= factor * rows[r][k];
    }
    out.pivot_columns.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : out.pivot_columns) is_pivot[c] = true;
  for (std::size_t c = 0; c < a.cols(); ++c) {
    if (is_pivot[c]) continue;
    out.free_columns.push_back(c);
    SparseVec<K> v;
    v.emplace_back(c, K::from_int(1, f));
    for (std::size_t k = 0; k < out.pivot_columns.size(); ++k)
      if (!rows[k][c].is_zero()) v.emplace_back(out.pivot_columns[k], -rows[k][c]);
    canonicalize(v);
    out.vectors.push_back(std::move(v));
  }
  return out;
}

}  // namespace crown
