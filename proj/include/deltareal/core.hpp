#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace deltareal {

using Int = std::int64_t;

/// A vector in the ambient group Z^N (an element of a monoid).
using ElementVec = std::vector<Int>;
/// Exponent vector over an ordered atom list; its coordinate sum is the factorization length.
using ExponentVec = std::vector<Int>;

class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace checked {

inline Int add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer overflow in addition");
  return r;
}

inline Int sub(Int a, Int b) {
  Int r;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("integer overflow in subtraction");
  return r;
}

inline Int mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer overflow in multiplication");
  return r;
}

// acc += factor * v
inline void axpy(std::span<Int> acc, Int factor, std::span<const Int> v) {
  if (acc.size() != v.size()) throw DimensionError("axpy: dimension mismatch");
  for (std::size_t i = 0; i < v.size(); ++i) acc[i] = add(acc[i], mul(factor, v[i]));
}

}  // namespace checked

inline Int length(std::span<const Int> x) {
  Int s = 0;
  for (Int c : x) s = checked::add(s, c);
  return s;
}

inline bool is_zero(std::span<const Int> v) {
  return std::all_of(v.begin(), v.end(), [](Int c) { return c == 0; });
}

// Coordinatewise a <= b.
inline bool leq(std::span<const Int> a, std::span<const Int> b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

/// Drops every vector that is coordinatewise >= another (distinct) vector of the set.
/// Result is sorted ascending lexicographically.
inline std::vector<ExponentVec> minimalize(std::vector<ExponentVec> vs) {
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  // Sorting by total length first means a dominating vector is always seen after its dominator.
  std::vector<ExponentVec> byLen = vs;
  std::stable_sort(byLen.begin(), byLen.end(),
                   [](const ExponentVec& a, const ExponentVec& b) { return length(a) < length(b); });
  std::vector<ExponentVec> kept;
  for (const auto& v : byLen) {
    bool dominated = std::any_of(kept.begin(), kept.end(), [&](const ExponentVec& k) { return leq(k, v); });
    if (!dominated) kept.push_back(v);
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

inline std::string to_string(std::span<const Int> v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + ")";
}

/// Dense integer matrix stored by columns; column j is the ambient vector of atom j.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static IntMatrix from_columns(std::size_t rows, const std::vector<ElementVec>& columns) {
    IntMatrix m(rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (columns[j].size() != rows) throw DimensionError("IntMatrix: column " + std::to_string(j) + " has wrong length");
      std::copy(columns[j].begin(), columns[j].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(j * rows));
    }
    return m;
  }

  static IntMatrix from_rows(const std::vector<std::vector<Int>>& rowsData) {
    const std::size_t r = rowsData.size();
    const std::size_t c = r ? rowsData.front().size() : 0;
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
      if (rowsData[i].size() != c) throw DimensionError("IntMatrix: ragged rows");
      for (std::size_t j = 0; j < c; ++j) m(i, j) = rowsData[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& operator()(std::size_t r, std::size_t c) { return data_[c * rows_ + r]; }
  Int operator()(std::size_t r, std::size_t c) const { return data_[c * rows_ + r]; }

  std::span<const Int> col(std::size_t j) const { return {data_.data() + j * rows_, rows_}; }

  ElementVec apply(std::span<const Int> x) const {
    if (x.size() != cols_) throw DimensionError("IntMatrix::apply: dimension mismatch");
    ElementVec out(rows_, 0);
    for (std::size_t j = 0; j < cols_; ++j)
      if (x[j] != 0) checked::axpy(out, x[j], col(j));
    return out;
  }

  bool columns_nonneg_nonzero() const {
    for (std::size_t j = 0; j < cols_; ++j) {
      auto c = col(j);
      if (std::any_of(c.begin(), c.end(), [](Int v) { return v < 0; }) || is_zero(c)) return false;
    }
    return true;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

}  // namespace deltareal
