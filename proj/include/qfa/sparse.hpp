#pragma once

#include <map>
#include <utility>
#include <vector>

#include "qfa/rational.hpp"

namespace qfa {

/// Sparse vector over exact rationals; zero entries are never stored.
class SparseVec {
 public:
  SparseVec() = default;

  const std::map<int, Rat>& entries() const { return entries_; }
  bool is_zero() const { return entries_.empty(); }

  Rat get(int i) const {
    auto it = entries_.find(i);
    return it == entries_.end() ? Rat(0) : it->second;
  }

  void set(int i, const Rat& v) {
    if (v == 0)
      entries_.erase(i);
    else
      entries_[i] = v;
  }

  void add(int i, const Rat& v) {
    if (v == 0) return;
    auto [it, inserted] = entries_.emplace(i, v);
    if (!inserted) {
      it->second += v;
      if (it->second == 0) entries_.erase(it);
    }
  }

  SparseVec& operator+=(const SparseVec& other) {
    for (const auto& [i, v] : other.entries_) add(i, v);
    return *this;
  }

  SparseVec& operator*=(const Rat& c) {
    if (c == 0) {
      entries_.clear();
      return *this;
    }
    for (auto& [i, v] : entries_) v *= c;
    return *this;
  }

  /// this += c * other
  void axpy(const Rat& c, const SparseVec& other) {
    if (c == 0) return;
    for (const auto& [i, v] : other.entries_) add(i, c * v);
  }

  bool operator==(const SparseVec& other) const { return entries_ == other.entries_; }

  /// Index of the first nonzero entry, or -1 if zero.
  int leading_index() const { return entries_.empty() ? -1 : entries_.begin()->first; }

 private:
  std::map<int, Rat> entries_;
};

/// Sparse matrix with row-major storage; invariant: no stored zero entries.
class SparseMatrix {
 public:
  SparseMatrix() : rows_(0), cols_(0) {}
  SparseMatrix(int rows, int cols) : rows_(rows), cols_(cols) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rat get(int r, int c) const {
    auto it = rows_data_.find(r);
    return it == rows_data_.end() ? Rat(0) : it->second.get(c);
  }

  void set(int r, int c, const Rat& v) {
    check_bounds(r, c);
    rows_data_[r].set(c, v);
    if (rows_data_[r].is_zero()) rows_data_.erase(r);
  }

  void add(int r, int c, const Rat& v) {
    check_bounds(r, c);
    rows_data_[r].add(c, v);
    if (rows_data_[r].is_zero()) rows_data_.erase(r);
  }

  SparseVec row(int r) const {
    auto it = rows_data_.find(r);
    return it == rows_data_.end() ? SparseVec{} : it->second;
  }

  /// Matrix-vector product over column-index sparse vectors.
  SparseVec apply(const SparseVec& x) const;

  /// this * other
  SparseMatrix multiply(const SparseMatrix& other) const;

  SparseMatrix operator+(const SparseMatrix& other) const;
  SparseMatrix operator-(const SparseMatrix& other) const;
  bool operator==(const SparseMatrix& other) const;

  static SparseMatrix identity(int n);

  SparseMatrix transpose() const;

  const std::map<int, SparseVec>& nonzero_rows() const { return rows_data_; }

 private:
  void check_bounds(int r, int c) const {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
      throw std::out_of_range("SparseMatrix index out of bounds");
  }

  int rows_;
  int cols_;
  std::map<int, SparseVec> rows_data_;
};

}  // namespace qfa
