#include "qfa/sparse.hpp"

namespace qfa {

SparseVec SparseMatrix::apply(const SparseVec& x) const {
  SparseVec result;
  for (const auto& [r, rowvec] : rows_data_) {
    Rat acc(0);
    for (const auto& [c, v] : rowvec.entries()) {
      Rat xc = x.get(c);
      if (xc != 0) acc += v * xc;
    }
    if (acc != 0) result.set(r, acc);
  }
  return result;
}

SparseMatrix SparseMatrix::multiply(const SparseMatrix& other) const {
  if (cols_ != other.rows_) throw std::invalid_argument("dimension mismatch in multiply");
  SparseMatrix result(rows_, other.cols_);
  for (const auto& [r, rowvec] : rows_data_) {
    SparseVec acc;
    for (const auto& [k, v] : rowvec.entries()) {
      auto it = other.rows_data_.find(k);
      if (it != other.rows_data_.end()) acc.axpy(v, it->second);
    }
    if (!acc.is_zero()) result.rows_data_[r] = std::move(acc);
  }
  return result;
}

SparseMatrix SparseMatrix::operator+(const SparseMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw std::invalid_argument("dimension mismatch in add");
  SparseMatrix result = *this;
  for (const auto& [r, rowvec] : other.rows_data_) {
    result.rows_data_[r] += rowvec;
    if (result.rows_data_[r].is_zero()) result.rows_data_.erase(r);
  }
  return result;
}

SparseMatrix SparseMatrix::operator-(const SparseMatrix& other) const {
  SparseMatrix neg = other;
  for (auto& [r, rowvec] : neg.rows_data_) rowvec *= Rat(-1);
  return *this + neg;
}

bool SparseMatrix::operator==(const SparseMatrix& other) const {
  return rows_ == other.rows_ && cols_ == other.cols_ && rows_data_ == other.rows_data_;
}

SparseMatrix SparseMatrix::identity(int n) {
  SparseMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.set(i, i, Rat(1));
  return m;
}

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix result(cols_, rows_);
  for (const auto& [r, rowvec] : rows_data_)
    for (const auto& [c, v] : rowvec.entries()) result.set(c, r, v);
  return result;
}

}  // namespace qfa
