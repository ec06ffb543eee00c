#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qfa/sparse.hpp"

namespace qfa {

/// The minimal polynomial has an irreducible factor of degree > 1 over Q.
struct NonRationalSpectrumError : std::runtime_error {
  explicit NonRationalSpectrumError(std::string factor_text)
      : std::runtime_error("non-rational spectrum; irreducible factor " + factor_text),
        factor(std::move(factor_text)) {}
  std::string factor;
};

/// Dense polynomial with rational coefficients, low degree first.
/// Trailing zero coefficients are trimmed; the zero polynomial is {}.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rat> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  static Polynomial monomial(int degree, const Rat& c = Rat(1));

  const std::vector<Rat>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  Rat leading() const { return coeffs_.empty() ? Rat(0) : coeffs_.back(); }

  Rat eval(const Rat& x) const;
  SparseMatrix eval(const SparseMatrix& m) const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  bool operator==(const Polynomial& o) const { return coeffs_ == o.coeffs_; }

  /// Quotient and remainder; divisor must be nonzero.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& divisor) const;

  Polynomial monic() const;
  std::string to_string(const std::string& var = "x") const;

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }
  std::vector<Rat> coeffs_;
};

Polynomial poly_gcd(Polynomial a, Polynomial b);
Polynomial poly_lcm(const Polynomial& a, const Polynomial& b);

/// Rational roots of p with multiplicities, plus the root-free cofactor.
struct RootSplit {
  std::vector<std::pair<Rat, int>> roots;  // (root, multiplicity), sorted
  Polynomial cofactor;                     // no rational roots; degree 0 when p splits
};
RootSplit rational_roots(const Polynomial& p);

/// Incremental exact row reducer (reduced echelon, pivot-normalized).
class Echelon {
 public:
  /// Reduces v against the stored rows; returns the residue.
  SparseVec reduce(SparseVec v) const;

  /// Reduces and, if the residue is nonzero, inserts it. Returns true when
  /// the vector was independent of the stored rows.
  bool insert(SparseVec v);

  int rank() const { return static_cast<int>(rows_.size()); }
  const std::vector<SparseVec>& rows() const { return rows_; }

  /// Column indices that are not pivots, among [0, cols).
  std::vector<int> free_columns(int cols) const;

 private:
  std::vector<SparseVec> rows_;  // each monic at its pivot, mutually reduced
  std::map<int, int> pivot_to_row_;
};

struct RankKernel {
  int rank;
  std::vector<SparseVec> kernel_basis;
};

/// Exact rank and kernel basis of m (vectors of length m.cols()).
RankKernel rank_kernel(const SparseMatrix& m);

/// Minimal polynomial via per-vector Krylov relations, LCM-combined.
Polynomial min_poly(const SparseMatrix& m);

struct EigenBlock {
  Rat eigenvalue;
  int multiplicity;                 // root multiplicity in the minimal polynomial
  std::vector<SparseVec> basis;     // generalized eigenspace basis
};

struct EigenSplit {
  std::vector<EigenBlock> blocks;   // sorted by eigenvalue
  Polynomial minimal_polynomial;
};

/// Generalized eigenspace decomposition; throws NonRationalSpectrumError
/// when the minimal polynomial does not split over Q.
EigenSplit gen_eigen_split(const SparseMatrix& m);

}  // namespace qfa
