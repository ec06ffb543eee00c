#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qfa/quotient.hpp"
#include "qfa/voa.hpp"

namespace qfa {

/// Graded Poisson algebra by structure constants: x*y commutative
/// associative, {x,y} a bracket satisfying Leibniz, with
/// p[r]*p[s] in p[r+s] and {p[r],p[s]} in p[r+s-1].
/// When complete, absent table entries mean zero; otherwise an absent
/// entry is unknown (truncated quotients) and a stored empty vector is a
/// known zero.
struct PoissonAlgebraData {
  std::string name;
  std::vector<std::string> symbols;
  std::vector<int> weights;
  int unit_index = -1;
  bool complete = true;
  std::map<std::pair<int, int>, SparseVec> mult;
  std::map<std::pair<int, int>, SparseVec> bracket;

  // filled by c2_quotient: quotient dimension per weight 0..W
  std::vector<int> profile;
  int trailing_zero_weights = 0;
  bool c2_finite_within_window() const { return trailing_zero_weights > 0; }

  int dim() const { return static_cast<int>(symbols.size()); }
  int index_of(const std::string& symbol) const;

  bool mult_known(int x, int y) const;
  bool bracket_known(int x, int y) const;
  SparseVec mult_of(int x, int y) const;     // requires known
  SparseVec bracket_of(int x, int y) const;  // requires known

  /// Bilinear extensions; nullopt when an entry is unknown.
  std::optional<SparseVec> mult_vec(const SparseVec& a,
                                    const SparseVec& b) const;
  std::optional<SparseVec> bracket_vec(const SparseVec& a,
                                       const SparseVec& b) const;
};

/// Parses and validates a Poisson-algebra JSON document (same sparse
/// triple format as the VOA products; loaded inputs are complete).
PoissonAlgebraData load_poisson(const std::string& path);
PoissonAlgebraData load_poisson_text(const std::string& json_text);

/// Zhu quotient p = V / C_2(V) at truncation: per-weight quotients of
/// V[r] by span{ u_(n)v : n <= -2 } for r <= max_weight, with the induced
/// product class(u)*class(v) = class(u_(-1)v) and bracket class(u_(0)v).
/// The result has complete = false; entries whose computation leaves the
/// window are omitted (unknown).
PoissonAlgebraData c2_quotient(const VoaData& voa, const TruncationWindow& w);

struct PoissonCheckReport {
  std::vector<std::string> failures;
  long checked = 0;
  long skipped = 0;  // instances touching unknown entries
};

/// Exact verification of commutativity, associativity, antisymmetry,
/// Jacobi, Leibniz, unit laws and the grading containments, exhaustively
/// over basis tuples.
PoissonCheckReport poisson_check(const PoissonAlgebraData& p);

}  // namespace qfa
