#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qfa/linalg.hpp"
#include "qfa/voa.hpp"

namespace qfa {

struct TruncationWindow {
  int max_weight = 0;
  int depth = 2;   // extra head-mode choices when generating relations
  int rounds = 1;  // >= 2 turns on fully-evaluated Borcherds generators
};

/// One relation among the single-current generators of a slice, with the
/// parameters needed to re-derive it from scratch (provenance replay).
struct Relation {
  enum class Kind { Vacuum, Translation, Annihilation, Borcherds };
  Kind kind;
  SparseVec vec;  // over generator (= basis) indices
  int u = -1, v = -1;
  int k = 0, N = 0;
};

std::string relation_kind_name(Relation::Kind kind);

/// Degree-d slice of the canonical quotient module Q_n, presented by the
/// generators g_u = [J_{-d}(u) 1_n] and an echelonized relation set.
class QuotientSlice {
 public:
  int n = 0;
  int d = 0;
  std::vector<Relation> relations;
  std::vector<int> basis;  // coset-representative generator indices
  int dim_upper = 0;
  long dropped = 0;  // relations whose expansion left the window
  bool converged = false;

  /// Reduces a vector over generator indices to coset coordinates
  /// (supported on `basis` only).
  SparseVec reduce(const SparseVec& gen_coords) const;

  // internal: reduction state (weight-descending pivot order)
  std::vector<int> order, col_of;
  Echelon ech;
};

/// Evaluates the word J_s(u) J_t(v) 1_n as a vector over the single-current
/// generators J_{s+t}(x) 1_n (raw, not reduced by slice relations).
/// Uses the Borcherds-derived two-mode rewrite; throws OutOfWindowError
/// when a required product is not certified.
SparseVec eval_word(const VoaData& voa, int n, int s, int u, int t, int v);

/// Copy of the VOA restricted to weights <= new_max_weight.
VoaData restrict_voa(const VoaData& voa, int new_max_weight);

/// Computes the slice Q_n(d) at the given truncation window. dim_upper is a
/// certified upper bound; converged compares against max_weight - 1.
QuotientSlice compute_quotient_slice(const VoaData& voa, int n, int d,
                                     const TruncationWindow& w);

/// Re-derives a stored relation from its provenance and checks it matches.
bool replay_relation(const VoaData& voa, const QuotientSlice& slice,
                     const Relation& rel);

/// Matrices of left multiplication by J_0(omega) on the slice basis, and
/// the right action (= left - d * identity).
std::pair<SparseMatrix, SparseMatrix> h_action(const VoaData& voa,
                                               const QuotientSlice& slice);

// ---- spectrum bookkeeping (standalone, testable on synthetic root sets)

/// Minimal elements of omega under lambda <= mu iff mu - lambda in N.
std::vector<Rat> gamma_zero(std::vector<Rat> omega);

/// Largest nonnegative-integer difference of two elements of omega.
int spectral_gap(const std::vector<Rat>& omega);

/// { gamma + k : gamma in gamma0, 0 <= k <= m }, sorted, deduplicated.
std::vector<Rat> gamma_m(const std::vector<Rat>& gamma0, int m);

struct SpectrumReport {
  int n = 0;
  Polynomial phi;                         // minimal polynomial of left h
  std::vector<std::pair<Rat, int>> omega; // roots with multiplicities
  std::vector<Rat> gamma0;
  int gap = 0;
  int ell = 1;           // max root multiplicity of phi at level gap
  bool provisional = false;               // some slice unconverged
  bool omega_in_gamma = false;            // validation of omega_n in Gamma_{n+g}
};

SpectrumReport spectrum(const VoaData& voa, int n, const TruncationWindow& w);

// ---- finite algebras A_n extracted from converged slices

struct AlgebraBlock {
  Rat lambda, mu;
  int slice_d = 0;                    // = lambda - mu as an integer degree
  std::vector<SparseVec> basis;       // in Q_m(slice_d) coset coordinates
};

struct FiniteAlgebra {
  int n = 0;
  int level_m = 0;
  std::vector<Rat> gamma_n;
  std::vector<AlgebraBlock> blocks;
  int dim = 0;
  // structure constants: mult[(i,j)] = coefficients over the flat basis
  std::map<std::pair<int, int>, SparseVec> mult;
  SparseVec unit;         // over the flat basis
  SparseVec hamiltonian;  // over the flat basis
  // flat index ranges: block b covers [offset[b], offset[b] + size_b)
  std::vector<int> offset;

  int block_of_flat(int flat) const;
};

FiniteAlgebra extract_finite_algebra(const VoaData& voa, int n, int m,
                                     const TruncationWindow& w);

struct DensityReport {
  bool surjective = false;
  int slice_dim = 0;
  int eigen_dim = 0;
};

/// Checks that generalized eigenspaces of the h-action exhaust the slice.
DensityReport bimodule_density_check(const VoaData& voa, int n, int d,
                                     const TruncationWindow& w);

struct GrFiltrationReport {
  std::vector<std::string> failures;
  long checked = 0;
  long window_skips = 0;
  // words whose reduction leaves residue the truncated relation family
  // cannot yet rewrite below the expected level (not a refutation)
  long inconclusive = 0;
};

/// Spot checks of the weight filtration on sampled in-window products:
/// multiplicativity, commutator level drop, the graded product identity,
/// and the level drop of J_p(u_(n)v) for n <= -2.
GrFiltrationReport gr_filtration_check(const VoaData& voa, int level,
                                       const TruncationWindow& w);

}  // namespace qfa
