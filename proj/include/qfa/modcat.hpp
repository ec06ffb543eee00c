#pragma once

#include <map>
#include <string>
#include <vector>

#include "qfa/quotient.hpp"

namespace qfa {

/// Finite left module over a FiniteAlgebra: one action matrix per flat
/// basis element of the algebra, plus an eigenvalue label per module
/// basis vector. Block elements (lambda, mu) must map label-mu vectors
/// into the label-lambda span and kill the rest.
struct FinModule {
  const FiniteAlgebra* algebra = nullptr;
  int dim = 0;
  std::vector<SparseMatrix> action;
  std::vector<Rat> grading;

  SparseVec act(const SparseVec& a, const SparseVec& v) const;
};

/// Checks structure constants, unit-as-identity and grading blocks;
/// throws InvariantViolation with a witness on the first failure.
void validate_module(const FinModule& x);

/// The algebra as a left module over itself; flat element j is graded by
/// the lambda of its block.
FinModule regular_module(const FiniteAlgebra& a);

/// Synthetic degree-graded algebra: a direct sum of full matrix algebras,
/// one per component, where a component is the list of eigenvalue labels
/// of its standard module. Blocks are keyed by (lambda, mu) label pairs
/// across components; n and gamma_n describe which truncation it models.
FiniteAlgebra make_sum_of_matrix_algebras(
    int n, const std::vector<Rat>& gamma_n,
    const std::vector<std::vector<Rat>>& components);

/// Flat index of the matrix unit (component, row, col) in the algebra
/// built from the same component lists.
std::map<std::tuple<int, int, int>, int> matrix_unit_index(
    const std::vector<std::vector<Rat>>& components);

/// Corner e A e for the sublabel set keep: the degree-zero algebra of a
/// smaller truncation inside a bigger one, with the flat embedding.
struct CornerAlgebra {
  FiniteAlgebra algebra;
  std::vector<int> flat_in_big;  // corner flat index -> big flat index
};
CornerAlgebra corner_subalgebra(const FiniteAlgebra& big, int n_small,
                                const std::vector<Rat>& keep);

/// Levelwise finite shadow of a graded module. Carries the left action of
/// a (corner) algebra: flat element i of block (lambda, mu) acts from
/// level mu to level lambda on the Left side, and from lambda to mu on
/// the Right (dual) side. Bimodule shadows also carry a level-preserving
/// right action used by the tensor product.
struct GradedModuleShadow {
  enum class Side { Left, Right };
  Side side = Side::Left;
  const FiniteAlgebra* algebra = nullptr;
  int cap = 0;
  std::map<Rat, int> levels;  // label -> dimension; absent = zero
  std::vector<SparseMatrix> act;
  std::vector<std::map<Rat, SparseMatrix>> right;  // keyed by level

  // bimodule shadows: (level, position) of the canonical copy of each
  // algebra flat element, filled by projective_shadow
  std::vector<std::pair<Rat, int>> algebra_embed;
  // tensor shadows: per level, the unit-tracking map from the tensor
  // factor X into this shadow (the embedding asserted by the coequalizer)
  std::map<Rat, SparseMatrix> canonical;

  int level_dim(const Rat& lambda) const;
};

/// Standard module of one component of a sum-of-matrix-algebras corner,
/// restricted to the corner labels, with the given multiplicity.
FinModule standard_module(const CornerAlgebra& corner,
                          const std::vector<std::vector<Rat>>& components,
                          int comp, int mult);

/// Direct sum with block-diagonal actions.
FinModule direct_sum(const FinModule& a, const FinModule& b);

/// P_n as a shadow: big * e_n for the corner idempotent, levels all big
/// labels, left and right corner actions by multiplication in big.
GradedModuleShadow projective_shadow(const FiniteAlgebra& big,
                                     const CornerAlgebra& corner, int cap);

/// Levelwise coequalizer P (x)_{A_n} X with the induced left action.
/// Asserts that the canonical copy of A_n (x) X embeds.
GradedModuleShadow tensor_over_An(const GradedModuleShadow& p,
                                  const FinModule& x, int cap);

/// E: sum of the generalized eigenspaces with labels in gamma.
FinModule eigen_sum(const FinModule& m, const std::vector<Rat>& gamma);
FinModule eigen_sum(const GradedModuleShadow& m,
                    const std::vector<Rat>& gamma);

struct RoundTripReport {
  bool iso = false;
  int dim_left = 0;   // dim X
  int dim_right = 0;  // dim E_n(P_n (x) X)
  long equivariance_failures = 0;
};

/// Builds the canonical unit-tracking map X -> E_n(P_n (x) X) and checks
/// it is an equivariant bijection. Throws CapTooSmallError when
/// cap < n + gap.
RoundTripReport round_trip_check(const FiniteAlgebra& big,
                                 const CornerAlgebra& corner,
                                 const FinModule& x, int n, int gap, int cap);

/// Levelwise dual with transposed actions; involutive on the nose.
GradedModuleShadow restricted_dual(const GradedModuleShadow& m);

/// Rank check of the levelwise evaluation pairing M* x M -> k.
bool dual_pairing_nondegenerate(const GradedModuleShadow& m,
                                const GradedModuleShadow& dual);

/// Joint kernel of the actions of all flat elements of degree <= -n-1,
/// as a basis of the kernel subspace.
std::vector<SparseVec> annihilator_kernel(const FinModule& m, int n);

struct ModuleLawReport {
  bool e_in_k = true;            // E_n(M) inside K_n(M)
  bool k_in_eg = true;           // K_n(M) inside E_{n+g}(M)
  bool k0_detects = true;        // K_0(M) = 0 implies M = 0
  bool generated_by_eg = true;   // A . E_g(M) spans M
  bool ok() const { return e_in_k && k_in_eg && k0_detects && generated_by_eg; }
};

/// Containment and detection laws for a module over a degree-graded
/// algebra whose label structure has spectral gap g.
ModuleLawReport module_law_check(const FinModule& m, int n, int gap);

/// Basis of the space of equivariant maps X -> Y (as dimY x dimX
/// matrices). Throws IncompatibleAlgebrasError on mismatched algebras.
std::vector<SparseMatrix> hom_space(const FinModule& x, const FinModule& y);

/// E_g(phi) bijective implies phi bijective (checked for one phi).
bool eg_detects_iso(const FinModule& x, const FinModule& y,
                    const SparseMatrix& phi, int gap);

}  // namespace qfa
