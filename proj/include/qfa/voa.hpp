#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "qfa/errors.hpp"
#include "qfa/sparse.hpp"

namespace qfa {

struct Window {
  int max_weight = 0;
  int n_min = 0;
  int n_max = 0;
};

/// A truncated vertex-operator-algebra presentation by structure constants.
/// Every n-th product of basis elements is in exactly one of three states:
/// present (stored), certified zero (absent but inside the window), or
/// out-of-window. There are no implicit zeros.
struct VoaData {
  std::string name;
  int lower_bound_m = 0;  // weights are >= -lower_bound_m
  Rat central_charge;
  std::vector<std::string> symbols;
  std::vector<int> weights;
  int vacuum_index = -1;
  int conformal_index = -1;  // -1 only for the one-dimensional trivial case
  Window window;
  // (n, left index, right index) -> u_(n)v over basis indices
  std::map<std::tuple<int, int, int>, SparseVec> products;

  int dim() const { return static_cast<int>(symbols.size()); }
  int index_of(const std::string& symbol) const;
};

enum class ProductStatus { Present, CertifiedZero, OutOfWindow };

/// Classifies u_(n)v for basis indices without computing it.
ProductStatus product_status(const VoaData& voa, int n, int u, int v);

/// u_(n)v for basis indices; throws OutOfWindowError when not certified.
SparseVec basis_product(const VoaData& voa, int n, int u, int v);

/// Parses and fully validates a structure-constant JSON document.
/// Collects every violation before throwing InvariantViolation.
VoaData load_voa(const std::string& path);
VoaData load_voa_text(const std::string& json_text);

/// Bilinear extension of the product table; weight-homogeneous output.
SparseVec apply_product(const VoaData& voa, int n, const SparseVec& u,
                        const SparseVec& v);

/// Tu = u_(-2)1, extended linearly.
SparseVec translate(const VoaData& voa, const SparseVec& u);

struct BorcherdsResidual {
  int k, m, n;
  int u, v, w;
  SparseVec residual;
};

struct BorcherdsReport {
  std::vector<BorcherdsResidual> residuals;  // nonzero residuals only
  long checked = 0;
  long skipped = 0;  // instances touching out-of-window data
};

/// Checks the Borcherds identity on the box |k|,|m|,|n| inside the given
/// bounds, over all basis triples. Instances whose evaluation would touch
/// uncertified products are skipped and counted, never guessed.
BorcherdsReport check_borcherds(const VoaData& voa, int k_min, int k_max,
                                int m_min, int m_max, int n_min, int n_max);

struct AxiomReport {
  std::vector<std::string> failures;
  long checked = 0;
  long skipped = 0;
};

/// Virasoro constraints, L0 eigenvalues, and T-derivation spot checks,
/// beyond the structural validation done at load time.
AxiomReport check_axioms(const VoaData& voa);

}  // namespace qfa
