#pragma once

#include <map>
#include <string>
#include <vector>

#include "qfa/voa.hpp"

namespace qfa {

/// Element of the current Lie algebra g = V[t,t^-1] / dV[t,t^-1],
/// written in the J-indexing J_m(u) = u (x) t^(m + wt(u) - 1).
/// A term c*J_m(u) has degree -m.
struct CurrentElement {
  std::map<std::pair<int, int>, Rat> terms;  // (mode m, basis u) -> coeff

  bool is_zero() const { return terms.empty(); }
  void add(int m, int u, const Rat& c);
  CurrentElement& operator+=(const CurrentElement& o);
  CurrentElement& operator*=(const Rat& c);
  bool operator==(const CurrentElement& o) const { return terms == o.terms; }
  std::string to_string(const VoaData& voa) const;
};

/// Builds c * (u (x) t^k) as a current element (J-index k - wt(u) + 1).
CurrentElement raw_tensor(const VoaData& voa, int u, int k,
                          const Rat& c = Rat(1));

CurrentElement j_term(int m, int u, const Rat& c = Rat(1));

/// Reduces modulo the image of d (d(u (x) t^k) = Tu (x) t^k + k u (x) t^(k-1)).
/// In fixed degree d the graded piece of V[t,t^-1] is a copy of V through
/// u -> J_{-d}(u), and the image of d is spanned by Tw + (wt(w) - d)w; the
/// normal form is the reduction against that span with weight-descending
/// pivot order. In particular J_m(Tu) -> -(m + wt(u)) J_m(u) and
/// J_m(1) -> 0 for m != 0.
CurrentElement normal_form_mod_partial(const VoaData& voa,
                                       const CurrentElement& x);

/// Lie bracket in normal form:
/// [J_m(u), J_n(v)] = sum_{i>=0} C(m + wt(u) - 1, i) J_{m+n}(u_(i)v).
CurrentElement bracket(const VoaData& voa, const CurrentElement& x,
                       const CurrentElement& y);

/// The t-power form [u (x) t^p, v (x) t^q] = sum_i C(p,i) (u_(i)v) (x) t^(p+q-i),
/// not normalized; used to cross-check the J-indexed bracket.
CurrentElement raw_bracket(const VoaData& voa, int u, int p, int v, int q);

struct LieCheckReport {
  std::vector<std::string> skew_failures;
  std::vector<std::string> jacobi_failures;
  long checked = 0;
  long window_skips = 0;
};

/// Exact skew-symmetry and Jacobi checks over all triples of J_m(u)
/// generators with |m| <= mode_bound.
LieCheckReport check_lie_properties(const VoaData& voa, int mode_bound);

}  // namespace qfa
