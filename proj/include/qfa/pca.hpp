#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qfa/zhu.hpp"

namespace qfa {

/// Monomial of the symmetric algebra on the loop of p, acting on 1_n:
/// Psi_{-d1}(x1) ... Psi_{-dk}(xk) 1_n, stored as (part d_i, element)
/// pairs. Canonical order: parts descending, ties by element index.
/// Commutativity makes this a normal form for the word.
using LoopMono = std::vector<std::pair<int, int>>;

LoopMono canonical_mono(LoopMono m);
std::string mono_to_string(const PoissonAlgebraData& p, const LoopMono& m);
bool strictly_decreasing_parts(const LoopMono& m);

/// Polynomial in loop monomials.
struct StraightPoly {
  std::map<LoopMono, Rat> terms;

  bool is_zero() const { return terms.empty(); }
  void add(const LoopMono& m, const Rat& c);
  StraightPoly& operator+=(const StraightPoly& o);
  StraightPoly& operator*=(const Rat& c);
  bool operator==(const StraightPoly& o) const { return terms == o.terms; }
};

/// [Psi_m(x), Psi_n(y)] = Psi_{m+n}({x,y}): sparse combination over
/// (mode, element) keys. The unit is central.
std::map<std::pair<int, int>, Rat> loop_bracket(const PoissonAlgebraData& p,
                                                int m, int x, int n, int y);

/// One logged rewriting step: the monomial it consumed, the rule applied,
/// and the exact replacement. Replayable.
struct StraightStep {
  enum class Rule { Kill, Unit, Rewrite };
  Rule rule;
  LoopMono before;
  int position = -1;  // index of the left factor of the equal-part pair
  std::map<LoopMono, Rat> after;
};

struct StraightenResult {
  StraightPoly poly;
  std::vector<StraightStep> steps;
  long steps_used = 0;
};

/// Straightens coeff * monomial in Q_n of the Poisson current algebra:
/// kill rule (any part <= -n-1 annihilates), unit rule (Psi_0(1) = 1,
/// other unit modes vanish), and the square rewrite
///   Psi_{-a}(x) Psi_{-a}(y) = Psi_{-2a}(x y)
///       - sum_{j != 0} Psi_{-a-j}(x) Psi_{-a+j}(y)
/// applied at equal adjacent parts, j materialized over its finite
/// in-context range. Every surviving monomial has strictly decreasing
/// parts >= -n. Throws StepLimitExceededError past the step budget.
StraightenResult straighten(const PoissonAlgebraData& p, const LoopMono& input,
                            const Rat& coeff, int n, long limit = 100000);

/// Re-derives a logged step from its inputs and compares exactly.
bool replay_step(const PoissonAlgebraData& p, int n, const StraightStep& step);

/// All sequences d1 >/>= d2 >/>= ... >/>= dk >= -n with sum d,
/// lexicographically ordered (largest first part first).
std::vector<std::vector<int>> enumerate_indices(int k, int d, int n,
                                                bool strict);

struct PcaDimReport {
  int n = 0, d = 0;
  int r = 0;  // dim p - 1
  long bound = 0;
  std::optional<long> saturated_upper;
  int rounds_used = 0;
};

/// Theorem-level spanning bound sum_k r^k |strict Pi_k(d)| for Q_n(d) of
/// the Poisson current algebra; optional saturation by straightened
/// D-relations (multiplier monomials of length < rounds).
PcaDimReport dim_bound(const PoissonAlgebraData& p, int n, int d,
                       int saturate_rounds = 0);

struct PcaIdentityReport {
  std::vector<std::string> failures;
  long checked = 0;
};

/// Coefficientwise check of {D_m(x,y), Psi_n(z)} =
/// D_{m+n}(x,{y,z}) + D_{m+n}(y,{x,z}) over all basis triples and
/// |m|,|n| <= mode_bound, comparing the formal j-families exactly.
PcaIdentityReport poisson_ideal_identity_check(const PoissonAlgebraData& p,
                                               int mode_bound);

enum class Verdict { Pass, Fail, Inconclusive };
std::string verdict_name(Verdict v);

struct SurjectionReport {
  Verdict verdict = Verdict::Inconclusive;
  int q_dim_upper = 0;
  long pca_bound = 0;
  bool slice_converged = false;
  bool zhu_converged = false;
  long correspondence_checked = 0;
  long correspondence_inconclusive = 0;
  std::vector<std::string> notes;
};

/// Truncated shadow of the surjection from the Poisson current algebra of
/// V/C2 onto the graded current algebra: domination of the slice bound by
/// the spanning bound, plus the generator-correspondence spot check.
SurjectionReport psi_surjection_check(const VoaData& voa, int n, int d,
                                      const TruncationWindow& w);

}  // namespace qfa
