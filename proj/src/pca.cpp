#include "qfa/pca.hpp"

#include <algorithm>
#include <sstream>

#include "qfa/linalg.hpp"

namespace qfa {

LoopMono canonical_mono(LoopMono m) {
  std::sort(m.begin(), m.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  return m;
}

std::string mono_to_string(const PoissonAlgebraData& p, const LoopMono& m) {
  if (m.empty()) return "1";
  std::ostringstream out;
  for (size_t i = 0; i < m.size(); ++i) {
    if (i) out << "*";
    out << "Psi_" << -m[i].first << "(" << p.symbols[m[i].second] << ")";
  }
  return out.str();
}

bool strictly_decreasing_parts(const LoopMono& m) {
  for (size_t i = 0; i + 1 < m.size(); ++i)
    if (m[i].first <= m[i + 1].first) return false;
  return true;
}

void StraightPoly::add(const LoopMono& m, const Rat& c) {
  if (c == 0) return;
  auto [it, inserted] = terms.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
}

StraightPoly& StraightPoly::operator+=(const StraightPoly& o) {
  for (const auto& [m, c] : o.terms) add(m, c);
  return *this;
}

StraightPoly& StraightPoly::operator*=(const Rat& c) {
  if (c == 0) {
    terms.clear();
    return *this;
  }
  for (auto& [m, v] : terms) v *= c;
  return *this;
}

std::map<std::pair<int, int>, Rat> loop_bracket(const PoissonAlgebraData& p,
                                                int m, int x, int n, int y) {
  std::map<std::pair<int, int>, Rat> out;
  if (x == p.unit_index || y == p.unit_index) return out;  // unit central
  if (!p.bracket_known(x, y))
    throw InvariantViolation("loop_bracket needs a known bracket entry");
  SparseVec bv = p.bracket_of(x, y);
  for (const auto& [z, c] : bv.entries()) {
    // Psi_{m+n}(1) = 1 has no loop-symbol image except at mode 0; the
    // caller sees the unit component only when m + n = 0
    if (z == p.unit_index && m + n != 0) continue;
    out[{m + n, z}] += c;
    if (out[{m + n, z}] == 0) out.erase({m + n, z});
  }
  return out;
}

namespace {

std::vector<int> parts_of(const LoopMono& m) {
  std::vector<int> out;
  out.reserve(m.size());
  for (const auto& [d, e] : m) out.push_back(d);
  return out;
}

// Applies one rule to the canonical monomial, or returns nullopt when it
// is already a normal form. Shared by straighten and replay_step.
std::optional<StraightStep> derive_step(const PoissonAlgebraData& p, int n,
                                        const LoopMono& m) {
  for (const auto& [d, e] : m)
    if (d <= -n - 1) {
      StraightStep s;
      s.rule = StraightStep::Rule::Kill;
      s.before = m;
      return s;  // after empty
    }
  for (size_t i = 0; i < m.size(); ++i)
    if (m[i].second == p.unit_index) {
      StraightStep s;
      s.rule = StraightStep::Rule::Unit;
      s.before = m;
      s.position = static_cast<int>(i);
      if (m[i].first == 0) {
        LoopMono rest = m;
        rest.erase(rest.begin() + i);
        s.after[rest] = Rat(1);
      }
      return s;
    }
  for (size_t i = 0; i + 1 < m.size(); ++i) {
    if (m[i].first != m[i + 1].first) continue;
    int a = m[i].first;
    int x = m[i].second, y = m[i + 1].second;
    if (!p.mult_known(x, y))
      throw InvariantViolation("straighten needs a complete mult table");
    StraightStep s;
    s.rule = StraightStep::Rule::Rewrite;
    s.before = m;
    s.position = static_cast<int>(i);
    LoopMono rest = m;
    rest.erase(rest.begin() + i, rest.begin() + i + 2);
    SparseVec xy = p.mult_of(x, y);
    for (const auto& [z, cz] : xy.entries()) {
      LoopMono t = rest;
      t.emplace_back(2 * a, z);
      s.after[canonical_mono(std::move(t))] += cz;
    }
    // j beyond a+n makes the part a-j <= -n-1: killed, never materialized
    for (int j = 1; j <= a + n; ++j) {
      LoopMono t1 = rest, t2 = rest;
      t1.emplace_back(a + j, x);
      t1.emplace_back(a - j, y);
      t2.emplace_back(a + j, y);
      t2.emplace_back(a - j, x);
      s.after[canonical_mono(std::move(t1))] += Rat(-1);
      s.after[canonical_mono(std::move(t2))] += Rat(-1);
    }
    for (auto it = s.after.begin(); it != s.after.end();)
      it = it->second == 0 ? s.after.erase(it) : std::next(it);
    return s;
  }
  return std::nullopt;
}

}  // namespace

StraightenResult straighten(const PoissonAlgebraData& p, const LoopMono& input,
                            const Rat& coeff, int n, long limit) {
  StraightenResult res;
  std::vector<std::pair<LoopMono, Rat>> work;
  work.emplace_back(canonical_mono(input), coeff);
  while (!work.empty()) {
    auto [m, c] = std::move(work.back());
    work.pop_back();
    if (c == 0) continue;
    std::optional<StraightStep> step = derive_step(p, n, m);
    if (!step) {
      res.poly.add(m, c);
      continue;
    }
    if (res.steps_used >= limit)
      throw StepLimitExceededError("straightening exceeded " +
                                   std::to_string(limit) + " steps");
    ++res.steps_used;
    if (step->rule == StraightStep::Rule::Rewrite) {
      // well-order assertion: every child is shorter, or the same length
      // and lexicographically greater in its part sequence
      std::vector<int> base = parts_of(m);
      for (const auto& [child, cc] : step->after) {
        if (child.size() < m.size()) continue;
        if (!(parts_of(child) > base))
          throw InvariantViolation("straightening well-order violated at " +
                                   mono_to_string(p, m));
      }
    }
    for (const auto& [child, cc] : step->after) work.emplace_back(child, c * cc);
    res.steps.push_back(std::move(*step));
  }
  for (const auto& [m, c] : res.poly.terms) {
    if (!strictly_decreasing_parts(m))
      throw InvariantViolation("non-strict normal form " +
                               mono_to_string(p, m));
    for (const auto& [d, e] : m)
      if (d < -n)
        throw InvariantViolation("normal form part below -n in " +
                                 mono_to_string(p, m));
  }
  return res;
}

bool replay_step(const PoissonAlgebraData& p, int n, const StraightStep& step) {
  std::optional<StraightStep> fresh = derive_step(p, n, step.before);
  if (!fresh) return false;
  return fresh->rule == step.rule && fresh->position == step.position &&
         fresh->after == step.after;
}

std::vector<std::vector<int>> enumerate_indices(int k, int d, int n,
                                                bool strict) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  // remaining parts are each >= -n, so the next part is at most
  // d_left + (k_left - 1) * n
  auto rec = [&](auto&& self, int k_left, int d_left, int max_part) -> void {
    if (k_left == 0) {
      if (d_left == 0) out.push_back(cur);
      return;
    }
    int hi = std::min(max_part, d_left + (k_left - 1) * n);
    for (int part = hi; part >= -n; --part) {
      cur.push_back(part);
      self(self, k_left - 1, d_left - part, strict ? part - 1 : part);
      cur.pop_back();
    }
  };
  if (k >= 0) rec(rec, k, d, d + (k - 1) * n);
  return out;
}

namespace {

// smallest possible sum of k strictly decreasing parts >= -n
long min_strict_sum(int k, int n) {
  return -static_cast<long>(k) * n + static_cast<long>(k) * (k - 1) / 2;
}

}  // namespace

PcaDimReport dim_bound(const PoissonAlgebraData& p, int n, int d,
                       int saturate_rounds) {
  PcaDimReport rep;
  rep.n = n;
  rep.d = d;
  rep.r = p.dim() - 1;
  rep.rounds_used = saturate_rounds;
  // min_strict_sum is quadratic in k with vertex near k = n, so past that
  // point a failed bound check is final
  long rpow = 1;
  for (int k = 0; k <= n || min_strict_sum(k, n) <= d; ++k) {
    if (k > 0) {
      rpow *= rep.r;
      if (rpow == 0) break;
    }
    rep.bound +=
        rpow * static_cast<long>(enumerate_indices(k, d, n, true).size());
  }
  if (saturate_rounds <= 0) return rep;
  if (!p.complete)
    throw InvariantViolation("saturation needs a complete Poisson algebra");

  // relations: straighten(D_m(x,y) * multiplier) over a bounded window
  std::map<LoopMono, int> col;
  auto col_of = [&](const LoopMono& m) {
    auto [it, inserted] = col.emplace(m, static_cast<int>(col.size()));
    return it->second;
  };
  Echelon ech;
  std::vector<int> gens;
  for (int x = 0; x < p.dim(); ++x)
    if (x != p.unit_index) gens.push_back(x);
  int k_max = saturate_rounds + 1;
  int m_lo = -(std::abs(d) + k_max * std::max(n, 0) + n);
  for (int x : gens)
    for (int y : gens)
      for (int m = m_lo; m <= n; ++m) {
        int mult_deg = d + m;
        for (int k = 0; k <= saturate_rounds - 1; ++k)
          for (const auto& seq : enumerate_indices(k, mult_deg, n, true)) {
            // all element assignments over the non-unit generators
            std::vector<size_t> pick(seq.size(), 0);
            while (true) {
              LoopMono mult;
              for (size_t i = 0; i < seq.size(); ++i)
                mult.emplace_back(seq[i], gens[pick[i]]);
              StraightPoly rel;
              SparseVec xy = p.mult_of(x, y);
              for (const auto& [z, cz] : xy.entries()) {
                LoopMono t = mult;
                t.emplace_back(-m, z);
                rel += straighten(p, t, cz, n).poly;
              }
              for (int j = m - n; j <= n; ++j) {
                LoopMono t = mult;
                t.emplace_back(-(m - j), x);
                t.emplace_back(-j, y);
                rel += straighten(p, t, Rat(-1), n).poly;
              }
              if (!rel.is_zero()) {
                SparseVec vec;
                for (const auto& [mono, c] : rel.terms)
                  vec.set(col_of(mono), c);
                ech.insert(std::move(vec));
              }
              // advance the element assignment
              size_t i = 0;
              for (; i < pick.size(); ++i) {
                if (++pick[i] < gens.size()) break;
                pick[i] = 0;
              }
              if (i == pick.size()) break;
            }
          }
      }
  rep.saturated_upper = rep.bound - ech.rank();
  return rep;
}

PcaIdentityReport poisson_ideal_identity_check(const PoissonAlgebraData& p,
                                               int mode_bound) {
  PcaIdentityReport rep;
  if (!p.complete)
    throw InvariantViolation("identity check needs a complete algebra");
  int dim = p.dim();
  auto elem = [&](int x) {
    SparseVec e;
    e.set(x, Rat(1));
    return e;
  };
  // One side of the identity, as formal data: a constant part, single
  // currents at mode s, and j-families { Psi_{s-j}(a) Psi_j(b) : j in Z }
  // keyed by the unordered element pair (coefficients are j-independent).
  struct Formal {
    Rat constant;
    std::map<int, Rat> single;
    std::map<std::pair<int, int>, Rat> family;
    bool operator==(const Formal& o) const {
      return constant == o.constant && single == o.single &&
             family == o.family;
    }
  };
  auto add_single = [&](Formal& f, const SparseVec& v, const Rat& c, int s) {
    for (const auto& [w, cw] : v.entries()) {
      if (w == p.unit_index) {
        // Psi_s(1) = [s == 0]
        if (s == 0) f.constant += c * cw;
        continue;
      }
      f.single[w] += c * cw;
      if (f.single[w] == 0) f.single.erase(w);
    }
  };
  auto add_family = [&](Formal& f, int a, const SparseVec& bs, const Rat& c,
                        int s) {
    for (const auto& [b, cb] : bs.entries()) {
      Rat coeff = c * cb;
      if (a == p.unit_index && b == p.unit_index) {
        if (s == 0) f.constant += coeff;
        continue;
      }
      if (b == p.unit_index) {  // only j = 0 survives: Psi_s(a)
        f.single[a] += coeff;
        if (f.single[a] == 0) f.single.erase(a);
        continue;
      }
      if (a == p.unit_index) {  // only j = s survives: Psi_s(b)
        f.single[b] += coeff;
        if (f.single[b] == 0) f.single.erase(b);
        continue;
      }
      auto key = std::minmax(a, b);
      f.family[key] += coeff;
      if (f.family[key] == 0) f.family.erase(key);
    }
  };
  for (int x = 0; x < dim; ++x)
    for (int y = 0; y < dim; ++y)
      for (int z = 0; z < dim; ++z)
        for (int m = -mode_bound; m <= mode_bound; ++m)
          for (int nn = -mode_bound; nn <= mode_bound; ++nn) {
            int s = m + nn;
            Formal lhs, rhs;
            // {D_m(x,y), Psi_n(z)}
            add_single(lhs, *p.bracket_vec(p.mult_of(x, y), elem(z)), Rat(1),
                       s);
            add_family(lhs, x, p.bracket_of(y, z), Rat(-1), s);
            add_family(lhs, y, p.bracket_of(x, z), Rat(-1), s);
            // D_{m+n}(x,{y,z}) + D_{m+n}(y,{x,z})
            add_single(rhs, *p.mult_vec(elem(x), p.bracket_of(y, z)), Rat(1),
                       s);
            add_single(rhs, *p.mult_vec(elem(y), p.bracket_of(x, z)), Rat(1),
                       s);
            add_family(rhs, x, p.bracket_of(y, z), Rat(-1), s);
            add_family(rhs, y, p.bracket_of(x, z), Rat(-1), s);
            ++rep.checked;
            if (!(lhs == rhs))
              rep.failures.push_back(
                  "ideal identity fails at (" + p.symbols[x] + "," +
                  p.symbols[y] + "," + p.symbols[z] + "), m=" +
                  std::to_string(m) + ", n=" + std::to_string(nn));
          }
  return rep;
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

SurjectionReport psi_surjection_check(const VoaData& voa, int n, int d,
                                      const TruncationWindow& w) {
  SurjectionReport rep;
  PoissonAlgebraData p = c2_quotient(voa, w);
  int W = std::min(w.max_weight, voa.window.max_weight);
  if (W >= 1) {
    TruncationWindow w2 = w;
    w2.max_weight = W - 1;
    rep.zhu_converged = c2_quotient(voa, w2).dim() == p.dim();
  } else {
    // a weight-zero window holds the whole algebra: nothing is truncated
    rep.zhu_converged = true;
  }
  QuotientSlice slice = compute_quotient_slice(voa, n, d, w);
  rep.slice_converged = slice.converged;
  rep.q_dim_upper = slice.dim_upper;
  rep.pca_bound = dim_bound(p, n, d).bound;

  // generator correspondence: within the window, C2 elements u_(n')v with
  // n' <= -2 must have gr-class zero, i.e. slice-reduce strictly below
  // their own weight (Eq. of the graded symbol map); residues that the
  // truncated relations cannot reduce are counted, not guessed
  for (int u = 0; u < voa.dim(); ++u)
    for (int v = 0; v < voa.dim(); ++v)
      for (int np = -3; np <= -2; ++np) {
        int target = voa.weights[u] + voa.weights[v] - np - 1;
        if (target > W) continue;
        try {
          SparseVec red = slice.reduce(basis_product(voa, np, u, v));
          bool dropped_below = true;
          for (const auto& [s, c] : red.entries())
            if (voa.weights[s] >= target) dropped_below = false;
          if (dropped_below)
            ++rep.correspondence_checked;
          else
            ++rep.correspondence_inconclusive;
        } catch (const OutOfWindowError&) {
          ++rep.correspondence_inconclusive;
        }
      }

  if (!rep.slice_converged || !rep.zhu_converged) {
    rep.verdict = Verdict::Inconclusive;
    rep.notes.push_back(!rep.zhu_converged
                            ? "zhu quotient grows with the window"
                            : "slice bound not window-stable");
  } else if (rep.q_dim_upper <= rep.pca_bound) {
    rep.verdict = Verdict::Pass;
  } else {
    rep.verdict = Verdict::Fail;
    rep.notes.push_back("slice bound exceeds the spanning bound");
  }
  return rep;
}

}  // namespace qfa
