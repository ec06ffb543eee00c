#include "qfa/current.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "qfa/linalg.hpp"

namespace qfa {

void CurrentElement::add(int m, int u, const Rat& c) {
  if (c == 0) return;
  auto key = std::make_pair(m, u);
  auto [it, inserted] = terms.emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
}

CurrentElement& CurrentElement::operator+=(const CurrentElement& o) {
  for (const auto& [k, c] : o.terms) add(k.first, k.second, c);
  return *this;
}

CurrentElement& CurrentElement::operator*=(const Rat& c) {
  if (c == 0) {
    terms.clear();
    return *this;
  }
  for (auto& [k, v] : terms) v *= c;
  return *this;
}

std::string CurrentElement::to_string(const VoaData& voa) const {
  if (terms.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [k, c] : terms) {
    if (!first) out << " + ";
    out << format_rat(c) << "*J_" << k.first << "(" << voa.symbols[k.second]
        << ")";
    first = false;
  }
  return out.str();
}

CurrentElement j_term(int m, int u, const Rat& c) {
  CurrentElement x;
  x.add(m, u, c);
  return x;
}

CurrentElement raw_tensor(const VoaData& voa, int u, int k, const Rat& c) {
  return j_term(k - voa.weights[u] + 1, u, c);
}

namespace {

// Reduction data for one degree d: the graded degree-d piece of V[t,t^-1]
// is a copy of V through u -> J_{-d}(u); the image of d(...) is spanned by
// Tw + (wt(w) - d) w over basis w with Tw still in the weight window.
// Pivot order is weight-descending so T-heads are eliminated first.
class DegreeReducer {
 public:
  DegreeReducer(const VoaData& voa, int d) {
    order_.resize(voa.dim());
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) {
      return voa.weights[a] > voa.weights[b];
    });
    col_of_.resize(voa.dim());
    for (int r = 0; r < voa.dim(); ++r) col_of_[order_[r]] = r;
    for (int w = 0; w < voa.dim(); ++w) {
      if (voa.weights[w] + 1 > voa.window.max_weight) continue;
      SparseVec eu;
      eu.set(w, Rat(1));
      SparseVec tw = translate(voa, eu);
      SparseVec rel;
      for (const auto& [i, c] : tw.entries()) rel.set(col_of_[i], c);
      rel.add(col_of_[w], Rat(voa.weights[w] - d));
      ech_.insert(std::move(rel));
    }
  }

  // Reduces a degree-d vector given in V coordinates.
  SparseVec reduce(const SparseVec& v_coords) const {
    SparseVec permuted;
    for (const auto& [i, c] : v_coords.entries()) permuted.set(col_of_[i], c);
    SparseVec reduced = ech_.reduce(std::move(permuted));
    SparseVec out;
    for (const auto& [r, c] : reduced.entries()) out.set(order_[r], c);
    return out;
  }

 private:
  std::vector<int> order_;
  std::vector<int> col_of_;
  Echelon ech_;
};

}  // namespace

CurrentElement normal_form_mod_partial(const VoaData& voa,
                                       const CurrentElement& x) {
  // Group terms by degree; each degree reduces independently.
  std::map<int, SparseVec> by_degree;  // d -> V coordinates
  for (const auto& [k, c] : x.terms) by_degree[-k.first].add(k.second, c);
  CurrentElement out;
  for (const auto& [d, coords] : by_degree) {
    DegreeReducer red(voa, d);
    SparseVec nf = red.reduce(coords);
    for (const auto& [u, c] : nf.entries()) out.add(-d, u, c);
  }
  return out;
}

CurrentElement bracket(const VoaData& voa, const CurrentElement& x,
                       const CurrentElement& y) {
  CurrentElement acc;
  for (const auto& [ku, cu] : x.terms)
    for (const auto& [kv, cv] : y.terms) {
      int m = ku.first, u = ku.second;
      int n = kv.first, v = kv.second;
      long a = m + voa.weights[u] - 1;
      int i_max = voa.weights[u] + voa.weights[v] + voa.lower_bound_m - 1;
      if (a >= 0) i_max = std::min<long>(i_max, a);
      for (int i = 0; i <= i_max; ++i) {
        Rat c = binom(a, i);
        if (c == 0) continue;
        SparseVec prod = basis_product(voa, i, u, v);
        for (const auto& [s, cs] : prod.entries())
          acc.add(m + n, s, cu * cv * c * cs);
      }
    }
  return normal_form_mod_partial(voa, acc);
}

CurrentElement raw_bracket(const VoaData& voa, int u, int p, int v, int q) {
  CurrentElement acc;
  int i_max = voa.weights[u] + voa.weights[v] + voa.lower_bound_m - 1;
  if (p >= 0) i_max = std::min(i_max, p);
  for (int i = 0; i <= i_max; ++i) {
    Rat c = binom(p, i);
    if (c == 0) continue;
    SparseVec prod = basis_product(voa, i, u, v);
    for (const auto& [s, cs] : prod.entries()) {
      int k = p + q - i;
      acc += raw_tensor(voa, s, k, c * cs);
    }
  }
  return acc;
}

LieCheckReport check_lie_properties(const VoaData& voa, int mode_bound) {
  LieCheckReport report;
  std::map<std::tuple<int, int, int, int>, CurrentElement> cache;
  auto br = [&](int m, int u, int n, int v) -> const CurrentElement& {
    auto key = std::make_tuple(m, u, n, v);
    auto it = cache.find(key);
    if (it == cache.end())
      it = cache.emplace(key, bracket(voa, j_term(m, u), j_term(n, v))).first;
    return it->second;
  };
  auto br_elem = [&](int m, int u, const CurrentElement& y) {
    CurrentElement acc;
    for (const auto& [k, c] : y.terms) {
      CurrentElement part = br(m, u, k.first, k.second);
      part *= c;
      acc += part;
    }
    return acc;
  };
  int dim = voa.dim();
  for (int m1 = -mode_bound; m1 <= mode_bound; ++m1)
    for (int m2 = -mode_bound; m2 <= mode_bound; ++m2)
      for (int u1 = 0; u1 < dim; ++u1)
        for (int u2 = 0; u2 < dim; ++u2) {
          try {
            // reduction is linear, so a sum of normal forms is normal
            CurrentElement s = br(m1, u1, m2, u2);
            s += br(m2, u2, m1, u1);
            ++report.checked;
            if (!s.is_zero())
              report.skew_failures.push_back(
                  "[J_" + std::to_string(m1) + "(" + voa.symbols[u1] +
                  "), J_" + std::to_string(m2) + "(" + voa.symbols[u2] +
                  ")] not skew");
          } catch (const OutOfWindowError&) {
            ++report.window_skips;
          }
        }
  for (int m1 = -mode_bound; m1 <= mode_bound; ++m1)
    for (int m2 = -mode_bound; m2 <= mode_bound; ++m2)
      for (int m3 = -mode_bound; m3 <= mode_bound; ++m3)
        for (int u1 = 0; u1 < dim; ++u1)
          for (int u2 = 0; u2 < dim; ++u2)
            for (int u3 = 0; u3 < dim; ++u3) {
              try {
                CurrentElement s = br_elem(m1, u1, br(m2, u2, m3, u3));
                s += br_elem(m2, u2, br(m3, u3, m1, u1));
                s += br_elem(m3, u3, br(m1, u1, m2, u2));
                ++report.checked;
                if (!s.is_zero())
                  report.jacobi_failures.push_back(
                      "jacobi fails at J_" + std::to_string(m1) + "(" +
                      voa.symbols[u1] + "), J_" + std::to_string(m2) + "(" +
                      voa.symbols[u2] + "), J_" + std::to_string(m3) + "(" +
                      voa.symbols[u3] + ")");
              } catch (const OutOfWindowError&) {
                ++report.window_skips;
              }
            }
  return report;
}

}  // namespace qfa
