#include "qfa/linalg.hpp"

#include <algorithm>
#include <sstream>

namespace qfa {

Polynomial Polynomial::monomial(int degree, const Rat& c) {
  std::vector<Rat> coeffs(degree + 1, Rat(0));
  coeffs[degree] = c;
  return Polynomial(std::move(coeffs));
}

Rat Polynomial::eval(const Rat& x) const {
  Rat acc(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

SparseMatrix Polynomial::eval(const SparseMatrix& m) const {
  int n = m.rows();
  SparseMatrix acc(n, n);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc.multiply(m);
    if (*it != 0) {
      for (int i = 0; i < n; ++i) acc.add(i, i, *it);
    }
  }
  return acc;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  std::vector<Rat> c(std::max(coeffs_.size(), o.coeffs_.size()), Rat(0));
  for (size_t i = 0; i < coeffs_.size(); ++i) c[i] += coeffs_[i];
  for (size_t i = 0; i < o.coeffs_.size(); ++i) c[i] += o.coeffs_[i];
  return Polynomial(std::move(c));
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  std::vector<Rat> c(std::max(coeffs_.size(), o.coeffs_.size()), Rat(0));
  for (size_t i = 0; i < coeffs_.size(); ++i) c[i] += coeffs_[i];
  for (size_t i = 0; i < o.coeffs_.size(); ++i) c[i] -= o.coeffs_[i];
  return Polynomial(std::move(c));
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (is_zero() || o.is_zero()) return Polynomial();
  std::vector<Rat> c(coeffs_.size() + o.coeffs_.size() - 1, Rat(0));
  for (size_t i = 0; i < coeffs_.size(); ++i)
    for (size_t j = 0; j < o.coeffs_.size(); ++j) c[i + j] += coeffs_[i] * o.coeffs_[j];
  return Polynomial(std::move(c));
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& divisor) const {
  if (divisor.is_zero()) throw std::invalid_argument("polynomial division by zero");
  std::vector<Rat> rem = coeffs_;
  int dd = divisor.degree();
  if (degree() < dd) return {Polynomial(), *this};
  std::vector<Rat> quot(degree() - dd + 1, Rat(0));
  for (int k = degree(); k >= dd; --k) {
    Rat c = rem[k] / divisor.coeffs()[dd];
    if (c == 0) continue;
    quot[k - dd] = c;
    for (int j = 0; j <= dd; ++j) rem[k - dd + j] -= c * divisor.coeffs()[j];
  }
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  std::vector<Rat> c = coeffs_;
  Rat lead = c.back();
  for (auto& x : c) x /= lead;
  return Polynomial(std::move(c));
}

std::string Polynomial::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int d = degree(); d >= 0; --d) {
    const Rat& c = coeffs_[d];
    if (c == 0) continue;
    Rat a = c;
    if (!first) {
      out << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    } else if (a < 0) {
      out << "-";
      a = -a;
    }
    if (d == 0 || a != 1) out << format_rat(a);
    if (d > 0) {
      if (a != 1) out << "*";
      out << var;
      if (d > 1) out << "^" << d;
    }
    first = false;
  }
  return out.str();
}

Polynomial poly_gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    Polynomial r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

Polynomial poly_lcm(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return Polynomial();
  Polynomial g = poly_gcd(a, b);
  return (a * b).divmod(g).first.monic();
}

namespace {

std::vector<mpz_class> positive_divisors(const mpz_class& n_in) {
  mpz_class n = abs(n_in);
  std::vector<mpz_class> divs;
  if (n == 0) return divs;
  for (mpz_class d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      divs.push_back(d);
      if (d * d != n) divs.push_back(n / d);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

}  // namespace

RootSplit rational_roots(const Polynomial& p_in) {
  RootSplit result;
  Polynomial p = p_in.monic();
  if (p.is_zero() || p.degree() == 0) {
    result.cofactor = p;
    return result;
  }
  // Strip powers of x.
  int zero_mult = 0;
  while (!p.is_zero() && p.coeffs()[0] == 0) {
    std::vector<Rat> shifted(p.coeffs().begin() + 1, p.coeffs().end());
    p = Polynomial(std::move(shifted));
    ++zero_mult;
  }
  if (zero_mult > 0) result.roots.emplace_back(Rat(0), zero_mult);

  // Clear denominators and apply the rational root test.
  if (p.degree() >= 1) {
    mpz_class den_lcm(1);
    for (const Rat& c : p.coeffs()) {
      mpz_class d = c.get_den();
      den_lcm = den_lcm / gcd(den_lcm, d) * d;
    }
    std::vector<mpz_class> ic;
    for (const Rat& c : p.coeffs()) ic.push_back(mpz_class(c * Rat(den_lcm)));
    std::vector<mpz_class> ps = positive_divisors(ic.front());
    std::vector<mpz_class> qs = positive_divisors(ic.back());
    std::vector<Rat> candidates;
    for (const auto& a : ps)
      for (const auto& b : qs) {
        Rat r(a, b);
        r.canonicalize();
        candidates.push_back(r);
        candidates.push_back(-r);
      }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (const Rat& r : candidates) {
      int mult = 0;
      while (p.degree() >= 1 && p.eval(r) == 0) {
        Polynomial lin(std::vector<Rat>{-r, Rat(1)});
        p = p.divmod(lin).first;
        ++mult;
      }
      if (mult > 0) result.roots.emplace_back(r, mult);
      if (p.degree() == 0) break;
    }
  }
  std::sort(result.roots.begin(), result.roots.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  result.cofactor = p.monic();
  return result;
}

SparseVec Echelon::reduce(SparseVec v) const {
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& [i, c] : v.entries()) {
      auto it = pivot_to_row_.find(i);
      if (it != pivot_to_row_.end()) {
        v.axpy(-c, rows_[it->second]);
        changed = true;
        break;
      }
    }
  }
  return v;
}

bool Echelon::insert(SparseVec v) {
  v = reduce(std::move(v));
  if (v.is_zero()) return false;
  int pivot = v.leading_index();
  Rat lead = v.get(pivot);
  v *= Rat(1) / lead;
  // Back-substitute into existing rows to keep the basis reduced.
  for (auto& row : rows_) {
    Rat c = row.get(pivot);
    if (c != 0) row.axpy(-c, v);
  }
  pivot_to_row_[pivot] = static_cast<int>(rows_.size());
  rows_.push_back(std::move(v));
  return true;
}

std::vector<int> Echelon::free_columns(int cols) const {
  std::vector<int> result;
  for (int i = 0; i < cols; ++i)
    if (!pivot_to_row_.count(i)) result.push_back(i);
  return result;
}

RankKernel rank_kernel(const SparseMatrix& m) {
  // Row-reduce; kernel from free columns of the reduced echelon form.
  Echelon ech;
  for (const auto& [r, rowvec] : m.nonzero_rows()) ech.insert(rowvec);
  RankKernel result;
  result.rank = ech.rank();
  for (int free_col : ech.free_columns(m.cols())) {
    SparseVec v;
    v.set(free_col, Rat(1));
    for (const auto& row : ech.rows()) {
      Rat c = row.get(free_col);
      if (c != 0) v.set(row.leading_index(), -c);
    }
    result.kernel_basis.push_back(std::move(v));
  }
  return result;
}

Polynomial min_poly(const SparseMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("min_poly: matrix not square");
  int n = m.rows();
  if (n == 0) return Polynomial(std::vector<Rat>{Rat(1)});
  Polynomial result(std::vector<Rat>{Rat(1)});
  Echelon seen;  // union of Krylov spaces handled so far
  for (int j = 0; j < n; ++j) {
    SparseVec e;
    e.set(j, Rat(1));
    if (seen.reduce(e).is_zero()) continue;
    // Krylov cycle for e: find the first dependence among m^i e,
    // tracking for each stored reduced vector its combination in powers.
    std::vector<SparseVec> basis;             // pivot-normalized, distinct pivots
    std::vector<std::vector<Rat>> combos;     // combos[r][i]: coeff of m^i e
    std::map<int, int> pivots;                // pivot column -> row
    SparseVec power = e;                      // m^k e, unreduced
    std::vector<Rat> rel;
    for (int k = 0;; ++k) {
      SparseVec v = power;
      std::vector<Rat> combo(k + 1, Rat(0));
      combo[k] = Rat(1);
      while (!v.is_zero()) {
        auto it = pivots.find(v.leading_index());
        if (it == pivots.end()) break;
        Rat c = v.get(v.leading_index());
        v.axpy(-c, basis[it->second]);
        const auto& rc = combos[it->second];
        for (size_t i = 0; i < rc.size(); ++i) combo[i] -= c * rc[i];
      }
      if (v.is_zero()) {
        rel = std::move(combo);
        break;
      }
      Rat lead = v.get(v.leading_index());
      v *= Rat(1) / lead;
      for (auto& c : combo) c /= lead;
      pivots[v.leading_index()] = static_cast<int>(basis.size());
      basis.push_back(std::move(v));
      combos.push_back(std::move(combo));
      power = m.apply(power);
    }
    result = poly_lcm(result, Polynomial(std::move(rel)).monic());
    for (const auto& row : basis) seen.insert(row);
    if (result.degree() == n) break;
  }
  return result.monic();
}

EigenSplit gen_eigen_split(const SparseMatrix& m) {
  EigenSplit split;
  split.minimal_polynomial = min_poly(m);
  RootSplit rs = rational_roots(split.minimal_polynomial);
  if (rs.cofactor.degree() >= 1) throw NonRationalSpectrumError(rs.cofactor.to_string());
  for (const auto& [lambda, mult] : rs.roots) {
    SparseMatrix shifted = m;
    for (int i = 0; i < m.rows(); ++i) shifted.add(i, i, -lambda);
    SparseMatrix power = SparseMatrix::identity(m.rows());
    for (int k = 0; k < mult; ++k) power = power.multiply(shifted);
    EigenBlock block;
    block.eigenvalue = lambda;
    block.multiplicity = mult;
    block.basis = rank_kernel(power).kernel_basis;
    split.blocks.push_back(std::move(block));
  }
  return split;
}

}  // namespace qfa
