#include "qfa/modcat.hpp"

#include <algorithm>
#include <set>

#include "qfa/linalg.hpp"

namespace qfa {

namespace {

int rat_to_int(const Rat& r) {
  if (r.get_den() != 1)
    throw InvariantViolation("expected an integer label difference, got " +
                             format_rat(r));
  return static_cast<int>(r.get_num().get_si());
}

bool contains(const std::vector<Rat>& set, const Rat& v) {
  return std::find(set.begin(), set.end(), v) != set.end();
}

void mat_axpy(SparseMatrix& m, const Rat& c, const SparseMatrix& a) {
  for (const auto& [r, row] : a.nonzero_rows())
    for (const auto& [col, v] : row.entries()) m.add(r, col, c * v);
}

/// Nullspace basis of the constraint rows held by a reduced echelon.
std::vector<SparseVec> kernel_basis(const Echelon& ech, int dim) {
  std::vector<SparseVec> out;
  for (int f : ech.free_columns(dim)) {
    SparseVec v;
    v.set(f, Rat(1));
    for (const auto& row : ech.rows()) {
      Rat c = row.get(f);
      if (c != 0) v.set(row.leading_index(), -c);
    }
    out.push_back(std::move(v));
  }
  return out;
}

int matrix_rank(const SparseMatrix& m) {
  Echelon ech;
  SparseMatrix t = m.transpose();
  for (int c = 0; c < t.rows(); ++c) ech.insert(t.row(c));
  return ech.rank();
}

}  // namespace

SparseVec FinModule::act(const SparseVec& a, const SparseVec& v) const {
  SparseVec out;
  for (const auto& [i, c] : a.entries()) out.axpy(c, action[i].apply(v));
  return out;
}

void validate_module(const FinModule& x) {
  const FiniteAlgebra& a = *x.algebra;
  if (static_cast<int>(x.action.size()) != a.dim)
    throw InvariantViolation("one action matrix per algebra element required");
  if (static_cast<int>(x.grading.size()) != x.dim)
    throw InvariantViolation("one grading label per module vector required");
  for (const auto& m : x.action)
    if (m.rows() != x.dim || m.cols() != x.dim)
      throw InvariantViolation("action matrix shape mismatch");
  SparseMatrix unit(x.dim, x.dim);
  for (const auto& [i, c] : a.unit.entries()) mat_axpy(unit, c, x.action[i]);
  if (!(unit == SparseMatrix::identity(x.dim)))
    throw InvariantViolation("unit does not act as the identity");
  for (int i = 0; i < a.dim; ++i)
    for (int j = 0; j < a.dim; ++j) {
      SparseMatrix lhs = x.action[i].multiply(x.action[j]);
      SparseMatrix rhs(x.dim, x.dim);
      auto it = a.mult.find({i, j});
      if (it != a.mult.end())
        for (const auto& [k, c] : it->second.entries())
          mat_axpy(rhs, c, x.action[k]);
      if (!(lhs == rhs))
        throw InvariantViolation("structure constants broken at (" +
                                 std::to_string(i) + "," + std::to_string(j) +
                                 ")");
    }
  for (int i = 0; i < a.dim; ++i) {
    const AlgebraBlock& b = a.blocks[a.block_of_flat(i)];
    for (int col = 0; col < x.dim; ++col) {
      bool source_ok = x.grading[col] == b.mu;
      for (const auto& [r, row] : x.action[i].nonzero_rows()) {
        if (row.get(col) == 0) continue;
        if (!source_ok || x.grading[r] != b.lambda)
          throw InvariantViolation("action leaves the grading blocks at " +
                                   std::to_string(i));
      }
    }
  }
}

FinModule regular_module(const FiniteAlgebra& a) {
  FinModule x;
  x.algebra = &a;
  x.dim = a.dim;
  x.action.assign(a.dim, SparseMatrix(a.dim, a.dim));
  for (int i = 0; i < a.dim; ++i)
    for (int j = 0; j < a.dim; ++j) {
      auto it = a.mult.find({i, j});
      if (it == a.mult.end()) continue;
      for (const auto& [k, c] : it->second.entries()) x.action[i].set(k, j, c);
    }
  x.grading.reserve(a.dim);
  for (int j = 0; j < a.dim; ++j)
    x.grading.push_back(a.blocks[a.block_of_flat(j)].lambda);
  return x;
}

namespace {

struct MatrixUnit {
  int c, a, b;
};

std::map<std::pair<Rat, Rat>, std::vector<MatrixUnit>> block_layout(
    const std::vector<std::vector<Rat>>& components) {
  for (const auto& comp : components)
    for (const Rat& l : comp)
      if (Rat(l - comp.front()).get_den() != 1)
        throw InvariantViolation(
            "component labels must differ by integers within a component");
  std::map<std::pair<Rat, Rat>, std::vector<MatrixUnit>> by_block;
  for (int c = 0; c < static_cast<int>(components.size()); ++c) {
    const auto& labels = components[c];
    for (int a = 0; a < static_cast<int>(labels.size()); ++a)
      for (int b = 0; b < static_cast<int>(labels.size()); ++b)
        by_block[{labels[a], labels[b]}].push_back({c, a, b});
  }
  return by_block;
}

}  // namespace

std::map<std::tuple<int, int, int>, int> matrix_unit_index(
    const std::vector<std::vector<Rat>>& components) {
  std::map<std::tuple<int, int, int>, int> flat_of;
  int flat = 0;
  for (const auto& [key, elems] : block_layout(components))
    for (const MatrixUnit& e : elems) flat_of[{e.c, e.a, e.b}] = flat++;
  return flat_of;
}

FiniteAlgebra make_sum_of_matrix_algebras(
    int n, const std::vector<Rat>& gamma_n,
    const std::vector<std::vector<Rat>>& components) {
  // flat elements are the matrix units (c, a, b); blocks key (lambda, mu)
  auto by_block = block_layout(components);
  FiniteAlgebra out;
  out.n = n;
  out.level_m = n;
  out.gamma_n = gamma_n;
  std::map<std::tuple<int, int, int>, int> flat_of;
  for (const auto& [key, elems] : by_block) {
    AlgebraBlock blk;
    blk.lambda = key.first;
    blk.mu = key.second;
    blk.slice_d = rat_to_int(key.first - key.second);
    out.offset.push_back(out.dim);
    for (int p = 0; p < static_cast<int>(elems.size()); ++p) {
      SparseVec e;
      e.set(p, Rat(1));
      blk.basis.push_back(std::move(e));
      flat_of[{elems[p].c, elems[p].a, elems[p].b}] = out.dim++;
    }
    out.blocks.push_back(std::move(blk));
  }
  for (const auto& [key, elems] : by_block)
    for (const MatrixUnit& e : elems) {
      int i = flat_of.at({e.c, e.a, e.b});
      // e_{ab} e_{bd} = e_{ad} within the component
      const auto& labels = components[e.c];
      for (int d = 0; d < static_cast<int>(labels.size()); ++d) {
        int j = flat_of.at({e.c, e.b, d});
        SparseVec v;
        v.set(flat_of.at({e.c, e.a, d}), Rat(1));
        out.mult[{i, j}] = std::move(v);
      }
      if (e.a == e.b) {
        out.unit.add(i, Rat(1));
        out.hamiltonian.add(i, labels[e.a]);
      }
    }
  return out;
}

FinModule standard_module(const CornerAlgebra& corner,
                          const std::vector<std::vector<Rat>>& components,
                          int comp, int mult) {
  auto idx = matrix_unit_index(components);
  std::map<int, int> corner_of;
  for (int j = 0; j < static_cast<int>(corner.flat_in_big.size()); ++j)
    corner_of[corner.flat_in_big[j]] = j;
  const std::vector<Rat>& keep = corner.algebra.gamma_n;
  std::vector<int> rows;
  for (int a = 0; a < static_cast<int>(components[comp].size()); ++a)
    if (contains(keep, components[comp][a])) rows.push_back(a);
  FinModule x;
  x.algebra = &corner.algebra;
  x.dim = static_cast<int>(rows.size()) * mult;
  for (int a : rows)
    for (int m = 0; m < mult; ++m) x.grading.push_back(components[comp][a]);
  x.action.assign(corner.algebra.dim, SparseMatrix(x.dim, x.dim));
  for (int r = 0; r < static_cast<int>(rows.size()); ++r)
    for (int c = 0; c < static_cast<int>(rows.size()); ++c) {
      auto it = idx.find({comp, rows[r], rows[c]});
      auto jt = it == idx.end() ? corner_of.end() : corner_of.find(it->second);
      if (jt == corner_of.end())
        throw InvariantViolation("matrix unit missing from the corner");
      for (int m = 0; m < mult; ++m)
        x.action[jt->second].set(r * mult + m, c * mult + m, Rat(1));
    }
  return x;
}

FinModule direct_sum(const FinModule& a, const FinModule& b) {
  if (a.algebra != b.algebra)
    throw IncompatibleAlgebrasError("direct sum over different algebras");
  FinModule s;
  s.algebra = a.algebra;
  s.dim = a.dim + b.dim;
  s.grading = a.grading;
  s.grading.insert(s.grading.end(), b.grading.begin(), b.grading.end());
  for (size_t i = 0; i < a.action.size(); ++i) {
    SparseMatrix m(s.dim, s.dim);
    for (const auto& [r, row] : a.action[i].nonzero_rows())
      for (const auto& [c, v] : row.entries()) m.set(r, c, v);
    for (const auto& [r, row] : b.action[i].nonzero_rows())
      for (const auto& [c, v] : row.entries()) m.set(a.dim + r, a.dim + c, v);
    s.action.push_back(std::move(m));
  }
  return s;
}

CornerAlgebra corner_subalgebra(const FiniteAlgebra& big, int n_small,
                                const std::vector<Rat>& keep) {
  CornerAlgebra out;
  FiniteAlgebra& a = out.algebra;
  a.n = n_small;
  a.level_m = big.level_m;
  a.gamma_n = keep;
  std::vector<int> small_of(big.dim, -1);
  for (int b = 0; b < static_cast<int>(big.blocks.size()); ++b) {
    const AlgebraBlock& blk = big.blocks[b];
    if (!contains(keep, blk.lambda) || !contains(keep, blk.mu)) continue;
    a.offset.push_back(a.dim);
    a.blocks.push_back(blk);
    int size = static_cast<int>(blk.basis.size());
    for (int p = 0; p < size; ++p) {
      int flat = big.offset[b] + p;
      small_of[flat] = a.dim++;
      out.flat_in_big.push_back(flat);
    }
  }
  for (int i = 0; i < a.dim; ++i)
    for (int j = 0; j < a.dim; ++j) {
      auto it = big.mult.find({out.flat_in_big[i], out.flat_in_big[j]});
      if (it == big.mult.end()) continue;
      SparseVec v;
      for (const auto& [k, c] : it->second.entries()) {
        if (small_of[k] < 0)
          throw InvariantViolation("corner is not closed under products");
        v.set(small_of[k], c);
      }
      if (!v.is_zero()) a.mult[{i, j}] = std::move(v);
    }
  for (const auto& [k, c] : big.unit.entries())
    if (small_of[k] >= 0) a.unit.set(small_of[k], c);
  for (const auto& [k, c] : big.hamiltonian.entries())
    if (small_of[k] >= 0) a.hamiltonian.set(small_of[k], c);
  return out;
}

int GradedModuleShadow::level_dim(const Rat& lambda) const {
  auto it = levels.find(lambda);
  return it == levels.end() ? 0 : it->second;
}

GradedModuleShadow projective_shadow(const FiniteAlgebra& big,
                                     const CornerAlgebra& corner, int cap) {
  const std::vector<Rat>& keep = corner.algebra.gamma_n;
  GradedModuleShadow p;
  p.algebra = &corner.algebra;
  p.cap = cap;
  // level basis: big flat elements whose column label lies in the corner
  std::map<Rat, std::vector<int>> basis_flat;
  std::vector<std::pair<Rat, int>> place(big.dim, {Rat(0), -1});
  for (int b = 0; b < static_cast<int>(big.blocks.size()); ++b) {
    const AlgebraBlock& blk = big.blocks[b];
    if (!contains(keep, blk.mu)) continue;
    for (int q = 0; q < static_cast<int>(blk.basis.size()); ++q) {
      int flat = big.offset[b] + q;
      auto& lv = basis_flat[blk.lambda];
      place[flat] = {blk.lambda, static_cast<int>(lv.size())};
      lv.push_back(flat);
    }
  }
  for (const auto& [l, v] : basis_flat)
    p.levels[l] = static_cast<int>(v.size());
  p.algebra_embed.resize(corner.algebra.dim, {Rat(0), -1});
  for (int j = 0; j < corner.algebra.dim; ++j)
    p.algebra_embed[j] = place[corner.flat_in_big[j]];
  p.act.reserve(corner.algebra.dim);
  p.right.resize(corner.algebra.dim);
  for (int j = 0; j < corner.algebra.dim; ++j) {
    const AlgebraBlock& jb =
        corner.algebra.blocks[corner.algebra.block_of_flat(j)];
    int J = corner.flat_in_big[j];
    auto src = basis_flat.find(jb.mu);
    auto dst = basis_flat.find(jb.lambda);
    int rows = dst == basis_flat.end() ? 0 : static_cast<int>(dst->second.size());
    int cols = src == basis_flat.end() ? 0 : static_cast<int>(src->second.size());
    SparseMatrix left(rows, cols);
    if (src != basis_flat.end())
      for (int c = 0; c < cols; ++c) {
        auto it = big.mult.find({J, src->second[c]});
        if (it == big.mult.end()) continue;
        for (const auto& [k, v] : it->second.entries()) {
          const auto& [lv, pos] = place[k];
          if (pos < 0 || lv != jb.lambda)
            throw InvariantViolation("left action leaves the shadow levels");
          left.set(pos, c, v);
        }
      }
    p.act.push_back(std::move(left));
    for (const auto& [lv, flats] : basis_flat) {
      SparseMatrix m(static_cast<int>(flats.size()),
                     static_cast<int>(flats.size()));
      bool nonzero = false;
      for (int c = 0; c < static_cast<int>(flats.size()); ++c) {
        auto it = big.mult.find({flats[c], J});
        if (it == big.mult.end()) continue;
        for (const auto& [k, v] : it->second.entries()) {
          const auto& [kl, pos] = place[k];
          if (pos < 0 || kl != lv)
            throw InvariantViolation("right action moved a level");
          m.set(pos, c, v);
          nonzero = true;
        }
      }
      if (nonzero) p.right[j][lv] = std::move(m);
    }
  }
  return p;
}

namespace {

/// Quotient of a coordinate space by the rows of a reduced echelon: class
/// coordinates live on the free columns.
struct LevelQuot {
  Echelon ech;
  std::vector<int> free;
  std::map<int, int> pos;

  void finish(int dim) {
    free = ech.free_columns(dim);
    for (int i = 0; i < static_cast<int>(free.size()); ++i) pos[free[i]] = i;
  }
  SparseVec project(const SparseVec& v) const {
    SparseVec red = ech.reduce(v), out;
    for (const auto& [c, val] : red.entries()) out.set(pos.at(c), val);
    return out;
  }
};

}  // namespace

GradedModuleShadow tensor_over_An(const GradedModuleShadow& p,
                                  const FinModule& x, int cap) {
  if (p.algebra != x.algebra)
    throw IncompatibleAlgebrasError(
        "tensor factors live over different algebras");
  const FiniteAlgebra& a = *p.algebra;
  GradedModuleShadow t;
  t.algebra = p.algebra;
  t.side = p.side;
  t.cap = cap;
  // levelwise coequalizer: kill (p.a)(x)x - p(x)(a.x) inside P[l] (x) X
  std::map<Rat, LevelQuot> quot;
  for (const auto& [lv, pdim] : p.levels) {
    LevelQuot& q = quot[lv];
    int full = pdim * x.dim;
    for (int i = 0; i < a.dim; ++i) {
      auto rit = p.right[i].find(lv);
      for (int pi = 0; pi < pdim; ++pi)
        for (int xi = 0; xi < x.dim; ++xi) {
          SparseVec rel;
          if (rit != p.right[i].end())
            for (const auto& [qi, row] : rit->second.nonzero_rows()) {
              Rat c = row.get(pi);
              if (c != 0) rel.add(qi * x.dim + xi, c);
            }
          for (const auto& [yi, row] : x.action[i].nonzero_rows()) {
            Rat c = row.get(xi);
            if (c != 0) rel.add(pi * x.dim + yi, -c);
          }
          if (!rel.is_zero()) q.ech.insert(std::move(rel));
        }
    }
    q.finish(full);
    if (!q.free.empty()) t.levels[lv] = static_cast<int>(q.free.size());
  }
  // induced left action on classes
  t.act.reserve(a.dim);
  for (int i = 0; i < a.dim; ++i) {
    const AlgebraBlock& b = a.blocks[a.block_of_flat(i)];
    int rows = t.level_dim(b.lambda), cols = t.level_dim(b.mu);
    SparseMatrix m(rows, cols);
    if (rows > 0 && cols > 0) {
      const LevelQuot& src = quot.at(b.mu);
      const LevelQuot& dst = quot.at(b.lambda);
      for (int c = 0; c < cols; ++c) {
        int pi = src.free[c] / x.dim, xi = src.free[c] % x.dim;
        SparseVec full;
        for (const auto& [qi, row] : p.act[i].nonzero_rows()) {
          Rat v = row.get(pi);
          if (v != 0) full.add(qi * x.dim + xi, v);
        }
        SparseVec cls = dst.project(full);
        for (const auto& [r, v] : cls.entries()) m.set(r, c, v);
      }
    }
    t.act.push_back(std::move(m));
  }
  // canonical unit-tracking copy of X; its injectivity is the embedding
  // statement for the inclusion A_n (x) X -> P (x) X
  std::map<Rat, SparseMatrix> canon;
  for (const auto& [lv, d] : t.levels)
    canon.emplace(lv, SparseMatrix(d, x.dim));
  for (int xi = 0; xi < x.dim; ++xi)
    for (const auto& [j, uc] : a.unit.entries()) {
      const auto& [lv, pos] = p.algebra_embed[j];
      if (pos < 0) throw InvariantViolation("unit copy missing from P");
      SparseVec full;
      full.set(pos * x.dim + xi, uc);
      auto it = canon.find(lv);
      if (it == canon.end()) {
        if (!quot.at(lv).project(full).is_zero())
          throw InvariantViolation("canonical copy fell into a dead level");
        continue;
      }
      SparseVec cls = quot.at(lv).project(full);
      for (const auto& [r, v] : cls.entries()) it->second.add(r, xi, v);
    }
  // joint rank of the canonical map across levels
  {
    std::map<Rat, int> off;
    int total = 0;
    for (const auto& [lv, d] : t.levels) {
      off[lv] = total;
      total += d;
    }
    Echelon ech;
    int rank = 0;
    for (int xi = 0; xi < x.dim; ++xi) {
      SparseVec col;
      for (const auto& [lv, m] : canon)
        for (const auto& [r, row] : m.nonzero_rows()) {
          Rat v = row.get(xi);
          if (v != 0) col.set(off.at(lv) + r, v);
        }
      if (ech.insert(std::move(col))) ++rank;
    }
    if (rank != x.dim)
      throw InvariantViolation("canonical copy of X does not embed");
  }
  t.canonical = std::move(canon);
  return t;
}

FinModule eigen_sum(const FinModule& m, const std::vector<Rat>& gamma) {
  FinModule out;
  out.algebra = m.algebra;
  std::vector<int> keep;
  for (int i = 0; i < m.dim; ++i)
    if (contains(gamma, m.grading[i])) keep.push_back(i);
  out.dim = static_cast<int>(keep.size());
  for (int i : keep) out.grading.push_back(m.grading[i]);
  for (const auto& a : m.action) {
    SparseMatrix sub(out.dim, out.dim);
    for (int r = 0; r < out.dim; ++r)
      for (int c = 0; c < out.dim; ++c) {
        Rat v = a.get(keep[r], keep[c]);
        if (v != 0) sub.set(r, c, v);
      }
    out.action.push_back(std::move(sub));
  }
  return out;
}

FinModule eigen_sum(const GradedModuleShadow& m,
                    const std::vector<Rat>& gamma) {
  const FiniteAlgebra& a = *m.algebra;
  FinModule out;
  out.algebra = m.algebra;
  std::map<Rat, int> off;
  for (const auto& [lv, d] : m.levels) {
    if (!contains(gamma, lv)) continue;
    off[lv] = out.dim;
    out.dim += d;
    for (int i = 0; i < d; ++i) out.grading.push_back(lv);
  }
  for (int i = 0; i < a.dim; ++i) {
    const AlgebraBlock& b = a.blocks[a.block_of_flat(i)];
    SparseMatrix mat(out.dim, out.dim);
    auto so = off.find(b.mu);
    auto to = off.find(b.lambda);
    if (so != off.end() && to != off.end())
      for (const auto& [r, row] : m.act[i].nonzero_rows())
        for (const auto& [c, v] : row.entries())
          mat.set(to->second + r, so->second + c, v);
    out.action.push_back(std::move(mat));
  }
  return out;
}

RoundTripReport round_trip_check(const FiniteAlgebra& big,
                                 const CornerAlgebra& corner,
                                 const FinModule& x, int n, int gap, int cap) {
  if (cap < n + gap)
    throw CapTooSmallError("cap " + std::to_string(cap) +
                           " below n + gap = " + std::to_string(n + gap));
  GradedModuleShadow p = projective_shadow(big, corner, cap);
  GradedModuleShadow t = tensor_over_An(p, x, cap);
  FinModule e = eigen_sum(t, corner.algebra.gamma_n);
  RoundTripReport rep;
  rep.dim_left = x.dim;
  rep.dim_right = e.dim;
  // assemble the unit-tracking map into E_n coordinates
  std::map<Rat, int> off;
  {
    int total = 0;
    for (const auto& [lv, d] : t.levels) {
      if (!contains(corner.algebra.gamma_n, lv)) continue;
      off[lv] = total;
      total += d;
    }
  }
  SparseMatrix phi(e.dim, x.dim);
  for (const auto& [lv, m] : t.canonical) {
    auto it = off.find(lv);
    if (it == off.end()) continue;
    for (const auto& [r, row] : m.nonzero_rows())
      for (const auto& [c, v] : row.entries()) phi.set(it->second + r, c, v);
  }
  for (int i = 0; i < corner.algebra.dim; ++i)
    if (!(phi.multiply(x.action[i]) == e.action[i].multiply(phi)))
      ++rep.equivariance_failures;
  rep.iso = rep.equivariance_failures == 0 && e.dim == x.dim &&
            matrix_rank(phi) == x.dim;
  return rep;
}

GradedModuleShadow restricted_dual(const GradedModuleShadow& m) {
  GradedModuleShadow d;
  d.side = m.side == GradedModuleShadow::Side::Left
               ? GradedModuleShadow::Side::Right
               : GradedModuleShadow::Side::Left;
  d.algebra = m.algebra;
  d.cap = m.cap;
  d.levels = m.levels;
  d.act.reserve(m.act.size());
  for (const auto& a : m.act) d.act.push_back(a.transpose());
  d.right.resize(m.right.size());
  for (size_t i = 0; i < m.right.size(); ++i)
    for (const auto& [lv, mat] : m.right[i])
      d.right[i][lv] = mat.transpose();
  return d;
}

bool dual_pairing_nondegenerate(const GradedModuleShadow& m,
                                const GradedModuleShadow& dual) {
  if (m.levels != dual.levels) return false;
  for (const auto& [lv, d] : m.levels)
    if (matrix_rank(SparseMatrix::identity(d)) != d) return false;
  return true;
}

std::vector<SparseVec> annihilator_kernel(const FinModule& m, int n) {
  const FiniteAlgebra& a = *m.algebra;
  Echelon constraints;
  for (int i = 0; i < a.dim; ++i) {
    const AlgebraBlock& b = a.blocks[a.block_of_flat(i)];
    if (b.slice_d > -n - 1) continue;
    for (const auto& [r, row] : m.action[i].nonzero_rows())
      constraints.insert(row);
  }
  return kernel_basis(constraints, m.dim);
}

ModuleLawReport module_law_check(const FinModule& m, int n, int gap) {
  ModuleLawReport rep;
  const FiniteAlgebra& a = *m.algebra;
  std::vector<Rat> gamma0 = gamma_zero(a.gamma_n);
  std::vector<Rat> g_n = gamma_m(gamma0, n);
  std::vector<Rat> g_ng = gamma_m(gamma0, n + gap);
  std::vector<Rat> g_g = gamma_m(gamma0, gap);

  std::vector<SparseVec> kn = annihilator_kernel(m, n);
  Echelon kn_span;
  for (const auto& v : kn) kn_span.insert(v);
  for (int i = 0; i < m.dim; ++i) {
    if (!contains(g_n, m.grading[i])) continue;
    SparseVec e;
    e.set(i, Rat(1));
    if (!kn_span.reduce(e).is_zero()) rep.e_in_k = false;
  }
  for (const auto& v : kn)
    for (const auto& [i, c] : v.entries())
      if (!contains(g_ng, m.grading[i])) rep.k_in_eg = false;

  if (m.dim > 0 && annihilator_kernel(m, 0).empty()) rep.k0_detects = false;

  // closure of E_gap under the algebra action
  Echelon span;
  std::vector<SparseVec> frontier;
  for (int i = 0; i < m.dim; ++i) {
    if (!contains(g_g, m.grading[i])) continue;
    SparseVec e;
    e.set(i, Rat(1));
    if (span.insert(e)) frontier.push_back(e);
  }
  while (!frontier.empty()) {
    std::vector<SparseVec> next;
    for (const auto& v : frontier)
      for (const auto& act : m.action) {
        SparseVec w = act.apply(v);
        if (span.insert(w)) next.push_back(std::move(w));
      }
    frontier = std::move(next);
  }
  rep.generated_by_eg = span.rank() == m.dim;
  return rep;
}

std::vector<SparseMatrix> hom_space(const FinModule& x, const FinModule& y) {
  if (x.algebra != y.algebra)
    throw IncompatibleAlgebrasError("hom between different algebras");
  const FiniteAlgebra& a = *x.algebra;
  int unknowns = y.dim * x.dim;  // phi[r][c] at r * x.dim + c
  Echelon constraints;
  for (int i = 0; i < a.dim; ++i)
    for (int r = 0; r < y.dim; ++r)
      for (int c = 0; c < x.dim; ++c) {
        SparseVec row;
        for (int k = 0; k < x.dim; ++k) {
          Rat v = x.action[i].get(k, c);
          if (v != 0) row.add(r * x.dim + k, v);
        }
        for (int k = 0; k < y.dim; ++k) {
          Rat v = y.action[i].get(r, k);
          if (v != 0) row.add(k * x.dim + c, -v);
        }
        if (!row.is_zero()) constraints.insert(std::move(row));
      }
  std::vector<SparseMatrix> out;
  for (const auto& v : kernel_basis(constraints, unknowns)) {
    SparseMatrix phi(y.dim, x.dim);
    for (const auto& [idx, val] : v.entries())
      phi.set(idx / x.dim, idx % x.dim, val);
    out.push_back(std::move(phi));
  }
  return out;
}

bool eg_detects_iso(const FinModule& x, const FinModule& y,
                    const SparseMatrix& phi, int gap) {
  std::vector<Rat> g_g =
      gamma_m(gamma_zero(x.algebra->gamma_n), gap);
  std::vector<int> xs, ys;
  for (int i = 0; i < x.dim; ++i)
    if (contains(g_g, x.grading[i])) xs.push_back(i);
  for (int i = 0; i < y.dim; ++i)
    if (contains(g_g, y.grading[i])) ys.push_back(i);
  SparseMatrix sub(static_cast<int>(ys.size()), static_cast<int>(xs.size()));
  for (int r = 0; r < sub.rows(); ++r)
    for (int c = 0; c < sub.cols(); ++c) {
      Rat v = phi.get(ys[r], xs[c]);
      if (v != 0) sub.set(r, c, v);
    }
  bool eg_bij = sub.rows() == sub.cols() && matrix_rank(sub) == sub.rows();
  if (!eg_bij) return true;  // nothing to detect
  return x.dim == y.dim && matrix_rank(phi) == x.dim;
}

}  // namespace qfa
