#include "doctest.h"

#include "qfa/linalg.hpp"

using namespace qfa;

namespace {

SparseMatrix dense(std::vector<std::vector<long>> rows) {
  int r = static_cast<int>(rows.size());
  int c = rows.empty() ? 0 : static_cast<int>(rows[0].size());
  SparseMatrix m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m.set(i, j, Rat(rows[i][j]));
  return m;
}

Polynomial poly(std::vector<long> coeffs) {
  std::vector<Rat> c;
  for (long x : coeffs) c.emplace_back(x);
  return Polynomial(std::move(c));
}

bool annihilates(const Polynomial& p, const SparseMatrix& m) {
  return p.eval(m) == SparseMatrix(m.rows(), m.cols());
}

}  // namespace

TEST_CASE("rational parse and format") {
  CHECK(format_rat(parse_rat("3/6")) == "1/2");
  CHECK(format_rat(parse_rat("-4/2")) == "-2/1");
  CHECK(format_rat(Rat(3)) == "3/1");
  CHECK(format_rat(Rat(0)) == "0/1");
  CHECK_THROWS_AS(parse_rat("abc"), ParseError);
  CHECK_THROWS_AS(parse_rat(""), ParseError);
}

TEST_CASE("binomial coefficients with negative upper index") {
  CHECK(binom(4, 2) == Rat(6));
  CHECK(binom(-1, 3) == Rat(-1));
  CHECK(binom(-3, 2) == Rat(6));
  CHECK(binom(2, 5) == Rat(0));
  CHECK(binom(0, 0) == Rat(1));
  CHECK(binom(5, -1) == Rat(0));
}

TEST_CASE("sparse vector stores no zeros") {
  SparseVec v;
  v.set(2, Rat(5));
  v.add(2, Rat(-5));
  CHECK(v.is_zero());
  v.set(0, Rat(1));
  v.set(3, Rat(0));
  CHECK(v.entries().size() == 1);
  CHECK(v.leading_index() == 0);
}

TEST_CASE("sparse matrix apply and multiply") {
  SparseMatrix m = dense({{1, 2}, {3, 4}});
  SparseVec x;
  x.set(0, Rat(1));
  x.set(1, Rat(-1));
  SparseVec y = m.apply(x);
  CHECK(y.get(0) == Rat(-1));
  CHECK(y.get(1) == Rat(-1));
  SparseMatrix p = m.multiply(SparseMatrix::identity(2));
  CHECK(p == m);
  CHECK(m.transpose().get(0, 1) == Rat(3));
}

TEST_CASE("rank and kernel: zero matrix") {
  RankKernel rk = rank_kernel(SparseMatrix(3, 3));
  CHECK(rk.rank == 0);
  CHECK(rk.kernel_basis.size() == 3);
}

TEST_CASE("rank and kernel: identity") {
  RankKernel rk = rank_kernel(SparseMatrix::identity(4));
  CHECK(rk.rank == 4);
  CHECK(rk.kernel_basis.empty());
}

TEST_CASE("rank and kernel: rank-one 2x2") {
  RankKernel rk = rank_kernel(dense({{1, 2}, {2, 4}}));
  CHECK(rk.rank == 1);
  REQUIRE(rk.kernel_basis.size() == 1);
  // kernel spanned by (-2, 1)
  const SparseVec& k = rk.kernel_basis[0];
  CHECK(k.get(0) * Rat(1) == k.get(1) * Rat(-2));
  // verify it really is in the kernel
  CHECK(dense({{1, 2}, {2, 4}}).apply(k).is_zero());
}

TEST_CASE("rank and kernel: rectangular") {
  SparseMatrix m = dense({{1, 0, 1}, {0, 1, 1}});
  RankKernel rk = rank_kernel(m);
  CHECK(rk.rank == 2);
  REQUIRE(rk.kernel_basis.size() == 1);
  CHECK(m.apply(rk.kernel_basis[0]).is_zero());
}

TEST_CASE("echelon reduce and insert") {
  Echelon e;
  SparseVec a;
  a.set(0, Rat(2));
  a.set(1, Rat(4));
  CHECK(e.insert(a));
  SparseVec b;
  b.set(0, Rat(1));
  b.set(1, Rat(2));
  CHECK_FALSE(e.insert(b));
  CHECK(e.rank() == 1);
  SparseVec c;
  c.set(1, Rat(1));
  CHECK(e.insert(c));
  CHECK(e.rank() == 2);
  // rows stay mutually reduced
  CHECK(e.rows()[0].get(1) == Rat(0));
}

TEST_CASE("polynomial arithmetic and division") {
  Polynomial p = poly({-1, 0, 1});  // x^2 - 1
  Polynomial q = poly({-1, 1});     // x - 1
  auto [quot, rem] = p.divmod(q);
  CHECK(rem.is_zero());
  CHECK(quot == poly({1, 1}));
  CHECK(p.eval(Rat(3)) == Rat(8));
  CHECK((p * q).degree() == 3);
  CHECK(poly_gcd(p, q) == q.monic());
  CHECK(poly_lcm(q, poly({1, 1})) == p);
  CHECK(poly({0, 2}).monic() == poly({0, 1}));
  CHECK(p.to_string() == "x^2 - 1/1");
}

TEST_CASE("rational roots with multiplicities") {
  // x(x - 1/2)^2 (x + 3)
  Polynomial half(std::vector<Rat>{Rat(-1, 2), Rat(1)});  // x - 1/2
  Polynomial p = poly({0, 1}) * half * half * poly({3, 1});
  RootSplit rs = rational_roots(p);
  REQUIRE(rs.roots.size() == 3);
  CHECK(rs.roots[0] == std::pair<Rat, int>{Rat(-3), 1});
  CHECK(rs.roots[1] == std::pair<Rat, int>{Rat(0), 1});
  CHECK(rs.roots[2] == std::pair<Rat, int>{Rat(1, 2), 2});
  CHECK(rs.cofactor.degree() == 0);
}

TEST_CASE("rational roots: irreducible cofactor") {
  RootSplit rs = rational_roots(poly({1, 0, 1}));  // x^2 + 1
  CHECK(rs.roots.empty());
  CHECK(rs.cofactor == poly({1, 0, 1}));
}

TEST_CASE("minimal polynomial: identity is x - 1") {
  Polynomial p = min_poly(SparseMatrix::identity(3));
  CHECK(p == poly({-1, 1}));
  CHECK(annihilates(p, SparseMatrix::identity(3)));
}

TEST_CASE("minimal polynomial: nilpotent Jordan block is x^2") {
  SparseMatrix j = dense({{0, 1}, {0, 0}});
  Polynomial p = min_poly(j);
  CHECK(p == poly({0, 0, 1}));
  CHECK(annihilates(p, j));
  CHECK_FALSE(annihilates(poly({0, 1}), j));
}

TEST_CASE("minimal polynomial: diag(0,0,1) is x(x-1)") {
  SparseMatrix m = dense({{0, 0, 0}, {0, 0, 0}, {0, 0, 1}});
  Polynomial p = min_poly(m);
  CHECK(p == poly({0, -1, 1}));
}

TEST_CASE("minimal polynomial annihilates and divides char poly degree") {
  SparseMatrix m = dense({{2, 1, 0}, {0, 2, 0}, {0, 0, 5}});
  Polynomial p = min_poly(m);
  SparseMatrix zero(3, 3);
  CHECK(p.eval(m) == zero);
  // (x-2)^2 (x-5)
  CHECK(p == (poly({-2, 1}) * poly({-2, 1}) * poly({-5, 1})));
  // no proper divisor annihilates: check (x-2)(x-5)
  Polynomial smaller = poly({-2, 1}) * poly({-5, 1});
  CHECK_FALSE(smaller.eval(m) == zero);
}

TEST_CASE("generalized eigenspaces: diagonalizable with repeats") {
  SparseMatrix m = dense({{2, 0, 0}, {0, 2, 0}, {0, 0, 3}});
  EigenSplit s = gen_eigen_split(m);
  REQUIRE(s.blocks.size() == 2);
  CHECK(s.blocks[0].eigenvalue == Rat(2));
  CHECK(s.blocks[0].basis.size() == 2);
  CHECK(s.blocks[1].eigenvalue == Rat(3));
  CHECK(s.blocks[1].basis.size() == 1);
  CHECK(s.minimal_polynomial == (poly({-2, 1}) * poly({-3, 1})));
}

TEST_CASE("generalized eigenspaces: defective Jordan block") {
  SparseMatrix m = dense({{5, 1}, {0, 5}});
  EigenSplit s = gen_eigen_split(m);
  REQUIRE(s.blocks.size() == 1);
  CHECK(s.blocks[0].eigenvalue == Rat(5));
  CHECK(s.blocks[0].multiplicity == 2);
  CHECK(s.blocks[0].basis.size() == 2);
}

TEST_CASE("generalized eigenspaces: non-rational spectrum is a typed error") {
  // companion matrix of x^2 + 1
  SparseMatrix m = dense({{0, -1}, {1, 0}});
  CHECK_THROWS_AS(gen_eigen_split(m), NonRationalSpectrumError);
  try {
    gen_eigen_split(m);
  } catch (const NonRationalSpectrumError& e) {
    CHECK(e.factor.find("x^2") != std::string::npos);
  }
}
