#include "doctest.h"

#include <cstdlib>
#include <string>

#include "qfa/current.hpp"

using namespace qfa;

namespace {

std::string fixture(const std::string& name) {
  const char* dir = std::getenv("QFA_FIXTURES");
  REQUIRE(dir != nullptr);
  return std::string(dir) + "/" + name;
}

const VoaData& heis() {
  static VoaData voa = load_voa(fixture("heisenberg_w4.json"));
  return voa;
}

}  // namespace

TEST_CASE("vacuum modes vanish except J_0") {
  const VoaData& voa = heis();
  int vac = voa.vacuum_index;
  for (int k = -4; k <= 4; ++k) {
    CurrentElement x = raw_tensor(voa, vac, k);  // 1 (x) t^k = J_{k+1}(1)
    CurrentElement nf = normal_form_mod_partial(voa, x);
    if (k == -1)
      CHECK(nf == j_term(0, vac));
    else
      CHECK(nf.is_zero());
  }
}

TEST_CASE("J_m(Tu) rewrites to -(m + wt u) J_m(u)") {
  const VoaData& voa = heis();
  int a = voa.index_of("a1");
  int a2 = voa.index_of("a2");  // a2 = Ta
  for (int m = -3; m <= 3; ++m) {
    // Ta has weight 2, so J_m(Ta) is the term with basis a2.
    CurrentElement nf = normal_form_mod_partial(voa, j_term(m, a2));
    CurrentElement expect = j_term(m, a, Rat(-(m + 1)));
    CHECK(nf == normal_form_mod_partial(voa, expect));
  }
  // general instance from the interface contract: J_0(Ta) -> -1 * J_0(a)
  CHECK(normal_form_mod_partial(voa, j_term(0, a2)) == j_term(0, a, Rat(-1)));
}

TEST_CASE("normal form is idempotent") {
  const VoaData& voa = heis();
  CurrentElement x;
  x.add(1, voa.index_of("a1"), Rat(3));
  x.add(-2, voa.index_of("w"), Rat(1, 2));
  CurrentElement nf = normal_form_mod_partial(voa, x);
  CHECK(normal_form_mod_partial(voa, nf) == nf);
}

TEST_CASE("heisenberg commutator [J_1(a), J_-1(a)] = J_0(1)") {
  const VoaData& voa = heis();
  int a = voa.index_of("a1");
  CurrentElement got = bracket(voa, j_term(1, a), j_term(-1, a));
  CHECK(got == j_term(0, voa.vacuum_index));
  // [a_m, a_n] = m delta_{m+n,0} in general
  for (int m = -2; m <= 2; ++m)
    for (int n = -2; n <= 2; ++n) {
      CurrentElement b = bracket(voa, j_term(m, a), j_term(n, a));
      if (m + n == 0 && m != 0)
        CHECK(b == j_term(0, voa.vacuum_index, Rat(m)));
      else
        CHECK(b.is_zero());
    }
}

TEST_CASE("hamiltonian relation [J_0(w), J_n(u)] = -n J_n(u)") {
  const VoaData& voa = heis();
  int w = voa.conformal_index;
  int verified = 0;
  for (int u = 0; u < voa.dim(); ++u)
    for (int n = -4; n <= 4; ++n) {
      try {
        CurrentElement got = bracket(voa, j_term(0, w), j_term(n, u));
        CurrentElement expect =
            normal_form_mod_partial(voa, j_term(n, u, Rat(-n)));
        CHECK(got == expect);
        ++verified;
      } catch (const OutOfWindowError&) {
        // w_(0)u leaves the window for top-weight u
      }
    }
  CHECK(verified > 50);
}

TEST_CASE("raw and J-indexed brackets agree after normal form") {
  const VoaData& voa = heis();
  for (int u = 0; u < voa.dim(); ++u)
    for (int v = 0; v < voa.dim(); ++v)
      for (int p = -3; p <= 3; ++p)
        for (int q = -3; q <= 3; ++q) {
          // u (x) t^p = J_{p - wt(u) + 1}(u)
          int m = p - voa.weights[u] + 1;
          int n = q - voa.weights[v] + 1;
          try {
            CurrentElement from_raw =
                normal_form_mod_partial(voa, raw_bracket(voa, u, p, v, q));
            CurrentElement from_j =
                bracket(voa, j_term(m, u), j_term(n, v));
            CHECK(from_raw == from_j);
          } catch (const OutOfWindowError&) {
            // skipped: identical skip behavior is exercised elsewhere
          }
        }
}

TEST_CASE("degree additivity of the bracket") {
  const VoaData& voa = heis();
  int a = voa.index_of("a1");
  int w = voa.conformal_index;
  CurrentElement b = bracket(voa, j_term(2, w), j_term(-1, a));
  for (const auto& [k, c] : b.terms) CHECK(k.first == 1);  // deg -2 + 1
}

TEST_CASE("alternation [x,x] = 0") {
  const VoaData& voa = heis();
  for (int u = 0; u < voa.dim(); ++u)
    for (int m = -2; m <= 2; ++m) {
      try {
        CurrentElement b = bracket(voa, j_term(m, u), j_term(m, u));
        CHECK(b.is_zero());
      } catch (const OutOfWindowError&) {
      }
    }
}

TEST_CASE("lie properties on the trivial VOA") {
  VoaData voa = load_voa(fixture("trivial.json"));
  LieCheckReport rep = check_lie_properties(voa, 2);
  CHECK(rep.skew_failures.empty());
  CHECK(rep.jacobi_failures.empty());
  CHECK(rep.checked > 0);
}

TEST_CASE("lie properties on heisenberg, modes up to 1") {
  LieCheckReport rep = check_lie_properties(heis(), 1);
  CHECK(rep.skew_failures.empty());
  CHECK(rep.jacobi_failures.empty());
}

TEST_CASE("mutated table yields a lie-property witness") {
  VoaData voa = load_voa(fixture("heisenberg_w4.json"));
  // scale w_(0)w = Tw, which feeds directly into [J_m(w), J_n(w)]
  int w = voa.conformal_index;
  auto it = voa.products.find({0, w, w});
  REQUIRE(it != voa.products.end());
  it->second *= Rat(3);
  LieCheckReport rep = check_lie_properties(voa, 2);
  CHECK((!rep.jacobi_failures.empty() || !rep.skew_failures.empty()));
}
