#include "doctest.h"

#include <cstdlib>
#include <string>

#include "qfa/voa.hpp"

using namespace qfa;

namespace {

std::string fixture(const std::string& name) {
  const char* dir = std::getenv("QFA_FIXTURES");
  REQUIRE(dir != nullptr);
  return std::string(dir) + "/" + name;
}

SparseVec unit(int i) {
  SparseVec v;
  v.set(i, Rat(1));
  return v;
}

}  // namespace

TEST_CASE("trivial VOA loads with one basis element") {
  VoaData voa = load_voa(fixture("trivial.json"));
  CHECK(voa.dim() == 1);
  CHECK(voa.vacuum_index == 0);
  CHECK(voa.conformal_index == -1);
  CHECK(apply_product(voa, -1, unit(0), unit(0)) == unit(0));
}

TEST_CASE("heisenberg W=4 loads and validates") {
  VoaData voa = load_voa(fixture("heisenberg_w4.json"));
  CHECK(voa.dim() == 12);
  CHECK(voa.weights[voa.conformal_index] == 2);
  CHECK(format_rat(voa.central_charge) == "1/1");
}

TEST_CASE("weight mislabel is rejected with the product named") {
  CHECK_THROWS_AS(load_voa(fixture("heisenberg_badweight.json")),
                  InvariantViolation);
  try {
    load_voa(fixture("heisenberg_badweight.json"));
  } catch (const InvariantViolation& e) {
    CHECK(std::string(e.what()).find("a1") != std::string::npos);
  }
}

TEST_CASE("malformed JSON is a parse error") {
  CHECK_THROWS_AS(load_voa_text("{not json"), ParseError);
  CHECK_THROWS_AS(load_voa_text("{}"), ParseError);
}

TEST_CASE("vacuum axioms via apply_product") {
  VoaData voa = load_voa(fixture("heisenberg_w4.json"));
  SparseVec vac = unit(voa.vacuum_index);
  for (int u = 0; u < voa.dim(); ++u) {
    CHECK(apply_product(voa, -1, unit(u), vac) == unit(u));
    CHECK(apply_product(voa, 0, unit(u), vac).is_zero());
    CHECK(apply_product(voa, 2, unit(u), vac).is_zero());
  }
}

TEST_CASE("level-one pairing a_(1)a = vacuum") {
  VoaData voa = load_voa(fixture("heisenberg_w4.json"));
  int a = voa.index_of("a1");
  CHECK(apply_product(voa, 1, unit(a), unit(a)) == unit(voa.vacuum_index));
}

TEST_CASE("product status three-way classification") {
  VoaData voa = load_voa(fixture("heisenberg_w4.json"));
  int a = voa.index_of("a1");
  int a4 = voa.index_of("a4");
  // weight 1+4-(-1)-1 = 5 > 4: out of window
  CHECK(product_status(voa, -1, a, a4) == ProductStatus::OutOfWindow);
  CHECK_THROWS_AS(basis_product(voa, -1, a, a4), OutOfWindowError);
  // weight 1+1-3-1 = -2 < 0: certified zero, even though n is in range
  CHECK(product_status(voa, 3, a, a) == ProductStatus::CertifiedZero);
  CHECK(basis_product(voa, 3, a, a).is_zero());
  CHECK(product_status(voa, 0, a, a) == ProductStatus::Present);
}

TEST_CASE("apply_product output is weight homogeneous") {
  VoaData voa = load_voa(fixture("heisenberg_w4.json"));
  for (int u = 0; u < voa.dim(); ++u)
    for (int v = 0; v < voa.dim(); ++v)
      for (int n = -3; n <= 3; ++n) {
        if (product_status(voa, n, u, v) != ProductStatus::Present) continue;
        int target = voa.weights[u] + voa.weights[v] - n - 1;
        SparseVec prod = basis_product(voa, n, u, v);
        for (const auto& [s, c] : prod.entries())
          CHECK(voa.weights[s] == target);
      }
}

TEST_CASE("axiom checks pass on the fixtures") {
  for (const char* name : {"trivial.json", "heisenberg_w2.json",
                           "heisenberg_w3.json", "heisenberg_w4.json"}) {
    VoaData voa = load_voa(fixture(name));
    AxiomReport rep = check_axioms(voa);
    CHECK(rep.failures.empty());
    CHECK(rep.checked > 0);
  }
}

TEST_CASE("borcherds identity holds on the trivial VOA") {
  VoaData voa = load_voa(fixture("trivial.json"));
  BorcherdsReport rep = check_borcherds(voa, -3, 3, -3, 3, -3, 3);
  CHECK(rep.residuals.empty());
  CHECK(rep.checked > 0);
}

TEST_CASE("borcherds identity holds on heisenberg in a small box") {
  VoaData voa = load_voa(fixture("heisenberg_w4.json"));
  BorcherdsReport rep = check_borcherds(voa, -1, 1, -1, 1, -1, 1);
  CHECK(rep.residuals.empty());
  CHECK(rep.checked > 0);
  CHECK(rep.skipped > 0);
}

TEST_CASE("a mutated constant produces a located residual") {
  VoaData voa = load_voa(fixture("heisenberg_mut00.json"));
  BorcherdsReport rep = check_borcherds(voa, -3, 3, -3, 3, -3, 3);
  CHECK(!rep.residuals.empty());
}
