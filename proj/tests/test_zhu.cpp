#include "doctest.h"

#include <cstdlib>
#include <string>

#include "qfa/zhu.hpp"

using namespace qfa;

namespace {

std::string fixture(const std::string& name) {
  const char* dir = std::getenv("QFA_FIXTURES");
  REQUIRE(dir != nullptr);
  return std::string(dir) + "/" + name;
}

TruncationWindow win(const VoaData& voa) {
  TruncationWindow w;
  w.max_weight = voa.window.max_weight;
  return w;
}

}  // namespace

TEST_CASE("poisson fixtures load and verify") {
  for (const char* name :
       {"poisson_dual_numbers.json", "poisson_nilp.json", "poisson_xy_y.json",
        "poisson_xy_z.json"}) {
    PoissonAlgebraData p = load_poisson(fixture(name));
    CHECK(p.complete);
    PoissonCheckReport rep = poisson_check(p);
    std::string msg = std::string(name) + ": " +
        (rep.failures.empty() ? std::string() : rep.failures.front());
    INFO(msg);
    CHECK(rep.failures.empty());
    CHECK(rep.checked > 0);
    CHECK(rep.skipped == 0);
  }
}

TEST_CASE("injected bad bracket produces witnesses") {
  PoissonAlgebraData p = load_poisson(fixture("poisson_dual_numbers.json"));
  int eps = p.index_of("eps");
  SparseVec one;
  one.set(p.unit_index, Rat(1));
  p.bracket[{eps, eps}] = one;  // breaks antisymmetry and grading
  PoissonCheckReport rep = poisson_check(p);
  bool saw_antisym = false, saw_grading = false;
  for (const auto& f : rep.failures) {
    if (f.find("antisymmetry") != std::string::npos) saw_antisym = true;
    if (f.find("grading") != std::string::npos) saw_grading = true;
  }
  CHECK(saw_antisym);
  CHECK(saw_grading);
}

TEST_CASE("rejects non-homogeneous tables") {
  std::string text = R"({
    "name": "bad", "unit": "one",
    "basis": [{"symbol": "one", "weight": 0}, {"symbol": "x", "weight": 2}],
    "mult": [{"left": "x", "n": 0, "right": "x",
              "value": [["x", "1/1"]]}],
    "bracket": []
  })";
  CHECK_THROWS_AS(load_poisson_text(text), InvariantViolation);
}

TEST_CASE("zhu quotient of the trivial voa is the unit line") {
  VoaData voa = load_voa(fixture("trivial.json"));
  PoissonAlgebraData p = c2_quotient(voa, win(voa));
  CHECK(p.dim() == 1);
  CHECK(p.unit_index == 0);
  CHECK(poisson_check(p).failures.empty());
}

TEST_CASE("heisenberg zhu quotient: profile 1,1,1,1,1 and not C2-finite") {
  VoaData voa = load_voa(fixture("heisenberg_w4.json"));
  PoissonAlgebraData p = c2_quotient(voa, win(voa));
  CHECK(p.profile == std::vector<int>({1, 1, 1, 1, 1}));
  CHECK(p.dim() == 5);
  CHECK_FALSE(p.c2_finite_within_window());
  CHECK_FALSE(p.complete);

  // the induced product and bracket on classes
  int a = p.index_of("a1");
  int w = p.index_of("w");
  REQUIRE(p.mult_known(a, a));
  SparseVec ew;
  ew.set(w, Rat(2));
  CHECK(p.mult_of(a, a) == ew);  // a_(-1)a = 2w
  REQUIRE(p.bracket_known(a, a));
  CHECK(p.bracket_of(a, a).is_zero());

  // Poisson laws hold wherever entries are known
  PoissonCheckReport rep = poisson_check(p);
  std::string msg =
      rep.failures.empty() ? std::string() : rep.failures.front();
  INFO(msg);
  CHECK(rep.failures.empty());
  CHECK(rep.skipped > 0);
}

TEST_CASE("truncation stability of low weights") {
  VoaData v2 = load_voa(fixture("heisenberg_w2.json"));
  VoaData v4 = load_voa(fixture("heisenberg_w4.json"));
  PoissonAlgebraData p2 = c2_quotient(v2, win(v2));
  PoissonAlgebraData p4 = c2_quotient(v4, win(v4));
  for (int r = 0; r <= 2; ++r) CHECK(p2.profile[r] == p4.profile[r]);
}
