#include "doctest.h"

#include "qfa/rational.hpp"
#include "qfa/report.hpp"

using namespace qfa;

namespace {

Report sample() {
  Report r;
  r.command = "spectrum";
  r.meta["input"] = "trivial";
  r.meta["gap"] = "0";
  r.columns = {"n", "phi", "omega"};
  r.rows = {{"0", "x", "{0/1}"}, {"1", "x", "{0/1}"}};
  return r;
}

}  // namespace

TEST_CASE("json emission round-trips exactly") {
  Report r = sample();
  std::string text = emit_json(r);
  Report back = parse_report_json(text);
  CHECK(back == r);
  CHECK(emit_json(back) == text);
}

TEST_CASE("table emission is stable and header-only when empty") {
  Report r = sample();
  std::string t1 = emit_table(r);
  std::string t2 = emit_table(r);
  CHECK(t1 == t2);
  CHECK(t1.find("command: spectrum") == 0);
  Report empty;
  empty.command = "quotient-dims";
  CHECK(emit_table(empty) == "command: quotient-dims\n");
}

TEST_CASE("malformed report json is rejected") {
  CHECK_THROWS_AS(parse_report_json("{"), ParseError);
  CHECK_THROWS_AS(parse_report_json("{\"command\": 3}"), ParseError);
}
