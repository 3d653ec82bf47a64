#include "doctest.h"
#include "logred/errors.hpp"
#include "logred/report.hpp"
#include "report_walk.hpp"

using namespace logred;

namespace {

Json run(const std::string& text, AnalyzeOptions o = {}) { return analyze(parse_surface(text), o); }

const Json* find_class(const Json& r, const std::string& place) {
  for (const auto& c : r["classes"])
    if (c["place"] == place) return &c;
  return nullptr;
}

}  // namespace

TEST_CASE("parse_surface accepts the documented format") {
  const auto in = parse_surface("# wild example\nbase = Fp(5)\nB = t^5 - pi\nA = 0\n");
  CHECK(in.field == FieldDescriptor::prime_field(5));
  CHECK_FALSE(in.long_form);
  CHECK(in.coefficients.at("B").text == "t^5 - pi");

  const auto lf = parse_surface(
      "base = Q\na1 = t\na4 = 1\na6 = t^2\nfactor = t\nfactor = t - 1\n"
      "assert_cohomological_tameness = true\naux_degree = 2\n");
  CHECK(lf.long_form);
  CHECK(lf.factors.size() == 2);
  CHECK(lf.assert_cohomological_tameness);
  CHECK(lf.aux_degree == 2);
}

TEST_CASE("parse_surface errors") {
  CHECK_THROWS_AS(parse_surface("base = Fp(3)\nA = 0\nB = t\n"), FieldError);
  CHECK_THROWS_AS(parse_surface("base = Fp(2)\nA = 0\nB = t\n"), FieldError);
  CHECK_THROWS_AS(parse_surface("base = Q\nB = t\n"), FieldError);
  CHECK_THROWS_AS(parse_surface("base = Q\n"), FieldError);
  CHECK_THROWS_AS(parse_surface("A = 0\nB = t\n"), FieldError);
  CHECK_THROWS_AS(parse_surface("base = Q\nA = 0\nB = t\na4 = 1\n"), FieldError);
  CHECK_THROWS_AS(parse_surface("base = Q\nA = 0\nA = 1\nB = t\n"), ParseError);
  CHECK_THROWS_AS(parse_surface("base = Q\nA = 0\nC = 1\nB = t\n"), ParseError);
  CHECK_THROWS_AS(parse_surface("base = Q\nA = 0\nB t\n"), ParseError);
  CHECK_THROWS_AS(parse_surface("base = Q\nA = 0\nB = u\n"), ParseError);
  try {
    parse_surface("base = Q\nA = 0\nB = t +* 1\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() > 5);
  }
}

TEST_CASE("worked example report") {
  for (const char* base : {"Q", "Fp(5)"}) {
    const Json r = run(std::string("base = ") + base + "\nA = 0\nB = t\n", {true, 1});
    CHECK(r["schema_version"] == 1);
    const Json* c = find_class(r, "t");
    REQUIRE(c);
    CHECK((*c)["kodaira"] == "II");
    CHECK((*c)["m"] == 1);
    CHECK(r["infinity"]["kodaira"] == "II*");
    CHECK(r["infinity"]["m"] == 9);
    CHECK(r["total_nu"] == 12);
    CHECK(r["total_nu_mod_12"] == 0);
    CHECK(r["big_modification_plan"] == Json::array({"t"}));
    CHECK(r["auxiliary_divisor"]["points"] == Json::array({"t - 1"}));
    CHECK(r["verdict"]["outcome"] == "LogGoodUpToModification");
    CHECK(r["failure"].is_null());
    CHECK(exit_code(r) == 0);
  }
}

TEST_CASE("verdicts without the assertion stay inconclusive") {
  const Json r = run("base = Q\nA = 1\nB = 1\n");
  CHECK(r["deg_D"] == 0);
  CHECK(r["verdict"]["outcome"] == "Inconclusive");
  CHECK(r["verdict"]["reason"].get<std::string>().find("not asserted") != std::string::npos);
  const Json a = run("base = Q\nA = 1\nB = 1\nassert_cohomological_tameness = true\n");
  CHECK(a["verdict"]["outcome"] == "LogGoodReduction");
  CHECK(a["auxiliary_divisor"]["total_degree"] == 3);
}

TEST_CASE("inseparable class over Fp(u)") {
  const Json r = run("base = Fp(5)(u)\nA = 0\nB = t^5 - u\n");
  const Json* c = find_class(r, "t^5 - u");
  REQUIRE(c);
  CHECK((*c)["nu"] == 2);
  CHECK((*c)["kodaira"] == "II");
  CHECK((*c)["inseparable"] == true);
  CHECK((*c)["tameness"]["state"] == "NotEtale");
  CHECK(r["verdict"]["outcome"] == "Obstructed");
  CHECK(exit_code(r) == 0);
}

TEST_CASE("math errors become a failure block") {
  const Json r = run("base = Q\nA = 0\nB = 0\n");
  REQUIRE(r["failure"].is_object());
  CHECK(r["failure"]["kind"] == "SingularGenericFibre");
  CHECK(exit_code(r) == 2);
  const Json d = run("base = Q\nA = -3\nB = 2 + t\nfactor = t + 1\n");
  CHECK(d["failure"]["kind"] == "InvalidPlace");
}

TEST_CASE("long form and declared factors") {
  const Json r = run("base = Q\na2 = 1\na4 = 0\na6 = t\n");
  CHECK(r["short_form"]["A"] == "-1/3");
  CHECK(r["short_form"]["B"] == "(27*t + 2)/27");
  const Json d = run("base = Q\nA = -3\nB = 2 + t\nfactor = t\nfactor = t + 4\n");
  REQUIRE(d["classes"].size() == 2);
  for (const auto& c : d["classes"]) {
    CHECK(c["declared"] == true);
    CHECK(c["irreducible"] == true);
    CHECK(c["oracle_kind"] == "multiplicative");
  }
}

TEST_CASE("local, tame and torsion3 reports") {
  const auto in = parse_surface("base = Q\nA = t^2\nB = t^2\n");
  const Json l = local_report(in, "t");
  CHECK(l["place"]["kodaira"] == "IV");
  CHECK(l["place"]["nu"] == 4);
  CHECK(local_report(in, "inf")["place"]["place"] == "inf");
  CHECK(local_report(in, "t - 1")["place"]["kodaira"] == "I0");
  CHECK_THROWS_AS(local_report(in, "t^2"), InvalidPlace);

  const Json t = tame_report(parse_surface("base = Fp(5)\nA = 0\nB = t^5 - pi\n"));
  CHECK(t["aggregate"]["state"] == "Wild");

  const Json o = torsion3_report(parse_surface("base = Fp(7)\nA = 0\nB = 1\n"), 7);
  CHECK(o["torsion3"]["aggregate"] == "Tame");
  CHECK(o["oracle"]["agree"] == true);
  CHECK(o["oracle"]["enumerated_x"] == Json::array({"0"}));
  CHECK_THROWS_AS(torsion3_report(parse_surface("base = Q\nA = 0\nB = t\n"), std::nullopt),
                  DegenerateInput);
  CHECK_THROWS_AS(torsion3_report(parse_surface("base = Fp(7)\nA = 0\nB = 1\n"), 25), Error);
}

TEST_CASE("charts report") {
  const auto phi = parse_chart(
      "characteristic = 5\nsource_free = V\ntarget_free = V H H\nmatrix =\n5\n0\n0\n");
  const Json r = charts_report(phi, true);
  CHECK(r["kato"]["log_smooth"] == false);
  CHECK(r["removed_horizontal"]["torsion_preserved"] == true);
  CHECK(r["removed_horizontal"]["verdict_preserved"] == true);
  const auto node = parse_chart("characteristic = 5\nsource_free = V\ntarget_free = V V\nmatrix =\n1\n1\n");
  CHECK(charts_report(node, false)["kato"]["log_smooth"] == true);
  CHECK(render_text(charts_report(node, false)).find("log smooth") != std::string::npos);
}

TEST_CASE("determinism and round trip") {
  for (const char* text : {"base = Q\nA = 0\nB = t\n", "base = Fp(7)\nA = t^2\nB = t^2 + pi\n",
                           "base = Fp(5)(u)\nA = u*t\nB = t^3 - u*pi\n",
                           "base = Q\nA = (t - 1)^4*t\nB = (t - 1)^6*pi\n",
                           "base = Fp(11)\nA = pi\nB = 1\n"}) {
    const auto a = render_json(run(text)), b = render_json(run(text));
    CHECK(a == b);
    CHECK(render_text(run(text)) == render_text(run(text)));
    const Json r = Json::parse(a);
    CHECK(gen::printed_polynomials(r).size() > 3);
    CHECK(gen::round_trip_failures(r).empty());
  }
}

TEST_CASE("selftest passes") {
  const Json r = selftest();
  CHECK(r["failed"] == 0);
  CHECK(r["passed"].get<int>() >= 20);
}
