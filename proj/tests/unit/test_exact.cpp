#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "logred/errors.hpp"
#include "logred/exact/newton.hpp"
#include "logred/exact/squarefree.hpp"

using namespace logred;
using th::Q;
using th::F;
using th::FU;

namespace {

template <class k>
PolyK<k> reconstruct(const SqfDecomposition<KField<k>>& d) {
  PolyK<k> acc = PolyK<k>::constant(d.unit);
  for (const auto& f : d.factors) acc *= f.factor.pow(static_cast<unsigned>(f.multiplicity));
  return acc;
}

PolyK<Rational> random_poly(std::mt19937& rng, int max_deg) {
  std::uniform_int_distribution<int> deg(0, max_deg), c(-3, 3), pick(0, 2);
  const int d = deg(rng);
  const auto one = KField<Rational>::constant(Rational(1));
  const auto pi = pi_element(Rational(1));
  std::vector<KField<Rational>> cs;
  for (int i = 0; i <= d; ++i) {
    auto a = one.from_int(c(rng));
    if (pick(rng) == 0) a += pi * one.from_int(c(rng));
    cs.push_back(a);
  }
  if (cs.back().is_zero()) cs.back() = one;
  return PolyK<Rational>(cs, one);
}

}  // namespace

TEST_CASE("gcd examples") {
  CHECK(gcd(Q("t^2 - 1"), Q("t - 1")) == Q("t - 1"));
  CHECK(gcd(Q("t^2 - pi"), Q("t - pi")) == Q("1"));
  CHECK(gcd(Q("0"), Q("3*t")) == Q("t"));
  CHECK(gcd(F(5, "t^2 - pi"), F(5, "t - pi")) == F(5, "1"));
}

TEST_CASE("squarefree decomposition examples") {
  const auto d = squarefree_decomposition(Q("t^3*(t - 1)^2"));
  REQUIRE(d.factors.size() == 2);
  CHECK(d.factors[0].factor == Q("t - 1"));
  CHECK(d.factors[0].multiplicity == 2);
  CHECK(d.factors[1].factor == Q("t"));
  CHECK(d.factors[1].multiplicity == 3);

  const auto e = squarefree_decomposition(Q("t^2 - pi"));
  REQUIRE(e.factors.size() == 1);
  CHECK(e.factors[0].multiplicity == 1);
  CHECK(e.factors[0].factor == Q("t^2 - pi"));

  CHECK_THROWS_AS(squarefree_decomposition(FU(5, "t^5 - u")), PurePower);
  const auto g = squarefree_decomposition_general(FU(5, "t^5 - u"));
  REQUIRE(g.factors.size() == 1);
  CHECK(g.factors[0].inseparable);
}

TEST_CASE("squarefree decomposition of a p-th power recurses") {
  // (t - pi)^5 over F5(pi) is a 5th power; decomposition must not confuse it
  // with an inseparable factor.
  const auto f = F(5, "(t - pi)^5*(t + 1)");
  const auto d = squarefree_decomposition(f);
  CHECK(reconstruct<Fp>(d) == f);
  bool found = false;
  for (const auto& x : d.factors)
    if (x.factor == F(5, "t - pi")) found = x.multiplicity == 5;
  CHECK(found);
}

TEST_CASE("squarefree reconstruction on random products") {
  std::mt19937 rng(7);
  for (int i = 0; i < 40; ++i) {
    auto f = random_poly(rng, 3) * random_poly(rng, 2).pow(2) * random_poly(rng, 2).pow(3);
    if (f.is_zero()) continue;
    const auto d = squarefree_decomposition(f);
    CHECK(reconstruct<Rational>(d) == f);
    for (std::size_t a = 0; a < d.factors.size(); ++a)
      for (std::size_t b = a + 1; b < d.factors.size(); ++b)
        CHECK(gcd(d.factors[a].factor, d.factors[b].factor).is_one());
  }
}

TEST_CASE("ord_at") {
  CHECK(ord_at(Q("t^2*(t + 1)"), Q("t")) == 2);
  CHECK(ord_at(Q("-432*t^2"), Q("t")) == 2);
  CHECK(ord_at(Q("0"), Q("t")).is_infinite());
  CHECK_THROWS_AS(ord_at(Q("t"), Q("3")), InvalidPlace);
  CHECK_THROWS_AS(ord_at(Q("t"), Q("2*t")), InvalidPlace);

  std::mt19937 rng(11);
  for (int i = 0; i < 30; ++i) {
    const auto f = random_poly(rng, 4), h = random_poly(rng, 4);
    if (f.is_zero() || h.is_zero()) continue;
    const auto g = Q("t^2 + pi");
    CHECK(ord_at(f * h, g).value() == ord_at(f, g).value() + ord_at(h, g).value());
  }
}

TEST_CASE("division reconstructs exactly") {
  std::mt19937 rng(3);
  for (int i = 0; i < 30; ++i) {
    const auto f = random_poly(rng, 6), g = random_poly(rng, 3);
    if (g.is_zero()) continue;
    const auto [q, r] = f.divmod(g);
    CHECK(q * g + r == f);
    CHECK(r.degree() < g.degree());
  }
}

TEST_CASE("rational function normalization is idempotent") {
  const auto one = KField<Rational>::constant(Rational(1));
  const auto pi = pi_element(Rational(1));
  const auto a = (pi * pi - one) / (pi * one.from_int(2) - one.from_int(2));
  CHECK(a == (pi + one) / one.from_int(2));
  CHECK(a / one == a);
  CHECK(a.den().is_monic());
}

TEST_CASE("newton polygon examples") {
  const auto np1 = newton_polygon(Q("t^2 - pi"));
  REQUIRE(np1.segments.size() == 1);
  CHECK(np1.segments[0].root_valuation == Fraction::make(1, 2));
  CHECK(np1.segments[0].length == 2);

  const auto np2 = newton_polygon(Q("t - pi^3"));
  REQUIRE(np2.segments.size() == 1);
  CHECK(np2.segments[0].root_valuation == Fraction::make(3, 1));
  CHECK(np2.segments[0].length == 1);

  const auto np3 = newton_polygon(Q("(t - pi)*(t^2 - pi)"));
  REQUIRE(np3.segments.size() == 2);
  CHECK(np3.segments[0].root_valuation == Fraction::make(1, 1));
  CHECK(np3.segments[0].length == 1);
  CHECK(np3.segments[1].root_valuation == Fraction::make(1, 2));
  CHECK(np3.segments[1].length == 2);

  CHECK_THROWS_AS(newton_polygon(Q("t^3")), DegenerateInput);
}

TEST_CASE("newton polygon slope sum") {
  std::mt19937 rng(5);
  for (int i = 0; i < 40; ++i) {
    const auto g = random_poly(rng, 5);
    if (g.degree() < 1 || g[0].is_zero()) continue;
    const auto np = newton_polygon(g);
    Fraction sum{0, 1};
    for (const auto& s : np.segments) {
      sum = Fraction::make(sum.num * s.slope.den + s.slope.num * s.length * sum.den,
                           sum.den * s.slope.den);
    }
    const std::int64_t expect = g.lead().valuation().value() - g[0].valuation().value();
    CHECK(sum == Fraction::make(expect, 1));
  }
}

TEST_CASE("residual separability") {
  const auto g = F(5, "t^2 - pi");
  CHECK(residual_separability(g, newton_polygon(g).segments[0]));
  const auto h = F(5, "(t - pi)*(t - 2*pi)");
  const auto np = newton_polygon(h);
  REQUIRE(np.segments.size() == 1);
  CHECK(np.segments[0].slope == Fraction::make(-1, 1));
  CHECK(residual_separability(h, np.segments[0]));
  // A repeated residual root: (t - pi)(t - pi - pi^2).
  const auto r = F(5, "(t - pi)*(t - pi - pi^2)");
  CHECK_FALSE(residual_separability(r, newton_polygon(r).segments[0]));
}

TEST_CASE("polynomial round trip through text") {
  for (const char* s : {"t^2 - pi", "(3*t - 1)/(2*pi)", "t^5 - u", "pi^3*t + 7/(pi + 1)"}) {
    const bool has_u = std::string(s).find('u') != std::string::npos;
    if (has_u) {
      const auto f = FU(5, s);
      CHECK(FU(5, th::str<FpUField>(f)) == f);
    } else {
      const auto f = Q(s);
      CHECK(Q(th::str<Rational>(f)) == f);
      const auto g = F(7, s);
      CHECK(F(7, th::str<Fp>(g)) == g);
    }
  }
}

TEST_CASE("field descriptors") {
  CHECK(parse_field_descriptor("Q") == FieldDescriptor::rationals());
  CHECK(parse_field_descriptor("Fp(7)") == FieldDescriptor::prime_field(7));
  CHECK(parse_field_descriptor("Fp(5)(u)") == FieldDescriptor::rational_function_field(5));
  CHECK_THROWS_AS(parse_field_descriptor("Fp(3)"), FieldError);
  CHECK_THROWS_AS(parse_field_descriptor("Fp(2)"), FieldError);
  CHECK_THROWS_AS(parse_field_descriptor("Fp(9)"), FieldError);
  CHECK_THROWS_AS(parse_field_descriptor("R"), Error);
}

TEST_CASE("parse errors carry positions") {
  try {
    Q("t + * 2");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() >= 5);
  }
  CHECK_THROWS_AS(Q("t^2 + u"), Error);
  CHECK_THROWS_AS(Q("1/t"), Error);
  CHECK_THROWS_AS(Q("1/0"), Error);
}
