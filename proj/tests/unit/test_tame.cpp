#include <algorithm>

#include "doctest.h"
#include "helpers.hpp"
#include "logred/errors.hpp"
#include "logred/finite_field.hpp"
#include "logred/tame.hpp"

using namespace logred;
using th::F;
using th::FU;
using th::Q;

namespace {

template <class k>
GlobalReport<k> report_of(const FieldDescriptor& fd, const PolyK<k>& A, const PolyK<k>& B) {
  return analyze_surface(EllipticSurface<k>(fd, WeierstrassEquation<k>::short_form(A, B)));
}

GlobalReport<Rational> report_q(const char* A, const char* B) {
  return report_of<Rational>(FieldDescriptor::rationals(), Q(A), Q(B));
}

GlobalReport<Fp> report_f(std::int64_t p, const char* A, const char* B) {
  return report_of<Fp>(FieldDescriptor::prime_field(p), F(p, A), F(p, B));
}

KField<Fp> K(std::int64_t p, std::int64_t c, std::int64_t pi_power = 0) {
  const Fp one(1, p);
  auto a = k_to_K(Fp(c, p));
  for (std::int64_t i = 0; i < pi_power; ++i) a *= pi_element(one);
  return a;
}

std::vector<std::string> points(const AuxiliaryDivisor<Rational>& a) {
  std::vector<std::string> out;
  for (const auto& p : a.points) out.push_back(th::str<Rational>(p));
  return out;
}

}  // namespace

TEST_CASE("place tameness examples") {
  CHECK(place_tameness<Fp>(F(5, "t^2 - pi")).state == TamenessState::Tame);
  const auto w = place_tameness<Fp>(F(5, "t^5 - pi"));
  CHECK(w.state == TamenessState::Wild);
  REQUIRE(w.segments.size() == 1);
  CHECK(w.segments[0].denominator == 5);
  CHECK_FALSE(w.witness.empty());
  CHECK(place_tameness<FpUField>(FU(5, "t^5 - u")).state == TamenessState::NotEtale);
  CHECK(place_tameness<Rational>(Q("t^2 - pi")).state == TamenessState::Tame);
  CHECK(place_tameness<Rational>(Q("t^5 - pi")).state == TamenessState::Tame);
  CHECK(place_tameness<Fp>(F(7, "t^5 - pi")).state == TamenessState::Tame);
  CHECK(place_tameness<Fp>(F(5, "(t - pi)*(t - pi - pi^2)")).state ==
        TamenessState::Undetermined);
  CHECK(place_tameness<Fp>(F(5, "(t - pi)*(t - 2*pi)")).state == TamenessState::Tame);
  const auto o = place_tameness<Fp>(F(5, "t*(t^2 - pi)"));
  CHECK(o.state == TamenessState::Tame);
  CHECK(o.root_at_origin);
  CHECK(place_tameness<Fp>(F(5, "t - 3")).state == TamenessState::Tame);
  CHECK_THROWS_AS(place_tameness<Fp>(F(5, "2")), InvalidPlace);
}

TEST_CASE("severity order") {
  using S = TamenessState;
  CHECK(worst(S::Tame, S::Undetermined) == S::Undetermined);
  CHECK(worst(S::Undetermined, S::Wild) == S::Wild);
  CHECK(worst(S::NotEtale, S::Wild) == S::NotEtale);
  CHECK(to_string(S::NotEtale) == "NotEtale");
}

TEST_CASE("binomial products") {
  struct Case { int p; std::vector<std::pair<int, int>> factors; TamenessState expect; };
  const std::vector<Case> cases{
      {5, {{2, 1}, {3, 1}}, TamenessState::Tame},
      {5, {{2, 1}, {5, 3}}, TamenessState::Wild},
      {7, {{7, 2}}, TamenessState::Wild},
      {7, {{3, 2}, {4, 1}, {1, 3}}, TamenessState::Tame},
      {11, {{11, 1}, {2, 5}}, TamenessState::Wild}};
  for (const auto& c : cases) {
    auto g = F(c.p, "1");
    for (const auto& [e, a] : c.factors)
      g *= F(c.p, "t^" + std::to_string(e) + " - pi^" + std::to_string(a));
    CHECK(place_tameness<Fp>(g).state == c.expect);
  }
}

TEST_CASE("discriminant tameness") {
  const auto r = report_q("0", "t");
  const auto d = discriminant_tameness(r);
  CHECK(d.aggregate == TamenessState::Tame);
  REQUIRE(d.classes.size() == 2);
  CHECK(d.classes.back().place.is_infinity());
  CHECK_FALSE(d.witness);

  CHECK(discriminant_tameness(report_f(5, "0", "t^2 - pi")).aggregate == TamenessState::Tame);

  const auto wr = report_f(5, "0", "t^5 - pi");
  const auto wd = discriminant_tameness(wr);
  CHECK(wd.aggregate == TamenessState::Wild);
  REQUIRE(wd.witness);
  CHECK(*wd.witness->poly == F(5, "t^5 - pi"));
}

TEST_CASE("3-division polynomial tameness") {
  for (std::int64_t p : {5, 7, 11}) {
    const auto a = three_torsion_tameness<Fp>(K(p, 0), K(p, 1, 1));
    CHECK(a.psi3 == F(p, "3*t^4 + 12*pi*t"));
    CHECK(a.aggregate == TamenessState::Tame);
    REQUIRE(a.factors.size() == 1);  // 3x(x^3 + 4 pi) is squarefree
    CHECK(a.factors[0].verdict.root_at_origin);
    const auto b = three_torsion_tameness<Fp>(K(p, 1, 1), K(p, 0));
    CHECK(b.psi3 == F(p, "3*t^4 + 6*pi*t^2 - pi^2"));
    CHECK(b.aggregate == TamenessState::Tame);
    CHECK(three_torsion_tameness<Fp>(K(p, 1), K(p, 1)).aggregate == TamenessState::Tame);
    CHECK_THROWS_AS(three_torsion_tameness<Fp>(K(p, 0), K(p, 0)), SingularGenericFibre);
  }
}

TEST_CASE("finite field arithmetic") {
  const FiniteField F25(25);
  CHECK(F25.p() == 5);
  CHECK(F25.r() == 2);
  for (FiniteField::Elem a = 1; a < 25; ++a) CHECK(F25.mul(a, F25.inv(a)) == 1);
  std::int64_t squares = 0;
  for (FiniteField::Elem a = 1; a < 25; ++a) squares += F25.is_square(a);
  CHECK(squares == 12);
  CHECK_FALSE(F25.is_square(F25.nonsquare()));
  CHECK_THROWS_AS(FiniteField(6), FieldError);
  CHECK_THROWS_AS(FiniteField(9), FieldError);
  CHECK_THROWS_AS(FiniteField(256), FieldError);
  CHECK_THROWS_AS(FiniteField(211), FieldError);
}

TEST_CASE("3-torsion oracle") {
  // y^2 = x^3 + 1 over F7: psi3 = 3x(x^3 + 4) and 3 is not a cube mod 7.
  const FiniteField F7(7);
  const auto o7 = three_torsion_oracle(F7, 0, 1);
  CHECK(o7 == std::vector<FiniteField::Elem>{0});
  CHECK(o7 == psi3_roots(F7, 0, 1));
  // y^2 = x^3 + x over F5: 3x^4 + 6x^2 - 1 has no root in F5.
  const FiniteField F5(5);
  CHECK(three_torsion_oracle(F5, 1, 0).empty());
  CHECK(psi3_roots(F5, 1, 0).empty());
  CHECK_THROWS_AS(three_torsion_oracle(F5, 0, 0), SingularCurve);
  const FiniteField F49(49);
  int tested = 0;
  for (FiniteField::Elem a = 0; a < 8; ++a)
    for (FiniteField::Elem b = 1; b < 8; ++b) {
      const auto disc = F49.add(F49.mul(F49.from_int(4), F49.mul(a, F49.mul(a, a))),
                                F49.mul(F49.from_int(27), F49.mul(b, b)));
      if (disc == 0) {
        CHECK_THROWS_AS(three_torsion_oracle(F49, a, b), SingularCurve);
        continue;
      }
      CHECK(three_torsion_oracle(F49, a, b) == psi3_roots(F49, a, b));
      ++tested;
    }
  CHECK(tested > 30);
}

TEST_CASE("residue enumeration") {
  const Rational one(1);
  std::vector<std::string> q;
  for (int i = 0; i < 5; ++i) q.push_back(enumerate_residue<Rational>(one, i)->str());
  CHECK(q == std::vector<std::string>{"0", "1", "-1", "2", "-2"});
  CHECK(enumerate_residue<Fp>(Fp(1, 5), 4));
  CHECK_FALSE(enumerate_residue<Fp>(Fp(1, 5), 5));
  CHECK(enumerate_residue<FpUField>(th::fu_one(5), 100));
}

TEST_CASE("auxiliary divisor") {
  CHECK(points(construct_auxiliary_divisor(report_q("0", "t"), Rational(1), 1)) ==
        std::vector<std::string>{"t - 1"});
  CHECK(points(construct_auxiliary_divisor(report_q("1", "1"), Rational(1), 3)) ==
        std::vector<std::string>{"t", "t - 1", "t + 1"});
  CHECK(points(construct_auxiliary_divisor(report_q("0", "t - 1"), Rational(1), 3)) ==
        std::vector<std::string>{"t", "t + 1", "t - 2"});
  // F5 has five rational points; the rest comes from an irreducible quadratic.
  const auto a = construct_auxiliary_divisor(report_f(5, "1", "1"), Fp(1, 5), 7);
  CHECK(a.total_degree == 7);
  REQUIRE(a.points.size() == 6);
  CHECK(a.points.back().degree() == 2);
  CHECK(place_tameness<Fp>(a.points.back()).state == TamenessState::Tame);
  CHECK(default_auxiliary_degree(0) == 3);
  CHECK(default_auxiliary_degree(2) == 1);
  CHECK(default_auxiliary_degree(7) == 1);
}

TEST_CASE("main criterion") {
  const auto r = report_q("0", "t");
  const auto d = discriminant_tameness(r);
  const auto aux = construct_auxiliary_divisor(r, Rational(1), 1);
  const auto v = main_criterion(r, d, aux, true);
  CHECK(v.outcome == Outcome::LogGoodUpToModification);
  CHECK(v.criterion_value == 3);
  CHECK(v.conditional);
  CHECK(main_criterion(r, d, aux, false).outcome == Outcome::Inconclusive);

  const auto s = report_q("1", "1");
  const auto sd = discriminant_tameness(s);
  CHECK(main_criterion(s, sd, construct_auxiliary_divisor(s, Rational(1), 3), true).outcome ==
        Outcome::LogGoodReduction);
  CHECK(main_criterion(s, sd, construct_auxiliary_divisor(s, Rational(1), 2), true).outcome ==
        Outcome::Inconclusive);

  const auto w = report_f(5, "0", "t^5 - pi");
  const auto wv = main_criterion(w, discriminant_tameness(w),
                                 construct_auxiliary_divisor(w, Fp(1, 5), 1), true);
  CHECK(wv.outcome == Outcome::Obstructed);

  AuxiliaryDivisor<Rational> bad{{Q("t")}, 1};
  CHECK_THROWS_AS(main_criterion(r, d, bad, true), OverlappingSupports);
}

TEST_CASE("verdict monotone in the auxiliary divisor") {
  const auto r = report_q("0", "t^2 - 1");
  const auto d = discriminant_tameness(r);
  Outcome prev = Outcome::Inconclusive;
  for (std::int64_t n = 1; n <= 4; ++n) {
    const auto v = main_criterion(r, d, construct_auxiliary_divisor(r, Rational(1), n), true);
    if (prev != Outcome::Inconclusive) CHECK(v.outcome == prev);
    prev = v.outcome;
  }
  CHECK(prev == Outcome::LogGoodUpToModification);
}
