#include "logred/tame.hpp"

#include <algorithm>

#include "logred/exact/expr.hpp"
#include "logred/exact/squarefree.hpp"

namespace logred {

std::string to_string(TamenessState state) {
  switch (state) {
    case TamenessState::Tame: return "Tame";
    case TamenessState::Undetermined: return "Undetermined";
    case TamenessState::Wild: return "Wild";
    case TamenessState::NotEtale: return "NotEtale";
  }
  return {};
}

TamenessState worst(TamenessState a, TamenessState b) {
  return static_cast<int>(a) >= static_cast<int>(b) ? a : b;
}

std::string to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::LogGoodReduction: return "LogGoodReduction";
    case Outcome::LogGoodUpToModification: return "LogGoodUpToModification";
    case Outcome::Obstructed: return "Obstructed";
    case Outcome::Inconclusive: return "Inconclusive";
  }
  return {};
}

std::int64_t default_auxiliary_degree(std::int64_t deg_D) { return std::max<std::int64_t>(1, 3 - deg_D); }

template <class k>
TamenessVerdict place_tameness(const PolyK<k>& g_in) {
  if (g_in.degree() < 1) throw InvalidPlace("tameness needs a nonconstant polynomial");
  const PolyK<k> g = g_in.monic();
  const std::int64_t p = g.coeff_zero().characteristic();
  TamenessVerdict v;

  PolyK<k> h = g;
  const PolyK<k> t = PolyK<k>::x(g.coeff_zero().one());
  while (h[0].is_zero()) {
    h = h / t;
    v.root_at_origin = true;
  }
  if (h.degree() >= 1) {
    const NewtonPolygon np = newton_polygon<k>(h);
    for (const auto& seg : np.segments)
      v.segments.push_back({seg.slope, seg.denominator(), seg.length, residual_separability<k>(h, seg)});
  }

  if (p > 0) {
    for (const auto& s : v.segments) {
      if (s.denominator % p == 0) {
        v.state = TamenessState::Wild;
        v.witness = "slope " + s.slope.str() + " has denominator divisible by " + std::to_string(p);
        return v;
      }
    }
  }

  const PolyK<k> dg = g.derivative();
  if (dg.is_zero()) {
    v.state = TamenessState::NotEtale;
    v.witness = "derivative vanishes: " + to_string<k>(g) + " is a polynomial in t^" + std::to_string(p);
    return v;
  }
  const PolyK<k> c = gcd(g, dg);
  if (!c.is_one()) {
    v.state = TamenessState::NotEtale;
    v.witness = "gcd(g, g') = " + to_string<k>(c);
    return v;
  }
  if (p == 0) return v;
  for (const auto& s : v.segments) {
    if (!s.residual_separable) {
      v.state = TamenessState::Undetermined;
      v.witness = "residual polynomial of slope " + s.slope.str() + " is inseparable";
      return v;
    }
  }
  return v;
}

template <class k>
DiscriminantTameness<k> discriminant_tameness(const GlobalReport<k>& report) {
  DiscriminantTameness<k> out;
  for (const auto& c : report.classes) {
    ClassTameness<k> ct{{c.poly}, place_tameness<k>(c.poly)};
    if (static_cast<int>(ct.verdict.state) > static_cast<int>(out.aggregate)) {
      out.aggregate = ct.verdict.state;
      out.witness = ct.place;
    }
    out.classes.push_back(std::move(ct));
  }
  if (report.infinity_analysis.nu > 0) {
    TamenessVerdict tv;
    tv.witness = "rational point";
    out.classes.push_back({{std::nullopt}, tv});
  }
  return out;
}

template <class k>
TorsionTameness<k> three_torsion_tameness(const KField<k>& A, const KField<k>& B) {
  const KField<k> four = A.from_int(4), tw7 = A.from_int(27);
  if ((four * A * A * A + tw7 * B * B).is_zero())
    throw SingularGenericFibre("4A^3 + 27B^2 vanishes");
  const KField<k> z = A.zero();
  TorsionTameness<k> out{
      PolyK<k>({-(A * A), A.from_int(12) * B, A.from_int(6) * A, z, A.from_int(3)}, z), {}, {}, {}};
  const auto sqf = squarefree_decomposition_general(out.psi3);
  for (const auto& f : sqf.factors) {
    TorsionFactor<k> tf{f.factor, f.multiplicity, place_tameness<k>(f.factor)};
    if (f.multiplicity > 1 && tf.verdict.state != TamenessState::Wild) {
      tf.verdict.state = TamenessState::NotEtale;
      tf.verdict.witness = "repeated factor of the division polynomial";
    }
    out.aggregate = worst(out.aggregate, tf.verdict.state);
    out.factors.push_back(std::move(tf));
  }
  out.note = "x-level verdict; the y-coordinates generate extensions of degree <= 2, tame for p > 3";
  return out;
}

namespace {

// 0, 1, -1, 2, -2, ... as integers.
std::int64_t zigzag(std::int64_t i) { return i % 2 == 1 ? (i + 1) / 2 : -(i / 2); }

}  // namespace

template <>
std::optional<Rational> enumerate_residue<Rational>(const Rational&, std::int64_t index) {
  return Rational(zigzag(index));
}

template <>
std::optional<Fp> enumerate_residue<Fp>(const Fp& one, std::int64_t index) {
  if (index >= one.characteristic()) return std::nullopt;
  return one.from_int(zigzag(index));
}

template <>
std::optional<FpUField> enumerate_residue<FpUField>(const FpUField& one, std::int64_t index) {
  const Fp fone = one.coeff_zero().one();
  const std::int64_t p = fone.characteristic();
  std::vector<Fp> coeffs;
  for (std::int64_t n = index; n > 0; n /= p) coeffs.push_back(fone.from_int(zigzag(n % p)));
  return FpUField(Poly<Fp>(std::move(coeffs), fone.zero()));
}

namespace {

template <class k>
bool avoids(const GlobalReport<k>& report, const PolyK<k>& f) {
  for (const auto& c : report.classes)
    if (!gcd(c.poly, f).is_one()) return false;
  return true;
}

// Monic irreducible polynomials of degree d over F_p, lexicographic.
std::vector<Poly<Fp>> irreducibles(const Fp& one, int d) {
  const std::int64_t p = one.characteristic();
  std::int64_t count = 1;
  for (int i = 0; i < d; ++i) count *= p;
  std::vector<Poly<Fp>> out;
  for (std::int64_t n = 0; n < count; ++n) {
    std::vector<Fp> c;
    std::int64_t m = n;
    for (int i = 0; i < d; ++i, m /= p) c.push_back(one.from_int(m % p));
    c.push_back(one);
    Poly<Fp> f(std::move(c), one.zero());
    const Poly<Fp> x = Poly<Fp>::x(one);
    // Irreducible iff gcd(f, x^(p^i) - x) = 1 for i <= d/2.
    bool ok = true;
    Poly<Fp> xp = x;
    for (int i = 1; 2 * i <= d && ok; ++i) {
      Poly<Fp> r = Poly<Fp>::constant(one);
      for (std::int64_t j = 0; j < p; ++j) r = (r * xp) % f;
      xp = r;
      ok = gcd(f, xp - x).is_one();
    }
    if (ok) out.push_back(std::move(f));
  }
  return out;
}

}  // namespace

template <class k>
AuxiliaryDivisor<k> construct_auxiliary_divisor(const GlobalReport<k>& report, const k& one,
                                                std::int64_t needed_degree) {
  if (needed_degree < 1) throw DegenerateInput("auxiliary divisor degree must be positive");
  AuxiliaryDivisor<k> aux;
  const KField<k> Kone = k_to_K(one);
  const PolyK<k> t = PolyK<k>::x(Kone);
  for (std::int64_t i = 0; aux.total_degree < needed_degree; ++i) {
    const auto c = enumerate_residue<k>(one, i);
    if (!c) break;
    const PolyK<k> f = t - PolyK<k>::constant(k_to_K(*c));
    if (!avoids(report, f)) continue;
    aux.points.push_back(f);
    aux.total_degree += 1;
  }
  if constexpr (std::is_same_v<k, Fp>) {
    for (int d = 2; aux.total_degree < needed_degree; ++d) {
      for (const auto& f0 : irreducibles(one, d)) {
        if (aux.total_degree >= needed_degree) break;
        std::vector<KField<k>> lifted;
        for (int i = 0; i <= f0.degree(); ++i) lifted.push_back(k_to_K(f0[i]));
        const PolyK<k> f(std::move(lifted), Kone.zero());
        if (!avoids(report, f)) continue;
        aux.points.push_back(f);
        aux.total_degree += d;
      }
    }
  }
  return aux;
}

template <class k>
Verdict main_criterion(const GlobalReport<k>& report, const DiscriminantTameness<k>& tameness,
                       const AuxiliaryDivisor<k>& aux, bool condition_asserted) {
  for (const auto& f : aux.points)
    if (!avoids(report, f))
      throw OverlappingSupports("auxiliary point " + to_string<k>(f) + " meets the discriminant");
  Verdict v;
  v.deg_D = report.deg_D;
  v.deg_A = aux.total_degree;
  v.criterion_value = v.deg_D + v.deg_A;
  auto place_name = [](const std::optional<Place<k>>& pl) {
    if (!pl || pl->is_infinity()) return std::string("infinity");
    return to_string<k>(*pl->poly);
  };
  switch (tameness.aggregate) {
    case TamenessState::Wild:
    case TamenessState::NotEtale:
      v.outcome = Outcome::Obstructed;
      v.reason = to_string(tameness.aggregate) + " at " + place_name(tameness.witness);
      return v;
    case TamenessState::Undetermined:
      v.outcome = Outcome::Inconclusive;
      v.reason = "tameness undetermined at " + place_name(tameness.witness);
      return v;
    case TamenessState::Tame: break;
  }
  if (!condition_asserted) {
    v.outcome = Outcome::Inconclusive;
    v.reason = "discriminant is tame; cohomological tameness not asserted";
    return v;
  }
  if (v.deg_D == 0 && v.deg_A >= 3) {
    v.outcome = Outcome::LogGoodReduction;
    v.conditional = true;
    v.reason = "smooth fibration, deg A = " + std::to_string(v.deg_A) + " >= 3";
    return v;
  }
  if (v.criterion_value > 2) {
    v.outcome = Outcome::LogGoodUpToModification;
    v.conditional = true;
    v.reason = "deg D + deg A = " + std::to_string(v.criterion_value) + " > 2";
    return v;
  }
  v.outcome = Outcome::Inconclusive;
  v.reason = "deg D + deg A = " + std::to_string(v.criterion_value) + " <= 2";
  return v;
}

#define LOGRED_INSTANTIATE(K)                                                                \
  template TamenessVerdict place_tameness<K>(const PolyK<K>&);                               \
  template DiscriminantTameness<K> discriminant_tameness<K>(const GlobalReport<K>&);         \
  template TorsionTameness<K> three_torsion_tameness<K>(const KField<K>&, const KField<K>&); \
  template AuxiliaryDivisor<K> construct_auxiliary_divisor<K>(const GlobalReport<K>&,        \
                                                              const K&, std::int64_t);       \
  template Verdict main_criterion<K>(const GlobalReport<K>&, const DiscriminantTameness<K>&, \
                                     const AuxiliaryDivisor<K>&, bool);

LOGRED_INSTANTIATE(Rational)
LOGRED_INSTANTIATE(Fp)
LOGRED_INSTANTIATE(FpUField)

#undef LOGRED_INSTANTIATE

}  // namespace logred
