#include "logred/surface.hpp"

#include <algorithm>

#include "logred/exact/expr.hpp"
#include "logred/exact/squarefree.hpp"

namespace logred {

namespace {

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

}  // namespace

template <class k>
InfinityModel<k> infinity_model(const PolyK<k>& A, const PolyK<k>& B) {
  std::int64_t n = 0;
  if (!A.is_zero()) n = std::max(n, ceil_div(A.degree(), 4));
  if (!B.is_zero()) n = std::max(n, ceil_div(B.degree(), 6));
  PolyK<k> As = A.is_zero() ? A : A.reversed(static_cast<int>(4 * n));
  PolyK<k> Bs = B.is_zero() ? B : B.reversed(static_cast<int>(6 * n));
  const PolyK<k> s = PolyK<k>::x(A.coeff_zero().one());
  MinimalizeResult<k> mr = minimalize_at(As, Bs, s);
  return {n - mr.u_exponent, std::move(mr.A), std::move(mr.B), mr.u_exponent};
}

template <class k>
EllipticSurface<k>::EllipticSurface(FieldDescriptor field, WeierstrassEquation<k> equation)
    : field_(field),
      equation_(std::move(equation)),
      input_A_(equation_.a4()),
      input_B_(equation_.a6()),
      A_(equation_.a4()),
      B_(equation_.a6()),
      infinity_{0, A_, B_, 0} {
  ShortForm<k> sf = to_short_form(equation_);
  input_A_ = sf.A;
  input_B_ = sf.B;
  A_ = sf.A;
  B_ = sf.B;

  // Every non-minimal place divides the discriminant. Split its squarefree
  // parts until ord A and ord B are constant on each piece.
  const auto sqf = squarefree_decomposition_general(short_discriminant<k>(A_, B_));
  for (const auto& fac : sqf.factors) {
    for (const auto& [pa, oa] : split_by_order(fac.factor, A_)) {
      for (const auto& [piece, ob] : split_by_order(pa, B_)) {
        const std::int64_t e = std::min(oa.is_finite() ? oa.value() / 4 : INT64_MAX,
                                        ob.is_finite() ? ob.value() / 6 : INT64_MAX);
        if (e <= 0) continue;
        steps_.push_back({piece, e});
      }
    }
  }
  for (const auto& st : steps_) {
    A_ = A_ / st.place.pow(static_cast<unsigned>(4 * st.exponent));
    B_ = B_ / st.place.pow(static_cast<unsigned>(6 * st.exponent));
  }
  std::sort(steps_.begin(), steps_.end(),
            [](const auto& a, const auto& b) { return a.place.cmp(b.place) < 0; });
  infinity_ = infinity_model<k>(A_, B_);
}

template <class k>
std::vector<SignatureClass<k>> decompose_discriminant(const EllipticSurface<k>& surface,
                                                      const std::vector<PolyK<k>>& declared) {
  const PolyK<k>& A = surface.A();
  const PolyK<k>& B = surface.B();
  const PolyK<k> c4 = A * A.from_int(-48);
  const PolyK<k> c6 = B * A.from_int(-864);
  const PolyK<k> delta = surface.minimal_discriminant();

  struct Piece {
    PolyK<k> poly;
    std::int64_t nu;
    Valuation v4, v6;
    bool insep;
  };
  std::vector<Piece> pieces;
  const auto sqf = squarefree_decomposition_general(delta);
  for (const auto& fac : sqf.factors)
    for (const auto& [p4, v4] : split_by_order(fac.factor, c4))
      for (const auto& [p6, v6] : split_by_order(p4, c6))
        pieces.push_back({p6, fac.multiplicity, v4, v6, fac.inseparable});

  // Declared factors refine the pieces they divide.
  std::vector<std::vector<PolyK<k>>> refinements(pieces.size());
  for (const auto& raw : declared) {
    if (raw.degree() < 1) throw InvalidPlace("declared factor must be nonconstant");
    const PolyK<k> f = raw.monic();
    bool placed = false;
    for (std::size_t i = 0; i < pieces.size() && !placed; ++i) {
      if (f.divides(pieces[i].poly)) {
        refinements[i].push_back(f);
        placed = true;
      }
    }
    if (!placed)
      throw InvalidPlace("declared factor " + to_string<k>(f) +
                         " does not divide any discriminant class");
  }

  std::vector<SignatureClass<k>> classes;
  auto make = [&](const Piece& pc, const PolyK<k>& g, bool declared_irreducible) {
    SignatureClass<k> sc{g, g.degree(), pc.nu, pc.v4, pc.v6, {}, {}, pc.insep, declared_irreducible};
    sc.analysis = analyze_place<k>(A, B, g, declared_irreducible);
    sc.kodaira = sc.analysis.kodaira;
    if (sc.analysis.nu != pc.nu || !(sc.analysis.v_c4 == pc.v4) || !(sc.analysis.v_c6 == pc.v6) ||
        sc.analysis.u_exponent != 0)
      throw InvariantViolation("signature of class " + to_string<k>(g) + " is not constant");
    classes.push_back(std::move(sc));
  };
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (refinements[i].empty()) {
      make(pieces[i], pieces[i].poly, false);
      continue;
    }
    PolyK<k> product = pieces[i].poly.one();
    for (const auto& f : refinements[i]) product *= f;
    if (!(product == pieces[i].poly))
      throw InvalidPlace("declared factors of class " + to_string<k>(pieces[i].poly) +
                         " do not multiply back to it");
    for (const auto& f : refinements[i]) make(pieces[i], f, true);
  }
  std::sort(classes.begin(), classes.end(),
            [](const auto& a, const auto& b) { return a.poly.cmp(b.poly) < 0; });
  return classes;
}

template <class k>
std::vector<Place<k>> big_modification_plan(const GlobalReport<k>& report) {
  std::vector<Place<k>> plan;
  for (const auto& c : report.classes)
    if (c.analysis.m == 1 && c.nu > 0) plan.push_back({c.poly});
  const auto& inf = report.infinity_analysis;
  if (inf.m == 1 && inf.nu > 0) plan.push_back({std::nullopt});
  return plan;
}

template <class k>
std::vector<SingularPointRecord<k>> weierstrass_singular_points(const GlobalReport<k>& report) {
  std::vector<SingularPointRecord<k>> out;
  auto record = [&](const LocalFibreAnalysis<k>& la, Place<k> place) {
    if (la.m < 2) return;
    SingularPointRecord<k> r{std::move(place), la.singular_x, true, {}};
    if (!la.singular_x)
      r.note = "ZeroDivisorEncountered: singular point not located over this class";
    else if (place.poly && place.poly->degree() > 1 && !la.irreducible)
      r.note = "one singular point over each irreducible factor of the class";
    out.push_back(std::move(r));
  };
  for (const auto& c : report.classes) record(c.analysis, {c.poly});
  record(report.infinity_analysis, {std::nullopt});
  return out;
}

template <class k>
GlobalReport<k> analyze_surface(const EllipticSurface<k>& surface,
                                const std::vector<PolyK<k>>& declared_factors) {
  GlobalReport<k> rep;
  rep.classes = decompose_discriminant(surface, declared_factors);
  const auto& inf = surface.at_infinity();
  const PolyK<k> s = PolyK<k>::x(surface.A().coeff_zero().one());
  rep.infinity_analysis = analyze_place<k>(inf.A, inf.B, s, true, true);

  PolyK<k> product = surface.A().one();
  for (const auto& c : rep.classes) {
    rep.total_nu += c.nu * c.degree_over_K;
    rep.deg_D += c.degree_over_K;
    product *= c.poly.pow(static_cast<unsigned>(c.nu));
  }
  rep.total_nu += rep.infinity_analysis.nu;
  if (rep.infinity_analysis.nu > 0) rep.deg_D += 1;
  rep.chi_check = rep.total_nu % 12;

  if (!(product == surface.minimal_discriminant().monic()))
    throw InvariantViolation("product of class^nu does not reconstruct the minimal discriminant");
  if (rep.total_nu != 12 * surface.global_twist_degree())
    throw InvariantViolation("total nu differs from 12 times the global twist degree");

  rep.big_plan = big_modification_plan(rep);
  rep.singular_points = weierstrass_singular_points(rep);
  return rep;
}

#define LOGRED_INSTANTIATE(K)                                                                 \
  template InfinityModel<K> infinity_model<K>(const PolyK<K>&, const PolyK<K>&);              \
  template class EllipticSurface<K>;                                                          \
  template std::vector<SignatureClass<K>> decompose_discriminant<K>(                          \
      const EllipticSurface<K>&, const std::vector<PolyK<K>>&);                               \
  template std::vector<Place<K>> big_modification_plan<K>(const GlobalReport<K>&);            \
  template std::vector<SingularPointRecord<K>> weierstrass_singular_points<K>(                \
      const GlobalReport<K>&);                                                                \
  template GlobalReport<K> analyze_surface<K>(const EllipticSurface<K>&,                      \
                                              const std::vector<PolyK<K>>&);

LOGRED_INSTANTIATE(Rational)
LOGRED_INSTANTIATE(Fp)
LOGRED_INSTANTIATE(FpUField)

#undef LOGRED_INSTANTIATE

}  // namespace logred
