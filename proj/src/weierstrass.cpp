#include "logred/weierstrass.hpp"

#include <algorithm>

namespace logred {

std::string to_string(ReductionKind kind) {
  switch (kind) {
    case ReductionKind::Good: return "good";
    case ReductionKind::Multiplicative: return "multiplicative";
    case ReductionKind::Additive: return "additive";
  }
  return {};
}

KodairaType::KodairaType(Family family, int n) : family_(family), n_(n) {
  const bool indexed = family == Family::In || family == Family::InStar;
  if (indexed && n < 1) throw TableInconsistency("I_n and I_n* need n >= 1");
  if (!indexed) n_ = 0;
}

KodairaType KodairaType::parse(const std::string& symbol) {
  if (symbol == "II") return KodairaType(Family::II);
  if (symbol == "III") return KodairaType(Family::III);
  if (symbol == "IV") return KodairaType(Family::IV);
  if (symbol == "IV*") return KodairaType(Family::IVStar);
  if (symbol == "III*") return KodairaType(Family::IIIStar);
  if (symbol == "II*") return KodairaType(Family::IIStar);
  if (symbol.size() >= 2 && symbol[0] == 'I') {
    const bool star = symbol.back() == '*';
    const std::string digits = symbol.substr(1, symbol.size() - 1 - (star ? 1 : 0));
    if (!digits.empty() && std::all_of(digits.begin(), digits.end(), ::isdigit)) {
      const int n = std::stoi(digits);
      return star ? IStar(n) : I(n);
    }
  }
  throw TableInconsistency("unknown Kodaira symbol '" + symbol + "'");
}

ReductionKind KodairaType::reduction_kind() const {
  switch (family_) {
    case Family::I0: return ReductionKind::Good;
    case Family::In: return ReductionKind::Multiplicative;
    default: return ReductionKind::Additive;
  }
}

std::string KodairaType::symbol() const {
  switch (family_) {
    case Family::I0: return "I0";
    case Family::In: return "I" + std::to_string(n_);
    case Family::II: return "II";
    case Family::III: return "III";
    case Family::IV: return "IV";
    case Family::I0Star: return "I0*";
    case Family::InStar: return "I" + std::to_string(n_) + "*";
    case Family::IVStar: return "IV*";
    case Family::IIIStar: return "III*";
    case Family::IIStar: return "II*";
  }
  return {};
}

KodairaType kodaira_type(Valuation v_c4, Valuation v_c6, Valuation v_delta) {
  using F = KodairaType::Family;
  auto bad = [&](const char* why) -> TableInconsistency {
    return TableInconsistency(std::string(why) + " (v_c4=" + v_c4.str() + ", v_c6=" +
                              v_c6.str() + ", v_delta=" + v_delta.str() + ")");
  };
  if (v_delta.is_infinite()) throw bad("discriminant vanishes");
  const std::int64_t nu = v_delta.value();
  if (nu < 0) throw bad("negative discriminant valuation");
  if (nu == 0) return KodairaType(F::I0);
  if (v_c4 == 0) {
    // c4^3 - c6^2 = 1728 disc forces v(c6) = 0 as well.
    if (!(v_c6 == 0)) throw bad("multiplicative signature with v_c6 > 0");
    return KodairaType(F::In, static_cast<int>(nu));
  }
  switch (nu) {
    case 2: return KodairaType(F::II);
    case 3:
      if (v_c4 == 1) return KodairaType(F::III);
      break;
    case 4:
      if (v_c4 >= 2) return KodairaType(F::IV);
      break;
    case 6:
      if (v_c4 >= 2) return KodairaType(F::I0Star);
      break;
    default:
      if (nu >= 7 && v_c4 == 2) return KodairaType(F::InStar, static_cast<int>(nu - 6));
      if (nu == 8 && v_c4 >= 3) return KodairaType(F::IVStar);
      if (nu == 9 && v_c4 == 3) return KodairaType(F::IIIStar);
      if (nu == 10 && v_c4 >= 4) return KodairaType(F::IIStar);
      break;
  }
  throw bad("signature impossible for a minimal model in residue characteristic >= 5");
}

std::pair<int, int> components_and_epsilon(const KodairaType& kt) {
  using F = KodairaType::Family;
  const int eps = kt.reduction_kind() == ReductionKind::Good             ? -1
                  : kt.reduction_kind() == ReductionKind::Multiplicative ? 0
                                                                         : 1;
  switch (kt.family()) {
    case F::I0: return {1, eps};
    case F::In: return {kt.n(), eps};
    case F::II: return {1, eps};
    case F::III: return {2, eps};
    case F::IV: return {3, eps};
    case F::I0Star: return {5, eps};
    case F::InStar: return {5 + kt.n(), eps};
    case F::IVStar: return {7, eps};
    case F::IIIStar: return {8, eps};
    case F::IIStar: return {9, eps};
  }
  return {1, eps};
}

template <class k>
WeierstrassQuantities<k> derive_quantities(const PolyK<k>& a1, const PolyK<k>& a2,
                                           const PolyK<k>& a3, const PolyK<k>& a4,
                                           const PolyK<k>& a6) {
  auto n = [&](long v) { return a1.from_int(v); };
  WeierstrassQuantities<k> q{a1, a1, a1, a1, a1, a1, a1};
  q.b2 = a1 * a1 + n(4) * a2;
  q.b4 = n(2) * a4 + a1 * a3;
  q.b6 = a3 * a3 + n(4) * a6;
  q.b8 = a1 * a1 * a6 + n(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  q.delta = -(q.b2 * q.b2 * q.b8) - n(8) * q.b4 * q.b4 * q.b4 -
            n(27) * q.b6 * q.b6 + n(9) * q.b2 * q.b4 * q.b6;
  q.c4 = q.b2 * q.b2 - n(24) * q.b4;
  q.c6 = -(q.b2 * q.b2 * q.b2) + n(36) * q.b2 * q.b4 - n(216) * q.b6;

  if (!(n(4) * q.b8 == q.b2 * q.b6 - q.b4 * q.b4))
    throw InvariantViolation("syzygy 4 b8 = b2 b6 - b4^2 fails");
  if (!(q.c4 * q.c4 * q.c4 - q.c6 * q.c6 == n(1728) * q.delta))
    throw InvariantViolation("syzygy c4^3 - c6^2 = 1728 disc fails");
  if (q.delta.is_zero())
    throw SingularGenericFibre("discriminant vanishes identically; the generic fibre is singular");
  return q;
}

template <class k>
WeierstrassEquation<k>::WeierstrassEquation(PolyK<k> a1, PolyK<k> a2, PolyK<k> a3,
                                            PolyK<k> a4, PolyK<k> a6)
    : a_{std::move(a1), std::move(a2), std::move(a3), std::move(a4), std::move(a6)},
      q_(derive_quantities<k>(a_[0], a_[1], a_[2], a_[3], a_[4])) {}

template <class k>
WeierstrassEquation<k> WeierstrassEquation<k>::short_form(const PolyK<k>& A,
                                                          const PolyK<k>& B) {
  return WeierstrassEquation(A.zero(), A.zero(), A.zero(), A, B);
}

template <class k>
ShortForm<k> to_short_form(const WeierstrassEquation<k>& eq) {
  const auto& q = eq.quantities();
  const std::int64_t p = q.c4.characteristic();
  if (p == 2 || p == 3)
    throw BadCharacteristic("short form needs characteristic other than 2 and 3");
  const KField<k> one = q.c4.coeff_zero().one();
  PolyK<k> A = q.c4 * (-one / one.from_int(48));
  PolyK<k> B = q.c6 * (-one / one.from_int(864));
  ShortForm<k> sf{A, B, one};
  // The conversion is exact: c4 and c6 are recovered and the discriminant kept.
  if (!(short_discriminant<k>(A, B) == q.delta))
    throw InvariantViolation("short form changed the discriminant");
  return sf;
}

template <class k>
PolyK<k> short_discriminant(const PolyK<k>& A, const PolyK<k>& B) {
  return A.from_int(-16) * (A.from_int(4) * A * A * A + A.from_int(27) * B * B);
}

template <class k>
MinimalizeResult<k> minimalize_at(const PolyK<k>& A, const PolyK<k>& B, const PolyK<k>& g) {
  const Valuation oa = ord_at(A, g);
  const Valuation ob = ord_at(B, g);
  if (oa.is_infinite() && ob.is_infinite())
    throw SingularGenericFibre("A = B = 0");
  std::int64_t e = std::min(oa.is_finite() ? oa.value() / 4 : INT64_MAX,
                            ob.is_finite() ? ob.value() / 6 : INT64_MAX);
  if (e == 0) return {0, A, B};
  const PolyK<k> g4 = g.pow(static_cast<unsigned>(4 * e));
  const PolyK<k> g6 = g.pow(static_cast<unsigned>(6 * e));
  return {e, A / g4, B / g6};
}

namespace {

// Units and zero divisors of K[t]/(g), g squarefree.
enum class ResidueClass { Zero, Unit, ZeroDivisor };

template <class k>
ResidueClass classify_residue(const PolyK<k>& x, const PolyK<k>& g) {
  if (x.is_zero()) return ResidueClass::Zero;
  return gcd(x, g).is_one() ? ResidueClass::Unit : ResidueClass::ZeroDivisor;
}

template <class k>
PolyK<k> residue_inverse(const PolyK<k>& x, const PolyK<k>& g) {
  auto eg = extended_gcd(x, g);
  if (!eg.g.is_one())
    throw ZeroDivisorEncountered("zero divisor met in the residue ring of the class");
  return eg.s % g;
}

}  // namespace

template <class k>
OracleResult<k> reduction_kind_oracle(const PolyK<k>& A, const PolyK<k>& B,
                                      const PolyK<k>& g, bool irreducible_declared,
                                      bool want_root) {
  if (g.is_constant() || !g.is_monic()) throw InvalidPlace("place must be monic and nonconstant");
  OracleResult<k> res{ReductionKind::Good, std::nullopt, {}};
  if (g.degree() > 1 && !irreducible_declared)
    res.warnings.push_back(
        "ResidueRingNotField: place not known to be irreducible; computed over the residue ring");
  const auto zero_divisor = [] {
    return ZeroDivisorEncountered("zero divisor met in the residue ring of the class");
  };
  // Euclid on f = x^3 + ax + b and f' = 3x^2 + a over K[t]/(g), fraction
  // free: 3f - x f' = 2a x + 3b, then (2a)^2 f' = 3(3b)^2 + a(2a)^2 mod
  // (2a x + 3b), i.e. the remainder 4a^3 + 27b^2. Every leading coefficient
  // used must be a unit of the ring.
  const PolyK<k> a = A % g, b = B % g;
  const PolyK<k> r1_lead = (a * A.from_int(2)) % g;
  const PolyK<k> r1_const = (b * A.from_int(3)) % g;
  switch (classify_residue<k>(r1_lead, g)) {
    case ResidueClass::ZeroDivisor: throw zero_divisor();
    case ResidueClass::Zero:
      switch (classify_residue<k>(r1_const, g)) {
        case ResidueClass::ZeroDivisor: throw zero_divisor();
        case ResidueClass::Unit: res.kind = ReductionKind::Good; return res;
        case ResidueClass::Zero: break;
      }
      // gcd(f, f') = f' / 3 = x^2: a triple root at x = 0.
      res.kind = ReductionKind::Additive;
      res.multiple_root = A.zero();
      return res;
    case ResidueClass::Unit: break;
  }
  const PolyK<k> r2 = (A.from_int(4) * a * a * a + A.from_int(27) * b * b) % g;
  switch (classify_residue<k>(r2, g)) {
    case ResidueClass::ZeroDivisor: throw zero_divisor();
    case ResidueClass::Unit: res.kind = ReductionKind::Good; return res;
    case ResidueClass::Zero: break;
  }
  // gcd(f, f') = 2a x + 3b: a double root at x = -3b / (2a).
  res.kind = ReductionKind::Multiplicative;
  if (want_root) res.multiple_root = (-r1_const * residue_inverse<k>(r1_lead, g)) % g;
  return res;
}

template <class k>
void LocalFibreAnalysis<k>::check_invariants() const {
  if (m != nu - epsilon) throw InvariantViolation("m = nu - epsilon fails");
  if ((nu == 0) != (kodaira.family() == KodairaType::Family::I0))
    throw InvariantViolation("nu = 0 must hold exactly for good reduction");
  if (!(v_c4 < 4 || nu < 12)) throw InvariantViolation("equation is not minimal at the place");
}

template <class k>
LocalFibreAnalysis<k> analyze_place(const PolyK<k>& A, const PolyK<k>& B, const PolyK<k>& g,
                                    bool irreducible_declared, bool at_infinity) {
  const MinimalizeResult<k> mr = minimalize_at(A, B, g);
  LocalFibreAnalysis<k> la;
  if (!at_infinity) la.place = g;
  la.residue_degree = g.degree();
  la.u_exponent = mr.u_exponent;
  la.irreducible = irreducible_declared || g.degree() == 1;
  la.inseparable = g.characteristic() != 0 && g.derivative().is_zero();

  const PolyK<k> c4 = mr.A * A.from_int(-48);
  const PolyK<k> c6 = mr.B * A.from_int(-864);
  const PolyK<k> delta = short_discriminant<k>(mr.A, mr.B);
  la.v_c4 = ord_at(c4, g);
  la.v_c6 = ord_at(c6, g);
  const Valuation vd = ord_at(delta, g);
  la.kodaira = kodaira_type(la.v_c4, la.v_c6, vd);
  la.nu = vd.value();
  std::tie(la.m, la.epsilon) = components_and_epsilon(la.kodaira);

  try {
    OracleResult<k> oracle = reduction_kind_oracle(mr.A, mr.B, g, la.irreducible, la.m >= 2);
    la.oracle_kind = oracle.kind;
    la.singular_x = oracle.multiple_root;
    la.warnings = std::move(oracle.warnings);
    if (oracle.kind != la.kodaira.reduction_kind())
      la.warnings.push_back("oracle reduction kind " + to_string(oracle.kind) +
                            " disagrees with the table (" + to_string(la.kodaira.reduction_kind()) +
                            ")");
  } catch (const ZeroDivisorEncountered& e) {
    la.warnings.push_back(std::string("ZeroDivisorEncountered: ") + e.what() +
                          "; oracle skipped for this class");
  }
  la.check_invariants();
  return la;
}

#define LOGRED_INSTANTIATE(K)                                                                  \
  template WeierstrassQuantities<K> derive_quantities<K>(const PolyK<K>&, const PolyK<K>&,     \
                                                         const PolyK<K>&, const PolyK<K>&,     \
                                                         const PolyK<K>&);                     \
  template class WeierstrassEquation<K>;                                                       \
  template ShortForm<K> to_short_form<K>(const WeierstrassEquation<K>&);                       \
  template PolyK<K> short_discriminant<K>(const PolyK<K>&, const PolyK<K>&);                   \
  template MinimalizeResult<K> minimalize_at<K>(const PolyK<K>&, const PolyK<K>&,              \
                                                const PolyK<K>&);                              \
  template OracleResult<K> reduction_kind_oracle<K>(const PolyK<K>&, const PolyK<K>&,          \
                                                    const PolyK<K>&, bool, bool);                \
  template struct LocalFibreAnalysis<K>;                                                       \
  template LocalFibreAnalysis<K> analyze_place<K>(const PolyK<K>&, const PolyK<K>&,            \
                                                  const PolyK<K>&, bool, bool);

LOGRED_INSTANTIATE(Rational)
LOGRED_INSTANTIATE(Fp)
LOGRED_INSTANTIATE(FpUField)

#undef LOGRED_INSTANTIATE

}  // namespace logred
