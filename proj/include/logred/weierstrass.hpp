#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "logred/exact/squarefree.hpp"
#include "logred/exact/tower.hpp"
#include "logred/exact/valuation.hpp"

namespace logred {

enum class ReductionKind { Good, Multiplicative, Additive };

std::string to_string(ReductionKind kind);

/// Kodaira symbol of a fibre, with n for I_n and I_n^*.
class KodairaType {
 public:
  enum class Family { I0, In, II, III, IV, I0Star, InStar, IVStar, IIIStar, IIStar };

  KodairaType() = default;
  KodairaType(Family family, int n = 0);

  static KodairaType I(int n) { return n == 0 ? KodairaType(Family::I0) : KodairaType(Family::In, n); }
  static KodairaType IStar(int n) {
    return n == 0 ? KodairaType(Family::I0Star) : KodairaType(Family::InStar, n);
  }
  /// Parses the serialized symbol (I0, I3, II, I0*, I2*, IV*, ...).
  static KodairaType parse(const std::string& symbol);

  Family family() const { return family_; }
  int n() const { return n_; }
  ReductionKind reduction_kind() const;
  std::string symbol() const;

  friend bool operator==(const KodairaType&, const KodairaType&) = default;

 private:
  Family family_ = Family::I0;
  int n_ = 0;
};

/// Classification of a minimal equation with residue characteristic >= 5,
/// from the valuations of c4, c6 and the discriminant. Throws
/// TableInconsistency on signatures that cannot come from a minimal model.
KodairaType kodaira_type(Valuation v_c4, Valuation v_c6, Valuation v_delta);

/// (m, epsilon): geometric component count and reduction indicator with
/// m = nu - epsilon.
std::pair<int, int> components_and_epsilon(const KodairaType& kt);

template <class k>
struct WeierstrassQuantities {
  PolyK<k> b2, b4, b6, b8, c4, c6, delta;
};

/// b-quantities, c4, c6 and the discriminant of a long-form equation
/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6. Throws SingularGenericFibre
/// if the discriminant vanishes identically.
template <class k>
WeierstrassQuantities<k> derive_quantities(const PolyK<k>& a1, const PolyK<k>& a2,
                                           const PolyK<k>& a3, const PolyK<k>& a4,
                                           const PolyK<k>& a6);

template <class k>
class WeierstrassEquation {
 public:
  WeierstrassEquation(PolyK<k> a1, PolyK<k> a2, PolyK<k> a3, PolyK<k> a4, PolyK<k> a6);
  static WeierstrassEquation short_form(const PolyK<k>& A, const PolyK<k>& B);

  const PolyK<k>& a1() const { return a_[0]; }
  const PolyK<k>& a2() const { return a_[1]; }
  const PolyK<k>& a3() const { return a_[2]; }
  const PolyK<k>& a4() const { return a_[3]; }
  const PolyK<k>& a6() const { return a_[4]; }
  const WeierstrassQuantities<k>& quantities() const { return q_; }

 private:
  std::vector<PolyK<k>> a_;
  WeierstrassQuantities<k> q_;
};

template <class k>
struct ShortForm {
  PolyK<k> A, B;
  /// Unit u with disc(y^2 = x^3 + Ax + B) = u^12 * disc(long form).
  KField<k> discriminant_unit;
};

/// y^2 = x^3 + Ax + B with A = -c4/48, B = -c6/864, so that c4 = -48A and
/// c6 = -864B and the discriminant is unchanged (unit 1).
template <class k>
ShortForm<k> to_short_form(const WeierstrassEquation<k>& eq);

template <class k>
struct MinimalizeResult {
  std::int64_t u_exponent;
  PolyK<k> A, B;
};

/// Removes g^{12e} from the discriminant with
/// e = min(floor(ord_g A / 4), floor(ord_g B / 6)).
template <class k>
MinimalizeResult<k> minimalize_at(const PolyK<k>& A, const PolyK<k>& B, const PolyK<k>& g);

/// Short-form discriminant -16(4A^3 + 27B^2).
template <class k>
PolyK<k> short_discriminant(const PolyK<k>& A, const PolyK<k>& B);

template <class k>
struct OracleResult {
  ReductionKind kind;
  /// x-coordinate of the multiple root of x^3 + Ax + B mod g, when there is one.
  std::optional<PolyK<k>> multiple_root;
  std::vector<std::string> warnings;
};

/// Reduction kind read off the cubic x^3 + Ax + B over K[t]/(g): gcd with
/// its derivative of degree 0/1/2 means good/multiplicative/additive.
/// Works over the residue ring directly; ZeroDivisorEncountered is thrown if
/// a non-invertible leading coefficient is met.
template <class k>
OracleResult<k> reduction_kind_oracle(const PolyK<k>& A, const PolyK<k>& B,
                                      const PolyK<k>& g, bool irreducible_declared,
                                      bool want_root = true);

template <class k>
struct LocalFibreAnalysis {
  std::optional<PolyK<k>> place;  // nullopt = the place at infinity
  int residue_degree = 1;
  std::int64_t u_exponent = 0;
  std::int64_t nu = 0;
  Valuation v_c4 = Valuation::infinity();
  Valuation v_c6 = Valuation::infinity();
  KodairaType kodaira;
  int m = 1;
  int epsilon = -1;
  /// Empty when the residue-ring computation hit a zero divisor.
  std::optional<ReductionKind> oracle_kind;
  std::optional<PolyK<k>> singular_x;
  bool irreducible = false;
  bool inseparable = false;
  std::vector<std::string> warnings;

  /// Throws InvariantViolation unless m = nu - epsilon, nu = 0 iff I0 and the
  /// minimality bound holds.
  void check_invariants() const;
};

/// Full analysis of (A, B) at a monic squarefree place g (or, with
/// at_infinity, at s = 0 of the model at infinity where g = s).
template <class k>
LocalFibreAnalysis<k> analyze_place(const PolyK<k>& A, const PolyK<k>& B, const PolyK<k>& g,
                                    bool irreducible_declared, bool at_infinity = false);

}  // namespace logred
