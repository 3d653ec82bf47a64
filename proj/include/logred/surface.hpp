#pragma once

#include <optional>
#include <string>
#include <vector>

#include "logred/exact/tower.hpp"
#include "logred/weierstrass.hpp"

namespace logred {

/// A place of P^1_K: a monic squarefree class polynomial in t, or infinity.
template <class k>
struct Place {
  std::optional<PolyK<k>> poly;  // nullopt = infinity
  bool is_infinity() const { return !poly.has_value(); }
  int degree() const { return poly ? poly->degree() : 1; }
  friend bool operator==(const Place&, const Place&) = default;
};

template <class k>
struct InfinityModel {
  std::int64_t n;   // global twist degree
  PolyK<k> A, B;    // s^{4n} A(1/s), s^{6n} B(1/s)
  std::int64_t u_exponent;  // twist removed at s = 0 (reduces n)
};

/// Chart at infinity: n = max(ceil(deg A / 4), ceil(deg B / 6)), then the
/// minimalization rule at s = 0.
template <class k>
InfinityModel<k> infinity_model(const PolyK<k>& A, const PolyK<k>& B);

template <class k>
struct MinimalizationStep {
  PolyK<k> place;
  std::int64_t exponent;
};

template <class k>
class EllipticSurface {
 public:
  /// Converts to short form, minimalizes over K[t] and fixes the twist at
  /// infinity.
  EllipticSurface(FieldDescriptor field, WeierstrassEquation<k> equation);

  const FieldDescriptor& field() const { return field_; }
  const WeierstrassEquation<k>& equation() const { return equation_; }
  /// Short form before minimalization.
  const PolyK<k>& input_A() const { return input_A_; }
  const PolyK<k>& input_B() const { return input_B_; }
  /// Globally minimal affine short form.
  const PolyK<k>& A() const { return A_; }
  const PolyK<k>& B() const { return B_; }
  const std::vector<MinimalizationStep<k>>& minimalization() const { return steps_; }
  const InfinityModel<k>& at_infinity() const { return infinity_; }
  std::int64_t global_twist_degree() const { return infinity_.n; }
  PolyK<k> minimal_discriminant() const { return short_discriminant<k>(A_, B_); }

 private:
  FieldDescriptor field_;
  WeierstrassEquation<k> equation_;
  PolyK<k> input_A_, input_B_, A_, B_;
  std::vector<MinimalizationStep<k>> steps_;
  InfinityModel<k> infinity_;
};

template <class k>
struct SignatureClass {
  PolyK<k> poly;  // monic squarefree
  int degree_over_K;
  std::int64_t nu;
  Valuation v_c4 = Valuation::infinity();
  Valuation v_c6 = Valuation::infinity();
  KodairaType kodaira;
  LocalFibreAnalysis<k> analysis;
  bool inseparable = false;
  bool declared = false;  // refined by a user-declared factorization
};

/// Classes of the discriminant divisor on the affine chart: squarefree
/// decomposition of the minimal discriminant, each part split by gcds
/// against c4 and c6 until (v_c4, v_c6, nu) is constant. Declared factors
/// refine the classes they divide and must multiply back to them exactly.
template <class k>
std::vector<SignatureClass<k>> decompose_discriminant(
    const EllipticSurface<k>& surface, const std::vector<PolyK<k>>& declared_factors = {});

template <class k>
struct SingularPointRecord {
  Place<k> place;
  /// x-coordinate of the singular point of the Weierstrass model, reduced
  /// modulo the class (for infinity: an element of K in the s-chart).
  std::optional<PolyK<k>> x;
  bool residue_field_trivial = true;
  std::string note;
};

template <class k>
struct GlobalReport {
  std::vector<SignatureClass<k>> classes;  // sorted
  LocalFibreAnalysis<k> infinity_analysis;
  std::int64_t deg_D = 0;
  std::int64_t total_nu = 0;
  std::int64_t chi_check = 0;  // total_nu mod 12
  std::vector<Place<k>> big_plan;
  std::vector<SingularPointRecord<k>> singular_points;
};

/// Places whose fibre has a single component but is singular (I1, II); a
/// blow-up at the section point makes every singular fibre have >= 2
/// components.
template <class k>
std::vector<Place<k>> big_modification_plan(const GlobalReport<k>& report);

/// For fibres with at least two components, the unique singular point of
/// the Weierstrass model over the place.
template <class k>
std::vector<SingularPointRecord<k>> weierstrass_singular_points(const GlobalReport<k>& report);

/// Runs minimalization, the chart at infinity, the decomposition and the
/// bookkeeping; asserts total nu = 0 mod 12 and the product identity.
template <class k>
GlobalReport<k> analyze_surface(const EllipticSurface<k>& surface,
                                const std::vector<PolyK<k>>& declared_factors = {});

}  // namespace logred
