#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "logred/exact/newton.hpp"
#include "logred/exact/tower.hpp"
#include "logred/surface.hpp"

namespace logred {

/// Ordered by severity; Wild and NotEtale both obstruct, NotEtale ranks last.
enum class TamenessState { Tame, Undetermined, Wild, NotEtale };

std::string to_string(TamenessState state);
TamenessState worst(TamenessState a, TamenessState b);

struct SegmentEvidence {
  Fraction slope;
  std::int64_t denominator;
  int length;
  bool residual_separable;
};

struct TamenessVerdict {
  TamenessState state = TamenessState::Tame;
  std::vector<SegmentEvidence> segments;
  bool root_at_origin = false;  // a factor t was split off before the polygon
  std::string witness;          // inseparability or wildness witness
};

/// Ramification of K[t]/(g) over K read off the pi-adic Newton polygon.
/// In characteristic p: a slope denominator divisible by p gives Wild;
/// otherwise gcd(g, g') != 1 gives NotEtale; otherwise Tame when every
/// residual polynomial is separable and Undetermined when one is not. In
/// characteristic 0 separability alone decides. Throws InvalidPlace on a
/// constant g; g is made monic.
template <class k>
TamenessVerdict place_tameness(const PolyK<k>& g);

template <class k>
struct ClassTameness {
  Place<k> place;
  TamenessVerdict verdict;
};

template <class k>
struct DiscriminantTameness {
  std::vector<ClassTameness<k>> classes;  // finite classes, then infinity if singular
  TamenessState aggregate = TamenessState::Tame;
  /// First place attaining the aggregate state, when not Tame.
  std::optional<Place<k>> witness;
};

template <class k>
DiscriminantTameness<k> discriminant_tameness(const GlobalReport<k>& report);

template <class k>
struct TorsionFactor {
  PolyK<k> factor;  // monic, in the variable x
  std::int64_t multiplicity;
  TamenessVerdict verdict;
};

template <class k>
struct TorsionTameness {
  PolyK<k> psi3;  // 3x^4 + 6Ax^2 + 12Bx - A^2
  std::vector<TorsionFactor<k>> factors;
  TamenessState aggregate = TamenessState::Tame;
  std::string note;
};

/// Tameness of K(E[3]) at the x-level: place_tameness on each squarefree
/// factor of the 3-division polynomial. Throws SingularGenericFibre if
/// 4A^3 + 27B^2 = 0.
template <class k>
TorsionTameness<k> three_torsion_tameness(const KField<k>& A, const KField<k>& B);

template <class k>
struct AuxiliaryDivisor {
  std::vector<PolyK<k>> points;  // monic, pi-free, irreducible
  std::int64_t total_degree = 0;
};

/// The index-th element of the fixed enumeration of k: 0, 1, -1, 2, -2, ...
/// for Q and F_p (nullopt once F_p is exhausted); for F_p(u) the digits of
/// index in that same order are the coefficients of a polynomial in u.
template <class k>
std::optional<k> enumerate_residue(const k& one, std::int64_t index);

/// Greedy choice of places t - c, c from enumerate_residue, avoiding the
/// discriminant classes; over a finite k it continues with monic
/// irreducible polynomials of increasing degree.
template <class k>
AuxiliaryDivisor<k> construct_auxiliary_divisor(const GlobalReport<k>& report, const k& one,
                                                std::int64_t needed_degree);

/// Default size of the auxiliary divisor: enough to make deg D + deg A > 2.
std::int64_t default_auxiliary_degree(std::int64_t deg_D);

enum class Outcome { LogGoodReduction, LogGoodUpToModification, Obstructed, Inconclusive };

std::string to_string(Outcome outcome);

struct Verdict {
  Outcome outcome = Outcome::Inconclusive;
  bool conditional = false;
  std::string reason;
  std::int64_t deg_D = 0;
  std::int64_t deg_A = 0;
  std::int64_t criterion_value = 0;  // deg D + deg A + 2 * genus, genus 0
};

/// Throws OverlappingSupports if a point of A meets a discriminant class.
template <class k>
Verdict main_criterion(const GlobalReport<k>& report, const DiscriminantTameness<k>& tameness,
                       const AuxiliaryDivisor<k>& aux, bool condition_asserted);

}  // namespace logred
