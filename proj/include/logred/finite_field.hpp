#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace logred {

/// GF(q), q = p^r, small enough for full log/exp tables. Elements are the
/// integers 0..q-1 read as base-p digit vectors of polynomials in a root a of
/// the first monic irreducible polynomial of degree r (lexicographic order).
class FiniteField {
 public:
  using Elem = std::uint32_t;

  /// Throws FieldError unless q is a prime power with 5 <= p and q <= max_q.
  explicit FiniteField(std::int64_t q, std::int64_t max_q = 200);

  std::int64_t p() const { return p_; }
  int r() const { return r_; }
  std::int64_t q() const { return q_; }
  const std::vector<std::int64_t>& modulus() const { return modulus_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(std::int64_t n) const;
  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const { return sub(0, a); }
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  bool is_square(Elem a) const;
  /// Some square root; throws DegenerateInput if a is not a square.
  Elem sqrt(Elem a) const;
  /// First non-square in element order.
  Elem nonsquare() const;

  /// Polynomial in `a`, e.g. "2*a + 1"; plain integers for r = 1.
  std::string str(Elem a) const;

 private:
  std::int64_t p_ = 0;
  int r_ = 0;
  std::int64_t q_ = 0;
  std::vector<std::int64_t> modulus_;  // monic, degree r, low to high
  std::vector<Elem> exp_;              // exp_[i] = g^i, length q - 1
  std::vector<std::int64_t> log_;      // log_[0] unused
  std::vector<std::int64_t> digits(Elem a) const;
  Elem pack(const std::vector<std::int64_t>& d) const;
  Elem slow_mul(Elem a, Elem b) const;
};

/// x-coordinates of the nontrivial 3-torsion of y^2 = x^3 + Ax + B found by
/// enumeration: every point with x in GF(q) and y in GF(q) or sqrt(d)GF(q),
/// d a non-square, so points of the quadratic twist count too. 3P = O is
/// tested with the chord-tangent law over GF(q^2). Sorted, no repeats.
/// Throws SingularCurve if 4A^3 + 27B^2 = 0.
std::vector<FiniteField::Elem> three_torsion_oracle(const FiniteField& F, FiniteField::Elem A,
                                                    FiniteField::Elem B);

/// Roots in GF(q) of 3x^4 + 6Ax^2 + 12Bx - A^2, sorted.
std::vector<FiniteField::Elem> psi3_roots(const FiniteField& F, FiniteField::Elem A,
                                          FiniteField::Elem B);

}  // namespace logred
